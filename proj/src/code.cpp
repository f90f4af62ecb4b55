#include "heavyhex/code.hpp"

#include <stdexcept>
#include <string>

namespace heavyhex {

namespace {

// 1-based grid coordinates to linear qubit index.
std::size_t idx(int d, int row, int col) {
    return static_cast<std::size_t>(row - 1) * static_cast<std::size_t>(d) +
           static_cast<std::size_t>(col - 1);
}

BitVec support(int d, std::initializer_list<std::size_t> qubits) {
    BitVec v(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (std::size_t q : qubits) v.set(q);
    return v;
}

void verify_layout(const CodeLayout& lay) {
    const std::size_t d = static_cast<std::size_t>(lay.d);
    const std::size_t half = (d * d - 1) / 2;
    if (lay.x_gauge_generators.size() != half || lay.z_stabilizers.size() != half ||
        lay.z_gauge_generators.size() != d * (d - 1) || lay.x_stabilizers.size() != d - 1)
        throw std::logic_error("layout generator counts are inconsistent");

    // Stabilizers must commute with every gauge generator of the other type.
    for (const BitVec& s : lay.z_stabilizers)
        for (const BitVec& g : lay.x_gauge_generators)
            if (s.overlap_parity(g)) throw std::logic_error("Z stabilizer anticommutes with X gauge");
    for (const BitVec& s : lay.x_stabilizers)
        for (const BitVec& g : lay.z_gauge_generators)
            if (s.overlap_parity(g)) throw std::logic_error("X stabilizer anticommutes with Z gauge");

    // Stabilizers lie inside the span of the same-type gauge generators.
    const auto x_basis = gf2::reduce(gf2::GF2Matrix(lay.x_gauge_generators));
    const auto z_basis = gf2::reduce(gf2::GF2Matrix(lay.z_gauge_generators));
    for (const BitVec& s : lay.x_stabilizers)
        if (!gf2::in_span(x_basis, s)) throw std::logic_error("X stabilizer escapes the X gauge span");
    for (const BitVec& s : lay.z_stabilizers)
        if (!gf2::in_span(z_basis, s)) throw std::logic_error("Z stabilizer escapes the Z gauge span");

    // Logical pair: commutes with the opposite-type stabilizers, resists the
    // same-type gauge span, and anticommutes with each other.
    for (const BitVec& s : lay.z_stabilizers)
        if (lay.logical_x.overlap_parity(s)) throw std::logic_error("logical X anticommutes with a Z stabilizer");
    for (const BitVec& s : lay.x_stabilizers)
        if (lay.logical_z.overlap_parity(s)) throw std::logic_error("logical Z anticommutes with an X stabilizer");
    if (gf2::in_span(x_basis, lay.logical_x) || gf2::in_span(z_basis, lay.logical_z))
        throw std::logic_error("logical operator is a gauge element");
    if (!lay.logical_x.overlap_parity(lay.logical_z))
        throw std::logic_error("logical X and Z fail to anticommute");
}

}  // namespace

CodeLayout build_layout(int d) {
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("d must be an odd integer >= 3, got " + std::to_string(d));

    CodeLayout lay;
    lay.d = d;
    lay.n_qubits = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);

    // X gauge: top boundary pairs, then the odd-parity squares, then bottom
    // boundary pairs.
    for (int m = 1; 2 * m <= d - 1; ++m)
        lay.x_gauge_generators.push_back(
            support(d, {idx(d, 1, 2 * m - 1), idx(d, 1, 2 * m)}));
    for (int i = 1; i <= d - 1; ++i)
        for (int j = 1; j <= d - 1; ++j)
            if ((i + j) % 2 == 1)
                lay.x_gauge_generators.push_back(support(
                    d, {idx(d, i, j), idx(d, i, j + 1), idx(d, i + 1, j), idx(d, i + 1, j + 1)}));
    for (int m = 1; 2 * m + 1 <= d; ++m)
        lay.x_gauge_generators.push_back(
            support(d, {idx(d, d, 2 * m), idx(d, d, 2 * m + 1)}));

    // Z gauge: vertical pairs, column-major.
    for (int j = 1; j <= d; ++j)
        for (int i = 1; i <= d - 1; ++i)
            lay.z_gauge_generators.push_back(support(d, {idx(d, i, j), idx(d, i + 1, j)}));

    // Z stabilizers in syndrome-bit order: even-parity squares row-major by
    // top-left corner, right boundary pairs top-down, left boundary pairs
    // top-down.
    for (int i = 1; i <= d - 1; ++i)
        for (int j = 1; j <= d - 1; ++j)
            if ((i + j) % 2 == 0)
                lay.z_stabilizers.push_back(support(
                    d, {idx(d, i, j), idx(d, i, j + 1), idx(d, i + 1, j), idx(d, i + 1, j + 1)}));
    for (int m = 1; 2 * m <= d - 1; ++m)
        lay.z_stabilizers.push_back(support(d, {idx(d, 2 * m - 1, d), idx(d, 2 * m, d)}));
    for (int m = 1; 2 * m + 1 <= d; ++m)
        lay.z_stabilizers.push_back(support(d, {idx(d, 2 * m, 1), idx(d, 2 * m + 1, 1)}));

    // X stabilizers: full two-column strips.
    for (int j = 1; j <= d - 1; ++j) {
        BitVec strip(lay.n_qubits);
        for (int i = 1; i <= d; ++i) {
            strip.set(idx(d, i, j));
            strip.set(idx(d, i, j + 1));
        }
        lay.x_stabilizers.push_back(std::move(strip));
    }

    lay.logical_x = BitVec(lay.n_qubits);
    for (int i = 1; i <= d; ++i) lay.logical_x.set(idx(d, i, 1));
    lay.logical_z = BitVec(lay.n_qubits);
    for (int j = 1; j <= d; ++j) lay.logical_z.set(idx(d, 1, j));

    verify_layout(lay);
    return lay;
}

namespace {

BitVec parities(const std::vector<BitVec>& checks, const ErrorString& e) {
    BitVec s(checks.size());
    for (std::size_t k = 0; k < checks.size(); ++k)
        if (checks[k].overlap_parity(e)) s.set(k);
    return s;
}

}  // namespace

BitVec syndrome_bitflip(const CodeLayout& layout, const ErrorString& e_x) {
    return parities(layout.z_stabilizers, e_x);
}

BitVec syndrome_phaseflip(const CodeLayout& layout, const ErrorString& e_z) {
    return parities(layout.x_stabilizers, e_z);
}

Syndrome syndrome_of(const CodeLayout& layout, const ErrorString& e_x, const ErrorString& e_z) {
    return {syndrome_bitflip(layout, e_x), syndrome_phaseflip(layout, e_z)};
}

std::pair<BitVec, BitVec> logical_ops(const CodeLayout& layout) {
    return {layout.logical_x, layout.logical_z};
}

}  // namespace heavyhex

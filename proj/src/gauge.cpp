#include "heavyhex/gauge.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace heavyhex {

GaugeBasis GaugeBasis::build(const gf2::GF2Matrix& generators, std::size_t span_cap_rows) {
    GaugeBasis gb;
    gb.generators = generators;
    gb.reduced = gf2::reduce(generators);
    if (gb.reduced.basis.rows() != generators.rows())
        throw std::invalid_argument("gauge generators are linearly dependent");

    if (generators.rows() <= span_cap_rows) {
        // Gray-code walk: flip one generator per step, visiting every
        // combination exactly once.
        const std::size_t count = std::size_t{1} << generators.rows();
        gb.full_span.reserve(count);
        BitVec acc(generators.cols());
        gb.full_span.push_back(acc);
        for (std::size_t i = 1; i < count; ++i) {
            acc ^= generators.row(static_cast<std::size_t>(std::countr_zero(i)));
            gb.full_span.push_back(acc);
        }
    }
    return gb;
}

GaugeBasis x_gauge_basis(const CodeLayout& layout, std::size_t span_cap_rows) {
    return GaugeBasis::build(gf2::GF2Matrix(layout.x_gauge_generators), span_cap_rows);
}

GaugeBasis z_gauge_basis(const CodeLayout& layout, std::size_t span_cap_rows) {
    return GaugeBasis::build(gf2::GF2Matrix(layout.z_gauge_generators), span_cap_rows);
}

std::uint64_t lex_weight(const BitVec& e) { return e.lex_weight(); }

BitVec canonical_bitflip_search(const ErrorString& e, const GaugeBasis& gb) {
    if (!gb.has_span())
        throw std::invalid_argument(
            "gauge span is not materialized at this size; use the exact coset-leader "
            "projection instead");
    if (e.size() != gb.generators.cols())
        throw std::invalid_argument("error length does not match the gauge group");
    BitVec best = e;
    BitVec candidate = e;
    for (std::size_t i = 1; i < gb.full_span.size(); ++i) {
        candidate = e;
        candidate ^= gb.full_span[i];
        if (BitVec::cmp_lex(candidate, best) < 0) best = candidate;
    }
    return best;
}

BitVec canonical_bitflip_exact(const ErrorString& e, const GaugeBasis& gb) {
    return gf2::project_to_leader(gb.reduced, e);
}

BitVec canonical_phaseflip(const ErrorString& e, int d) {
    const std::size_t n = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
    if (d < 1 || e.size() != n)
        throw std::invalid_argument("error length does not match d*d");
    BitVec out = e;
    for (std::size_t j = static_cast<std::size_t>(d); j < n; ++j) {
        if (out.get(j)) {
            out.flip(j % static_cast<std::size_t>(d));
            out.set(j, false);
        }
    }
    return out;
}

std::vector<BitVec> canonical_bitflip_rank(const std::vector<ErrorString>& errors,
                                           const CodeLayout& layout, const GaugeBasis& gb,
                                           bool unify) {
    struct ClassEntry {
        BitVec leader_seen;  // running lex-minimal member
        BitVec projected;    // exact leader, identifies the class
    };
    std::unordered_map<BitVec, std::vector<ClassEntry>, gf2::BitVecHash> by_syndrome;
    std::vector<BitVec> out;
    out.reserve(errors.size());

    for (const ErrorString& e : errors) {
        const BitVec syn = syndrome_bitflip(layout, e);
        auto& classes = by_syndrome[syn];
        const BitVec projected = canonical_bitflip_exact(e, gb);
        ClassEntry* hit = nullptr;
        for (ClassEntry& entry : classes) {
            // Equivalent iff appending e + e' to the generator matrix leaves
            // its rank unchanged, i.e. the pair sum projects to zero.
            if (entry.projected == projected) {
                hit = &entry;
                break;
            }
        }
        if (hit == nullptr) {
            classes.push_back({e, projected});
            out.push_back(e);
        } else {
            if (BitVec::cmp_lex(e, hit->leader_seen) < 0) hit->leader_seen = e;
            out.push_back(hit->leader_seen);
        }
    }

    if (unify) {
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = canonical_bitflip_exact(errors[i], gb);
    }
    return out;
}

std::uint64_t count_classes(const CodeLayout& layout, ErrorType type) {
    const std::uint64_t d = static_cast<std::uint64_t>(layout.d);
    const std::uint64_t exponent = type == ErrorType::X ? (d * d + 1) / 2 : d;
    if (exponent >= 64) throw std::overflow_error("class count exceeds 2^63");
    return std::uint64_t{1} << exponent;
}

CanonicalRecord canonical_record(const ErrorString& e, const GaugeBasis& gb) {
    CanonicalRecord rec;
    rec.raw = e;
    rec.representative = canonical_bitflip_exact(e, gb);
    rec.lex_weight = rec.representative.lex_weight();
    return rec;
}

}  // namespace heavyhex

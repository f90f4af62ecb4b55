#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "heavyhex/code.hpp"
#include "heavyhex/gf2.hpp"
#include "heavyhex/rng.hpp"

using namespace heavyhex;

namespace {

std::vector<std::size_t> support(const BitVec& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) out.push_back(i);
    return out;
}

using Supports = std::vector<std::vector<std::size_t>>;

Supports supports_of(const std::vector<BitVec>& ops) {
    Supports out;
    for (const auto& op : ops) out.push_back(support(op));
    return out;
}

BitVec random_error(std::size_t n, Rng& rng, double q = 0.5) {
    BitVec e(n);
    for (std::size_t k = 0; k < n; ++k)
        if (rng.bernoulli(q)) e.set(k);
    return e;
}

}  // namespace

TEST_SUITE("code") {

TEST_CASE("layout rejects invalid distances") {
    CHECK_THROWS_AS(build_layout(1), std::invalid_argument);
    CHECK_THROWS_AS(build_layout(2), std::invalid_argument);
    CHECK_THROWS_AS(build_layout(4), std::invalid_argument);
    CHECK_THROWS_AS(build_layout(-3), std::invalid_argument);
}

TEST_CASE("operator counts for d = 3, 5, 7") {
    struct Row {
        int d;
        std::size_t xg, zg, zs, xs;
    };
    for (const Row r : {Row{3, 4, 6, 4, 2}, Row{5, 12, 20, 12, 4}, Row{7, 24, 42, 24, 6}}) {
        const CodeLayout layout = build_layout(r.d);
        CHECK(layout.n_qubits == std::size_t(r.d) * r.d);
        CHECK(layout.x_gauge_generators.size() == r.xg);
        CHECK(layout.z_gauge_generators.size() == r.zg);
        CHECK(layout.z_stabilizers.size() == r.zs);
        CHECK(layout.x_stabilizers.size() == r.xs);
    }
}

TEST_CASE("exact d = 3 supports") {
    const CodeLayout layout = build_layout(3);
    CHECK(supports_of(layout.x_gauge_generators) ==
          Supports{{0, 1}, {1, 2, 4, 5}, {3, 4, 6, 7}, {7, 8}});
    CHECK(supports_of(layout.z_gauge_generators) ==
          Supports{{0, 3}, {3, 6}, {1, 4}, {4, 7}, {2, 5}, {5, 8}});
    CHECK(supports_of(layout.z_stabilizers) ==
          Supports{{0, 1, 3, 4}, {4, 5, 7, 8}, {2, 5}, {3, 6}});
    CHECK(supports_of(layout.x_stabilizers) ==
          Supports{{0, 1, 3, 4, 6, 7}, {1, 2, 4, 5, 7, 8}});
    CHECK(support(layout.logical_x) == std::vector<std::size_t>{0, 3, 6});
    CHECK(support(layout.logical_z) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("frozen syndrome examples at d = 3") {
    const CodeLayout layout = build_layout(3);
    CHECK(syndrome_bitflip(layout, BitVec::from_indices(9, {4})).str() == "1100");
    CHECK(syndrome_bitflip(layout, BitVec::from_indices(9, {0})).str() == "1000");
    CHECK(syndrome_bitflip(layout, BitVec(9)).str() == "0000");
    CHECK(syndrome_phaseflip(layout, BitVec::from_indices(9, {6})).str() == "10");
    CHECK(syndrome_phaseflip(layout, BitVec::from_indices(9, {4})).str() == "11");

    const Syndrome s = syndrome_of(layout, BitVec::from_indices(9, {4}),
                                   BitVec::from_indices(9, {6}));
    CHECK(s.z_bits.str() == "1100");
    CHECK(s.x_bits.str() == "10");
}

TEST_CASE("stabilizers commute with the opposite gauge group") {
    for (const int d : {3, 5, 7}) {
        const CodeLayout layout = build_layout(d);
        for (const auto& zs : layout.z_stabilizers)
            for (const auto& xg : layout.x_gauge_generators)
                CHECK_FALSE(zs.overlap_parity(xg));
        for (const auto& xs : layout.x_stabilizers)
            for (const auto& zg : layout.z_gauge_generators)
                CHECK_FALSE(xs.overlap_parity(zg));
    }
}

TEST_CASE("stabilizers lie in the span of their own gauge group") {
    for (const int d : {3, 5}) {
        const CodeLayout layout = build_layout(d);
        gf2::GF2Matrix zg(layout.n_qubits), xg(layout.n_qubits);
        for (const auto& g : layout.z_gauge_generators) zg.append_row(g);
        for (const auto& g : layout.x_gauge_generators) xg.append_row(g);
        const auto zrb = gf2::reduce(zg);
        const auto xrb = gf2::reduce(xg);
        for (const auto& zs : layout.z_stabilizers) CHECK(gf2::in_span(zrb, zs));
        for (const auto& xs : layout.x_stabilizers) CHECK(gf2::in_span(xrb, xs));
    }
}

TEST_CASE("logical operators anticommute with each other and commute with everything else") {
    for (const int d : {3, 5, 7}) {
        const CodeLayout layout = build_layout(d);
        const auto [lx, lz] = logical_ops(layout);
        CHECK(lx.overlap_parity(lz));
        CHECK(lx.weight() == std::size_t(d));
        CHECK(lz.weight() == std::size_t(d));
        for (const auto& zs : layout.z_stabilizers) CHECK_FALSE(lx.overlap_parity(zs));
        for (const auto& xs : layout.x_stabilizers) CHECK_FALSE(lz.overlap_parity(xs));
        for (const auto& zg : layout.z_gauge_generators) CHECK_FALSE(lx.overlap_parity(zg));
        for (const auto& xg : layout.x_gauge_generators) CHECK_FALSE(lz.overlap_parity(xg));
    }
}

TEST_CASE("syndrome maps are linear") {
    const CodeLayout layout = build_layout(5);
    Rng rng(13, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const BitVec a = random_error(layout.n_qubits, rng);
        const BitVec b = random_error(layout.n_qubits, rng);
        CHECK(syndrome_bitflip(layout, a ^ b) ==
              (syndrome_bitflip(layout, a) ^ syndrome_bitflip(layout, b)));
        CHECK(syndrome_phaseflip(layout, a ^ b) ==
              (syndrome_phaseflip(layout, a) ^ syndrome_phaseflip(layout, b)));
    }
}

TEST_CASE("syndrome lengths follow the stabilizer counts") {
    for (const int d : {3, 5, 7}) {
        const CodeLayout layout = build_layout(d);
        const BitVec e(layout.n_qubits);
        CHECK(syndrome_bitflip(layout, e).size() == std::size_t((d * d - 1) / 2));
        CHECK(syndrome_phaseflip(layout, e).size() == std::size_t(d - 1));
    }
}

TEST_CASE("every data qubit is covered by some stabilizer of each type") {
    for (const int d : {3, 5, 7}) {
        const CodeLayout layout = build_layout(d);
        for (std::size_t qubit = 0; qubit < layout.n_qubits; ++qubit) {
            bool in_z = false, in_x = false;
            for (const auto& zs : layout.z_stabilizers) in_z |= zs.get(qubit);
            for (const auto& xs : layout.x_stabilizers) in_x |= xs.get(qubit);
            CHECK(in_z);
            CHECK(in_x);
        }
    }
}

}  // TEST_SUITE

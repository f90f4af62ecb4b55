#include "heavyhex/lookup.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "heavyhex/gauge.hpp"

namespace heavyhex {

LookupDecoder::LookupDecoder(const CodeLayout& layout, ErrorType type, double q) {
    if (layout.d != 3)
        throw std::invalid_argument("LookupDecoder: exhaustive table only supports d = 3");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("LookupDecoder: q must lie in [0, 1]");

    GaugeBasis gb = type == ErrorType::X ? x_gauge_basis(layout) : z_gauge_basis(layout);
    std::size_t n = layout.n_qubits;
    struct ClassMass {
        ErrorString leader;
        double mass;
    };
    std::unordered_map<BitVec, std::vector<ClassMass>, BitVecHash> classes;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        ErrorString e(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (bits >> k & 1) e.set(k);
        }
        BitVec syn = type == ErrorType::X ? syndrome_bitflip(layout, e)
                                          : syndrome_phaseflip(layout, e);
        ErrorString leader = type == ErrorType::X ? canonical_bitflip_exact(e, gb)
                                                  : canonical_phaseflip(e, layout.d);
        int w = static_cast<int>(e.weight());
        double mass = std::pow(q, w) * std::pow(1.0 - q, static_cast<int>(n) - w);
        auto& entries = classes[syn];
        bool found = false;
        for (auto& entry : entries) {
            if (entry.leader == leader) {
                entry.mass += mass;
                found = true;
                break;
            }
        }
        if (!found) entries.push_back({leader, mass});
    }

    for (auto& [syn, entries] : classes) {
        const ClassMass* best = &entries.front();
        for (const auto& entry : entries) {
            if (entry.mass > best->mass ||
                (entry.mass == best->mass &&
                 BitVec::cmp_lex(entry.leader, best->leader) < 0)) {
                best = &entry;
            }
        }
        table_.emplace(syn, best->leader);
    }
}

const ErrorString& LookupDecoder::decode(const BitVec& syndrome) const {
    auto it = table_.find(syndrome);
    if (it == table_.end()) throw std::invalid_argument("lookup: unknown syndrome");
    return it->second;
}

ErrorString lookup_decode(const CodeLayout& layout, const BitVec& syndrome, ErrorType type,
                          double q) {
    return LookupDecoder(layout, type, q).decode(syndrome);
}

}  // namespace heavyhex

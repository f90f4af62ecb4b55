#pragma once

#include <vector>

#include "heavyhex/code.hpp"

namespace heavyhex {

struct MatchResult {
    ErrorString correction;
    bool exact = true;  ///< false when the greedy fallback was used
};

/// Minimum-weight matching decoder on the stabilizer adjacency graph.
///
/// Two Z stabilizers are adjacent when their supports share a data qubit
/// (unit edge weight); a stabilizer with a qubit covered by no other Z
/// stabilizer also connects to the lattice boundary.  Defect sets of up to
/// kExactDefectLimit are paired exactly by exhaustive search over pairings
/// and boundary matches; larger sets fall back to greedy nearest-pair.  The
/// returned correction always reproduces the input syndrome.
class MatchingDecoder {
public:
    static constexpr std::size_t kExactDefectLimit = 14;

    explicit MatchingDecoder(const CodeLayout& layout);

    MatchResult decode_bitflip(const BitVec& syndrome) const;

    /// Phase-flip defects live between adjacent column strips, so they are
    /// matched on a line by dynamic programming; always exact.
    ErrorString decode_phaseflip(const BitVec& syndrome) const;

private:
    int d_;
    std::size_t n_qubits_;
    std::size_t n_stabs_;
    std::vector<std::vector<int>> dist_;
    std::vector<std::vector<BitVec>> path_;
    std::vector<int> boundary_dist_;
    std::vector<BitVec> boundary_path_;
};

MatchResult mwpm_decode_bitflip(const CodeLayout& layout, const BitVec& syndrome);
ErrorString mwpm_decode_phaseflip(const CodeLayout& layout, const BitVec& syndrome);

}  // namespace heavyhex

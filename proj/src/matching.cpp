#include "heavyhex/matching.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace heavyhex {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

}  // namespace

MatchingDecoder::MatchingDecoder(const CodeLayout& layout)
    : d_(layout.d),
      n_qubits_(layout.n_qubits),
      n_stabs_(layout.z_stabilizers.size()) {
    // Edges keyed by stabilizer pair; keep the lowest shared qubit so the
    // graph (and hence every decoded correction) is deterministic.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_edges;
    std::vector<std::size_t> boundary_qubit(n_stabs_, n_qubits_);
    for (std::size_t q = 0; q < n_qubits_; ++q) {
        std::vector<std::size_t> owners;
        for (std::size_t s = 0; s < n_stabs_; ++s) {
            if (layout.z_stabilizers[s].get(q)) owners.push_back(s);
        }
        if (owners.size() == 1) {
            std::size_t s = owners[0];
            if (q < boundary_qubit[s]) boundary_qubit[s] = q;
        } else if (owners.size() == 2) {
            auto key = std::make_pair(owners[0], owners[1]);
            auto it = pair_edges.find(key);
            if (it == pair_edges.end() || q < it->second) pair_edges[key] = q;
        } else if (owners.size() > 2) {
            throw std::logic_error("matching: qubit covered by more than two stabilizers");
        }
    }

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(n_stabs_);
    for (const auto& [key, q] : pair_edges) {
        adj[key.first].emplace_back(key.second, q);
        adj[key.second].emplace_back(key.first, q);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());

    dist_.assign(n_stabs_, std::vector<int>(n_stabs_, kInf));
    path_.assign(n_stabs_, std::vector<BitVec>(n_stabs_, BitVec(n_qubits_)));
    for (std::size_t src = 0; src < n_stabs_; ++src) {
        dist_[src][src] = 0;
        std::deque<std::size_t> queue{src};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (const auto& [v, q] : adj[u]) {
                if (dist_[src][v] != kInf) continue;
                dist_[src][v] = dist_[src][u] + 1;
                path_[src][v] = path_[src][u];
                path_[src][v].flip(q);
                queue.push_back(v);
            }
        }
    }

    // Multi-source BFS from the boundary; entering node s costs one flip of
    // its boundary qubit.
    boundary_dist_.assign(n_stabs_, kInf);
    boundary_path_.assign(n_stabs_, BitVec(n_qubits_));
    std::deque<std::size_t> queue;
    for (std::size_t s = 0; s < n_stabs_; ++s) {
        if (boundary_qubit[s] == n_qubits_) continue;
        boundary_dist_[s] = 1;
        boundary_path_[s].flip(boundary_qubit[s]);
        queue.push_back(s);
    }
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (const auto& [v, q] : adj[u]) {
            if (boundary_dist_[v] != kInf) continue;
            boundary_dist_[v] = boundary_dist_[u] + 1;
            boundary_path_[v] = boundary_path_[u];
            boundary_path_[v].flip(q);
            queue.push_back(v);
        }
    }
}

MatchResult MatchingDecoder::decode_bitflip(const BitVec& syndrome) const {
    if (syndrome.size() != n_stabs_)
        throw std::invalid_argument("decode_bitflip: syndrome length mismatch");
    std::vector<std::size_t> defects;
    for (std::size_t s = 0; s < n_stabs_; ++s) {
        if (syndrome.get(s)) defects.push_back(s);
    }
    MatchResult result{BitVec(n_qubits_), true};
    std::size_t k = defects.size();
    if (k == 0) return result;

    if (k <= kExactDefectLimit) {
        // cost[mask] = minimal total path length pairing the defects in mask
        // (boundary counts as a partner); choice[mask] records the decision
        // for the lowest set defect.
        std::size_t n_masks = std::size_t{1} << k;
        std::vector<int> cost(n_masks, kInf);
        std::vector<int> choice(n_masks, -2);
        cost[0] = 0;
        for (std::size_t mask = 1; mask < n_masks; ++mask) {
            int i = std::countr_zero(mask);
            std::size_t rest = mask ^ (std::size_t{1} << i);
            if (boundary_dist_[defects[i]] < kInf && cost[rest] < kInf) {
                cost[mask] = cost[rest] + boundary_dist_[defects[i]];
                choice[mask] = -1;
            }
            for (int j = i + 1; j < static_cast<int>(k); ++j) {
                if (!(rest >> j & 1)) continue;
                std::size_t rest2 = rest ^ (std::size_t{1} << j);
                int dij = dist_[defects[i]][defects[j]];
                if (dij >= kInf || cost[rest2] >= kInf) continue;
                int c = cost[rest2] + dij;
                if (c < cost[mask]) {
                    cost[mask] = c;
                    choice[mask] = j;
                }
            }
        }
        std::size_t mask = n_masks - 1;
        if (cost[mask] >= kInf)
            throw std::logic_error("decode_bitflip: unmatchable defect set");
        while (mask != 0) {
            int i = std::countr_zero(mask);
            int c = choice[mask];
            if (c == -1) {
                result.correction ^= boundary_path_[defects[i]];
                mask ^= std::size_t{1} << i;
            } else {
                result.correction ^= path_[defects[i]][defects[c]];
                mask ^= (std::size_t{1} << i) | (std::size_t{1} << c);
            }
        }
        return result;
    }

    // Greedy fallback: repeatedly apply the globally cheapest pair or
    // boundary match among the remaining defects.
    result.exact = false;
    std::vector<std::size_t> left = defects;
    while (!left.empty()) {
        int best = kInf;
        std::size_t bi = 0, bj = 0;
        bool to_boundary = true;
        for (std::size_t a = 0; a < left.size(); ++a) {
            if (boundary_dist_[left[a]] < best) {
                best = boundary_dist_[left[a]];
                bi = a;
                to_boundary = true;
            }
            for (std::size_t b = a + 1; b < left.size(); ++b) {
                if (dist_[left[a]][left[b]] < best) {
                    best = dist_[left[a]][left[b]];
                    bi = a;
                    bj = b;
                    to_boundary = false;
                }
            }
        }
        if (best >= kInf) throw std::logic_error("decode_bitflip: unmatchable defect set");
        if (to_boundary) {
            result.correction ^= boundary_path_[left[bi]];
            left.erase(left.begin() + static_cast<std::ptrdiff_t>(bi));
        } else {
            result.correction ^= path_[left[bi]][left[bj]];
            left.erase(left.begin() + static_cast<std::ptrdiff_t>(bj));
            left.erase(left.begin() + static_cast<std::ptrdiff_t>(bi));
        }
    }
    return result;
}

ErrorString MatchingDecoder::decode_phaseflip(const BitVec& syndrome) const {
    std::size_t n_strips = static_cast<std::size_t>(d_) - 1;
    if (syndrome.size() != n_strips)
        throw std::invalid_argument("decode_phaseflip: syndrome length mismatch");
    // Defect between columns s and s+1 (1-based strip position s): matching
    // it to the left boundary flips columns 1..s, to the right boundary
    // columns s+1..d, and pairing two defects flips the columns in between.
    std::vector<int> pos;
    for (std::size_t k = 0; k < n_strips; ++k) {
        if (syndrome.get(k)) pos.push_back(static_cast<int>(k) + 1);
    }
    std::size_t k = pos.size();
    ErrorString correction(n_qubits_);
    if (k == 0) return correction;

    auto boundary_cost = [&](int s) { return std::min(s, d_ - s); };
    std::vector<int> cost(k + 1, kInf);
    std::vector<int> paired(k + 1, 0);
    cost[0] = 0;
    for (std::size_t i = 1; i <= k; ++i) {
        cost[i] = cost[i - 1] + boundary_cost(pos[i - 1]);
        if (i >= 2 && cost[i - 2] + pos[i - 1] - pos[i - 2] < cost[i]) {
            cost[i] = cost[i - 2] + pos[i - 1] - pos[i - 2];
            paired[i] = 1;
        }
    }

    auto flip_columns = [&](int first, int last) {
        for (int c = first; c <= last; ++c) correction.flip(static_cast<std::size_t>(c) - 1);
    };
    std::size_t i = k;
    while (i > 0) {
        if (paired[i]) {
            flip_columns(pos[i - 2] + 1, pos[i - 1]);
            i -= 2;
        } else {
            int s = pos[i - 1];
            if (s <= d_ - s) {
                flip_columns(1, s);
            } else {
                flip_columns(s + 1, d_);
            }
            i -= 1;
        }
    }
    return correction;
}

MatchResult mwpm_decode_bitflip(const CodeLayout& layout, const BitVec& syndrome) {
    return MatchingDecoder(layout).decode_bitflip(syndrome);
}

ErrorString mwpm_decode_phaseflip(const CodeLayout& layout, const BitVec& syndrome) {
    return MatchingDecoder(layout).decode_phaseflip(syndrome);
}

}  // namespace heavyhex

#pragma once

#include <cstdint>
#include <vector>

#include "heavyhex/code.hpp"

namespace heavyhex {

/// Largest generator count whose full span (2^rows elements) may be
/// materialized; 2^13 elements covers d <= 5 for the X gauge group.
inline constexpr std::size_t kSpanCapRows = 13;

/// A gauge generator set together with its reduced basis and, when small
/// enough, the fully materialized span.
struct GaugeBasis {
    gf2::GF2Matrix generators;
    gf2::ReducedBasis reduced;
    std::vector<BitVec> full_span;  ///< all 2^rows span elements, or empty

    bool has_span() const { return !full_span.empty(); }

    /// Checks that the generators are independent and materializes the span
    /// when rows <= span_cap_rows.
    static GaugeBasis build(const gf2::GF2Matrix& generators,
                            std::size_t span_cap_rows = kSpanCapRows);
};

GaugeBasis x_gauge_basis(const CodeLayout& layout, std::size_t span_cap_rows = kSpanCapRows);
GaugeBasis z_gauge_basis(const CodeLayout& layout, std::size_t span_cap_rows = kSpanCapRows);

/// Ranking key sum_k 2^k * e_k of the gauge-class ordering (size <= 64).
std::uint64_t lex_weight(const BitVec& e);

/// Class representative by exhaustive scan of e + g over the materialized
/// span; requires gb.has_span().
BitVec canonical_bitflip_search(const ErrorString& e, const GaugeBasis& gb);

/// Class representative by pivot projection against the reduced basis; the
/// exact coset leader at any d.
BitVec canonical_bitflip_exact(const ErrorString& e, const GaugeBasis& gb);

/// Phase-flip representative: fold every qubit onto its column in the top
/// row, e[j mod d] ^= e[j], leaving only the column parities.
BitVec canonical_phaseflip(const ErrorString& e, int d);

/// Streaming canonicalization.  Each error is grouped with earlier errors of
/// equal bit-flip syndrome, equivalence is decided by a span-membership test
/// of the pair sum against the reduced basis (a rank-preservation check in
/// reduced form), and the running lex-minimal member of the class is
/// reported.  With unify set, a closing pass replaces every output by the
/// exact leader of its class so the batch agrees with the other methods
/// independently of stream order.
std::vector<BitVec> canonical_bitflip_rank(const std::vector<ErrorString>& errors,
                                           const CodeLayout& layout, const GaugeBasis& gb,
                                           bool unify = true);

/// Number of gauge classes: 2^((d*d+1)/2) for bit flips, 2^d for phase flips.
std::uint64_t count_classes(const CodeLayout& layout, ErrorType type);

struct CanonicalRecord {
    ErrorString raw;
    ErrorString representative;
    std::uint64_t lex_weight;
};

CanonicalRecord canonical_record(const ErrorString& e, const GaugeBasis& gb);

}  // namespace heavyhex

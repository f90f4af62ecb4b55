#pragma once

#include <unordered_map>

#include "heavyhex/code.hpp"

namespace heavyhex {

/// Exact maximum-likelihood table decoder for d = 3.
///
/// Enumerates all 512 single-type error strings, accumulates the probability
/// mass q^w (1-q)^(9-w) of each gauge class keyed by syndrome, and stores the
/// class leader with the largest mass per syndrome (ties resolved towards the
/// lower lexicographic leader).  Intended as a small-instance reference, not
/// a scalable decoder.
class LookupDecoder {
public:
    LookupDecoder(const CodeLayout& layout, ErrorType type, double q);

    const ErrorString& decode(const BitVec& syndrome) const;

private:
    std::unordered_map<BitVec, ErrorString, BitVecHash> table_;
};

ErrorString lookup_decode(const CodeLayout& layout, const BitVec& syndrome, ErrorType type,
                          double q);

}  // namespace heavyhex

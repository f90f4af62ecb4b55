#pragma once

#include <vector>

#include "heavyhex/gf2.hpp"

namespace heavyhex {

using gf2::BitVec;
using gf2::BitVecHash;

/// Pauli error of one type, one bit per data qubit (length d*d).
using ErrorString = gf2::BitVec;

enum class ErrorType { X, Z };

/// Stabilizer measurement outcome.  z_bits come from the Z stabilizers and
/// flag bit-flip (X) errors; x_bits come from the X stabilizers and flag
/// phase-flip (Z) errors.
struct Syndrome {
    BitVec z_bits;
    BitVec x_bits;
};

/// Static description of the distance-d code on a d x d data-qubit grid.
///
/// Qubit (row, col), both 1-based, has linear index (row-1)*d + (col-1).
/// Z gauge generators are the vertical pairs Z(i,j) Z(i+1,j).  X gauge
/// generators are the 2x2 squares with top-left corner (i,j), i+j odd,
/// plus the horizontal boundary pairs X(1,2m-1) X(1,2m) on the top row and
/// X(d,2m) X(d,2m+1) on the bottom row.  Z stabilizers are the 2x2 squares
/// with i+j even plus the vertical boundary pairs Z(2m-1,d) Z(2m,d) on the
/// right and Z(2m,1) Z(2m+1,1) on the left; X stabilizers are the full
/// two-column strips.
struct CodeLayout {
    int d = 0;
    std::size_t n_qubits = 0;
    std::vector<BitVec> x_gauge_generators;  ///< top pairs, squares row-major, bottom pairs
    std::vector<BitVec> z_gauge_generators;  ///< column-major vertical pairs
    std::vector<BitVec> z_stabilizers;       ///< squares row-major, right pairs, left pairs
    std::vector<BitVec> x_stabilizers;       ///< column strips, left to right
    BitVec logical_x;                        ///< X on every qubit of column 1
    BitVec logical_z;                        ///< Z on every qubit of row 1
};

/// Build the layout for odd d >= 3 and verify its structural invariants
/// (generator counts, stabilizer/gauge commutation, logical operators).
CodeLayout build_layout(int d);

/// Parities of e_x against each Z stabilizer, length (d*d-1)/2.
BitVec syndrome_bitflip(const CodeLayout& layout, const ErrorString& e_x);

/// Parities of e_z against each X stabilizer, length d-1.
BitVec syndrome_phaseflip(const CodeLayout& layout, const ErrorString& e_z);

Syndrome syndrome_of(const CodeLayout& layout, const ErrorString& e_x, const ErrorString& e_z);

/// The anticommuting logical pair (logical_x, logical_z).
std::pair<BitVec, BitVec> logical_ops(const CodeLayout& layout);

}  // namespace heavyhex

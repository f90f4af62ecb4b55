#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace heavyhex::gf2 {

/// Bit vector over GF(2), packed 64 bits per word.
///
/// Index 0 is the leftmost character of the string form, so "0100" sets bit 1
/// only.  Bits past size() are kept zero, which lets equality and hashing
/// work directly on the words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n);

    /// Parse from '0'/'1' characters, one per bit.
    static BitVec from_string(const std::string& s);
    static BitVec from_indices(std::size_t n, const std::vector<std::size_t>& indices);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const;
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i);

    bool any() const;
    bool none() const { return !any(); }
    std::size_t weight() const;
    std::string str() const;

    BitVec& operator^=(const BitVec& other);
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
    bool operator==(const BitVec&) const = default;

    /// Parity of |a & b|; sizes must match.
    bool overlap_parity(const BitVec& other) const;

    /// Value of sum_k 2^k * bit_k.  Requires size() <= 64.
    std::uint64_t lex_weight() const;

    /// Three-way compare of sum_k 2^k * bit_k without a width limit.
    static int cmp_lex(const BitVec& a, const BitVec& b);

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::size_t hash() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const { return v.hash(); }
};

/// Dense GF(2) matrix held as a list of equal-length rows.
class GF2Matrix {
public:
    GF2Matrix() = default;
    explicit GF2Matrix(std::size_t cols) : cols_(cols) {}
    explicit GF2Matrix(std::vector<BitVec> rows);

    void append_row(const BitVec& row);
    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const BitVec& row(std::size_t i) const { return rows_[i]; }
    const std::vector<BitVec>& row_list() const { return rows_; }

private:
    std::size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

/// Row-reduced form with pivots at the highest attainable column indices.
///
/// Each basis row's highest set bit is its pivot and every other row is zero
/// at that column; pivot columns are strictly decreasing.  Projecting the
/// pivot bits out of a vector therefore yields the unique coset member with
/// zeros at all pivots, which minimizes sum_k 2^k * e_k over the coset.
struct ReducedBasis {
    GF2Matrix basis;
    std::vector<std::size_t> pivots;
};

ReducedBasis reduce(const GF2Matrix& m);
std::size_t rank(const GF2Matrix& m);
bool in_span(const ReducedBasis& rb, const BitVec& v);
BitVec project_to_leader(const ReducedBasis& rb, const BitVec& v);

}  // namespace heavyhex::gf2

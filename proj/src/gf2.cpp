#include "heavyhex/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace heavyhex::gf2 {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

void check_index(std::size_t i, std::size_t n) {
    if (i >= n) throw std::out_of_range("BitVec index " + std::to_string(i) + " out of range");
}

void check_same_size(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("BitVec size mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
}

}  // namespace

BitVec::BitVec(std::size_t n) : n_(n), w_(word_count(n), 0) {
    if (n == 0) throw std::invalid_argument("BitVec length must be positive");
}

BitVec BitVec::from_string(const std::string& s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v.set(i);
        else if (s[i] != '0')
            throw std::invalid_argument("BitVec string must contain only '0'/'1'");
    }
    return v;
}

BitVec BitVec::from_indices(std::size_t n, const std::vector<std::size_t>& indices) {
    BitVec v(n);
    for (std::size_t i : indices) {
        check_index(i, n);
        v.set(i);
    }
    return v;
}

bool BitVec::get(std::size_t i) const {
    check_index(i, n_);
    return (w_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitVec::set(std::size_t i, bool value) {
    check_index(i, n_);
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value)
        w_[i / kWordBits] |= mask;
    else
        w_[i / kWordBits] &= ~mask;
}

void BitVec::flip(std::size_t i) {
    check_index(i, n_);
    w_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

bool BitVec::any() const {
    for (std::uint64_t w : w_)
        if (w) return true;
    return false;
}

std::size_t BitVec::weight() const {
    std::size_t total = 0;
    for (std::uint64_t w : w_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::string BitVec::str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if ((w_[i / kWordBits] >> (i % kWordBits)) & 1u) s[i] = '1';
    return s;
}

BitVec& BitVec::operator^=(const BitVec& other) {
    check_same_size(*this, other);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= other.w_[k];
    return *this;
}

bool BitVec::overlap_parity(const BitVec& other) const {
    check_same_size(*this, other);
    std::uint64_t acc = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & other.w_[k];
    return std::popcount(acc) & 1;
}

std::uint64_t BitVec::lex_weight() const {
    if (n_ > kWordBits)
        throw std::invalid_argument("lex_weight overflows past 64 bits; use cmp_lex");
    return w_.empty() ? 0 : w_[0];
}

int BitVec::cmp_lex(const BitVec& a, const BitVec& b) {
    check_same_size(a, b);
    for (std::size_t k = a.w_.size(); k-- > 0;) {
        if (a.w_[k] != b.w_[k]) return a.w_[k] < b.w_[k] ? -1 : 1;
    }
    return 0;
}

std::size_t BitVec::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (std::uint64_t w : w_) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 31));
}

GF2Matrix::GF2Matrix(std::vector<BitVec> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("GF2Matrix needs at least one row or a column count");
    cols_ = rows_[0].size();
    for (const BitVec& r : rows_)
        if (r.size() != cols_) throw std::invalid_argument("GF2Matrix rows differ in length");
}

void GF2Matrix::append_row(const BitVec& row) {
    if (cols_ == 0) cols_ = row.size();
    if (row.size() != cols_) throw std::invalid_argument("GF2Matrix rows differ in length");
    rows_.push_back(row);
}

ReducedBasis reduce(const GF2Matrix& m) {
    std::vector<BitVec> work = m.row_list();
    std::vector<BitVec> basis;
    std::vector<std::size_t> pivots;
    if (m.cols() == 0) return {GF2Matrix(0), {}};

    for (std::size_t col = m.cols(); col-- > 0;) {
        std::size_t found = work.size();
        for (std::size_t r = 0; r < work.size(); ++r) {
            if (work[r].get(col)) {
                found = r;
                break;
            }
        }
        if (found == work.size()) continue;

        BitVec pivot_row = work[found];
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(found));
        for (BitVec& r : work)
            if (r.get(col)) r ^= pivot_row;
        for (BitVec& r : basis)
            if (r.get(col)) r ^= pivot_row;
        basis.push_back(std::move(pivot_row));
        pivots.push_back(col);
    }

    GF2Matrix out(m.cols());
    for (const BitVec& r : basis) out.append_row(r);
    return {std::move(out), std::move(pivots)};
}

std::size_t rank(const GF2Matrix& m) { return reduce(m).basis.rows(); }

bool in_span(const ReducedBasis& rb, const BitVec& v) {
    return project_to_leader(rb, v).none();
}

BitVec project_to_leader(const ReducedBasis& rb, const BitVec& v) {
    if (rb.basis.rows() > 0 && rb.basis.cols() != v.size())
        throw std::invalid_argument("vector length does not match basis width");
    BitVec out = v;
    for (std::size_t r = 0; r < rb.basis.rows(); ++r)
        if (out.get(rb.pivots[r])) out ^= rb.basis.row(r);
    return out;
}

}  // namespace heavyhex::gf2

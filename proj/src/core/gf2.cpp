#include "gf2.hpp"

#include <bit>
#include <stdexcept>

namespace mpqc::gf2 {

BitVector BitVector::from_string(std::string_view s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.set(i, true);
    else if (s[i] != '0')
      throw std::invalid_argument("BitVector::from_string: bad character");
  }
  return v;
}

BitVector BitVector::ones(std::size_t n) {
  BitVector v(n);
  for (auto &w : v.words_)
    w = ~std::uint64_t{0};
  if (n & 63)
    v.words_.back() &= (std::uint64_t{1} << (n & 63)) - 1;
  return v;
}

std::size_t BitVector::weight() const {
  std::size_t w = 0;
  for (auto word : words_)
    w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

bool BitVector::is_zero() const {
  for (auto word : words_)
    if (word != 0)
      return false;
  return true;
}

void BitVector::check_same_length(const BitVector &o) const {
  if (n_ != o.n_)
    throw std::invalid_argument("BitVector: length mismatch");
}

BitVector &BitVector::operator^=(const BitVector &o) {
  check_same_length(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] ^= o.words_[i];
  return *this;
}

BitVector BitVector::operator^(const BitVector &o) const {
  BitVector r = *this;
  r ^= o;
  return r;
}

BitVector &BitVector::operator&=(const BitVector &o) {
  check_same_length(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] &= o.words_[i];
  return *this;
}

BitVector BitVector::operator&(const BitVector &o) const {
  BitVector r = *this;
  r &= o;
  return r;
}

bool BitVector::dot(const BitVector &o) const {
  check_same_length(o);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i)
    acc ^= words_[i] & o.words_[i];
  return std::popcount(acc) & 1;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i))
      s[i] = '1';
  return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string> &rows) {
  BitMatrix m;
  for (const auto &r : rows)
    m.append_row(BitVector::from_string(r));
  return m;
}

void BitMatrix::append_row(BitVector v) {
  if (rows_.empty())
    cols_ = v.size();
  else if (v.size() != cols_)
    throw std::invalid_argument("BitMatrix: row length mismatch");
  rows_.push_back(std::move(v));
}

BitVector BitMatrix::multiply(const BitVector &x) const {
  if (x.size() != cols_)
    throw std::invalid_argument("BitMatrix::multiply: dimension mismatch");
  BitVector out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    out.set(i, rows_[i].dot(x));
  return out;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (rows_[i].get(j))
        t.set(j, i, true);
  return t;
}

BitVector entrywise_product(const BitVector &u, const BitVector &v) {
  if (u.size() != v.size())
    throw std::invalid_argument("entrywise_product: length mismatch");
  return u & v;
}

std::size_t triple_product_weight(const BitVector &u, const BitVector &v,
                                  const BitVector &w) {
  return entrywise_product(entrywise_product(u, v), w).weight();
}

RrefResult rref(const BitMatrix &m) {
  RrefResult res;
  res.matrix = m;
  const std::size_t rows = m.row_count();
  const std::size_t cols = m.col_count();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (res.matrix.get(r, col)) {
        sel = r;
        break;
      }
    }
    if (sel == rows)
      continue;
    if (sel != pivot_row)
      std::swap(res.matrix.row(sel), res.matrix.row(pivot_row));
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != pivot_row && res.matrix.get(r, col))
        res.matrix.row(r) ^= res.matrix.row(pivot_row);
    }
    res.pivot_columns.push_back(col);
    ++pivot_row;
  }
  res.rank = pivot_row;
  return res;
}

std::size_t rank(const BitMatrix &m) { return rref(m).rank; }

BitMatrix nullspace(const BitMatrix &m) {
  const std::size_t cols = m.col_count();
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : r.pivot_columns)
    is_pivot[c] = true;

  BitMatrix basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col])
      continue;
    BitVector v(cols);
    v.set(free_col, true);
    // Back-substitute: pivot row i has its pivot at pivot_columns[i].
    for (std::size_t i = 0; i < r.pivot_columns.size(); ++i) {
      if (r.matrix.get(i, free_col))
        v.set(r.pivot_columns[i], true);
    }
    basis.append_row(std::move(v));
  }
  if (basis.row_count() == 0)
    basis = BitMatrix(0, cols);
  return basis;
}

std::optional<BitVector> solve(const BitMatrix &m, const BitVector &b) {
  if (b.size() != m.row_count())
    throw std::invalid_argument("solve: rhs length must equal row count");
  const std::size_t cols = m.col_count();
  // Eliminate on the augmented matrix [M | b].
  BitMatrix aug(m.row_count(), cols + 1);
  for (std::size_t i = 0; i < m.row_count(); ++i) {
    for (std::size_t j = 0; j < cols; ++j)
      if (m.get(i, j))
        aug.set(i, j, true);
    if (b.get(i))
      aug.set(i, cols, true);
  }
  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t col = 0; col < cols && pivot_row < aug.row_count(); ++col) {
    std::size_t sel = aug.row_count();
    for (std::size_t r = pivot_row; r < aug.row_count(); ++r) {
      if (aug.get(r, col)) {
        sel = r;
        break;
      }
    }
    if (sel == aug.row_count())
      continue;
    if (sel != pivot_row)
      std::swap(aug.row(sel), aug.row(pivot_row));
    for (std::size_t r = 0; r < aug.row_count(); ++r)
      if (r != pivot_row && aug.get(r, col))
        aug.row(r) ^= aug.row(pivot_row);
    pivot_cols.push_back(col);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < aug.row_count(); ++r)
    if (aug.get(r, cols))
      return std::nullopt;
  // Inconsistent rows were all zero; free variables default to 0.
  BitVector x(cols);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i)
    if (aug.get(i, cols))
      x.set(pivot_cols[i], true);
  // A pivot may have landed on the augmented column when the system is
  // inconsistent with zero rows above; guard by checking residual.
  for (std::size_t i = 0; i < m.row_count(); ++i)
    if (m.row(i).dot(x) != b.get(i))
      return std::nullopt;
  return x;
}

bool in_row_space(const BitMatrix &m, const BitVector &v) {
  if (v.size() != m.col_count())
    throw std::invalid_argument("in_row_space: length mismatch");
  return solve(m.transposed(), v).has_value();
}

} // namespace mpqc::gf2

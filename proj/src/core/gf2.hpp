#ifndef MPQC_GF2_HPP
#define MPQC_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mpqc::gf2 {

// Fixed-length vector over GF(2), bit-packed into 64-bit words.
// Length is set at construction and never changes; entries are mutable.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static BitVector from_string(std::string_view s);
  static BitVector ones(std::size_t n);

  std::size_t size() const { return n_; }

  bool get(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  std::size_t weight() const;
  bool is_zero() const;

  BitVector &operator^=(const BitVector &o);
  BitVector operator^(const BitVector &o) const;
  BitVector &operator&=(const BitVector &o);
  BitVector operator&(const BitVector &o) const;

  // Parity of the entrywise product, i.e. the GF(2) inner product.
  bool dot(const BitVector &o) const;

  std::string to_string() const;

  bool operator==(const BitVector &o) const {
    return n_ == o.n_ && words_ == o.words_;
  }
  bool operator!=(const BitVector &o) const { return !(*this == o); }

  const std::vector<std::uint64_t> &words() const { return words_; }

private:
  void check_same_length(const BitVector &o) const;

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Row-major matrix over GF(2); all rows share one length.
class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : cols_(cols), rows_(rows, BitVector(cols)) {}

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_strings(const std::vector<std::string> &rows);

  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return cols_; }

  const BitVector &row(std::size_t i) const { return rows_[i]; }
  BitVector &row(std::size_t i) { return rows_[i]; }

  void append_row(BitVector v);

  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { rows_[r].set(c, v); }

  // M * x^T over GF(2); x must have col_count() entries.
  BitVector multiply(const BitVector &x) const;

  BitMatrix transposed() const;

  bool operator==(const BitMatrix &o) const {
    return cols_ == o.cols_ && rows_ == o.rows_;
  }

private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

inline std::size_t weight(const BitVector &v) { return v.weight(); }

BitVector entrywise_product(const BitVector &u, const BitVector &v);

std::size_t triple_product_weight(const BitVector &u, const BitVector &v,
                                  const BitVector &w);

struct RrefResult {
  BitMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

// Reduced row echelon form with deterministic pivoting (lowest column
// index first). The row space is preserved; zero rows are kept at the
// bottom so the shape of the input survives.
RrefResult rref(const BitMatrix &m);

std::size_t rank(const BitMatrix &m);

// Basis of { x : M x^T = 0 }, one row per free column of rref(M),
// ordered by free column index. Row count is col_count - rank.
BitMatrix nullspace(const BitMatrix &m);

// Any x with M x^T = b, or nullopt if the system is inconsistent.
std::optional<BitVector> solve(const BitMatrix &m, const BitVector &b);

// True iff v lies in the row space of m.
bool in_row_space(const BitMatrix &m, const BitVector &v);

} // namespace mpqc::gf2

#endif

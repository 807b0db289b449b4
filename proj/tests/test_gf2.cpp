#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "gf2.hpp"

using namespace mpqc::gf2;

namespace {

// Independent elimination over plain int matrices, used as the oracle
// for rank computations.
std::size_t rank_oracle(std::vector<std::vector<int>> m) {
  if (m.empty())
    return 0;
  std::size_t rows = m.size(), cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0)
      ++sel;
    if (sel == rows)
      continue;
    std::swap(m[sel], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i != r && m[i][c]) {
        for (std::size_t j = 0; j < cols; ++j)
          m[i][j] ^= m[r][j];
      }
    }
    ++r;
  }
  return r;
}

BitMatrix random_matrix(std::mt19937_64 &rng, std::size_t rows,
                        std::size_t cols) {
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.set(i, j, rng() & 1);
  return m;
}

std::vector<std::vector<int>> to_ints(const BitMatrix &m) {
  std::vector<std::vector<int>> out(m.row_count(),
                                    std::vector<int>(m.col_count(), 0));
  for (std::size_t i = 0; i < m.row_count(); ++i)
    for (std::size_t j = 0; j < m.col_count(); ++j)
      out[i][j] = m.get(i, j);
  return out;
}

} // namespace

TEST_CASE("weight counts ones") {
  CHECK(BitVector::from_string("0000").weight() == 0);
  CHECK(BitVector::from_string("1111").weight() == 4);
  // Oracle: count by loop.
  BitVector v = BitVector::from_string("1011010");
  std::size_t by_loop = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    by_loop += v.get(i);
  CHECK(by_loop == 4);
  CHECK(v.weight() == 4);
}

TEST_CASE("weight across word boundaries") {
  BitVector v(130);
  v.set(0, true);
  v.set(63, true);
  v.set(64, true);
  v.set(129, true);
  CHECK(v.weight() == 4);
  CHECK(BitVector::ones(130).weight() == 130);
}

TEST_CASE("entrywise product") {
  BitVector u = BitVector::from_string("1100");
  BitVector v = BitVector::from_string("1010");
  BitVector expect(4);
  for (std::size_t i = 0; i < 4; ++i)
    expect.set(i, u.get(i) && v.get(i));
  CHECK(entrywise_product(u, v) == expect);
  CHECK(entrywise_product(u, v).to_string() == "1000");

  BitVector ones = BitVector::ones(4);
  BitVector zeros(4);
  CHECK(entrywise_product(u, ones) == u);
  CHECK(entrywise_product(u, zeros) == zeros);

  CHECK_THROWS_AS(entrywise_product(u, BitVector(5)), std::invalid_argument);
}

TEST_CASE("triple product weight") {
  BitVector ones = BitVector::ones(4);
  CHECK(triple_product_weight(ones, ones, ones) == 4);
  CHECK(triple_product_weight(BitVector::from_string("1100"),
                              BitVector::from_string("0011"), ones) == 0);

  BitVector a = BitVector::from_string("1110");
  BitVector b = BitVector::from_string("0111");
  BitVector c = BitVector::from_string("1011");
  std::size_t oracle = 0;
  for (std::size_t i = 0; i < 4; ++i)
    oracle += a.get(i) && b.get(i) && c.get(i);
  CHECK(triple_product_weight(a, b, c) == oracle);
  CHECK(oracle == 1);
}

TEST_CASE("inner product parity equals product weight parity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 100;
    BitMatrix m = random_matrix(rng, 2, n);
    bool lhs = m.row(0).dot(m.row(1));
    bool rhs = entrywise_product(m.row(0), m.row(1)).weight() % 2;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("rref of identity") {
  BitMatrix id = BitMatrix::identity(3);
  RrefResult r = rref(id);
  CHECK(r.matrix == id);
  CHECK(r.rank == 3);
  CHECK(r.pivot_columns == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("rref duplicate rows") {
  BitMatrix m = BitMatrix::from_strings({"1010", "1010"});
  RrefResult r = rref(m);
  CHECK(r.rank == 1);
  CHECK(r.matrix.row(0).to_string() == "1010");
  CHECK(r.matrix.row(1).is_zero());
}

TEST_CASE("rref rank matches independent oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    BitMatrix m = random_matrix(rng, 5, 8);
    CHECK(rref(m).rank == rank_oracle(to_ints(m)));
  }
}

TEST_CASE("rref is idempotent") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    BitMatrix m = random_matrix(rng, 4 + rng() % 5, 4 + rng() % 9);
    BitMatrix once = rref(m).matrix;
    CHECK(rref(once).matrix == once);
  }
}

TEST_CASE("nullspace of identity is empty") {
  BitMatrix basis = nullspace(BitMatrix::identity(4));
  CHECK(basis.row_count() == 0);
  CHECK(basis.col_count() == 4);
}

TEST_CASE("nullspace of parity check") {
  BitMatrix m = BitMatrix::from_strings({"11"});
  BitMatrix basis = nullspace(m);
  REQUIRE(basis.row_count() == 1);
  CHECK(basis.row(0).to_string() == "11");
}

TEST_CASE("nullspace verified by exhaustive membership") {
  BitMatrix m = BitMatrix::from_strings({"1100", "0011"});
  BitMatrix basis = nullspace(m);
  CHECK(basis.row_count() == 2);

  // Exhaustive oracle over all 16 vectors: x is in the null space iff
  // it is a combination of basis rows.
  for (unsigned bits = 0; bits < 16; ++bits) {
    BitVector x(4);
    for (std::size_t i = 0; i < 4; ++i)
      x.set(i, (bits >> i) & 1);
    bool in_null = m.multiply(x).is_zero();
    bool spanned = false;
    for (unsigned combo = 0; combo < 4; ++combo) {
      BitVector y(4);
      for (std::size_t i = 0; i < 2; ++i)
        if ((combo >> i) & 1)
          y ^= basis.row(i);
      if (y == x)
        spanned = true;
    }
    CHECK(in_null == spanned);
  }
}

TEST_CASE("nullspace exhaustive for random matrices up to 12 columns") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t cols = 4 + rng() % 9; // 4..12
    std::size_t rows = 1 + rng() % 6;
    BitMatrix m = random_matrix(rng, rows, cols);
    BitMatrix basis = nullspace(m);
    CHECK(basis.row_count() == cols - rref(m).rank);

    std::size_t member_count = 0;
    for (std::size_t bits = 0; bits < (std::size_t{1} << cols); ++bits) {
      BitVector x(cols);
      for (std::size_t i = 0; i < cols; ++i)
        x.set(i, (bits >> i) & 1);
      if (m.multiply(x).is_zero()) {
        ++member_count;
        CHECK(in_row_space(basis, x));
      }
    }
    CHECK(member_count == (std::size_t{1} << basis.row_count()));
  }
}

TEST_CASE("nullspace rows are orthogonal to the matrix") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    BitMatrix m = random_matrix(rng, 3 + rng() % 6, 6 + rng() % 30);
    BitMatrix basis = nullspace(m);
    CHECK(rref(m).rank + basis.row_count() == m.col_count());
    for (std::size_t i = 0; i < basis.row_count(); ++i)
      CHECK(m.multiply(basis.row(i)).is_zero());
  }
}

TEST_CASE("solve identity and infeasible") {
  BitMatrix id = BitMatrix::identity(4);
  BitVector b = BitVector::from_string("0110");
  auto x = solve(id, b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  BitMatrix zero(3, 3);
  CHECK_FALSE(solve(zero, BitVector::from_string("100")).has_value());
  CHECK_THROWS_AS(solve(id, BitVector(3)), std::invalid_argument);
}

TEST_CASE("solve random consistent systems by substitution") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t rows = 2 + rng() % 6, cols = 2 + rng() % 8;
    BitMatrix m = random_matrix(rng, rows, cols);
    BitVector secret(cols);
    for (std::size_t i = 0; i < cols; ++i)
      secret.set(i, rng() & 1);
    BitVector b = m.multiply(secret);
    auto x = solve(m, b);
    REQUIRE(x.has_value());
    CHECK(m.multiply(*x) == b);
  }
}

TEST_CASE("solve detects inconsistency") {
  std::mt19937_64 rng(43);
  std::size_t inconsistent_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 4 + rng() % 4, cols = 2 + rng() % 3;
    BitMatrix m = random_matrix(rng, rows, cols);
    BitVector b(rows);
    for (std::size_t i = 0; i < rows; ++i)
      b.set(i, rng() & 1);
    auto x = solve(m, b);
    if (x) {
      CHECK(m.multiply(*x) == b);
    } else {
      ++inconsistent_seen;
      // Exhaustive confirmation that no solution exists.
      bool any = false;
      for (std::size_t bits = 0; bits < (std::size_t{1} << cols); ++bits) {
        BitVector cand(cols);
        for (std::size_t i = 0; i < cols; ++i)
          cand.set(i, (bits >> i) & 1);
        if (m.multiply(cand) == b)
          any = true;
      }
      CHECK_FALSE(any);
    }
  }
  CHECK(inconsistent_seen > 0);
}

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <random>

#include "doctest.h"
#include "toricbetti/linalg.hpp"

using namespace toricbetti;
using Dense = std::vector<std::vector<std::int64_t>>;

namespace {

// Straightforward reference: Gaussian elimination mod p on a copy.
std::size_t reference_rank_mod(Dense a, std::int64_t p) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, rank = 0;
  for (auto& row : a)
    for (auto& x : row) x = ((x % p) + p) % p;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::int64_t inv = 1;
    for (std::int64_t e = p - 2, b = a[rank][c]; e; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      std::int64_t f = a[r][c] * inv % p;
      for (std::size_t j = 0; j < cols; ++j) a[r][j] = ((a[r][j] - f * a[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Fraction-free (Bareiss) elimination over the integers.
std::size_t rational_rank(const Dense& in) {
  using boost::multiprecision::cpp_int;
  std::vector<std::vector<cpp_int>> a;
  for (const auto& row : in) a.emplace_back(row.begin(), row.end());
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, rank = 0;
  cpp_int prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j < cols; ++j) a[r][j] = (a[rank][c] * a[r][j] - a[r][c] * a[rank][j]) / prev;
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

Dense random_pm1(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution keep(density), sign(0.5);
  Dense a(rows, std::vector<std::int64_t>(cols, 0));
  for (auto& row : a)
    for (auto& x : row)
      if (keep(rng)) x = sign(rng) ? 1 : -1;
  return a;
}

Dense transpose(const Dense& a) {
  if (a.empty()) return a;
  Dense t(a[0].size(), std::vector<std::int64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

}  // namespace

TEST_CASE("prime moduli") {
  CHECK(PrimeModulus(40009).value() == 40009);
  CHECK(PrimeModulus(2).value() == 2);
  CHECK_THROWS_AS(PrimeModulus(40000), RangeError);
  CHECK_THROWS_AS(PrimeModulus(1), RangeError);
  CHECK_THROWS_AS(PrimeModulus(1ULL << 31), RangeError);
  CHECK(PrimeModulus(2147483647ULL).value() == 2147483647U);
  PrimeModulus p(40009);
  for (std::uint32_t a : {1u, 2u, 12345u, 40008u}) CHECK(p.mul(a, p.inverse(a)) == 1);
}

TEST_CASE("basic ranks") {
  PrimeModulus p(40009);
  CHECK(rank(SparseMatrixFp::from_dense(Dense(3, std::vector<std::int64_t>(4, 0)), p)) == 0);
  for (std::size_t n : {1, 5, 300}) {
    Dense id(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    CHECK(rank(SparseMatrixFp::from_dense(id, p)) == n);
  }
  CHECK(rank(SparseMatrixFp::from_dense({{-1, -1}}, p)) == 1);
  CHECK(rank(SparseMatrixFp::from_dense({{1, 1}, {1, 1}}, PrimeModulus(2))) == 1);
  CHECK(rank(SparseMatrixFp::from_dense({{1, 1}, {1, -1}}, PrimeModulus(2))) == 1);
  CHECK(rank(SparseMatrixFp::from_dense({{1, 1}, {1, -1}}, PrimeModulus(3))) == 2);
}

TEST_CASE("sparse and dense paths agree with the reference") {
  std::mt19937 rng(1234);
  RankOptions sparse_only;
  sparse_only.dense_cells = 0;
  sparse_only.dense_density = 2.0;
  RankOptions dense_now;
  dense_now.dense_cells = SIZE_MAX;
  for (int trial = 0; trial < 120; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, trial < 100 ? 40 : 500);
    std::size_t rows = dim(rng), cols = dim(rng);
    if (trial >= 100) rows = std::min<std::size_t>(rows, 120);
    double density = std::uniform_real_distribution<double>(0.01, 0.3)(rng);
    auto a = random_pm1(rng, rows, cols, density);
    for (std::uint32_t prime : {2u, 3u, 40009u}) {
      PrimeModulus p(prime);
      auto expected = reference_rank_mod(a, prime);
      CHECK(rank(SparseMatrixFp::from_dense(a, p)) == expected);
      CHECK(rank(SparseMatrixFp::from_dense(a, p), sparse_only) == expected);
      CHECK(rank(SparseMatrixFp::from_dense(a, p), dense_now) == expected);
    }
  }
}

TEST_CASE("rank is invariant under transposition and permutation") {
  std::mt19937 rng(99);
  PrimeModulus p(40009);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_pm1(rng, 30, 45, 0.08);
    auto r = rank(SparseMatrixFp::from_dense(a, p));
    CHECK(rank(SparseMatrixFp::from_dense(transpose(a), p)) == r);
    CHECK(rank(SparseMatrixFp::from_dense(a, p).transposed()) == r);
    std::vector<std::size_t> perm(a[0].size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::shuffle(a.begin(), a.end(), rng);
    Dense b = a;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < perm.size(); ++j) b[i][j] = a[i][perm[j]];
    CHECK(rank(SparseMatrixFp::from_dense(b, p)) == r);
  }
}

TEST_CASE("modular rank never exceeds the rational rank") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(5, 60);
    auto a = random_pm1(rng, dim(rng), std::min<std::size_t>(dim(rng) * 3, 200), 0.15);
    auto q = rational_rank(a);
    for (std::uint32_t prime : {2u, 3u, 40009u}) CHECK(rank(SparseMatrixFp::from_dense(a, PrimeModulus(prime))) <= q);
  }
}

TEST_CASE("batched ranks keep input order") {
  PrimeModulus p(40009);
  CHECK(rank_batch({}, 4).empty());
  auto res = rank_batch({SparseMatrixFp::from_dense({{1, 0}, {0, 1}}, p),
                         SparseMatrixFp::from_dense(Dense(3, std::vector<std::int64_t>(3, 0)), p)},
                        2);
  REQUIRE(res.size() == 2);
  CHECK(*res[0].rank == 2);
  CHECK(*res[1].rank == 0);
  std::mt19937 rng(3);
  std::vector<SparseMatrixFp> tasks;
  std::vector<std::size_t> expected;
  for (int i = 0; i < 25; ++i) {
    auto a = random_pm1(rng, 20 + i, 30, 0.1);
    expected.push_back(reference_rank_mod(a, 40009));
    tasks.push_back(SparseMatrixFp::from_dense(a, p));
  }
  auto batch = rank_batch(tasks, 3);
  for (std::size_t i = 0; i < tasks.size(); ++i) CHECK(*batch[i].rank == expected[i]);
}

TEST_CASE("memory cap marks a task as failed without affecting the others") {
  PrimeModulus p(40009);
  std::mt19937 rng(8);
  RankOptions capped;
  capped.memory_cap_bytes = 64;
  auto big = random_pm1(rng, 40, 40, 0.5);
  auto res = rank_batch({SparseMatrixFp::from_dense(big, p), SparseMatrixFp::from_dense({{1}}, p)}, 2, capped);
  CHECK_FALSE(res[0].rank.has_value());
  CHECK_FALSE(res[0].error.empty());
  CHECK(*res[1].rank == 1);
}

TEST_CASE("triplet dump round trip") {
  PrimeModulus p(40009);
  auto m = SparseMatrixFp::from_dense({{0, -1, 2}, {3, 0, 0}}, p);
  m.validate();
  auto text = m.dump();
  CHECK(text.rfind("2 3 40009\n", 0) == 0);
  auto back = SparseMatrixFp::parse_dump(text);
  CHECK(back.row_idx == m.row_idx);
  CHECK(back.vals == m.vals);
  CHECK(back.col_ptr == m.col_ptr);
}

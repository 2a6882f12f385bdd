#ifndef TORICBETTI_LINALG_HPP
#define TORICBETTI_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toricbetti/errors.hpp"

namespace toricbetti {

/// A prime p < 2^31; primality is checked on construction.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t p);
  std::uint32_t value() const { return p_; }

  std::uint32_t reduce(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t inverse(std::uint32_t a) const;

  static bool is_prime(std::uint64_t n);

 private:
  std::uint32_t p_;
};

inline constexpr std::uint32_t kDefaultPrime = 40009;

/// Integer matrix in compressed-column form.
struct IntSparseMatrix {
  std::uint32_t n_rows = 0;
  std::uint32_t n_cols = 0;
  std::vector<std::size_t> col_ptr{0};
  std::vector<std::uint32_t> row_idx;
  std::vector<std::int32_t> vals;

  std::size_t nnz() const { return row_idx.size(); }
  /// Appends a column; entries must have strictly increasing rows.
  void push_column(std::span<const std::pair<std::uint32_t, std::int32_t>> entries);
  std::vector<std::vector<std::int64_t>> to_dense() const;
};

/// Matrix over F_p in compressed-column form. Row indices strictly increase
/// within a column and stored values are nonzero mod p.
struct SparseMatrixFp {
  std::uint32_t n_rows = 0;
  std::uint32_t n_cols = 0;
  std::uint32_t prime = kDefaultPrime;
  std::vector<std::size_t> col_ptr{0};
  std::vector<std::uint32_t> row_idx;
  std::vector<std::uint32_t> vals;

  static SparseMatrixFp from_int(const IntSparseMatrix& m, const PrimeModulus& p);
  static SparseMatrixFp from_dense(const std::vector<std::vector<std::int64_t>>& rows, const PrimeModulus& p);

  std::size_t nnz() const { return row_idx.size(); }
  SparseMatrixFp transposed() const;
  /// Checks the structural invariants; throws Error on violation.
  void validate() const;
  /// Plain-text triplet dump: header "rows cols p", then "r c v" per entry.
  std::string dump() const;
  static SparseMatrixFp parse_dump(const std::string& text);
};

struct RankOptions {
  /// Switch to dense elimination above this fill density of the active part.
  double dense_density = 0.2;
  /// Switch to dense elimination once the active part has at most this many cells.
  std::size_t dense_cells = 256 * 256;
  /// Refuse work whose dense phase would need more bytes than this (0: no cap).
  std::size_t memory_cap_bytes = 0;
};

/// Rank over F_p. The matrix is consumed.
std::size_t rank(SparseMatrixFp m, const RankOptions& opts = {});

/// Rank of a dense row-major matrix over F_p (entries already reduced). Consumed.
std::size_t dense_rank(std::vector<std::uint32_t>& cells, std::size_t rows, std::size_t cols,
                       const PrimeModulus& p);

struct RankOutcome {
  std::optional<std::size_t> rank;
  std::string error;  // set when the task failed (e.g. memory cap)
};

/// Ranks of independent matrices computed by a pool of worker threads. Results
/// are in input order and do not depend on scheduling.
std::vector<RankOutcome> rank_batch(std::vector<SparseMatrixFp> tasks, unsigned workers,
                                    const RankOptions& opts = {});

/// Worker count from BETTI_WORKERS, falling back to the hardware concurrency.
unsigned default_workers();

}  // namespace toricbetti

#endif  // TORICBETTI_LINALG_HPP

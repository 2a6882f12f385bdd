#include "toricbetti/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <queue>
#include <sstream>
#include <thread>

namespace toricbetti {

PrimeModulus::PrimeModulus(std::uint64_t p) {
  if (p < 2 || p >= (1ULL << 31) || !is_prime(p))
    throw RangeError("modulus must be a prime below 2^31: " + std::to_string(p));
  p_ = static_cast<std::uint32_t>(p);
}

bool PrimeModulus::is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t PrimeModulus::inverse(std::uint32_t a) const {
  if (a % p_ == 0) throw Error("inverse of zero");
  std::uint64_t result = 1, base = a % p_;
  for (std::uint32_t e = p_ - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
  }
  return static_cast<std::uint32_t>(result);
}

void IntSparseMatrix::push_column(std::span<const std::pair<std::uint32_t, std::int32_t>> entries) {
  for (auto [r, v] : entries) {
    row_idx.push_back(r);
    vals.push_back(v);
  }
  col_ptr.push_back(row_idx.size());
  ++n_cols;
}

std::vector<std::vector<std::int64_t>> IntSparseMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> out(n_rows, std::vector<std::int64_t>(n_cols, 0));
  for (std::uint32_t c = 0; c < n_cols; ++c)
    for (std::size_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k) out[row_idx[k]][c] = vals[k];
  return out;
}

SparseMatrixFp SparseMatrixFp::from_int(const IntSparseMatrix& m, const PrimeModulus& p) {
  SparseMatrixFp out;
  out.n_rows = m.n_rows;
  out.n_cols = m.n_cols;
  out.prime = p.value();
  out.col_ptr.reserve(m.n_cols + 1);
  out.row_idx.reserve(m.nnz());
  out.vals.reserve(m.nnz());
  for (std::uint32_t c = 0; c < m.n_cols; ++c) {
    for (std::size_t k = m.col_ptr[c]; k < m.col_ptr[c + 1]; ++k) {
      auto v = p.reduce(m.vals[k]);
      if (v == 0) continue;
      out.row_idx.push_back(m.row_idx[k]);
      out.vals.push_back(v);
    }
    out.col_ptr.push_back(out.row_idx.size());
  }
  return out;
}

SparseMatrixFp SparseMatrixFp::from_dense(const std::vector<std::vector<std::int64_t>>& rows,
                                          const PrimeModulus& p) {
  SparseMatrixFp out;
  out.n_rows = static_cast<std::uint32_t>(rows.size());
  out.n_cols = rows.empty() ? 0 : static_cast<std::uint32_t>(rows[0].size());
  out.prime = p.value();
  for (std::uint32_t c = 0; c < out.n_cols; ++c) {
    for (std::uint32_t r = 0; r < out.n_rows; ++r) {
      auto v = p.reduce(rows[r][c]);
      if (v == 0) continue;
      out.row_idx.push_back(r);
      out.vals.push_back(v);
    }
    out.col_ptr.push_back(out.row_idx.size());
  }
  return out;
}

SparseMatrixFp SparseMatrixFp::transposed() const {
  SparseMatrixFp t;
  t.n_rows = n_cols;
  t.n_cols = n_rows;
  t.prime = prime;
  std::vector<std::size_t> counts(n_rows + 1, 0);
  for (auto r : row_idx) ++counts[r + 1];
  for (std::uint32_t r = 0; r < n_rows; ++r) counts[r + 1] += counts[r];
  t.col_ptr = counts;
  t.row_idx.resize(nnz());
  t.vals.resize(nnz());
  std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
  for (std::uint32_t c = 0; c < n_cols; ++c)
    for (std::size_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k) {
      auto pos = fill[row_idx[k]]++;
      t.row_idx[pos] = c;
      t.vals[pos] = vals[k];
    }
  return t;
}

void SparseMatrixFp::validate() const {
  if (col_ptr.size() != static_cast<std::size_t>(n_cols) + 1 || col_ptr.front() != 0 || col_ptr.back() != nnz() ||
      vals.size() != nnz())
    throw Error("malformed column pointers");
  for (std::uint32_t c = 0; c < n_cols; ++c)
    for (std::size_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k) {
      if (row_idx[k] >= n_rows) throw Error("row index out of range");
      if (k > col_ptr[c] && row_idx[k] <= row_idx[k - 1]) throw Error("row indices not increasing");
      if (vals[k] == 0 || vals[k] >= prime) throw Error("value not reduced or zero");
    }
}

std::string SparseMatrixFp::dump() const {
  std::ostringstream os;
  os << n_rows << ' ' << n_cols << ' ' << prime << '\n';
  for (std::uint32_t c = 0; c < n_cols; ++c)
    for (std::size_t k = col_ptr[c]; k < col_ptr[c + 1]; ++k) os << row_idx[k] << ' ' << c << ' ' << vals[k] << '\n';
  return os.str();
}

SparseMatrixFp SparseMatrixFp::parse_dump(const std::string& text) {
  std::istringstream is(text);
  std::uint64_t rows = 0, cols = 0, p = 0;
  if (!(is >> rows >> cols >> p)) throw ParseError("missing matrix header");
  PrimeModulus mod(p);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> columns(cols);
  std::uint64_t r, c, v;
  while (is >> r >> c >> v) {
    if (r >= rows || c >= cols) throw ParseError("matrix entry out of range");
    columns[c].push_back({static_cast<std::uint32_t>(r), mod.reduce(static_cast<std::int64_t>(v))});
  }
  SparseMatrixFp out;
  out.n_rows = static_cast<std::uint32_t>(rows);
  out.n_cols = static_cast<std::uint32_t>(cols);
  out.prime = mod.value();
  for (auto& col : columns) {
    std::sort(col.begin(), col.end());
    for (auto [row, val] : col)
      if (val != 0) {
        out.row_idx.push_back(row);
        out.vals.push_back(val);
      }
    out.col_ptr.push_back(out.row_idx.size());
  }
  return out;
}

std::size_t dense_rank(std::vector<std::uint32_t>& cells, std::size_t rows, std::size_t cols,
                       const PrimeModulus& mod) {
  const std::uint64_t p = mod.value();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && cells[pivot * cols + col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      std::swap_ranges(cells.begin() + static_cast<std::ptrdiff_t>(pivot * cols),
                       cells.begin() + static_cast<std::ptrdiff_t>(pivot * cols + cols),
                       cells.begin() + static_cast<std::ptrdiff_t>(rank * cols));
    std::uint32_t* prow = &cells[rank * cols];
    const std::uint64_t inv = mod.inverse(prow[col]);
    for (std::size_t j = col; j < cols; ++j) prow[j] = static_cast<std::uint32_t>(prow[j] * inv % p);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      std::uint32_t* row = &cells[r * cols];
      const std::uint64_t f = row[col];
      if (f == 0) continue;
      const std::uint64_t nf = p - f;
      for (std::size_t j = col; j < cols; ++j)
        if (prow[j]) row[j] = static_cast<std::uint32_t>((row[j] + nf * prow[j]) % p);
    }
    ++rank;
  }
  return rank;
}

namespace {

struct Entry {
  std::uint32_t coord;
  std::uint32_t val;
};

// Structured elimination on the columns of the matrix viewed as sparse
// vectors. The pivot coordinate is the one met by the fewest active vectors
// and the pivot vector the shortest of those, which keeps the fill
// (count - 1) * (length - 1) small. Once the remaining block is dense or
// small it is finished by dense elimination.
class SparseEliminator {
 public:
  SparseEliminator(SparseMatrixFp&& m, const RankOptions& opts)
      : mod_(m.prime), opts_(opts), n_coords_(m.n_rows) {
    vecs_.resize(m.n_cols);
    active_.assign(m.n_cols, 0);
    count_.assign(n_coords_, 0);
    coord_vecs_.resize(n_coords_);
    for (std::uint32_t c = 0; c < m.n_cols; ++c) {
      auto& v = vecs_[c];
      for (std::size_t k = m.col_ptr[c]; k < m.col_ptr[c + 1]; ++k) v.push_back({m.row_idx[k], m.vals[k]});
      if (v.empty()) continue;
      active_[c] = 1;
      ++active_vecs_;
      active_nnz_ += v.size();
      for (auto e : v) {
        if (count_[e.coord]++ == 0) ++active_coords_;
        coord_vecs_[e.coord].push_back(c);
      }
    }
    m = SparseMatrixFp{};
    for (std::uint32_t r = 0; r < n_coords_; ++r)
      if (count_[r]) heap_.push({count_[r], r});
    seen_.assign(vecs_.size(), 0);
  }

  std::size_t run() {
    while (active_vecs_ > 0) {
      if (should_densify()) return rank_ + dense_finish();
      if (heap_.empty()) break;
      auto [cnt, coord] = heap_.top();
      heap_.pop();
      if (cnt != count_[coord] || cnt == 0) continue;
      eliminate(coord);
    }
    return rank_;
  }

 private:
  using HeapItem = std::pair<std::uint32_t, std::uint32_t>;

  bool should_densify() const {
    const double cells = static_cast<double>(active_vecs_) * static_cast<double>(active_coords_);
    if (cells <= static_cast<double>(opts_.dense_cells)) return true;
    return static_cast<double>(active_nnz_) > opts_.dense_density * cells;
  }

  static const Entry* find(const std::vector<Entry>& v, std::uint32_t coord) {
    auto it = std::lower_bound(v.begin(), v.end(), coord,
                               [](const Entry& e, std::uint32_t c) { return e.coord < c; });
    return (it != v.end() && it->coord == coord) ? &*it : nullptr;
  }

  void dec(std::uint32_t coord) {
    if (--count_[coord] == 0) --active_coords_;
    else heap_.push({count_[coord], coord});
  }
  void inc(std::uint32_t coord, std::uint32_t vec) {
    if (count_[coord]++ == 0) ++active_coords_;
    coord_vecs_[coord].push_back(vec);
    heap_.push({count_[coord], coord});
  }

  void eliminate(std::uint32_t coord) {
    ++stamp_;
    std::vector<std::uint32_t> holders;
    for (auto v : coord_vecs_[coord]) {
      if (!active_[v] || seen_[v] == stamp_) continue;
      seen_[v] = stamp_;
      if (find(vecs_[v], coord)) holders.push_back(v);
    }
    coord_vecs_[coord].clear();
    std::uint32_t pivot = holders.front();
    for (auto v : holders)
      if (vecs_[v].size() < vecs_[pivot].size()) pivot = v;
    // Retire the pivot vector.
    ++rank_;
    active_[pivot] = 0;
    --active_vecs_;
    active_nnz_ -= vecs_[pivot].size();
    for (auto e : vecs_[pivot]) dec(e.coord);
    const auto& pv = vecs_[pivot];
    const std::uint64_t p = mod_.value();
    const std::uint64_t pinv = mod_.inverse(find(pv, coord)->val);
    std::vector<Entry> merged;
    for (auto u : holders) {
      if (u == pivot) continue;
      auto& uv = vecs_[u];
      const std::uint64_t f = static_cast<std::uint64_t>(find(uv, coord)->val) * pinv % p;
      const std::uint64_t nf = p - f;
      merged.clear();
      merged.reserve(uv.size() + pv.size());
      std::size_t i = 0, j = 0;
      while (i < uv.size() || j < pv.size()) {
        if (j == pv.size() || (i < uv.size() && uv[i].coord < pv[j].coord)) {
          merged.push_back(uv[i++]);
        } else if (i == uv.size() || pv[j].coord < uv[i].coord) {
          auto val = static_cast<std::uint32_t>(nf * pv[j].val % p);
          merged.push_back({pv[j].coord, val});
          inc(pv[j].coord, u);
          ++j;
        } else {
          auto val = static_cast<std::uint32_t>((uv[i].val + nf * pv[j].val) % p);
          if (val) merged.push_back({uv[i].coord, val});
          else dec(uv[i].coord);
          ++i;
          ++j;
        }
      }
      active_nnz_ += merged.size();
      active_nnz_ -= uv.size();
      uv.swap(merged);
      if (uv.empty()) {
        active_[u] = 0;
        --active_vecs_;
      }
    }
    std::vector<Entry>().swap(vecs_[pivot]);
  }

  std::size_t dense_finish() {
    std::vector<std::uint32_t> coord_index(n_coords_, UINT32_MAX);
    std::size_t cols = 0;
    for (std::uint32_t r = 0; r < n_coords_; ++r)
      if (count_[r] > 0) coord_index[r] = static_cast<std::uint32_t>(cols++);
    const std::size_t rows = active_vecs_;
    const std::size_t bytes = rows * cols * sizeof(std::uint32_t);
    if (opts_.memory_cap_bytes && bytes > opts_.memory_cap_bytes)
      throw ResourceExceeded("dense block of " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " exceeds the memory cap");
    std::vector<std::uint32_t> cells(rows * cols, 0);
    std::size_t r = 0;
    for (std::size_t v = 0; v < vecs_.size(); ++v) {
      if (!active_[v]) continue;
      for (auto e : vecs_[v]) cells[r * cols + coord_index[e.coord]] = e.val;
      std::vector<Entry>().swap(vecs_[v]);
      ++r;
    }
    if (rows > cols) {
      std::vector<std::uint32_t> t(rows * cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j * rows + i] = cells[i * cols + j];
      return dense_rank(t, cols, rows, mod_);
    }
    return dense_rank(cells, rows, cols, mod_);
  }

  PrimeModulus mod_;
  RankOptions opts_;
  std::uint32_t n_coords_;
  std::vector<std::vector<Entry>> vecs_;
  std::vector<char> active_;
  std::vector<std::uint32_t> count_;
  std::vector<std::vector<std::uint32_t>> coord_vecs_;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
  std::size_t rank_ = 0;
  std::size_t active_vecs_ = 0;
  std::size_t active_coords_ = 0;
  std::size_t active_nnz_ = 0;
};

}  // namespace

std::size_t rank(SparseMatrixFp m, const RankOptions& opts) {
  if (m.n_rows == 0 || m.n_cols == 0 || m.nnz() == 0) return 0;
  // Eliminate along the shorter dimension as coordinates.
  if (m.n_rows > m.n_cols) m = m.transposed();
  SparseEliminator elim(std::move(m), opts);
  return elim.run();
}

unsigned default_workers() {
  if (const char* env = std::getenv("BETTI_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return static_cast<unsigned>(w);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::vector<RankOutcome> rank_batch(std::vector<SparseMatrixFp> tasks, unsigned workers,
                                    const RankOptions& opts) {
  std::vector<RankOutcome> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        out[i].rank = rank(std::move(tasks[i]), opts);
      } catch (const Error& e) {
        out[i].error = e.what();
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks.size())));
  if (workers <= 1) {
    work();
    return out;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  return out;
}

}  // namespace toricbetti

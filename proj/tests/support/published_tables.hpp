#ifndef TORICBETTI_TESTS_PUBLISHED_TABLES_HPP
#define TORICBETTI_TESTS_PUBLISHED_TABLES_HPP

#include <string>
#include <vector>

#include "toricbetti/polygon.hpp"
#include "toricbetti/table.hpp"

namespace testsupport {

/// A published graded Betti table, transcribed row by row: the linear row
/// holds b_1..b_{N-3} in columns 1..N-3, the quadratic row holds c_{N-3}..c_1.
struct PublishedTable {
  std::string name;
  toricbetti::LatticePolygon poly;
  std::vector<toricbetti::Count> row1;
  std::vector<toricbetti::Count> row2;

  int n() const { return static_cast<int>(poly.n_points()); }
  toricbetti::Count b(int ell) const {
    return ell >= 1 && ell <= static_cast<int>(row1.size()) ? row1[static_cast<std::size_t>(ell - 1)] : 0;
  }
  toricbetti::Count c(int ell) const {
    int col = n() - 2 - ell;
    return ell >= 1 && col >= 1 && col <= static_cast<int>(row2.size()) ? row2[static_cast<std::size_t>(col - 1)] : 0;
  }
  std::vector<toricbetti::Count> b_row() const { return row1; }
  std::vector<toricbetti::Count> c_row() const {
    std::vector<toricbetti::Count> out;
    for (int ell = 1; ell <= n() - 3; ++ell) out.push_back(c(ell));
    return out;
  }
};

inline const std::vector<PublishedTable>& published_tables() {
  using namespace toricbetti;
  static const std::vector<PublishedTable> tables = {
      {"Sigma", model_sigma(1), {}, {}},
      {"2Sigma", model_sigma(2), {6, 8, 3}, {0, 0, 0}},
      {"3Sigma", model_sigma(3), {27, 105, 189, 189, 105, 27, 0}, {0, 0, 0, 0, 0, 0, 1}},
      {"4Sigma", model_sigma(4), {75, 536, 1947, 4488, 7095, 7920, 6237, 3344, 1089, 120, 0, 0},
       {0, 0, 0, 0, 0, 0, 0, 0, 0, 55, 24, 3}},
      {"5Sigma", model_sigma(5),
       {165, 1830, 10710, 41616, 117300, 250920, 417690, 548080, 568854, 464100, 291720, 134640, 39780, 4858, 375, 0,
        0, 0},
       {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 2002, 4200, 2160, 595, 90, 6}},
      {"6Sigma", model_sigma(6),
       {315,      4950,     41850,    240120,   1024650,  3415500, 9164925, 20189400, 36989865,
        56831850, 73547100, 80233200, 73547100, 56163240, 35102025, 17305200, 6177545, 1256310,
        160398,   17890,    945,      0,        0,        0,        0},
       {0,     0,      0,      0,      0,      0,     0,     0,    0,   0, 0, 0, 0, 0, 0, 48620, 231660, 593028,
        473290, 218295, 69300, 15525, 2376, 225, 10}},
      {"Upsilon", model_upsilon(1), {0}, {1}},
      {"2Upsilon", model_upsilon_multiple(2), {24, 84, 126, 84, 20, 0, 0}, {0, 0, 0, 20, 36, 21, 4}},
      {"Upsilon2", model_upsilon(2), {7, 8, 3, 0}, {0, 6, 8, 3}},
      {"Upsilon3", model_upsilon(3), {30, 120, 210, 189, 105, 27, 0, 0}, {0, 0, 21, 105, 147, 105, 40, 6}},
      {"Upsilon4", model_upsilon(4), {81, 598, 2223, 5148, 7920, 8172, 6237, 3344, 1089, 120, 0, 0, 0},
       {0, 0, 0, 55, 450, 2376, 4488, 4950, 3630, 1859, 612, 117, 10}},
      {"Upsilon5", model_upsilon(5),
       {175, 1995, 11970, 47481, 135660, 290820, 476385, 597415, 581724, 466102, 291720, 134640, 39780, 4858, 375, 0,
        0, 0, 0},
       {0, 0, 0, 0, 120, 1575, 9555, 52650, 172172, 291720, 338130, 291720, 194782, 102120, 39900, 11305, 2205, 266,
        15}},
  };
  return tables;
}

/// Bigraded c_3 of 4Sigma as a triangle: rows from b = 10 down to b = 1,
/// columns from a = 1. The entries sum to 55.
inline const std::vector<std::vector<toricbetti::Count>>& c3_triangle_4sigma() {
  static const std::vector<std::vector<toricbetti::Count>> rows{
      {0},
      {0, 0},
      {0, 1, 0},
      {0, 1, 1, 0},
      {0, 2, 2, 2, 0},
      {0, 2, 3, 3, 2, 0},
      {0, 2, 3, 4, 3, 2, 0},
      {0, 1, 2, 3, 3, 2, 1, 0},
      {0, 1, 1, 2, 2, 2, 1, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
  };
  return rows;
}

inline const PublishedTable& published(const std::string& name) {
  for (const auto& t : published_tables())
    if (t.name == name) return t;
  throw std::out_of_range(name);
}

}  // namespace testsupport

#endif

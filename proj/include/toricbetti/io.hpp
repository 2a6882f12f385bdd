#ifndef TORICBETTI_IO_HPP
#define TORICBETTI_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "toricbetti/polygon.hpp"
#include "toricbetti/table.hpp"

namespace toricbetti {

/// Named models: "Sigma", "d*Sigma", "Upsilon", "Upsilon_d", "d*Upsilon".
LatticePolygon parse_model(const std::string& name);

/// Inline vertex list "x,y x,y ...". Points need not be ordered or minimal.
LatticePolygon parse_vertices(const std::string& text);

/// JSON object {"vertices": [[x,y], ...]} or the inline form.
LatticePolygon parse_polygon(const std::string& text);
LatticePolygon read_polygon_file(const std::filesystem::path& path);

/// Regular files of a corpus directory, sorted by name.
std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir);

/// Grid with rows 0, 1, 2 and columns 0..N-3. Row 1 column p holds b_p, row 2
/// column p holds c_{N-2-p}. Starred entries carry a trailing '*'.
std::string format_ascii(const BettiTable& t);
/// Inverse of format_ascii on the values; provenance comes back pending.
BettiTable parse_ascii(const std::string& text);

/// b, c, provenance tags, stars, prime, polygon hash and bigraded data.
std::string format_json(const BettiTable& t, const LatticePolygon& poly);
BettiTable parse_json_table(const std::string& text);

}  // namespace toricbetti

#endif  // TORICBETTI_IO_HPP

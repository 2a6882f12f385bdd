#include "toricbetti/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace toricbetti {

namespace {

using ojson = nlohmann::ordered_json;

Coord to_coord(const std::string& s) {
  Coord v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("not an integer: '" + s + "'");
  return v;
}

Count to_entry(std::string s) {
  if (!s.empty() && s.back() == '*') s.pop_back();
  Count v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) throw ParseError("bad table entry: '" + s + "'");
  return v;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

LatticePolygon parse_model(const std::string& name) {
  static const std::regex sigma(R"(\s*(?:(\d+)\s*\*\s*)?Sigma\s*)");
  static const std::regex upsilon_d(R"(\s*Upsilon_(\d+)\s*)");
  static const std::regex upsilon_mult(R"(\s*(?:(\d+)\s*\*\s*)?Upsilon\s*)");
  std::smatch m;
  auto degree = [](const std::ssub_match& g) {
    Coord d = g.matched ? to_coord(g.str()) : 1;
    if (d < 1) throw ParseError("model degree must be positive");
    return d;
  };
  if (std::regex_match(name, m, sigma)) return model_sigma(degree(m[1]));
  if (std::regex_match(name, m, upsilon_d)) return model_upsilon(degree(m[1]));
  if (std::regex_match(name, m, upsilon_mult)) {
    const Coord d = degree(m[1]);
    return d == 1 ? model_upsilon(1) : model_upsilon_multiple(d);
  }
  throw ParseError("unknown model '" + name + "' (expected d*Sigma, Upsilon_d or d*Upsilon)");
}

LatticePolygon parse_vertices(const std::string& text) {
  std::vector<LatticePoint> pts;
  for (const auto& tok : split_ws(text)) {
    auto comma = tok.find(',');
    if (comma == std::string::npos) throw ParseError("expected x,y but got '" + tok + "'");
    pts.push_back({to_coord(tok.substr(0, comma)), to_coord(tok.substr(comma + 1))});
  }
  if (pts.empty()) throw ParseError("no vertices given");
  return from_vertices(pts);
}

LatticePolygon parse_polygon(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty polygon description");
  if (text[first] != '{') return parse_vertices(text);
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.contains("vertices") || !j["vertices"].is_array())
    throw ParseError("expected {\"vertices\": [[x,y], ...]}");
  std::vector<LatticePoint> pts;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
      throw ParseError("vertex must be a pair of integers");
    pts.push_back({v[0].get<Coord>(), v[1].get<Coord>()});
  }
  if (pts.empty()) throw ParseError("no vertices given");
  return from_vertices(pts);
}

LatticePolygon read_polygon_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_polygon(buf.str());
}

std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ParseError("not a directory: " + dir.string());
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_ascii(const BettiTable& t) {
  const int cols = std::max(1, t.n - 2);
  std::vector<std::vector<std::string>> cells(3, std::vector<std::string>(static_cast<std::size_t>(cols), "0"));
  cells[0][0] = "1";
  for (int p = 1; p < cols; ++p) {
    const int ci = t.n - 2 - p;
    cells[1][static_cast<std::size_t>(p)] = std::to_string(t.b_at(p)) + (t.b_starred(p) ? "*" : "");
    cells[2][static_cast<std::size_t>(p)] = std::to_string(t.c_at(ci)) + (t.c_starred(ci) ? "*" : "");
  }
  std::vector<std::size_t> width(static_cast<std::size_t>(cols));
  for (std::size_t p = 0; p < width.size(); ++p) {
    width[p] = std::to_string(p).size();
    for (const auto& row : cells) width[p] = std::max(width[p], row[p].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::string& label, auto cell) {
    out << label << " |";
    for (std::size_t p = 0; p < width.size(); ++p) {
      std::string s = cell(p);
      out << ' ' << std::string(width[p] - s.size(), ' ') << s;
    }
    out << '\n';
  };
  emit(" ", [](std::size_t p) { return std::to_string(p); });
  std::size_t rule = 2;
  for (auto w : width) rule += w + 1;
  out << "--+" << std::string(rule - 2, '-') << '\n';
  for (int r = 0; r < 3; ++r)
    emit(std::to_string(r), [&](std::size_t p) { return cells[static_cast<std::size_t>(r)][p]; });
  return out.str();
}

BettiTable parse_ascii(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<Count>> rows(3);
  std::vector<bool> seen(3, false);
  std::size_t cols = 0;
  for (std::string line; std::getline(in, line);) {
    auto bar = line.find('|');
    if (line.empty() || line[0] == '#' || bar == std::string::npos) continue;
    auto label = split_ws(line.substr(0, bar));
    auto toks = split_ws(line.substr(bar + 1));
    if (label.empty()) {
      cols = toks.size();
      continue;
    }
    if (label.size() != 1 || label[0].size() != 1 || label[0][0] < '0' || label[0][0] > '2')
      throw ParseError("unexpected row label in table");
    const auto r = static_cast<std::size_t>(label[0][0] - '0');
    for (const auto& tok : toks) rows[r].push_back(to_entry(tok));
    seen[r] = true;
  }
  if (!seen[0] || !seen[1] || !seen[2]) throw ParseError("table needs rows 0, 1 and 2");
  if (cols == 0) cols = rows[0].size();
  for (const auto& row : rows)
    if (row.size() != cols || cols == 0) throw ParseError("ragged table");
  BettiTable t(static_cast<int>(cols) + 2);
  for (int p = 1; p < static_cast<int>(cols); ++p) {
    t.b[static_cast<std::size_t>(p - 1)] = rows[1][static_cast<std::size_t>(p)];
    t.c[static_cast<std::size_t>(t.n - 2 - p - 1)] = rows[2][static_cast<std::size_t>(p)];
  }
  return t;
}

std::string format_json(const BettiTable& t, const LatticePolygon& poly) {
  ojson j;
  j["b"] = t.b;
  j["c"] = t.c;
  j["n"] = t.n;
  std::vector<std::string> bp, cp;
  std::vector<bool> bs, cs;
  for (int ell = 1; ell <= t.length(); ++ell) {
    bp.push_back(to_string(t.b_provenance(ell)));
    cp.push_back(to_string(t.c_provenance(ell)));
    bs.push_back(t.b_starred(ell));
    cs.push_back(t.c_starred(ell));
  }
  j["b_provenance"] = bp;
  j["c_provenance"] = cp;
  j["b_starred"] = bs;
  j["c_starred"] = cs;
  j["prime"] = t.prime;
  j["polygon_hash"] = polygon_hash(poly);
  if (!t.bigraded.empty()) {
    ojson big = ojson::array();
    for (const auto& [key, v] : t.bigraded)
      big.push_back({{"strand", to_string(key.strand)},
                     {"ell", key.ell},
                     {"a", key.bidegree.x},
                     {"b", key.bidegree.y},
                     {"value", v}});
    j["bigraded"] = big;
  }
  return j.dump() + "\n";
}

BettiTable parse_json_table(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("table JSON is malformed");
  try {
    const auto b = j.at("b").get<std::vector<Count>>();
    const auto c = j.at("c").get<std::vector<Count>>();
    if (b.size() != c.size()) throw ParseError("b and c differ in length");
    const int n = j.contains("n") ? j["n"].get<int>() : static_cast<int>(b.size()) + 3;
    BettiTable t(n, j.value("prime", 0u));
    if (static_cast<std::size_t>(t.length()) != b.size()) throw ParseError("length does not match n");
    for (int ell = 1; ell <= t.length(); ++ell) {
      const auto i = static_cast<std::size_t>(ell - 1);
      Provenance bp = Provenance::pending, cp = Provenance::pending;
      if (j.contains("b_provenance")) bp = provenance_from_string(j["b_provenance"].at(i).get<std::string>());
      if (j.contains("c_provenance")) cp = provenance_from_string(j["c_provenance"].at(i).get<std::string>());
      t.set_b(ell, b[i], bp);
      t.set_c(ell, c[i], cp);
    }
    if (j.contains("bigraded"))
      for (const auto& e : j["bigraded"]) {
        Strand s = e.at("strand").get<std::string>() == "b" ? Strand::linear : Strand::quadratic;
        t.bigraded[{s, e.at("ell").get<int>(), {e.at("a").get<Coord>(), e.at("b").get<Coord>()}}] =
            e.at("value").get<Count>();
      }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("table JSON: ") + e.what());
  }
}

}  // namespace toricbetti

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "toricbetti/closed_forms.hpp"
#include "toricbetti/engine.hpp"
#include "toricbetti/io.hpp"
#include "toricbetti/oracle.hpp"

using namespace toricbetti;

namespace {

enum Exit { ok = 0, mismatch = 1, input = 2, resource = 3, cap = 4 };

struct PolygonSource {
  std::string model, vertices, file;

  void attach(CLI::App* cmd) {
    auto* g = cmd->add_option_group("polygon");
    g->add_option("--model", model, "named model: d*Sigma, Upsilon_d, d*Upsilon");
    g->add_option("--vertices", vertices, "inline vertex list \"x,y x,y ...\"");
    g->add_option("--file", file, "polygon file (JSON or inline form)");
    g->require_option(1);
  }
  LatticePolygon load() const {
    if (!model.empty()) return parse_model(model);
    if (!vertices.empty()) return parse_vertices(vertices);
    return read_polygon_file(file);
  }
};

struct EngineFlags {
  std::string removal = "auto";
  bool symmetry = true;
  bool audit = false;
  bool bigraded = false;
  unsigned workers = 0;
  std::size_t memory_cap = 0;
  std::string checkpoint;

  void attach(CLI::App* cmd, bool with_checkpoint = true) {
    cmd->add_option("--removal", removal, "point removal: on, off or auto")
        ->check(CLI::IsMember({"on", "off", "auto"}));
    cmd->add_flag("--symmetry,!--no-symmetry", symmetry, "reduce bidegrees by symmetry (default on)");
    cmd->add_flag("--audit", audit, "compute every entry and check all closed forms");
    cmd->add_flag("--bigraded", bigraded, "include per-bidegree data in JSON output");
    cmd->add_option("--workers", workers, "worker threads (default: BETTI_WORKERS or all cores)");
    cmd->add_option("--memory-cap", memory_cap, "largest dense block in bytes, e.g. 2GB (0: none)")
        ->transform(CLI::AsSizeValue(false));
    if (with_checkpoint) cmd->add_option("--checkpoint", checkpoint, "JSONL checkpoint file");
  }
  EngineOptions options() const {
    EngineOptions o;
    o.removal = removal_from_string(removal);
    o.symmetry = symmetry;
    o.audit = audit;
    o.bigraded = bigraded;
    o.workers = workers;
    o.rank.memory_cap_bytes = memory_cap;
    o.checkpoint = checkpoint;
    return o;
  }
};

std::vector<std::uint32_t> parse_primes(const std::string& list) {
  std::vector<std::uint32_t> out;
  std::stringstream in(list);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw ParseError("bad prime '" + tok + "'");
    }
    PrimeModulus check(out.back());
  }
  if (out.empty()) throw ParseError("empty prime list");
  return out;
}

void print_table(const BettiTable& t, const LatticePolygon& poly, const std::string& format) {
  if (format == "json")
    std::cout << format_json(t, poly);
  else
    std::cout << format_ascii(t);
}

// ---------------------------------------------------------------------------

struct TableCmd {
  PolygonSource src;
  EngineFlags flags;
  std::uint32_t prime = kDefaultPrime;
  std::string primes;
  std::string format = "ascii";

  int run() const {
    auto poly = src.load();
    auto opts = flags.options();
    if (primes.empty()) {
      PrimeModulus check(prime);
      try {
        print_table(betti_table(poly, prime, opts), poly, format);
      } catch (const PartialTableError& e) {
        std::cerr << "partial table:\n" << format_ascii(e.partial());
        throw;
      }
      return ok;
    }
    auto list = parse_primes(primes);
    std::vector<BettiTable> tables;
    for (auto p : list) tables.push_back(betti_table(poly, p, opts));
    bool agree = true;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      std::cout << "# p = " << list[i] << "\n";
      print_table(tables[i], poly, format);
      agree = agree && tables[i].same_values(tables.front());
    }
    std::cout << "# primes " << primes << ": " << (agree ? "agree" : "differ") << "\n";
    return ok;
  }
};

struct PredictCmd {
  PolygonSource src;

  int run() const {
    auto poly = src.load();
    const int n = static_cast<int>(poly.n_points());
    std::cout << "# N = " << n << ", boundary " << poly.boundary_count() << ", interior "
              << poly.interior_count() << ", 2vol " << poly.area2() << "\n";
    for (const auto& e : all_predictions(poly)) {
      std::cout << (e.strand == Strand::linear ? "b_" : "c_") << e.index << " = ";
      if (e.value)
        std::cout << *e.value;
      else
        std::cout << "?";
      std::cout << "  [" << e.source << (e.conjectural ? ", conjectural" : ", theorem") << "]\n";
    }
    auto cls = classify(poly);
    if (!cls.pathological()) {
      std::cout << "# linear strand: b_" << scroll_strand_lower_bound(poly) << " != 0 [theorem]; first zero at ell = "
                << kp1_predicted_first_zero(poly) << " of b_{N-ell} [conjectural]\n";
    }
    if (poly.interior_count() > 0)
      std::cout << "# last nonzero quadratic entry c_" << hering_schenck_zero_region(poly).first_nonzero
                << " >= " << cg_lower_bound(poly) << " [theorem]\n";
    return ok;
  }
};

struct Kp1Cmd {
  std::string corpus;
  std::uint32_t prime = kDefaultPrime;
  std::string checkpoint;
  EngineFlags flags;
  std::size_t stop_after = 0;

  static std::string entry_text(const LinearEntry& e) {
    std::string s = "b_" + std::to_string(e.ell) + "=" + std::to_string(e.value);
    // Zeros are rigorous; nonzero modular values may exceed the true entry.
    if (e.value != 0) s += "(mod-p upper bound)";
    return s;
  }

  int run() const {
    PrimeModulus check(prime);
    const auto files = corpus_files(corpus);
    auto opts = flags.options();
    opts.checkpoint.clear();
    std::map<std::string, std::string> done;
    if (!checkpoint.empty()) {
      std::ifstream in(checkpoint);
      for (std::string line; std::getline(in, line);) {
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("file") || !j.contains("line") || !j.contains("prime")) continue;
        if (j["prime"].get<std::uint32_t>() != prime || j.value("options", "") != opts.hash()) continue;
        done[j["file"].get<std::string>() + "\n" + j.value("content", "")] = j["line"].get<std::string>();
      }
    }
    std::map<std::string, std::size_t> counts;
    std::size_t processed = 0;
    for (const auto& path : files) {
      std::string content;
      {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        content = buf.str();
      }
      const std::string name = path.filename().string();
      std::string line, verdict;
      auto it = done.find(name + "\n" + content);
      if (it != done.end()) {
        line = it->second;
      } else {
        if (stop_after && processed >= stop_after) {
          std::cerr << "stopped after " << processed << " polygons\n";
          return resource;
        }
        ++processed;
        try {
          auto poly = parse_polygon(content);
          auto rep = verify_kp1(poly, prime, opts);
          line = name + " " + to_string(rep.verdict) + " N=" + std::to_string(poly.n_points()) +
                 " lw=" + std::to_string(rep.lattice_width) + " predicted=" + std::to_string(rep.predicted);
          for (const auto& e : rep.entries) line += " " + entry_text(e);
        } catch (const TooLarge& e) {
          line = name + " error TooLarge: " + e.what();
        } catch (const ResourceExceeded& e) {
          line = name + " error ResourceExceeded: " + e.what();
        } catch (const PathologicalPolygon& e) {
          line = name + " skipped PathologicalPolygon: " + e.what();
        } catch (const DimensionError& e) {
          line = name + " error DimensionError: " + e.what();
        } catch (const Error& e) {
          line = name + " error " + e.what();
        }
        if (!checkpoint.empty()) {
          nlohmann::json j = {{"file", name}, {"content", content}, {"prime", prime},
                              {"options", opts.hash()}, {"line", line}};
          std::ofstream out(checkpoint, std::ios::app);
          out << j.dump() << '\n';
        }
      }
      std::istringstream words(line);
      words >> verdict >> verdict;
      ++counts[verdict];
      std::cout << line << "\n";
    }
    std::cout << "# summary: " << files.size() << " polygons";
    for (const auto& [k, v] : counts) std::cout << ", " << k << " " << v;
    std::cout << "\n";
    return counts.count("fails") ? mismatch : ok;
  }
};

ComplexKind kind_from(const std::string& s) {
  if (s == "primal_b") return ComplexKind::primal_b;
  if (s == "dual_c") return ComplexKind::dual_c;
  if (s == "dual_b") return ComplexKind::dual_b;
  throw ParseError("kind must be primal_b, dual_c or dual_b");
}

struct DimsCmd {
  PolygonSource src;
  std::string kind = "primal_b";
  int ell = 1;
  std::string removal = "off";

  int run() const {
    auto poly = src.load();
    const int n = static_cast<int>(poly.n_points());
    if (ell < 1 || ell > n - 2) throw RangeError("ell must lie in 1..N-2");
    EngineOptions o;
    o.removal = removal_from_string(removal);
    const auto k = kind_from(kind);
    if (k != ComplexKind::primal_b && poly.interior_count() == 0) throw EmptyInterior("the twisted complex vanishes");
    auto spec = reduced_complex_spec(poly, removal_for(poly, o), k, ell);
    ComplexBlocks blocks(spec);
    auto gf = basis_dimension_polynomial(spec.wedge, spec.mid, spec.p);
    std::uint64_t rows = 0, cols = 0, gf_total = 0, peak = 0;
    std::cout << "# " << to_string(k) << "(" << ell << "), " << spec.region.size() << " bidegrees\n";
    for (auto s : spec.region) {
      const auto r = blocks.next_basis(s).size();
      const auto c = blocks.mid_basis(s).size();
      std::cout << "(" << s.x << "," << s.y << ") -> (" << r << ", " << c << ")\n";
      rows += r;
      cols += c;
      gf_total += gf.coefficient(spec.p, s);
      peak = std::max<std::uint64_t>(peak, c);
    }
    std::cout << "# total rows " << rows << ", total cols " << cols << ", generating function " << gf_total << "\n";
    std::cout << "# largest block " << peak << ", predicted peak " << peak_block(spec) << "\n";
    return ok;
  }
};

struct OracleCmd {
  PolygonSource src;
  std::string primes = "2,3,40009";

  int run() const {
    auto poly = src.load();
    if (poly.n_points() > kOracleMaxPoints) throw TooLarge("brute-force reference is capped at 8 lattice points");
    bool all = true;
    for (auto p : parse_primes(primes)) {
      auto ref = oracle_betti(poly, p);
      auto got = betti_table(poly, p);
      const bool same = got.same_values(ref);
      all = all && same;
      std::cout << "p=" << p << " " << (same ? "PASS" : "FAIL") << "\n";
      if (!same) std::cout << "engine:\n" << format_ascii(got) << "reference:\n" << format_ascii(ref);
    }
    std::cout << (all ? "PASS" : "FAIL") << "\n";
    return all ? ok : mismatch;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded Betti tables of toric surfaces from lattice polygons"};
  app.require_subcommand(1);

  TableCmd table;
  auto* t = app.add_subcommand("table", "compute the graded Betti table");
  table.src.attach(t);
  table.flags.attach(t);
  t->add_option("--prime", table.prime, "prime field characteristic");
  t->add_option("--primes", table.primes, "comma-separated primes: compare tables across them");
  t->add_option("--format", table.format, "ascii or json")->check(CLI::IsMember({"ascii", "json"}));

  PredictCmd predict;
  auto* p = app.add_subcommand("predict", "closed-form entries and conjectured values");
  predict.src.attach(p);

  Kp1Cmd kp1;
  auto* k = app.add_subcommand("verify-kp1", "check the predicted end of the linear strand over a corpus");
  k->add_option("corpus", kp1.corpus, "directory of polygon files")->required();
  k->add_option("--prime", kp1.prime, "prime field characteristic");
  k->add_option("--checkpoint", kp1.checkpoint, "campaign checkpoint (JSONL); resumes when present");
  k->add_option("--stop-after", kp1.stop_after, "stop after this many new polygons (exit 3)");
  kp1.flags.attach(k, false);

  DimsCmd dims;
  auto* d = app.add_subcommand("dims", "per-bidegree block sizes of one complex");
  dims.src.attach(d);
  d->add_option("--kind", dims.kind, "primal_b, dual_c or dual_b")
      ->check(CLI::IsMember({"primal_b", "dual_c", "dual_b"}));
  d->add_option("--ell", dims.ell, "index ell")->required();
  d->add_option("--removal", dims.removal, "point removal: on, off or auto")
      ->check(CLI::IsMember({"on", "off", "auto"}));

  OracleCmd oracle;
  auto* o = app.add_subcommand("oracle-check", "compare the engine with the brute-force reference");
  oracle.src.attach(o);
  o->add_option("--primes", oracle.primes, "comma-separated primes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input;
  }

  try {
    if (*t) return table.run();
    if (*p) return predict.run();
    if (*k) return kp1.run();
    if (*d) return dims.run();
    if (*o) return oracle.run();
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cap;
  } catch (const ResourceExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return resource;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return input;
  }
  return ok;
}

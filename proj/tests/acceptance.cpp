// Acceptance run: one PASS/FAIL line per criterion. The exit status is zero
// when every gating criterion passes; the 5Sigma run only gates on a wrong
// finished value, not on running out of its time budget.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "support/published_tables.hpp"
#include "support/checks.hpp"
#include "support/corpus.hpp"
#include "toricbetti/closed_forms.hpp"
#include "toricbetti/engine.hpp"
#include "toricbetti/koszul.hpp"
#include "toricbetti/oracle.hpp"

using namespace toricbetti;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Recorded {
  LatticePolygon poly;
  BettiTable table;
};

// Tables at the default prime, kept for the invariant and prediction checks.
std::map<std::string, Recorded> recorded;
std::vector<Recorded> corpus_tables;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(s < 10 ? 2 : 1);
  out << std::fixed << s << "s";
  return out.str();
}

std::string row_text(const std::vector<Count>& row) {
  std::string out;
  for (auto v : row) out += (out.empty() ? "" : ",") + std::to_string(v);
  return out;
}

// Computes each named published table and compares it entry by entry.
Outcome published_match(const std::vector<std::string>& names, double budget) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> bad;
  for (const auto& name : names) {
    const auto& pub = testsupport::published(name);
    auto t = betti_table(pub.poly);
    recorded.insert_or_assign(name, Recorded{pub.poly, t});
    if (t.b != pub.b_row() || t.c != pub.c_row())
      bad.push_back(name + " b=" + row_text(t.b) + " c=" + row_text(t.c));
  }
  const double el = seconds_since(t0);
  Outcome o;
  o.pass = bad.empty() && el < budget;
  if (!bad.empty()) {
    o.detail = "mismatch:";
    for (const auto& b : bad) o.detail += " " + b;
  } else {
    o.detail = std::to_string(names.size()) + " tables exact";
  }
  o.detail += ", " + fmt_seconds(el) + " (budget " + fmt_seconds(budget) + ")";
  return o;
}

Outcome criterion_small() {
  return published_match({"Sigma", "2Sigma", "3Sigma", "Upsilon", "Upsilon2", "2Upsilon", "Upsilon3"}, 10);
}

Outcome criterion_medium() {
  auto o = published_match({"4Sigma", "Upsilon4"}, 600);
  const auto& four = recorded.at("4Sigma").table;
  if (four.b_at(10) != 120 || four.c_at(3) != 55 || four.c_at(2) != 24 || four.c_at(1) != 3) {
    o.pass = false;
    o.detail += "; 4Sigma spot values differ";
  }
  return o;
}

// Runs 5Sigma on a detached thread so that an unfinished run can be reported.
// Sets gating to false when the run did not finish in time.
Outcome criterion_large(double budget, bool& gating, bool& abandoned) {
  auto task = std::make_shared<std::packaged_task<BettiTable()>>([] { return betti_table(model_sigma(5)); });
  auto result = task->get_future();
  auto t0 = std::chrono::steady_clock::now();
  std::thread([task] { (*task)(); }).detach();
  Outcome o;
  if (result.wait_for(std::chrono::duration<double>(budget)) != std::future_status::ready) {
    gating = false;
    abandoned = true;
    o.detail = "did not finish within " + fmt_seconds(budget) + " (stretch, not gating)";
    return o;
  }
  auto t = result.get();
  const auto& pub = testsupport::published("5Sigma");
  recorded.insert_or_assign("5Sigma", Recorded{pub.poly, t});
  o.pass = t.b == pub.b_row() && t.c == pub.c_row() && t.b_at(15) == 375;
  o.detail = o.pass ? "5Sigma exact, b_15=375, c row 2002,4200,2160,595,90,6"
                    : "5Sigma mismatch b=" + row_text(t.b) + " c=" + row_text(t.c);
  o.detail += ", " + fmt_seconds(seconds_since(t0));
  return o;
}

Outcome criterion_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  auto corpus = testsupport::mixed_corpus(7, 17);
  int mismatches = 0, compared = 0;
  for (std::uint32_t p : {2u, 3u, 40009u})
    for (const auto& poly : corpus) {
      auto t = betti_table(poly, p);
      if (!t.same_values(oracle_betti(poly, p))) ++mismatches;
      if (p == kDefaultPrime) corpus_tables.push_back({poly, t});
      ++compared;
    }
  const double el = seconds_since(t0);
  Outcome o;
  o.pass = corpus.size() >= 100 && mismatches == 0 && el < 1800;
  o.detail = std::to_string(corpus.size()) + " polygons x 3 primes, " + std::to_string(mismatches) +
             " mismatches of " + std::to_string(compared) + ", " + fmt_seconds(el);
  return o;
}

Outcome criterion_invariants() {
  std::vector<Recorded> all = corpus_tables;
  for (const auto& poly : testsupport::polygons_up_to(10)) all.push_back({poly, betti_table(poly)});
  for (const auto& [name, rec] : recorded) all.push_back(rec);
  Outcome o;
  std::size_t violations = 0;
  for (const auto& rec : all) {
    auto v = testsupport::invariant_violations(rec.poly, rec.table);
    if (!v.empty() && o.detail.empty()) o.detail = "first violation: " + v.front() + "; ";
    violations += v.size();
  }
  o.pass = violations == 0;
  o.detail += std::to_string(all.size()) + " tables, " + std::to_string(violations) + " violations";
  return o;
}

Outcome criterion_removal() {
  EngineOptions on, off;
  on.removal = EngineOptions::Removal::on;
  off.removal = EngineOptions::Removal::off;
  on.audit = off.audit = true;
  std::set<RemovalPlan::Certificate> kinds;
  int checked = 0, differing = 0;
  for (const auto& poly : testsupport::polygons_up_to(9)) {
    if (poly.interior_count() == 0) continue;
    kinds.insert(choose_removal(poly).certificate);
    ++checked;
    if (!betti_table(poly, kDefaultPrime, on).same_values(betti_table(poly, kDefaultPrime, off))) ++differing;
  }
  const bool all_kinds = kinds.count(RemovalPlan::Certificate::triangle) &&
                         kinds.count(RemovalPlan::Certificate::opposite_pair) &&
                         kinds.count(RemovalPlan::Certificate::single);
  Outcome o;
  o.pass = differing == 0 && all_kinds;
  o.detail = std::to_string(checked) + " polygons, " + std::to_string(differing) + " differ, plan kinds " +
             (all_kinds ? "triangle/pair/single all covered" : "incomplete");
  return o;
}

Outcome criterion_regularity() {
  long pairs = 0, triples = 0, disagreements = 0;
  for (const auto& poly : testsupport::polygons_up_to(8)) {
    const auto& pts = poly.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (i == j) continue;
        ++pairs;
        if (regular_pair(poly, pts[i], pts[j]) != testsupport::regular_by_enumeration(poly, {pts[i], pts[j]}))
          ++disagreements;
        for (std::size_t k = 0; k < pts.size(); ++k) {
          if (k == i || k == j) continue;
          ++triples;
          if (regular_triple(poly, pts[i], pts[j], pts[k]) !=
              testsupport::regular_by_enumeration(poly, {pts[i], pts[j], pts[k]}))
            ++disagreements;
        }
      }
  }
  Outcome o;
  o.pass = disagreements == 0;
  o.detail = std::to_string(pairs) + " pairs, " + std::to_string(triples) + " triples, " +
             std::to_string(disagreements) + " disagreements";
  return o;
}

Outcome criterion_campaign() {
  auto t0 = std::chrono::steady_clock::now();
  std::map<std::string, int> verdicts;
  int skipped = 0;
  long rigorous_zeros = 0;
  for (const auto& poly : testsupport::polygons_up_to(14)) {
    try {
      auto r = verify_kp1(poly);
      ++verdicts[to_string(r.verdict)];
      for (const auto& e : r.entries) rigorous_zeros += e.value == 0;
    } catch (const PathologicalPolygon&) {
      ++skipped;
    }
  }
  const double el = seconds_since(t0);
  int total = 0;
  for (const auto& [v, n] : verdicts) total += n;
  Outcome o;
  o.pass = verdicts["holds"] == total && total > 0 && el < 7200;
  for (const auto& [v, n] : verdicts) o.detail += v + " " + std::to_string(n) + ", ";
  o.detail += std::to_string(skipped) + " skipped (zero linear strand), " + std::to_string(rigorous_zeros) +
              " rigorous zeros, " + fmt_seconds(el);
  return o;
}

Outcome criterion_triangle() {
  const auto four = model_sigma(4);
  auto r = compute_c(four, 3, kDefaultPrime, choose_removal(four));
  const auto& rows = testsupport::c3_triangle_4sigma();
  int wrong = 0;
  Count sum = 0, printed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      const LatticePoint s{1 + static_cast<Coord>(j), 10 - static_cast<Coord>(i)};
      auto it = r.bigraded.find(s);
      wrong += (it == r.bigraded.end() ? 0 : it->second) != rows[i][j];
      printed += rows[i][j];
    }
  for (const auto& [s, v] : r.bigraded) sum += v;
  Outcome o;
  o.pass = wrong == 0 && sum == 55 && printed == 55;
  o.detail = std::to_string(wrong) + " entries differ, bigraded sum " + std::to_string(sum);
  return o;
}

Outcome criterion_veronese() {
  const std::map<Coord, std::string> names{{2, "2Sigma"}, {3, "3Sigma"}, {4, "4Sigma"}, {5, "5Sigma"}};
  const std::map<Coord, Count> b_expected{{2, 3}, {3, 27}, {4, 120}, {5, 375}};
  const std::map<Coord, Count> c_expected{{3, 1}, {4, 55}, {5, 2002}};
  Outcome o;
  o.pass = true;
  std::string checked;
  for (const auto& [d, name] : names) {
    auto it = recorded.find(name);
    if (it == recorded.end()) continue;
    const auto& t = it->second.table;
    auto pred = veronese_predictions(d);
    bool ok = pred.b_index == d * (d + 1) / 2 && pred.b_last == b_expected.at(d) && t.b_at(pred.b_index) == pred.b_last;
    if (d >= 3) ok = ok && pred.c_first == c_expected.at(d) && t.c_at(pred.c_index) == pred.c_first;
    if (!ok) o.detail += "d=" + std::to_string(d) + " differs; ";
    o.pass = o.pass && ok;
    checked += (checked.empty() ? "" : ",") + std::to_string(d);
  }
  o.detail += "d=" + checked + " checked";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs the acceptance criteria and prints one PASS/FAIL line each"};
  double stretch_budget = 3600;
  app.add_option("--stretch-budget", stretch_budget, "Seconds allowed for the 5Sigma run")->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);

  bool all_gating_pass = true, abandoned = false;
  auto report = [&](int id, const std::string& title, const std::function<Outcome(bool&)>& run) {
    bool gating = true;
    Outcome o;
    try {
      o = run(gating);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass && gating) all_gating_pass = false;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << title << ": " << o.detail << std::endl;
  };
  auto plain = [](Outcome (*f)()) { return [f](bool&) { return f(); }; };

  report(1, "small published tables", plain(criterion_small));
  report(2, "4Sigma and Upsilon4", plain(criterion_medium));
  report(3, "5Sigma", [&](bool& gating) { return criterion_large(stretch_budget, gating, abandoned); });
  report(4, "engine equals oracle on the N<=7 corpus", plain(criterion_oracle));
  report(5, "invariant suite", plain(criterion_invariants));
  report(6, "removal on equals removal off for N<=9", plain(criterion_removal));
  report(7, "regularity criteria against enumeration for N<=8", plain(criterion_regularity));
  report(8, "verify-kp1 campaign for N<=14", plain(criterion_campaign));
  report(9, "bigraded c_3 triangle of 4Sigma", plain(criterion_triangle));
  report(10, "Veronese predictions", plain(criterion_veronese));

  std::cout << (all_gating_pass ? "all gating criteria pass" : "some gating criteria fail") << std::endl;
  const int code = all_gating_pass ? 0 : 1;
  // An abandoned 5Sigma worker is still running; do not wait for it.
  if (abandoned) std::_Exit(code);
  return code;
}

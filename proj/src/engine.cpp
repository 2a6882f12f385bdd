#include "toricbetti/engine.hpp"

#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "toricbetti/closed_forms.hpp"

namespace toricbetti {

std::string to_string(EngineOptions::Removal r) {
  switch (r) {
    case EngineOptions::Removal::off:
      return "off";
    case EngineOptions::Removal::on:
      return "on";
    case EngineOptions::Removal::automatic:
      break;
  }
  return "auto";
}

EngineOptions::Removal removal_from_string(const std::string& s) {
  if (s == "off") return EngineOptions::Removal::off;
  if (s == "on") return EngineOptions::Removal::on;
  if (s == "auto") return EngineOptions::Removal::automatic;
  throw ParseError("removal must be on, off or auto");
}

std::string EngineOptions::hash() const {
  return "removal=" + to_string(removal) + ";symmetry=" + (symmetry ? "1" : "0");
}

RemovalPlan removal_for(const LatticePolygon& poly, const EngineOptions& opts) {
  switch (opts.removal) {
    case EngineOptions::Removal::off:
      return {};
    case EngineOptions::Removal::on:
      return choose_removal(poly);
    case EngineOptions::Removal::automatic:
      break;
  }
  return poly.vertices().size() == 3 ? choose_removal(poly) : RemovalPlan{};
}

std::vector<Orbit> orbit_reduce(const PointSet& bidegrees, const std::vector<AffineUnimodularMap>& actions) {
  std::vector<Orbit> out;
  std::vector<char> seen(bidegrees.size(), 0);
  for (std::size_t i = 0; i < bidegrees.size(); ++i) {
    if (seen[i]) continue;
    std::set<LatticePoint> members{bidegrees[i]};
    for (const auto& g : actions) members.insert(g(bidegrees[i]));
    Orbit o;
    for (auto m : members) {
      auto idx = bidegrees.index_of(m);
      if (idx < 0) throw Error("symmetry does not preserve the bidegree region");
      seen[static_cast<std::size_t>(idx)] = 1;
      o.members.push_back(m);
    }
    o.rep = o.members.front();
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<AffineUnimodularMap> bidegree_actions(const LatticePolygon& poly, const RemovalPlan& plan, int weight) {
  PointSet removed(plan.removed);
  std::vector<AffineUnimodularMap> out;
  for (const auto& g : symmetry_group(poly)) {
    if (!(g.apply(removed) == removed)) continue;
    auto h = g;
    h.shift = static_cast<Coord>(weight) * g.shift;
    out.push_back(h);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

ComplexKind kind_from_string(const std::string& s) {
  if (s == "primal_b") return ComplexKind::primal_b;
  if (s == "dual_c") return ComplexKind::dual_c;
  if (s == "dual_b") return ComplexKind::dual_b;
  return ComplexKind::custom;
}

std::string checkpoint_key(const LatticePolygon& poly, std::uint32_t prime, const EngineOptions& opts) {
  return polygon_hash(poly) + ":" + exact_hash(poly) + ":" + std::to_string(prime) + ":" + opts.hash();
}

}  // namespace

Checkpoint::Checkpoint(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("key")) continue;  // torn final line
    try {
      Record r;
      r.key = j.at("key").get<std::string>();
      r.kind = kind_from_string(j.at("kind").get<std::string>());
      r.ell = j.at("ell").get<int>();
      r.bidegree = {j.at("a").get<Coord>(), j.at("b").get<Coord>()};
      r.orbit_size = j.at("orbit_size").get<std::size_t>();
      r.cols = j.at("cols").get<std::size_t>();
      r.rank_out = j.at("rank_out").get<std::size_t>();
      r.rank_in = j.at("rank_in").get<std::size_t>();
      r.value = j.at("value").get<Count>();
      records_[{r.key, static_cast<int>(r.kind), r.ell, r.bidegree}] = r;
    } catch (const nlohmann::json::exception&) {
      continue;
    }
  }
}

std::optional<Checkpoint::Record> Checkpoint::find(const std::string& key, ComplexKind kind, int ell,
                                                   LatticePoint s) const {
  std::lock_guard lock(mu_);
  auto it = records_.find({key, static_cast<int>(kind), ell, s});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void Checkpoint::append(const Record& r) {
  nlohmann::json j = {{"key", r.key},       {"kind", to_string(r.kind)}, {"ell", r.ell},
                      {"a", r.bidegree.x},  {"b", r.bidegree.y},         {"orbit_size", r.orbit_size},
                      {"cols", r.cols},     {"rank_out", r.rank_out},    {"rank_in", r.rank_in},
                      {"value", r.value}};
  std::lock_guard lock(mu_);
  records_[{r.key, static_cast<int>(r.kind), r.ell, r.bidegree}] = r;
  std::ofstream out(path_, std::ios::app);
  out << j.dump() << '\n';
  out.flush();
}

std::size_t Checkpoint::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

// ---------------------------------------------------------------------------

EntryResult compute_complex(const LatticePolygon& poly, ComplexKind kind, int ell, std::uint32_t prime,
                            const RemovalPlan& plan, const EngineOptions& opts, Checkpoint* checkpoint) {
  EntryResult res;
  auto spec = reduced_complex_spec(poly, plan, kind, ell);
  if (spec.mid.empty() || spec.region.empty()) return res;
  const PrimeModulus pm(prime);
  auto actions = opts.symmetry ? bidegree_actions(poly, plan, spec.weight)
                               : std::vector<AffineUnimodularMap>{AffineUnimodularMap::identity()};
  auto orbits = orbit_reduce(spec.region, actions);
  res.orbits = orbits.size();
  res.bidegrees = spec.region.size();

  const ComplexBlocks blocks(spec);
  const std::string key = checkpoint ? checkpoint_key(poly, prime, opts) : std::string();
  std::vector<Count> values(orbits.size(), 0);
  std::vector<std::string> errors(orbits.size());
  std::vector<std::string> faults(orbits.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < orbits.size();) {
      const LatticePoint s = orbits[i].rep;
      try {
        if (checkpoint) {
          if (auto r = checkpoint->find(key, kind, ell, s)) {
            values[i] = r->value;
            continue;
          }
        }
        const std::size_t mid = blocks.mid_basis(s).size();
        std::size_t out = 0, in = 0;
        if (mid > 0) {
          out = rank(SparseMatrixFp::from_int(blocks.outgoing(s), pm), opts.rank);
          if (!spec.prev.empty())
            in = spec.prev_injective ? blocks.prev_basis(s).size()
                                     : rank(SparseMatrixFp::from_int(blocks.incoming(s), pm), opts.rank);
        }
        if (out + in > mid) throw Error("ranks exceed the middle dimension");
        values[i] = static_cast<Count>(mid - out - in);
        if (checkpoint)
          checkpoint->append({key, kind, ell, s, orbits[i].members.size(), mid, out, in, values[i]});
      } catch (const ResourceExceeded& e) {
        errors[i] = e.what();
      } catch (const std::exception& e) {
        faults[i] = e.what();
      }
    }
  };

  unsigned workers = opts.workers ? opts.workers : default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), orbits.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < orbits.size(); ++i) {
    if (!faults[i].empty()) throw Error(faults[i]);
    if (!errors[i].empty()) {
      std::ostringstream msg;
      msg << to_string(kind) << "(" << ell << ") at bidegree " << orbits[i].rep << ": " << errors[i];
      throw ResourceExceeded(msg.str());
    }
    res.value += values[i] * static_cast<Count>(orbits[i].members.size());
    if (values[i])
      for (auto m : orbits[i].members) res.bigraded[m] = values[i];
  }
  return res;
}

EntryResult compute_b(const LatticePolygon& poly, int ell, std::uint32_t prime, const RemovalPlan& plan,
                      const EngineOptions& opts) {
  return compute_complex(poly, ComplexKind::primal_b, ell, prime, plan, opts);
}

EntryResult compute_b_dual(const LatticePolygon& poly, int ell, std::uint32_t prime, const RemovalPlan& plan,
                           const EngineOptions& opts) {
  if (poly.interior_count() == 0) throw EmptyInterior("the twisted complex vanishes");
  return compute_complex(poly, ComplexKind::dual_b, ell, prime, plan, opts);
}

EntryResult compute_c(const LatticePolygon& poly, int ell, std::uint32_t prime, const RemovalPlan& plan,
                      const EngineOptions& opts) {
  if (poly.interior_count() == 0) return {};
  return compute_complex(poly, ComplexKind::dual_c, ell, prime, plan, opts);
}

// ---------------------------------------------------------------------------

std::string to_string(Strategy::Route r) {
  switch (r) {
    case Strategy::Route::compute_b:
      return "compute_b";
    case Strategy::Route::compute_c:
      return "compute_c";
    case Strategy::Route::shortcut:
      break;
  }
  return "shortcut";
}

std::size_t Strategy::computed_count() const {
  std::size_t n = 0;
  for (const auto& c : choices) n += c.route != Route::shortcut;
  return n;
}

namespace {

// Shortcut tags for the antidiagonal through b_ℓ, or nullopt when neither
// side is forced.
std::optional<std::pair<Provenance, Provenance>> forced(const LatticePolygon& poly, int ell) {
  const int n = static_cast<int>(poly.n_points());
  const int ci = n - 1 - ell;
  const bool b_in = ell <= n - 3, c_in = ci <= n - 3;
  const bool interior = poly.interior_count() > 0;
  const int hs_from = n + 1 - static_cast<int>(poly.boundary_count());
  const bool b_zero = interior && b_in && ell == n - 3;
  const bool c_zero = interior && c_in && ci >= hs_from;
  if (!b_zero && !c_zero) return std::nullopt;
  Provenance b = b_zero ? Provenance::zero_by_bn3 : (b_in ? Provenance::crossfilled : Provenance::zero_by_shape);
  Provenance c = c_zero ? Provenance::zero_by_hs : (c_in ? Provenance::crossfilled : Provenance::zero_by_shape);
  return std::pair{b, c};
}

}  // namespace

Strategy plan_strategy(const LatticePolygon& poly, const EngineOptions& opts) {
  if (poly.dimension() != 2) throw DimensionError("polygon must be two-dimensional");
  Strategy st;
  st.use_symmetry = opts.symmetry;
  const int n = static_cast<int>(poly.n_points());
  if (n < 4) return st;
  if (poly.interior_count() == 0) {
    st.eagon_northcott = true;
    for (int ell = 1; ell <= n - 2; ++ell)
      st.choices.push_back({ell, Strategy::Route::shortcut, Provenance::eagon_northcott, Provenance::eagon_northcott});
    return st;
  }
  st.plan = removal_for(poly, opts);
  for (int ell = 1; ell <= n - 2; ++ell) {
    Strategy::Choice ch;
    ch.ell = ell;
    const int ci = n - 1 - ell;
    if (auto f = forced(poly, ell)) {
      ch.route = Strategy::Route::shortcut;
      ch.b_tag = f->first;
      ch.c_tag = f->second;
    } else if (ell == 1) {
      ch.route = Strategy::Route::compute_b;
    } else if (ci == 1) {
      ch.route = Strategy::Route::compute_c;
    } else {
      ch.peak_b = peak_block(reduced_complex_spec(poly, st.plan, ComplexKind::primal_b, ell));
      ch.peak_c = peak_block(reduced_complex_spec(poly, st.plan, ComplexKind::dual_c, ci));
      ch.route = ch.peak_c <= ch.peak_b ? Strategy::Route::compute_c : Strategy::Route::compute_b;
    }
    st.choices.push_back(ch);
  }
  return st;
}

namespace {

void audit_table(const LatticePolygon& poly, const BettiTable& t) {
  const int n = t.n;
  auto fail = [](const std::string& what) { throw Error("audit: " + what); };
  for (int ell = 1; ell <= n - 2; ++ell)
    if (t.b_at(ell) - t.c_at(n - 1 - ell) != antidiagonal_difference(poly, ell))
      fail("antidiagonal identity at " + std::to_string(ell));
  if (poly.interior_count() == 0) {
    auto en = eagon_northcott_table(poly);
    if (!en.same_values(t)) fail("empty-interior table");
    return;
  }
  auto hs = hering_schenck_zero_region(poly);
  for (int ell : hs.zero)
    if (t.c_at(ell) != 0) fail("quadratic vanishing at " + std::to_string(ell));
  if (hs.first_nonzero >= 1 && hs.first_nonzero <= n - 3 && t.c_at(hs.first_nonzero) == 0)
    fail("last nonzero quadratic entry");
  if (t.b_at(n - 3) != 0) fail("last linear entry");
  auto check = [&](const EntryPrediction& e) {
    Count v = e.strand == Strand::linear ? t.b_at(e.index) : t.c_at(e.index);
    if (e.value && v != *e.value) fail(e.source);
  };
  for (const auto& e : six_easy_entries(poly)) check(e);
  if (n >= 5) check(entry_bN4(poly));
  if (n >= 6) check(entry_c3(poly));
}

void store(BettiTable& t, Strand strand, int ell, const EntryResult& r, bool bigraded) {
  if (!bigraded) return;
  for (const auto& [s, v] : r.bigraded) t.bigraded[{strand, ell, s}] = v;
}

}  // namespace

BettiTable betti_table(const LatticePolygon& poly, std::uint32_t prime, const EngineOptions& opts) {
  PrimeModulus check(prime);
  (void)check;
  auto st = plan_strategy(poly, opts);
  const int n = static_cast<int>(poly.n_points());
  BettiTable t(n, prime);
  if (n < 4) return t;
  if (st.eagon_northcott && !opts.audit) {
    auto en = eagon_northcott_table(poly);
    en.prime = prime;
    return en;
  }
  const RemovalPlan plan = st.eagon_northcott ? removal_for(poly, opts) : st.plan;
  std::unique_ptr<Checkpoint> cp;
  if (!opts.checkpoint.empty()) cp = std::make_unique<Checkpoint>(opts.checkpoint);

  auto run_b = [&](int ell) {
    auto r = compute_complex(poly, ComplexKind::primal_b, ell, prime, plan, opts, cp.get());
    store(t, Strand::linear, ell, r, opts.bigraded);
    return r.value;
  };
  auto run_c = [&](int ell) {
    if (poly.interior_count() == 0) return Count{0};
    auto r = compute_complex(poly, ComplexKind::dual_c, ell, prime, plan, opts, cp.get());
    store(t, Strand::quadratic, ell, r, opts.bigraded);
    return r.value;
  };

  try {
    if (opts.audit) {
      for (int ell = 1; ell <= n - 3; ++ell) {
        t.set_b(ell, run_b(ell), Provenance::computed);
        t.set_c(ell, run_c(ell), Provenance::computed);
      }
      audit_table(poly, t);
      return t;
    }
    for (const auto& ch : st.choices) {
      const int bi = ch.ell, ci = n - 1 - ch.ell;
      const bool b_in = bi <= n - 3, c_in = ci <= n - 3;
      const Count diff = antidiagonal_difference(poly, ch.ell);
      Count b = 0, c = 0;
      Provenance bp = ch.b_tag, cp_tag = ch.c_tag;
      switch (ch.route) {
        case Strategy::Route::shortcut:
          // At least one side is a theorem zero; the other follows.
          if (bp == Provenance::crossfilled) b = diff;
          if (cp_tag == Provenance::crossfilled) c = -diff;
          break;
        case Strategy::Route::compute_b:
          b = run_b(bi);
          bp = Provenance::computed;
          c = b - diff;
          cp_tag = c_in ? Provenance::crossfilled : Provenance::zero_by_shape;
          break;
        case Strategy::Route::compute_c:
          c = run_c(ci);
          cp_tag = Provenance::computed;
          b = c + diff;
          bp = b_in ? Provenance::crossfilled : Provenance::zero_by_shape;
          break;
      }
      if (!b_in && b != 0) throw Error("nonzero linear entry outside the table");
      if (!c_in && c != 0) throw Error("nonzero quadratic entry outside the table");
      if (b < 0 || c < 0) throw Error("negative entry on antidiagonal " + std::to_string(ch.ell));
      if (b_in) t.set_b(bi, b, bp);
      if (c_in) t.set_c(ci, c, cp_tag);
    }
  } catch (const ResourceExceeded& e) {
    throw PartialTableError(e.what(), t);
  }
  return t;
}

LinearEntry linear_entry(const LatticePolygon& poly, int ell, std::uint32_t prime, const EngineOptions& opts) {
  const int n = static_cast<int>(poly.n_points());
  LinearEntry e{ell, 0, Provenance::zero_by_shape};
  if (ell < 1 || ell > n - 3) return e;
  if (poly.interior_count() == 0) {
    e.value = eagon_northcott_table(poly).b_at(ell);
    e.provenance = Provenance::eagon_northcott;
    return e;
  }
  const auto plan = removal_for(poly, opts);
  if (auto f = forced(poly, ell)) {
    e.provenance = f->first;
    e.value = f->first == Provenance::crossfilled ? antidiagonal_difference(poly, ell) : 0;
    return e;
  }
  const int ci = n - 1 - ell;
  bool use_c = false;
  if (ell > 1 && ci >= 1) {
    auto pb = peak_block(reduced_complex_spec(poly, plan, ComplexKind::primal_b, ell));
    auto pc = peak_block(reduced_complex_spec(poly, plan, ComplexKind::dual_c, ci));
    use_c = pc <= pb;
  }
  if (use_c) {
    e.value = compute_c(poly, ci, prime, plan, opts).value + antidiagonal_difference(poly, ell);
    e.provenance = Provenance::crossfilled;
  } else {
    e.value = compute_b(poly, ell, prime, plan, opts).value;
    e.provenance = Provenance::computed;
  }
  return e;
}

std::string to_string(Kp1Report::Verdict v) {
  switch (v) {
    case Kp1Report::Verdict::holds:
      return "holds";
    case Kp1Report::Verdict::fails:
      return "fails";
    case Kp1Report::Verdict::modular_only_nonzero:
      break;
  }
  return "modular-only-nonzero";
}

Kp1Report verify_kp1(const LatticePolygon& poly, std::uint32_t prime, const EngineOptions& opts) {
  auto cls = classify(poly);
  if (cls.pathological()) throw PathologicalPolygon("linear strand is identically zero");
  Kp1Report rep;
  const int n = static_cast<int>(poly.n_points());
  rep.lattice_width = lattice_width(poly).width;
  rep.predicted = kp1_predicted_first_zero(poly);
  const int lw = static_cast<int>(rep.lattice_width);
  std::vector<int> indices{n - lw - 2, n - lw - 1};
  if (cls.exceptional()) indices.push_back(n - lw);
  const int nonzero_at = n - static_cast<int>(rep.predicted);
  for (int idx : indices) {
    auto e = linear_entry(poly, idx, prime, opts);
    rep.entries.push_back(e);
    if (idx < 1 || idx > n - 3) continue;
    if (idx == nonzero_at && e.value == 0) rep.verdict = Kp1Report::Verdict::fails;
    if (idx > nonzero_at && e.value != 0 && rep.verdict == Kp1Report::Verdict::holds)
      rep.verdict = Kp1Report::Verdict::modular_only_nonzero;
  }
  return rep;
}

PruneReport verify_prune_monotonicity(const LatticePolygon& poly, LatticePoint vertex, std::uint32_t prime,
                                      const EngineOptions& opts) {
  PruneReport rep;
  rep.pruned = prune_vertex(poly, vertex);
  if (rep.pruned.dimension() != 2) throw DimensionError("pruned polygon is not two-dimensional");
  auto big = betti_table(poly, prime, opts);
  auto small = betti_table(rep.pruned, prime, opts);
  for (int p = 1; p + 1 <= big.n - 3; ++p) {
    if (small.b_at(p) != 0) continue;
    rep.checked.push_back(p);
    if (big.b_at(p + 1) != 0) rep.violations.push_back(p);
  }
  return rep;
}

SupportReport support_region_check(const LatticePolygon& poly, const BettiTable& table) {
  SupportReport rep;
  const int n = static_cast<int>(poly.n_points());
  const LatticePoint sigma = sigma_point(poly);
  std::map<std::pair<Strand, int>, std::pair<LatticePolygon, LatticePolygon>> regions;
  auto region = [&](Strand strand, int ell) -> const std::pair<LatticePolygon, LatticePolygon>& {
    auto it = regions.find({strand, ell});
    if (it != regions.end()) return it->second;
    std::pair<LatticePolygon, LatticePolygon> r;
    if (strand == Strand::linear) {
      r.first = dilate(poly, ell + 1);
      r.second = minkowski_sum(dilate(poly, n - 3 - ell), interior_hull(dilate(poly, 2)));
    } else {
      r.first = minkowski_sum(dilate(poly, ell - 1), interior_hull(poly));
      r.second = dilate(poly, n - ell);
    }
    return regions.emplace(std::pair{strand, ell}, std::move(r)).first->second;
  };
  for (const auto& [key, v] : table.bigraded) {
    if (v == 0) continue;
    ++rep.checked;
    const auto& [own, other] = region(key.strand, key.ell);
    if (!own.contains(key.bidegree) || !other.contains(sigma - key.bidegree)) rep.violations.push_back(key);
  }
  return rep;
}

std::vector<LatticePoint> bigraded_duality_check(const LatticePolygon& poly, int ell, std::uint32_t prime,
                                                 const EngineOptions& opts) {
  const auto plan = removal_for(poly, opts);
  auto primal = compute_b(poly, ell, prime, plan, opts).bigraded;
  auto dual = compute_b_dual(poly, ell, prime, plan, opts).bigraded;
  const LatticePoint sigma = sigma_point(poly);
  std::set<LatticePoint> all;
  for (const auto& [s, v] : primal) all.insert(s);
  for (const auto& [s, v] : dual) all.insert(sigma - s);
  std::vector<LatticePoint> bad;
  for (auto s : all) {
    auto a = primal.count(s) ? primal.at(s) : 0;
    auto b = dual.count(sigma - s) ? dual.at(sigma - s) : 0;
    if (a != b) bad.push_back(s);
  }
  return bad;
}

}  // namespace toricbetti

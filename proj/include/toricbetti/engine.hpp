#ifndef TORICBETTI_ENGINE_HPP
#define TORICBETTI_ENGINE_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "toricbetti/koszul.hpp"
#include "toricbetti/linalg.hpp"
#include "toricbetti/polygon.hpp"
#include "toricbetti/table.hpp"

namespace toricbetti {

struct EngineOptions {
  enum class Removal { off, on, automatic };  // automatic: triangles only
  Removal removal = Removal::automatic;
  bool symmetry = true;
  /// Compute every entry directly (theorem zeros included) and check all
  /// closed forms; throws Error on any disagreement.
  bool audit = false;
  bool bigraded = false;
  unsigned workers = 0;  // 0: default_workers()
  RankOptions rank;
  std::string checkpoint;  // JSONL path, empty to disable

  /// Digest of the options that change per-bidegree work.
  std::string hash() const;
};

std::string to_string(EngineOptions::Removal r);
EngineOptions::Removal removal_from_string(const std::string& s);

RemovalPlan removal_for(const LatticePolygon& poly, const EngineOptions& opts);

struct Orbit {
  LatticePoint rep;
  std::vector<LatticePoint> members;
};

/// Partition of a bidegree set into orbits of a group of affine maps that
/// preserves it. Representatives are the smallest members; orbits are ordered
/// by representative.
std::vector<Orbit> orbit_reduce(const PointSet& bidegrees, const std::vector<AffineUnimodularMap>& actions);

/// Action on bidegrees of total degree `weight` of the symmetries of the
/// polygon that fix the removed points as a set: s -> sM + weight * t.
std::vector<AffineUnimodularMap> bidegree_actions(const LatticePolygon& poly, const RemovalPlan& plan, int weight);

/// Per-bidegree results persisted across runs. Records are trusted only when
/// their key matches.
class Checkpoint {
 public:
  struct Record {
    std::string key;
    ComplexKind kind = ComplexKind::custom;
    int ell = 0;
    LatticePoint bidegree;
    std::size_t orbit_size = 0;
    std::size_t cols = 0;
    std::size_t rank_out = 0;
    std::size_t rank_in = 0;
    Count value = 0;
  };

  explicit Checkpoint(std::string path);
  std::optional<Record> find(const std::string& key, ComplexKind kind, int ell, LatticePoint s) const;
  void append(const Record& r);
  std::size_t size() const;

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::tuple<std::string, int, int, LatticePoint>, Record> records_;
};

struct EntryResult {
  Count value = 0;
  std::map<LatticePoint, Count> bigraded;  // nonzero bidegrees only
  std::size_t orbits = 0;
  std::size_t bidegrees = 0;
};

/// Sum over bidegrees of the middle cohomology of a complex of the given kind.
EntryResult compute_complex(const LatticePolygon& poly, ComplexKind kind, int ell, std::uint32_t prime,
                            const RemovalPlan& plan, const EngineOptions& opts, Checkpoint* checkpoint = nullptr);

/// b_ℓ from the untwisted complex.
EntryResult compute_b(const LatticePolygon& poly, int ell, std::uint32_t prime, const RemovalPlan& plan,
                      const EngineOptions& opts = {});
/// b_ℓ from the twisted dual complex.
EntryResult compute_b_dual(const LatticePolygon& poly, int ell, std::uint32_t prime, const RemovalPlan& plan,
                           const EngineOptions& opts = {});
/// c_ℓ as a kernel dimension in the twisted complex; 0 for empty interiors.
EntryResult compute_c(const LatticePolygon& poly, int ell, std::uint32_t prime, const RemovalPlan& plan,
                      const EngineOptions& opts = {});

/// Choice per antidiagonal (b_ℓ, c_{N-1-ℓ}), ℓ = 1..N-2.
struct Strategy {
  enum class Route { shortcut, compute_b, compute_c };
  struct Choice {
    int ell = 0;
    Route route = Route::shortcut;
    Provenance b_tag = Provenance::pending;  // set for shortcuts
    Provenance c_tag = Provenance::pending;
    std::uint64_t peak_b = 0;
    std::uint64_t peak_c = 0;
  };
  bool eagon_northcott = false;
  RemovalPlan plan;
  bool use_symmetry = true;
  std::vector<Choice> choices;

  std::size_t computed_count() const;
};

std::string to_string(Strategy::Route r);

Strategy plan_strategy(const LatticePolygon& poly, const EngineOptions& opts = {});

/// Raised when a table cannot be finished; carries what was computed.
class PartialTableError : public ResourceExceeded {
 public:
  PartialTableError(const std::string& what, BettiTable partial)
      : ResourceExceeded(what), partial_(std::move(partial)) {}
  const BettiTable& partial() const { return partial_; }

 private:
  BettiTable partial_;
};

BettiTable betti_table(const LatticePolygon& poly, std::uint32_t prime = kDefaultPrime,
                       const EngineOptions& opts = {});

/// One linear entry by the cheapest available route, with theorem shortcuts.
struct LinearEntry {
  int ell = 0;
  Count value = 0;
  Provenance provenance = Provenance::pending;
};
LinearEntry linear_entry(const LatticePolygon& poly, int ell, std::uint32_t prime, const EngineOptions& opts = {});

struct Kp1Report {
  enum class Verdict { holds, fails, modular_only_nonzero };
  Coord lattice_width = 0;
  Count predicted = 0;  // predicted min{ℓ : b_{N-ℓ} != 0}
  std::vector<LinearEntry> entries;
  Verdict verdict = Verdict::holds;
};
std::string to_string(Kp1Report::Verdict v);

Kp1Report verify_kp1(const LatticePolygon& poly, std::uint32_t prime = kDefaultPrime, const EngineOptions& opts = {});

struct PruneReport {
  LatticePolygon pruned;
  std::vector<int> checked;     // p with b_p(pruned) = 0 and b_{p+1} in range
  std::vector<int> violations;  // those p with b_{p+1}(poly) != 0
};
PruneReport verify_prune_monotonicity(const LatticePolygon& poly, LatticePoint vertex,
                                      std::uint32_t prime = kDefaultPrime, const EngineOptions& opts = {});

struct SupportReport {
  std::size_t checked = 0;
  std::vector<BigradedKey> violations;
};
/// Checks that every nonzero bigraded entry of the table lies in the region
/// predicted by bigraded duality.
SupportReport support_region_check(const LatticePolygon& poly, const BettiTable& table);

/// Compares b_{ℓ,s} from the untwisted complex with the twisted dual value at
/// σ - s. Returns the bidegrees where they differ.
std::vector<LatticePoint> bigraded_duality_check(const LatticePolygon& poly, int ell,
                                                 std::uint32_t prime = kDefaultPrime, const EngineOptions& opts = {});

}  // namespace toricbetti

#endif  // TORICBETTI_ENGINE_HPP

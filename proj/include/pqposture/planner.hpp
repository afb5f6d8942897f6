#pragma once

// Migration planning over a chain: minimal upgrade sets for confidentiality
// and authentication (by exhaustive subset search), ordering of layer-by-layer
// upgrades under a cumulative risk model (by exhaustive permutation search),
// and detection of classical-vs-quantum inversions between two variants.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pqposture/chain.hpp"
#include "pqposture/composition.hpp"

namespace pqposture {

class PlanError : public Error {
 public:
  using Error::Error;
};

enum class Facet : std::uint8_t { Conf = 1, Auth = 2 };

struct MigrationAction {
  std::size_t layer = 0;  // index into the chain, outermost = 0
  std::string layer_id;
  bool conf = true;
  bool auth = true;
  friend bool operator==(const MigrationAction&, const MigrationAction&) = default;
};

// Risk contributed by a chain verdict at each level. The scale is a modelling
// choice, not a measured quantity; every plan is relative to it.
constexpr int risk_score(Level l) noexcept {
  switch (l) {
    case Level::CUnsafe:   return 3;
    case Level::QUnsafe:   return 2;
    case Level::QWeakened: return 1;
    case Level::QSafe:     return 0;
  }
  return 3;
}

inline constexpr std::string_view kRiskModelNote =
    "model-dependent: linear risk scale C-Unsafe=3, Q-Unsafe=2, Q-Weakened=1, Q-Safe=0; "
    "one time unit per action";

struct RiskWeights {
  double conf = 1.0;
  double auth = 0.0;
  double meta = 0.0;

  void validate() const {
    if (!(conf >= 0 && auth >= 0 && meta >= 0))
      throw PlanError("risk weights must be non-negative");
    if (std::abs(conf + auth + meta - 1.0) > 1e-9)
      throw PlanError("risk weights must sum to 1");
  }

  double risk(const ChainVerdicts& v) const {
    return conf * risk_score(v.conf.level()) + auth * risk_score(v.auth.level()) +
           meta * risk_score(v.meta.level());
  }
};

inline std::vector<LayerStatuses> apply_upgrade(std::vector<LayerStatuses> layers,
                                                const MigrationAction& a) {
  auto& l = layers.at(a.layer);
  // Upgrading a facet the layer does not provide is a no-op.
  if (a.conf && l.conf) l.conf = Status::q_safe();
  if (a.auth && l.auth) l.auth = Status::q_safe();
  return layers;
}

using LayerSet = std::vector<std::size_t>;

namespace detail {

inline constexpr std::size_t kMaxSubsetLayers = 16;

// Inclusion-minimal subsets S with goal(upgrade(S)) true, by increasing size.
template <typename Goal>
std::vector<LayerSet> minimal_sets(const std::vector<LayerStatuses>& base, bool conf, bool auth,
                                   Goal goal) {
  const std::size_t n = base.size();
  if (n > kMaxSubsetLayers)
    throw PlanError("subset search supports at most " + std::to_string(kMaxSubsetLayers) + " layers");
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  std::iota(masks.begin(), masks.end(), 0u);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::uint32_t> found;
  for (std::uint32_t m : masks) {
    if (std::any_of(found.begin(), found.end(), [m](std::uint32_t f) { return (f & m) == f; }))
      continue;
    auto state = base;
    for (std::size_t i = 0; i < n; ++i)
      if (m & (1u << i)) state = apply_upgrade(std::move(state), {i, {}, conf, auth});
    if (goal(compose_statuses(state))) found.push_back(m);
  }
  std::vector<LayerSet> out;
  for (std::uint32_t m : found) {
    LayerSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (m & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

inline std::vector<LayerSet> minimal_conf_migrations(const std::vector<LayerStatuses>& layers) {
  if (layers.empty()) throw PlanError("cannot plan migrations for an empty chain");
  return detail::minimal_sets(layers, true, false,
                              [](const ChainVerdicts& v) { return v.conf.is_safe(); });
}

inline std::vector<LayerSet> minimal_auth_migrations(const std::vector<LayerStatuses>& layers) {
  if (layers.empty()) throw PlanError("cannot plan migrations for an empty chain");
  return detail::minimal_sets(layers, false, true,
                              [](const ChainVerdicts& v) { return v.auth.is_safe(); });
}

inline std::vector<LayerSet> minimal_conf_migrations(const Chain& chain) {
  return minimal_conf_migrations(send_chain_statuses(chain));
}

inline std::vector<LayerSet> minimal_auth_migrations(const Chain& chain) {
  return minimal_auth_migrations(send_chain_statuses(chain));
}

struct PlanReport {
  std::vector<MigrationAction> ordering;
  std::vector<ChainVerdicts> snapshots;  // initial state, then one per action
  double cumulative_risk = 0.0;
  std::size_t orderings_evaluated = 0;
  std::string model_note{kRiskModelNote};
  friend bool operator==(const PlanReport&, const PlanReport&) = default;
};

inline constexpr std::size_t kMaxPlanLayers = 8;

// Sum of the risk of every post-action state.
inline double cumulative_risk(const std::vector<ChainVerdicts>& snapshots, const RiskWeights& w) {
  double total = 0.0;
  for (std::size_t i = 1; i < snapshots.size(); ++i) total += w.risk(snapshots[i]);
  return total;
}

// Exhaustive search over orderings of whole-layer upgrades. Ties go to the
// lexicographically smallest ordering, i.e. outermost layers first.
inline PlanReport plan_ordering(const std::vector<LayerStatuses>& layers,
                                const std::vector<std::string>& ids, const RiskWeights& weights) {
  weights.validate();
  const std::size_t n = layers.size();
  if (n > kMaxPlanLayers)
    throw PlanError("ordering search supports at most " + std::to_string(kMaxPlanLayers) +
                    " layers, chain has " + std::to_string(n));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  PlanReport best;
  std::optional<double> best_risk;
  std::size_t evaluated = 0;
  do {
    ++evaluated;
    std::vector<ChainVerdicts> snaps{compose_statuses(layers)};
    auto state = layers;
    double risk = 0.0;
    for (std::size_t idx : perm) {
      state = apply_upgrade(std::move(state), {idx, {}, true, true});
      snaps.push_back(compose_statuses(state));
      risk += weights.risk(snaps.back());
    }
    if (!best_risk || risk < *best_risk - 1e-12) {
      best_risk = risk;
      best.ordering.clear();
      for (std::size_t idx : perm)
        best.ordering.push_back({idx, idx < ids.size() ? ids[idx] : std::to_string(idx), true, true});
      best.snapshots = std::move(snaps);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (n == 0) best.snapshots = {compose_statuses(layers)};
  best.cumulative_risk = best_risk.value_or(0.0);
  best.orderings_evaluated = evaluated;
  return best;
}

inline PlanReport plan_ordering(const Chain& chain, const RiskWeights& weights) {
  std::vector<std::string> ids;
  for (const auto& l : chain.layers()) ids.push_back(l.id);
  return plan_ordering(send_chain_statuses(chain), ids, weights);
}

// ---------------------------------------------------------------------------
// Classical vs quantum inversion

struct RankedChain {
  std::string name;
  const Chain* chain = nullptr;
  std::optional<int> classical_rank;
};

struct FacetComparison {
  std::string scope;  // "chain" or a layer label such as "L2"
  std::string facet;  // "conf", "auth" or "meta"
  Status a = Status::bottom();
  Status b = Status::bottom();
  bool level_worse = false;      // b strictly below a
  bool mechanism_worse = false;  // equal level, b's mechanism more severe (e.g. grover -> shor)
  friend bool operator==(const FacetComparison&, const FacetComparison&) = default;
};

struct InversionReport {
  std::string a_name;
  std::string b_name;
  int a_rank = 0;
  int b_rank = 0;
  bool classical_upgrade = false;  // b ranks above a classically
  bool inversion = false;          // classical upgrade with a quantum level downgrade
  bool mechanism_downgrade = false;
  std::vector<FacetComparison> facets;
  friend bool operator==(const InversionReport&, const InversionReport&) = default;
};

namespace detail {

inline FacetComparison compare_facet(std::string scope, std::string facet, Status a, Status b) {
  FacetComparison f{std::move(scope), std::move(facet), a, b, false, false};
  const auto order = compare(b, a);
  f.level_worse = order < 0;
  f.mechanism_worse = order == 0 && severity(b.mechanism()) > severity(a.mechanism());
  return f;
}

}  // namespace detail

// Compares chain verdicts and the layers both variants share (matched by OSI
// index). An inversion is flagged when b is classically stronger yet some
// facet of b sits at a lower level than in a.
inline InversionReport detect_inversion(const RankedChain& a, const RankedChain& b) {
  if (!a.chain || !b.chain) throw PlanError("inversion check needs two chains");
  if (!a.classical_rank)
    throw PlanError("scenario '" + a.name + "' has no classical_rank");
  if (!b.classical_rank)
    throw PlanError("scenario '" + b.name + "' has no classical_rank");

  InversionReport r;
  r.a_name = a.name;
  r.b_name = b.name;
  r.a_rank = *a.classical_rank;
  r.b_rank = *b.classical_rank;
  r.classical_upgrade = r.b_rank > r.a_rank;

  const auto ra = compose(*a.chain);
  const auto rb = compose(*b.chain);
  r.facets.push_back(detail::compare_facet("chain", "conf", ra.chain_conf, rb.chain_conf));
  r.facets.push_back(detail::compare_facet("chain", "auth", ra.chain_auth, rb.chain_auth));
  r.facets.push_back(detail::compare_facet("chain", "meta", ra.chain_meta, rb.chain_meta));

  for (const auto& la : a.chain->layers()) {
    auto lb = std::find_if(b.chain->layers().begin(), b.chain->layers().end(),
                           [&](const LayerSpec& l) { return l.osi_index == la.osi_index; });
    if (lb == b.chain->layers().end()) continue;
    const std::string scope = "L" + la.osi_label;
    auto ca = try_effective_conf(la), cb = try_effective_conf(*lb);
    if (ca && cb) r.facets.push_back(detail::compare_facet(scope, "conf", *ca, *cb));
    auto aa = try_effective_auth(la), ab = try_effective_auth(*lb);
    if (aa && ab) r.facets.push_back(detail::compare_facet(scope, "auth", *aa, *ab));
  }

  for (const auto& f : r.facets) {
    if (f.level_worse) r.inversion = r.classical_upgrade;
    if (f.mechanism_worse) r.mechanism_downgrade = r.classical_upgrade;
  }
  return r;
}

}  // namespace pqposture

#pragma once

// Chain-level verdicts from per-layer effective statuses.
//
//   confidentiality  join over layers   (one Q-Safe layer blocks the payload)
//   authentication   meet over layers   (any forgeable layer breaks it)
//   metadata         outermost layer's confidentiality
//   exposure depth   consecutive non-Q-Safe layers counted from the outside

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pqposture/chain.hpp"
#include "pqposture/status.hpp"

namespace pqposture {

struct LayerPosture {
  std::string layer_id;
  std::string protocol;
  std::optional<Status> conf;
  std::optional<Status> auth;
  friend bool operator==(const LayerPosture&, const LayerPosture&) = default;
};

struct PeelStep {
  std::size_t depth = 0;
  std::string layer_id;  // empty for the wire observation at depth 0
  std::optional<Status> status;
  std::vector<std::string> revealed;
  std::vector<std::string> harvest;
  bool harvestable = false;
  bool blocked = false;  // first layer that resists the quantum adversary
  friend bool operator==(const PeelStep&, const PeelStep&) = default;
};

struct PostureReport {
  std::vector<LayerPosture> per_layer;
  Status chain_conf = Status::bottom();
  Status chain_auth = Status::bottom();
  Status chain_meta = Status::bottom();
  std::size_t exposure_depth = 0;
  std::vector<PeelStep> peel_trace;
  std::vector<std::string> caveats;
  friend bool operator==(const PostureReport&, const PostureReport&) = default;
};

inline constexpr std::string_view kPlaintextOnWire = "plaintext on wire (no active cryptographic layer)";

struct ChainVerdicts {
  Status conf = Status::bottom();
  Status auth = Status::bottom();
  Status meta = Status::bottom();
  std::size_t depth = 0;
  friend bool operator==(const ChainVerdicts&, const ChainVerdicts&) = default;
};

// Layers without encryption do not count as blocking.
inline std::size_t exposure_depth(std::span<const LayerStatuses> layers) {
  std::size_t d = 0;
  while (d < layers.size() && !(layers[d].conf && layers[d].conf->is_safe())) ++d;
  return d;
}

// Folds over per-layer statuses. Layers missing a facet are skipped in that
// fold; a fold with no contributors (and the empty chain) yields bottom.
inline ChainVerdicts compose_statuses(std::span<const LayerStatuses> layers) {
  ChainVerdicts v;
  std::optional<Status> conf, auth;
  for (const auto& l : layers) {
    if (l.conf) conf = conf ? join(*conf, *l.conf) : *l.conf;
    if (l.auth) auth = auth ? meet(*auth, *l.auth) : *l.auth;
  }
  v.conf = conf.value_or(Status::bottom());
  v.auth = auth.value_or(Status::bottom());
  v.meta = (!layers.empty() && layers.front().conf) ? *layers.front().conf : Status::bottom();
  v.depth = exposure_depth(layers);
  return v;
}

inline std::size_t exposure_depth(const Chain& chain) {
  auto statuses = send_chain_statuses(chain);
  return exposure_depth(statuses);
}

inline PostureReport compose(const Chain& chain) {
  PostureReport r;
  const auto statuses = send_chain_statuses(chain);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& layer = chain.layers()[i];
    r.per_layer.push_back({layer.id, layer.protocol, statuses[i].conf, statuses[i].auth});
  }
  const ChainVerdicts v = compose_statuses(statuses);
  r.chain_conf = v.conf;
  r.chain_auth = v.auth;
  r.chain_meta = v.meta;
  r.exposure_depth = v.depth;

  PeelStep wire;
  wire.depth = 0;
  wire.revealed = chain.wire().reveals;
  wire.harvest = chain.wire().harvest;
  wire.harvestable = true;
  if (chain.empty()) {
    r.caveats.emplace_back(kPlaintextOnWire);
    wire.revealed.emplace_back(kPlaintextOnWire);
  }
  r.peel_trace.push_back(std::move(wire));

  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& layer = chain.layers()[i];
    PeelStep step;
    step.depth = i + 1;
    step.layer_id = layer.id;
    step.status = statuses[i].conf;
    step.revealed = layer.exposure.reveals;
    step.harvest = layer.exposure.harvest;
    step.harvestable = step.depth <= v.depth;
    step.blocked = step.depth == v.depth + 1;
    r.peel_trace.push_back(std::move(step));
  }
  if (v.depth == chain.size() && !chain.empty())
    r.caveats.emplace_back("application plaintext is harvestable (d* = n)");
  return r;
}

struct OracleVerdict {
  Level conf = Level::CUnsafe;
  Level auth = Level::CUnsafe;
  std::size_t depth = 0;
  bool plaintext_recovered = false;
  friend bool operator==(const OracleVerdict&, const OracleVerdict&) = default;
};

// Simulated harvest-now-decrypt-later adversary, written without the lattice
// folds above so the closed forms can be checked against it.
//
// Confidentiality: peel from the outside; every layer that is not Q-Safe is
// broken and stripped. If a Q-Safe layer stops the walk the payload stays
// protected at Q-Safe. Otherwise the adversary reached plaintext and the
// payload was only as protected as the hardest layer it had to break.
//
// Authentication: each layer authenticates a different party; the adversary
// needs to forge only one, so it picks the weakest.
inline OracleVerdict oracle_posture(const Chain& chain) {
  OracleVerdict out;
  int hardest = -1;
  bool blocked = false;
  for (const auto& layer : chain.layers()) {
    if (!layer.enc) {
      ++out.depth;  // nothing to break; the layer is transparent
      continue;
    }
    const int level = static_cast<int>(effective_conf(layer).level());
    if (level == static_cast<int>(Level::QSafe)) {
      blocked = true;
      break;
    }
    if (level > hardest) hardest = level;
    ++out.depth;
  }
  out.plaintext_recovered = !blocked;
  if (blocked)
    out.conf = Level::QSafe;
  else
    out.conf = hardest < 0 ? Level::CUnsafe : static_cast<Level>(hardest);

  int weakest = -1;
  for (const auto& layer : chain.layers()) {
    if (!layer.has_auth()) continue;
    const int level = static_cast<int>(effective_auth(layer).level());
    if (weakest < 0 || level < weakest) weakest = level;
  }
  out.auth = weakest < 0 ? Level::CUnsafe : static_cast<Level>(weakest);
  return out;
}

}  // namespace pqposture

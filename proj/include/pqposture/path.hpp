#pragma once

// Physical path analysis: which layers cover each segment, what each node
// sees by design, and what a quantum adversary capturing traffic there could
// additionally recover.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pqposture/chain.hpp"
#include "pqposture/composition.hpp"

namespace pqposture {

class PathError : public Error {
 public:
  using Error::Error;
};

enum class NodeRole { Sender, Intermediary, Recipient };

constexpr std::string_view to_string(NodeRole r) noexcept {
  switch (r) {
    case NodeRole::Sender:       return "sender";
    case NodeRole::Intermediary: return "intermediary";
    case NodeRole::Recipient:    return "recipient";
  }
  return "?";
}

inline std::optional<NodeRole> parse_node_role(std::string_view text) noexcept {
  for (NodeRole r : {NodeRole::Sender, NodeRole::Intermediary, NodeRole::Recipient})
    if (to_string(r) == text) return r;
  return std::nullopt;
}

struct PathNode {
  std::string name;
  NodeRole role = NodeRole::Intermediary;
  std::vector<std::string> terminates;  // layer ids stripped at this node
  std::vector<std::string> classical_exposure;
  bool on_data_path = true;
  friend bool operator==(const PathNode&, const PathNode&) = default;
};

struct Segment {
  std::string from;
  std::string to;
  std::vector<LayerSpec> active_layers;  // outermost first
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Path {
  std::vector<PathNode> nodes;
  std::vector<Segment> segments;
  friend bool operator==(const Path&, const Path&) = default;

  const PathNode* find(std::string_view name) const {
    auto it = std::find_if(nodes.begin(), nodes.end(),
                           [&](const PathNode& n) { return n.name == name; });
    return it == nodes.end() ? nullptr : &*it;
  }
};

namespace detail {

inline bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

inline std::vector<std::string> layer_ids(const std::vector<LayerSpec>& layers) {
  std::vector<std::string> ids;
  ids.reserve(layers.size());
  for (const auto& l : layers) ids.push_back(l.id);
  return ids;
}

}  // namespace detail

// Checks the structural invariants: one sender, one recipient, segments chain
// sender -> recipient through on-path nodes, layers ordered within each
// segment, terminated layers present on the entering segment and never seen
// again afterwards.
inline void validate(const Path& path) {
  std::set<std::string, std::less<>> names;
  int senders = 0, recipients = 0;
  for (const auto& n : path.nodes) {
    if (!names.insert(n.name).second) throw PathError("duplicate node '" + n.name + "'");
    senders += n.role == NodeRole::Sender;
    recipients += n.role == NodeRole::Recipient;
  }
  if (senders != 1 || recipients != 1)
    throw PathError("path needs exactly one sender and one recipient");
  if (path.segments.empty()) throw PathError("path has no segments");

  std::set<std::string, std::less<>> stripped;
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const Segment& seg = path.segments[i];
    const PathNode* from = path.find(seg.from);
    const PathNode* to = path.find(seg.to);
    if (!from) throw PathError("segment " + std::to_string(i) + " starts at unknown node '" + seg.from + "'");
    if (!to) throw PathError("segment " + std::to_string(i) + " ends at unknown node '" + seg.to + "'");
    if (!from->on_data_path || !to->on_data_path)
      throw PathError("segment " + std::to_string(i) + " touches a node off the data path");
    if (i == 0 && from->role != NodeRole::Sender)
      throw PathError("first segment must start at the sender");
    if (i + 1 == path.segments.size() && to->role != NodeRole::Recipient)
      throw PathError("last segment must end at the recipient");
    if (i > 0 && path.segments[i - 1].to != seg.from)
      throw PathError("segment " + std::to_string(i) + " does not continue from '" +
                      path.segments[i - 1].to + "'");
    if (i > 0 && from->role != NodeRole::Intermediary)
      throw PathError("node '" + from->name + "' appears mid-path but is not an intermediary");
    for (std::size_t k = 0; k < seg.active_layers.size(); ++k) {
      const auto& layer = seg.active_layers[k];
      if (k > 0 && layer.osi_index <= seg.active_layers[k - 1].osi_index)
        throw PathError("segment " + std::to_string(i) + ": layers out of order at '" + layer.id + "'");
      if (stripped.contains(layer.id))
        throw PathError("layer '" + layer.id + "' reappears after termination");
    }
    const auto ids = detail::layer_ids(seg.active_layers);
    for (const auto& t : to->terminates) {
      if (!detail::contains(ids, t))
        throw PathError("node '" + to->name + "' terminates '" + t +
                        "' which is not active on the segment entering it");
      stripped.insert(t);
    }
    // Layers that were active here must either be stripped at `to` or carried on.
    if (i + 1 < path.segments.size()) {
      const auto next = detail::layer_ids(path.segments[i + 1].active_layers);
      for (const auto& id : ids)
        if (!detail::contains(to->terminates, id) && !detail::contains(next, id))
          throw PathError("layer '" + id + "' vanishes at '" + to->name + "' without termination");
    }
  }
  for (const auto& n : path.nodes) {
    if (n.role == NodeRole::Sender && !n.terminates.empty())
      throw PathError("sender '" + n.name + "' cannot terminate layers");
    if (!n.on_data_path && !n.terminates.empty())
      throw PathError("off-path node '" + n.name + "' cannot terminate data-path layers");
  }
}

struct SegmentPosture {
  Status conf = Status::bottom();
  Status auth = Status::bottom();
  friend bool operator==(const SegmentPosture&, const SegmentPosture&) = default;
};

// An empty segment carries plaintext and reports bottom on both facets.
inline SegmentPosture segment_posture(const Segment& segment) {
  std::vector<LayerStatuses> statuses;
  for (const auto& l : segment.active_layers)
    statuses.push_back({try_effective_conf(l), try_effective_auth(l)});
  const auto v = compose_statuses(statuses);
  return {v.conf, v.auth};
}

struct PeelOutcome {
  std::vector<std::string> broken;      // layer ids peeled by the adversary
  std::vector<std::string> recovered;   // tags reachable after peeling
  std::optional<std::string> blocked_by;
  friend bool operator==(const PeelOutcome&, const PeelOutcome&) = default;
};

// Peels the given layers outermost first until a Q-Safe layer stops it.
inline PeelOutcome peel(const std::vector<LayerSpec>& layers) {
  PeelOutcome out;
  for (const auto& layer : layers) {
    if (layer.enc && effective_conf(layer).is_safe()) {
      out.blocked_by = layer.id;
      break;
    }
    out.broken.push_back(layer.id);
    for (const auto& tag : layer.exposure.reveals)
      if (!detail::contains(out.recovered, tag)) out.recovered.push_back(tag);
  }
  return out;
}

enum class HndlScope {
  Analyzed,
  PreTransmission,  // sender: data not yet on the wire
  Endpoint,         // every layer terminated here
  OffDataPath,      // participant never sees data-phase traffic
};

constexpr std::string_view to_string(HndlScope s) noexcept {
  switch (s) {
    case HndlScope::Analyzed:        return "analyzed";
    case HndlScope::PreTransmission: return "pre-transmission";
    case HndlScope::Endpoint:        return "endpoint";
    case HndlScope::OffDataPath:     return "off-data-path";
  }
  return "?";
}

struct EndpointReport {
  std::string node;
  NodeRole role = NodeRole::Intermediary;
  std::vector<std::string> layers_remaining;
  std::vector<std::string> classical_exposure;
  HndlScope scope = HndlScope::Analyzed;
  PeelOutcome hndl;
  std::vector<std::string> quantum_resistant;  // remaining layers with Q-Safe confidentiality
  friend bool operator==(const EndpointReport&, const EndpointReport&) = default;
};

inline EndpointReport endpoint_posture(const Path& path, std::string_view node_name) {
  const PathNode* node = path.find(node_name);
  if (!node) throw PathError("node '" + std::string(node_name) + "' is not on the path");
  EndpointReport r;
  r.node = node->name;
  r.role = node->role;
  r.classical_exposure = node->classical_exposure;
  if (!node->on_data_path) {
    r.scope = HndlScope::OffDataPath;
    return r;
  }

  std::vector<LayerSpec> remaining;
  if (node->role == NodeRole::Sender) {
    if (!path.segments.empty()) remaining = path.segments.front().active_layers;
    r.scope = HndlScope::PreTransmission;
  } else {
    auto in = std::find_if(path.segments.begin(), path.segments.end(),
                           [&](const Segment& s) { return s.to == node->name; });
    if (in == path.segments.end())
      throw PathError("node '" + node->name + "' has no entering segment");
    for (const auto& l : in->active_layers)
      if (!detail::contains(node->terminates, l.id)) remaining.push_back(l);
    r.scope = remaining.empty() && node->role == NodeRole::Recipient ? HndlScope::Endpoint
                                                                      : HndlScope::Analyzed;
  }
  r.layers_remaining = detail::layer_ids(remaining);
  for (const auto& l : remaining)
    if (l.enc && effective_conf(l).is_safe()) r.quantum_resistant.push_back(l.id);
  if (r.scope == HndlScope::Analyzed) r.hndl = peel(remaining);
  return r;
}

struct TrustBoundary {
  std::string node;
  std::vector<std::string> classical;
  std::vector<std::string> hndl_only;  // recoverable only with a quantum computer
  bool coincides = false;              // HNDL adds nothing beyond classical exposure
  friend bool operator==(const TrustBoundary&, const TrustBoundary&) = default;
};

inline std::vector<TrustBoundary> trust_boundary_report(const Path& path) {
  std::vector<TrustBoundary> out;
  for (const auto& n : path.nodes) {
    if (n.role != NodeRole::Intermediary || !n.on_data_path) continue;
    const auto ep = endpoint_posture(path, n.name);
    TrustBoundary tb;
    tb.node = n.name;
    tb.classical = n.classical_exposure;
    for (const auto& tag : ep.hndl.recovered)
      if (!detail::contains(n.classical_exposure, tag)) tb.hndl_only.push_back(tag);
    tb.coincides = tb.hndl_only.empty();
    out.push_back(std::move(tb));
  }
  return out;
}

}  // namespace pqposture

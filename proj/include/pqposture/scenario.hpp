#pragma once

// Scenario documents: a chain, optional path, exposure tags, classical rank
// and registry overrides, all in one versioned JSON file. See
// docs/scenario-format.md for the schema.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pqposture/chain.hpp"
#include "pqposture/detail/json_reader.hpp"
#include "pqposture/path.hpp"
#include "pqposture/registry.hpp"

namespace pqposture {

inline constexpr int kScenarioVersion = 1;

struct ScenarioDoc {
  std::string name;
  std::string description;
  std::optional<int> classical_rank;
  std::vector<EntryDecl> registry_overrides;
  Chain chain;
  std::vector<LayerSpec> path_layers;  // re-keyed sessions that exist only on the path
  std::optional<Path> path;

  friend bool operator==(const ScenarioDoc&, const ScenarioDoc&) = default;
};

namespace detail {

class ScenarioParser {
 public:
  explicit ScenarioParser(const Registry& base) : registry_(base) {}

  ScenarioDoc parse(std::string_view text) {
    const json root = parse_json_text(text);
    ObjectReader obj(root, "$");
    ScenarioDoc doc;

    auto version = obj.integer("version");
    if (version != kScenarioVersion)
      throw InputError(InputErrorKind::Schema, "$.version",
                       "unsupported version " + std::to_string(version));
    doc.name = obj.string("name");
    if (doc.name.empty()) throw InputError(InputErrorKind::Schema, "$.name", "must not be empty");
    doc.description = obj.optional_string("description").value_or("");
    if (auto rank = obj.optional_integer("classical_rank")) doc.classical_rank = static_cast<int>(*rank);

    if (const json* o = obj.optional("registry_overrides")) {
      doc.registry_overrides = read_entry_list(*o, "$.registry_overrides");
      registry_ = registry_.with(doc.registry_overrides, "$.registry_overrides");
    }

    LayerExposure wire;
    if (const json* w = obj.optional("wire")) wire = read_exposure_object(*w, "$.wire");

    std::vector<LayerSpec> layers;
    const json& ls = ObjectReader::as_array(obj.required("layers"), "$.layers");
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const std::string p = index_path("$.layers", i);
      layers.push_back(read_layer(ls[i], p));
      if (i > 0 && layers[i].osi_index <= layers[i - 1].osi_index)
        throw InputError(InputErrorKind::Ordering, p + ".osi",
                         "layer '" + layers[i].id + "' (OSI " + layers[i].osi_label +
                             ") must be inside '" + layers[i - 1].id + "' (OSI " +
                             layers[i - 1].osi_label + "); list layers outermost first");
      for (std::size_t j = 0; j < i; ++j)
        if (layers[j].id == layers[i].id)
          throw InputError(InputErrorKind::Duplicate, p + ".id", "layer id '" + layers[i].id + "' used twice");
    }
    try {
      doc.chain = Chain(std::move(layers), std::move(wire));
    } catch (const ChainError& e) {
      throw InputError(InputErrorKind::Invariant, "$.layers", e.what());
    }

    if (const json* pl = obj.optional("path_layers")) {
      ObjectReader::as_array(*pl, "$.path_layers");
      for (std::size_t i = 0; i < pl->size(); ++i)
        doc.path_layers.push_back(read_layer((*pl)[i], index_path("$.path_layers", i)));
    }

    std::map<std::string, const LayerSpec*, std::less<>> by_id;
    auto add_ids = [&](const std::vector<LayerSpec>& v, const std::string& base) {
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!by_id.emplace(v[i].id, &v[i]).second)
          throw InputError(InputErrorKind::Duplicate, index_path(base, i) + ".id",
                           "layer id '" + v[i].id + "' used twice");
    };
    add_ids(doc.chain.layers(), "$.layers");
    add_ids(doc.path_layers, "$.path_layers");

    if (const json* p = obj.optional("path")) doc.path = read_path(*p, "$.path", by_id);
    obj.finish();
    return doc;
  }

 private:
  const AlgorithmEntry& resolve(const json& v, const std::string& path, Role role) {
    const std::string name = ObjectReader::as_string(v, path);
    if (const auto* e = registry_.find(name, role)) return *e;
    throw InputError(InputErrorKind::UnknownAlgorithm, path,
                     "'" + name + "' is not registered for role " + std::string(to_string(role)));
  }

  static void check_tags(const std::vector<std::string>& tags, const std::string& path) {
    for (std::size_t i = 0; i < tags.size(); ++i)
      for (unsigned char c : tags[i])
        if (std::iscntrl(c))
          throw InputError(InputErrorKind::Schema, index_path(path, i),
                           "exposure tags must not contain control characters");
  }

  static LayerExposure read_exposure_object(const json& v, const std::string& path) {
    ObjectReader obj(v, path);
    LayerExposure e{obj.strings("reveals"), obj.strings("harvest")};
    check_tags(e.reveals, obj.child_path("reveals"));
    check_tags(e.harvest, obj.child_path("harvest"));
    obj.finish();
    return e;
  }

  KeySource read_root(const json& v, const std::string& path) {
    ObjectReader obj(v, path);
    const bool kex = obj.has("kex"), psk = obj.has("psk"), hybrid = obj.has("hybrid");
    if (kex + psk + hybrid != 1)
      throw InputError(InputErrorKind::Schema, path, "root needs exactly one of kex, psk, hybrid");
    if (kex) {
      const auto& entry = resolve(obj.required("kex"), obj.child_path("kex"), Role::KEX);
      obj.finish();
      return KeySource::kex(entry);
    }
    if (psk) {
      ObjectReader p(obj.required("psk"), obj.child_path("psk"));
      Status s = read_status_fields(p);
      std::string label = p.optional_string("label").value_or("");
      p.finish();
      obj.finish();
      return KeySource::pre_shared(s, std::move(label));
    }
    const json& parts = ObjectReader::as_array(obj.required("hybrid"), obj.child_path("hybrid"));
    if (parts.size() < 2)
      throw InputError(InputErrorKind::Invariant, obj.child_path("hybrid"),
                       "hybrid root needs at least two components");
    std::vector<KeySource> comps;
    for (std::size_t i = 0; i < parts.size(); ++i)
      comps.push_back(read_root(parts[i], index_path(obj.child_path("hybrid"), i)));
    obj.finish();
    return KeySource::hybrid(std::move(comps));
  }

  KeyChain read_key_chain(const json& v, const std::string& path) {
    ObjectReader obj(v, path);
    KeyChain kc{read_root(obj.required("root"), obj.child_path("root")), {}};
    if (const json* kdf = obj.optional("kdf")) {
      ObjectReader::as_array(*kdf, obj.child_path("kdf"));
      for (std::size_t i = 0; i < kdf->size(); ++i)
        kc.kdf_steps.push_back(resolve((*kdf)[i], index_path(obj.child_path("kdf"), i), Role::KDF));
    }
    obj.finish();
    return kc;
  }

  static std::pair<int, std::string> read_osi(const json& v, const std::string& path) {
    const std::string label = ObjectReader::as_string(v, path);
    auto bad = [&]() {
      return InputError(InputErrorKind::Schema, path,
                        "OSI label '" + label + "' must be N or N-M with 2 <= N < M <= 7");
    };
    if (label.size() == 1 && label[0] >= '2' && label[0] <= '7') return {label[0] - '0', label};
    if (label.size() == 3 && label[1] == '-' && label[0] >= '2' && label[0] <= '7' &&
        label[2] > label[0] && label[2] <= '7')
      return {label[0] - '0', label};
    throw bad();
  }

  LayerSpec read_layer(const json& v, const std::string& path) {
    ObjectReader obj(v, path);
    LayerSpec l;
    l.id = obj.string("id");
    if (l.id.empty()) throw InputError(InputErrorKind::Schema, obj.child_path("id"), "must not be empty");
    std::tie(l.osi_index, l.osi_label) = read_osi(obj.required("osi"), obj.child_path("osi"));
    l.protocol = obj.string("protocol");
    if (const json* k = obj.optional("key")) l.key_chain = read_key_chain(*k, obj.child_path("key"));
    if (const json* a = obj.optional("auth")) {
      const std::string ap = obj.child_path("auth");
      ObjectReader auth(*a, ap);
      if (auth.has("signature") == auth.has("mac"))
        throw InputError(InputErrorKind::Schema, ap, "auth needs exactly one of signature, mac");
      if (auth.has("signature")) {
        l.auth = SignatureAuth{resolve(auth.required("signature"), auth.child_path("signature"), Role::AUTH)};
      } else {
        const auto& mac = resolve(auth.required("mac"), auth.child_path("mac"), Role::INT);
        l.auth = MacAuth{mac, read_key_chain(auth.required("key"), auth.child_path("key"))};
      }
      auth.finish();
    }
    if (const json* e = obj.optional("enc")) l.enc = resolve(*e, obj.child_path("enc"), Role::ENC);
    if (const json* i = obj.optional("int")) l.integrity = resolve(*i, obj.child_path("int"), Role::INT);
    l.exposure.reveals = obj.strings("reveals");
    l.exposure.harvest = obj.strings("harvest");
    check_tags(l.exposure.reveals, obj.child_path("reveals"));
    check_tags(l.exposure.harvest, obj.child_path("harvest"));
    if (l.enc && !obj.has("key"))
      throw InputError(InputErrorKind::Schema, obj.child_path("key"),
                       "a layer with encryption needs a key chain");
    obj.finish();
    try {
      validate(l);
    } catch (const ChainError& e) {
      throw InputError(InputErrorKind::Invariant, path, e.what());
    }
    return l;
  }

  static Path read_path(const json& v, const std::string& path,
                        const std::map<std::string, const LayerSpec*, std::less<>>& by_id) {
    ObjectReader obj(v, path);
    Path p;
    const json& nodes = ObjectReader::as_array(obj.required("nodes"), obj.child_path("nodes"));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      ObjectReader n(nodes[i], index_path(obj.child_path("nodes"), i));
      PathNode node;
      node.name = n.string("name");
      auto role_text = n.string("role");
      auto role = parse_node_role(role_text);
      if (!role)
        throw InputError(InputErrorKind::Schema, n.child_path("role"), "unknown role '" + role_text + "'");
      node.role = *role;
      node.classical_exposure = n.strings("classical_exposure");
      check_tags(node.classical_exposure, n.child_path("classical_exposure"));
      node.on_data_path = n.boolean("on_data_path", true);
      n.finish();
      if (p.find(node.name))
        throw InputError(InputErrorKind::Duplicate, n.child_path("name"), "node '" + node.name + "' declared twice");
      p.nodes.push_back(std::move(node));
    }

    const json& segs = ObjectReader::as_array(obj.required("segments"), obj.child_path("segments"));
    for (std::size_t i = 0; i < segs.size(); ++i) {
      ObjectReader s(segs[i], index_path(obj.child_path("segments"), i));
      Segment seg;
      seg.from = s.string("from");
      seg.to = s.string("to");
      for (const auto* end : {&seg.from, &seg.to})
        if (!p.find(*end))
          throw InputError(InputErrorKind::DanglingReference, s.path(), "unknown node '" + *end + "'");
      const auto ids = s.strings("layers");
      for (std::size_t k = 0; k < ids.size(); ++k) {
        auto it = by_id.find(ids[k]);
        if (it == by_id.end())
          throw InputError(InputErrorKind::DanglingReference, index_path(s.child_path("layers"), k),
                           "unknown layer '" + ids[k] + "'");
        if (!seg.active_layers.empty() && it->second->osi_index <= seg.active_layers.back().osi_index)
          throw InputError(InputErrorKind::Ordering, index_path(s.child_path("layers"), k),
                           "segment layers must be listed outermost first");
        seg.active_layers.push_back(*it->second);
      }
      s.finish();
      p.segments.push_back(std::move(seg));
    }

    if (const json* t = obj.optional("terminations")) {
      const std::string tp = obj.child_path("terminations");
      if (!t->is_object()) throw InputError(InputErrorKind::Schema, tp, "expected object");
      for (const auto& [node_name, ids_json] : t->items()) {
        const std::string np = tp + "." + node_name;
        auto node_it = std::find_if(p.nodes.begin(), p.nodes.end(),
                                    [&](const PathNode& n) { return n.name == node_name; });
        if (node_it == p.nodes.end())
          throw InputError(InputErrorKind::DanglingReference, np, "unknown node '" + node_name + "'");
        auto ids = ObjectReader::as_strings(ids_json, np);
        for (std::size_t k = 0; k < ids.size(); ++k)
          if (!by_id.contains(ids[k]))
            throw InputError(InputErrorKind::DanglingReference, index_path(np, k),
                             "unknown layer '" + ids[k] + "'");
        node_it->terminates = std::move(ids);
      }
    }
    obj.finish();
    try {
      validate(p);
    } catch (const PathError& e) {
      throw InputError(InputErrorKind::Invariant, path, e.what());
    }
    return p;
  }

  Registry registry_;
};

inline json status_fields(const Status& s) {
  return {{"level", std::string(to_string(s.level()))},
          {"mechanism", std::string(to_string(s.mechanism()))}};
}

inline json root_to_json(const KeySource& src) {
  return std::visit(
      [](const auto& root) -> json {
        using T = std::decay_t<decltype(root)>;
        if constexpr (std::is_same_v<T, KexRoot>) {
          return {{"kex", root.entry.name}};
        } else if constexpr (std::is_same_v<T, PreSharedRoot>) {
          json p = status_fields(root.status);
          p["label"] = root.label;
          return {{"psk", p}};
        } else {
          json parts = json::array();
          for (const auto& c : root.components) parts.push_back(root_to_json(c));
          return {{"hybrid", parts}};
        }
      },
      src.variant());
}

inline json key_chain_to_json(const KeyChain& kc) {
  json kdf = json::array();
  for (const auto& s : kc.kdf_steps) kdf.push_back(s.name);
  return {{"root", root_to_json(kc.root)}, {"kdf", kdf}};
}

inline json layer_to_json(const LayerSpec& l) {
  json j = json::object();
  j["id"] = l.id;
  j["osi"] = l.osi_label;
  j["protocol"] = l.protocol;
  j["key"] = key_chain_to_json(l.key_chain);
  if (const auto* sig = std::get_if<SignatureAuth>(&l.auth)) j["auth"] = {{"signature", sig->entry.name}};
  if (const auto* mac = std::get_if<MacAuth>(&l.auth))
    j["auth"] = {{"mac", mac->entry.name}, {"key", key_chain_to_json(mac->key)}};
  if (l.enc) j["enc"] = l.enc->name;
  if (l.integrity) j["int"] = l.integrity->name;
  j["reveals"] = l.exposure.reveals;
  j["harvest"] = l.exposure.harvest;
  return j;
}

}  // namespace detail

inline ScenarioDoc parse_scenario(std::string_view document, const Registry& registry) {
  return detail::ScenarioParser(registry).parse(document);
}

inline ScenarioDoc parse_scenario(std::string_view document) {
  return parse_scenario(document, Registry::builtin());
}

inline std::string serialize_scenario(const ScenarioDoc& doc) {
  using detail::json;
  json j = json::object();
  j["version"] = kScenarioVersion;
  j["name"] = doc.name;
  if (!doc.description.empty()) j["description"] = doc.description;
  if (doc.classical_rank) j["classical_rank"] = *doc.classical_rank;
  if (!doc.registry_overrides.empty()) {
    json o = json::array();
    for (const auto& d : doc.registry_overrides) o.push_back(entry_to_json(d.entry, d.replace));
    j["registry_overrides"] = o;
  }
  j["wire"] = {{"reveals", doc.chain.wire().reveals}, {"harvest", doc.chain.wire().harvest}};
  json layers = json::array();
  for (const auto& l : doc.chain.layers()) layers.push_back(detail::layer_to_json(l));
  j["layers"] = layers;
  if (!doc.path_layers.empty()) {
    json pl = json::array();
    for (const auto& l : doc.path_layers) pl.push_back(detail::layer_to_json(l));
    j["path_layers"] = pl;
  }
  if (doc.path) {
    json nodes = json::array();
    json terms = json::object();
    for (const auto& n : doc.path->nodes) {
      json node = {{"name", n.name},
                   {"role", std::string(to_string(n.role))},
                   {"classical_exposure", n.classical_exposure}};
      if (!n.on_data_path) node["on_data_path"] = false;
      nodes.push_back(node);
      if (!n.terminates.empty()) terms[n.name] = n.terminates;
    }
    json segs = json::array();
    for (const auto& s : doc.path->segments)
      segs.push_back({{"from", s.from}, {"to", s.to}, {"layers", detail::layer_ids(s.active_layers)}});
    j["path"] = {{"nodes", nodes}, {"segments", segs}, {"terminations", terms}};
  }
  return j.dump(2) + "\n";
}

inline std::string read_text_file(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open '" + file + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pqposture

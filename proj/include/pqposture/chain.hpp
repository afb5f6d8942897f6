#pragma once

// Message transformation chains: active layers, their operations, and the key
// material feeding them. Per-layer effective statuses are computed here; the
// chain-level folds live in composition.hpp.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pqposture/registry.hpp"
#include "pqposture/status.hpp"

namespace pqposture {

class ChainError : public Error {
 public:
  using Error::Error;
};

class KeySource;

struct KexRoot {
  AlgorithmEntry entry;
  friend bool operator==(const KexRoot&, const KexRoot&) = default;
};

// Key material that does not come from an in-band key exchange (PSK, PMK, ...).
struct PreSharedRoot {
  Status status = Status::bottom();
  std::string label;
  friend bool operator==(const PreSharedRoot&, const PreSharedRoot&) = default;
};

// Several sources mixed into one secret; as strong as its strongest component.
struct HybridRoot {
  std::vector<KeySource> components;
  friend bool operator==(const HybridRoot&, const HybridRoot&);
};

class KeySource {
 public:
  using Variant = std::variant<KexRoot, PreSharedRoot, HybridRoot>;

  KeySource(KexRoot k) : v_(std::move(k)) { validate(); }
  KeySource(PreSharedRoot p) : v_(std::move(p)) {}
  KeySource(HybridRoot h) : v_(std::move(h)) { validate(); }

  static KeySource kex(AlgorithmEntry entry) { return KexRoot{std::move(entry)}; }
  static KeySource pre_shared(Status s, std::string label) {
    return PreSharedRoot{s, std::move(label)};
  }
  static KeySource hybrid(std::vector<KeySource> parts) { return HybridRoot{std::move(parts)}; }

  const Variant& variant() const noexcept { return v_; }

  Status status() const {
    return std::visit(
        [](const auto& root) -> Status {
          using T = std::decay_t<decltype(root)>;
          if constexpr (std::is_same_v<T, KexRoot>) {
            return root.entry.status;
          } else if constexpr (std::is_same_v<T, PreSharedRoot>) {
            return root.status;
          } else {
            Status acc = root.components.front().status();
            for (std::size_t i = 1; i < root.components.size(); ++i)
              acc = join(acc, root.components[i].status());
            return acc;
          }
        },
        v_);
  }

  friend bool operator==(const KeySource&, const KeySource&) = default;

 private:
  void validate() const {
    if (const auto* k = std::get_if<KexRoot>(&v_); k && k->entry.role != Role::KEX)
      throw ChainError("key source '" + k->entry.name + "' must have role KEX");
    if (const auto* h = std::get_if<HybridRoot>(&v_); h && h->components.size() < 2)
      throw ChainError("hybrid key source needs at least two components");
  }

  Variant v_;
};

inline bool operator==(const HybridRoot& a, const HybridRoot& b) {
  return a.components == b.components;
}

struct KeyChain {
  KeySource root;
  std::vector<AlgorithmEntry> kdf_steps;

  friend bool operator==(const KeyChain&, const KeyChain&) = default;
};

inline void validate(const KeyChain& kc) {
  for (const auto& step : kc.kdf_steps)
    if (step.role != Role::KDF)
      throw ChainError("key derivation step '" + step.name + "' must have role KDF");
}

// Root status, then each KDF step can only preserve or lower it.
inline Status key_material_status(const KeyChain& kc) {
  Status s = kc.root.status();
  for (const auto& step : kc.kdf_steps) s = meet(s, step.status);
  return s;
}

struct SignatureAuth {
  AlgorithmEntry entry;
  friend bool operator==(const SignatureAuth&, const SignatureAuth&) = default;
};

struct MacAuth {
  AlgorithmEntry entry;
  KeyChain key;
  friend bool operator==(const MacAuth&, const MacAuth&) = default;
};

using AuthOp = std::variant<std::monostate, SignatureAuth, MacAuth>;

// Tags describing what becomes visible once this layer's encryption is removed.
struct LayerExposure {
  std::vector<std::string> reveals;
  std::vector<std::string> harvest;
  friend bool operator==(const LayerExposure&, const LayerExposure&) = default;
};

struct LayerSpec {
  std::string id;         // unique within a scenario, e.g. "L5-6" or "L2'"
  int osi_index = 2;      // lower bound for composite layers
  std::string osi_label;  // "2", "5-6", ...
  std::string protocol;
  KeyChain key_chain{KeySource::pre_shared(Status::bottom(), ""), {}};
  AuthOp auth;
  std::optional<AlgorithmEntry> enc;
  std::optional<AlgorithmEntry> integrity;
  LayerExposure exposure;

  bool has_auth() const noexcept { return !std::holds_alternative<std::monostate>(auth); }
  bool has_enc() const noexcept { return enc.has_value(); }
  bool is_active() const noexcept { return has_enc() || has_auth() || integrity.has_value(); }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

inline void validate(const LayerSpec& layer) {
  const std::string where = "layer '" + layer.id + "': ";
  if (layer.id.empty()) throw ChainError("layer id must not be empty");
  if (layer.osi_index < 2 || layer.osi_index > 7)
    throw ChainError(where + "OSI index must be in 2..7");
  if (!layer.is_active())
    throw ChainError(where + "no encryption, authentication or integrity operation");
  validate(layer.key_chain);
  if (const auto* sig = std::get_if<SignatureAuth>(&layer.auth); sig && sig->entry.role != Role::AUTH)
    throw ChainError(where + "signature '" + sig->entry.name + "' must have role AUTH");
  if (const auto* mac = std::get_if<MacAuth>(&layer.auth)) {
    if (mac->entry.role != Role::INT)
      throw ChainError(where + "MAC '" + mac->entry.name + "' must have role INT");
    validate(mac->key);
  }
  if (layer.enc && layer.enc->role != Role::ENC)
    throw ChainError(where + "cipher '" + layer.enc->name + "' must have role ENC");
  if (layer.integrity && layer.integrity->role != Role::INT)
    throw ChainError(where + "integrity '" + layer.integrity->name + "' must have role INT");
}

// Confidentiality: the weaker of the key material and the cipher.
inline Status effective_conf(const LayerSpec& layer) {
  if (!layer.enc)
    throw ChainError("layer '" + layer.id + "' has no encryption; confidentiality is undefined");
  return meet(key_material_status(layer.key_chain), layer.enc->status);
}

// Authentication: the signature scheme, or a MAC bounded by its key source.
inline Status effective_auth(const LayerSpec& layer) {
  if (const auto* sig = std::get_if<SignatureAuth>(&layer.auth)) return sig->entry.status;
  if (const auto* mac = std::get_if<MacAuth>(&layer.auth))
    return meet(mac->entry.status, key_material_status(mac->key));
  throw ChainError("layer '" + layer.id + "' has no authentication operation");
}

inline std::optional<Status> try_effective_conf(const LayerSpec& layer) {
  if (!layer.has_enc()) return std::nullopt;
  return effective_conf(layer);
}

inline std::optional<Status> try_effective_auth(const LayerSpec& layer) {
  if (!layer.has_auth()) return std::nullopt;
  return effective_auth(layer);
}

// Ordered active layer set, outermost (lowest OSI index) first.
class Chain {
 public:
  Chain() = default;

  explicit Chain(std::vector<LayerSpec> layers, LayerExposure wire = {})
      : layers_(std::move(layers)), wire_(std::move(wire)) {
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      validate(layers_[i]);
      if (i > 0 && layers_[i].osi_index <= layers_[i - 1].osi_index)
        throw ChainError("layer '" + layers_[i].id + "' must sit strictly inside '" +
                         layers_[i - 1].id + "' (OSI indices must increase outermost to innermost)");
      for (std::size_t j = 0; j < i; ++j)
        if (layers_[j].id == layers_[i].id)
          throw ChainError("duplicate layer id '" + layers_[i].id + "'");
    }
  }

  const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
  const LayerExposure& wire() const noexcept { return wire_; }
  std::size_t size() const noexcept { return layers_.size(); }
  bool empty() const noexcept { return layers_.empty(); }

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::vector<LayerSpec> layers_;
  LayerExposure wire_;
};

struct LayerStatuses {
  std::optional<Status> conf;
  std::optional<Status> auth;
  friend bool operator==(const LayerStatuses&, const LayerStatuses&) = default;
};

// Per-layer statuses in the sending direction, outermost first.
inline std::vector<LayerStatuses> send_chain_statuses(const Chain& chain) {
  std::vector<LayerStatuses> out;
  out.reserve(chain.size());
  for (const auto& layer : chain.layers())
    out.push_back({try_effective_conf(layer), try_effective_auth(layer)});
  return out;
}

// Receiving direction: the inverse transformations are applied innermost-last
// with the same negotiated algorithms, so each layer inherits the status of
// its sending counterpart. Returned in the same outermost-first order.
inline std::vector<LayerStatuses> receive_chain_statuses(const Chain& chain) {
  std::vector<LayerStatuses> out(chain.size());
  // Walk in decapsulation order (outermost is undone first on receipt).
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const LayerSpec& inverse = chain.layers()[i];
    out[i] = {try_effective_conf(inverse), try_effective_auth(inverse)};
  }
  return out;
}

}  // namespace pqposture

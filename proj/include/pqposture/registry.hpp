#pragma once

// Catalog of concrete algorithm instances and their post-quantum status.
//
// The built-in seed covers the algorithms that appear in the bundled case
// studies. Registry files (JSON lists of entries) add to it; replacing a seed
// row requires an explicit "override": true.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pqposture/detail/json_reader.hpp"
#include "pqposture/status.hpp"

namespace pqposture {

enum class Role : std::uint8_t { KEX, AUTH, ENC, INT, KDF };

inline constexpr std::array<Role, 5> kAllRoles = {Role::KEX, Role::AUTH, Role::ENC, Role::INT,
                                                  Role::KDF};

constexpr std::string_view to_string(Role r) noexcept {
  switch (r) {
    case Role::KEX:  return "KEX";
    case Role::AUTH: return "AUTH";
    case Role::ENC:  return "ENC";
    case Role::INT:  return "INT";
    case Role::KDF:  return "KDF";
  }
  return "?";
}

inline std::optional<Role> parse_role(std::string_view text) noexcept {
  for (Role r : kAllRoles)
    if (to_string(r) == text) return r;
  return std::nullopt;
}

struct AlgorithmEntry {
  std::string name;
  Role role = Role::ENC;
  Status status = Status::bottom();
  int classical_bits = 0;
  int post_quantum_bits = 0;
  std::string note;

  friend bool operator==(const AlgorithmEntry&, const AlgorithmEntry&) = default;
};

// Residual security strictly above this many bits is needed to avoid the dagger.
inline constexpr int kFeasibilityBits = 64;
// Residual security at or above this many bits counts as Q-Safe (AES-192 -> 96).
inline constexpr int kSafeResidualBits = 96;

// Returns an empty string when the entry satisfies the bit/status invariants,
// otherwise a description of the first violation.
inline std::string check_entry(const AlgorithmEntry& e) {
  if (e.name.empty()) return "empty algorithm name";
  if (e.classical_bits < 0 || e.post_quantum_bits < 0) return "bit counts must be non-negative";
  const Status& s = e.status;
  switch (s.level()) {
    case Level::QSafe:
      if (e.post_quantum_bits <= kFeasibilityBits)
        return "Q-Safe requires post_quantum_bits > 64";
      break;
    case Level::QWeakened:
      if (!(e.post_quantum_bits > kFeasibilityBits && e.post_quantum_bits < e.classical_bits))
        return "Q-Weakened requires 64 < post_quantum_bits < classical_bits";
      break;
    case Level::QUnsafe:
      if (s.daggered() && e.post_quantum_bits > kFeasibilityBits)
        return "Q-Unsafe† requires post_quantum_bits <= 64";
      if (!s.daggered() && e.post_quantum_bits != 0)
        return "Shor-broken Q-Unsafe requires post_quantum_bits = 0";
      break;
    case Level::CUnsafe:
      break;
  }
  return {};
}

// Grover halving rule for a symmetric primitive with `classical_bits` of
// nominal strength. attack must be Grover or None.
//
//   residual >= 96           -> Q-Safe
//   64 < residual < 96       -> Q-Weakened
//   residual <= 64, Grover   -> Q-Unsafe†
//   bits <= 64, no attack    -> C-Unsafe (classically brute-forceable)
inline Status classify_symmetric(int classical_bits, Mechanism attack) {
  if (classical_bits <= 0) throw Error("classify_symmetric: classical_bits must be positive");
  if (attack != Mechanism::Grover && attack != Mechanism::None)
    throw Error("classify_symmetric: attack must be grover or none");
  if (attack == Mechanism::None)
    return classical_bits > kFeasibilityBits ? Status::q_safe() : Status::c_unsafe();
  // Compare 2*threshold against the nominal bits so odd sizes need no rounding.
  if (classical_bits >= 2 * kSafeResidualBits) return Status::q_safe();
  if (classical_bits > 2 * kFeasibilityBits) return Status::q_weakened();
  return Status::q_unsafe_grover();
}

class UnknownAlgorithm : public Error {
 public:
  UnknownAlgorithm(std::string name, Role role)
      : Error("unknown algorithm '" + name + "' for role " + std::string(to_string(role))),
        name_(std::move(name)),
        role_(role) {}
  const std::string& name() const noexcept { return name_; }
  Role role() const noexcept { return role_; }

 private:
  std::string name_;
  Role role_;
};

// One entry as written in a registry document.
struct EntryDecl {
  AlgorithmEntry entry;
  bool replace = false;

  friend bool operator==(const EntryDecl&, const EntryDecl&) = default;
};

namespace detail {

inline AlgorithmEntry seed(std::string name, Role role, Status s, int classical, int pq,
                           std::string note) {
  return {std::move(name), role, s, classical, pq, std::move(note)};
}

}  // namespace detail

// Seed rows, one per algorithm instance and role.
inline std::vector<AlgorithmEntry> builtin_entries() {
  using detail::seed;
  const Status safe = Status::q_safe();
  const Status weak = Status::q_weakened();
  const Status shor = Status::q_unsafe();
  const Status dagger = Status::q_unsafe_grover();
  const Status broken = Status::c_unsafe();
  return {
      seed("ML-KEM-768", Role::KEX, safe, 192, 192, "lattice-based KEM"),
      seed("ML-KEM-1024", Role::KEX, safe, 256, 256, "lattice-based KEM"),
      seed("ML-DSA-65", Role::AUTH, safe, 192, 192, "lattice-based signature"),
      seed("AES-256-GCM", Role::ENC, safe, 256, 128, "128-bit effective under Grover"),
      seed("ChaCha20-Poly1305", Role::ENC, safe, 256, 128, "128-bit effective under Grover"),
      seed("SHA-384", Role::KDF, safe, 384, 192, "192-bit effective"),
      seed("SHA-384", Role::INT, safe, 384, 192, "192-bit effective"),
      seed("SHA-512", Role::KDF, safe, 512, 256, "256-bit effective"),
      seed("SHA-512", Role::INT, safe, 512, 256, "256-bit effective"),
      seed("HMAC-SHA-256", Role::INT, safe, 256, 128, "128-bit effective"),
      seed("SHA-256", Role::KDF, weak, 256, 128, "preimage, 128-bit effective under Grover"),
      seed("HMAC-SHA1", Role::INT, weak, 160, 80, "160-bit key, 80-bit effective"),
      seed("PBKDF2-SHA1", Role::KDF, weak, 256, 128,
           "256-bit PMK; passphrase entropy not modeled"),
      seed("AES-128-CCMP", Role::ENC, dagger, 128, 64, "Grover-reduced to 64-bit"),
      seed("X25519", Role::KEX, shor, 128, 0, "broken by Shor"),
      seed("ECDH-P256", Role::KEX, shor, 128, 0, "broken by Shor"),
      seed("ECDSA-P256", Role::AUTH, shor, 128, 0, "broken by Shor"),
      seed("Ed25519", Role::AUTH, shor, 128, 0, "broken by Shor"),
      seed("RSA-2048+", Role::KEX, shor, 112, 0, "broken by Shor"),
      seed("RSA-2048+", Role::AUTH, shor, 112, 0, "broken by Shor"),
      seed("DH-2048", Role::KEX, shor, 112, 0, "broken by Shor"),
      seed("DES", Role::ENC, broken, 56, 28, "already broken classically"),
      seed("RC4", Role::ENC, broken, 0, 0, "already broken classically"),
      seed("MD5", Role::INT, broken, 0, 0, "already broken classically"),
      seed("MD5", Role::KDF, broken, 0, 0, "already broken classically"),
  };
}

inline AlgorithmEntry read_entry(const detail::json& value, const std::string& path,
                                 bool* replace = nullptr) {
  detail::ObjectReader obj(value, path);
  AlgorithmEntry e;
  e.name = obj.string("name");
  auto role_text = obj.string("role");
  auto role = parse_role(role_text);
  if (!role)
    throw InputError(InputErrorKind::Schema, obj.child_path("role"),
                     "unknown role '" + role_text + "'");
  e.role = *role;
  e.status = detail::read_status_fields(obj);
  auto classical = obj.integer("classical_bits");
  auto pq = obj.integer("post_quantum_bits");
  if (classical < 0 || classical > 100000)
    throw InputError(InputErrorKind::Schema, obj.child_path("classical_bits"), "out of range");
  if (pq < 0 || pq > 100000)
    throw InputError(InputErrorKind::Schema, obj.child_path("post_quantum_bits"), "out of range");
  e.classical_bits = static_cast<int>(classical);
  e.post_quantum_bits = static_cast<int>(pq);
  e.note = obj.optional_string("note").value_or("");
  bool rep = obj.boolean("override", false);
  if (replace) *replace = rep;
  obj.finish();
  if (auto why = check_entry(e); !why.empty())
    throw InputError(InputErrorKind::Invariant, path, e.name + ": " + why);
  return e;
}

inline std::vector<EntryDecl> read_entry_list(const detail::json& value, const std::string& path) {
  detail::ObjectReader::as_array(value, path);
  std::vector<EntryDecl> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    EntryDecl d;
    d.entry = read_entry(value[i], detail::index_path(path, i), &d.replace);
    out.push_back(std::move(d));
  }
  return out;
}

inline detail::json entry_to_json(const AlgorithmEntry& e, bool replace = false) {
  detail::json j = detail::json::object();
  j["name"] = e.name;
  j["role"] = std::string(to_string(e.role));
  j["level"] = std::string(to_string(e.status.level()));
  j["mechanism"] = std::string(to_string(e.status.mechanism()));
  j["classical_bits"] = e.classical_bits;
  j["post_quantum_bits"] = e.post_quantum_bits;
  j["note"] = e.note;
  if (replace) j["override"] = true;
  return j;
}

class Registry {
 public:
  Registry() = default;

  static Registry builtin() {
    Registry r;
    for (auto& e : builtin_entries()) r.entries_.emplace(Key{e.name, e.role}, std::move(e));
    return r;
  }

  // Built-in seed plus the entries of a registry document (a JSON array).
  // An empty or whitespace-only document yields the seed unchanged.
  static Registry load(std::string_view document) {
    if (document.find_first_not_of(" \t\r\n") == std::string_view::npos) return builtin();
    auto j = detail::parse_json_text(document);
    return builtin().with(read_entry_list(j, "$"));
  }

  // Returns a copy with the declarations applied. New (name, role) pairs are
  // added; existing ones may only be replaced by a declaration with replace set,
  // and a pair may appear only once among the declarations.
  Registry with(std::span<const EntryDecl> decls, const std::string& path = "$") const {
    Registry out = *this;
    std::map<Key, std::size_t> seen;
    for (std::size_t i = 0; i < decls.size(); ++i) {
      const auto& d = decls[i];
      if (auto why = check_entry(d.entry); !why.empty())
        throw InputError(InputErrorKind::Invariant, detail::index_path(path, i),
                         d.entry.name + ": " + why);
      Key key{d.entry.name, d.entry.role};
      if (auto [it, fresh] = seen.emplace(key, i); !fresh)
        throw InputError(InputErrorKind::Duplicate, detail::index_path(path, i),
                         d.entry.name + "/" + std::string(to_string(d.entry.role)) +
                             " already declared at index " + std::to_string(it->second));
      auto existing = out.entries_.find(key);
      if (existing != out.entries_.end() && !d.replace)
        throw InputError(InputErrorKind::Duplicate, detail::index_path(path, i),
                         d.entry.name + "/" + std::string(to_string(d.entry.role)) +
                             " already in registry; set \"override\": true to replace it");
      out.entries_.insert_or_assign(std::move(key), d.entry);
    }
    return out;
  }

  const AlgorithmEntry* find(std::string_view name, Role role) const {
    auto it = entries_.find(Key{std::string(name), role});
    return it == entries_.end() ? nullptr : &it->second;
  }

  const AlgorithmEntry& lookup(std::string_view name, Role role) const {
    if (const auto* e = find(name, role)) return *e;
    throw UnknownAlgorithm(std::string(name), role);
  }

  std::size_t size() const noexcept { return entries_.size(); }

  // Entries in (name, role) order.
  std::vector<AlgorithmEntry> entries() const {
    std::vector<AlgorithmEntry> out;
    out.reserve(entries_.size());
    for (const auto& [_, e] : entries_) out.push_back(e);
    return out;
  }

  detail::json to_json() const {
    detail::json j = detail::json::array();
    for (const auto& [_, e] : entries_) j.push_back(entry_to_json(e));
    return j;
  }

  friend bool operator==(const Registry&, const Registry&) = default;

 private:
  using Key = std::pair<std::string, Role>;
  std::map<Key, AlgorithmEntry> entries_;
};

}  // namespace pqposture

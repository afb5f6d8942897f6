#pragma once

// Bundled case-study scenarios. Each is an ordinary scenario document, so
// they also serve as worked examples of the file format.

#include <string>
#include <string_view>
#include <vector>

#include "pqposture/scenario.hpp"

namespace pqposture::fixtures {

inline constexpr std::string_view kCs1 = R"json({
  "version": 1,
  "name": "cs1-imessage-wpa3",
  "description": "iOS-to-iOS iMessage over WPA3-Personal: WPA3-SAE, TLS 1.3 to the relay, PQ3 end to end",
  "classical_rank": 2,
  "registry_overrides": [
    {"name": "SAE-Dragonfly-P256", "role": "KEX", "level": "Q-Unsafe", "mechanism": "shor",
     "classical_bits": 128, "post_quantum_bits": 0, "note": "WPA3 SAE, EC Dragonfly (P-256 class)"},
    {"name": "SAE-P256", "role": "AUTH", "level": "Q-Unsafe", "mechanism": "shor",
     "classical_bits": 128, "post_quantum_bits": 0, "note": "SAE implicit EC authentication"},
    {"name": "HKDF-SHA384", "role": "KDF", "level": "Q-Safe", "mechanism": "none",
     "classical_bits": 384, "post_quantum_bits": 192, "note": "TLS 1.3 key schedule"},
    {"name": "Kyber-1024", "role": "KEX", "level": "Q-Safe", "mechanism": "none",
     "classical_bits": 256, "post_quantum_bits": 256, "note": "PQ3 initial establishment"},
    {"name": "AES-256-CTR", "role": "ENC", "level": "Q-Safe", "mechanism": "none",
     "classical_bits": 256, "post_quantum_bits": 128, "note": "PQ3 message encryption"}
  ],
  "wire": {
    "reveals": ["802.11 headers: src/dst MAC, BSS ID, frame type"],
    "harvest": ["Device presence and activity timing"]
  },
  "layers": [
    {"id": "L2", "osi": "2", "protocol": "WPA3-SAE",
     "key": {"root": {"kex": "SAE-Dragonfly-P256"}, "kdf": []},
     "auth": {"signature": "SAE-P256"},
     "enc": "AES-128-CCMP",
     "reveals": ["IP headers: device IP -> Apple relay IP", "TCP port 443", "TLS record headers"],
     "harvest": ["Communication pattern to Apple servers"]},
    {"id": "L5-6", "osi": "5-6", "protocol": "TLS 1.3",
     "key": {"root": {"kex": "X25519"}, "kdf": ["HKDF-SHA384"]},
     "auth": {"signature": "ECDSA-P256"},
     "enc": "AES-256-GCM",
     "reveals": ["relay-visible messaging metadata", "PQ3-protected ciphertext"],
     "harvest": ["Messaging metadata visible after TLS removal"]},
    {"id": "L7", "osi": "7", "protocol": "PQ3",
     "key": {"root": {"hybrid": [{"kex": "Kyber-1024"}, {"kex": "ECDH-P256"}]}, "kdf": []},
     "auth": {"signature": "ECDSA-P256"},
     "enc": "AES-256-CTR",
     "reveals": ["message content"],
     "harvest": ["message content"]}
  ],
  "path_layers": [
    {"id": "L2'", "osi": "2", "protocol": "WPA3-SAE",
     "key": {"root": {"kex": "SAE-Dragonfly-P256"}, "kdf": []},
     "auth": {"signature": "SAE-P256"},
     "enc": "AES-128-CCMP",
     "reveals": ["IP headers: Apple relay IP -> device IP", "TCP port 443", "TLS record headers"],
     "harvest": ["Communication pattern from Apple servers"]},
    {"id": "L5-6'", "osi": "5-6", "protocol": "TLS 1.3",
     "key": {"root": {"kex": "X25519"}, "kdf": ["HKDF-SHA384"]},
     "auth": {"signature": "ECDSA-P256"},
     "enc": "AES-256-GCM",
     "reveals": ["relay-visible messaging metadata", "PQ3-protected ciphertext"],
     "harvest": ["Messaging metadata visible after TLS removal"]}
  ],
  "path": {
    "nodes": [
      {"name": "iPhone A", "role": "sender",
       "classical_exposure": ["full plaintext (origin device)"]},
      {"name": "AP (sender side)", "role": "intermediary",
       "classical_exposure": ["IP headers: device IP -> Apple relay IP", "TCP port 443", "TLS record headers"]},
      {"name": "Apple Relay", "role": "intermediary",
       "classical_exposure": ["PQ3-protected ciphertext", "relay-visible messaging metadata"]},
      {"name": "AP (recipient side)", "role": "intermediary",
       "classical_exposure": ["IP headers: Apple relay IP -> device IP", "TCP port 443", "TLS record headers"]},
      {"name": "iPhone B", "role": "recipient",
       "classical_exposure": ["full plaintext (destination device)"]}
    ],
    "segments": [
      {"from": "iPhone A", "to": "AP (sender side)", "layers": ["L2", "L5-6", "L7"]},
      {"from": "AP (sender side)", "to": "Apple Relay", "layers": ["L5-6", "L7"]},
      {"from": "Apple Relay", "to": "AP (recipient side)", "layers": ["L5-6'", "L7"]},
      {"from": "AP (recipient side)", "to": "iPhone B", "layers": ["L2'", "L5-6'", "L7"]}
    ],
    "terminations": {
      "AP (sender side)": ["L2"],
      "Apple Relay": ["L5-6"],
      "iPhone B": ["L2'", "L5-6'", "L7"]
    }
  }
}
)json";

inline constexpr std::string_view kCs2 = R"json({
  "version": 1,
  "name": "cs2-https-wpa2psk",
  "description": "Linux-to-Linux HTTPS over WPA2-Personal (PSK), no VPN, no application-layer encryption",
  "classical_rank": 1,
  "registry_overrides": [
    {"name": "HKDF-SHA384", "role": "KDF", "level": "Q-Safe", "mechanism": "none",
     "classical_bits": 384, "post_quantum_bits": 192, "note": "TLS 1.3 key schedule"}
  ],
  "wire": {
    "reveals": ["802.11 headers: MAC addresses, BSS ID, frame sizes"],
    "harvest": ["Device presence, activity timing"]
  },
  "layers": [
    {"id": "L2", "osi": "2", "protocol": "WPA2-PSK",
     "key": {"root": {"psk": {"level": "Q-Weakened", "mechanism": "grover", "label": "PBKDF2 PMK"}}, "kdf": []},
     "auth": {"mac": "HMAC-SHA1",
              "key": {"root": {"psk": {"level": "Q-Weakened", "mechanism": "grover", "label": "PBKDF2 PMK"}}, "kdf": []}},
     "enc": "AES-128-CCMP",
     "reveals": ["IP headers: client IP, server IP", "TCP port 443", "TLS SNI (server hostname)", "TLS record sizes and timing"],
     "harvest": ["Server identities", "Traffic volumes per destination"]},
    {"id": "L5-6", "osi": "5-6", "protocol": "TLS 1.3",
     "key": {"root": {"kex": "X25519"}, "kdf": ["HKDF-SHA384"]},
     "auth": {"signature": "ECDSA-P256"},
     "enc": "AES-256-GCM",
     "reveals": ["full HTTP content"],
     "harvest": ["All application data"]}
  ],
  "path": {
    "nodes": [
      {"name": "Linux A", "role": "sender", "classical_exposure": ["full plaintext (origin)"]},
      {"name": "AP", "role": "intermediary",
       "classical_exposure": ["IP headers: client IP, server IP", "TCP port 443", "TLS SNI (server hostname)", "TLS record sizes and timing"]},
      {"name": "Server", "role": "recipient", "classical_exposure": ["full plaintext (destination)"]}
    ],
    "segments": [
      {"from": "Linux A", "to": "AP", "layers": ["L2", "L5-6"]},
      {"from": "AP", "to": "Server", "layers": ["L5-6"]}
    ],
    "terminations": {"AP": ["L2"], "Server": ["L5-6"]}
  }
}
)json";

inline constexpr std::string_view kCs3 = R"json({
  "version": 1,
  "name": "cs3-https-wpa2ent",
  "description": "HTTPS over WPA2-Enterprise (EAP-TLS), no VPN, no application-layer encryption",
  "classical_rank": 2,
  "registry_overrides": [
    {"name": "HKDF-SHA384", "role": "KDF", "level": "Q-Safe", "mechanism": "none",
     "classical_bits": 384, "post_quantum_bits": 192, "note": "TLS 1.3 key schedule"},
    {"name": "ECDHE-P256", "role": "KEX", "level": "Q-Unsafe", "mechanism": "shor",
     "classical_bits": 128, "post_quantum_bits": 0, "note": "EAP-TLS ephemeral ECDH"}
  ],
  "wire": {
    "reveals": ["802.11 headers", "EAP identity (employee username in cleartext)"],
    "harvest": ["Employee usernames", "Corporate SSID", "Device MACs"]
  },
  "layers": [
    {"id": "L2", "osi": "2", "protocol": "WPA2-Enterprise",
     "key": {"root": {"kex": "ECDHE-P256"}, "kdf": []},
     "auth": {"signature": "RSA-2048+"},
     "enc": "AES-128-CCMP",
     "reveals": ["IP headers", "TLS records", "EAP-TLS handshake: client/server certificates, ECDHE parameters"],
     "harvest": ["Internal topology", "Server IPs", "Employee certificate DNs"]},
    {"id": "L5-6", "osi": "5-6", "protocol": "TLS 1.3",
     "key": {"root": {"kex": "X25519"}, "kdf": ["HKDF-SHA384"]},
     "auth": {"signature": "ECDSA-P256"},
     "enc": "AES-256-GCM",
     "reveals": ["full HTTP content"],
     "harvest": ["All corporate data"]}
  ],
  "path": {
    "nodes": [
      {"name": "Laptop", "role": "sender", "classical_exposure": ["full plaintext (origin)"]},
      {"name": "AP", "role": "intermediary",
       "classical_exposure": ["IP headers", "TLS records", "EAP-TLS handshake: client/server certificates, ECDHE parameters"]},
      {"name": "RADIUS", "role": "intermediary", "on_data_path": false,
       "classical_exposure": ["EAP-TLS auth exchange: client/server certificates", "derived PMK"]},
      {"name": "Web Server", "role": "recipient", "classical_exposure": ["full plaintext (destination)"]}
    ],
    "segments": [
      {"from": "Laptop", "to": "AP", "layers": ["L2", "L5-6"]},
      {"from": "AP", "to": "Web Server", "layers": ["L5-6"]}
    ],
    "terminations": {"AP": ["L2"], "Web Server": ["L5-6"]}
  }
}
)json";

namespace detail {

inline std::string cs4_document(std::string_view name, std::string_view description,
                                std::string_view wireguard_root) {
  std::string doc = R"json({
  "version": 1,
  "name": "@NAME@",
  "description": "@DESCRIPTION@",
  "classical_rank": 2,
  "registry_overrides": [
    {"name": "SAE-Dragonfly-P256", "role": "KEX", "level": "Q-Unsafe", "mechanism": "shor",
     "classical_bits": 128, "post_quantum_bits": 0, "note": "WPA3 SAE, EC Dragonfly (P-256)"},
    {"name": "SAE-P256", "role": "AUTH", "level": "Q-Unsafe", "mechanism": "shor",
     "classical_bits": 128, "post_quantum_bits": 0, "note": "SAE implicit EC authentication"},
    {"name": "HKDF-SHA384", "role": "KDF", "level": "Q-Safe", "mechanism": "none",
     "classical_bits": 384, "post_quantum_bits": 192, "note": "TLS 1.3 key schedule"},
    {"name": "Curve25519", "role": "KEX", "level": "Q-Unsafe", "mechanism": "shor",
     "classical_bits": 128, "post_quantum_bits": 0, "note": "WireGuard Noise IK DH"},
    {"name": "Curve25519-static", "role": "AUTH", "level": "Q-Unsafe", "mechanism": "shor",
     "classical_bits": 128, "post_quantum_bits": 0, "note": "WireGuard static-key authentication"}
  ],
  "wire": {
    "reveals": ["802.11 headers: MACs, BSS ID, payload sizes"],
    "harvest": ["Device presence and timing"]
  },
  "layers": [
    {"id": "L2", "osi": "2", "protocol": "WPA3-SAE",
     "key": {"root": {"kex": "SAE-Dragonfly-P256"}, "kdf": []},
     "auth": {"signature": "SAE-P256"},
     "enc": "AES-128-CCMP",
     "reveals": ["outer IP: device -> VPN server", "UDP port 51820", "WireGuard handshake/data"],
     "harvest": ["VPN usage exposed", "VPN server identity"]},
    {"id": "L3", "osi": "3", "protocol": "WireGuard",
     "key": {"root": @WG_ROOT@, "kdf": []},
     "auth": {"signature": "Curve25519-static"},
     "enc": "ChaCha20-Poly1305",
     "reveals": ["inner IP: virtual IP -> web server", "TCP port 443", "TLS SNI (hostname)"],
     "harvest": ["Browsing destinations", "Defeats VPN privacy"]},
    {"id": "L5-6", "osi": "5-6", "protocol": "TLS 1.3",
     "key": {"root": {"kex": "X25519"}, "kdf": ["HKDF-SHA384"]},
     "auth": {"signature": "ECDSA-P256"},
     "enc": "AES-256-GCM",
     "reveals": ["full HTTP content"],
     "harvest": ["All application data"]}
  ],
  "path": {
    "nodes": [
      {"name": "Device", "role": "sender", "classical_exposure": ["full plaintext (origin)"]},
      {"name": "AP", "role": "intermediary",
       "classical_exposure": ["outer IP: device -> VPN server", "UDP port 51820", "WireGuard handshake/data"]},
      {"name": "VPN Server", "role": "intermediary",
       "classical_exposure": ["inner IP: virtual IP -> web server", "TCP port 443", "TLS SNI (hostname)", "traffic volumes"]},
      {"name": "Web Server", "role": "recipient", "classical_exposure": ["full plaintext (destination)"]}
    ],
    "segments": [
      {"from": "Device", "to": "AP", "layers": ["L2", "L3", "L5-6"]},
      {"from": "AP", "to": "VPN Server", "layers": ["L3", "L5-6"]},
      {"from": "VPN Server", "to": "Web Server", "layers": ["L5-6"]}
    ],
    "terminations": {"AP": ["L2"], "VPN Server": ["L3"], "Web Server": ["L5-6"]}
  }
}
)json";
  auto replace = [&doc](std::string_view key, std::string_view value) {
    auto pos = doc.find(key);
    doc.replace(pos, key.size(), value);
  };
  replace("@NAME@", name);
  replace("@DESCRIPTION@", description);
  replace("@WG_ROOT@", wireguard_root);
  return doc;
}

}  // namespace detail

inline std::string cs4_document() {
  return detail::cs4_document(
      "cs4-https-wpa3-wireguard",
      "HTTPS over WPA3-Personal through a WireGuard VPN (standard deployment, no PSK)",
      R"root({"kex": "Curve25519"})root");
}

inline std::string cs4_psk_document() {
  return detail::cs4_document(
      "cs4-psk",
      "Variant of cs4 with a Q-Safe WireGuard pre-shared key mixed into the Noise handshake",
      R"root({"hybrid": [{"kex": "Curve25519"}, {"psk": {"level": "Q-Safe", "mechanism": "none", "label": "WireGuard PSK (256-bit)"}}]})root");
}

// Source documents in fixture order.
inline std::vector<std::string> builtin_documents() {
  return {std::string(kCs1), std::string(kCs2), std::string(kCs3), cs4_document(),
          cs4_psk_document()};
}

inline std::vector<ScenarioDoc> builtin_fixtures(const Registry& registry = Registry::builtin()) {
  std::vector<ScenarioDoc> out;
  for (const auto& doc : builtin_documents()) out.push_back(parse_scenario(doc, registry));
  return out;
}

// Resolves an exact fixture name, or a short alias made of the name's first
// dash-separated token ("cs2" -> "cs2-https-wpa2psk"); the first match in
// fixture order wins.
inline std::optional<std::string> resolve_fixture_document(std::string_view name) {
  const auto docs = builtin_documents();
  const auto fixtures = builtin_fixtures();
  for (std::size_t i = 0; i < fixtures.size(); ++i)
    if (fixtures[i].name == name) return docs[i];
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto& n = fixtures[i].name;
    if (n.substr(0, n.find('-')) == name) return docs[i];
  }
  return std::nullopt;
}

}  // namespace pqposture::fixtures

#pragma once

// Helpers shared by the unit, property and acceptance tests.

#include <algorithm>
#include <array>
#include <cstdio>
#include <sys/wait.h>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "pqposture/fixtures.hpp"
#include "pqposture/planner.hpp"

namespace testsupport {

using namespace pqposture;

inline constexpr std::array<int, 6> kOsi = {2, 3, 4, 5, 6, 7};

inline AlgorithmEntry synthetic(std::string name, Role role, Status s) {
  return AlgorithmEntry{std::move(name), role, s, 256, 128, {}};
}

// A layer whose effective conf and auth are exactly the given statuses:
// pre-shared key at `conf` feeding a Q-Safe cipher, and a signature at `auth`.
inline LayerSpec synthetic_layer(std::size_t i, std::optional<Status> conf, std::optional<Status> auth) {
  LayerSpec l;
  l.osi_index = kOsi.at(i);
  l.osi_label = std::to_string(l.osi_index);
  l.id = "L" + l.osi_label;
  l.protocol = "P" + std::to_string(i);
  l.exposure.reveals = {"tag-" + std::to_string(i)};
  l.exposure.harvest = {"harvest-" + std::to_string(i)};
  if (conf) {
    l.key_chain.root = KeySource::pre_shared(*conf, "k" + std::to_string(i));
    l.enc = synthetic("SYN-ENC", Role::ENC, Status::q_safe());
  }
  if (auth) l.auth = SignatureAuth{synthetic("SYN-SIG", Role::AUTH, *auth)};
  return l;
}

inline Chain synthetic_chain(const std::vector<Status>& conf, const std::vector<Status>& auth) {
  std::vector<LayerSpec> layers;
  for (std::size_t i = 0; i < conf.size(); ++i) layers.push_back(synthetic_layer(i, conf[i], auth[i]));
  return Chain(std::move(layers), LayerExposure{{"wire-tag"}, {"wire-harvest"}});
}

inline std::vector<Status> statuses_of(const std::vector<Level>& levels) {
  std::vector<Status> out;
  for (Level l : levels) out.push_back(Status::of(l));
  return out;
}

// Decodes `code` as n base-4 digits, outermost layer first.
inline std::vector<Level> levels_from_code(std::size_t code, std::size_t n) {
  std::vector<Level> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = kAllLevels[code % 4];
    code /= 4;
  }
  return out;
}

inline std::size_t pow4(std::size_t n) { return std::size_t{1} << (2 * n); }

// Reference semantics computed directly on level ranks.
struct Expected {
  Level conf = Level::CUnsafe;
  Level auth = Level::CUnsafe;
  Level meta = Level::CUnsafe;
  std::size_t depth = 0;
};

inline int rank(Level l) {
  switch (l) {
    case Level::CUnsafe:   return 0;
    case Level::QUnsafe:   return 1;
    case Level::QWeakened: return 2;
    case Level::QSafe:     return 3;
  }
  return -1;
}

inline Expected reference(const std::vector<Level>& conf, const std::vector<Level>& auth) {
  Expected e;
  if (conf.empty()) return e;
  e.conf = *std::max_element(conf.begin(), conf.end(), [](Level a, Level b) { return rank(a) < rank(b); });
  e.auth = *std::min_element(auth.begin(), auth.end(), [](Level a, Level b) { return rank(a) < rank(b); });
  e.meta = conf.front();
  while (e.depth < conf.size() && conf[e.depth] != Level::QSafe) ++e.depth;
  return e;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  Status status() { return kAllStatuses[below(kAllStatuses.size())]; }
  std::vector<Status> statuses(std::size_t n) {
    std::vector<Status> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(status());
    return v;
  }

 private:
  std::mt19937_64 gen_;
};

inline ScenarioDoc fixture(std::string_view name) {
  auto doc = fixtures::resolve_fixture_document(name);
  if (!doc) throw Error("no fixture " + std::string(name));
  return parse_scenario(*doc);
}

inline const LayerSpec& layer(const Chain& c, std::string_view id) {
  for (const auto& l : c.layers())
    if (l.id == id) return l;
  throw Error("no layer " + std::string(id));
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded.
inline CommandResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PQPOSTURE_CLI) + " " + args + " 2>/dev/null";
  CommandResult r;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe.release());
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace testsupport

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "pqposture/report.hpp"
#include "support.hpp"

using namespace testsupport;

namespace {

class Failures {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok && notes_.size() < 5) notes_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s = std::to_string(count_) + " failed";
    for (const auto& n : notes_) s += "; " + n;
    return s;
  }

 private:
  std::size_t count_ = 0;
  std::vector<std::string> notes_;
};

std::string str(const Status& s) { return to_string(s); }

bool same(const Status& a, const Status& b) { return a == b; }

Failures ac1() {
  Failures f;
  const auto doc = fixture("cs1-imessage-wpa3");
  const auto r = compose(doc.chain);
  f.check(same(r.chain_conf, Status::q_safe()), "conf " + str(r.chain_conf));
  f.check(r.chain_auth.level() == Level::QUnsafe, "auth " + str(r.chain_auth));
  f.check(r.chain_meta.level() == Level::QUnsafe, "meta " + str(r.chain_meta));
  f.check(r.exposure_depth == 2, "d* " + std::to_string(r.exposure_depth));
  std::ostringstream os;
  report::render_analyze(os, doc, r, report::Format::Table);
  f.check(os.str().find("conf = max(Q-Unsafe, Q-Unsafe, Q-Safe) = Q-Safe") != std::string::npos,
          "equation line missing");
  return f;
}

Failures ac2() {
  Failures f;
  const auto doc = fixture("cs2-https-wpa2psk");
  const auto r = compose(doc.chain);
  f.check(r.chain_conf.level() == Level::QUnsafe && !r.chain_conf.daggered(), "conf " + str(r.chain_conf));
  f.check(r.chain_auth.level() == Level::QUnsafe, "auth " + str(r.chain_auth));
  f.check(same(r.chain_meta, Status::q_unsafe_grover()), "meta " + str(r.chain_meta));
  f.check(str(r.chain_meta) == "Q-Unsafe†", "meta render " + str(r.chain_meta));
  f.check(r.exposure_depth == 2, "d*");
  f.check(same(effective_conf(layer(doc.chain, "L2")), Status::q_unsafe_grover()), "L2 conf");
  return f;
}

Failures ac3() {
  Failures f;
  const auto doc = fixture("cs3-https-wpa2ent");
  const auto r = compose(doc.chain);
  f.check(same(r.chain_conf, Status::q_unsafe()), "conf " + str(r.chain_conf));
  f.check(same(r.chain_auth, Status::q_unsafe()), "auth " + str(r.chain_auth));
  f.check(same(r.chain_meta, Status::q_unsafe()), "meta " + str(r.chain_meta));
  f.check(r.exposure_depth == 2, "d*");
  f.check(effective_conf(layer(doc.chain, "L2")).mechanism() == Mechanism::Shor, "L2 mechanism");
  return f;
}

Failures ac4() {
  Failures f;
  const auto doc = fixture("cs4-https-wpa3-wireguard");
  const auto r = compose(doc.chain);
  for (const auto& s : {r.chain_conf, r.chain_auth, r.chain_meta})
    f.check(s.level() == Level::QUnsafe, "cs4 verdict " + str(s));
  for (const auto& l : r.per_layer) f.check(l.conf && l.conf->level() == Level::QUnsafe, "cs4 " + l.layer_id);
  f.check(r.exposure_depth == 3 && doc.chain.size() == 3, "cs4 d*");

  const auto psk = fixture("cs4-psk");
  const auto rp = compose(psk.chain);
  f.check(same(effective_conf(layer(psk.chain, "L3")), Status::q_safe()), "psk L3 conf");
  f.check(same(rp.chain_conf, Status::q_safe()), "psk chain conf");
  f.check(rp.exposure_depth == 1, "psk d* " + std::to_string(rp.exposure_depth));
  return f;
}

Failures ac5() {
  Failures f;
  struct Row {
    std::vector<std::pair<std::string, Role>> keys;
    Status expected;
  };
  const std::vector<Row> rows = {
      {{{"ML-KEM-768", Role::KEX}, {"ML-KEM-1024", Role::KEX}}, Status::q_safe()},
      {{{"ML-DSA-65", Role::AUTH}}, Status::q_safe()},
      {{{"AES-256-GCM", Role::ENC}}, Status::q_safe()},
      {{{"ChaCha20-Poly1305", Role::ENC}}, Status::q_safe()},
      {{{"SHA-384", Role::KDF}, {"SHA-384", Role::INT}, {"SHA-512", Role::KDF}, {"SHA-512", Role::INT}},
       Status::q_safe()},
      {{{"HMAC-SHA-256", Role::INT}}, Status::q_safe()},
      {{{"SHA-256", Role::KDF}}, Status::q_weakened()},
      {{{"HMAC-SHA1", Role::INT}}, Status::q_weakened()},
      {{{"PBKDF2-SHA1", Role::KDF}}, Status::q_weakened()},
      {{{"AES-128-CCMP", Role::ENC}}, Status::q_unsafe_grover()},
      {{{"X25519", Role::KEX}, {"ECDH-P256", Role::KEX}}, Status::q_unsafe()},
      {{{"ECDSA-P256", Role::AUTH}, {"Ed25519", Role::AUTH}}, Status::q_unsafe()},
      {{{"RSA-2048+", Role::KEX}, {"RSA-2048+", Role::AUTH}}, Status::q_unsafe()},
      {{{"DH-2048", Role::KEX}}, Status::q_unsafe()},
      {{{"DES", Role::ENC}, {"RC4", Role::ENC}, {"MD5", Role::INT}, {"MD5", Role::KDF}}, Status::c_unsafe()},
  };
  f.check(rows.size() == 15, "row count");
  const auto reg = Registry::builtin();
  for (const auto& row : rows)
    for (const auto& [name, role] : row.keys) {
      const auto* e = reg.find(name, role);
      f.check(e && e->status == row.expected, name + "/" + std::string(to_string(role)));
    }
  return f;
}

Failures ac6() {
  Failures f;
  const auto& S = kAllStatuses;
  for (const auto& a : S) {
    f.check(join(a, a) == a && meet(a, a) == a, "idempotence " + str(a));
    f.check(join(a, Status::bottom()) == a && meet(a, Status::top()) == a, "bounds " + str(a));
    for (const auto& b : S) {
      f.check(join(a, b) == join(b, a) && meet(a, b) == meet(b, a), "commutativity");
      f.check(compare(join(a, b), meet(a, b)) >= 0, "join >= meet");
      // Absorption, order-theoretically (level equivalence) for every pair.
      f.check(compare(join(a, meet(a, b)), a) == 0 && compare(meet(a, join(a, b)), a) == 0,
              "absorption level " + str(a) + "," + str(b));
      // Structurally it holds except where the shared severity tie-break
      // lets a Shor-broken b override a daggered a at the same level.
      const bool exception = a == Status::q_unsafe_grover() && b == Status::q_unsafe();
      f.check((join(a, meet(a, b)) == a) == !exception, "absorption join " + str(a) + "," + str(b));
      f.check((meet(a, join(a, b)) == a) == !exception, "absorption meet " + str(a) + "," + str(b));
      for (const auto& c : S) {
        f.check(join(join(a, b), c) == join(a, join(b, c)), "join associativity");
        f.check(meet(meet(a, b), c) == meet(a, meet(b, c)), "meet associativity");
        f.check(join(join(a, b), c) == join(join(c, a), b), "join permutation");
        f.check(meet(meet(a, b), c) == meet(meet(c, b), a), "meet permutation");
      }
    }
  }
  for (Level x : kAllLevels)
    for (Level y : kAllLevels) {
      const Status a = Status::of(x), b = Status::of(y);
      f.check(join(a, meet(a, b)) == a && meet(a, join(a, b)) == a, "canonical absorption");
      f.check((compare(x, y) < 0) == (rank(x) < rank(y)), "order table");
    }
  return f;
}

Failures ac7() {
  Failures f;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t cc = 0; cc < pow4(n); ++cc) {
      const auto conf = levels_from_code(cc, n);
      for (std::size_t ac = 0; ac < pow4(n); ++ac) {
        const auto auth = levels_from_code(ac, n);
        const auto chain = synthetic_chain(statuses_of(conf), statuses_of(auth));
        const auto r = compose(chain);
        const auto o = oracle_posture(chain);
        const auto e = reference(conf, auth);
        f.check(r.chain_conf.level() == o.conf && o.conf == e.conf, "conf n=" + std::to_string(n));
        f.check(r.chain_auth.level() == o.auth && o.auth == e.auth, "auth n=" + std::to_string(n));
        f.check(r.exposure_depth == o.depth && o.depth == e.depth, "d* n=" + std::to_string(n));
        f.check(r.chain_meta.level() == e.meta, "meta n=" + std::to_string(n));
      }
    }
  return f;
}

Failures ac8() {
  Failures f;
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t cc = 0; cc < pow4(n); ++cc) {
      const auto conf = levels_from_code(cc, n);
      for (std::size_t ac = 0; ac < pow4(n); ++ac) {
        const auto auth = levels_from_code(ac, n);
        const auto base = send_chain_statuses(synthetic_chain(statuses_of(conf), statuses_of(auth)));
        for (std::size_t i = 0; i < n; ++i) {
          const auto up = apply_upgrade(base, {i, {}, true, false});
          f.check(compose_statuses(up).conf.is_safe(), "single conf upgrade");
        }
        const bool all_safe = std::all_of(auth.begin(), auth.end(), [](Level l) { return l == Level::QSafe; });
        f.check(compose_statuses(base).auth.is_safe() == all_safe, "auth iff all");
      }
    }
  return f;
}

Failures ac9() {
  Failures f;
  Random rng(9);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.below(6);
    const auto conf = rng.statuses(n), auth = rng.statuses(n);
    std::size_t expect = 0;
    while (expect < n && !conf[expect].is_safe()) ++expect;
    const auto chain = synthetic_chain(conf, auth);
    f.check(compose(chain).exposure_depth == expect, "d* trial " + std::to_string(t));
    f.check(oracle_posture(chain).depth == expect, "oracle d* trial " + std::to_string(t));
  }
  return f;
}

Failures ac10() {
  Failures f;
  const auto a = fixture("cs2"), b = fixture("cs3");
  const auto r = detect_inversion({a.name, &a.chain, a.classical_rank}, {b.name, &b.chain, b.classical_rank});
  f.check(r.classical_upgrade, "classical upgrade");
  f.check(r.inversion, "inversion");
  f.check(r.mechanism_downgrade, "mechanism downgrade");
  auto find = [&](std::string_view scope, std::string_view facet) -> const FacetComparison* {
    for (const auto& x : r.facets)
      if (x.scope == scope && x.facet == facet) return &x;
    return nullptr;
  };
  const auto* l2auth = find("L2", "auth");
  f.check(l2auth && l2auth->a.level() == Level::QWeakened && l2auth->b.level() == Level::QUnsafe &&
              l2auth->level_worse,
          "L2 auth");
  const auto* l2conf = find("L2", "conf");
  f.check(l2conf && l2conf->a == Status::q_unsafe_grover() && l2conf->b == Status::q_unsafe() &&
              l2conf->mechanism_worse && !l2conf->level_worse,
          "L2 conf");
  const auto* meta = find("chain", "meta");
  f.check(meta && meta->a.mechanism() == Mechanism::Grover && meta->b.mechanism() == Mechanism::Shor,
          "chain meta");
  return f;
}

Failures ac11() {
  Failures f;
  Random rng(11);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.below(6);
    const auto conf = rng.statuses(n), auth = rng.statuses(n);
    const auto before = compose(synthetic_chain(conf, auth));
    for (std::size_t i = 0; i < n; ++i)
      for (int facet = 0; facet < 2; ++facet) {
        const Status cur = facet == 0 ? conf[i] : auth[i];
        for (const auto& higher : kAllStatuses) {
          if (compare(higher, cur) <= 0) continue;
          auto c2 = conf, a2 = auth;
          (facet == 0 ? c2 : a2)[i] = higher;
          const auto after = compose(synthetic_chain(c2, a2));
          f.check(compare(after.chain_conf, before.chain_conf) >= 0, "conf lowered");
          f.check(compare(after.chain_auth, before.chain_auth) >= 0, "auth lowered");
          f.check(compare(after.chain_meta, before.chain_meta) >= 0, "meta lowered");
          f.check(after.exposure_depth <= before.exposure_depth, "d* raised");
        }
      }
  }
  return f;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Failures ac12() {
  Failures f;
  for (const auto& text : fixtures::builtin_documents()) {
    const auto doc = parse_scenario(text);
    const auto once = serialize_scenario(doc);
    const auto again = parse_scenario(once);
    f.check(again == doc, "round-trip " + doc.name);
    f.check(serialize_scenario(again) == once, "serialization stable " + doc.name);
  }
  for (const char* fx : {"cs1-imessage-wpa3", "cs2-https-wpa2psk", "cs3-https-wpa2ent", "cs4-https-wpa3-wireguard"})
    for (const char* cmd : {"analyze", "peel", "segments", "endpoints"}) {
      const std::string args = std::string("--format machine ") + cmd + " " + fx;
      const auto first = run_cli(args), second = run_cli(args);
      f.check(first.exit_code >= 0 && first.exit_code != 1, "cli exit " + args);
      f.check(!first.out.empty() && first.out == second.out, "byte stability " + args);
      const auto golden = std::filesystem::path(PQPOSTURE_GOLDEN_DIR) / (std::string(fx) + "." + cmd + ".txt");
      f.check(first.out == read_file(golden), "golden " + golden.filename().string());
    }
  return f;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Failures()> run;
  double budget_seconds;  // 0 = no timing requirement
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "cs1 golden verdicts", ac1, 1.0},
      {2, "cs2 golden verdicts, dagger preserved", ac2, 0},
      {3, "cs3 golden verdicts, shor mechanism", ac3, 0},
      {4, "cs4 golden verdicts and psk variant", ac4, 0},
      {5, "algorithm classification table", ac5, 0},
      {6, "lattice laws, exhaustive", ac6, 1.0},
      {7, "oracle equivalence n=1..4, exhaustive", ac7, 10.0},
      {8, "single conf upgrade suffices; auth safe iff all layers safe", ac8, 0},
      {9, "exposure depth on 1000 random chains", ac9, 0},
      {10, "cs2 vs cs3 inversion report", ac10, 0},
      {11, "monotonicity on 1000 random chains", ac11, 0},
      {12, "fixture round-trip and CLI byte stability", ac12, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Failures res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0) res.check(secs < c.budget_seconds, "over time budget");
    std::cout << (res.ok() ? "PASS" : "FAIL") << "  AC" << std::setw(2) << std::left << c.id << "  "
              << c.title << "  (" << std::fixed << std::setprecision(3) << secs << " s)";
    if (!res.ok()) std::cout << "  " << res.summary();
    std::cout << '\n';
    failed += !res.ok();
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

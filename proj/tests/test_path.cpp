#include <gtest/gtest.h>

#include "support.hpp"

using namespace testsupport;

namespace {

const Segment& segment(const Path& p, std::string_view from, std::string_view to) {
  for (const auto& s : p.segments)
    if (s.from == from && s.to == to) return s;
  throw Error("no segment");
}

const TrustBoundary& boundary(const std::vector<TrustBoundary>& v, std::string_view node) {
  for (const auto& b : v)
    if (b.node == node) return b;
  throw Error("no boundary");
}

Path simple_path(std::vector<LayerSpec> layers) {
  Path p;
  std::vector<std::string> ids;
  for (const auto& l : layers) ids.push_back(l.id);
  p.nodes = {{"A", NodeRole::Sender, {}, {"origin"}, true}, {"B", NodeRole::Recipient, ids, {"destination"}, true}};
  p.segments = {{"A", "B", std::move(layers)}};
  return p;
}

}  // namespace

TEST(Segments, Cs1FirstHop) {
  const auto doc = fixture("cs1");
  const auto p = segment_posture(segment(*doc.path, "iPhone A", "AP (sender side)"));
  EXPECT_EQ(p.conf, Status::q_safe());
  EXPECT_EQ(p.auth.level(), Level::QUnsafe);
}

TEST(Segments, Cs2ServerHop) {
  const auto doc = fixture("cs2");
  const auto& seg = doc.path->segments.back();
  ASSERT_EQ(seg.active_layers.size(), 1u);
  const auto p = segment_posture(seg);
  EXPECT_EQ(p.conf.level(), Level::QUnsafe);
  EXPECT_EQ(p.auth.level(), Level::QUnsafe);
}

TEST(Segments, SingletonAndEmpty) {
  const Segment safe{"A", "B", {synthetic_layer(0, Status::q_safe(), Status::q_safe())}};
  EXPECT_EQ(segment_posture(safe), (SegmentPosture{Status::q_safe(), Status::q_safe()}));
  EXPECT_EQ(segment_posture(Segment{"A", "B", {}}), (SegmentPosture{Status::bottom(), Status::bottom()}));
}

TEST(Segments, FullSegmentMatchesChainVerdicts) {
  for (const auto& doc : fixtures::builtin_fixtures()) {
    const auto& first = doc.path->segments.front();
    const auto r = compose(doc.chain);
    const auto p = segment_posture(first);
    EXPECT_EQ(p.conf, r.chain_conf) << doc.name;
    EXPECT_EQ(p.auth, r.chain_auth) << doc.name;
  }
}

TEST(Segments, LayersNeverReappear) {
  for (const auto& doc : fixtures::builtin_fixtures()) {
    std::set<std::string> stripped;
    for (const auto& seg : doc.path->segments) {
      for (const auto& l : seg.active_layers) EXPECT_FALSE(stripped.contains(l.id)) << doc.name << " " << l.id;
      for (const auto& t : doc.path->find(seg.to)->terminates) stripped.insert(t);
    }
  }
}

TEST(Endpoints, Cs1Relay) {
  const auto doc = fixture("cs1");
  const auto e = endpoint_posture(*doc.path, "Apple Relay");
  EXPECT_EQ(e.layers_remaining, (std::vector<std::string>{"L7"}));
  EXPECT_EQ(e.quantum_resistant, (std::vector<std::string>{"L7"}));
  EXPECT_TRUE(e.hndl.recovered.empty());
  EXPECT_EQ(e.hndl.blocked_by, "L7");
}

TEST(Endpoints, Cs4VpnServer) {
  const auto doc = fixture("cs4");
  const auto e = endpoint_posture(*doc.path, "VPN Server");
  EXPECT_EQ(e.layers_remaining, (std::vector<std::string>{"L5-6"}));
  EXPECT_TRUE(e.quantum_resistant.empty());
  EXPECT_NE(std::find(e.hndl.recovered.begin(), e.hndl.recovered.end(), "full HTTP content"),
            e.hndl.recovered.end());
  EXPECT_FALSE(e.hndl.blocked_by);
}

TEST(Endpoints, SenderIsPreTransmission) {
  const auto doc = fixture("cs1");
  const auto e = endpoint_posture(*doc.path, "iPhone A");
  EXPECT_EQ(e.scope, HndlScope::PreTransmission);
  EXPECT_EQ(e.layers_remaining.size(), doc.chain.size());
  EXPECT_TRUE(e.hndl.broken.empty());
}

TEST(Endpoints, RecipientAndOffPath) {
  EXPECT_EQ(endpoint_posture(*fixture("cs2").path, "Server").scope, HndlScope::Endpoint);
  const auto radius = endpoint_posture(*fixture("cs3").path, "RADIUS");
  EXPECT_EQ(radius.scope, HndlScope::OffDataPath);
  EXPECT_FALSE(radius.classical_exposure.empty());
}

TEST(Endpoints, UnknownNode) {
  EXPECT_THROW(endpoint_posture(*fixture("cs1").path, "Mallory"), PathError);
}

TEST(TrustBoundaries, Cs1RelayCoincides) {
  const auto v = trust_boundary_report(*fixture("cs1").path);
  const auto& relay = boundary(v, "Apple Relay");
  EXPECT_TRUE(relay.coincides);
  EXPECT_TRUE(relay.hndl_only.empty());
}

TEST(TrustBoundaries, Cs4VpnExtends) {
  const auto v = trust_boundary_report(*fixture("cs4").path);
  const auto& vpn = boundary(v, "VPN Server");
  EXPECT_FALSE(vpn.coincides);
  EXPECT_NE(std::find(vpn.hndl_only.begin(), vpn.hndl_only.end(), "full HTTP content"), vpn.hndl_only.end());
}

TEST(TrustBoundaries, NoIntermediaries) {
  EXPECT_TRUE(trust_boundary_report(simple_path({synthetic_layer(0, Status::q_safe(), Status::q_safe())})).empty());
}

TEST(PathValidation, AcceptsFixturesAndSimplePath) {
  for (const auto& doc : fixtures::builtin_fixtures()) EXPECT_NO_THROW(validate(*doc.path)) << doc.name;
  EXPECT_NO_THROW(validate(simple_path({synthetic_layer(0, Status::q_safe(), Status::q_safe())})));
}

TEST(PathValidation, RejectsBrokenPaths) {
  const auto l0 = synthetic_layer(0, Status::q_safe(), Status::q_safe());
  const auto l1 = synthetic_layer(1, Status::q_safe(), Status::q_safe());

  auto p = simple_path({l0});
  p.nodes[1].terminates = {"L9"};
  EXPECT_THROW(validate(p), PathError);  // terminates a layer it never sees

  p = simple_path({l0});
  p.nodes[1].role = NodeRole::Intermediary;
  EXPECT_THROW(validate(p), PathError);  // no recipient

  p = simple_path({l1, l0});
  EXPECT_THROW(validate(p), PathError);  // out of order

  p = simple_path({l0});
  p.nodes[0].terminates = {"L2"};
  EXPECT_THROW(validate(p), PathError);  // sender terminates

  // A layer stripped at M may not show up again on M -> B.
  p.nodes = {{"A", NodeRole::Sender, {}, {}, true},
             {"M", NodeRole::Intermediary, {"L2"}, {}, true},
             {"B", NodeRole::Recipient, {"L2", "L3"}, {}, true}};
  p.segments = {{"A", "M", {l0, l1}}, {"M", "B", {l0, l1}}};
  EXPECT_THROW(validate(p), PathError);

  // A layer may not vanish without being terminated.
  p.nodes[1].terminates = {};
  p.segments = {{"A", "M", {l0, l1}}, {"M", "B", {l1}}};
  p.nodes[2].terminates = {"L3"};
  EXPECT_THROW(validate(p), PathError);

  // Segments must be contiguous.
  p = simple_path({l0});
  p.nodes.push_back({"C", NodeRole::Intermediary, {}, {}, true});
  p.segments = {{"A", "C", {l0}}, {"A", "B", {l0}}};
  EXPECT_THROW(validate(p), PathError);
}

TEST(Peel, StopsAtFirstSafeLayer) {
  const auto out = peel({synthetic_layer(0, Status::q_unsafe(), Status::q_safe()),
                         synthetic_layer(1, Status::q_safe(), Status::q_safe()),
                         synthetic_layer(2, Status::q_unsafe(), Status::q_safe())});
  EXPECT_EQ(out.broken, (std::vector<std::string>{"L2"}));
  EXPECT_EQ(out.blocked_by, "L3");
  EXPECT_EQ(out.recovered, (std::vector<std::string>{"tag-0"}));
}

#include <doctest.h>

#include <random>

#include "support/helpers.hpp"
#include "tnbn/session.hpp"

using namespace tnbn;
using tnbn::testing::accident;
using tnbn::testing::conditioned_marginal;
using tnbn::testing::max_abs_diff;
using tnbn::testing::total;

namespace {

std::size_t idx(const char* id) { return accident()->index_of(id); }

std::size_t state(const char* node, const char* label) { return *accident()->find_state(idx(node), label); }

/// R -> X, X temporal with the given intervals; P(X = on | R = a) = 0.
std::shared_ptr<const CompiledNetwork> two_node_net(std::vector<TimeInterval> intervals) {
  NetworkSpec spec;
  spec.name = "pair";
  spec.nodes = {{"R", NodeKind::instantaneous, {"a", "b"}, std::nullopt, std::nullopt, {}},
                {"X", NodeKind::temporal, {"on"}, "off",
                 TimeInterval{intervals.front().lo, intervals.back().hi}, intervals}};
  spec.edges = {{"R", "X"}};
  const std::size_t card = 1 + intervals.size();
  std::vector<double> on_b(card, 0.5 / static_cast<double>(card - 1));
  on_b[0] = 0.5;
  std::vector<double> off_a(card, 0.0);
  off_a[0] = 1.0;
  spec.tables = {{"R", {}, {{{}, {0.5, 0.5}}}}, {"X", {"R"}, {{{"a"}, off_a}, {{"b"}, on_b}}}};
  return std::make_shared<const CompiledNetwork>(compile(spec));
}

/// R -> A -> B, with A and B temporal.
std::shared_ptr<const CompiledNetwork> chain_net() {
  NetworkSpec spec;
  spec.name = "chain";
  spec.nodes = {{"R", NodeKind::instantaneous, {"go"}, "idle", std::nullopt, {}},
                {"A", NodeKind::temporal, {"up"}, "flat", TimeInterval{0, 10}, {{0, 4}, {4, 10}}},
                {"B", NodeKind::temporal, {"hot"}, "cold", TimeInterval{0, 30}, {{0, 10}, {10, 20}, {20, 30}}}};
  spec.edges = {{"R", "A"}, {"A", "B"}};
  spec.tables = {{"R", {}, {{{}, {0.3, 0.7}}}},
                 {"A", {"R"}, {{{"idle"}, {0.9, 0.05, 0.05}}, {{"go"}, {0.1, 0.6, 0.3}}}},
                 {"B",
                  {"A"},
                  {{{"flat"}, {0.9, 0.04, 0.03, 0.03}},
                   {{"up@[0,4]"}, {0.1, 0.6, 0.2, 0.1}},
                   {{"up@[4,10]"}, {0.1, 0.1, 0.3, 0.5}}}}};
  return std::make_shared<const CompiledNetwork>(compile(spec));
}

}  // namespace

TEST_CASE("a fresh session is empty and sessions are independent") {
  Session a(accident());
  Session b(accident());
  CHECK_FALSE(a.anchor());
  CHECK(a.resolved().empty());
  CHECK(a.pending().empty());
  a.observe({"C", "severe", 100});
  CHECK(a.anchor());
  CHECK_FALSE(b.anchor());
  CHECK(b.resolved().empty());
}

TEST_CASE("root event resolves immediately and anchors") {
  Session s(accident());
  const auto& rec = s.observe({"C", "severe", 100});
  CHECK(rec.outcome == ObserveOutcome::resolved);
  REQUIRE(s.anchor());
  CHECK(s.anchor()->node == idx("C"));
  CHECK(s.anchor()->tc == 100);
  CHECK(s.resolved() == Evidence{{idx("C"), state("C", "severe")}});
}

TEST_CASE("elapsed time from the anchor selects the interval") {
  Session s(accident());
  s.observe({"C", "severe", 100});
  const auto& rec = s.observe({"VS", "unstable", 115});
  CHECK(rec.outcome == ObserveOutcome::resolved);
  CHECK(*rec.alpha == 15);
  CHECK(s.resolved().at(idx("VS")) == state("VS", "unstable@[10,30]"));
  CHECK(s.network().states(idx("VS"))[*rec.state].interval == 1u);

  const auto report = s.predict();
  const auto* pd = report.find(idx("PD"));
  REQUIRE(pd);
  CHECK(pd->windows[1]->lo == 100);
  CHECK(pd->windows[1]->hi == 103);
  CHECK_FALSE(pd->windows[0]);
}

TEST_CASE("boundary elapsed times follow the half-open convention") {
  auto resolve_at = [](Time tc) {
    Session s(accident());
    s.observe({"C", "mild", 100});
    return s.observe({"VS", "unstable", tc});
  };
  CHECK(resolve_at(110).state == state("VS", "unstable@[10,30]"));
  CHECK(resolve_at(160).state == state("VS", "unstable@[30,60]"));
  CHECK(resolve_at(100).state == state("VS", "unstable@[0,10]"));
  const auto late = resolve_at(160.5);
  CHECK(late.outcome == ObserveOutcome::inconsistent);
  CHECK_FALSE(late.state);
}

TEST_CASE("an out-of-range event is recorded, contributes no evidence and cannot be re-observed") {
  Session s(accident());
  s.observe({"C", "severe", 0});
  CHECK(s.observe({"PD", "dilated", 7}).outcome == ObserveOutcome::inconsistent);
  CHECK_FALSE(s.resolved().count(idx("PD")));
  CHECK(s.observed(idx("PD")));
  CHECK_THROWS_AS(s.observe({"PD", "dilated", 1}), DuplicateObservation);
  CHECK_FALSE(s.predict().find(idx("PD")));
}

TEST_CASE("alpha is symmetric in the event pair") {
  Session before(accident());
  before.observe({"C", "moderate", 100});
  Session after(accident());
  after.observe({"C", "moderate", 130});
  CHECK(before.observe({"VS", "unstable", 115}).state == after.observe({"VS", "unstable", 115}).state);
}

TEST_CASE("an intermediate first event anchors and expands into scenarios") {
  Session s(accident());
  const auto& rec = s.observe({"VS", "unstable", 50});
  CHECK(rec.outcome == ObserveOutcome::pending);
  REQUIRE(s.anchor());
  CHECK(s.anchor()->node == idx("VS"));
  CHECK(s.anchor()->tc == 50);

  const auto scen = s.scenarios();
  REQUIRE(scen.size() == 3);
  // Weights are the prior marginal of VS renormalized over its unstable states.
  const auto prior = joint_enumerate(*accident(), {}).marginal(idx("VS"));
  const double z = prior[1] + prior[2] + prior[3];
  for (const auto& sc : scen) {
    const std::size_t st = sc.assumed.at(idx("VS"));
    CHECK(std::abs(sc.weight - prior[st] / z) < 1e-12);
  }
  CHECK(scen[0].weight >= scen[1].weight);
  CHECK(scen[1].weight >= scen[2].weight);
}

TEST_CASE("a pending node with one interval gives one scenario of weight one") {
  Session s(two_node_net({{0, 10}}));
  s.observe({"X", "on", 3});
  const auto scen = s.scenarios();
  REQUIRE(scen.size() == 1);
  CHECK(scen[0].weight == 1.0);
}

TEST_CASE("two pending nodes expand into the cross product") {
  Session s(accident());
  CHECK(s.observe({"PD", "dilated", 2}).outcome == ObserveOutcome::pending);
  CHECK(s.observe({"VS", "unstable", 5}).outcome == ObserveOutcome::pending);
  const auto scen = s.scenarios();
  CHECK(scen.size() == 6);
  double w = 0;
  for (const auto& sc : scen) w += sc.weight;
  CHECK(std::abs(w - 1) < 1e-12);
}

TEST_CASE("prediction from a known collision severity") {
  Session s(accident());
  s.observe({"C", "severe", 0});
  const auto r = s.predict();
  CHECK(std::abs(r.find(idx("HI"))->distribution[1] - 0.9) < 1e-12);
  CHECK(std::abs(r.find(idx("IB"))->distribution[1] - 0.5) < 1e-12);
  CHECK(std::abs(r.find(idx("IB"))->distribution[2] - 0.4) < 1e-12);
  for (const auto& n : r.nodes) CHECK(std::abs(total(n.distribution) - 1) < 1e-9);
}

TEST_CASE("an empty session cannot be queried") {
  Session s(accident());
  CHECK_THROWS_AS(s.predict(), UnanchoredSession);
  CHECK_THROWS_AS(s.diagnose(), UnanchoredSession);
}

TEST_CASE("scenario mixture equals the interval-marginalized posterior (fixture)") {
  Session s(accident());
  s.observe({"VS", "unstable", 50});
  const auto scen = s.scenarios();
  const auto report = s.predict();
  const auto cands = s.candidates(idx("VS"));
  for (const char* id : {"C", "HI", "IB", "PD"}) {
    CAPTURE(id);
    Distribution mix(accident()->cardinality(idx(id)), 0.0);
    for (const auto& sc : scen)
      for (std::size_t k = 0; k < mix.size(); ++k) mix[k] += sc.weight * sc.posteriors.at(idx(id))[k];
    const auto direct = conditioned_marginal(*accident(), {}, idx("VS"), cands, idx(id));
    CHECK(max_abs_diff(report.find(idx(id))->distribution, mix) < 1e-12);
    CHECK(max_abs_diff(mix, direct) < 1e-9);
  }
}

TEST_CASE("property: scenario mixture law on random networks") {
  std::mt19937_64 rng(2718);
  RandomNetworkOptions opts;
  opts.min_nodes = 2;
  opts.temporal_fraction = 0.8;
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 60; ++trial) {
    const auto net = std::make_shared<const CompiledNetwork>(compile(random_network(rng, opts)));
    std::vector<std::size_t> temporal;
    for (std::size_t i = 0; i < net->size(); ++i)
      if (net->node(i).is_temporal()) temporal.push_back(i);
    if (temporal.empty()) continue;
    const std::size_t t = temporal[std::uniform_int_distribution<std::size_t>(0, temporal.size() - 1)(rng)];
    const auto& value = net->node(t).values.front();

    Session s(net);
    s.observe({net->id(t), value, 7});
    const auto report = s.predict();
    const auto cands = s.candidates(t);
    for (const auto& np : report.nodes) {
      CHECK(max_abs_diff(np.distribution, conditioned_marginal(*net, {}, t, cands, np.node)) < 1e-9);
    }
    ++checked;
  }
  CHECK(checked >= 30);
}

TEST_CASE("a later cause collapses the scenario set") {
  Session s(accident());
  s.observe({"VS", "unstable", 50});
  const auto& rec = s.observe({"C", "moderate", 40});
  CHECK(rec.collapsed == std::vector<std::size_t>{idx("VS")});
  CHECK(s.pending().empty());
  CHECK(s.resolved().at(idx("VS")) == state("VS", "unstable@[10,30]"));
  CHECK(s.anchor()->node == idx("VS"));  // anchor never moves

  const auto scen = s.scenarios();
  REQUIRE(scen.size() == 1);
  CHECK(scen[0].assumed.empty());
  CHECK(scen[0].evidence == s.resolved());
  CHECK(scen[0].weight == 1.0);
}

TEST_CASE("a temporal cause after its pending effect becomes pending itself") {
  Session s(chain_net());
  const auto& net = s.network();
  s.observe({"B", "hot", 20});
  const auto& rec = s.observe({"A", "up", 5});
  CHECK(rec.outcome == ObserveOutcome::pending);
  CHECK(rec.collapsed == std::vector<std::size_t>{net.index_of("B")});
  CHECK(s.resolved().at(net.index_of("B")) == *net.find_state(net.index_of("B"), "hot@[10,20]"));
  CHECK(s.pending().count(net.index_of("A")));
  CHECK(s.scenarios().size() == 2);
}

TEST_CASE("an effect of a pending anchor is resolved from the anchor") {
  Session s(chain_net());
  const auto& net = s.network();
  s.observe({"A", "up", 100});
  const auto& rec = s.observe({"B", "hot", 125});
  CHECK(rec.outcome == ObserveOutcome::resolved);
  CHECK(rec.state == *net.find_state(net.index_of("B"), "hot@[20,30]"));
}

TEST_CASE("all-zero scenarios raise zero-probability evidence") {
  Session s(two_node_net({{0, 5}, {5, 10}}));
  s.observe({"X", "on", 10});
  s.observe({"R", "a", 4});  // settles X at [5,10], impossible given R = a
  CHECK_THROWS_AS(s.scenarios(), ZeroProbabilityEvidence);
  CHECK_THROWS_AS(s.predict(), ZeroProbabilityEvidence);
}

TEST_CASE("diagnosis") {
  SUBCASE("head injury points to a severe collision") {
    Session s(accident());
    s.observe({"HI", "true", 0});
    const auto d = s.diagnose();
    REQUIRE(d.nodes.size() == 1);
    CHECK(d.nodes[0].node == idx("C"));
    CHECK(std::abs(d.nodes[0].distribution[0] - 0.646875) < 1e-9);
  }
  SUBCASE("a root observation has no ancestors") {
    Session s(accident());
    s.observe({"C", "mild", 0});
    CHECK(s.diagnose().nodes.empty());
  }
  SUBCASE("unstable vitals at [10,30] raise the odds of gross bleeding") {
    const auto& net = *accident();
    const auto prior = posterior(net, idx("IB"), {});
    const auto post = posterior(net, idx("IB"), {{idx("VS"), state("VS", "unstable@[10,30]")}});
    CHECK(post[1] > prior[1]);

    Session s(accident());
    s.observe({"C", "severe", 100});
    s.observe({"VS", "unstable", 115});
    const auto d = s.diagnose();
    REQUIRE(d.find(idx("IB")));
    CHECK(d.find(idx("IB"))->distribution[1] > 0.5);
    CHECK_FALSE(d.find(idx("PD")));
  }
}

TEST_CASE("no-change assertions") {
  Session s(accident());
  CHECK_THROWS_AS(s.observe({"VS", "normal", 10}), DomainError);
  CHECK_THROWS_AS(s.observe({"VS", "wobbly", 10}), DomainError);
  s.observe({"C", "mild", 0});
  s.assert_no_change("VS");
  CHECK(s.closed());
  CHECK(s.resolved().at(idx("VS")) == 0u);
  CHECK_THROWS_AS(s.observe({"PD", "dilated", 1}), DomainError);
  CHECK_THROWS_AS(s.assert_no_change("VS"), DuplicateObservation);
  CHECK_THROWS_AS(s.assert_no_change("C"), DuplicateObservation);
  s.assert_no_change("PD");
  CHECK(s.history().back().no_change);
  CHECK_NOTHROW(s.predict());
}

TEST_CASE("duplicate observations are rejected") {
  Session s(accident());
  s.observe({"C", "mild", 0});
  CHECK_THROWS_AS(s.observe({"C", "severe", 1}), DuplicateObservation);
  s.observe({"VS", "unstable", 40});
  CHECK_THROWS_AS(s.observe({"VS", "unstable", 41}), DuplicateObservation);
}

TEST_CASE("replaying the same events yields the same session") {
  const std::vector<ObservedEvent> events = {{"PD", "dilated", 12}, {"VS", "unstable", 14}, {"IB", "gross", 11}};
  Session a(accident());
  Session b(accident());
  for (const auto& e : events) {
    a.observe(e);
    b.observe(e);
  }
  CHECK(a.resolved() == b.resolved());
  CHECK(a.pending() == b.pending());
  const auto sa = a.scenarios();
  const auto sb = b.scenarios();
  REQUIRE(sa.size() == sb.size());
  for (std::size_t k = 0; k < sa.size(); ++k) {
    CHECK(sa[k].evidence == sb[k].evidence);
    CHECK(sa[k].weight == sb[k].weight);
  }
}

TEST_CASE("shifting every event time shifts every window by the same amount") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> shift(-500, 500);
  for (int trial = 0; trial < 20; ++trial) {
    const double d = shift(rng);
    Session a(accident());
    Session b(accident());
    a.observe({"C", "severe", 100});
    b.observe({"C", "severe", 100 + d});
    a.observe({"VS", "unstable", 112});
    b.observe({"VS", "unstable", 112 + d});
    CHECK(b.anchor()->tc == 100 + d);
    const auto ra = a.predict();
    const auto rb = b.predict();
    REQUIRE(ra.nodes.size() == rb.nodes.size());
    for (std::size_t k = 0; k < ra.nodes.size(); ++k) {
      CHECK(ra.nodes[k].distribution == rb.nodes[k].distribution);
      for (std::size_t st = 0; st < ra.nodes[k].windows.size(); ++st) {
        const auto& wa = ra.nodes[k].windows[st];
        const auto& wb = rb.nodes[k].windows[st];
        REQUIRE(wa.has_value() == wb.has_value());
        if (wa) {
          CHECK(wb->lo == doctest::Approx(wa->lo + d).epsilon(1e-12));
          CHECK(wb->hi == doctest::Approx(wa->hi + d).epsilon(1e-12));
        }
      }
    }
  }
}

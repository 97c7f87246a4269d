#include <doctest.h>

#include <cmath>

#include "support/helpers.hpp"
#include "tnbn/simulate.hpp"

using namespace tnbn;
using tnbn::testing::accident;

TEST_CASE("same seed, same trajectory") {
  const auto a = sample_trajectory(*accident(), 42);
  const auto b = sample_trajectory(*accident(), 42);
  CHECK(a.states == b.states);
  CHECK(a.times == b.times);
  CHECK(a.seed == 42);
}

TEST_CASE("parallel sampling equals the serial reference") {
  const auto a = sample_trajectories(*accident(), 500, 9);
  const auto b = sample_trajectories_serial(*accident(), 500, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].states == b[i].states);
    CHECK(a[i].times == b[i].times);
  }
}

TEST_CASE("event times respect the sampled state") {
  const auto& net = *accident();
  for (const auto& t : sample_trajectories(net, 2000, 3)) {
    for (std::size_t i = 0; i < net.size(); ++i) {
      const auto& st = net.states(i)[t.states[i]];
      const auto& def = net.node(i);
      if (st.interval) {
        REQUIRE(t.times[i]);
        const auto& iv = def.intervals[*st.interval];
        CHECK(*t.times[i] >= iv.lo);
        CHECK(*t.times[i] < iv.hi);
      } else if (def.default_value && t.states[i] == 0) {
        CHECK_FALSE(t.times[i]);
      } else {
        CHECK(*t.times[i] == 0.0);
      }
    }
  }
}

TEST_CASE("a deterministic chain always samples the same states") {
  NetworkSpec spec;
  spec.name = "chain";
  spec.nodes = {{"A", NodeKind::instantaneous, {"on"}, "off", std::nullopt, {}},
                {"B", NodeKind::temporal, {"up"}, "flat", TimeInterval{0, 4}, {{0, 2}, {2, 4}}}};
  spec.edges = {{"A", "B"}};
  spec.tables = {{"A", {}, {{{}, {0.0, 1.0}}}},
                 {"B", {"A"}, {{{"off"}, {1.0, 0.0, 0.0}}, {{"on"}, {0.0, 0.0, 1.0}}}}};
  const auto net = compile(spec);
  for (const auto& t : sample_trajectories(net, 200, 1)) CHECK(t.states == std::vector<std::size_t>{1, 2});
}

TEST_CASE("empirical marginals agree with exact inference") {
  const auto& net = *accident();
  constexpr std::size_t n = 20000;
  const auto ts = sample_trajectories(net, n, 2024);
  for (std::size_t i = 0; i < net.size(); ++i) {
    const auto exact = posterior(net, i, {});
    std::vector<double> counts(net.cardinality(i), 0.0);
    for (const auto& t : ts) counts[t.states[i]] += 1;
    for (std::size_t s = 0; s < exact.size(); ++s) {
      const double se = std::sqrt(exact[s] * (1 - exact[s]) / n);
      CAPTURE(net.label(i, s));
      CHECK(std::abs(counts[s] / n - exact[s]) <= 3 * se + 1e-12);
    }
  }
}

TEST_CASE("trajectory text format") {
  const auto& net = *accident();
  const auto text = format_trajectories(net, sample_trajectories(net, 2, 7));
  CHECK(text.rfind("# trajectory 0 seed ", 0) == 0);
  CHECK(text.find("# trajectory 1 seed ") != std::string::npos);
  CHECK(text.find("\tC\t") != std::string::npos);
  CHECK(text == format_trajectories(net, sample_trajectories(net, 2, 7)));
}

TEST_CASE("accuracy score") {
  CHECK(accuracy_score({0, 1, 0}, 1) == 100);
  CHECK(accuracy_score({0.25, 0.25, 0.25, 0.25}, 0) == 100);
  CHECK(accuracy_score({0.25, 0.25, 0.25, 0.25}, 1) == 0);
  CHECK(accuracy_score({0.7, 0.3}, 1) == 0);
}

TEST_CASE("rbs score") {
  CHECK(rbs_score({0, 1, 0}, 1) == 100);
  CHECK(rbs_score({1, 0, 0}, 1) == 0);
  CHECK(rbs_score({0.5, 0.5}, 0) == 75);
  CHECK(rbs_score({0.5, 0.5}, 1) == 75);
  CHECK_THROWS(rbs_score({0.5, 0.5}, 2));
}

TEST_CASE("brier score is proper on the fixture") {
  const auto& net = *accident();
  const std::size_t c = net.index_of("C");
  const auto ts = sample_trajectories(net, 10000, 77);
  for (std::size_t node = 0; node < net.size(); ++node) {
    if (node == c) continue;
    const std::size_t card = net.cardinality(node);
    std::vector<Distribution> truth(net.cardinality(c));
    for (std::size_t s = 0; s < truth.size(); ++s) truth[s] = posterior(net, node, {{c, s}});

    Distribution uniform(card, 1.0 / static_cast<double>(card));
    Distribution lopsided(card, 0.0);
    lopsided[card - 1] = 0.7;
    for (std::size_t k = 0; k + 1 < card; ++k) lopsided[k] = 0.3 / static_cast<double>(card - 1);

    double score_truth = 0, score_uniform = 0, score_lopsided = 0, score_blurred = 0;
    for (const auto& t : ts) {
      const auto& p = truth[t.states[c]];
      Distribution blurred(card);
      for (std::size_t k = 0; k < card; ++k) blurred[k] = 0.5 * p[k] + 0.5 * uniform[k];
      score_truth += rbs_score(p, t.states[node]);
      score_uniform += rbs_score(uniform, t.states[node]);
      score_lopsided += rbs_score(lopsided, t.states[node]);
      score_blurred += rbs_score(blurred, t.states[node]);
    }
    CAPTURE(net.id(node));
    CHECK(score_truth >= score_uniform);
    CHECK(score_truth >= score_lopsided);
    CHECK(score_truth >= score_blurred);
  }
}

TEST_CASE("derived seeds differ by index") {
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
}

#include <algorithm>

#include "tnbn/fixtures.hpp"

namespace tnbn {

namespace {

std::size_t uniform_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

TemporalNodeDef random_node(std::mt19937_64& rng, std::size_t index, bool root,
                            const RandomNetworkOptions& opts) {
  TemporalNodeDef node;
  node.id = "N" + std::to_string(index);
  const std::size_t max_states = std::max<std::size_t>(opts.max_states, 2);
  std::bernoulli_distribution temporal(opts.temporal_fraction);

  if (!root && max_states >= 3 && temporal(rng)) {
    node.kind = NodeKind::temporal;
    node.default_value = "d";
    // 1 + |values| * |intervals| <= max_states
    const std::size_t n_values = uniform_size(rng, 1, std::min<std::size_t>(2, (max_states - 1)));
    const std::size_t n_intervals = uniform_size(rng, 1, (max_states - 1) / n_values);
    for (std::size_t v = 0; v < n_values; ++v) node.values.push_back("v" + std::to_string(v));
    Time t = static_cast<Time>(uniform_size(rng, 0, 2));
    for (std::size_t k = 0; k < n_intervals; ++k) {
      Time next = t + static_cast<Time>(uniform_size(rng, 1, 20));
      node.intervals.push_back({t, next});
      t = next;
    }
    node.temporal_range = TimeInterval{node.intervals.front().lo, node.intervals.back().hi};
    return node;
  }

  node.kind = NodeKind::instantaneous;
  const std::size_t card = uniform_size(rng, 2, max_states);
  const bool with_default = std::bernoulli_distribution(0.5)(rng);
  const std::size_t n_values = with_default ? card - 1 : card;
  if (with_default) node.default_value = "d";
  for (std::size_t v = 0; v < n_values; ++v) node.values.push_back("v" + std::to_string(v));
  return node;
}

std::vector<double> random_row(std::mt19937_64& rng, std::size_t card, double zero_fraction) {
  std::uniform_real_distribution<double> unit(0.05, 1.0);
  std::bernoulli_distribution zero(zero_fraction);
  std::vector<double> row(card);
  double sum = 0;
  for (auto& p : row) {
    p = zero(rng) ? 0.0 : unit(rng);
    sum += p;
  }
  if (sum == 0) {
    row[uniform_size(rng, 0, card - 1)] = 1.0;
    return row;
  }
  for (auto& p : row) p /= sum;
  return row;
}

}  // namespace

NetworkSpec random_network(std::mt19937_64& rng, const RandomNetworkOptions& opts) {
  NetworkSpec net;
  net.name = "random";
  const std::size_t n = uniform_size(rng, opts.min_nodes, std::max(opts.min_nodes, opts.max_nodes));

  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::size_t> pool(i);
    for (std::size_t k = 0; k < i; ++k) pool[k] = k;
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::size_t count = uniform_size(rng, 0, std::min(opts.max_parents, i));
    parents[i].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
  }

  for (std::size_t i = 0; i < n; ++i) net.nodes.push_back(random_node(rng, i, parents[i].empty(), opts));
  for (std::size_t i = 0; i < n; ++i)
    for (auto p : parents[i]) net.edges.push_back({net.nodes[p].id, net.nodes[i].id});

  for (std::size_t i = 0; i < n; ++i) {
    ConditionalTable t;
    t.child = net.nodes[i].id;
    std::vector<std::vector<std::string>> parent_labels;
    for (auto p : parents[i]) {
      t.parent_order.push_back(net.nodes[p].id);
      std::vector<std::string> labels;
      for (const auto& s : state_enumeration(net.nodes[p])) labels.push_back(state_label(net.nodes[p], s));
      parent_labels.push_back(std::move(labels));
    }
    const std::size_t card = state_enumeration(net.nodes[i]).size();
    std::vector<std::size_t> pick(parents[i].size(), 0);
    while (true) {
      CptRow row;
      for (std::size_t k = 0; k < pick.size(); ++k) row.given.push_back(parent_labels[k][pick[k]]);
      row.probs = random_row(rng, card, opts.zero_fraction);
      t.rows.push_back(std::move(row));
      std::size_t k = pick.size();
      while (k > 0 && ++pick[k - 1] == parent_labels[k - 1].size()) pick[--k] = 0;
      if (k == 0) break;
    }
    net.tables.push_back(std::move(t));
  }
  return net;
}

}  // namespace tnbn

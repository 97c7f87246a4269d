#include "tnbn/inference.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include <omp.h>

namespace tnbn {

namespace {

std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<std::size_t> CompiledNetwork::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CompiledNetwork::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw DomainError("unknown node '" + std::string(id) + "'");
}

std::optional<std::size_t> CompiledNetwork::find_state(std::size_t i, std::string_view label) const {
  const auto& labels = nodes_[i].labels;
  for (std::size_t s = 0; s < labels.size(); ++s)
    if (labels[s] == label) return s;

  // value@[lo,hi] with a non-canonical number spelling
  auto at = label.find("@[");
  if (at == std::string_view::npos || label.back() != ']') return std::nullopt;
  auto value = label.substr(0, at);
  auto body = label.substr(at + 2, label.size() - at - 3);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) return std::nullopt;
  auto lo = parse_number(body.substr(0, comma));
  auto hi = parse_number(body.substr(comma + 1));
  if (!lo || !hi) return std::nullopt;
  const auto& def = node(i);
  const auto& states = nodes_[i].states;
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (states[s].value == value && states[s].interval &&
        def.intervals[*states[s].interval] == TimeInterval{*lo, *hi}) {
      return s;
    }
  }
  return std::nullopt;
}

double CompiledNetwork::conditional(std::size_t i, std::size_t state,
                                    std::span<const std::size_t> assignment) const {
  const auto& n = nodes_[i];
  std::size_t offset = state * n.factor_strides.back();
  for (std::size_t k = 0; k < n.parents.size(); ++k) offset += assignment[n.parents[k]] * n.factor_strides[k];
  return n.factor.values()[offset];
}

bool CompiledNetwork::is_ancestor(std::size_t a, std::size_t b) const { return ancestor_[b][a]; }

std::vector<std::size_t> CompiledNetwork::ancestors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < size(); ++a)
    if (ancestor_[i][a]) out.push_back(a);
  return out;
}

void CompiledNetwork::check_evidence(const Evidence& evidence) const {
  for (const auto& [node, state] : evidence) {
    if (node >= size()) throw DomainError("evidence names node index " + std::to_string(node) + " outside the network");
    if (state >= cardinality(node)) {
      throw DomainError("evidence state index " + std::to_string(state) + " is not a state of '" + id(node) + "'");
    }
  }
}

CompiledNetwork compile(const NetworkSpec& spec) {
  if (auto report = validate(spec); !report.empty()) throw InvalidModel(std::move(report));

  CompiledNetwork net;
  net.spec_ = spec;
  const std::size_t n = spec.nodes.size();
  net.nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& def = net.spec_.nodes[i];
    net.index_.emplace(def.id, i);
    auto& node = net.nodes_[i];
    node.states = state_enumeration(def);
    for (const auto& s : node.states) node.labels.push_back(state_label(def, s));
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& table = *spec.find_table(spec.nodes[i].id);
    auto& node = net.nodes_[i];
    for (const auto& p : table.parent_order) {
      std::size_t pi = net.index_.at(p);
      node.parents.push_back(pi);
      net.nodes_[pi].children.push_back(i);
    }

    std::vector<std::size_t> scope = node.parents;
    scope.push_back(i);
    std::vector<std::size_t> cards;
    for (auto v : scope) cards.push_back(net.nodes_[v].states.size());
    node.factor_strides.assign(scope.size(), 1);
    for (std::size_t k = scope.size() - 1; k-- > 0;) node.factor_strides[k] = node.factor_strides[k + 1] * cards[k + 1];

    std::size_t total = node.factor_strides.front() * cards.front();
    std::vector<double> values(total, 0.0);
    for (const auto& row : table.rows) {
      std::size_t offset = 0;
      for (std::size_t k = 0; k < row.given.size(); ++k) {
        const auto& plabels = net.nodes_[node.parents[k]].labels;
        auto s = std::find(plabels.begin(), plabels.end(), row.given[k]) - plabels.begin();
        offset += static_cast<std::size_t>(s) * node.factor_strides[k];
      }
      std::copy(row.probs.begin(), row.probs.end(), values.begin() + static_cast<std::ptrdiff_t>(offset));
    }
    node.factor = Factor(std::move(scope), std::move(cards), std::move(values));
  }
  for (auto& node : net.nodes_) std::sort(node.children.begin(), node.children.end());

  // Kahn's algorithm, smallest ready index first for a stable order.
  std::vector<std::size_t> indegree(n);
  for (std::size_t i = 0; i < n; ++i) indegree[i] = net.nodes_[i].parents.size();
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.insert(i);
  while (!ready.empty()) {
    std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    net.topo_.push_back(i);
    for (auto c : net.nodes_[i].children)
      if (--indegree[c] == 0) ready.insert(c);
  }

  net.ancestor_.assign(n, std::vector<bool>(n, false));
  for (auto i : net.topo_) {
    for (auto p : net.nodes_[i].parents) {
      net.ancestor_[i][p] = true;
      for (std::size_t a = 0; a < n; ++a)
        if (net.ancestor_[p][a]) net.ancestor_[i][a] = true;
    }
  }
  return net;
}

namespace {

/// Runs variable elimination over every node not in `keep` and not observed.
Factor eliminate(const CompiledNetwork& net, const Evidence& evidence,
                 const std::optional<std::size_t>& keep) {
  std::vector<Factor> factors;
  factors.reserve(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    Factor f = net.factor(i);
    for (const auto& [var, state] : evidence) f = f.reduce(var, state);
    factors.push_back(std::move(f));
  }

  std::set<std::size_t> pending;
  for (std::size_t i = 0; i < net.size(); ++i)
    if (!evidence.count(i) && i != keep) pending.insert(i);

  while (!pending.empty()) {
    std::size_t best = 0;
    std::size_t best_degree = SIZE_MAX;
    for (auto var : pending) {
      std::set<std::size_t> neighbours;
      for (const auto& f : factors)
        if (f.mentions(var)) neighbours.insert(f.scope().begin(), f.scope().end());
      std::size_t degree = neighbours.empty() ? 0 : neighbours.size() - 1;
      if (degree < best_degree) {
        best_degree = degree;
        best = var;
      }
    }
    pending.erase(best);

    std::vector<Factor> touching;
    std::vector<Factor> rest;
    for (auto& f : factors) (f.mentions(best) ? touching : rest).push_back(std::move(f));
    rest.push_back(multiply_all(touching).sum_out(best));
    factors = std::move(rest);
  }
  return multiply_all(factors);
}

}  // namespace

Distribution posterior(const CompiledNetwork& net, std::size_t query, const Evidence& evidence) {
  net.check_evidence(evidence);
  if (query >= net.size()) throw DomainError("query node index out of range");
  if (evidence.count(query)) throw DomainError("query node '" + net.id(query) + "' is part of the evidence");

  Factor result = eliminate(net, evidence, query);
  Distribution dist = result.values();
  double z = result.sum();
  if (!(z > 0)) throw ZeroProbabilityEvidence();
  for (auto& p : dist) p /= z;
  return dist;
}

double evidence_probability(const CompiledNetwork& net, const Evidence& evidence) {
  net.check_evidence(evidence);
  return eliminate(net, evidence, std::nullopt).sum();
}

Distribution JointTable::marginal(std::size_t node) const {
  auto pos = std::find(scope.begin(), scope.end(), node);
  if (pos == scope.end()) throw DomainError("node is not in the joint table's scope");
  const std::size_t at = static_cast<std::size_t>(pos - scope.begin());
  std::size_t inner = 1;
  for (std::size_t k = at + 1; k < cards.size(); ++k) inner *= cards[k];
  Distribution out(cards[at], 0.0);
  for (std::size_t k = 0; k < probs.size(); ++k) out[(k / inner) % cards[at]] += probs[k];
  return out;
}

namespace {

struct JointLayout {
  JointTable table;
  std::size_t total = 1;
};

JointLayout prepare_joint(const CompiledNetwork& net, const Evidence& evidence, std::size_t size_guard) {
  net.check_evidence(evidence);
  JointLayout out;
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (evidence.count(i)) continue;
    out.table.scope.push_back(i);
    out.table.cards.push_back(net.cardinality(i));
    if (out.total > size_guard / net.cardinality(i)) {
      throw SizeGuardExceeded("joint table would exceed " + std::to_string(size_guard) + " entries");
    }
    out.total *= net.cardinality(i);
  }
  return out;
}

/// P(assignment) for joint row `k`; `assignment` is scratch, pre-filled with evidence.
double joint_row(const CompiledNetwork& net, const JointTable& t, std::size_t k,
                 std::vector<std::size_t>& assignment) {
  for (std::size_t r = t.scope.size(); r-- > 0;) {
    assignment[t.scope[r]] = k % t.cards[r];
    k /= t.cards[r];
  }
  double p = 1.0;
  for (std::size_t i = 0; i < net.size() && p != 0.0; ++i) p *= net.conditional(i, assignment[i], assignment);
  return p;
}

void finish_joint(JointTable& t) {
  double z = 0;
  for (double p : t.probs) z += p;
  if (!(z > 0)) throw ZeroProbabilityEvidence();
  for (auto& p : t.probs) p /= z;
}

std::vector<std::size_t> seeded_assignment(const CompiledNetwork& net, const Evidence& evidence) {
  std::vector<std::size_t> a(net.size(), 0);
  for (const auto& [var, state] : evidence) a[var] = state;
  return a;
}

}  // namespace

JointTable joint_enumerate(const CompiledNetwork& net, const Evidence& evidence, std::size_t size_guard) {
  auto [table, total] = prepare_joint(net, evidence, size_guard);
  table.probs.assign(total, 0.0);
  const auto seed = seeded_assignment(net, evidence);
  const auto rows = static_cast<std::ptrdiff_t>(total);

#pragma omp parallel
  {
    auto assignment = seed;
#pragma omp for schedule(static)
    for (std::ptrdiff_t k = 0; k < rows; ++k) {
      table.probs[static_cast<std::size_t>(k)] = joint_row(net, table, static_cast<std::size_t>(k), assignment);
    }
  }
  finish_joint(table);
  return table;
}

JointTable joint_enumerate_serial(const CompiledNetwork& net, const Evidence& evidence, std::size_t size_guard) {
  auto [table, total] = prepare_joint(net, evidence, size_guard);
  table.probs.assign(total, 0.0);
  auto assignment = seeded_assignment(net, evidence);
  for (std::size_t k = 0; k < total; ++k) table.probs[k] = joint_row(net, table, k, assignment);
  finish_joint(table);
  return table;
}

Evidence make_evidence(const CompiledNetwork& net,
                       std::span<const std::pair<std::string, std::string>> items) {
  Evidence ev;
  for (const auto& [node_id, label] : items) {
    std::size_t i = net.index_of(node_id);
    auto s = net.find_state(i, label);
    if (!s) {
      std::string legal;
      for (const auto& l : net.labels(i)) legal += (legal.empty() ? "" : ", ") + l;
      throw DomainError("'" + label + "' is not a state of " + node_id + "; legal states: " + legal);
    }
    if (!ev.emplace(i, *s).second) throw DomainError("evidence names node '" + node_id + "' twice");
  }
  return ev;
}

}  // namespace tnbn

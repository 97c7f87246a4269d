#include "tnbn/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "tnbn/errors.hpp"

namespace tnbn {

namespace {

constexpr double kRowSumTolerance = 1e-9;

void node_violations(const TemporalNodeDef& node, ValidationReport& out) {
  auto add = [&](std::string msg) { out.push_back({node.id, std::move(msg)}); };

  if (node.id.empty()) add("node id is empty");
  if (node.values.empty()) add("node declares no values");

  std::set<std::string> seen;
  for (const auto& v : node.values) {
    if (!seen.insert(v).second) add("duplicate value '" + v + "'");
  }
  if (node.default_value && seen.count(*node.default_value)) {
    add("default value '" + *node.default_value + "' is also listed in values");
  }

  if (!node.is_temporal()) {
    if (!node.intervals.empty()) add("instantaneous node declares intervals");
    if (node.temporal_range) add("instantaneous node declares a temporal range");
    return;
  }

  if (!node.default_value) add("temporal node has no default value");
  if (node.intervals.empty()) {
    add("temporal node declares no intervals");
    return;
  }
  for (std::size_t i = 0; i < node.intervals.size(); ++i) {
    if (!node.intervals[i].valid()) {
      add("interval T" + std::to_string(i + 1) + " " + format_interval(node.intervals[i]) +
          " is not a valid span (need 0 <= lo < hi)");
    }
  }
  for (std::size_t i = 0; i + 1 < node.intervals.size(); ++i) {
    const auto& a = node.intervals[i];
    const auto& b = node.intervals[i + 1];
    if (b.lo < a.lo) {
      add("intervals are not sorted by lo at T" + std::to_string(i + 2));
    }
    if (allen_relation(a, b) != AllenRelation::meets) {
      add("T" + std::to_string(i + 1) + " " + format_interval(a) + " does not meet T" +
          std::to_string(i + 2) + " " + format_interval(b) +
          (a.hi < b.lo ? " (gap)" : " (overlap)"));
    }
  }

  if (!node.temporal_range) {
    add("temporal node has no temporal range");
    return;
  }
  const auto& tr = *node.temporal_range;
  if (tr.lo != node.intervals.front().lo || tr.hi != node.intervals.back().hi) {
    add("temporal range " + format_interval(tr) + " is not exactly covered by the intervals");
  }
  if (node.intervals.size() == 1) {
    // A single interval must be the whole range; si/fi would both degenerate to equality.
    if (node.intervals.front() != tr) {
      add("single interval " + format_interval(node.intervals.front()) +
          " differs from the temporal range " + format_interval(tr));
    }
    return;
  }
  const std::size_t last = node.intervals.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    AllenRelation want = i == 0      ? AllenRelation::starts_inverse
                         : i == last ? AllenRelation::finishes_inverse
                                     : AllenRelation::during_inverse;
    AllenRelation got = allen_relation(tr, node.intervals[i]);
    if (got != want) {
      add("TR " + format_interval(tr) + " {" + std::string(to_string(got)) + "} T" +
          std::to_string(i + 1) + ", expected {" + std::string(to_string(want)) + "}");
    }
  }
}

std::string describe_row(const ConditionalTable& t, const CptRow& row) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < row.given.size(); ++i) {
    if (i) os << ", ";
    if (i < t.parent_order.size()) os << t.parent_order[i] << '=';
    os << row.given[i];
  }
  os << ']';
  return os.str();
}

}  // namespace

std::string_view to_string(NodeKind k) {
  return k == NodeKind::temporal ? "temporal" : "instantaneous";
}

std::vector<NodeState> state_enumeration(const TemporalNodeDef& node) {
  ValidationReport problems;
  node_violations(node, problems);
  if (!problems.empty()) {
    throw DomainError("node '" + node.id + "' is invalid: " + problems.front().message);
  }
  std::vector<NodeState> states;
  if (node.default_value) states.push_back({*node.default_value, std::nullopt});
  for (const auto& v : node.values) {
    if (node.is_temporal()) {
      for (std::size_t i = 0; i < node.intervals.size(); ++i) states.push_back({v, i});
    } else {
      states.push_back({v, std::nullopt});
    }
  }
  return states;
}

std::string state_label(const TemporalNodeDef& node, const NodeState& state) {
  if (!state.interval) return state.value;
  return state.value + "@" + format_interval(node.intervals.at(*state.interval));
}

std::size_t resolve_interval(const TemporalNodeDef& node, Time elapsed) {
  if (!node.is_temporal()) {
    throw DomainError("node '" + node.id + "' is instantaneous and has no intervals");
  }
  if (!(elapsed >= 0)) {
    throw DomainError("elapsed time must be non-negative, got " + format_time(elapsed));
  }
  const std::size_t last = node.intervals.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    if (node.intervals[i].contains(elapsed, i == last)) return i;
  }
  throw IntervalOverflow("elapsed time " + format_time(elapsed) +
                         " lies outside the temporal range of '" + node.id + "'");
}

const TemporalNodeDef* NetworkSpec::find_node(std::string_view id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const auto& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

const ConditionalTable* NetworkSpec::find_table(std::string_view child) const {
  auto it =
      std::find_if(tables.begin(), tables.end(), [&](const auto& t) { return t.child == child; });
  return it == tables.end() ? nullptr : &*it;
}

std::vector<IntervalRelation> interval_relations(const TemporalNodeDef& node) {
  std::vector<IntervalRelation> out;
  if (!node.is_temporal() || !node.temporal_range) return out;
  const auto& tr = *node.temporal_range;
  auto name = [](std::size_t i) { return "T" + std::to_string(i + 1); };
  for (std::size_t i = 0; i < node.intervals.size(); ++i) {
    out.push_back({"TR", name(i), allen_relation(tr, node.intervals[i])});
  }
  for (std::size_t i = 0; i + 1 < node.intervals.size(); ++i) {
    out.push_back({name(i), name(i + 1), allen_relation(node.intervals[i], node.intervals[i + 1])});
  }
  return out;
}

ValidationReport validate(const NetworkSpec& spec) {
  ValidationReport report;

  std::map<std::string, std::size_t> index;
  std::vector<bool> node_ok;
  for (const auto& node : spec.nodes) {
    std::size_t before = report.size();
    node_violations(node, report);
    node_ok.push_back(report.size() == before);
    if (!index.emplace(node.id, index.size()).second) {
      report.push_back({node.id, "duplicate node id"});
    }
  }

  // Edges and acyclicity.
  const std::size_t n = spec.nodes.size();
  std::vector<std::set<std::string>> in_edges(n);
  std::vector<std::vector<std::size_t>> children(n);
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const auto& e : spec.edges) {
    std::string subject = "edge " + e.parent + "->" + e.child;
    auto p = index.find(e.parent);
    auto c = index.find(e.child);
    if (p == index.end() || c == index.end()) {
      report.push_back({subject, "edge references an undeclared node"});
      continue;
    }
    if (p->second == c->second) {
      report.push_back({subject, "self-loop"});
      continue;
    }
    if (!seen_edges.emplace(e.parent, e.child).second) {
      report.push_back({subject, "duplicate edge"});
      continue;
    }
    in_edges[c->second].insert(e.parent);
    children[p->second].push_back(c->second);
  }
  {
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (auto c : children[i]) ++indegree[c];
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
      if (indegree[i] == 0) ready.push_back(i);
    std::size_t visited = 0;
    while (!ready.empty()) {
      auto i = ready.back();
      ready.pop_back();
      ++visited;
      for (auto c : children[i])
        if (--indegree[c] == 0) ready.push_back(c);
    }
    if (visited != n) {
      std::string members;
      for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] > 0) members += (members.empty() ? "" : ", ") + spec.nodes[i].id;
      }
      report.push_back({"graph", "graph contains a cycle through: " + members});
    }
  }

  // Tables.
  std::map<std::string, std::size_t> table_count;
  for (const auto& t : spec.tables) ++table_count[t.child];
  for (const auto& node : spec.nodes) {
    auto it = table_count.find(node.id);
    if (it == table_count.end()) {
      report.push_back({"cpt " + node.id, "missing conditional table"});
    } else if (it->second > 1) {
      report.push_back({"cpt " + node.id, "more than one conditional table"});
    }
  }
  std::set<std::string> checked;
  for (const auto& t : spec.tables) {
    std::string subject = "cpt " + t.child;
    auto child_it = index.find(t.child);
    if (child_it == index.end()) {
      report.push_back({subject, "table for an undeclared node"});
      continue;
    }
    if (!checked.insert(t.child).second) continue;

    std::set<std::string> order_set(t.parent_order.begin(), t.parent_order.end());
    if (order_set.size() != t.parent_order.size()) {
      report.push_back({subject, "parent order lists a node twice"});
      continue;
    }
    if (order_set != in_edges[child_it->second]) {
      report.push_back({subject, "parent order does not match the node's in-edges"});
      continue;
    }

    bool parents_ok = node_ok[child_it->second];
    std::vector<std::map<std::string, std::size_t>> parent_labels;
    std::size_t combos = 1;
    for (const auto& pid : t.parent_order) {
      std::size_t pi = index.at(pid);
      if (!node_ok[pi]) {
        parents_ok = false;
        break;
      }
      const auto& pnode = spec.nodes[pi];
      std::map<std::string, std::size_t> labels;
      for (const auto& s : state_enumeration(pnode)) labels.emplace(state_label(pnode, s), labels.size());
      combos *= labels.size();
      parent_labels.push_back(std::move(labels));
    }
    if (!parents_ok) continue;  // node-level violations already reported
    const std::size_t child_card = state_enumeration(spec.nodes[child_it->second]).size();

    std::set<std::vector<std::string>> seen_rows;
    std::size_t legal_rows = 0;
    for (const auto& row : t.rows) {
      std::string where = subject + " row " + describe_row(t, row);
      if (row.given.size() != t.parent_order.size()) {
        report.push_back({where, "row names " + std::to_string(row.given.size()) +
                                     " parent states, expected " +
                                     std::to_string(t.parent_order.size())});
        continue;
      }
      bool legal = true;
      for (std::size_t k = 0; k < row.given.size(); ++k) {
        if (!parent_labels[k].count(row.given[k])) {
          report.push_back({where, "'" + row.given[k] + "' is not a state of " + t.parent_order[k]});
          legal = false;
        }
      }
      if (!legal) continue;
      if (!seen_rows.insert(row.given).second) {
        report.push_back({where, "duplicate row"});
        continue;
      }
      ++legal_rows;
      if (row.probs.size() != child_card) {
        report.push_back({where, "row has " + std::to_string(row.probs.size()) +
                                     " probabilities, expected " + std::to_string(child_card)});
        continue;
      }
      double sum = 0;
      bool in_range = true;
      for (double p : row.probs) {
        if (!(p >= 0.0 && p <= 1.0)) in_range = false;
        sum += p;
      }
      if (!in_range) report.push_back({where, "probability outside [0, 1]"});
      if (!(std::abs(sum - 1.0) <= kRowSumTolerance)) {
        std::ostringstream os;
        os.precision(12);
        os << "probabilities sum to " << sum << ", expected 1";
        report.push_back({where, os.str()});
      }
    }
    if (legal_rows != combos) {
      report.push_back({subject, "table covers " + std::to_string(legal_rows) + " of " +
                                     std::to_string(combos) + " parent-state combinations"});
    }
  }
  return report;
}

std::string format_report(const ValidationReport& report) {
  if (report.empty()) return "valid\n";
  std::ostringstream os;
  for (const auto& v : report) os << v.subject << ": " << v.message << '\n';
  return os.str();
}

}  // namespace tnbn

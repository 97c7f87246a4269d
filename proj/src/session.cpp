#include "tnbn/session.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tnbn {

const NodePrediction* PredictionReport::find(std::size_t node) const {
  for (const auto& n : nodes)
    if (n.node == node) return &n;
  return nullptr;
}

Session::Session(std::shared_ptr<const CompiledNetwork> net)
    : net_(std::move(net)), inconsistent_(net_ ? net_->size() : 0, false) {
  if (!net_) throw DomainError("session requires a compiled network");
}

bool Session::observed(std::size_t node) const {
  return resolved_.count(node) || pending_.count(node) || inconsistent_[node];
}

std::size_t Session::value_state(std::size_t node, const std::string& value) const {
  const auto& states = net_->states(node);
  for (std::size_t s = 0; s < states.size(); ++s)
    if (states[s].value == value) return s;
  throw DomainError("'" + value + "' is not a value of " + net_->id(node));
}

std::vector<std::size_t> Session::candidates(std::size_t node) const {
  auto it = pending_.find(node);
  if (it == pending_.end()) return {};
  std::vector<std::size_t> out;
  const auto& states = net_->states(node);
  for (std::size_t s = 0; s < states.size(); ++s)
    if (states[s].value == it->second && states[s].interval) out.push_back(s);
  return out;
}

std::vector<std::size_t> Session::collapse_pending(std::size_t ancestor, Time tc) {
  std::vector<std::size_t> settled;
  for (auto it = pending_.begin(); it != pending_.end();) {
    const std::size_t p = it->first;
    if (p == ancestor || !net_->is_ancestor(ancestor, p)) {
      ++it;
      continue;
    }
    const Time alpha = std::abs(pending_tc_.at(p) - tc);
    try {
      std::size_t interval = resolve_interval(net_->node(p), alpha);
      const auto& states = net_->states(p);
      for (std::size_t s = 0; s < states.size(); ++s)
        if (states[s].value == it->second && states[s].interval == interval) resolved_[p] = s;
    } catch (const IntervalOverflow&) {
      inconsistent_[p] = true;
    }
    settled.push_back(p);
    pending_tc_.erase(p);
    it = pending_.erase(it);
  }
  return settled;
}

const ObservationRecord& Session::observe(const ObservedEvent& event) {
  if (closed_) throw DomainError("session is closed: no-change assertions end the event stream");
  const std::size_t node = net_->index_of(event.node);
  if (observed(node)) throw DuplicateObservation("node '" + event.node + "' was already observed");
  const auto& def = net_->node(node);
  if (def.default_value && *def.default_value == event.value) {
    throw DomainError("'" + event.value + "' is the default state of " + event.node +
                      "; no-change is asserted at session close, not observed");
  }
  if (std::find(def.values.begin(), def.values.end(), event.value) == def.values.end()) {
    std::string legal;
    for (const auto& v : def.values) legal += (legal.empty() ? "" : ", ") + v;
    throw DomainError("'" + event.value + "' is not a value of " + event.node + "; values: " + legal);
  }

  ObservationRecord rec;
  rec.event = event;
  rec.node = node;

  if (!def.is_temporal()) {
    // Instantaneous: the value alone is the state.
    resolved_[node] = value_state(node, event.value);
    rec.state = resolved_[node];
    if (!anchor_) anchor_ = Anchor{node, event.tc};
    rec.collapsed = collapse_pending(node, event.tc);
  } else if (!anchor_) {
    anchor_ = Anchor{node, event.tc};
    pending_[node] = event.value;
    pending_tc_[node] = event.tc;
    rec.outcome = ObserveOutcome::pending;
  } else if (std::any_of(pending_.begin(), pending_.end(),
                         [&](const auto& p) { return net_->is_ancestor(node, p.first); })) {
    // A cause arriving after its effect: it settles the effect's interval,
    // but its own position relative to the anchor is unknown.
    pending_[node] = event.value;
    pending_tc_[node] = event.tc;
    rec.outcome = ObserveOutcome::pending;
    rec.collapsed = collapse_pending(node, event.tc);
  } else if (net_->node(anchor_->node).is_temporal() && !net_->is_ancestor(anchor_->node, node)) {
    // The anchor is itself an interval-ambiguous effect and not a cause of
    // this node, so its time is no origin for this node's intervals.
    pending_[node] = event.value;
    pending_tc_[node] = event.tc;
    rec.outcome = ObserveOutcome::pending;
  } else {
    const Time alpha = std::abs(anchor_->tc - event.tc);
    rec.alpha = alpha;
    try {
      std::size_t interval = resolve_interval(def, alpha);
      const auto& states = net_->states(node);
      for (std::size_t s = 0; s < states.size(); ++s)
        if (states[s].value == event.value && states[s].interval == interval) rec.state = s;
      resolved_[node] = *rec.state;
    } catch (const IntervalOverflow&) {
      inconsistent_[node] = true;
      rec.outcome = ObserveOutcome::inconsistent;
    }
  }
  history_.push_back(std::move(rec));
  return history_.back();
}

void Session::assert_no_change(const std::string& node_id) {
  const std::size_t node = net_->index_of(node_id);
  if (observed(node)) throw DuplicateObservation("node '" + node_id + "' was already observed");
  const auto& def = net_->node(node);
  if (!def.default_value) throw DomainError("node '" + node_id + "' has no default state");
  resolved_[node] = 0;
  closed_ = true;

  ObservationRecord rec;
  rec.event = {node_id, *def.default_value, anchor_ ? anchor_->tc : 0};
  rec.node = node;
  rec.state = 0;
  rec.no_change = true;
  history_.push_back(std::move(rec));
}

std::vector<std::size_t> Session::hidden_nodes() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < net_->size(); ++i)
    if (!observed(i)) out.push_back(i);
  return out;
}

std::vector<Scenario> Session::scenarios() const {
  std::vector<std::size_t> nodes;
  std::vector<std::vector<std::size_t>> choices;
  for (const auto& [node, value] : pending_) {
    nodes.push_back(node);
    choices.push_back(candidates(node));
  }

  std::vector<Scenario> out;
  std::vector<std::size_t> pick(nodes.size(), 0);
  double total = 0;
  while (true) {
    Scenario s;
    s.evidence = resolved_;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      s.assumed[nodes[k]] = choices[k][pick[k]];
      s.evidence[nodes[k]] = choices[k][pick[k]];
    }
    s.weight = evidence_probability(*net_, s.evidence);
    total += s.weight;
    out.push_back(std::move(s));

    // Odometer, first pending node slowest.
    std::size_t k = nodes.size();
    while (k > 0 && ++pick[k - 1] == choices[k - 1].size()) pick[--k] = 0;
    if (k == 0) break;
  }
  if (!(total > 0)) throw ZeroProbabilityEvidence();

  const auto hidden = hidden_nodes();
  for (auto& s : out) {
    s.weight /= total;
    if (s.weight == 0) continue;
    for (auto h : hidden) s.posteriors[h] = posterior(*net_, h, s.evidence);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Scenario& a, const Scenario& b) { return a.weight > b.weight; });
  return out;
}

PredictionReport Session::predict() const {
  if (!anchor_ && resolved_.empty()) throw UnanchoredSession();

  const auto scen = scenarios();
  PredictionReport report;
  report.anchor = anchor_;
  for (auto h : hidden_nodes()) {
    NodePrediction np;
    np.node = h;
    np.distribution.assign(net_->cardinality(h), 0.0);
    for (const auto& s : scen) {
      if (s.weight == 0) continue;
      const auto& post = s.posteriors.at(h);
      for (std::size_t k = 0; k < post.size(); ++k) np.distribution[k] += s.weight * post[k];
    }
    const auto& def = net_->node(h);
    for (const auto& st : net_->states(h)) {
      if (anchor_ && st.interval) {
        const auto& iv = def.intervals[*st.interval];
        np.windows.push_back(AbsoluteWindow{anchor_->tc + iv.lo, anchor_->tc + iv.hi});
      } else {
        np.windows.push_back(std::nullopt);
      }
    }
    report.nodes.push_back(std::move(np));
  }
  return report;
}

PredictionReport Session::diagnose() const {
  PredictionReport report = predict();
  std::set<std::size_t> wanted;
  auto add_ancestors = [&](std::size_t node) {
    for (auto a : net_->ancestors(node)) wanted.insert(a);
  };
  for (const auto& [node, state] : resolved_) add_ancestors(node);
  for (const auto& [node, value] : pending_) add_ancestors(node);
  std::erase_if(report.nodes, [&](const NodePrediction& n) { return !wanted.count(n.node); });
  return report;
}

}  // namespace tnbn

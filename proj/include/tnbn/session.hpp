#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tnbn/inference.hpp"

namespace tnbn {

/// A detected state change: the node took `value` (an interval-free value
/// label) at absolute time `tc`.
struct ObservedEvent {
  std::string node;
  std::string value;
  Time tc = 0;
};

struct Anchor {
  std::size_t node = 0;
  Time tc = 0;
};

enum class ObserveOutcome {
  resolved,      // state (and interval, if temporal) fixed as evidence
  pending,       // interval undeterminable; expanded into scenarios
  inconsistent,  // elapsed time falls outside the node's temporal range
};

/// What the session did with one observation.
struct ObservationRecord {
  ObservedEvent event;
  std::size_t node = 0;
  ObserveOutcome outcome = ObserveOutcome::resolved;
  std::optional<Time> alpha;                 // elapsed time used for resolution
  std::optional<std::size_t> state;          // resolved state index
  /// Pending nodes whose interval this event settled.
  std::vector<std::size_t> collapsed;
  /// Entered by assert_no_change rather than observe.
  bool no_change = false;
};

struct Scenario {
  Evidence assumed;   // interval choices for the pending nodes only
  Evidence evidence;  // resolved evidence plus `assumed`
  double weight = 0;
  /// Per-node posteriors keyed by node index; empty when weight is zero.
  std::map<std::size_t, Distribution> posteriors;
};

struct AbsoluteWindow {
  Time lo = 0;
  Time hi = 0;
};

struct NodePrediction {
  std::size_t node = 0;
  Distribution distribution;
  /// Parallel to `distribution`; set for interval-carrying states of an
  /// anchored session.
  std::vector<std::optional<AbsoluteWindow>> windows;
};

struct PredictionReport {
  std::optional<Anchor> anchor;
  std::vector<NodePrediction> nodes;  // ascending node index

  const NodePrediction* find(std::size_t node) const;
};

/// Anchoring context over one network. The first observed event fixes the
/// network in absolute time. A temporal event is placed into an interval by
/// its elapsed time alpha from the anchor when the anchor is a time origin
/// for it: the anchor is instantaneous, or the anchor's node is one of its
/// ancestors. Otherwise the event stays pending and is expanded into
/// weighted scenarios, one per interval of the observed value. A cause
/// observed after a pending effect settles the effect's interval with alpha
/// measured from the cause.
///
/// Single writer: observe()/assert_no_change() mutate, every other member
/// is const and safe to call concurrently on an unchanging session.
class Session {
 public:
  explicit Session(std::shared_ptr<const CompiledNetwork> net);

  const CompiledNetwork& network() const { return *net_; }

  const std::optional<Anchor>& anchor() const { return anchor_; }
  const Evidence& resolved() const { return resolved_; }
  /// Pending nodes with their observed value; candidate states are every
  /// interval of that value.
  const std::map<std::size_t, std::string>& pending() const { return pending_; }
  const std::vector<ObservationRecord>& history() const { return history_; }
  bool closed() const { return closed_; }
  bool observed(std::size_t node) const;

  /// Applies one event. Throws DuplicateObservation, DomainError for
  /// unknown nodes/values, default values or a closed session.
  /// An out-of-range elapsed time is not thrown: the event is recorded with
  /// ObserveOutcome::inconsistent and contributes no evidence.
  const ObservationRecord& observe(const ObservedEvent& event);

  /// Asserts the node's temporal range elapsed with no change; resolves it
  /// to its default state and closes the session to further events.
  void assert_no_change(const std::string& node_id);

  /// Candidate states of a pending node (its observed value at every interval).
  std::vector<std::size_t> candidates(std::size_t node) const;

  /// One scenario per combination of pending candidates, sorted by
  /// descending weight (ties keep enumeration order). Without pending nodes
  /// this is the single scenario "resolved evidence" with weight 1.
  /// Throws ZeroProbabilityEvidence when every scenario has weight zero.
  std::vector<Scenario> scenarios() const;

  /// Scenario-weighted distribution of every unobserved node. Throws
  /// UnanchoredSession when nothing has been observed.
  PredictionReport predict() const;

  /// predict() restricted to ancestors of observed nodes.
  PredictionReport diagnose() const;

 private:
  std::size_t value_state(std::size_t node, const std::string& value) const;
  std::vector<std::size_t> hidden_nodes() const;
  std::vector<std::size_t> collapse_pending(std::size_t ancestor, Time tc);

  std::shared_ptr<const CompiledNetwork> net_;
  std::optional<Anchor> anchor_;
  Evidence resolved_;
  std::map<std::size_t, std::string> pending_;
  std::map<std::size_t, Time> pending_tc_;
  std::vector<bool> inconsistent_;
  std::vector<ObservationRecord> history_;
  bool closed_ = false;
};

}  // namespace tnbn

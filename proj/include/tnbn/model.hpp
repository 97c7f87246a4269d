#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tnbn/errors.hpp"
#include "tnbn/interval.hpp"

namespace tnbn {

enum class NodeKind { instantaneous, temporal };

std::string_view to_string(NodeKind k);

/// A network variable. Temporal nodes take states (value, interval) for every
/// value in `values` and every interval in `intervals`, plus one default
/// "no change" state spanning the temporal range. Instantaneous nodes are
/// plain discrete variables; their default value is optional.
struct TemporalNodeDef {
  std::string id;
  NodeKind kind = NodeKind::instantaneous;
  std::vector<std::string> values;
  std::optional<std::string> default_value;
  std::optional<TimeInterval> temporal_range;
  std::vector<TimeInterval> intervals;

  bool is_temporal() const { return kind == NodeKind::temporal; }

  friend bool operator==(const TemporalNodeDef&, const TemporalNodeDef&) = default;
};

/// One enumerated state. `interval` is empty for the default state and for
/// every state of an instantaneous node.
struct NodeState {
  std::string value;
  std::optional<std::size_t> interval;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Default state first (when the node has one), then values x intervals in
/// declaration order, value-major.
std::vector<NodeState> state_enumeration(const TemporalNodeDef& node);

/// Canonical text of a state: "normal", "severe", "unstable@[10,30]".
std::string state_label(const TemporalNodeDef& node, const NodeState& state);

/// Index of the interval containing `elapsed`. Throws IntervalOverflow when
/// `elapsed` lies outside the temporal range, DomainError for instantaneous
/// nodes or negative elapsed time.
std::size_t resolve_interval(const TemporalNodeDef& node, Time elapsed);

struct CptRow {
  /// Parent state labels, in the table's parent order.
  std::vector<std::string> given;
  /// Child probabilities in state_enumeration order.
  std::vector<double> probs;

  friend bool operator==(const CptRow&, const CptRow&) = default;
};

struct ConditionalTable {
  std::string child;
  std::vector<std::string> parent_order;
  std::vector<CptRow> rows;

  friend bool operator==(const ConditionalTable&, const ConditionalTable&) = default;
};

struct Edge {
  std::string parent;
  std::string child;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct NetworkSpec {
  std::string name;
  std::string time_unit = "minutes";
  std::vector<TemporalNodeDef> nodes;
  std::vector<Edge> edges;
  std::vector<ConditionalTable> tables;

  const TemporalNodeDef* find_node(std::string_view id) const;
  const ConditionalTable* find_table(std::string_view child) const;

  friend bool operator==(const NetworkSpec&, const NetworkSpec&) = default;
};

struct Violation {
  /// Node id, "edge P->C" or "cpt X" the check failed on.
  std::string subject;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

struct IntervalRelation {
  std::string from;  // "TR" or "T1".."Tn"
  std::string to;
  AllenRelation relation;
};

/// The relations a temporal node's interval list is checked against:
/// TR against every Ti, then each consecutive pair Ti, Ti+1.
std::vector<IntervalRelation> interval_relations(const TemporalNodeDef& node);

ValidationReport validate(const NetworkSpec& spec);

std::string format_report(const ValidationReport& report);

}  // namespace tnbn

namespace tnbn {

/// Thrown when a spec that failed validation is used for inference.
class InvalidModel : public DomainError {
 public:
  explicit InvalidModel(ValidationReport report)
      : DomainError("invalid model:\n" + format_report(report)), report_(std::move(report)) {}
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

}  // namespace tnbn

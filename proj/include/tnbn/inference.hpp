#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tnbn/factor.hpp"
#include "tnbn/model.hpp"

namespace tnbn {

/// Observed states keyed by dense node index; values are state indices into
/// the node's state_enumeration.
using Evidence = std::map<std::size_t, std::size_t>;

/// Probabilities over one node's states, in state_enumeration order.
using Distribution = std::vector<double>;

/// Immutable, index-based view of a validated network.
class CompiledNetwork {
 public:
  const NetworkSpec& spec() const { return spec_; }
  std::size_t size() const { return nodes_.size(); }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws DomainError for unknown ids.
  std::size_t index_of(std::string_view id) const;

  /// Dense indices follow declaration order in the spec.
  const TemporalNodeDef& node(std::size_t i) const { return spec_.nodes[i]; }
  const std::string& id(std::size_t i) const { return spec_.nodes[i].id; }
  std::size_t cardinality(std::size_t i) const { return nodes_[i].states.size(); }
  const std::vector<NodeState>& states(std::size_t i) const { return nodes_[i].states; }
  const std::string& label(std::size_t i, std::size_t state) const { return nodes_[i].labels[state]; }
  const std::vector<std::string>& labels(std::size_t i) const { return nodes_[i].labels; }

  /// Accepts the canonical label or any "value@[lo,hi]" spelling whose
  /// numbers match one of the node's intervals.
  std::optional<std::size_t> find_state(std::size_t i, std::string_view label) const;

  const std::vector<std::size_t>& parents(std::size_t i) const { return nodes_[i].parents; }
  const std::vector<std::size_t>& children(std::size_t i) const { return nodes_[i].children; }
  /// CPT factor; scope = parents (table order) then the node itself.
  const Factor& factor(std::size_t i) const { return nodes_[i].factor; }
  const std::vector<std::size_t>& topological_order() const { return topo_; }

  /// P(node = state | parents as given by `assignment`, indexed by node).
  double conditional(std::size_t i, std::size_t state, std::span<const std::size_t> assignment) const;

  bool is_ancestor(std::size_t a, std::size_t b) const;
  std::vector<std::size_t> ancestors(std::size_t i) const;

  /// Throws DomainError when a node or state index is out of range.
  void check_evidence(const Evidence& evidence) const;

 private:
  friend CompiledNetwork compile(const NetworkSpec& spec);

  struct Node {
    std::vector<NodeState> states;
    std::vector<std::string> labels;
    std::vector<std::size_t> parents;
    std::vector<std::size_t> children;
    Factor factor;
    std::vector<std::size_t> factor_strides;
  };

  NetworkSpec spec_;
  std::vector<Node> nodes_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::size_t> topo_;
  std::vector<std::vector<bool>> ancestor_;  // ancestor_[b][a]: a is an ancestor of b
};

/// Throws InvalidModel when validate(spec) is non-empty.
CompiledNetwork compile(const NetworkSpec& spec);

/// P(query | evidence) by variable elimination (min-degree order, ties by
/// node index). Throws ZeroProbabilityEvidence, DomainError when the query
/// is itself in the evidence.
Distribution posterior(const CompiledNetwork& net, std::size_t query, const Evidence& evidence);

/// Unnormalized P(evidence) by variable elimination; 1 for empty evidence.
double evidence_probability(const CompiledNetwork& net, const Evidence& evidence);

/// Normalized joint over the non-evidence nodes.
struct JointTable {
  std::vector<std::size_t> scope;  // ascending node indices
  std::vector<std::size_t> cards;
  std::vector<double> probs;       // row-major, last scope node fastest

  Distribution marginal(std::size_t node) const;
};

inline constexpr std::size_t kJointSizeGuard = 10'000'000;

/// Exhaustive sum-product over every assignment of the non-evidence nodes.
/// Throws SizeGuardExceeded past `size_guard` entries and
/// ZeroProbabilityEvidence. Rows are filled in parallel (OpenMP).
JointTable joint_enumerate(const CompiledNetwork& net, const Evidence& evidence,
                           std::size_t size_guard = kJointSizeGuard);

/// Single-threaded reference for joint_enumerate; bit-identical output.
JointTable joint_enumerate_serial(const CompiledNetwork& net, const Evidence& evidence,
                                  std::size_t size_guard = kJointSizeGuard);

/// Builds evidence from (node id, state label) pairs. Throws DomainError
/// naming the node's legal states when a label does not match.
Evidence make_evidence(const CompiledNetwork& net,
                       std::span<const std::pair<std::string, std::string>> items);

}  // namespace tnbn

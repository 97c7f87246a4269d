#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "tnbn/fixtures.hpp"
#include "tnbn/inference.hpp"
#include "tnbn/model_io.hpp"

namespace tnbn::testing {

inline std::string data_path(const std::string& name) { return std::string(TNBN_DATA_DIR) + "/" + name; }

inline std::shared_ptr<const CompiledNetwork> accident() {
  static const auto net = std::make_shared<const CompiledNetwork>(compile(accident_network()));
  return net;
}

inline double max_abs_diff(const Distribution& a, const Distribution& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double total(const Distribution& d) {
  double s = 0;
  for (double p : d) s += p;
  return s;
}

/// P(node | evidence, every node in `set_node` takes one of `allowed`),
/// from the exhaustive joint; independent of variable elimination.
inline Distribution conditioned_marginal(const CompiledNetwork& net, const Evidence& evidence,
                                         std::size_t set_node, const std::vector<std::size_t>& allowed,
                                         std::size_t node) {
  const auto joint = joint_enumerate_serial(net, evidence);
  const auto& scope = joint.scope;
  auto pos = [&](std::size_t v) {
    return static_cast<std::size_t>(std::find(scope.begin(), scope.end(), v) - scope.begin());
  };
  const std::size_t at_set = pos(set_node);
  const std::size_t at_node = pos(node);
  std::vector<std::size_t> assignment(scope.size());
  Distribution out(net.cardinality(node), 0.0);
  for (std::size_t k = 0; k < joint.probs.size(); ++k) {
    std::size_t rest = k;
    for (std::size_t r = scope.size(); r-- > 0;) {
      assignment[r] = rest % joint.cards[r];
      rest /= joint.cards[r];
    }
    if (std::find(allowed.begin(), allowed.end(), assignment[at_set]) == allowed.end()) continue;
    out[assignment[at_node]] += joint.probs[k];
  }
  double z = total(out);
  for (auto& p : out) p /= z;
  return out;
}

}  // namespace tnbn::testing

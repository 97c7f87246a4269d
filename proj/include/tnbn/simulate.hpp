#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tnbn/inference.hpp"

namespace tnbn {

/// One ancestrally sampled outcome. Indexed by dense node index. The first
/// root event is the time origin (0); instantaneous events happen at 0, a
/// temporal state (v, Ti) at a uniform time inside Ti, default states at no
/// time at all.
struct Trajectory {
  std::uint64_t seed = 0;
  std::vector<std::size_t> states;
  std::vector<std::optional<Time>> times;
};

/// Seed for item `index` of a run started from `seed` (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Trajectory sample_trajectory(const CompiledNetwork& net, std::uint64_t seed);

/// Trajectory i is sample_trajectory(net, derive_seed(seed, i)).
std::vector<Trajectory> sample_trajectories(const CompiledNetwork& net, std::size_t n,
                                            std::uint64_t seed);
std::vector<Trajectory> sample_trajectories_serial(const CompiledNetwork& net, std::size_t n,
                                                   std::uint64_t seed);

/// Block per trajectory: "# trajectory <i> seed <s>" then one
/// "time<TAB>node<TAB>state" line per node in topological order ("-" when
/// the state carries no time).
std::string format_trajectories(const CompiledNetwork& net, const std::vector<Trajectory>& ts);

/// 100 when the argmax of `predicted` (first maximum wins) is `actual`, else 0.
double accuracy_score(const Distribution& predicted, std::size_t actual);

/// 100 * (1 - BS / 2), BS the multi-class Brier score of `predicted` against
/// the one-hot `actual`.
double rbs_score(const Distribution& predicted, std::size_t actual);

}  // namespace tnbn

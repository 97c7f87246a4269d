#pragma once

#include <cstdint>
#include <random>

#include "tnbn/model.hpp"

namespace tnbn {

/// Leak mass used by the accident network's near-deterministic PD and VS
/// tables.
inline constexpr double kAccidentLeak = 0.05;

/// The head-injury / internal-bleeding accident network (C, HI, IB, PD, VS).
/// C, HI and IB carry the published accident statistics; PD and VS encode
/// the timing rules with leak kAccidentLeak. data/accident.json is this
/// network serialized.
NetworkSpec accident_network();

struct RandomNetworkOptions {
  std::size_t min_nodes = 1;
  std::size_t max_nodes = 8;
  std::size_t max_states = 5;
  std::size_t max_parents = 3;
  /// Probability that a non-root node is temporal rather than instantaneous.
  double temporal_fraction = 0.6;
  /// Probability that any single CPT entry is forced to zero before
  /// normalization (a row never becomes all-zero).
  double zero_fraction = 0.0;
};

/// A valid random TNBN: roots are instantaneous, DAG edges only point from
/// lower to higher declaration index, every node has at most max_states
/// states. Deterministic in `rng`.
NetworkSpec random_network(std::mt19937_64& rng, const RandomNetworkOptions& opts = {});

}  // namespace tnbn

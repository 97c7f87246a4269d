#include "tnbn/simulate.hpp"

#include <sstream>

namespace tnbn {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Trajectory sample_trajectory(const CompiledNetwork& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Trajectory t;
  t.seed = seed;
  t.states.assign(net.size(), 0);
  t.times.assign(net.size(), std::nullopt);
  for (auto i : net.topological_order()) {
    const std::size_t card = net.cardinality(i);
    const double u = unit(rng);
    double acc = 0;
    std::size_t pick = card;
    std::size_t last_positive = 0;
    for (std::size_t s = 0; s < card; ++s) {
      double p = net.conditional(i, s, t.states);
      if (p > 0) last_positive = s;
      acc += p;
      if (u < acc) {
        pick = s;
        break;
      }
    }
    // Rounding can leave u just above the cumulative sum.
    if (pick == card) pick = last_positive;
    t.states[i] = pick;

    const auto& state = net.states(i)[pick];
    const auto& def = net.node(i);
    if (state.interval) {
      const auto& iv = def.intervals[*state.interval];
      t.times[i] = std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
    } else if (!def.is_temporal() && !(def.default_value && pick == 0)) {
      t.times[i] = 0.0;
    }
  }
  return t;
}

std::vector<Trajectory> sample_trajectories(const CompiledNetwork& net, std::size_t n,
                                            std::uint64_t seed) {
  std::vector<Trajectory> out(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = sample_trajectory(net, derive_seed(seed, static_cast<std::uint64_t>(i)));
  }
  return out;
}

std::vector<Trajectory> sample_trajectories_serial(const CompiledNetwork& net, std::size_t n,
                                                   std::uint64_t seed) {
  std::vector<Trajectory> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_trajectory(net, derive_seed(seed, i)));
  return out;
}

std::string format_trajectories(const CompiledNetwork& net, const std::vector<Trajectory>& ts) {
  std::ostringstream os;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const auto& t = ts[k];
    os << "# trajectory " << k << " seed " << t.seed << '\n';
    for (auto i : net.topological_order()) {
      os << (t.times[i] ? format_time(*t.times[i]) : std::string("-")) << '\t' << net.id(i) << '\t'
         << net.label(i, t.states[i]) << '\n';
    }
    os << '\n';
  }
  return os.str();
}

double accuracy_score(const Distribution& predicted, std::size_t actual) {
  if (predicted.empty()) throw DomainError("accuracy_score: empty distribution");
  std::size_t best = 0;
  for (std::size_t s = 1; s < predicted.size(); ++s)
    if (predicted[s] > predicted[best]) best = s;
  return best == actual ? 100.0 : 0.0;
}

double rbs_score(const Distribution& predicted, std::size_t actual) {
  if (actual >= predicted.size()) throw DomainError("rbs_score: actual state out of range");
  double bs = 0;
  for (std::size_t s = 0; s < predicted.size(); ++s) {
    double d = predicted[s] - (s == actual ? 1.0 : 0.0);
    bs += d * d;
  }
  return 100.0 * (1.0 - bs / 2.0);
}

}  // namespace tnbn

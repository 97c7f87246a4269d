#include "tnbn/fixtures.hpp"

namespace tnbn {

NetworkSpec accident_network() {
  constexpr double eps = kAccidentLeak;
  NetworkSpec net;
  net.name = "accident";
  net.time_unit = "minutes";

  net.nodes = {
      {"C", NodeKind::instantaneous, {"severe", "moderate", "mild"}, std::nullopt, std::nullopt, {}},
      {"HI", NodeKind::instantaneous, {"true"}, "false", std::nullopt, {}},
      {"IB", NodeKind::instantaneous, {"gross", "slight"}, "none", std::nullopt, {}},
      {"PD", NodeKind::temporal, {"dilated"}, "normal", TimeInterval{0, 5}, {{0, 3}, {3, 5}}},
      {"VS", NodeKind::temporal, {"unstable"}, "normal", TimeInterval{0, 60}, {{0, 10}, {10, 30}, {30, 60}}},
  };
  net.edges = {{"C", "HI"}, {"C", "IB"}, {"HI", "PD"}, {"HI", "VS"}, {"IB", "VS"}};

  // States: C (severe, moderate, mild); HI (false, true); IB (none, gross, slight);
  // PD (normal, dilated@[0,3], dilated@[3,5]);
  // VS (normal, unstable@[0,10], unstable@[10,30], unstable@[30,60]).
  net.tables = {
      {"C", {}, {{{}, {0.368, 0.392, 0.24}}}},
      {"HI",
       {"C"},
       {{{"severe"}, {0.1, 0.9}}, {{"moderate"}, {0.6, 0.4}}, {{"mild"}, {0.9, 0.1}}}},
      {"IB",
       {"C"},
       {{{"severe"}, {0.1, 0.5, 0.4}},
        {{"moderate"}, {0.2, 0.65, 0.15}},
        {{"mild"}, {0.35, 0.05, 0.6}}}},
      // Dilation follows a head injury within minutes, mostly in the first interval.
      {"PD",
       {"HI"},
       {{{"false"}, {1 - eps, eps / 2, eps / 2}}, {{"true"}, {eps, 0.65, 0.30}}}},
      // Head injury destabilizes within [0,10] and dominates bleeding; gross
      // bleeding takes [10,30], slight [30,60].
      {"VS",
       {"HI", "IB"},
       {{{"false", "none"}, {1 - eps, 0.02, 0.02, 0.01}},
        {{"false", "gross"}, {eps, 0, 1 - eps, 0}},
        {{"false", "slight"}, {eps, 0, 0, 1 - eps}},
        {{"true", "none"}, {eps, 1 - eps, 0, 0}},
        {{"true", "gross"}, {eps, 1 - eps, 0, 0}},
        {{"true", "slight"}, {eps, 1 - eps, 0, 0}}}},
  };
  return net;
}

}  // namespace tnbn

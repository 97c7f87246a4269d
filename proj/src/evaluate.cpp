#include "tnbn/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "tnbn/session.hpp"

namespace tnbn {

std::string_view to_string(EvalCondition c) {
  switch (c) {
    case EvalCondition::root_observed: return "root-observed";
    case EvalCondition::leaf_observed: return "leaf-observed";
    case EvalCondition::intermediate_observed: return "intermediate-observed";
  }
  return "root-observed";
}

EvalCondition parse_condition(std::string_view text) {
  if (text == "root" || text == "root-observed" || text == "prediction") return EvalCondition::root_observed;
  if (text == "leaf" || text == "leaf-observed" || text == "diagnosis") return EvalCondition::leaf_observed;
  if (text == "intermediate" || text == "intermediate-observed") return EvalCondition::intermediate_observed;
  throw DomainError("unknown condition '" + std::string(text) + "'; use root, leaf or intermediate");
}

std::vector<std::size_t> condition_tier(const CompiledNetwork& net, EvalCondition c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < net.size(); ++i) {
    const bool has_parents = !net.parents(i).empty();
    const bool has_children = !net.children(i).empty();
    bool in = false;
    switch (c) {
      case EvalCondition::root_observed: in = !has_parents; break;
      case EvalCondition::leaf_observed: in = has_parents && !has_children; break;
      case EvalCondition::intermediate_observed: in = has_parents && has_children; break;
    }
    if (in) out.push_back(i);
  }
  return out;
}

TrialScore score_trial(const std::shared_ptr<const CompiledNetwork>& net, EvalCondition c,
                       const Trajectory& t) {
  const auto tier = condition_tier(*net, c);
  Session session(net);

  std::vector<std::size_t> timed;
  std::vector<std::size_t> unchanged;
  for (auto i : tier) (t.times[i] ? timed : unchanged).push_back(i);
  std::stable_sort(timed.begin(), timed.end(),
                   [&](std::size_t a, std::size_t b) { return *t.times[a] < *t.times[b]; });
  for (auto i : timed) {
    session.observe({net->id(i), net->states(i)[t.states[i]].value, *t.times[i]});
  }
  for (auto i : unchanged) session.assert_no_change(net->id(i));

  const auto report = session.predict();
  TrialScore score;
  std::size_t scored = 0;
  for (std::size_t i = 0; i < net->size(); ++i) {
    if (std::find(tier.begin(), tier.end(), i) != tier.end()) continue;
    const auto* pred = report.find(i);
    score.accuracy += accuracy_score(pred->distribution, t.states[i]);
    score.rbs += rbs_score(pred->distribution, t.states[i]);
    ++scored;
  }
  if (scored) {
    score.accuracy /= static_cast<double>(scored);
    score.rbs /= static_cast<double>(scored);
  }
  return score;
}

namespace {

EvalReport prepare(const CompiledNetwork& net, EvalCondition c, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("evaluate needs at least one trial");
  EvalReport r;
  r.condition = c;
  r.trials = n;
  r.seed = seed;
  r.observed = condition_tier(net, c);
  if (r.observed.empty()) {
    throw DomainError("condition " + std::string(to_string(c)) + " selects no nodes in this network");
  }
  for (std::size_t i = 0; i < net.size(); ++i)
    if (std::find(r.observed.begin(), r.observed.end(), i) == r.observed.end()) r.hidden.push_back(i);
  return r;
}

MetricSummary summarize(const std::vector<TrialScore>& scores, double TrialScore::*field) {
  MetricSummary m;
  for (const auto& s : scores) m.mean += s.*field;
  m.mean /= static_cast<double>(scores.size());
  double var = 0;
  for (const auto& s : scores) var += (s.*field - m.mean) * (s.*field - m.mean);
  m.stddev = std::sqrt(var / static_cast<double>(scores.size()));
  return m;
}

void finish(EvalReport& r, const std::vector<TrialScore>& scores) {
  r.accuracy = summarize(scores, &TrialScore::accuracy);
  r.rbs = summarize(scores, &TrialScore::rbs);
}

}  // namespace

EvalReport evaluate(const std::shared_ptr<const CompiledNetwork>& net, EvalCondition c,
                    std::size_t n, std::uint64_t seed) {
  EvalReport r = prepare(*net, c, n, seed);
  std::vector<TrialScore> scores(n);
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      const auto t = sample_trajectory(*net, derive_seed(seed, static_cast<std::uint64_t>(i)));
      scores[static_cast<std::size_t>(i)] = score_trial(net, c, t);
    } catch (...) {
#pragma omp critical(tnbn_eval_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  finish(r, scores);
  return r;
}

EvalReport evaluate_serial(const std::shared_ptr<const CompiledNetwork>& net, EvalCondition c,
                           std::size_t n, std::uint64_t seed) {
  EvalReport r = prepare(*net, c, n, seed);
  std::vector<TrialScore> scores;
  scores.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores.push_back(score_trial(net, c, sample_trajectory(*net, derive_seed(seed, i))));
  }
  finish(r, scores);
  return r;
}

namespace {

std::string join_ids(const CompiledNetwork& net, const std::vector<std::size_t>& nodes) {
  std::string out;
  for (auto i : nodes) out += (out.empty() ? "" : ", ") + net.id(i);
  return out;
}

}  // namespace

std::string format_eval_table(const CompiledNetwork& net, const EvalReport& r) {
  std::ostringstream os;
  os << "condition: " << to_string(r.condition) << "  trials: " << r.trials << "  seed: " << r.seed << '\n';
  os << "observed: " << join_ids(net, r.observed) << '\n';
  os << "hidden:   " << join_ids(net, r.hidden) << '\n';
  os << std::left << std::setw(16) << "Parameter" << std::right << std::setw(9) << "mu" << std::setw(9)
     << "sigma" << '\n';
  os << std::fixed << std::setprecision(2);
  os << std::left << std::setw(16) << "% of RBS" << std::right << std::setw(9) << r.rbs.mean
     << std::setw(9) << r.rbs.stddev << '\n';
  os << std::left << std::setw(16) << "% of Accuracy" << std::right << std::setw(9) << r.accuracy.mean
     << std::setw(9) << r.accuracy.stddev << '\n';
  return os.str();
}

std::string format_eval_json(const CompiledNetwork& net, const EvalReport& r) {
  nlohmann::ordered_json j;
  j["condition"] = std::string(to_string(r.condition));
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["observed"] = nlohmann::ordered_json::array();
  for (auto i : r.observed) j["observed"].push_back(net.id(i));
  j["hidden"] = nlohmann::ordered_json::array();
  for (auto i : r.hidden) j["hidden"].push_back(net.id(i));
  j["rows"] = nlohmann::ordered_json::array(
      {{{"metric", "RBS"}, {"mean", r.rbs.mean}, {"stddev", r.rbs.stddev}},
       {{"metric", "Accuracy"}, {"mean", r.accuracy.mean}, {"stddev", r.accuracy.stddev}}});
  return j.dump(2) + "\n";
}

}  // namespace tnbn

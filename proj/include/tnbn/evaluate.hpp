#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tnbn/simulate.hpp"

namespace tnbn {

/// Which structural tier of nodes is revealed to the session.
enum class EvalCondition {
  root_observed,          // prediction
  leaf_observed,          // diagnosis
  intermediate_observed,  // prediction and diagnosis
};

std::string_view to_string(EvalCondition c);

/// Accepts "root", "leaf", "intermediate" or the full "<tier>-observed".
/// Throws DomainError otherwise.
EvalCondition parse_condition(std::string_view text);

/// Roots have no parents; leaves have parents and no children;
/// intermediates have both.
std::vector<std::size_t> condition_tier(const CompiledNetwork& net, EvalCondition c);

struct MetricSummary {
  double mean = 0;
  double stddev = 0;  // population standard deviation over trials
};

struct TrialScore {
  double accuracy = 0;
  double rbs = 0;
};

struct EvalReport {
  EvalCondition condition = EvalCondition::root_observed;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> observed;
  std::vector<std::size_t> hidden;
  MetricSummary accuracy;
  MetricSummary rbs;
};

/// Replays the tier's events from `t` into a fresh session, predicts every
/// hidden node and averages the per-node scores.
TrialScore score_trial(const std::shared_ptr<const CompiledNetwork>& net, EvalCondition c,
                       const Trajectory& t);

/// n trials, trial i sampled from derive_seed(seed, i). Trials run in
/// parallel; the result does not depend on the thread count.
/// Throws DomainError when n == 0 or the condition's tier is empty.
EvalReport evaluate(const std::shared_ptr<const CompiledNetwork>& net, EvalCondition c,
                    std::size_t n, std::uint64_t seed);

/// Single-threaded reference for evaluate().
EvalReport evaluate_serial(const std::shared_ptr<const CompiledNetwork>& net, EvalCondition c,
                           std::size_t n, std::uint64_t seed);

std::string format_eval_table(const CompiledNetwork& net, const EvalReport& r);
std::string format_eval_json(const CompiledNetwork& net, const EvalReport& r);

}  // namespace tnbn

#include "tnbn/cli.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tnbn/evaluate.hpp"
#include "tnbn/event_log.hpp"
#include "tnbn/inference.hpp"
#include "tnbn/model_io.hpp"
#include "tnbn/session.hpp"
#include "tnbn/simulate.hpp"

namespace tnbn {

namespace {

constexpr const char* kEvidenceHelp =
    "Evidence item NODE=VALUE (instantaneous nodes, or the default state) or "
    "NODE=VALUE@[lo,hi] for an interval state, e.g. VS=unstable@[10,30]";

std::string fixed4(double p) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << p;
  return os.str();
}

std::string window_text(const AbsoluteWindow& w) {
  return "[" + format_time(w.lo) + "," + format_time(w.hi) + "]";
}

std::shared_ptr<const CompiledNetwork> load_network(const std::string& path) {
  return std::make_shared<const CompiledNetwork>(compile(load_model(path)));
}

std::vector<std::pair<std::string, std::string>> split_evidence(const std::vector<std::string>& items) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw ParseError("evidence '" + item + "' is not of the form NODE=VALUE or NODE=VALUE@[lo,hi]");
    }
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

int cmd_validate(const std::string& model, std::ostream& out) {
  const auto spec = load_model(model);
  const auto report = validate(spec);
  out << format_report(report);
  return report.empty() ? kExitOk : kExitDomainError;
}

int cmd_infer(const std::string& model, const std::string& query,
              const std::vector<std::string>& evidence_items, bool json, std::ostream& out) {
  const auto net = load_network(model);
  const auto items = split_evidence(evidence_items);
  const auto evidence = make_evidence(*net, items);
  const std::size_t q = net->index_of(query);
  const auto dist = posterior(*net, q, evidence);

  if (json) {
    nlohmann::ordered_json j;
    j["query"] = query;
    j["evidence"] = nlohmann::ordered_json::object();
    for (const auto& [node, state] : evidence) j["evidence"][net->id(node)] = net->label(node, state);
    j["posterior"] = nlohmann::ordered_json::object();
    for (std::size_t s = 0; s < dist.size(); ++s) j["posterior"][net->label(q, s)] = dist[s];
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  out << "P(" << query << " | ";
  if (evidence.empty()) out << "no evidence";
  bool first = true;
  for (const auto& [node, state] : evidence) {
    out << (first ? "" : ", ") << net->id(node) << '=' << net->label(node, state);
    first = false;
  }
  out << ")\n";
  std::size_t width = 0;
  for (std::size_t s = 0; s < dist.size(); ++s) width = std::max(width, net->label(q, s).size());
  for (std::size_t s = 0; s < dist.size(); ++s) {
    out << "  " << std::left << std::setw(static_cast<int>(width)) << net->label(q, s) << "  "
        << fixed4(dist[s]) << '\n';
  }
  return kExitOk;
}

void print_prediction(const CompiledNetwork& net, const PredictionReport& report, std::ostream& out) {
  for (const auto& np : report.nodes) {
    out << "  " << net.id(np.node) << '\n';
    std::size_t width = 0;
    for (const auto& l : net.labels(np.node)) width = std::max(width, l.size());
    for (std::size_t s = 0; s < np.distribution.size(); ++s) {
      out << "    " << std::left << std::setw(static_cast<int>(width)) << net.label(np.node, s) << "  "
          << fixed4(np.distribution[s]);
      if (np.windows[s]) out << "  at " << window_text(*np.windows[s]);
      out << '\n';
    }
  }
}

int cmd_session(const std::string& model, const std::string& events_path, std::ostream& out) {
  const auto net = load_network(model);
  const auto events = load_event_log(events_path);
  Session session(net);

  out << "events:\n";
  for (const auto& e : events) {
    apply_logged_event(session, e);
    const auto& rec = session.history().back();
    out << "  " << format_time(e.event.tc) << '\t' << e.event.node << '\t' << e.event.value << "\t";
    if (rec.no_change) {
      out << "no change over the temporal range";
    } else if (rec.outcome == ObserveOutcome::pending) {
      out << "pending: interval undetermined";
    } else if (rec.outcome == ObserveOutcome::inconsistent) {
      out << "inconsistent: alpha=" << format_time(*rec.alpha) << " lies outside the temporal range";
    } else {
      if (rec.alpha) out << "alpha=" << format_time(*rec.alpha) << ' ';
      out << "resolved -> " << net->label(rec.node, *rec.state);
    }
    for (auto p : rec.collapsed) {
      out << "; settles " << net->id(p);
      if (auto it = session.resolved().find(p); it != session.resolved().end()) {
        out << " -> " << net->label(p, it->second);
      } else {
        out << " (inconsistent)";
      }
    }
    out << '\n';
  }

  const auto& anchor = session.anchor();
  out << "anchor: ";
  if (anchor) {
    out << net->id(anchor->node) << " @ " << format_time(anchor->tc) << '\n';
  } else {
    out << "none\n";
  }

  out << "resolved evidence:\n";
  for (const auto& [node, state] : session.resolved()) {
    out << "  " << net->id(node) << " = " << net->label(node, state);
    const auto& st = net->states(node)[state];
    if (anchor && st.interval) {
      const auto& iv = net->node(node).intervals[*st.interval];
      out << "  at " << window_text({anchor->tc + iv.lo, anchor->tc + iv.hi});
    }
    out << '\n';
  }

  const auto report = session.predict();
  if (!session.pending().empty()) {
    out << "scenarios:\n";
    std::size_t k = 0;
    for (const auto& s : session.scenarios()) {
      out << "  #" << ++k << "  weight " << fixed4(s.weight) << "  ";
      bool first = true;
      for (const auto& [node, state] : s.assumed) {
        out << (first ? "" : ", ") << net->id(node) << '=' << net->label(node, state);
        const auto& iv = net->node(node).intervals[*net->states(node)[state].interval];
        out << " at " << window_text({anchor->tc + iv.lo, anchor->tc + iv.hi});
        first = false;
      }
      out << '\n';
    }
  }
  out << "prediction:\n";
  print_prediction(*net, report, out);
  return kExitOk;
}

int cmd_simulate(const std::string& model, std::size_t n, std::uint64_t seed, const std::string& out_path,
                 std::ostream& out) {
  const auto net = load_network(model);
  const auto text = format_trajectories(*net, sample_trajectories(*net, n, seed));
  if (out_path.empty() || out_path == "-") {
    out << text;
    return kExitOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + out_path + "'");
  file << text;
  if (!file) throw IoError("error writing '" + out_path + "'");
  out << "wrote " << n << " trajectories to " << out_path << '\n';
  return kExitOk;
}

int cmd_evaluate(const std::string& model, const std::string& condition, std::size_t n, std::uint64_t seed,
                 bool json, std::ostream& out) {
  const auto net = load_network(model);
  const auto report = evaluate(net, parse_condition(condition), n, seed);
  out << (json ? format_eval_json(*net, report) : format_eval_table(*net, report));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal nodes Bayesian network tool: validate models, query posteriors, "
               "replay timed event logs, simulate and evaluate."};
  app.require_subcommand(1);

  std::string model;
  std::string query;
  std::vector<std::string> evidence;
  std::string events;
  std::string out_path;
  std::string condition;
  std::size_t n = 1;
  std::uint64_t seed = 0;
  bool json = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check a model file; exit 0 iff it is valid");
  validate_cmd->add_option("model", model, "Model file (JSON)")->required();

  auto* infer_cmd = app.add_subcommand("infer", "Posterior of one node given evidence");
  infer_cmd->add_option("model", model, "Model file (JSON)")->required();
  infer_cmd->add_option("--query,-q", query, "Node to query")->required();
  infer_cmd->add_option("--evidence,-e", evidence, kEvidenceHelp);
  infer_cmd->add_flag("--json", json, "Machine-readable output with full precision");

  auto* session_cmd = app.add_subcommand("session", "Replay an event log and report anchoring, scenarios, predictions");
  session_cmd->add_option("model", model, "Model file (JSON)")->required();
  session_cmd->add_option("--events", events, "Event log: tc<TAB>node<TAB>value per line")->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "Sample timed trajectories");
  simulate_cmd->add_option("model", model, "Model file (JSON)")->required();
  simulate_cmd->add_option("--n", n, "Number of trajectories")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", seed, "Random seed");
  simulate_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score predictions against sampled ground truth");
  evaluate_cmd->add_option("model", model, "Model file (JSON)")->required();
  evaluate_cmd->add_option("--condition", condition, "Observed tier: root, leaf or intermediate")->required();
  evaluate_cmd->add_option("--n", n, "Number of trials")->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--seed", seed, "Random seed");
  evaluate_cmd->add_flag("--json", json, "Emit JSON rows instead of the table");

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  }

  try {
    if (*validate_cmd) return cmd_validate(model, out);
    if (*infer_cmd) return cmd_infer(model, query, evidence, json, out);
    if (*session_cmd) return cmd_session(model, events, out);
    if (*simulate_cmd) return cmd_simulate(model, n, seed, out_path, out);
    if (*evaluate_cmd) return cmd_evaluate(model, condition, n, seed, json, out);
  } catch (const InvalidModel& e) {
    err << "error: " << e.what();
    return kExitDomainError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  }
  return kExitIoError;
}

}  // namespace tnbn

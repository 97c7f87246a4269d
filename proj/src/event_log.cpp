#include "tnbn/event_log.hpp"

#include <charconv>
#include <sstream>

#include "tnbn/model_io.hpp"

namespace tnbn {

std::vector<LoggedEvent> parse_event_log(std::string_view text) {
  std::vector<LoggedEvent> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string tc_text, node, value, extra;
    fields >> tc_text >> node >> value;
    if (value.empty() || (fields >> extra)) {
      throw ParseError("event log line " + std::to_string(line_no) +
                       ": expected \"tc<TAB>node<TAB>value\", got \"" + line + "\"");
    }
    double tc = 0;
    auto res = std::from_chars(tc_text.data(), tc_text.data() + tc_text.size(), tc);
    if (res.ec != std::errc() || res.ptr != tc_text.data() + tc_text.size()) {
      throw ParseError("event log line " + std::to_string(line_no) + ": \"" + tc_text +
                       "\" is not a decimal time");
    }
    out.push_back({{node, value, tc}, line_no});
  }
  return out;
}

std::vector<LoggedEvent> load_event_log(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return parse_event_log(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

namespace {

template <typename E>
[[noreturn]] void rethrow_with_line(const E& e, std::size_t line) {
  throw E("event log line " + std::to_string(line) + ": " + e.what());
}

}  // namespace

void apply_logged_event(Session& session, const LoggedEvent& e) {
  try {
    const auto& net = session.network();
    const auto& def = net.node(net.index_of(e.event.node));
    if (def.default_value && *def.default_value == e.event.value) {
      session.assert_no_change(e.event.node);
    } else {
      session.observe(e.event);
    }
  } catch (const DuplicateObservation& err) {
    rethrow_with_line(err, e.line);
  } catch (const DomainError& err) {
    rethrow_with_line(err, e.line);
  }
}

}  // namespace tnbn

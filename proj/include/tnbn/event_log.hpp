#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "tnbn/session.hpp"

namespace tnbn {

struct LoggedEvent {
  ObservedEvent event;
  std::size_t line = 0;  // 1-based
};

/// Parses "tc<TAB>node_id<TAB>value" lines (any run of spaces or tabs is
/// accepted as the separator). Blank lines and '#' comments are skipped.
/// Throws ParseError naming the line.
std::vector<LoggedEvent> parse_event_log(std::string_view text);

std::vector<LoggedEvent> load_event_log(const std::filesystem::path& path);

/// Feeds one logged event to the session. A value equal to the node's
/// default is taken as a no-change assertion; anything else is observe()d.
/// Errors are rethrown prefixed with the log line.
void apply_logged_event(Session& session, const LoggedEvent& e);

}  // namespace tnbn

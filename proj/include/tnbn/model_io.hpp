#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tnbn/model.hpp"

namespace tnbn {

/// Parses a model document. Syntax errors carry line/column, schema errors
/// carry the JSON pointer of the offending member. Throws ParseError.
NetworkSpec parse_model(std::string_view text);

/// Reads and parses a model file. Throws IoError or ParseError.
NetworkSpec load_model(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const NetworkSpec& spec);

/// Pretty-printed model document; parse_model(dump_model(s)) == s.
std::string dump_model(const NetworkSpec& spec);

void save_model(const NetworkSpec& spec, const std::filesystem::path& path);

/// Reads a whole text file. Throws IoError.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace tnbn

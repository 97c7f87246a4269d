#include "tnbn/model_io.hpp"

#include <fstream>
#include <sstream>

#include "tnbn/errors.hpp"

namespace tnbn {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError("model schema error at " + (where.empty() ? std::string("/") : where) +
                   ": " + what);
}

const ordered_json& member(const ordered_json& obj, const std::string& where,
                           const char* key) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing member \"") + key + "\"");
  return *it;
}

std::string as_string(const ordered_json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

double as_number(const ordered_json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

const ordered_json& as_array(const ordered_json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

std::vector<std::string> string_list(const ordered_json& j, const std::string& where) {
  std::vector<std::string> out;
  std::size_t i = 0;
  for (const auto& e : as_array(j, where)) out.push_back(as_string(e, where + "/" + std::to_string(i++)));
  return out;
}

TimeInterval interval_from(const ordered_json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) schema_error(where, "expected a [lo, hi] pair");
  return {as_number(j[0], where + "/0"), as_number(j[1], where + "/1")};
}

NodeKind kind_from(const std::string& s, const std::string& where) {
  if (s == "temporal") return NodeKind::temporal;
  if (s == "instantaneous") return NodeKind::instantaneous;
  schema_error(where, "kind must be \"temporal\" or \"instantaneous\", got \"" + s + "\"");
}

TemporalNodeDef node_from(const ordered_json& j, const std::string& where) {
  TemporalNodeDef node;
  node.id = as_string(member(j, where, "id"), where + "/id");
  node.kind = kind_from(as_string(member(j, where, "kind"), where + "/kind"), where + "/kind");
  node.values = string_list(member(j, where, "values"), where + "/values");
  if (auto it = j.find("default_value"); it != j.end() && !it->is_null()) {
    node.default_value = as_string(*it, where + "/default_value");
  }
  if (auto it = j.find("intervals"); it != j.end()) {
    std::size_t i = 0;
    for (const auto& iv : as_array(*it, where + "/intervals")) {
      node.intervals.push_back(interval_from(iv, where + "/intervals/" + std::to_string(i++)));
    }
  }
  if (auto it = j.find("temporal_range"); it != j.end() && !it->is_null()) {
    node.temporal_range = interval_from(*it, where + "/temporal_range");
  } else if (node.is_temporal() && !node.intervals.empty()) {
    node.temporal_range = TimeInterval{node.intervals.front().lo, node.intervals.back().hi};
  }
  return node;
}

ConditionalTable table_from(const std::string& child, const ordered_json& j,
                            const std::string& where) {
  ConditionalTable t;
  t.child = child;
  t.parent_order = string_list(member(j, where, "parents"), where + "/parents");
  std::size_t i = 0;
  for (const auto& r : as_array(member(j, where, "rows"), where + "/rows")) {
    std::string rw = where + "/rows/" + std::to_string(i++);
    CptRow row;
    row.given = string_list(member(r, rw, "given"), rw + "/given");
    std::size_t k = 0;
    for (const auto& p : as_array(member(r, rw, "p"), rw + "/p")) {
      row.probs.push_back(as_number(p, rw + "/p/" + std::to_string(k++)));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

ordered_json interval_json(const TimeInterval& iv) { return ordered_json::array({iv.lo, iv.hi}); }

}  // namespace

NetworkSpec parse_model(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model is not valid JSON: ") + e.what());
  }

  NetworkSpec spec;
  spec.name = as_string(member(doc, "", "name"), "/name");
  if (auto it = doc.find("time_unit"); it != doc.end()) spec.time_unit = as_string(*it, "/time_unit");

  std::size_t i = 0;
  for (const auto& n : as_array(member(doc, "", "nodes"), "/nodes")) {
    spec.nodes.push_back(node_from(n, "/nodes/" + std::to_string(i++)));
  }
  i = 0;
  for (const auto& e : as_array(member(doc, "", "edges"), "/edges")) {
    std::string where = "/edges/" + std::to_string(i++);
    if (!e.is_array() || e.size() != 2) schema_error(where, "expected a [parent, child] pair");
    spec.edges.push_back({as_string(e[0], where + "/0"), as_string(e[1], where + "/1")});
  }
  const auto& cpts = member(doc, "", "cpts");
  if (!cpts.is_object()) schema_error("/cpts", "expected an object keyed by node id");
  for (const auto& [child, t] : cpts.items()) {
    spec.tables.push_back(table_from(child, t, "/cpts/" + child));
  }
  return spec;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

NetworkSpec load_model(const std::filesystem::path& path) {
  std::string text = read_text_file(path);
  try {
    return parse_model(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

ordered_json to_json(const NetworkSpec& spec) {
  ordered_json doc;
  doc["name"] = spec.name;
  doc["time_unit"] = spec.time_unit;
  doc["nodes"] = ordered_json::array();
  for (const auto& n : spec.nodes) {
    ordered_json j;
    j["id"] = n.id;
    j["kind"] = std::string(to_string(n.kind));
    j["values"] = n.values;
    j["default_value"] = n.default_value ? ordered_json(*n.default_value) : ordered_json(nullptr);
    if (n.is_temporal() || !n.intervals.empty()) {
      j["intervals"] = ordered_json::array();
      for (const auto& iv : n.intervals) j["intervals"].push_back(interval_json(iv));
    }
    if (n.temporal_range) j["temporal_range"] = interval_json(*n.temporal_range);
    doc["nodes"].push_back(std::move(j));
  }
  doc["edges"] = ordered_json::array();
  for (const auto& e : spec.edges) doc["edges"].push_back(ordered_json::array({e.parent, e.child}));
  doc["cpts"] = ordered_json::object();
  for (const auto& t : spec.tables) {
    ordered_json tj;
    tj["parents"] = t.parent_order;
    tj["rows"] = ordered_json::array();
    for (const auto& r : t.rows) {
      ordered_json rj;
      rj["given"] = r.given;
      rj["p"] = r.probs;
      tj["rows"].push_back(std::move(rj));
    }
    doc["cpts"][t.child] = std::move(tj);
  }
  return doc;
}

std::string dump_model(const NetworkSpec& spec) { return to_json(spec).dump(2) + "\n"; }

void save_model(const NetworkSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << dump_model(spec);
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace tnbn

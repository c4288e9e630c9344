#include "sgs/strategy_io.hpp"

#include "json.hpp"
#include "json_fields.hpp"
#include "sgs/game_io.hpp"

namespace sgs {

using nlohmann::ordered_json;
using detail::require;

namespace {

std::vector<Vertex> vertex_list(const ordered_json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_array()) throw ValidationError(where + "." + key + ": expected array of integers");
  std::vector<Vertex> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<long long>() < 0) {
      throw ValidationError(where + "." + key + ": expected non-negative integers");
    }
    out.push_back(static_cast<Vertex>(x.get<long long>()));
  }
  return out;
}

void read_table(const ordered_json& doc, const char* key, std::array<std::vector<double>, 3>& rows) {
  const auto& t = require(doc, key);
  if (!t.is_array() || t.size() != 3) throw ValidationError(std::string(key) + ": expected 3 rows");
  for (std::size_t r = 0; r < 3; ++r) {
    if (!t[r].is_array()) throw ValidationError(std::string(key) + ": rows must be arrays");
    rows[r].clear();
    for (const auto& x : t[r]) {
      if (!x.is_number()) throw ValidationError(std::string(key) + ": entries must be numbers");
      rows[r].push_back(x.get<double>());
    }
  }
  if (rows[1].size() != rows[0].size() || rows[2].size() != rows[0].size()) {
    throw ValidationError(std::string(key) + ": rows differ in length");
  }
}

}  // namespace

std::string save_strategy(const Chromosome& ch) {
  ordered_json doc;
  auto list = ordered_json::array();
  for (const auto& ws : ch.strategies) {
    ordered_json e;
    e["patrollers"] = ws.strategy.patrollers;
    e["sensors"] = ws.strategy.sensors;
    e["reallocation"] = ws.strategy.reallocation;
    e["prob"] = ws.prob;
    list.push_back(std::move(e));
  }
  doc["strategies"] = std::move(list);
  doc["psi"] = ch.signaling.detected;
  doc["phi"] = ch.signaling.missed;
  return doc.dump(2) + "\n";
}

Chromosome load_strategy(std::string_view json_text, const GameInstance* game) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw ValidationError(std::string("strategy: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("strategy: top-level value must be an object");
  Chromosome ch;
  const auto& list = require(doc, "strategies");
  if (!list.is_array() || list.empty()) throw ValidationError("strategies: expected non-empty array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "strategies[" + std::to_string(i) + "]";
    const auto& e = list[i];
    if (!e.is_object()) throw ValidationError(where + ": expected object");
    WeightedStrategy ws;
    ws.strategy.patrollers = vertex_list(e, "patrollers", where);
    ws.strategy.sensors = vertex_list(e, "sensors", where);
    ws.strategy.reallocation = vertex_list(e, "reallocation", where);
    ws.prob = detail::require_real(e, "prob", where);
    if (ws.strategy.reallocation.size() != ws.strategy.patrollers.size()) {
      throw ValidationError(where + ".reallocation: length must match patrollers");
    }
    ch.strategies.push_back(std::move(ws));
  }
  read_table(doc, "psi", ch.signaling.detected);
  read_table(doc, "phi", ch.signaling.missed);
  if (ch.signaling.detected[0].size() != ch.signaling.missed[0].size()) {
    throw ValidationError("phi: width differs from psi");
  }
  if (game != nullptr) {
    if (auto why = chromosome_violation(ch, *game)) throw ValidationError("strategy: " + *why);
  }
  return ch;
}

Chromosome load_strategy_file(const std::filesystem::path& path, const GameInstance* game) {
  return load_strategy(read_text_file(path), game);
}

}  // namespace sgs

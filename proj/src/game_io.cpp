#include "sgs/game_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "json_fields.hpp"

namespace sgs {

using nlohmann::ordered_json;
using detail::require;
using detail::require_int;
using detail::require_real;

double canonical_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

GameInstance load_game(std::string_view json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const ordered_json::parse_error& e) {
    throw ValidationError(std::string("game: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("game: top-level value must be an object");

  GameInstance game;
  const auto& name = require(doc, "name");
  if (!name.is_string()) throw ValidationError("name: expected string");
  game.name = name.get<std::string>();

  const auto n = require_int(doc, "num_vertices");
  if (n <= 0) throw ValidationError("num_vertices: must be positive");
  game.graph = Graph(static_cast<std::size_t>(n));

  const auto& edges = require(doc, "edges");
  if (!edges.is_array()) throw ValidationError("edges: expected array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw ValidationError(where + ": expected [int, int]");
    }
    const auto u = e[0].get<long long>();
    const auto v = e[1].get<long long>();
    if (u < 0 || v < 0 || u >= n || v >= n) throw ValidationError(where + ": vertex out of range");
    try {
      game.graph.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } catch (const std::invalid_argument& err) {
      throw ValidationError(where + ": " + err.what());
    }
  }

  game.num_patrollers = static_cast<int>(require_int(doc, "num_patrollers"));
  game.num_sensors = static_cast<int>(require_int(doc, "num_sensors"));
  game.gamma = require_real(doc, "gamma");

  const auto& pi = require(doc, "pi");
  if (!pi.is_array() || pi.size() != 3) throw ValidationError("pi: expected 3x3 array");
  for (std::size_t r = 0; r < 3; ++r) {
    if (!pi[r].is_array() || pi[r].size() != 3) throw ValidationError("pi: expected 3x3 array");
    for (std::size_t c = 0; c < 3; ++c) {
      if (!pi[r][c].is_number()) {
        throw ValidationError("pi[" + std::to_string(r) + "][" + std::to_string(c) +
                              "]: expected number");
      }
      game.pi.p[r][c] = pi[r][c].get<double>();
    }
  }

  const auto& utils = require(doc, "utilities");
  if (!utils.is_array()) throw ValidationError("utilities: expected array");
  for (std::size_t i = 0; i < utils.size(); ++i) {
    const auto& u = utils[i];
    const std::string where = "utilities[" + std::to_string(i) + "]";
    if (!u.is_object()) throw ValidationError(where + ": expected object");
    TargetUtility t;
    t.def_caught = require_real(u, "def_caught", where);
    t.def_attacked = require_real(u, "def_attacked", where);
    t.adv_success = require_real(u, "adv_success", where);
    t.adv_caught = require_real(u, "adv_caught", where);
    game.utilities.push_back(t);
  }

  game.validate();
  return game;
}

std::string save_game(const GameInstance& game) {
  ordered_json doc;
  doc["name"] = game.name;
  doc["num_vertices"] = game.vertex_count();
  auto edges = ordered_json::array();
  for (const auto& [u, v] : game.graph.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  doc["num_patrollers"] = game.num_patrollers;
  doc["num_sensors"] = game.num_sensors;
  doc["gamma"] = canonical_real(game.gamma);
  auto pi = ordered_json::array();
  for (const auto& row : game.pi.p) {
    pi.push_back({canonical_real(row[0]), canonical_real(row[1]), canonical_real(row[2])});
  }
  doc["pi"] = std::move(pi);
  auto utils = ordered_json::array();
  for (const auto& u : game.utilities) {
    ordered_json entry;
    entry["def_caught"] = canonical_real(u.def_caught);
    entry["def_attacked"] = canonical_real(u.def_attacked);
    entry["adv_success"] = canonical_real(u.adv_success);
    entry["adv_caught"] = canonical_real(u.adv_caught);
    utils.push_back(std::move(entry));
  }
  doc["utilities"] = std::move(utils);
  return doc.dump(2) + "\n";
}

GameInstance load_game_file(const std::filesystem::path& path) {
  return load_game(read_text_file(path));
}

void save_game_file(const GameInstance& game, const std::filesystem::path& path) {
  write_text_file(path, save_game(game));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace sgs

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sgs/game.hpp"

namespace sgs {

/// Parses and validates a game document. Throws ValidationError naming the
/// offending field on schema or invariant violations.
GameInstance load_game(std::string_view json_text);

/// Canonical form: fixed key order, sorted edges, reals rounded to 12
/// significant digits.
std::string save_game(const GameInstance& game);

GameInstance load_game_file(const std::filesystem::path& path);
void save_game_file(const GameInstance& game, const std::filesystem::path& path);

/// Rounds to 12 significant digits, the precision kept by the canonical form.
double canonical_real(double x);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace sgs

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sgs/strategy.hpp"

namespace sgs {

/// Strategy document: pure strategies with probabilities plus the "psi"
/// (detected) and "phi" (missed) weak-signal tables, rows ordered
/// [isolated, visited, adjacent]. Reals are written with full round-trip precision.
std::string save_strategy(const Chromosome& ch);

/// Throws ValidationError on schema violations; when `game` is given the
/// chromosome must also be feasible for it.
Chromosome load_strategy(std::string_view json_text, const GameInstance* game = nullptr);
Chromosome load_strategy_file(const std::filesystem::path& path, const GameInstance* game = nullptr);

}  // namespace sgs

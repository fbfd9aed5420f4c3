#pragma once

#include <cstddef>

#include "kinship/kinship.hpp"
#include "kinship/plmap.hpp"

namespace kinship {

enum class HomeoSucc { LeftSucc, RightSucc, Neither, SquaresEqual };

std::string_view to_string(HomeoSucc s) noexcept;

/// True iff (g²(x) − x)·(f²(x) − g²(x)) ≥ 0 for every x in [0,1],
/// i.e. x ≤ g²(x) ≤ f²(x) or f²(x) ≤ g²(x) ≤ x everywhere.
[[nodiscard]] bool squares_chained(const PLMap& f_squared, const PLMap& g_squared);

/// Order relation on interval homeomorphisms through their squares.
/// SquaresEqual only for f = g; distinct maps with equal squares are Neither.
/// Throws Error(NotHomeomorphism).
[[nodiscard]] HomeoSucc homeo_succ(const PLMap& f, const PLMap& g);

inline constexpr std::size_t kHomeoDefaultCap = 64;

/// Cousin detection for interval homeomorphisms. Throws InputsEqual,
/// NotHomeomorphism, or NotCommuting (unless opts.force).
[[nodiscard]] KinVerdict<PLMap> run_homeo_algorithm(const PLMap& f, const PLMap& g,
                                                    const AlgorithmOptions& opts = {});

}  // namespace kinship

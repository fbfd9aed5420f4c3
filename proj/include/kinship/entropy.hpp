#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kinship/plmap.hpp"

namespace kinship {

/// Number of maximal strictly monotone pieces. Throws Error(HasConstantSegment).
[[nodiscard]] std::size_t lap_count(const PLMap& f);

inline constexpr std::size_t kDefaultSegmentBudget = 8'000'000;

struct EntropyOptions {
  std::size_t n_max = 512;
  double tol = 1e-2;
  /// Largest iterate (in segments) that may be built.
  std::size_t segment_budget = kDefaultSegmentBudget;
};

struct EntropyEstimate {
  /// (n, C(fⁿ)) for n = 1, 2, ...
  std::vector<std::pair<std::size_t, std::uint64_t>> lap_counts;
  /// log(C(fⁿ⁺¹) / C(fⁿ)) for n = 1, 2, ...
  std::vector<double> ratio_estimates;
  /// (1/n) log C(fⁿ) for n = 1, 2, ...
  std::vector<double> raw_estimates;
  double final_value = 0.0;  // nats
  bool converged = false;
  double tolerance = 0.0;
  bool budget_exhausted = false;
};

/// Lap-growth entropy of a strictly piecewise-monotone onto map. Stops once
/// 2·n·|r(n) − r(n−1)| < tol for the ratio sequence r. Throws
/// HasConstantSegment, NotOnto, or BudgetExceeded when the budget is hit
/// before two ratios exist.
[[nodiscard]] EntropyEstimate entropy_estimate(const PLMap& f, const EntropyOptions& opts = {});

struct DiagonalEntropy {
  PLMap reduced;  // h^(b−a)∘φ^(m−n) or its mirror for m < n
  EntropyEstimate estimate;
  std::optional<EntropyEstimate> phi_estimate;  // absent when m = n
  double closed_form = 0.0;
};

/// Throws NotHomeomorphism, NotCommuting, NotOnto, or HasConstantSegment.
[[nodiscard]] DiagonalEntropy diagonal_entropy(const PLMap& phi, const PLMap& h, std::uint64_t a,
                                               std::uint64_t b, std::uint64_t n, std::uint64_t m,
                                               const EntropyOptions& opts = {});

}  // namespace kinship

#include "kinship/entropy.hpp"

#include <cmath>

#include "kinship/errors.hpp"

namespace kinship {

std::size_t lap_count(const PLMap& f) {
  if (!f.is_strictly_piecewise_monotone()) {
    throw Error(ErrorCode::HasConstantSegment, f.to_string());
  }
  const auto& p = f.breakpoints();
  std::size_t laps = 1;
  int dir = (p[1].y - p[0].y).sign();
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    const int s = (p[i + 1].y - p[i].y).sign();
    if (s != dir) ++laps;
    dir = s;
  }
  return laps;
}

EntropyEstimate entropy_estimate(const PLMap& f, const EntropyOptions& opts) {
  const std::uint64_t c1 = lap_count(f);
  if (!f.is_onto()) throw Error(ErrorCode::NotOnto, f.to_string());
  if (opts.n_max == 0 || !(opts.tol > 0.0)) {
    throw Error(ErrorCode::InvariantViolation, "n_max and tol must be positive");
  }
  EntropyEstimate e;
  e.tolerance = opts.tol;
  e.lap_counts.emplace_back(1, c1);
  e.raw_estimates.push_back(std::log(static_cast<double>(c1)));

  PLMap iterate = f;
  for (std::size_t n = 1; n <= opts.n_max; ++n) {
    if (compose_size_bound(f, iterate) > opts.segment_budget) {
      if (e.ratio_estimates.size() < 2) {
        throw Error(ErrorCode::BudgetExceeded,
                    "iterate " + std::to_string(n + 1) + " exceeds " +
                        std::to_string(opts.segment_budget) + " segments");
      }
      e.budget_exhausted = true;
      break;
    }
    iterate = compose(f, iterate);
    const std::uint64_t prev = e.lap_counts.back().second;
    const std::uint64_t next = lap_count(iterate);
    if (next < prev || next > prev * c1) {
      throw Error(ErrorCode::InvariantViolation, "lap counts not monotone and submultiplicative");
    }
    e.lap_counts.emplace_back(n + 1, next);
    e.raw_estimates.push_back(std::log(static_cast<double>(next)) / static_cast<double>(n + 1));
    e.ratio_estimates.push_back(std::log(static_cast<double>(next) / static_cast<double>(prev)));
    e.final_value = e.ratio_estimates.back();
    if (n >= 2) {
      const double delta = std::abs(e.ratio_estimates[n - 1] - e.ratio_estimates[n - 2]);
      if (2.0 * static_cast<double>(n) * delta < opts.tol) {
        e.converged = true;
        break;
      }
    }
  }
  return e;
}

DiagonalEntropy diagonal_entropy(const PLMap& phi, const PLMap& h, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t n, std::uint64_t m, const EntropyOptions& opts) {
  if (!h.is_homeomorphism()) throw Error(ErrorCode::NotHomeomorphism, h.to_string());
  if (!phi.is_strictly_piecewise_monotone()) throw Error(ErrorCode::HasConstantSegment, phi.to_string());
  if (!phi.is_onto()) throw Error(ErrorCode::NotOnto, phi.to_string());
  if (!commute(phi, h)) throw Error(ErrorCode::NotCommuting, "phi and h do not commute");
  if (n == 0 || m == 0) throw Error(ErrorCode::InvariantViolation, "n and m must be positive");

  // Ent(F⁻¹) = Ent(F) lets the m < n case use the mirrored exponents.
  const bool forward = m >= n;
  const std::uint64_t k = forward ? m - n : n - m;
  const std::uint64_t ha = forward ? a : b;
  const std::uint64_t hb = forward ? b : a;
  const PLMap hpow = hb >= ha ? power(h, hb - ha) : power(inverse(h), ha - hb);

  DiagonalEntropy out{compose(hpow, power(phi, k)), {}, std::nullopt, 0.0};
  out.estimate = entropy_estimate(out.reduced, opts);
  if (k > 0) {
    EntropyOptions tight = opts;
    tight.tol = opts.tol / static_cast<double>(k);
    out.phi_estimate = entropy_estimate(phi, tight);
    out.closed_form = static_cast<double>(k) * out.phi_estimate->final_value;
  }
  return out;
}

}  // namespace kinship

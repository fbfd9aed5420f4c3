#include "kinship/kinship.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "kinship/entropy.hpp"
#include "kinship/plrelation.hpp"

namespace kinship {

namespace {

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::InvariantViolation, "ledger overflow");
  return r;
}

}  // namespace

void ExponentLedger::reduce_left() {
  lf = checked_sub(lf, rf);
  lg = checked_sub(lg, rg);
}

void ExponentLedger::reduce_right() {
  rf = checked_sub(rf, lf);
  rg = checked_sub(rg, lg);
}

bool ExponentLedger::invariants_hold() const {
  if (!(lf > 0 && lg <= 0 && rf <= 0 && rg > 0)) return false;
  __int128 det = static_cast<__int128>(lf) * rg - static_cast<__int128>(lg) * rf;
  return det == 1;
}

void ExponentLedger::check() const {
  if (!invariants_hold()) {
    throw Error(ErrorCode::InvariantViolation,
                "ledger (" + std::to_string(lf) + "," + std::to_string(lg) + "," + std::to_string(rg) +
                    "," + std::to_string(rf) + ")");
  }
}

std::string_view to_string(Move m) noexcept {
  switch (m) {
    case Move::LeftReduced: return "LeftReduced";
    case Move::RightReduced: return "RightReduced";
    case Move::Terminal: return "Terminal";
  }
  return "?";
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> int_euclid_trace(std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0) throw Error(ErrorCode::InvariantViolation, "int_euclid_trace needs positive inputs");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out{{n, m}};
  while (n != m) {
    if (n > m) {
      n -= m;
    } else {
      m -= n;
    }
    out.emplace_back(n, m);
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> bezout(std::int64_t alpha, std::int64_t beta) {
  if (alpha <= 0 || beta <= 0 || std::gcd(alpha, beta) != 1) {
    throw Error(ErrorCode::InvariantViolation, "bezout needs coprime positive inputs");
  }
  // Extended Euclid for alpha·x + beta·y = 1.
  std::int64_t r0 = alpha, r1 = beta, x0 = 1, x1 = 0;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
  }
  // Shift x into [-beta, -1]; the smallest magnitude negative solution.
  std::int64_t x = ((x0 % beta) + beta) % beta;  // in [0, beta)
  x -= beta;
  const std::int64_t y = (1 - alpha * x) / beta;
  return {x, y};
}

std::optional<PLMap> collapse_over_inverse(const PLMap& a, const PLMap& b) {
  auto r = collapse_if_single_valued(graph_over_inverse(a, b));
  if (auto* m = std::get_if<PLMap>(&r)) return std::move(*m);
  return std::nullopt;
}

std::size_t default_cap(const PLMap& f, const PLMap& g) {
  if (!f.is_strictly_piecewise_monotone() || !g.is_strictly_piecewise_monotone()) return kFallbackCap;
  return std::max(lap_count(f), lap_count(g)) + 1;
}

}  // namespace kinship

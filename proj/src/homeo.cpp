#include "kinship/homeo.hpp"

#include <algorithm>

#include "kinship/errors.hpp"

namespace kinship {

namespace {

void require_homeo(const PLMap& f) {
  if (!f.is_homeomorphism()) throw Error(ErrorCode::NotHomeomorphism, f.to_string());
}

bool is_involution(const PLMap& h) { return !h.is_identity() && compose(h, h).is_identity(); }

}  // namespace

std::string_view to_string(HomeoSucc s) noexcept {
  switch (s) {
    case HomeoSucc::LeftSucc: return "LeftSucc";
    case HomeoSucc::RightSucc: return "RightSucc";
    case HomeoSucc::Neither: return "Neither";
    case HomeoSucc::SquaresEqual: return "SquaresEqual";
  }
  return "?";
}

bool squares_chained(const PLMap& f2, const PLMap& g2) {
  std::vector<Rational> grid;
  for (const auto& p : f2.breakpoints()) grid.push_back(p.x);
  for (const auto& p : g2.breakpoints()) grid.push_back(p.x);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto d1 = [&](const Rational& x) { return g2(x) - x; };
  auto d2 = [&](const Rational& x) { return f2(x) - g2(x); };
  auto ok = [&](const Rational& x) { return (d1(x) * d2(x)).sign() >= 0; };

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Rational& a = grid[i];
    if (!ok(a)) return false;
    if (i + 1 == grid.size()) break;
    const Rational& b = grid[i + 1];
    // Both differences are affine on [a, b]; split at their roots.
    std::vector<Rational> cuts{a, b};
    auto add_root = [&](const auto& d) {
      const Rational u = d(a);
      const Rational v = d(b);
      if (u.sign() * v.sign() < 0) cuts.push_back(a + u / (u - v) * (b - a));
    };
    add_root(d1);
    add_root(d2);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
      if (!ok((cuts[j] + cuts[j + 1]) / Rational(2))) return false;
    }
  }
  return true;
}

HomeoSucc homeo_succ(const PLMap& f, const PLMap& g) {
  require_homeo(f);
  require_homeo(g);
  if (f == g) return HomeoSucc::SquaresEqual;
  const PLMap f2 = compose(f, f);
  const PLMap g2 = compose(g, g);
  if (f2 == g2) return HomeoSucc::Neither;
  if (squares_chained(f2, g2)) return HomeoSucc::LeftSucc;
  if (squares_chained(g2, f2)) return HomeoSucc::RightSucc;
  return HomeoSucc::Neither;
}

KinVerdict<PLMap> run_homeo_algorithm(const PLMap& f, const PLMap& g, const AlgorithmOptions& opts) {
  require_homeo(f);
  require_homeo(g);
  if (f == g) throw Error(ErrorCode::InputsEqual, "inputs are equal");
  KinVerdict<PLMap> v;
  v.variant = "homeo";
  if (!commute(f, g)) {
    if (!opts.force) throw Error(ErrorCode::NotCommuting, "inputs do not commute");
    v.applicable = false;
  }
  const std::size_t cap = opts.cap.value_or(kHomeoDefaultCap);
  if (cap == 0) throw Error(ErrorCode::InvariantViolation, "cap must be positive");

  // An identity input is an ancestor power only when the other map is an involution.
  if (f.is_identity() || g.is_identity()) {
    v.trace.push_back({f, g, ExponentLedger{}, Move::Terminal});
    const PLMap& other = f.is_identity() ? g : f;
    if (v.applicable && is_involution(other)) {
      v.outcome = f.is_identity() ? Cousins<PLMap>{other, 2, 1} : Cousins<PLMap>{other, 1, 2};
    } else {
      v.outcome = NotCousins{1};
    }
    return v;
  }

  PLMap lam = f;
  PLMap rho = g;
  ExponentLedger ledger;
  for (std::size_t step = 1; step <= cap; ++step) {
    ledger.check();
    TraceStep<PLMap> row{lam, rho, ledger, Move::Terminal};
    const HomeoSucc s = homeo_succ(lam, rho);
    if (s == HomeoSucc::LeftSucc) {
      row.move = Move::LeftReduced;
      v.trace.push_back(std::move(row));
      lam = compose(lam, inverse(rho));
      if (opts.mutation != Mutation::SkipLedgerUpdate) ledger.reduce_left();
      continue;
    }
    if (s == HomeoSucc::RightSucc) {
      row.move = Move::RightReduced;
      v.trace.push_back(std::move(row));
      rho = compose(rho, inverse(lam));
      if (opts.mutation != Mutation::SkipLedgerUpdate) ledger.reduce_right();
      continue;
    }
    v.trace.push_back(std::move(row));
    if (s == HomeoSucc::SquaresEqual && v.applicable) {
      v.outcome = extract_certificate(f, g, v.trace, std::optional<PLMap>());
    } else {
      v.outcome = NotCousins{step};
    }
    return v;
  }
  ledger.check();
  v.outcome = Inconclusive{cap};
  return v;
}

}  // namespace kinship

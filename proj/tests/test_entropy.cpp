#include <cmath>

#include "doctest.h"
#include "kinship/entropy.hpp"
#include "support.hpp"

using namespace kinship;
using namespace testing_support;

namespace {

const PLMap phi_zero = pl({{0, 0}, {Rational(1, 2), 1}, {1, Rational(1, 2)}});
const PLMap odd_phi = pl({{0, 0}, {Rational(1, 4), Rational(3, 4)}, {Rational(3, 4), Rational(1, 4)}, {1, 1}});

// Counts monotone runs of n-fold nested evaluation on the grid i/d. Exact
// whenever every turning point lies on the grid with a grid point between.
std::size_t grid_laps(const PLMap& f, unsigned n, long d) {
  std::vector<Rational> ys;
  for (const auto& x0 : grid(d)) {
    Rational x = x0;
    for (unsigned i = 0; i < n; ++i) x = f(x);
    ys.push_back(x);
  }
  std::size_t laps = 1;
  int dir = 0;
  for (std::size_t i = 1; i < ys.size(); ++i) {
    const int s = (ys[i] - ys[i - 1]).sign();
    if (s == 0) continue;
    if (dir != 0 && s != dir) ++laps;
    dir = s;
  }
  return laps;
}

}  // namespace

TEST_CASE("lap_count") {
  CHECK(lap_count(tent(2)) == 2);
  CHECK(lap_count(tent(6)) == 6);
  CHECK(lap_count(identity_map()) == 1);
  CHECK(lap_count(flip_map()) == 1);
  CHECK(lap_count(phi_zero) == 2);
  CHECK(lap_count(odd_phi) == 3);
  // Collinear-free monotone breaks do not add laps.
  CHECK(lap_count(pl({{0, 0}, {Rational(1, 4), Rational(1, 2)}, {1, 1}})) == 1);
  const PLMap flat = pl({{0, 0}, {Rational(1, 3), Rational(1, 2)}, {Rational(2, 3), Rational(1, 2)}, {1, 1}});
  CHECK(code_of([&] { (void)lap_count(flat); }) == ErrorCode::HasConstantSegment);
}

TEST_CASE("lap counts of iterates against nested evaluation") {
  for (unsigned n = 1; n <= 7; ++n) {
    CHECK(lap_count(power(tent(2), n)) == grid_laps(tent(2), n, 4L << n));
    CHECK(lap_count(power(tent(2), n)) == (std::size_t{1} << n));
  }
  long p3 = 1;
  for (unsigned n = 1; n <= 4; ++n) {
    p3 *= 3;
    CHECK(lap_count(power(tent(3), n)) == grid_laps(tent(3), n, 4 * p3));
    CHECK(lap_count(power(tent(3), n)) == static_cast<std::size_t>(p3));
  }
  // phi_zero: turning points of the n-th iterate are dyadic.
  for (unsigned n = 1; n <= 6; ++n) {
    CHECK(lap_count(power(phi_zero, n)) == n + 1);
    CHECK(grid_laps(phi_zero, n, 1L << (n + 4)) == n + 1);
  }
}

TEST_CASE("entropy of tents") {
  const auto e2 = entropy_estimate(tent(2));
  CHECK(e2.converged);
  CHECK(e2.final_value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  for (double r : e2.ratio_estimates) CHECK(r == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  for (const auto& [n, c] : e2.lap_counts) CHECK(c == (std::uint64_t{1} << n));
  const auto e3 = entropy_estimate(tent(3));
  CHECK(e3.final_value == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  for (unsigned s = 4; s <= 6; ++s) {
    CHECK(entropy_estimate(tent(s)).final_value == doctest::Approx(std::log(double(s))).epsilon(1e-12));
  }
  CHECK(entropy_estimate(identity_map()).final_value == 0.0);
  CHECK(entropy_estimate(flip_map()).final_value == 0.0);
}

TEST_CASE("zero-entropy map") {
  const auto e = entropy_estimate(phi_zero);
  CHECK(e.converged);
  CHECK(std::abs(e.final_value) < 1e-2);
  CHECK(e.final_value >= 0.0);
  // Raw estimates decay like log(n+1)/n.
  REQUIRE(e.raw_estimates.size() >= 3);
  CHECK(e.raw_estimates[2] == doctest::Approx(std::log(4.0) / 3.0));
}

TEST_CASE("estimate invariants") {
  for (const PLMap& f : {tent(2), tent(3), phi_zero, odd_phi, compose(flip_map(), tent(4))}) {
    const auto e = entropy_estimate(f);
    CHECK(e.final_value >= 0.0);
    CHECK(e.tolerance == doctest::Approx(1e-2));
    for (std::size_t i = 1; i < e.lap_counts.size(); ++i) {
      CHECK(e.lap_counts[i].first == e.lap_counts[i - 1].first + 1);
      CHECK(e.lap_counts[i].second >= e.lap_counts[i - 1].second);
      CHECK(e.lap_counts[i].second <= e.lap_counts[i - 1].second * e.lap_counts[0].second);
    }
    CHECK(e.ratio_estimates.size() + 1 == e.lap_counts.size());
  }
}

TEST_CASE("power rule") {
  for (unsigned s = 2; s <= 4; ++s) {
    const double base = entropy_estimate(tent(s)).final_value;
    for (unsigned k = 2; k <= 3; ++k) {
      const double ek = entropy_estimate(power(tent(s), k)).final_value;
      CHECK(std::abs(ek - k * base) < 2e-2);
    }
  }
}

TEST_CASE("composing with a commuting homeomorphism keeps lap counts") {
  const PLMap h = flip_map();
  REQUIRE(commute(odd_phi, h));
  REQUIRE(commute(tent(3), h));
  for (const PLMap& phi : {odd_phi, tent(3)}) {
    const PLMap hp = compose(h, phi);
    PLMap a = phi;
    PLMap b = hp;
    for (int n = 1; n <= 6; ++n) {
      CHECK(lap_count(a) == lap_count(b));
      a = compose(phi, a);
      b = compose(hp, b);
    }
    const auto e1 = entropy_estimate(phi);
    const auto e2 = entropy_estimate(hp);
    CHECK(e1.lap_counts == e2.lap_counts);
    CHECK(e1.final_value == e2.final_value);
  }
}

TEST_CASE("entropy errors and budget") {
  const PLMap flat = pl({{0, 0}, {Rational(1, 3), Rational(1, 2)}, {Rational(2, 3), Rational(1, 2)}, {1, 1}});
  CHECK(code_of([&] { (void)entropy_estimate(flat); }) == ErrorCode::HasConstantSegment);
  CHECK(code_of([] { (void)entropy_estimate(pl({{0, 0}, {1, Rational(1, 2)}})); }) == ErrorCode::NotOnto);
  CHECK(code_of([] { (void)entropy_estimate(tent(6), {.segment_budget = 10}); }) == ErrorCode::BudgetExceeded);
  // A budget that allows a few iterates yields a partial estimate.
  const auto e = entropy_estimate(phi_zero, {.n_max = 512, .tol = 1e-12, .segment_budget = 60});
  CHECK(e.budget_exhausted);
  CHECK_FALSE(e.converged);
  const auto n = static_cast<double>(e.lap_counts.size() - 1);
  CHECK(e.final_value == doctest::Approx(std::log((n + 2) / (n + 1))));
  const auto capped = entropy_estimate(phi_zero, {.n_max = 5, .tol = 1e-9});
  CHECK_FALSE(capped.converged);
  CHECK(capped.lap_counts.size() <= 6);
}

TEST_CASE("diagonal entropy") {
  const auto d0 = diagonal_entropy(phi_zero, identity_map(), 0, 0, 1, 3);
  CHECK(std::abs(d0.estimate.final_value) < 1e-2);
  CHECK(std::abs(d0.closed_form) < 1e-2);
  CHECK(d0.reduced == power(phi_zero, 2));

  const auto d1 = diagonal_entropy(tent(2), identity_map(), 0, 0, 3, 1);
  CHECK(std::abs(d1.estimate.final_value - 2 * std::log(2.0)) < 1e-2);
  CHECK(std::abs(d1.closed_form - 2 * std::log(2.0)) < 1e-2);

  const auto eq = diagonal_entropy(tent(3), flip_map(), 1, 0, 2, 2);
  CHECK(eq.estimate.final_value == 0.0);
  CHECK(eq.closed_form == 0.0);
  CHECK(eq.reduced.is_homeomorphism());

  const auto odd = diagonal_entropy(odd_phi, flip_map(), 1, 2, 1, 3);
  CHECK(odd.reduced == compose(flip_map(), power(odd_phi, 2)));
  CHECK(std::abs(odd.estimate.final_value - odd.closed_form) < 2e-2);
  REQUIRE(odd.phi_estimate);
  CHECK(odd.closed_form == doctest::Approx(2 * odd.phi_estimate->final_value));
  CHECK(std::abs(odd.closed_form - 2 * entropy_estimate(odd_phi).final_value) < 2e-2);

  CHECK(code_of([] { (void)diagonal_entropy(tent(2), flip_map(), 0, 1, 1, 2); }) == ErrorCode::NotCommuting);
  CHECK(code_of([] { (void)diagonal_entropy(tent(2), tent(3), 0, 1, 1, 2); }) == ErrorCode::NotHomeomorphism);
}

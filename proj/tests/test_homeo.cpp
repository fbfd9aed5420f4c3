#include "doctest.h"
#include "kinship/homeo.hpp"
#include "support.hpp"

using namespace kinship;
using namespace testing_support;

namespace {

const PLMap psi = pl({{0, 0}, {Rational(1, 4), Rational(1, 2)}, {1, 1}});

// Increasing PL homeomorphism with random interior values in 24ths.
PLMap random_homeo(std::mt19937& rng) {
  std::uniform_int_distribution<int> nseg(1, 4);
  const int n = nseg(rng);
  std::vector<long> ys;
  std::uniform_int_distribution<long> yv(1, 23);
  for (int i = 1; i < n; ++i) ys.push_back(yv(rng));
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::vector<Point> pts{{0, 0}};
  for (std::size_t i = 0; i < ys.size(); ++i)
    pts.push_back({Rational(static_cast<long>(i) + 1, static_cast<long>(ys.size()) + 1), Rational(ys[i], 24)});
  pts.push_back({1, 1});
  return make_internal(std::move(pts));
}

// Direct evaluation of the two ordered chains at one point.
bool chain_at(const PLMap& f2, const PLMap& g2, const Rational& x) {
  const Rational a = g2(x);
  const Rational b = f2(x);
  return (x <= a && a <= b) || (b <= a && a <= x);
}

}  // namespace

TEST_CASE("homeo_succ examples") {
  CHECK(homeo_succ(power(psi, 2), psi) == HomeoSucc::LeftSucc);
  CHECK(homeo_succ(psi, power(psi, 2)) == HomeoSucc::RightSucc);
  CHECK(homeo_succ(psi, psi) == HomeoSucc::SquaresEqual);
  CHECK(homeo_succ(identity_map(), flip_map()) == HomeoSucc::Neither);
  CHECK(homeo_succ(flip_map(), identity_map()) == HomeoSucc::Neither);
  CHECK(code_of([] { (void)homeo_succ(tent(2), psi); }) == ErrorCode::NotHomeomorphism);
}

TEST_CASE("powers are ordered by exponent") {
  const PLMap dec = compose(flip_map(), psi);  // orientation reversing, square ≠ id
  std::mt19937 rng(17);
  std::vector<PLMap> hs{psi, inverse(psi), dec};
  for (int t = 0; t < 6; ++t) {
    PLMap h = random_homeo(rng);
    if (!h.is_identity()) hs.push_back(h);
  }
  for (const auto& h : hs) {
    REQUIRE_FALSE(power(h, 2).is_identity());
    for (std::uint64_t n = 1; n <= 5; ++n) {
      for (std::uint64_t m = 1; m <= 5; ++m) {
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(h.to_string());
        const HomeoSucc s = homeo_succ(power(h, n), power(h, m));
        CHECK((s == HomeoSucc::LeftSucc) == (n > m));
        if (n == m) CHECK(s == HomeoSucc::SquaresEqual);
      }
    }
  }
}

TEST_CASE("sign test matches direct chain evaluation") {
  std::mt19937 rng(19);
  int agree_true = 0;
  int agree_false = 0;
  for (int t = 0; t < 400; ++t) {
    PLMap f = random_homeo(rng);
    PLMap g = random_homeo(rng);
    if (t % 3 == 0) f = compose(flip_map(), f);
    if (t % 5 == 0) g = compose(g, flip_map());
    const PLMap f2 = compose(f, f);
    const PLMap g2 = compose(g, g);
    const bool exact = squares_chained(f2, g2);
    bool grid_ok = true;
    for (const auto& x : grid(720)) grid_ok = grid_ok && chain_at(f2, g2, x);
    // Exact and grid agree except when a violation hides between grid points.
    if (exact) {
      CHECK(grid_ok);
      ++agree_true;
    } else if (!grid_ok) {
      ++agree_false;
    } else {
      // Locate the violation exactly among breakpoints and their midpoints.
      std::vector<Rational> xs;
      for (const auto& p : f2.breakpoints()) xs.push_back(p.x);
      for (const auto& p : g2.breakpoints()) xs.push_back(p.x);
      std::sort(xs.begin(), xs.end());
      bool found = false;
      for (std::size_t i = 0; i < xs.size() && !found; ++i) {
        found = !chain_at(f2, g2, xs[i]);
        if (i > 0) found = found || !chain_at(f2, g2, (xs[i - 1] + xs[i]) / Rational(2));
      }
      CHECK(found);
    }
  }
  CHECK(agree_true > 20);
  CHECK(agree_false > 20);
}

TEST_CASE("psi^3 and psi^2 are cousins through psi") {
  const PLMap f = power(psi, 3);
  const PLMap g = power(psi, 2);
  const auto v = run_homeo_algorithm(f, g);
  CHECK(v.variant == "homeo");
  REQUIRE(std::holds_alternative<Cousins<PLMap>>(v.outcome));
  const auto& c = std::get<Cousins<PLMap>>(v.outcome);
  CHECK(c.ancestor == psi);
  CHECK(c.n == 3);
  CHECK(c.m == 2);
  REQUIRE(v.trace.size() == 3);
  CHECK(v.trace[0].move == Move::LeftReduced);
  CHECK(v.trace[1].move == Move::RightReduced);
  CHECK(v.trace[1].ledger.lf == 1);
  CHECK(v.trace[1].ledger.lg == -1);
  CHECK(v.trace[2].ledger.rf == -1);
  CHECK(v.trace[2].ledger.rg == 2);
  CHECK(verify_certificate(f, g, v.outcome));
}

TEST_CASE("identity and an involution are cousins") {
  const PLMap h = flip_map();
  const auto v = run_homeo_algorithm(identity_map(), h);
  REQUIRE(std::holds_alternative<Cousins<PLMap>>(v.outcome));
  const auto& c = std::get<Cousins<PLMap>>(v.outcome);
  CHECK(c.ancestor == h);
  CHECK(c.n % 2 == 0);
  CHECK(c.m % 2 == 1);
  CHECK(verify_certificate(identity_map(), h, v.outcome));
  const auto w = run_homeo_algorithm(h, identity_map());
  REQUIRE(std::holds_alternative<Cousins<PLMap>>(w.outcome));
  CHECK(verify_certificate(h, identity_map(), w.outcome));
  // Another involution: conjugate of flip by psi.
  const PLMap k = compose(inverse(psi), compose(flip_map(), psi));
  REQUIRE(power(k, 2).is_identity());
  CHECK(run_homeo_algorithm(identity_map(), k).is_cousins());
}

TEST_CASE("identity and an increasing homeomorphism are not cousins") {
  const auto v = run_homeo_algorithm(identity_map(), psi);
  CHECK(std::holds_alternative<NotCousins>(v.outcome));
  CHECK(std::holds_alternative<NotCousins>(run_homeo_algorithm(psi, identity_map()).outcome));
}

TEST_CASE("homeo algorithm on constructed cousins") {
  std::mt19937 rng(43);
  for (int t = 0; t < 10; ++t) {
    const PLMap h = random_homeo(rng);
    if (h.is_identity()) continue;
    for (std::uint64_t n = 1; n <= 5; ++n) {
      for (std::uint64_t m = 1; m <= 5; ++m) {
        if (n == m) continue;
        const PLMap f = power(h, n);
        const PLMap g = power(h, m);
        const auto v = run_homeo_algorithm(f, g);
        REQUIRE(v.is_cousins());
        CHECK(verify_certificate(f, g, v.outcome));
        const auto& c = std::get<Cousins<PLMap>>(v.outcome);
        CHECK(c.n * std::gcd(n, m) == n);
        CHECK(c.m * std::gcd(n, m) == m);
      }
    }
  }
}

TEST_CASE("homeo preconditions") {
  CHECK(code_of([] { (void)run_homeo_algorithm(psi, psi); }) == ErrorCode::InputsEqual);
  CHECK(code_of([] { (void)run_homeo_algorithm(psi, tent(2)); }) == ErrorCode::NotHomeomorphism);
  const PLMap other = pl({{0, 0}, {Rational(1, 2), Rational(1, 3)}, {1, 1}});
  REQUIRE_FALSE(commute(psi, other));
  CHECK(code_of([&] { (void)run_homeo_algorithm(psi, other); }) == ErrorCode::NotCommuting);
  const auto forced = run_homeo_algorithm(psi, other, {.force = true});
  CHECK_FALSE(forced.applicable);
  CHECK_FALSE(forced.is_cousins());
}

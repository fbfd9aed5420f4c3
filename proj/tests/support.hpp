#pragma once

#include <random>
#include <utility>
#include <vector>

#include "kinship/errors.hpp"
#include "kinship/plmap.hpp"

namespace testing_support {

using kinship::PLMap;
using kinship::Point;
using kinship::Rational;

inline PLMap pl(std::vector<std::pair<Rational, Rational>> pts) {
  std::vector<Point> v;
  for (auto& [x, y] : pts) v.push_back({x, y});
  return PLMap::normalize(std::move(v));
}

/// Rational grid i/d for i = 0..d.
inline std::vector<Rational> grid(long d) {
  std::vector<Rational> g;
  for (long i = 0; i <= d; ++i) g.emplace_back(i, d);
  return g;
}

/// Random map on a uniform x-grid with y-values in twelfths. `onto` forces
/// both 0 and 1 to be attained; `flat` permits constant segments.
inline PLMap random_map(std::mt19937& rng, bool flat, bool onto = false, int max_segs = 5) {
  std::uniform_int_distribution<int> nseg(onto ? 2 : 1, max_segs);
  std::uniform_int_distribution<long> yv(0, 12);
  const int n = nseg(rng);
  std::vector<Rational> ys;
  for (int i = 0; i <= n; ++i) ys.emplace_back(yv(rng), 12);
  if (onto) {
    std::uniform_int_distribution<int> pos(0, n);
    const int i0 = pos(rng);
    int i1 = pos(rng);
    if (i1 == i0) i1 = (i0 + 1) % (n + 1);
    ys[static_cast<std::size_t>(i0)] = Rational(0);
    ys[static_cast<std::size_t>(i1)] = Rational(1);
  }
  if (!flat) {
    for (std::size_t i = 1; i < ys.size(); ++i) {
      if (ys[i] != ys[i - 1]) continue;
      ys[i] = ys[i] == Rational(0) ? Rational(1, 12) : ys[i] - Rational(1, 12);
    }
  }
  std::vector<Point> pts;
  for (int i = 0; i <= n; ++i) pts.push_back({Rational(i, n), ys[static_cast<std::size_t>(i)]});
  return kinship::make_internal(std::move(pts));
}

template <class Fn>
kinship::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const kinship::Error& e) {
    return e.code();
  }
  return kinship::ErrorCode::Internal;
}

}  // namespace testing_support

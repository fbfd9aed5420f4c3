#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kinship/rational.hpp"

namespace kinship {

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Closed interval [lo, hi]; lo == hi for a single point.
struct Interval {
  Rational lo;
  Rational hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Continuous piecewise-linear self-map of [0,1], stored as its normalized
/// breakpoint list. Immutable once built.
class PLMap {
 public:
  /// Identity map.
  PLMap();

  /// Validates and normalizes; throws Error(MalformedBreakpoints).
  static PLMap normalize(std::vector<Point> raw);

  [[nodiscard]] const std::vector<Point>& breakpoints() const { return pts_; }
  [[nodiscard]] std::size_t segment_count() const { return pts_.size() - 1; }

  /// Throws Error(OutOfDomain) outside [0,1].
  [[nodiscard]] Rational operator()(const Rational& x) const;

  [[nodiscard]] bool is_onto() const { return onto_; }
  [[nodiscard]] bool is_strictly_piecewise_monotone() const { return strict_; }
  [[nodiscard]] bool is_homeomorphism() const { return homeo_; }
  [[nodiscard]] bool is_identity() const;

  /// Canonical text such as "(0,0) (1/2,1) (1,0)".
  [[nodiscard]] std::string to_string() const;
  /// FNV-1a 64 over to_string(), rendered as 16 hex digits.
  [[nodiscard]] std::string digest() const;

  friend bool operator==(const PLMap& a, const PLMap& b) { return a.pts_ == b.pts_; }

 private:
  struct Trusted {};
  PLMap(Trusted, std::vector<Point> pts);
  void cache_flags();

  friend PLMap make_internal(std::vector<Point> raw);

  std::vector<Point> pts_;
  bool onto_ = true;
  bool strict_ = true;
  bool homeo_ = true;
};

/// Normalizes a computed breakpoint list; range violations are internal errors.
PLMap make_internal(std::vector<Point> raw);

[[nodiscard]] inline Rational evaluate(const PLMap& f, const Rational& x) { return f(x); }

/// f∘g.
[[nodiscard]] PLMap compose(const PLMap& f, const PLMap& g);

/// Upper bound on the segment count of compose(f, g) without building it.
[[nodiscard]] std::size_t compose_size_bound(const PLMap& f, const PLMap& g);

/// Sorted, disjoint, merged solution set of f(x) = y.
[[nodiscard]] std::vector<Interval> preimage(const PLMap& f, const Rational& y);

[[nodiscard]] inline bool equals(const PLMap& f, const PLMap& g) { return f == g; }
[[nodiscard]] bool commute(const PLMap& f, const PLMap& g);
[[nodiscard]] inline bool is_homeomorphism(const PLMap& f) { return f.is_homeomorphism(); }

/// Exact inverse of a homeomorphism; throws Error(NotHomeomorphism).
[[nodiscard]] PLMap inverse(const PLMap& h);

/// fⁿ by repeated squaring; power(f, 0) is the identity.
[[nodiscard]] PLMap power(const PLMap& f, std::uint64_t n);

[[nodiscard]] PLMap identity_map();
/// Symmetric tent with s laps: breakpoints (i/s, i mod 2).
[[nodiscard]] PLMap tent(unsigned s);
/// x ↦ 1 − x.
[[nodiscard]] PLMap flip_map();

}  // namespace kinship

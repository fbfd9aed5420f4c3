#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "kinship/plmap.hpp"

namespace kinship {

/// Closed segment between two points; a == b is a single point.
struct Segment {
  Point a;
  Point b;
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Axis-aligned filled rectangle [x0,x1]×[y0,y1] with x0 < x1 and y0 < y1.
/// Arises when a plateau of one factor meets a vertical piece of the other.
struct Box {
  Rational x0, x1, y0, y1;
  friend bool operator==(const Box&, const Box&) = default;
};

/// Closed graph of a set-valued function on [0,1] as a finite union of pieces.
struct PLRelation {
  std::vector<Segment> segments;
  std::vector<Box> boxes;

  /// True iff every x in [0,1] has at least one y.
  [[nodiscard]] bool covers_domain() const;
  /// Whether (x, y) lies on the graph.
  [[nodiscard]] bool contains(const Rational& x, const Rational& y) const;
};

/// Evidence that a relation is not a map: at x the fiber holds y1 ≠ y2, or is
/// empty when `values` is absent.
struct NotSingleValued {
  Rational x;
  std::optional<std::pair<Rational, Rational>> values;
};

using CollapseResult = std::variant<PLMap, NotSingleValued>;

[[nodiscard]] PLRelation graph(const PLMap& f);
/// {(y, x) : (x, y) ∈ R}.
[[nodiscard]] PLRelation transpose(const PLRelation& r);

/// Γ(f∘g⁻¹) = {(g(t), f(t))}; throws Error(NotOnto) unless g is onto.
[[nodiscard]] PLRelation graph_over_inverse(const PLMap& f, const PLMap& g);

/// r∘s = {(x, z) : (x, y) ∈ s, (y, z) ∈ r for some y}.
[[nodiscard]] PLRelation compose(const PLRelation& r, const PLRelation& s);

[[nodiscard]] CollapseResult collapse_if_single_valued(const PLRelation& r);

struct PowerComposeResult {
  PLRelation relation;
  std::optional<PLMap> map;
};

/// fᵖ∘g^q, with negative exponents meaning inverse relations.
/// Throws Error(NotOnto) unless f and g are onto.
[[nodiscard]] PowerComposeResult power_compose(const PLMap& f, const PLMap& g, std::int64_t p,
                                               std::int64_t q);

}  // namespace kinship

#include "kinship/plrelation.hpp"

#include <algorithm>

#include "kinship/errors.hpp"

namespace kinship {

namespace {

// Function-local so other translation units may use them during static init.
const Rational& zero() {
  static const Rational z(0);
  return z;
}
const Rational& one() {
  static const Rational o(1);
  return o;
}

// A piece of a relation in uniform form: a segment, or a box when is_box.
struct Piece {
  bool is_box = false;
  Point a, b;  // segment endpoints, or box corners (x0,y0), (x1,y1)

  Rational xmin() const { return min(a.x, b.x); }
  Rational xmax() const { return max(a.x, b.x); }
  Rational ymin() const { return min(a.y, b.y); }
  Rational ymax() const { return max(a.y, b.y); }
};

std::vector<Piece> pieces_of(const PLRelation& r) {
  std::vector<Piece> out;
  out.reserve(r.segments.size() + r.boxes.size());
  for (const auto& s : r.segments) out.push_back({false, s.a, s.b});
  for (const auto& b : r.boxes) out.push_back({true, {b.x0, b.y0}, {b.x1, b.y1}});
  return out;
}

void add_box(PLRelation& out, Rational x0, Rational x1, Rational y0, Rational y1) {
  if (x0 == x1 || y0 == y1) {
    out.segments.push_back({{std::move(x0), std::move(y0)}, {std::move(x1), std::move(y1)}});
  } else {
    out.boxes.push_back({std::move(x0), std::move(x1), std::move(y0), std::move(y1)});
  }
}

// Point of a non-horizontal segment (in its own coordinates) at height y.
Rational x_at_y(const Point& a, const Point& b, const Rational& y) {
  return a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
}

// Range of the first coordinate of piece p over second coordinate in [lo, hi];
// empty if p does not reach that band.
std::optional<std::pair<Rational, Rational>> x_range_in_band(const Piece& p, const Rational& lo,
                                                             const Rational& hi) {
  const Rational l = max(lo, p.ymin());
  const Rational h = min(hi, p.ymax());
  if (h < l) return std::nullopt;
  if (p.is_box || p.a.y == p.b.y) return std::make_pair(p.xmin(), p.xmax());
  Rational u = x_at_y(p.a, p.b, l);
  Rational v = x_at_y(p.a, p.b, h);
  if (v < u) std::swap(u, v);
  return std::make_pair(std::move(u), std::move(v));
}

// Composition of s (x→y) followed by r (y→z), both single pieces.
void compose_pieces(const Piece& r, const Piece& s, PLRelation& out) {
  const Rational lo = max(s.ymin(), r.xmin());
  const Rational hi = min(s.ymax(), r.xmax());
  if (hi < lo) return;
  const bool s_flat = !s.is_box && s.a.y == s.b.y;  // s constant in y
  const bool r_flat = !r.is_box && r.a.x == r.b.x;  // r vertical: one y, many z
  if (s.is_box || r.is_box || (s_flat && r_flat)) {
    // Every x of s reaching the band relates to every z of r over the band.
    auto xs = x_range_in_band(s, lo, hi);
    Piece rt{r.is_box, {r.a.y, r.a.x}, {r.b.y, r.b.x}};
    auto zs = x_range_in_band(rt, lo, hi);
    if (!xs || !zs) return;
    add_box(out, xs->first, xs->second, zs->first, zs->second);
    return;
  }
  if (s_flat) {
    // One y = c; r is non-vertical so z is unique.
    const Rational& c = s.a.y;
    const Rational z = r.a.y + (c - r.a.x) * (r.b.y - r.a.y) / (r.b.x - r.a.x);
    out.segments.push_back({{s.xmin(), z}, {s.xmax(), z}});
    return;
  }
  if (r_flat) {
    const Rational x = x_at_y(s.a, s.b, r.a.x);
    out.segments.push_back({{x, r.ymin()}, {x, r.ymax()}});
    return;
  }
  auto z_at = [&](const Rational& y) {
    return r.a.y + (y - r.a.x) * (r.b.y - r.a.y) / (r.b.x - r.a.x);
  };
  out.segments.push_back({{x_at_y(s.a, s.b, lo), z_at(lo)}, {x_at_y(s.a, s.b, hi), z_at(hi)}});
}

// y of a non-vertical piece at x (xmin ≤ x ≤ xmax).
Rational y_at(const Piece& p, const Rational& x) {
  if (p.a.x == p.b.x) return p.a.y;
  return p.a.y + (x - p.a.x) * (p.b.y - p.a.y) / (p.b.x - p.a.x);
}

}  // namespace

bool PLRelation::covers_domain() const {
  std::vector<std::pair<Rational, Rational>> spans;
  for (const auto& p : pieces_of(*this)) spans.emplace_back(p.xmin(), p.xmax());
  std::sort(spans.begin(), spans.end());
  Rational reach = zero();
  bool started = false;
  for (const auto& [lo, hi] : spans) {
    if (!started) {
      if (lo != zero()) return false;
      started = true;
    } else if (lo > reach) {
      return false;
    }
    reach = max(reach, hi);
  }
  return started && reach == one();
}

bool PLRelation::contains(const Rational& x, const Rational& y) const {
  for (const auto& p : pieces_of(*this)) {
    if (x < p.xmin() || x > p.xmax()) continue;
    if (p.is_box) {
      if (y >= p.ymin() && y <= p.ymax()) return true;
    } else if (p.a.x == p.b.x) {
      if (y >= p.ymin() && y <= p.ymax()) return true;
    } else if (y_at(p, x) == y) {
      return true;
    }
  }
  return false;
}

PLRelation graph(const PLMap& f) {
  PLRelation r;
  const auto& p = f.breakpoints();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) r.segments.push_back({p[i], p[i + 1]});
  return r;
}

PLRelation transpose(const PLRelation& r) {
  PLRelation out;
  for (const auto& s : r.segments) out.segments.push_back({{s.a.y, s.a.x}, {s.b.y, s.b.x}});
  for (const auto& b : r.boxes) out.boxes.push_back({b.y0, b.y1, b.x0, b.x1});
  return out;
}

PLRelation graph_over_inverse(const PLMap& f, const PLMap& g) {
  if (!g.is_onto()) throw Error(ErrorCode::NotOnto, "right factor is not onto: " + g.to_string());
  const auto& fp = f.breakpoints();
  const auto& gp = g.breakpoints();
  // Merge the two breakpoint lists into the common refinement, tracking values.
  std::vector<Point> pts;  // (g(t), f(t))
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < fp.size() && j < gp.size()) {
    if (fp[i].x == gp[j].x) {
      pts.push_back({gp[j].y, fp[i].y});
      ++i;
      ++j;
    } else if (fp[i].x < gp[j].x) {
      const auto& t = fp[i].x;
      pts.push_back({gp[j - 1].y + (t - gp[j - 1].x) * (gp[j].y - gp[j - 1].y) / (gp[j].x - gp[j - 1].x),
                     fp[i].y});
      ++i;
    } else {
      const auto& t = gp[j].x;
      pts.push_back({gp[j].y,
                     fp[i - 1].y + (t - fp[i - 1].x) * (fp[i].y - fp[i - 1].y) / (fp[i].x - fp[i - 1].x)});
      ++j;
    }
  }
  PLRelation r;
  r.segments.reserve(pts.size());
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) r.segments.push_back({pts[k], pts[k + 1]});
  return r;
}

PLRelation compose(const PLRelation& r, const PLRelation& s) {
  auto rp = pieces_of(r);
  const auto sp = pieces_of(s);
  std::sort(rp.begin(), rp.end(), [](const Piece& a, const Piece& b) { return a.xmin() < b.xmin(); });
  PLRelation out;
  for (const auto& sv : sp) {
    const Rational lo = sv.ymin();
    const Rational hi = sv.ymax();
    for (const auto& rv : rp) {
      if (rv.xmin() > hi) break;
      if (rv.xmax() < lo) continue;
      compose_pieces(rv, sv, out);
    }
  }
  return out;
}

CollapseResult collapse_if_single_valued(const PLRelation& r) {
  if (!r.boxes.empty()) {
    const Box& b = r.boxes.front();
    return NotSingleValued{b.x0, std::make_pair(b.y0, b.y1)};
  }
  std::vector<Piece> pieces;
  for (const auto& s : r.segments) {
    if (s.a.x == s.b.x && s.a.y != s.b.y) {
      return NotSingleValued{s.a.x, std::make_pair(min(s.a.y, s.b.y), max(s.a.y, s.b.y))};
    }
    pieces.push_back({false, s.a, s.b});
  }
  if (pieces.empty()) return NotSingleValued{zero(), std::nullopt};
  std::vector<Rational> grid;
  grid.reserve(2 * pieces.size());
  for (const auto& p : pieces) {
    grid.push_back(p.a.x);
    grid.push_back(p.b.x);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.front() != zero()) return NotSingleValued{zero(), std::nullopt};
  if (grid.back() != one()) return NotSingleValued{one(), std::nullopt};

  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.xmin() < b.xmin(); });
  std::vector<const Piece*> active;
  std::size_t next = 0;
  std::vector<Point> out;
  out.reserve(grid.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const Rational& x = grid[gi];
    while (next < pieces.size() && pieces[next].xmin() <= x) active.push_back(&pieces[next++]);
    std::erase_if(active, [&](const Piece* p) { return p->xmax() < x; });
    if (active.empty()) return NotSingleValued{x, std::nullopt};
    const Rational y = y_at(*active.front(), x);
    for (const Piece* p : active) {
      Rational v = y_at(*p, x);
      if (v != y) return NotSingleValued{x, std::make_pair(min(y, v), max(y, v))};
    }
    if (gi + 1 < grid.size()) {
      const bool spans = std::any_of(active.begin(), active.end(),
                                     [&](const Piece* p) { return p->xmax() > x; });
      if (!spans) return NotSingleValued{(x + grid[gi + 1]) / Rational(2), std::nullopt};
    }
    out.push_back({x, y});
  }
  return make_internal(std::move(out));
}

PowerComposeResult power_compose(const PLMap& f, const PLMap& g, std::int64_t p, std::int64_t q) {
  if (!f.is_onto()) throw Error(ErrorCode::NotOnto, "left factor is not onto: " + f.to_string());
  if (!g.is_onto()) throw Error(ErrorCode::NotOnto, "right factor is not onto: " + g.to_string());
  const PLMap fp = power(f, static_cast<std::uint64_t>(p < 0 ? -p : p));
  const PLMap gq = power(g, static_cast<std::uint64_t>(q < 0 ? -q : q));
  PowerComposeResult res;
  if (p >= 0 && q >= 0) {
    PLMap m = compose(fp, gq);
    res.relation = graph(m);
    res.map = std::move(m);
    return res;
  }
  if (p >= 0) {
    res.relation = graph_over_inverse(fp, gq);
  } else if (q >= 0) {
    res.relation = compose(transpose(graph(fp)), graph(gq));
  } else {
    res.relation = transpose(graph(compose(gq, fp)));
  }
  auto collapsed = collapse_if_single_valued(res.relation);
  if (auto* m = std::get_if<PLMap>(&collapsed)) res.map = std::move(*m);
  return res;
}

}  // namespace kinship

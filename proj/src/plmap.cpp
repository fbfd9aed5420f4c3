#include "kinship/plmap.hpp"

#include <algorithm>
#include <cstdio>

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

bool collinear(const Point& a, const Point& b, const Point& c) {
  return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

std::vector<Point> validated(std::vector<Point> raw, ErrorCode code) {
  if (raw.size() < 2) throw Error(code, "need at least two breakpoints");
  if (raw.front().x != zero()) throw Error(code, "first x must be 0");
  if (raw.back().x != one()) throw Error(code, "last x must be 1");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (i > 0 && !(raw[i - 1].x < raw[i].x)) {
      throw Error(code, "x not strictly increasing at breakpoint " + std::to_string(i));
    }
    if (raw[i].y < zero() || raw[i].y > one()) {
      throw Error(code, "y = " + raw[i].y.to_string() + " outside [0,1]");
    }
  }
  std::vector<Point> out;
  out.reserve(raw.size());
  for (auto& p : raw) {
    while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), p)) out.pop_back();
    out.push_back(std::move(p));
  }
  return out;
}

// Linear interpolation on a segment with a.x < b.x.
Rational lerp(const Point& a, const Point& b, const Rational& x) {
  return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
}

}  // namespace

PLMap::PLMap() : pts_{{zero(), zero()}, {one(), one()}} {}

PLMap::PLMap(Trusted, std::vector<Point> pts) : pts_(std::move(pts)) { cache_flags(); }

PLMap PLMap::normalize(std::vector<Point> raw) {
  return PLMap(Trusted{}, validated(std::move(raw), ErrorCode::MalformedBreakpoints));
}

PLMap make_internal(std::vector<Point> raw) {
  return PLMap(PLMap::Trusted{}, validated(std::move(raw), ErrorCode::InvariantViolation));
}

void PLMap::cache_flags() {
  Rational lo = pts_.front().y;
  Rational hi = lo;
  strict_ = true;
  int dir = 0;
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
    lo = min(lo, pts_[i + 1].y);
    hi = max(hi, pts_[i + 1].y);
    const int s = (pts_[i + 1].y - pts_[i].y).sign();
    if (s == 0) strict_ = false;
    if (dir == 0) dir = s;
    if (s != dir) monotone = false;
  }
  onto_ = lo == zero() && hi == one();
  const auto& y0 = pts_.front().y;
  const auto& y1 = pts_.back().y;
  homeo_ = strict_ && monotone &&
           ((y0 == zero() && y1 == one()) || (y0 == one() && y1 == zero()));
}

bool PLMap::is_identity() const {
  return pts_.size() == 2 && pts_[0].y == zero() && pts_[1].y == one();
}

Rational PLMap::operator()(const Rational& x) const {
  if (x < zero() || x > one()) throw Error(ErrorCode::OutOfDomain, "x = " + x.to_string());
  auto it = std::lower_bound(pts_.begin(), pts_.end(), x,
                             [](const Point& p, const Rational& v) { return p.x < v; });
  if (it->x == x) return it->y;
  return lerp(*(it - 1), *it, x);
}

std::string PLMap::to_string() const {
  std::string s;
  for (const auto& p : pts_) {
    if (!s.empty()) s += ' ';
    s += '(' + p.x.to_string() + ',' + p.y.to_string() + ')';
  }
  return s;
}

std::string PLMap::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : to_string()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PLMap compose(const PLMap& f, const PLMap& g) {
  const auto& fp = f.breakpoints();
  const auto& gp = g.breakpoints();
  std::vector<Point> out;
  out.reserve(compose_size_bound(f, g) + 1);
  auto by_x = [](const Point& p, const Rational& v) { return p.x < v; };
  for (std::size_t i = 0; i + 1 < gp.size(); ++i) {
    const Point& a = gp[i];
    const Point& b = gp[i + 1];
    out.push_back({a.x, f(a.y)});
    const int dir = (b.y - a.y).sign();
    if (dir == 0) continue;
    const Rational& lo = dir > 0 ? a.y : b.y;
    const Rational& hi = dir > 0 ? b.y : a.y;
    // f breakpoints strictly inside (lo, hi), pulled back through the segment.
    auto first = std::upper_bound(fp.begin(), fp.end(), lo,
                                  [](const Rational& v, const Point& p) { return v < p.x; });
    auto last = std::lower_bound(fp.begin(), fp.end(), hi, by_x);
    if (first >= last) continue;
    const Rational scale = (b.x - a.x) / (b.y - a.y);
    auto emit = [&](const Point& q) { out.push_back({a.x + (q.x - a.y) * scale, q.y}); };
    if (dir > 0) {
      for (auto it = first; it != last; ++it) emit(*it);
    } else {
      for (auto it = last; it != first;) emit(*--it);
    }
  }
  out.push_back({gp.back().x, f(gp.back().y)});
  return make_internal(std::move(out));
}

std::size_t compose_size_bound(const PLMap& f, const PLMap& g) {
  return g.segment_count() * f.segment_count();
}

std::vector<Interval> preimage(const PLMap& f, const Rational& y) {
  const auto& p = f.breakpoints();
  std::vector<Interval> raw;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Point& a = p[i];
    const Point& b = p[i + 1];
    if (a.y == b.y) {
      if (a.y == y) raw.push_back({a.x, b.x});
      continue;
    }
    const Rational& lo = min(a.y, b.y);
    const Rational& hi = max(a.y, b.y);
    if (y < lo || y > hi) continue;
    const Rational x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
    raw.push_back({x, x});
  }
  // Segments are visited left to right, so raw is already sorted by lo.
  std::vector<Interval> out;
  for (auto& iv : raw) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = max(out.back().hi, iv.hi);
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

bool commute(const PLMap& f, const PLMap& g) { return compose(f, g) == compose(g, f); }

PLMap inverse(const PLMap& h) {
  if (!h.is_homeomorphism()) throw Error(ErrorCode::NotHomeomorphism, "inverse of " + h.to_string());
  std::vector<Point> out;
  out.reserve(h.breakpoints().size());
  for (const auto& p : h.breakpoints()) out.push_back({p.y, p.x});
  if (out.front().x != zero()) std::reverse(out.begin(), out.end());
  return make_internal(std::move(out));
}

PLMap power(const PLMap& f, std::uint64_t n) {
  PLMap result;
  PLMap base = f;
  while (n > 0) {
    if (n & 1U) result = compose(base, result);
    n >>= 1U;
    if (n > 0) base = compose(base, base);
  }
  return result;
}

PLMap identity_map() { return PLMap(); }

PLMap tent(unsigned s) {
  if (s == 0) throw Error(ErrorCode::MalformedBreakpoints, "tent needs s >= 1");
  std::vector<Point> pts;
  for (unsigned i = 0; i <= s; ++i) {
    pts.push_back({Rational(static_cast<long>(i), static_cast<long>(s)), Rational(static_cast<long>(i % 2))});
  }
  return PLMap::normalize(std::move(pts));
}

PLMap flip_map() { return PLMap::normalize({{zero(), one()}, {one(), zero()}}); }

}  // namespace kinship

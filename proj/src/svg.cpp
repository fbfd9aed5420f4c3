#include "kinship/svg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kinship {

namespace {

constexpr double kSide = 200.0;
constexpr double kMargin = 30.0;
constexpr double kGap = 40.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels) {
  const double width = 2 * kMargin + static_cast<double>(panels.size()) * kSide +
                       static_cast<double>(panels.empty() ? 0 : panels.size() - 1) * kGap;
  const double height = 2 * kMargin + kSide + 20;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const double ox = kMargin + static_cast<double>(i) * (kSide + kGap);
    const double oy = kMargin;
    auto px = [&](const Rational& x) { return ox + x.to_double() * kSide; };
    auto py = [&](const Rational& y) { return oy + (1.0 - y.to_double()) * kSide; };
    const auto& g = panels[i].graph;
    os << "<g>\n";
    std::set<std::string> seen;
    for (const auto& s : g.segments) {
      for (const Rational* x : {&s.a.x, &s.b.x}) {
        if (*x == Rational(0) || *x == Rational(1) || !seen.insert(x->to_string()).second) continue;
        os << "<line x1=\"" << px(*x) << "\" y1=\"" << oy << "\" x2=\"" << px(*x) << "\" y2=\"" << oy + kSide
           << "\" stroke=\"#999\" stroke-width=\"0.5\" stroke-dasharray=\"3,3\"/>\n";
      }
    }
    os << "<line x1=\"" << ox << "\" y1=\"" << oy + kSide << "\" x2=\"" << ox + kSide << "\" y2=\"" << oy
       << "\" stroke=\"#999\" stroke-width=\"0.7\" stroke-dasharray=\"4,3\"/>\n";
    for (const auto& b : g.boxes) {
      os << "<rect x=\"" << px(b.x0) << "\" y=\"" << py(b.y1) << "\" width=\"" << px(b.x1) - px(b.x0)
         << "\" height=\"" << py(b.y0) - py(b.y1) << "\" fill=\"#333\" fill-opacity=\"0.4\"/>\n";
    }
    for (const auto& s : g.segments) {
      if (s.a == s.b) {
        os << "<circle cx=\"" << px(s.a.x) << "\" cy=\"" << py(s.a.y) << "\" r=\"1.5\" fill=\"black\"/>\n";
      } else {
        os << "<line x1=\"" << px(s.a.x) << "\" y1=\"" << py(s.a.y) << "\" x2=\"" << px(s.b.x) << "\" y2=\""
           << py(s.b.y) << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
      }
    }
    os << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << kSide << "\" height=\"" << kSide
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
       << "<text x=\"" << ox + kSide / 2 << "\" y=\"" << oy + kSide + 18
       << "\" font-family=\"serif\" font-size=\"13\" text-anchor=\"middle\">" << escape(panels[i].title)
       << "</text>\n</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace kinship

#include "kinship/io.hpp"

#include <cmath>
#include <fstream>

#include "kinship/errors.hpp"

namespace kinship {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

PLMap parse_map(std::string_view text) {
  std::vector<Point> pts;
  std::size_t line_no = 0;
  std::size_t last_line = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream is{std::string(line)};
    std::string xs, ys, extra;
    if (!(is >> xs >> ys) || (is >> extra)) {
      throw Error(ErrorCode::Syntax, "expected two rationals, got '" + std::string(line) + "'", line_no);
    }
    try {
      pts.push_back({Rational::parse(xs), Rational::parse(ys)});
    } catch (const Error& e) {
      throw Error(ErrorCode::Syntax, e.what(), line_no);
    }
    if (pts.size() >= 2 && !(pts[pts.size() - 2].x < pts.back().x)) {
      throw Error(ErrorCode::Syntax, "x not strictly increasing", line_no);
    }
    if (pts.size() == 1 && pts.front().x != Rational(0)) {
      throw Error(ErrorCode::Syntax, "first breakpoint must have x = 0", line_no);
    }
    last_line = line_no;
  }
  if (pts.empty()) throw Error(ErrorCode::Syntax, "no breakpoints", line_no);
  if (pts.back().x != Rational(1)) {
    throw Error(ErrorCode::Syntax, "last breakpoint must have x = 1", last_line);
  }
  try {
    return PLMap::normalize(std::move(pts));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvariantViolation, e.what());
  }
}

PLMap parse_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "read failed for " + path);
  return parse_map(ss.str());
}

std::string serialize_map(const PLMap& f) {
  std::string out;
  for (const auto& p : f.breakpoints()) out += p.x.to_string() + ' ' + p.y.to_string() + '\n';
  return out;
}

nlohmann::json entropy_json(const PLMap& f, const EntropyEstimate& e) {
  nlohmann::json laps = nlohmann::json::array();
  for (const auto& [n, c] : e.lap_counts) laps.push_back({{"n", n}, {"laps", c}});
  return {{"map", f.digest()},
          {"lap_counts", laps},
          {"ratio_estimates", e.ratio_estimates},
          {"raw_estimates", e.raw_estimates},
          {"final_value", e.final_value},
          {"converged", e.converged},
          {"tolerance", e.tolerance},
          {"budget_exhausted", e.budget_exhausted}};
}

std::string entropy_text(const EntropyEstimate& e, bool bits) {
  const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
  std::ostringstream os;
  os << std::setw(6) << "n" << "  " << std::setw(12) << "laps" << "  " << std::setw(12) << "ratio" << "  "
     << std::setw(12) << "raw" << '\n';
  for (std::size_t i = 0; i < e.lap_counts.size(); ++i) {
    os << std::setw(6) << e.lap_counts[i].first << "  " << std::setw(12) << e.lap_counts[i].second << "  ";
    if (i > 0) {
      os << std::setw(12) << std::fixed << std::setprecision(6) << e.ratio_estimates[i - 1] * scale;
    } else {
      os << std::setw(12) << "-";
    }
    os << "  " << std::setw(12) << std::fixed << std::setprecision(6) << e.raw_estimates[i] * scale << '\n';
  }
  os << "entropy " << std::fixed << std::setprecision(6) << e.final_value * scale << (bits ? " bits" : " nats")
     << " +/- " << e.tolerance * scale << (e.converged ? " (converged)" : " (not converged)")
     << (e.budget_exhausted ? " [segment budget exhausted]" : "") << '\n';
  return os.str();
}

nlohmann::json campaign_json(const CampaignReport& r) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : r.lemma_suites) {
    suites.push_back({{"name", s.name},
                      {"cases", s.cases},
                      {"failures", s.failures},
                      {"exhaustive", s.exhaustive},
                      {"failure_examples", s.failure_examples}});
  }
  nlohmann::json pl = nlohmann::json::array();
  for (const auto& c : r.pl_cases) {
    pl.push_back({{"label", c.label},
                  {"verdict", c.verdict},
                  {"ground_truth", c.ground_truth},
                  {"certificate_ok", c.certificate_ok},
                  {"discrepancy", c.discrepancy},
                  {"detail", c.detail}});
  }
  return {{"k", r.k},
          {"exp_bound", r.exp_bound},
          {"totals",
           {{"maps_enumerated", r.maps_enumerated},
            {"onto_maps", r.onto_maps},
            {"pairs_enumerated", r.pairs_enumerated},
            {"commuting_pairs", r.commuting_pairs},
            {"non_bijective_commuting_pairs", r.non_bijective_commuting_pairs},
            {"kin_pairs", r.kin_pairs},
            {"cousin_pairs", r.cousin_pairs},
            {"algorithm_runs", r.algorithm_runs}}},
          {"lemma_suites", suites},
          {"pl_cases", pl},
          {"discrepancies", r.discrepancies},
          {"clean", r.clean()},
          {"wall_seconds", r.wall_seconds}};
}

std::string campaign_text(const CampaignReport& r) {
  std::ostringstream os;
  os << "finite oracle campaign k=" << r.k << " exp_bound=" << r.exp_bound << '\n'
     << "  maps enumerated           " << r.maps_enumerated << '\n'
     << "  onto maps                 " << r.onto_maps << '\n'
     << "  onto pairs                " << r.pairs_enumerated << '\n'
     << "  commuting pairs           " << r.commuting_pairs << '\n'
     << "  non-bijective commuting   " << r.non_bijective_commuting_pairs << '\n'
     << "  kin pairs                 " << r.kin_pairs << '\n'
     << "  cousin pairs              " << r.cousin_pairs << '\n'
     << "  PL algorithm runs         " << r.algorithm_runs << '\n'
     << "lemma suites\n";
  for (const auto& s : r.lemma_suites) {
    os << "  " << std::left << std::setw(30) << s.name << std::right << std::setw(8) << s.cases << " cases  "
       << s.failures << " failures" << (s.exhaustive ? "" : " (sampled)") << '\n';
  }
  os << "discrepancies " << r.discrepancies.size() << '\n';
  for (const auto& d : r.discrepancies) os << "  " << d << '\n';
  os << "wall time " << std::fixed << std::setprecision(2) << r.wall_seconds << " s\n";
  return os.str();
}

}  // namespace kinship

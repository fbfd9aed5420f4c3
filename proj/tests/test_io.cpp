#include <cmath>
#include <fstream>

#include "doctest.h"
#include "kinship/io.hpp"
#include "kinship/svg.hpp"
#include "kinship/plrelation.hpp"
#include "support.hpp"

using namespace kinship;
using namespace testing_support;

namespace {

std::string fixture(const std::string& name) { return std::string(KINSHIP_FIXTURES) + "/" + name; }

std::optional<int> error_line(std::string_view text) {
  try {
    (void)parse_map(text);
  } catch (const Error& e) {
    return e.line() ? std::optional<int>(static_cast<int>(*e.line())) : std::optional<int>(-1);
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("parse map text") {
  CHECK(parse_map("0 0 \n 1/2 1 \n 1 0") == tent(2));
  CHECK(parse_map("# comment\n\n0 0\n  # indented comment\n1 1\n").is_identity());
  CHECK(parse_map("0\t1\n1\t0\n") == flip_map());
  CHECK(parse_map("0 0\r\n1/2 1\r\n1 0\r\n") == tent(2));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(code_of([] { (void)parse_map("0 0\n1/2 1\n"); }) == ErrorCode::Syntax);
  CHECK(error_line("0 0\n1/2 1\n") == 2);
  CHECK(error_line("0 0\n1/2 abc\n1 1\n") == 2);
  CHECK(error_line("0 0\n1/2\n1 1\n") == 2);
  CHECK(error_line("0 0\n1/2 1 3\n1 1\n") == 2);
  CHECK(error_line("# c\n0 0\n2/3 1\n1/3 0\n1 1\n") == 4);
  CHECK(error_line("1/3 0\n1 1\n") == 1);
  CHECK(error_line("0 0\n1/0 1\n1 1\n") == 2);
  CHECK(code_of([] { (void)parse_map(""); }) == ErrorCode::Syntax);
  // Geometry outside the unit square is a validation error.
  CHECK(code_of([] { (void)parse_map("0 0\n1/2 3/2\n1 1\n"); }) == ErrorCode::InvariantViolation);
}

TEST_CASE("fixture files") {
  CHECK(parse_map_file(fixture("T2.map")) == tent(2));
  CHECK(parse_map_file(fixture("T3.map")) == tent(3));
  CHECK(parse_map_file(fixture("T6.map")) == tent(6));
  CHECK(parse_map_file(fixture("flip.map")) == flip_map());
  CHECK(parse_map_file(fixture("id.map")).is_identity());
  const PLMap f8 = parse_map_file(fixture("plateau_f.map"));
  CHECK(f8(Rational(1, 3)) == Rational(1, 2));
  CHECK(f8(Rational(1, 2)) == Rational(1, 2));
  CHECK(f8(Rational(2, 3)) == Rational(1, 2));
  CHECK_FALSE(f8.is_strictly_piecewise_monotone());
  CHECK(code_of([] { (void)parse_map_file(fixture("missing_end.map")); }) == ErrorCode::Syntax);
  CHECK(code_of([] { (void)parse_map_file(fixture("bad_token.map")); }) == ErrorCode::Syntax);
  CHECK(code_of([] { (void)parse_map_file(fixture("out_of_range.map")); }) == ErrorCode::InvariantViolation);
  CHECK(code_of([] { (void)parse_map_file(fixture("does_not_exist.map")); }) == ErrorCode::Io);
}

TEST_CASE("serialize round trip") {
  std::mt19937 rng(53);
  for (int t = 0; t < 100; ++t) {
    const PLMap f = random_map(rng, true);
    CHECK(parse_map(serialize_map(f)) == f);
  }
  for (unsigned s = 1; s <= 7; ++s) CHECK(parse_map(serialize_map(power(tent(s), 2))) == power(tent(s), 2));
}

TEST_CASE("trace table and structured trace") {
  const auto v = run_algorithm(tent(6), tent(3));
  const std::string table = trace_table(v.trace);
  CHECK(table.find("lambda") != std::string::npos);
  CHECK(table.find("(0,0) (1/2,1) (1,0)") != std::string::npos);
  CHECK(table.find("LeftReduced") != std::string::npos);
  CHECK(verdict_headline(v) == "NOT KIN (stuck at step 2)");

  const auto j = verdict_json(v);
  CHECK(j["variant"] == "standard");
  CHECK(j["applicable"] == true);
  CHECK(j["verdict"] == "not_kin");
  CHECK(j["stuck_step"] == 2);
  REQUIRE(j["trace"].size() == 2);
  for (const char* key : {"step", "lambda", "rho", "lf", "lg", "rg", "rf", "move"}) {
    CAPTURE(key);
    CHECK(j["trace"][1].contains(key));
  }
  CHECK(j["trace"][1]["lambda"] == tent(2).to_string());
  CHECK(j["trace"][1]["lg"] == -1);
  // Long maps are labelled by digest in the table.
  const PLMap big = power(tent(2), 5);
  CHECK(map_label(big) == "#" + big.digest());
}

TEST_CASE("verdict headlines") {
  const PLMap psi = pl({{0, 0}, {Rational(1, 2), 1}, {1, Rational(1, 4)}});
  const auto c = run_algorithm(power(psi, 5), power(psi, 3));
  CHECK(verdict_headline(c) == "COUSINS (n=5, m=3)");
  CHECK(verdict_json(c)["certificate"]["ancestor"] == psi.to_string());
  const PLMap f8f = parse_map_file(fixture("plateau_f.map"));
  const PLMap f8g = parse_map_file(fixture("plateau_g.map"));
  const auto inc = run_algorithm(f8f, f8g, {.cap = 3, .force = true});
  CHECK(verdict_headline(inc) == "INCONCLUSIVE (cap 3 reached) [not applicable: inputs do not commute]");
  CHECK(verdict_json(inc)["applicable"] == false);
  const auto k = run_algorithm(tent(3), compose(flip_map(), tent(3)));
  const auto kj = verdict_json(k);
  CHECK(kj["verdict"] == "kin");
  for (const char* key : {"h", "phi", "a", "b", "n", "m"}) CHECK(kj["certificate"].contains(key));
}

TEST_CASE("entropy report") {
  const auto e = entropy_estimate(tent(2));
  const auto j = entropy_json(tent(2), e);
  CHECK(j["map"] == tent(2).digest());
  CHECK(j["converged"] == true);
  CHECK(std::abs(j["final_value"].get<double>() - std::log(2.0)) < 1e-12);
  CHECK(j["lap_counts"][0]["laps"] == 2);
  CHECK(entropy_text(e, true).find("1.000000") != std::string::npos);
  CHECK(entropy_text(e, false).find("0.693147") != std::string::npos);
}

TEST_CASE("campaign report") {
  const auto r = oracle_campaign(2, 2, {.include_pl_family = false});
  const auto j = campaign_json(r);
  CHECK(j["k"] == 2);
  CHECK(j["totals"]["commuting_pairs"] == 4);
  CHECK(j["discrepancies"].empty());
  CHECK(j["clean"] == true);
  CHECK(campaign_text(r).find("discrepancies 0") != std::string::npos);
}

TEST_CASE("svg output") {
  const std::string svg = render_svg({{"T2", graph(tent(2))}, {"T3", graph(tent(3))}, {"T6", graph(tent(6))}});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::size_t rects = 0;
  for (std::size_t p = svg.find("<rect"); p != std::string::npos; p = svg.find("<rect", p + 1)) ++rects;
  CHECK(rects >= 3);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find(">T6<") != std::string::npos);
  const std::string rel = render_svg({{"T2 o T3^-1", graph_over_inverse(tent(2), tent(3))}});
  const bool drawn = rel.find("<polyline") != std::string::npos || rel.find("<line") != std::string::npos;
  CHECK(drawn);
}

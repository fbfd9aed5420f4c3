// kinship: command-line front end for the kinship library.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kinship/entropy.hpp"
#include "kinship/errors.hpp"
#include "kinship/homeo.hpp"
#include "kinship/io.hpp"
#include "kinship/kinship.hpp"
#include "kinship/oracle.hpp"
#include "kinship/plrelation.hpp"
#include "kinship/svg.hpp"

namespace {

using kinship::Error;
using kinship::ErrorCode;
using nlohmann::json;

enum Exit : int {
  kDefinite = 0,
  kDiscrepancy = 1,
  kInconclusive = 2,
  kInputError = 3,
  kPrecondition = 4,
  kBudget = 5,
  kInternal = 6,
};

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::Io:
    case ErrorCode::Syntax:
    case ErrorCode::MalformedBreakpoints:
    case ErrorCode::OutOfDomain:
      return kInputError;
    case ErrorCode::NotOnto:
    case ErrorCode::NotCommuting:
    case ErrorCode::InputIsHomeomorphism:
    case ErrorCode::InputsEqual:
    case ErrorCode::NotHomeomorphism:
    case ErrorCode::HasConstantSegment:
    case ErrorCode::SizeTooLarge:
      return kPrecondition;
    case ErrorCode::BudgetExceeded:
      return kBudget;
    case ErrorCode::CertificateVerificationFailed:
    case ErrorCode::InvariantViolation:
    case ErrorCode::Internal:
      return kInternal;
  }
  return kInternal;
}

struct Config {
  std::vector<std::string> inputs;
  std::size_t cap = 0;  // 0: default
  std::size_t n_max = kinship::EntropyOptions{}.n_max;
  double tol = kinship::EntropyOptions{}.tol;
  bool force = false;
  std::string format = "text";
  std::string output;
  bool bits = false;
  bool relation = false;
  std::size_t k = 3;
  std::uint32_t exp_bound = 3;
  unsigned threads = 0;
  std::uint64_t a = 0, b = 0, n = 1, m = 1;
};

bool structured(const Config& c) { return c.format == "structured"; }

void emit(const Config& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + c.output);
  out << text;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + c.output);
}

std::size_t segment_budget() {
  if (const char* env = std::getenv("KINSHIP_MEM_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw Error(ErrorCode::Syntax, std::string("KINSHIP_MEM_CAP must be a positive integer, got '") + env + "'");
    }
    return static_cast<std::size_t>(v);
  }
  return kinship::kDefaultSegmentBudget;
}

kinship::AlgorithmOptions algorithm_options(const Config& c) {
  kinship::AlgorithmOptions o;
  if (c.cap > 0) o.cap = c.cap;
  o.force = c.force;
  return o;
}

template <class M>
std::string certificate_text(const kinship::KinVerdict<M>& v) {
  std::ostringstream os;
  if (const auto* co = std::get_if<kinship::Cousins<M>>(&v.outcome)) {
    os << "ancestor " << co->ancestor.to_string() << '\n'
       << "ancestor^" << co->n << " = f, ancestor^" << co->m << " = g (verified)\n";
  } else if (const auto* k = std::get_if<kinship::Kin<M>>(&v.outcome)) {
    os << "h   " << k->h.to_string() << '\n'
       << "phi " << k->phi.to_string() << '\n'
       << "h^" << k->a << " o phi^" << k->n << " = f, h^" << k->b << " o phi^" << k->m
       << " = g, h o phi = phi o h (verified)\n";
  }
  return os.str();
}

// A map file that parses but fails geometric validation is still bad input,
// not an internal fault.
struct BadInput {
  Error error;
};

kinship::PLMap load_map(const std::string& path) {
  try {
    return kinship::parse_map_file(path);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvariantViolation) throw BadInput{e};
    throw;
  }
}

int verdict_exit(const kinship::KinVerdict<kinship::PLMap>& v) {
  return v.is_inconclusive() ? kInconclusive : kDefinite;
}

int run_kin(const Config& c, bool cousins_only, bool homeo) {
  const auto f = load_map(c.inputs.at(0));
  const auto g = load_map(c.inputs.at(1));
  const auto v = homeo ? kinship::run_homeo_algorithm(f, g, algorithm_options(c))
                       : kinship::run_algorithm(f, g, algorithm_options(c));
  std::string headline = kinship::verdict_headline(v);
  if (cousins_only && !homeo) {
    if (std::holds_alternative<kinship::Kin<kinship::PLMap>>(v.outcome)) {
      headline = "NOT COUSINS (kin through a nontrivial homeomorphism)";
    } else if (const auto* nk = std::get_if<kinship::NotKin>(&v.outcome)) {
      headline = "NOT COUSINS (stuck at step " + std::to_string(nk->stuck_step) + ")";
      if (!v.applicable) headline += " [not applicable: inputs do not commute]";
    }
  }
  if (structured(c)) {
    json j = kinship::verdict_json(v);
    j["headline"] = headline;
    if (cousins_only) j["mode"] = "cousins";
    emit(c, j.dump(2) + "\n");
  } else {
    emit(c, headline + "\n\n" + kinship::trace_table(v.trace) + "\n" + certificate_text(v));
  }
  return verdict_exit(v);
}

int run_check(const Config& c) {
  const auto f = load_map(c.inputs.at(0));
  const auto g = load_map(c.inputs.at(1));
  const bool ok = kinship::commute(f, g);
  if (structured(c)) {
    emit(c, json{{"commute", ok}, {"f", f.digest()}, {"g", g.digest()}}.dump(2) + "\n");
  } else {
    emit(c, ok ? "COMMUTE\n" : "DO NOT COMMUTE\n");
  }
  return kDefinite;
}

kinship::EntropyOptions entropy_options(const Config& c) {
  kinship::EntropyOptions o;
  o.n_max = c.n_max;
  o.tol = c.tol;
  o.segment_budget = segment_budget();
  return o;
}

int run_entropy(const Config& c) {
  const auto f = load_map(c.inputs.at(0));
  const auto e = kinship::entropy_estimate(f, entropy_options(c));
  if (structured(c)) {
    json j = kinship::entropy_json(f, e);
    j["unit"] = c.bits ? "bits" : "nats";
    if (c.bits) j["final_value_bits"] = e.final_value / std::log(2.0);
    emit(c, j.dump(2) + "\n");
  } else {
    emit(c, kinship::entropy_text(e, c.bits));
  }
  return e.converged ? kDefinite : kInconclusive;
}

int run_diagonal(const Config& c) {
  const auto phi = load_map(c.inputs.at(0));
  const auto h = load_map(c.inputs.at(1));
  const auto d = kinship::diagonal_entropy(phi, h, c.a, c.b, c.n, c.m, entropy_options(c));
  const double scale = c.bits ? 1.0 / std::log(2.0) : 1.0;
  const bool converged = d.estimate.converged && (!d.phi_estimate || d.phi_estimate->converged);
  if (structured(c)) {
    json j{{"reduced_map", d.reduced.to_string()},
           {"estimate", kinship::entropy_json(d.reduced, d.estimate)},
           {"closed_form", d.closed_form * scale},
           {"unit", c.bits ? "bits" : "nats"},
           {"agree", std::abs(d.estimate.final_value - d.closed_form) <= 2 * c.tol}};
    if (d.phi_estimate) j["phi_estimate"] = kinship::entropy_json(phi, *d.phi_estimate);
    emit(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "reduced map " << kinship::map_label(d.reduced) << '\n'
       << kinship::entropy_text(d.estimate, c.bits) << std::fixed << std::setprecision(6)
       << "closed form |m-n|*Ent(phi) = " << d.closed_form * scale << (c.bits ? " bits" : " nats") << '\n';
    emit(c, os.str());
  }
  return converged ? kDefinite : kInconclusive;
}

int run_oracle(const Config& c) {
  kinship::CampaignOptions o;
  o.threads = c.threads;
  const auto r = kinship::oracle_campaign(c.k, c.exp_bound, o);
  emit(c, structured(c) ? kinship::campaign_json(r).dump(2) + "\n" : kinship::campaign_text(r));
  return r.clean() ? kDefinite : kDiscrepancy;
}

int run_plot(const Config& c) {
  if (c.output.empty()) throw Error(ErrorCode::Io, "plot needs -o PATH");
  std::vector<kinship::PlotPanel> panels;
  std::vector<kinship::PLMap> maps;
  for (const auto& path : c.inputs) {
    maps.push_back(load_map(path));
    std::string title = path.substr(path.find_last_of('/') + 1);
    if (const auto dot = title.rfind('.'); dot != std::string::npos) title = title.substr(0, dot);
    panels.push_back({title, kinship::graph(maps.back())});
  }
  if (c.relation) {
    if (maps.size() != 2) throw Error(ErrorCode::Io, "--relation needs exactly two maps");
    panels = {{panels[0].title + " o " + panels[1].title + "^-1", kinship::graph_over_inverse(maps[0], maps[1])}};
  }
  emit(c, kinship::render_svg(panels));
  return kDefinite;
}

void report_error(const Config& cfg, const Error& e) {
  if (structured(cfg)) {
    json j{{"error", std::string(kinship::to_string(e.code()))}, {"message", e.what()}};
    if (e.line()) j["line"] = *e.line();
    std::cerr << j.dump() << '\n';
  } else {
    std::cerr << "error: " << e.what() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide kinship of commuting interval maps and compute lap-count entropy"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("-o,--output", cfg.output, "Write output to PATH");
  };
  auto two_maps = [&](CLI::App* sub) {
    sub->add_option("maps", cfg.inputs, "Map files (f then g)")->required()->expected(2);
  };
  auto algo = [&](CLI::App* sub) {
    sub->add_option("--cap", cfg.cap, "Maximum trace rows")->check(CLI::PositiveNumber);
    sub->add_flag("--force", cfg.force, "Run on non-commuting inputs");
  };
  auto ent = [&](CLI::App* sub) {
    sub->add_option("--n-max", cfg.n_max, "Maximum iterate")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "Convergence tolerance")->check(CLI::PositiveNumber);
    sub->add_flag("--bits", cfg.bits, "Report entropy in bits");
  };

  auto* check = app.add_subcommand("check", "Test whether two maps commute");
  two_maps(check);
  common(check);
  auto* kin = app.add_subcommand("kin", "Run the kinship algorithm with trace and certificate");
  two_maps(kin);
  common(kin);
  algo(kin);
  auto* cousins = app.add_subcommand("cousins", "Decide whether two maps are cousins");
  two_maps(cousins);
  common(cousins);
  algo(cousins);
  auto* homeo = app.add_subcommand("homeo-kin", "Cousin detection for interval homeomorphisms");
  two_maps(homeo);
  common(homeo);
  algo(homeo);
  auto* entropy = app.add_subcommand("entropy", "Lap-count entropy estimate");
  entropy->add_option("map", cfg.inputs, "Map file")->required()->expected(1);
  common(entropy);
  ent(entropy);
  auto* diag = app.add_subcommand("diagonal-entropy", "Entropy of the reduced diagonal map");
  diag->add_option("maps", cfg.inputs, "phi and h map files")->required()->expected(2);
  diag->add_option("--a", cfg.a, "Exponent of h in f");
  diag->add_option("--b", cfg.b, "Exponent of h in g");
  diag->add_option("--n", cfg.n, "Exponent of phi in f")->check(CLI::PositiveNumber);
  diag->add_option("--m", cfg.m, "Exponent of phi in g")->check(CLI::PositiveNumber);
  common(diag);
  ent(diag);
  auto* oracle = app.add_subcommand("oracle", "Exhaustive finite-set campaign");
  oracle->add_option("--k", cfg.k, "Set size")->check(CLI::Range(1, 4));
  oracle->add_option("--exp-bound", cfg.exp_bound, "Exponent bound")->check(CLI::PositiveNumber);
  oracle->add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
  common(oracle);
  auto* plot = app.add_subcommand("plot", "Render maps as SVG");
  plot->add_option("maps", cfg.inputs, "Map files")->required();
  plot->add_flag("--relation", cfg.relation, "Plot the first map over the inverse of the second");
  common(plot);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 64;
  }

  try {
    if (*check) return run_check(cfg);
    if (*kin) return run_kin(cfg, false, false);
    if (*cousins) return run_kin(cfg, true, false);
    if (*homeo) return run_kin(cfg, false, true);
    if (*entropy) return run_entropy(cfg);
    if (*diag) return run_diagonal(cfg);
    if (*oracle) return run_oracle(cfg);
    if (*plot) return run_plot(cfg);
  } catch (const BadInput& b) {
    report_error(cfg, b.error);
    return kInputError;
  } catch (const Error& e) {
    report_error(cfg, e);
    return exit_for(e.code());
  }
  return kInternal;
}

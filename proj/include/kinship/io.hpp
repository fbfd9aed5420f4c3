#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "json.hpp"
#include "kinship/entropy.hpp"
#include "kinship/kinship.hpp"
#include "kinship/oracle.hpp"
#include "kinship/plmap.hpp"

namespace kinship {

/// Map file text: `#` comment lines and one "x y" breakpoint per line.
/// Throws Error(Syntax, line) or Error(InvariantViolation) for bad geometry.
[[nodiscard]] PLMap parse_map(std::string_view text);
/// Throws Error(Io) when the file cannot be read.
[[nodiscard]] PLMap parse_map_file(const std::string& path);
[[nodiscard]] std::string serialize_map(const PLMap& f);

/// Inline breakpoints when short, otherwise "#" and the digest.
template <Endomap M>
[[nodiscard]] std::string map_label(const M& f, std::size_t max_inline = 48) {
  std::string s = f.to_string();
  if (s.size() <= max_inline) return s;
  return "#" + f.digest();
}

template <Endomap M>
[[nodiscard]] std::string trace_table(const AlgorithmTrace<M>& trace, std::size_t max_inline = 48) {
  std::vector<std::array<std::string, 8>> rows;
  rows.push_back({"i", "lambda", "rho", "lf", "lg", "rg", "rf", "move"});
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    rows.push_back({std::to_string(i + 1), map_label(s.lambda, max_inline), map_label(s.rho, max_inline),
                    std::to_string(s.ledger.lf), std::to_string(s.ledger.lg), std::to_string(s.ledger.rg),
                    std::to_string(s.ledger.rf), std::string(to_string(s.move))});
  }
  std::array<std::size_t, 8> width{};
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream os;
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      const bool numeric = c >= 3 && c <= 6;
      if (c + 1 == r.size()) {
        os << r[c];
        break;
      }
      os << (numeric ? std::right : std::left) << std::setw(static_cast<int>(width[c])) << r[c] << "  ";
    }
    os << '\n';
  }
  return os.str();
}

template <Endomap M>
[[nodiscard]] nlohmann::json trace_json(const AlgorithmTrace<M>& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    steps.push_back({{"step", i + 1},
                     {"lambda", s.lambda.to_string()},
                     {"rho", s.rho.to_string()},
                     {"lf", s.ledger.lf},
                     {"lg", s.ledger.lg},
                     {"rg", s.ledger.rg},
                     {"rf", s.ledger.rf},
                     {"move", to_string(s.move)}});
  }
  return steps;
}

/// One-line summary such as "NOT KIN (stuck at step 2)".
template <Endomap M>
[[nodiscard]] std::string verdict_headline(const KinVerdict<M>& v) {
  std::string s = std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Cousins<M>>) {
          return "COUSINS (n=" + std::to_string(o.n) + ", m=" + std::to_string(o.m) + ")";
        } else if constexpr (std::is_same_v<T, Kin<M>>) {
          return "KIN (a=" + std::to_string(o.a) + ", b=" + std::to_string(o.b) + ", n=" + std::to_string(o.n) +
                 ", m=" + std::to_string(o.m) + ")";
        } else if constexpr (std::is_same_v<T, NotKin>) {
          return "NOT KIN (stuck at step " + std::to_string(o.stuck_step) + ")";
        } else if constexpr (std::is_same_v<T, NotCousins>) {
          return "NOT COUSINS (stuck at step " + std::to_string(o.stuck_step) + ")";
        } else {
          return "INCONCLUSIVE (cap " + std::to_string(o.cap) + " reached)";
        }
      },
      v.outcome);
  if (!v.applicable) s += " [not applicable: inputs do not commute]";
  return s;
}

template <Endomap M>
[[nodiscard]] nlohmann::json verdict_json(const KinVerdict<M>& v) {
  nlohmann::json j;
  j["variant"] = v.variant;
  j["applicable"] = v.applicable;
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Cousins<M>>) {
          j["verdict"] = "cousins";
          j["certificate"] = {{"ancestor", o.ancestor.to_string()}, {"n", o.n}, {"m", o.m}};
        } else if constexpr (std::is_same_v<T, Kin<M>>) {
          j["verdict"] = "kin";
          j["certificate"] = {{"h", o.h.to_string()}, {"phi", o.phi.to_string()}, {"a", o.a},
                              {"b", o.b},           {"n", o.n},                  {"m", o.m}};
        } else if constexpr (std::is_same_v<T, NotKin>) {
          j["verdict"] = "not_kin";
          j["stuck_step"] = o.stuck_step;
        } else if constexpr (std::is_same_v<T, NotCousins>) {
          j["verdict"] = "not_cousins";
          j["stuck_step"] = o.stuck_step;
        } else {
          j["verdict"] = "inconclusive";
          j["cap"] = o.cap;
        }
      },
      v.outcome);
  j["trace"] = trace_json(v.trace);
  return j;
}

[[nodiscard]] nlohmann::json entropy_json(const PLMap& f, const EntropyEstimate& e);
[[nodiscard]] std::string entropy_text(const EntropyEstimate& e, bool bits);

[[nodiscard]] nlohmann::json campaign_json(const CampaignReport& r);
[[nodiscard]] std::string campaign_text(const CampaignReport& r);

}  // namespace kinship

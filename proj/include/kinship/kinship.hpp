#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kinship/endomap.hpp"
#include "kinship/errors.hpp"
#include "kinship/plmap.hpp"

namespace kinship {

/// Exponents with λ = f^lf ∘ g^lg and ρ = g^rg ∘ f^rf.
struct ExponentLedger {
  std::int64_t lf = 1;
  std::int64_t lg = 0;
  std::int64_t rf = 0;
  std::int64_t rg = 1;

  /// λ ← λ∘ρ⁻¹.
  void reduce_left();
  /// ρ ← ρ∘λ⁻¹.
  void reduce_right();
  [[nodiscard]] bool invariants_hold() const;
  /// Throws Error(InvariantViolation) when invariants_hold() is false.
  void check() const;

  friend bool operator==(const ExponentLedger&, const ExponentLedger&) = default;
};

enum class Move { LeftReduced, RightReduced, Terminal };

std::string_view to_string(Move m) noexcept;

template <Endomap M>
struct TraceStep {
  M lambda;
  M rho;
  ExponentLedger ledger;
  Move move = Move::Terminal;
};

template <Endomap M>
using AlgorithmTrace = std::vector<TraceStep<M>>;

namespace succ {
template <Endomap M> struct LeftSucc { M collapsed; };
template <Endomap M> struct RightSucc { M collapsed; };
struct Equal {};
template <Endomap M> struct MutualHomeo { M h; };
struct Neither {};
}  // namespace succ

template <Endomap M>
using SuccResult = std::variant<succ::LeftSucc<M>, succ::RightSucc<M>, succ::Equal,
                                succ::MutualHomeo<M>, succ::Neither>;

template <Endomap M>
struct Cousins {
  M ancestor;
  std::uint64_t n = 0;  // ancestorⁿ = f
  std::uint64_t m = 0;  // ancestorᵐ = g
};

template <Endomap M>
struct Kin {
  M h;
  M phi;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t n = 0;  // hᵃ∘phiⁿ = f
  std::uint64_t m = 0;  // h^b∘phiᵐ = g
};

struct NotKin {
  std::size_t stuck_step = 0;
};

/// Homeomorphism variant only.
struct NotCousins {
  std::size_t stuck_step = 0;
};

struct Inconclusive {
  std::size_t cap = 0;
};

template <Endomap M>
using Outcome = std::variant<Inconclusive, Cousins<M>, Kin<M>, NotKin, NotCousins>;

template <Endomap M>
struct KinVerdict {
  Outcome<M> outcome;
  AlgorithmTrace<M> trace;
  /// False when the inputs do not commute and the run was forced.
  bool applicable = true;
  /// "standard" or "homeo".
  std::string variant = "standard";

  [[nodiscard]] bool is_cousins() const { return std::holds_alternative<Cousins<M>>(outcome); }
  [[nodiscard]] bool is_kin() const { return std::holds_alternative<Kin<M>>(outcome) || is_cousins(); }
  [[nodiscard]] bool is_inconclusive() const { return std::holds_alternative<Inconclusive>(outcome); }
};

enum class Mutation { None, SkipLedgerUpdate };

struct AlgorithmOptions {
  /// Maximum number of trace rows; default_cap(f, g) when absent.
  std::optional<std::size_t> cap;
  bool force = false;
  /// Test hook for harness mutation testing.
  Mutation mutation = Mutation::None;
};

/// Subtraction Euclid on (n, m) until the pair is equal.
[[nodiscard]] std::vector<std::pair<std::uint64_t, std::uint64_t>> int_euclid_trace(std::uint64_t n,
                                                                                   std::uint64_t m);

/// (ã, b̃) with alpha·ã + beta·b̃ = 1, ã < 0 < b̃ and |ã| minimal.
/// Requires gcd(alpha, beta) = 1.
[[nodiscard]] std::pair<std::int64_t, std::int64_t> bezout(std::int64_t alpha, std::int64_t beta);

[[nodiscard]] std::optional<PLMap> collapse_over_inverse(const PLMap& a, const PLMap& b);
[[nodiscard]] inline PLMap identity_like(const PLMap&) { return identity_map(); }
/// max(C(f), C(g)) + 1 for strictly piecewise-monotone inputs, else 64.
[[nodiscard]] std::size_t default_cap(const PLMap& f, const PLMap& g);

inline constexpr std::size_t kFallbackCap = 64;

template <Endomap M>
[[nodiscard]] SuccResult<M> succ_compare(const M& lam, const M& rho) {
  if (!lam.is_onto() || !rho.is_onto()) throw Error(ErrorCode::NotOnto, "succ_compare needs onto maps");
  if (lam == rho) return succ::Equal{};
  if (auto a = collapse_over_inverse(lam, rho)) {
    if (a->is_homeomorphism()) return succ::MutualHomeo<M>{std::move(*a)};
    return succ::LeftSucc<M>{std::move(*a)};
  }
  if (auto b = collapse_over_inverse(rho, lam)) return succ::RightSucc<M>{std::move(*b)};
  return succ::Neither{};
}

/// Exact recomposition check of a Cousins or Kin outcome.
template <Endomap M>
[[nodiscard]] bool verify_certificate(const M& f, const M& g, const Outcome<M>& v) {
  if (const auto* c = std::get_if<Cousins<M>>(&v)) {
    if (c->n == 0 || c->m == 0) return false;
    return endo_power(c->ancestor, c->n) == f && endo_power(c->ancestor, c->m) == g;
  }
  if (const auto* k = std::get_if<Kin<M>>(&v)) {
    if (k->n == 0 || k->m == 0 || !k->h.is_homeomorphism()) return false;
    if (!(compose(k->h, k->phi) == compose(k->phi, k->h))) return false;
    return compose(endo_power(k->h, k->a), endo_power(k->phi, k->n)) == f &&
           compose(endo_power(k->h, k->b), endo_power(k->phi, k->m)) == g;
  }
  return false;
}

/// Certificate from a trace whose last row terminated with λ = ρ
/// (terminal_h absent) or λ∘ρ⁻¹ = terminal_h. Throws
/// Error(CertificateVerificationFailed) if recomposition fails.
template <Endomap M>
[[nodiscard]] Outcome<M> extract_certificate(const M& f, const M& g, const AlgorithmTrace<M>& trace,
                                             const std::optional<M>& terminal_h) {
  if (trace.empty()) throw Error(ErrorCode::Internal, "empty trace");
  const auto& last = trace.back();
  const ExponentLedger& e = last.ledger;
  const std::int64_t alpha = e.lf - e.rf;  // f^alpha = h'∘g^beta
  const std::int64_t beta = e.rg - e.lg;
  if (alpha <= 0 || beta <= 0) {
    throw Error(ErrorCode::CertificateVerificationFailed, "non-positive exponents in ledger");
  }
  Outcome<M> out;
  if (!terminal_h) {
    out = Cousins<M>{last.lambda, static_cast<std::uint64_t>(beta), static_cast<std::uint64_t>(alpha)};
  } else {
    const auto [at, bt] = bezout(alpha, beta);
    const auto phi = collapse_over_inverse(endo_power(f, static_cast<std::uint64_t>(bt)),
                                           endo_power(g, static_cast<std::uint64_t>(-at)));
    const auto h = collapse_over_inverse(identity_like(f), *terminal_h);
    if (!phi || !h) {
      throw Error(ErrorCode::CertificateVerificationFailed, "ancestor relation is not single-valued");
    }
    out = Kin<M>{*h, *phi, static_cast<std::uint64_t>(-at), static_cast<std::uint64_t>(bt),
                 static_cast<std::uint64_t>(beta), static_cast<std::uint64_t>(alpha)};
  }
  if (!verify_certificate(f, g, out)) {
    throw Error(ErrorCode::CertificateVerificationFailed, "recomposition does not reproduce the inputs");
  }
  return out;
}

template <Endomap M>
[[nodiscard]] KinVerdict<M> run_algorithm(const M& f, const M& g, const AlgorithmOptions& opts = {}) {
  if (!f.is_onto() || !g.is_onto()) throw Error(ErrorCode::NotOnto, "inputs must be onto");
  if (f.is_homeomorphism() || g.is_homeomorphism()) {
    throw Error(ErrorCode::InputIsHomeomorphism, "inputs must be non-homeomorphisms");
  }
  if (f == g) throw Error(ErrorCode::InputsEqual, "inputs are equal");
  KinVerdict<M> v;
  if (!(compose(f, g) == compose(g, f))) {
    if (!opts.force) throw Error(ErrorCode::NotCommuting, "inputs do not commute");
    v.applicable = false;
  }
  const std::size_t cap = opts.cap ? *opts.cap : default_cap(f, g);
  if (cap == 0) throw Error(ErrorCode::InvariantViolation, "cap must be positive");

  M lam = f;
  M rho = g;
  ExponentLedger ledger;
  for (std::size_t step = 1; step <= cap; ++step) {
    ledger.check();
    auto s = succ_compare(lam, rho);
    TraceStep<M> row{lam, rho, ledger, Move::Terminal};
    if (auto* l = std::get_if<succ::LeftSucc<M>>(&s)) {
      row.move = Move::LeftReduced;
      v.trace.push_back(std::move(row));
      lam = std::move(l->collapsed);
      if (opts.mutation != Mutation::SkipLedgerUpdate) ledger.reduce_left();
      continue;
    }
    if (auto* r = std::get_if<succ::RightSucc<M>>(&s)) {
      row.move = Move::RightReduced;
      v.trace.push_back(std::move(row));
      rho = std::move(r->collapsed);
      if (opts.mutation != Mutation::SkipLedgerUpdate) ledger.reduce_right();
      continue;
    }
    v.trace.push_back(std::move(row));
    if (!v.applicable) {
      // Kin requires commuting inputs, so no terminal outcome can certify.
      v.outcome = NotKin{step};
    } else if (std::holds_alternative<succ::Neither>(s)) {
      v.outcome = NotKin{step};
    } else if (auto* h = std::get_if<succ::MutualHomeo<M>>(&s)) {
      v.outcome = extract_certificate(f, g, v.trace, std::optional<M>(h->h));
    } else {
      v.outcome = extract_certificate(f, g, v.trace, std::optional<M>());
    }
    return v;
  }
  ledger.check();
  v.outcome = Inconclusive{cap};
  return v;
}

}  // namespace kinship

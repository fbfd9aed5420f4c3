#include "kinship/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <random>
#include <thread>

#include "kinship/entropy.hpp"
#include "kinship/errors.hpp"

namespace kinship {

namespace {

// Relation on {0,…,k−1}: rows[x] is the bitmask of y with (x, y) in the relation.
struct Rel {
  std::vector<std::uint32_t> rows;

  static Rel of(const FiniteMap& f) {
    Rel r;
    for (std::size_t x = 0; x < f.size(); ++x) r.rows.push_back(1U << f(x));
    return r;
  }
  static Rel id(std::size_t k) { return of(FiniteMap::identity(k)); }

  Rel transposed() const {
    Rel t{std::vector<std::uint32_t>(rows.size(), 0)};
    for (std::size_t x = 0; x < rows.size(); ++x) {
      for (std::size_t y = 0; y < rows.size(); ++y) {
        if (rows[x] >> y & 1U) t.rows[y] |= 1U << x;
      }
    }
    return t;
  }
  bool single_valued() const {
    return std::all_of(rows.begin(), rows.end(), [](std::uint32_t r) { return std::popcount(r) == 1; });
  }
  bool contains(const Rel& o) const {
    for (std::size_t x = 0; x < rows.size(); ++x) {
      if ((o.rows[x] & ~rows[x]) != 0) return false;
    }
    return true;
  }
  friend bool operator==(const Rel&, const Rel&) = default;
};

// r∘s: first s, then r.
Rel then(const Rel& r, const Rel& s) {
  Rel out{std::vector<std::uint32_t>(s.rows.size(), 0)};
  for (std::size_t x = 0; x < s.rows.size(); ++x) {
    for (std::size_t y = 0; y < s.rows.size(); ++y) {
      if (s.rows[x] >> y & 1U) out.rows[x] |= r.rows[y];
    }
  }
  return out;
}

Rel rel_power(const Rel& r, std::int64_t n) {
  const Rel base = n < 0 ? r.transposed() : r;
  Rel out = Rel::id(r.rows.size());
  for (std::int64_t i = 0; i < (n < 0 ? -n : n); ++i) out = then(base, out);
  return out;
}

std::vector<FiniteMap> powers(const FiniteMap& f, std::uint32_t upto) {
  std::vector<FiniteMap> p{FiniteMap::identity(f.size())};
  for (std::uint32_t i = 1; i <= upto; ++i) p.push_back(compose(f, p.back()));
  return p;
}

bool commutes(const FiniteMap& f, const FiniteMap& g) { return compose(f, g) == compose(g, f); }

void require_size(std::size_t k, std::size_t limit) {
  if (k == 0 || k > limit) {
    throw Error(ErrorCode::SizeTooLarge, "set size " + std::to_string(k) + " outside 1.." + std::to_string(limit));
  }
}

std::string pair_label(const FiniteMap& f, const FiniteMap& g) { return f.to_string() + " " + g.to_string(); }

// Lemma suite plumbing: exhaustive over a case list, or a seeded sample of it.
class Suite {
 public:
  Suite(std::string name, bool exhaustive) { r_.name = std::move(name); r_.exhaustive = exhaustive; }
  void check(bool ok, const std::string& what) {
    ++r_.cases;
    if (ok) return;
    ++r_.failures;
    if (r_.failure_examples.size() < 5) r_.failure_examples.push_back(what);
  }
  LemmaSuiteResult result() && { return std::move(r_); }

 private:
  LemmaSuiteResult r_;
};

struct Sampler {
  bool exhaustive;
  std::size_t samples;
  std::mt19937_64 rng;

  // Case indices 0..n−1, or a uniform sample of them.
  std::vector<std::size_t> indices(std::size_t n) {
    std::vector<std::size_t> out;
    if (exhaustive || n <= samples) {
      out.resize(n);
      std::iota(out.begin(), out.end(), 0);
    } else {
      std::uniform_int_distribution<std::size_t> d(0, n - 1);
      for (std::size_t i = 0; i < samples; ++i) out.push_back(d(rng));
    }
    return out;
  }
};

LemmaSuiteResult suite_commutation(const std::vector<FiniteMap>& maps, Sampler& s) {
  Suite suite("commutation-criterion", s.exhaustive);
  const std::size_t n = maps.size();
  for (std::size_t idx : s.indices(n * n)) {
    const auto& f = maps[idx / n];
    const auto& g = maps[idx % n];
    suite.check(commutes(f, g) == preimage_containment(f, g), pair_label(f, g));
  }
  return std::move(suite).result();
}

LemmaSuiteResult suite_single_valued(const std::vector<FiniteMap>& maps, Sampler& s) {
  Suite suite("single-valuedness-criterion", s.exhaustive);
  const std::size_t n = maps.size();
  for (std::size_t idx : s.indices(n * n)) {
    const auto& f = maps[idx / n];
    const auto& g = maps[idx % n];
    // f∘g⁻¹ restricted to the image of g, as a relation.
    const Rel r = then(Rel::of(f), Rel::of(g).transposed());
    bool sv = true;
    for (std::size_t x = 0; x < f.size(); ++x) {
      if (r.rows[x] != 0 && std::popcount(r.rows[x]) != 1) sv = false;
    }
    // g⁻¹∘g(x) ⊆ f⁻¹∘f(x) for every x.
    const Rel gg = then(Rel::of(g).transposed(), Rel::of(g));
    const Rel ff = then(Rel::of(f).transposed(), Rel::of(f));
    const bool criterion = ff.contains(gg);
    bool ok = sv == criterion && criterion == kernel_refines(g, f);
    if (g.is_onto()) {
      const auto c = collapse_over_inverse(f, g);
      ok = ok && c.has_value() == criterion && (!c || compose(*c, g) == f);
    }
    suite.check(ok, pair_label(f, g));
  }
  return std::move(suite).result();
}

LemmaSuiteResult suite_bijection_factor(const std::vector<FiniteMap>& maps,
                                        const std::vector<FiniteMap>& bijections, Sampler& s) {
  Suite suite("mutual-map-bijection-factor", s.exhaustive);
  const std::size_t n = maps.size();
  for (std::size_t idx : s.indices(n * n)) {
    const auto& f = maps[idx / n];
    const auto& g = maps[idx % n];
    if (!kernel_refines(g, f) || !kernel_refines(f, g)) continue;
    const bool found = std::any_of(bijections.begin(), bijections.end(),
                                   [&](const FiniteMap& h) { return compose(h, g) == f; });
    suite.check(found, pair_label(f, g));
  }
  return std::move(suite).result();
}

LemmaSuiteResult suite_inverse_powers(const std::vector<FiniteMap>& maps, std::uint32_t bound, Sampler& s) {
  Suite suite("inverse-powers-multivalued", s.exhaustive);
  for (std::size_t idx : s.indices(maps.size())) {
    const auto& psi = maps[idx];
    if (psi.is_bijection()) {
      for (std::uint32_t j = 1; j <= bound; ++j) {
        suite.check(rel_power(Rel::of(psi), -static_cast<std::int64_t>(j)).single_valued(), psi.to_string());
      }
      continue;
    }
    for (std::uint32_t j = 1; j <= bound; ++j) {
      const Rel inv = rel_power(Rel::of(psi), -static_cast<std::int64_t>(j));
      const bool multi = std::any_of(inv.rows.begin(), inv.rows.end(),
                                     [](std::uint32_t r) { return std::popcount(r) >= 2; });
      suite.check(multi && rel_power(Rel::of(psi), j).single_valued(), psi.to_string());
    }
  }
  return std::move(suite).result();
}

// Smallest s ≥ 1 with ker φ^s = ker φ^(s+1).
std::uint32_t kernel_stabilisation(const FiniteMap& phi) {
  FiniteMap p = phi;
  for (std::uint32_t s = 1;; ++s) {
    FiniteMap q = compose(phi, p);
    if (kernel_refines(q, p)) return s;
    p = std::move(q);
  }
}

LemmaSuiteResult suite_succ_order(const std::vector<FiniteMap>& maps, const std::vector<FiniteMap>& bijections,
                                  std::uint32_t bound, Sampler& s) {
  Suite suite("succ-iff-exponent-order", s.exhaustive);
  for (std::size_t idx : s.indices(maps.size())) {
    const auto& phi = maps[idx];
    if (phi.is_bijection()) continue;
    const std::uint32_t top = std::min(bound, kernel_stabilisation(phi));
    const auto pp = powers(phi, top);
    for (const auto& h : bijections) {
      if (!commutes(h, phi)) continue;
      const auto hp = powers(h, bound);
      for (std::uint32_t a = 0; a <= bound; ++a) {
        for (std::uint32_t b = 0; b <= bound; ++b) {
          for (std::uint32_t n = 1; n <= top; ++n) {
            for (std::uint32_t m = 1; m <= top; ++m) {
              const FiniteMap lhs = compose(hp[a], pp[n]);
              const FiniteMap rhs = compose(hp[b], pp[m]);
              const bool succ = kernel_refines(rhs, lhs) && !kernel_refines(lhs, rhs);
              suite.check(succ == (n > m), phi.to_string() + " h=" + h.to_string());
            }
          }
        }
      }
    }
  }
  return std::move(suite).result();
}

LemmaSuiteResult suite_commuting_factor(const std::vector<FiniteMap>& maps,
                                        const std::vector<FiniteMap>& bijections, Sampler& s) {
  Suite suite("commuting-factor", s.exhaustive);
  const std::size_t n = maps.size();
  for (std::size_t idx : s.indices(n * bijections.size())) {
    const auto& f = maps[idx / bijections.size()];
    const auto& g = bijections[idx % bijections.size()];
    if (!commutes(f, g)) continue;
    const auto h = collapse_over_inverse(f, g);
    suite.check(h && compose(*h, g) == f && commutes(*h, f) && commutes(*h, g), pair_label(f, g));
  }
  return std::move(suite).result();
}

LemmaSuiteResult suite_inverse_composition_commutes(const std::vector<FiniteMap>& maps,
                                                    const std::vector<FiniteMap>& bijections, Sampler& s) {
  Suite suite("inverse-composition-commutes", s.exhaustive);
  const std::size_t n = maps.size();
  const std::size_t nb = bijections.size();
  for (std::size_t idx : s.indices(n * nb * n)) {
    const auto& f = maps[idx / (nb * n)];
    const auto& g = bijections[(idx / n) % nb];
    const auto& h = maps[idx % n];
    if (!commutes(h, f) || !commutes(h, g)) continue;
    const auto q = collapse_over_inverse(f, g);
    suite.check(q && commutes(h, *q), pair_label(f, g) + " h=" + h.to_string());
  }
  return std::move(suite).result();
}

LemmaSuiteResult suite_composition_collapsing(const std::vector<FiniteMap>& maps, std::uint32_t bound,
                                              Sampler& s) {
  Suite suite("composition-collapsing", s.exhaustive);
  const std::size_t n = maps.size();
  const std::uint32_t e = std::min<std::uint32_t>(bound, 2);
  for (std::size_t idx : s.indices(n * n)) {
    const auto& f = maps[idx / n];
    const auto& g = maps[idx % n];
    if (!commutes(f, g)) continue;
    const Rel F = Rel::of(f);
    const Rel G = Rel::of(g);
    for (std::uint32_t a1 = 0; a1 <= e; ++a1) {
      for (std::uint32_t a2 = 0; a2 <= e; ++a2) {
        for (std::uint32_t b1 = 0; b1 <= e; ++b1) {
          for (std::uint32_t b2 = 0; b2 <= e; ++b2) {
            const Rel lhs = then(rel_power(F, a1), then(rel_power(G, -static_cast<std::int64_t>(a2)),
                                                        then(rel_power(F, b1), rel_power(G, -static_cast<std::int64_t>(b2)))));
            const Rel rhs = then(rel_power(F, a1 + b1), rel_power(G, -static_cast<std::int64_t>(a2 + b2)));
            bool ok = lhs.contains(rhs);
            if (g.is_onto() && lhs.single_valued()) ok = ok && lhs == rhs;
            suite.check(ok, pair_label(f, g));
          }
        }
      }
    }
  }
  return std::move(suite).result();
}

LemmaSuiteResult suite_power_quotient(const std::vector<FiniteMap>& maps,
                                       const std::vector<FiniteMap>& bijections, std::uint32_t bound,
                                       Sampler& s) {
  Suite suite("power-quotient", s.exhaustive);
  const std::size_t nb = bijections.size();
  for (std::size_t idx : s.indices(maps.size() * nb)) {
    const auto& f = maps[idx / nb];
    const auto& g = bijections[idx % nb];
    if (!commutes(f, g)) continue;
    const Rel F = Rel::of(f);
    const Rel G = Rel::of(g);
    for (std::uint32_t n = 1; n <= bound; ++n) {
      for (std::uint32_t m = 1; m <= bound; ++m) {
        const Rel base = then(rel_power(F, n), rel_power(G, -static_cast<std::int64_t>(m)));
        if (!base.single_valued()) continue;
        for (std::uint32_t N = 1; N <= bound; ++N) {
          Rel lhs = Rel::id(f.size());
          for (std::uint32_t i = 0; i < N; ++i) lhs = then(base, lhs);
          const Rel rhs = then(rel_power(F, n * N), rel_power(G, -static_cast<std::int64_t>(m * N)));
          suite.check(lhs == rhs, pair_label(f, g));
        }
      }
    }
  }
  return std::move(suite).result();
}

LemmaSuiteResult suite_decomposition(const std::vector<FiniteMap>& bijections, std::uint32_t bound, Sampler& s) {
  Suite suite("decomposition", s.exhaustive);
  const auto b = static_cast<std::int64_t>(bound);
  for (std::size_t idx : s.indices(bijections.size())) {
    const Rel P = Rel::of(bijections[idx]);
    for (std::int64_t x = -b; x <= b; ++x) {
      for (std::int64_t y = -b; y <= b; ++y) {
        const Rel sum = rel_power(P, x + y);
        if (!sum.single_valued()) continue;
        suite.check(then(rel_power(P, x), rel_power(P, y)).contains(sum), bijections[idx].to_string());
      }
    }
  }
  return std::move(suite).result();
}

// Every ancestor ψ of a cousin pair has a power equal to φ^gcd(n,m).
LemmaSuiteResult suite_greatest_ancestor(const std::vector<std::pair<FiniteMap, FiniteMap>>& cousin_witnesses,
                                         const std::vector<std::pair<FiniteMap, FiniteMap>>& cousin_pairs,
                                         const std::vector<std::uint32_t>& gcds,
                                         const std::vector<FiniteMap>& maps, std::uint32_t bound) {
  Suite suite("greatest-ancestor", true);
  for (std::size_t i = 0; i < cousin_pairs.size(); ++i) {
    const auto& [f, g] = cousin_pairs[i];
    const FiniteMap top = powers(cousin_witnesses[i].first, gcds[i]).back();
    for (const auto& psi : maps) {
      const auto pp = powers(psi, bound);
      const bool ancestor =
          std::any_of(pp.begin() + 1, pp.end(), [&](const FiniteMap& p) { return p == f; }) &&
          std::any_of(pp.begin() + 1, pp.end(), [&](const FiniteMap& p) { return p == g; });
      if (!ancestor) continue;
      // Powers of ψ cycle within k^k steps.
      const auto cyc = powers(psi, static_cast<std::uint32_t>(std::min<std::size_t>(maps.size(), 3125)));
      const bool reaches = std::any_of(cyc.begin() + 1, cyc.end(), [&](const FiniteMap& p) { return p == top; });
      suite.check(reaches, pair_label(f, g) + " psi=" + psi.to_string());
    }
  }
  return std::move(suite).result();
}

// --- PL family ---------------------------------------------------------------

struct PlTruth {
  bool witness = false;
  bool cousin_witness = false;
  bool lap_obstruction = false;
  std::string label;
};

constexpr std::size_t kPlPowerBudget = 200'000;

std::optional<PLMap> bounded_power(const PLMap& f, std::uint32_t n) {
  PLMap p;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (compose_size_bound(f, p) > kPlPowerBudget) return std::nullopt;
    p = compose(f, p);
  }
  return p;
}

// f^alpha = h'∘g^beta for h' in {id, flip}, alpha, beta ≤ bound coprime.
PlTruth pl_ground_truth(const PLMap& f, const PLMap& g, std::uint32_t bound) {
  PlTruth t;
  const PLMap flip = flip_map();
  std::vector<std::optional<PLMap>> fp, gp;
  for (std::uint32_t i = 1; i <= bound; ++i) {
    fp.push_back(bounded_power(f, i));
    gp.push_back(bounded_power(g, i));
  }
  bool laps_meet = false;
  const bool flip_commutes = commute(flip, f) && commute(flip, g);
  for (std::uint32_t al = 1; al <= bound; ++al) {
    for (std::uint32_t be = 1; be <= bound; ++be) {
      if (std::gcd(al, be) != 1 || !fp[al - 1] || !gp[be - 1]) continue;
      const PLMap& F = *fp[al - 1];
      const PLMap& G = *gp[be - 1];
      if (F.is_strictly_piecewise_monotone() && G.is_strictly_piecewise_monotone() &&
          lap_count(F) == lap_count(G)) {
        laps_meet = true;
      }
      if (F == G) {
        t.witness = t.cousin_witness = true;
      } else if (flip_commutes && F == compose(flip, G)) {
        t.witness = true;
      }
    }
  }
  const bool monotone = f.is_strictly_piecewise_monotone() && g.is_strictly_piecewise_monotone();
  t.lap_obstruction = monotone && !laps_meet;
  t.label = t.cousin_witness ? "cousins" : t.witness ? "kin" : t.lap_obstruction ? "no witness (lap counts never meet)" : "no witness";
  return t;
}

std::string outcome_class(const Outcome<PLMap>& o) {
  if (std::holds_alternative<Cousins<PLMap>>(o)) return "cousins";
  if (std::holds_alternative<Kin<PLMap>>(o)) return "kin";
  if (std::holds_alternative<NotKin>(o)) return "not kin";
  if (std::holds_alternative<NotCousins>(o)) return "not cousins";
  return "inconclusive";
}

PlCaseResult run_pl_case(const std::string& label, const PLMap& f, const PLMap& g, bool constructed,
                         std::uint32_t bound, Mutation mutation) {
  PlCaseResult res;
  res.label = label;
  const PlTruth truth = pl_ground_truth(f, g, bound);
  res.ground_truth = constructed ? (truth.cousin_witness ? "cousins (constructed)" : "kin (constructed)") : truth.label;
  const bool truly_kin = constructed || truth.witness;
  try {
    AlgorithmOptions opts;
    opts.mutation = mutation;
    const auto v = run_algorithm(f, g, opts);
    res.verdict = outcome_class(v.outcome);
    if (v.is_kin()) {
      res.certificate_ok = verify_certificate(f, g, v.outcome);
      if (!res.certificate_ok) {
        res.discrepancy = true;
        res.detail = "certificate does not recompose";
      } else if (!truly_kin && truth.lap_obstruction) {
        res.discrepancy = true;
        res.detail = "kin verdict but lap counts of powers never meet";
      } else if (!v.is_cousins() && truth.cousin_witness) {
        res.discrepancy = true;
        res.detail = "cousin pair not reported as cousins";
      } else if (!truly_kin) {
        res.detail = "no independent witness within bound";
      }
    } else if (truly_kin) {
      res.discrepancy = true;
      res.detail = "kin pair reported as " + res.verdict;
    }
  } catch (const Error& e) {
    res.verdict = "error";
    res.discrepancy = true;
    res.detail = e.what();
  }
  return res;
}

std::vector<PlCaseResult> pl_family(std::uint32_t bound, Mutation mutation) {
  std::vector<PlCaseResult> out;
  for (unsigned p = 2; p <= 6; ++p) {
    for (unsigned q = 2; q <= 6; ++q) {
      if (p == q) continue;
      out.push_back(run_pl_case("T" + std::to_string(p) + ",T" + std::to_string(q), tent(p), tent(q), false,
                                bound, mutation));
    }
  }
  const std::uint32_t top = std::max<std::uint32_t>(bound, 2);
  for (const auto& entry : pl_commuting_catalogue()) {
    const bool trivial_h = entry.h.is_identity();
    const std::uint32_t hmax = trivial_h ? 0 : 1;
    for (std::uint32_t a = 0; a <= hmax; ++a) {
      for (std::uint32_t b = 0; b <= hmax; ++b) {
        for (std::uint32_t n = 1; n <= top; ++n) {
          for (std::uint32_t m = 1; m <= top; ++m) {
            const PLMap f = compose(power(entry.h, a), power(entry.phi, n));
            const PLMap g = compose(power(entry.h, b), power(entry.phi, m));
            if (f == g) continue;
            const std::string label = entry.name + " a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                      " n=" + std::to_string(n) + " m=" + std::to_string(m);
            out.push_back(run_pl_case(label, f, g, true, top, mutation));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(GroundClass c) noexcept {
  switch (c) {
    case GroundClass::Cousins: return "cousins";
    case GroundClass::Kin: return "kin";
    case GroundClass::NoWitnessFound: return "no witness within bound";
  }
  return "?";
}

std::vector<FiniteMap> all_maps(std::size_t k) {
  require_size(k, kMaxOracleSize);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= k;
  std::vector<FiniteMap> out;
  out.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) out.push_back(FiniteMap::from_index(k, i));
  return out;
}

std::vector<FiniteMap> onto_maps(std::size_t k) {
  auto maps = all_maps(k);
  std::erase_if(maps, [](const FiniteMap& f) { return !f.is_onto(); });
  return maps;
}

bool preimage_containment(const FiniteMap& f, const FiniteMap& g) {
  for (std::size_t x = 0; x < g.size(); ++x) {
    for (std::size_t y = 0; y < g.size(); ++y) {
      // y ∈ g⁻¹(x) must give f(y) ∈ g⁻¹(f(x)).
      if (g(y) == x && g(f(y)) != f(x)) return false;
    }
  }
  return true;
}

std::vector<std::pair<FiniteMap, FiniteMap>> enumerate_commuting_pairs(std::size_t k) {
  const auto onto = onto_maps(k);
  std::vector<std::pair<FiniteMap, FiniteMap>> out;
  for (const auto& f : onto) {
    for (const auto& g : onto) {
      const bool direct = commutes(f, g);
      if (direct != preimage_containment(f, g)) {
        throw Error(ErrorCode::InvariantViolation, "commutation criterion disagrees on " + pair_label(f, g));
      }
      if (direct) out.emplace_back(f, g);
    }
  }
  return out;
}

GroundTruth ground_truth_kin(const FiniteMap& f, const FiniteMap& g, std::uint32_t bound) {
  const std::size_t k = f.size();
  require_size(k, kMaxOracleSize);
  if (g.size() != k) throw Error(ErrorCode::InvariantViolation, "size mismatch");
  if (bound == 0) throw Error(ErrorCode::InvariantViolation, "exp_bound must be positive");
  const auto bijections = onto_maps(k);
  GroundTruth gt;

  // Direct search over f = hᵃ∘φⁿ, g = h^b∘φᵐ.
  std::optional<KinWitness> kin_w, cousin_w;
  for (const auto& phi : onto_maps(k)) {
    const auto pp = powers(phi, bound);
    for (const auto& h : bijections) {
      if (!commutes(h, phi)) continue;
      const auto hp = powers(h, bound);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> for_f, for_g;
      for (std::uint32_t a = 0; a <= bound; ++a) {
        for (std::uint32_t n = 1; n <= bound; ++n) {
          const FiniteMap c = compose(hp[a], pp[n]);
          if (c == f) for_f.emplace_back(a, n);
          if (c == g) for_g.emplace_back(a, n);
        }
      }
      for (const auto& [a, n] : for_f) {
        for (const auto& [b, m] : for_g) {
          KinWitness w{h, phi, a, b, n, m};
          if (hp[a].is_identity() && hp[b].is_identity()) {
            if (!cousin_w) cousin_w = w;
          } else if (!kin_w) {
            kin_w = w;
          }
        }
      }
    }
  }

  // Characterization search: f^alpha = h'∘g^beta with h' commuting with f and g.
  const std::uint32_t cb = bound * bound;
  const auto fp = powers(f, cb);
  const auto gp = powers(g, cb);
  std::optional<CharacterizationWitness> any_c, id_c;
  for (std::uint32_t al = 1; al <= cb && !id_c; ++al) {
    for (std::uint32_t be = 1; be <= cb && !id_c; ++be) {
      if (std::gcd(al, be) != 1) continue;
      for (const auto& hp : bijections) {
        if (!commutes(hp, f) || !commutes(hp, g)) continue;
        if (fp[al] != compose(hp, gp[be])) continue;
        CharacterizationWitness c{hp, al, be};
        if (hp.is_identity()) {
          id_c = c;
          break;
        }
        if (!any_c) any_c = c;
      }
    }
  }
  gt.characterization = id_c ? id_c : any_c;

  auto disagree = [&](const std::string& why) {
    gt.routes_agree = false;
    if (gt.disagreement.empty()) gt.disagreement = why;
  };
  if ((kin_w || cousin_w) && !gt.characterization) disagree("kin witness without characterization witness");
  if (cousin_w && !id_c) disagree("cousin witness without f^alpha = g^beta");

  // Constructive direction: ancestor from a Bézout combination of f and g.
  std::optional<KinWitness> built;
  if (gt.characterization && f.is_onto() && g.is_onto()) {
    const auto& c = *gt.characterization;
    const auto [at, bt] = bezout(c.alpha, c.beta);
    const auto phi = collapse_over_inverse(endo_power(f, static_cast<std::uint64_t>(bt)),
                                           endo_power(g, static_cast<std::uint64_t>(-at)));
    if (!phi) {
      disagree("constructed ancestor is not single-valued");
    } else {
      KinWitness w{inverse(c.h_prime), *phi, static_cast<std::uint32_t>(-at), static_cast<std::uint32_t>(bt),
                   c.beta, c.alpha};
      const bool ok = commutes(w.h, w.phi) && compose(endo_power(w.h, w.a), endo_power(w.phi, w.n)) == f &&
                      compose(endo_power(w.h, w.b), endo_power(w.phi, w.m)) == g;
      if (!ok) disagree("constructed witness does not recompose");
      built = w;
    }
  }

  if (cousin_w || id_c) {
    gt.cls = GroundClass::Cousins;
    gt.witness = cousin_w ? cousin_w : built;
  } else if (kin_w || gt.characterization) {
    gt.cls = GroundClass::Kin;
    gt.witness = kin_w ? kin_w : built;
  }
  return gt;
}

bool CampaignReport::clean() const {
  if (!discrepancies.empty()) return false;
  return std::all_of(lemma_suites.begin(), lemma_suites.end(),
                     [](const LemmaSuiteResult& s) { return s.failures == 0; });
}

std::vector<PlCatalogueEntry> pl_commuting_catalogue() {
  auto pl = [](std::initializer_list<std::pair<Rational, Rational>> pts) {
    std::vector<Point> v;
    for (const auto& [x, y] : pts) v.push_back({x, y});
    return PLMap::normalize(std::move(v));
  };
  return {
      {"T2", tent(2), identity_map()},
      {"psi", pl({{0, 0}, {Rational(1, 2), 1}, {1, Rational(1, 4)}}), identity_map()},
      {"phi-slow", pl({{0, 0}, {Rational(1, 2), 1}, {1, Rational(1, 2)}}), identity_map()},
      {"T3/flip", tent(3), flip_map()},
      {"odd-symmetric/flip", pl({{0, 0}, {Rational(1, 4), Rational(3, 4)}, {Rational(3, 4), Rational(1, 4)}, {1, 1}}),
       flip_map()},
  };
}

CampaignReport oracle_campaign(std::size_t k, std::uint32_t bound, const CampaignOptions& opts) {
  require_size(k, kMaxCampaignSize);
  if (bound == 0) throw Error(ErrorCode::InvariantViolation, "exp_bound must be positive");
  const auto start = std::chrono::steady_clock::now();
  CampaignReport rep;
  rep.k = k;
  rep.exp_bound = bound;
  const auto maps = all_maps(k);
  const auto bijections = onto_maps(k);
  rep.maps_enumerated = maps.size();
  rep.onto_maps = bijections.size();
  rep.pairs_enumerated = bijections.size() * bijections.size();

  const auto pairs = enumerate_commuting_pairs(k);
  rep.commuting_pairs = pairs.size();

  // Ground truth per pair, partitioned across workers; merged in pair order.
  std::vector<GroundTruth> truths(pairs.size());
  std::vector<std::vector<std::string>> worker_notes(pairs.size());
  unsigned workers = opts.threads ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(pairs.size(), 1)));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < pairs.size(); i += workers) {
      const auto& [f, g] = pairs[i];
      truths[i] = ground_truth_kin(f, g, bound);
      auto& notes = worker_notes[i];
      if (!truths[i].routes_agree) notes.push_back("ground-truth routes disagree: " + truths[i].disagreement);
      if (!f.is_bijection() && !g.is_bijection()) {
        notes.push_back("unexpected non-bijective onto pair");
      } else {
        if (truths[i].cls == GroundClass::NoWitnessFound) notes.push_back("commuting bijections without kin witness");
        bool rejected = false;
        try {
          (void)run_algorithm(f, g);
        } catch (const Error& e) {
          rejected = e.code() == ErrorCode::InputIsHomeomorphism;
        }
        if (!rejected) notes.push_back("algorithm accepted a bijective input");
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();

  std::vector<std::pair<FiniteMap, FiniteMap>> cousin_pairs, cousin_witnesses;
  std::vector<std::uint32_t> gcds;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (const auto& note : worker_notes[i]) {
      rep.discrepancies.push_back("k=" + std::to_string(k) + " " + pair_label(pairs[i].first, pairs[i].second) +
                                  ": " + note);
    }
    const auto& gt = truths[i];
    if (gt.cls != GroundClass::NoWitnessFound) ++rep.kin_pairs;
    if (gt.cls == GroundClass::Cousins) {
      ++rep.cousin_pairs;
      if (gt.witness) {
        cousin_pairs.push_back(pairs[i]);
        cousin_witnesses.emplace_back(gt.witness->phi, gt.witness->h);
        gcds.push_back(std::gcd(gt.witness->n, gt.witness->m));
      }
    }
  }
  rep.non_bijective_commuting_pairs = 0;

  const bool exhaustive = k <= 3;
  Sampler sampler{exhaustive, opts.random_samples, std::mt19937_64(opts.seed)};
  rep.lemma_suites.push_back(suite_commutation(maps, sampler));
  rep.lemma_suites.push_back(suite_single_valued(maps, sampler));
  rep.lemma_suites.push_back(suite_bijection_factor(maps, bijections, sampler));
  rep.lemma_suites.push_back(suite_inverse_powers(maps, bound, sampler));
  rep.lemma_suites.push_back(suite_succ_order(maps, bijections, bound, sampler));
  rep.lemma_suites.push_back(suite_commuting_factor(maps, bijections, sampler));
  rep.lemma_suites.push_back(suite_inverse_composition_commutes(maps, bijections, sampler));
  rep.lemma_suites.push_back(suite_composition_collapsing(maps, bound, sampler));
  rep.lemma_suites.push_back(suite_power_quotient(maps, bijections, bound, sampler));
  rep.lemma_suites.push_back(suite_decomposition(bijections, bound, sampler));
  rep.lemma_suites.push_back(suite_greatest_ancestor(cousin_witnesses, cousin_pairs, gcds, maps, bound));
  for (const auto& s : rep.lemma_suites) {
    for (const auto& ex : s.failure_examples) rep.discrepancies.push_back("lemma " + s.name + ": " + ex);
  }

  if (opts.include_pl_family) {
    rep.pl_cases = pl_family(bound, opts.mutation);
    for (const auto& c : rep.pl_cases) {
      ++rep.algorithm_runs;
      if (c.discrepancy) rep.discrepancies.push_back("PL " + c.label + ": " + c.detail);
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace kinship

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kinship/finite_map.hpp"
#include "kinship/kinship.hpp"
#include "kinship/plmap.hpp"

namespace kinship {

inline constexpr std::size_t kMaxOracleSize = 5;
inline constexpr std::size_t kMaxCampaignSize = 4;

/// All k^k maps in index order. Throws Error(SizeTooLarge) for k > 5.
[[nodiscard]] std::vector<FiniteMap> all_maps(std::size_t k);
/// Onto maps (the k! bijections) in index order.
[[nodiscard]] std::vector<FiniteMap> onto_maps(std::size_t k);

/// f(g⁻¹(x)) ⊆ g⁻¹(f(x)) for every x.
[[nodiscard]] bool preimage_containment(const FiniteMap& f, const FiniteMap& g);

/// Ordered pairs of onto maps with f∘g = g∘f, in canonical index order.
/// Cross-checks preimage_containment on every pair inspected and throws
/// Error(InvariantViolation) on disagreement.
[[nodiscard]] std::vector<std::pair<FiniteMap, FiniteMap>> enumerate_commuting_pairs(std::size_t k);

struct KinWitness {
  FiniteMap h;
  FiniteMap phi;
  std::uint32_t a = 0, b = 0, n = 0, m = 0;
};

/// f^alpha = h'∘g^beta.
struct CharacterizationWitness {
  FiniteMap h_prime;
  std::uint32_t alpha = 0, beta = 0;
};

enum class GroundClass { Cousins, Kin, NoWitnessFound };

std::string_view to_string(GroundClass c) noexcept;

struct GroundTruth {
  GroundClass cls = GroundClass::NoWitnessFound;
  /// From the direct search over (φ, h, a, b, n, m), or built constructively
  /// from the characterization witness.
  std::optional<KinWitness> witness;
  std::optional<CharacterizationWitness> characterization;
  /// Whether the direct and characterization searches agree.
  bool routes_agree = true;
  std::string disagreement;
};

/// Exhaustive kin search with exponents a, b, n, m ≤ exp_bound, checked
/// against a characterization search with alpha, beta ≤ exp_bound².
[[nodiscard]] GroundTruth ground_truth_kin(const FiniteMap& f, const FiniteMap& g, std::uint32_t exp_bound);

struct LemmaSuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  bool exhaustive = true;
  std::vector<std::string> failure_examples;
};

struct PlCaseResult {
  std::string label;
  std::string verdict;       // algorithm outcome class
  std::string ground_truth;  // independent classification
  bool certificate_ok = true;
  bool discrepancy = false;
  std::string detail;
};

struct CampaignOptions {
  Mutation mutation = Mutation::None;
  unsigned threads = 0;  // 0: hardware concurrency
  bool include_pl_family = true;
  std::uint64_t seed = 0x5eed;
  std::size_t random_samples = 4000;  // per randomized lemma suite
};

struct CampaignReport {
  std::size_t k = 0;
  std::uint32_t exp_bound = 0;
  std::size_t maps_enumerated = 0;
  std::size_t onto_maps = 0;
  std::size_t pairs_enumerated = 0;
  std::size_t commuting_pairs = 0;
  std::size_t non_bijective_commuting_pairs = 0;
  std::size_t kin_pairs = 0;
  std::size_t cousin_pairs = 0;
  std::size_t algorithm_runs = 0;
  std::vector<LemmaSuiteResult> lemma_suites;
  std::vector<PlCaseResult> pl_cases;
  std::vector<std::string> discrepancies;
  double wall_seconds = 0.0;

  [[nodiscard]] bool clean() const;
};

/// Commuting PL pairs (φ, h) with h a homeomorphism, used to build kin inputs.
struct PlCatalogueEntry {
  std::string name;
  PLMap phi;
  PLMap h;
};
[[nodiscard]] std::vector<PlCatalogueEntry> pl_commuting_catalogue();

/// Throws Error(SizeTooLarge) for k > 4 or k = 0.
[[nodiscard]] CampaignReport oracle_campaign(std::size_t k, std::uint32_t exp_bound,
                                             const CampaignOptions& opts = {});

}  // namespace kinship

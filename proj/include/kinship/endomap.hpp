#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

namespace kinship {

/// Self-map of a space closed under composition, with a test for whether
/// a∘b⁻¹ is single-valued. Implemented by PLMap and FiniteMap.
template <class M>
concept Endomap = std::copyable<M> && requires(const M& a, const M& b) {
  { compose(a, b) } -> std::same_as<M>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_onto() } -> std::convertible_to<bool>;
  { a.is_homeomorphism() } -> std::convertible_to<bool>;
  { collapse_over_inverse(a, b) } -> std::same_as<std::optional<M>>;
  { identity_like(a) } -> std::same_as<M>;
  { a.to_string() } -> std::convertible_to<std::string>;
  { a.digest() } -> std::convertible_to<std::string>;
};

template <Endomap M>
[[nodiscard]] M endo_power(const M& f, std::uint64_t n) {
  M result = identity_like(f);
  M base = f;
  while (n > 0) {
    if (n & 1U) result = compose(base, result);
    n >>= 1U;
    if (n > 0) base = compose(base, base);
  }
  return result;
}

}  // namespace kinship

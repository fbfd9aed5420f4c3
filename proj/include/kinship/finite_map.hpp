#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kinship {

/// Endofunction of {0, …, k−1} stored as its image table.
class FiniteMap {
 public:
  /// Throws Error(OutOfDomain) for entries ≥ k, Error(SizeTooLarge) for k > 255.
  explicit FiniteMap(std::vector<std::uint8_t> table);

  static FiniteMap identity(std::size_t k);
  /// Map whose table is the base-k expansion of index, least significant first.
  static FiniteMap from_index(std::size_t k, std::uint64_t index);

  [[nodiscard]] std::uint64_t index() const;
  [[nodiscard]] std::size_t size() const { return table_.size(); }
  [[nodiscard]] std::uint8_t operator()(std::size_t i) const { return table_[i]; }
  [[nodiscard]] const std::vector<std::uint8_t>& table() const { return table_; }

  [[nodiscard]] bool is_onto() const { return onto_; }
  [[nodiscard]] bool is_bijection() const { return onto_; }
  [[nodiscard]] bool is_homeomorphism() const { return onto_; }
  [[nodiscard]] bool is_identity() const;

  /// Fiber label of each point: equal labels iff equal images.
  [[nodiscard]] const std::vector<std::uint8_t>& kernel() const { return table_; }
  [[nodiscard]] std::size_t image_size() const;

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] std::string digest() const;

  friend bool operator==(const FiniteMap&, const FiniteMap&) = default;
  friend auto operator<=>(const FiniteMap& a, const FiniteMap& b) { return a.table_ <=> b.table_; }

 private:
  std::vector<std::uint8_t> table_;
  bool onto_ = false;
};

[[nodiscard]] FiniteMap compose(const FiniteMap& f, const FiniteMap& g);

/// True iff f(x) = f(y) whenever g(x) = g(y), i.e. the fibers of g refine those of f.
[[nodiscard]] bool kernel_refines(const FiniteMap& g, const FiniteMap& f);

/// a∘b⁻¹ when b is onto and the fibers of b refine those of a.
[[nodiscard]] std::optional<FiniteMap> collapse_over_inverse(const FiniteMap& a, const FiniteMap& b);

[[nodiscard]] inline FiniteMap identity_like(const FiniteMap& f) { return FiniteMap::identity(f.size()); }
[[nodiscard]] std::size_t default_cap(const FiniteMap& f, const FiniteMap& g);

/// Inverse of a bijection; throws Error(NotHomeomorphism).
[[nodiscard]] FiniteMap inverse(const FiniteMap& h);

}  // namespace kinship

#include "kinship/finite_map.hpp"

#include <algorithm>
#include <cstdio>

#include "kinship/errors.hpp"
#include "kinship/kinship.hpp"

namespace kinship {

FiniteMap::FiniteMap(std::vector<std::uint8_t> table) : table_(std::move(table)) {
  if (table_.empty()) throw Error(ErrorCode::SizeTooLarge, "finite map needs at least one point");
  if (table_.size() > 255) throw Error(ErrorCode::SizeTooLarge, "finite map on more than 255 points");
  std::vector<bool> hit(table_.size(), false);
  for (auto v : table_) {
    if (v >= table_.size()) throw Error(ErrorCode::OutOfDomain, "image " + std::to_string(v));
    hit[v] = true;
  }
  onto_ = std::find(hit.begin(), hit.end(), false) == hit.end();
}

FiniteMap FiniteMap::identity(std::size_t k) {
  std::vector<std::uint8_t> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = static_cast<std::uint8_t>(i);
  return FiniteMap(std::move(t));
}

FiniteMap FiniteMap::from_index(std::size_t k, std::uint64_t index) {
  std::vector<std::uint8_t> t(k);
  for (std::size_t i = 0; i < k; ++i) {
    t[i] = static_cast<std::uint8_t>(index % k);
    index /= k;
  }
  return FiniteMap(std::move(t));
}

std::uint64_t FiniteMap::index() const {
  std::uint64_t idx = 0;
  for (std::size_t i = table_.size(); i-- > 0;) idx = idx * table_.size() + table_[i];
  return idx;
}

bool FiniteMap::is_identity() const {
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] != i) return false;
  }
  return true;
}

std::size_t FiniteMap::image_size() const {
  std::vector<bool> hit(table_.size(), false);
  std::size_t n = 0;
  for (auto v : table_) {
    if (!hit[v]) ++n;
    hit[v] = true;
  }
  return n;
}

std::string FiniteMap::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(table_[i]);
  }
  return s + "]";
}

std::string FiniteMap::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : to_string()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FiniteMap compose(const FiniteMap& f, const FiniteMap& g) {
  if (f.size() != g.size()) throw Error(ErrorCode::InvariantViolation, "size mismatch in compose");
  std::vector<std::uint8_t> t(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) t[i] = f(g(i));
  return FiniteMap(std::move(t));
}

bool kernel_refines(const FiniteMap& g, const FiniteMap& f) {
  // Representative value of f on each fiber of g.
  std::vector<int> rep(g.size(), -1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    int& r = rep[g(i)];
    if (r < 0) {
      r = f(i);
    } else if (r != f(i)) {
      return false;
    }
  }
  return true;
}

std::optional<FiniteMap> collapse_over_inverse(const FiniteMap& a, const FiniteMap& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvariantViolation, "size mismatch");
  if (!b.is_onto() || !kernel_refines(b, a)) return std::nullopt;
  std::vector<std::uint8_t> t(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) t[b(i)] = a(i);
  return FiniteMap(std::move(t));
}

std::size_t default_cap(const FiniteMap&, const FiniteMap&) { return kFallbackCap; }

FiniteMap inverse(const FiniteMap& h) {
  if (!h.is_bijection()) throw Error(ErrorCode::NotHomeomorphism, h.to_string());
  return *collapse_over_inverse(FiniteMap::identity(h.size()), h);
}

}  // namespace kinship

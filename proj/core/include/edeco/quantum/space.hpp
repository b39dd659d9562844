#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace edeco {

struct Factor {
  std::string label;
  std::size_t dim = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
};

// Ordered tensor-factor structure of a composite Hilbert space. The first
// factor is the most significant index in the Kronecker layout.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<Factor> factors);

  static HilbertSpace single(std::string label, std::size_t dim);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::size_t total_dim() const noexcept { return total_dim_; }
  std::size_t num_factors() const noexcept { return factors_.size(); }

  std::optional<std::size_t> index_of(const std::string& label) const;
  bool contains(const std::string& label) const { return index_of(label).has_value(); }
  std::size_t dim_of(const std::string& label) const;

  std::set<std::string> labels() const;

  /// Factors of `*this` followed by factors of `other`; labels must stay unique.
  HilbertSpace concat(const HilbertSpace& other) const;

  /// Sub-space spanned by the listed factors, kept in this space's order.
  HilbertSpace subspace(const std::set<std::string>& keep) const;

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  std::vector<Factor> factors_;
  std::size_t total_dim_ = 1;
};

std::string describe(const HilbertSpace& space);

}  // namespace edeco

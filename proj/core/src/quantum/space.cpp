#include "edeco/quantum/space.hpp"

#include <sstream>

#include "edeco/error.hpp"

namespace edeco {

HilbertSpace::HilbertSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw Error(ErrorKind::invalid_argument, "HilbertSpace needs at least one factor");
  }
  std::set<std::string> seen;
  total_dim_ = 1;
  for (const auto& f : factors_) {
    if (f.label.empty()) {
      throw Error(ErrorKind::invalid_argument, "factor labels must be non-empty");
    }
    if (f.dim == 0) {
      throw Error(ErrorKind::invalid_argument, "factor '" + f.label + "' has dimension 0");
    }
    if (!seen.insert(f.label).second) {
      throw Error(ErrorKind::invalid_argument, "duplicate factor label '" + f.label + "'");
    }
    total_dim_ *= f.dim;
  }
}

HilbertSpace HilbertSpace::single(std::string label, std::size_t dim) {
  return HilbertSpace({Factor{std::move(label), dim}});
}

std::optional<std::size_t> HilbertSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label == label) return i;
  }
  return std::nullopt;
}

std::size_t HilbertSpace::dim_of(const std::string& label) const {
  auto idx = index_of(label);
  if (!idx) throw Error(ErrorKind::unknown_label, "unknown factor label '" + label + "'");
  return factors_[*idx].dim;
}

std::set<std::string> HilbertSpace::labels() const {
  std::set<std::string> out;
  for (const auto& f : factors_) out.insert(f.label);
  return out;
}

HilbertSpace HilbertSpace::concat(const HilbertSpace& other) const {
  std::vector<Factor> joined = factors_;
  joined.insert(joined.end(), other.factors_.begin(), other.factors_.end());
  return HilbertSpace(std::move(joined));
}

HilbertSpace HilbertSpace::subspace(const std::set<std::string>& keep) const {
  if (keep.empty()) {
    throw Error(ErrorKind::invalid_argument, "sub-space needs at least one label");
  }
  for (const auto& label : keep) {
    if (!contains(label)) {
      throw Error(ErrorKind::unknown_label, "unknown factor label '" + label + "'");
    }
  }
  std::vector<Factor> kept;
  for (const auto& f : factors_) {
    if (keep.count(f.label)) kept.push_back(f);
  }
  return HilbertSpace(std::move(kept));
}

std::string describe(const HilbertSpace& space) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < space.factors().size(); ++i) {
    if (i) os << " x ";
    os << space.factors()[i].label << ':' << space.factors()[i].dim;
  }
  os << ']';
  return os.str();
}

}  // namespace edeco

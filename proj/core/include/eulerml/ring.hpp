#ifndef EULERML_RING_HPP
#define EULERML_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eulerml/errors.hpp"

namespace eulerml {

/// Coefficient field of a variable ring.
enum class FieldTag { ExactRational, ComplexFloat };

/// Ordered list of variable names plus a coefficient-field tag. Polynomials hold
/// a shared pointer to their ring; operations on polynomials from different
/// rings raise RingMismatchError.
class VariableRing {
public:
  VariableRing(std::vector<std::string> names, FieldTag field, unsigned precisionBits = 53)
      : names_(std::move(names)), field_(field), precisionBits_(precisionBits) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw ValueError("variable names must be nonempty");
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw ValueError("duplicate variable name: " + names_[i]);
    }
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  FieldTag field() const { return field_; }
  unsigned precisionBits() const { return precisionBits_; }

  std::optional<std::size_t> indexOf(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  bool sameAs(const VariableRing& o) const {
    return names_ == o.names_ && field_ == o.field_;
  }

private:
  std::vector<std::string> names_;
  FieldTag field_;
  unsigned precisionBits_;
};

using RingPtr = std::shared_ptr<const VariableRing>;

inline RingPtr makeRationalRing(std::vector<std::string> names) {
  return std::make_shared<VariableRing>(std::move(names), FieldTag::ExactRational);
}

inline RingPtr makeComplexRing(std::vector<std::string> names, unsigned precisionBits = 53) {
  return std::make_shared<VariableRing>(std::move(names), FieldTag::ComplexFloat,
                                        precisionBits);
}

inline void requireSameRing(const RingPtr& a, const RingPtr& b) {
  if (a == b) return;
  if (a && b && a->sameAs(*b)) return;
  throw RingMismatchError("polynomials belong to different variable rings");
}

} // namespace eulerml

#endif

#pragma once

#include <vector>

#include "setopt/common.hpp"

namespace setopt {

enum class BoxFlag { Zero, NonNeg, NonPos, All };

std::string_view to_string(BoxFlag f);

/// Normal cone of one of the two structured sets handled here:
///  - FullSpace: an isolated point of a finite set (N = R^dim);
///  - BoxPattern: a box, coordinate-wise {0}, R_+, R_- or R.
struct NormalConeDescriptor {
  enum class Kind { FullSpace, BoxPattern };

  Kind kind = Kind::BoxPattern;
  Eigen::Index dim = 0;
  std::vector<BoxFlag> flags;  // BoxPattern only

  static NormalConeDescriptor full_space(Eigen::Index dim) {
    return {Kind::FullSpace, dim, {}};
  }
  static NormalConeDescriptor zero(Eigen::Index dim) {
    return {Kind::BoxPattern, dim, std::vector<BoxFlag>(static_cast<std::size_t>(dim), BoxFlag::Zero)};
  }
  static NormalConeDescriptor box(std::vector<BoxFlag> flags) {
    const auto d = static_cast<Eigen::Index>(flags.size());
    return {Kind::BoxPattern, d, std::move(flags)};
  }

  bool is_zero() const;
  bool contains(const Vec& v, double tau) const;
  /// Extreme rays generating the cone (+-e_i). Empty for {0}; FullSpace is not supported.
  std::vector<Vec> rays() const;
};

}  // namespace setopt

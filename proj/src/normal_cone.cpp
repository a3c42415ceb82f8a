#include "setopt/normal_cone.hpp"

namespace setopt {

std::string_view to_string(BoxFlag f) {
  switch (f) {
    case BoxFlag::Zero: return "Zero";
    case BoxFlag::NonNeg: return "NonNeg";
    case BoxFlag::NonPos: return "NonPos";
    case BoxFlag::All: return "All";
  }
  return "Unknown";
}

bool NormalConeDescriptor::is_zero() const {
  if (kind == Kind::FullSpace) return dim == 0;
  for (BoxFlag f : flags) {
    if (f != BoxFlag::Zero) return false;
  }
  return true;
}

bool NormalConeDescriptor::contains(const Vec& v, double tau) const {
  require_dim(v, dim, "normal vector");
  if (kind == Kind::FullSpace) return true;
  for (Eigen::Index i = 0; i < dim; ++i) {
    switch (flags[static_cast<std::size_t>(i)]) {
      case BoxFlag::Zero:
        if (std::abs(v[i]) > tau) return false;
        break;
      case BoxFlag::NonNeg:
        if (v[i] < -tau) return false;
        break;
      case BoxFlag::NonPos:
        if (v[i] > tau) return false;
        break;
      case BoxFlag::All: break;
    }
  }
  return true;
}

std::vector<Vec> NormalConeDescriptor::rays() const {
  if (kind == Kind::FullSpace) {
    throw Error(ErrorCode::InvalidArgument, "full-space normal cones have no box rays");
  }
  std::vector<Vec> out;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const BoxFlag f = flags[static_cast<std::size_t>(i)];
    if (f == BoxFlag::NonNeg || f == BoxFlag::All) out.push_back(Vec::Unit(dim, i));
    if (f == BoxFlag::NonPos || f == BoxFlag::All) out.push_back(-Vec::Unit(dim, i));
  }
  return out;
}

}  // namespace setopt

#include "setopt/common.hpp"

namespace setopt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyGenerators: return "EmptyGenerators";
    case ErrorCode::EnotInterior: return "EnotInterior";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::VariableIndexOutOfRange: return "VariableIndexOutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PointNotInSet: return "PointNotInSet";
    case ErrorCode::CollidingComponents: return "CollidingComponents";
    case ErrorCode::NotWeaklyMinimal: return "NotWeaklyMinimal";
    case ErrorCode::NotWeaklyMaximal: return "NotWeaklyMaximal";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NotInOmega: return "NotInOmega";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

void require_dim(const Vec& v, Eigen::Index dim, std::string_view what) {
  if (v.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has dimension " +
                                                  std::to_string(v.size()) + ", expected " +
                                                  std::to_string(dim));
  }
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() {
  // 53 high bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

Vec Rng::in_ball(const Vec& center, double radius) {
  const Eigen::Index n = center.size();
  Vec u(n);
  for (;;) {
    for (Eigen::Index i = 0; i < n; ++i) u[i] = uniform(-1.0, 1.0);
    if (u.squaredNorm() <= 1.0) break;
  }
  return center + radius * u;
}

Vec Rng::unit_direction(Eigen::Index dim) {
  Vec u(dim);
  for (;;) {
    for (Eigen::Index i = 0; i < dim; ++i) u[i] = uniform(-1.0, 1.0);
    const double r2 = u.squaredNorm();
    if (r2 <= 1.0 && r2 > 1e-4) break;
  }
  return u.normalized();
}

}  // namespace setopt

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace setopt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorCode {
  EmptyGenerators,
  EnotInterior,
  NotPointed,
  DimensionMismatch,
  SyntaxError,
  UnknownIdentifier,
  VariableIndexOutOfRange,
  DomainError,
  PointNotInSet,
  CollidingComponents,
  NotWeaklyMinimal,
  NotWeaklyMaximal,
  ToleranceNotReached,
  IndexOutOfRange,
  DimensionTooLarge,
  NotInOmega,
  InvalidArgument,
  SchemaError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Shared tolerance table. Every report prints it.
struct Tolerances {
  double eq = 1e-9;     // point deduplication, generator direction dedup, collisions
  double mem = 1e-9;    // cone membership band
  double act = 1e-8;    // active-face / argmin ties, relative to max(1, |value|)
  double stat = 1e-7;   // stationarity residual band
};

inline double active_band(double tau_act, double value) {
  return tau_act * std::max(1.0, std::abs(value));
}

void require_dim(const Vec& v, Eigen::Index dim, std::string_view what);

// mt19937_64 output is fixed by the standard; the mapping to doubles is done here
// rather than through <random> distributions, whose algorithms are unspecified.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  Vec in_ball(const Vec& center, double radius);
  Vec unit_direction(Eigen::Index dim);

 private:
  std::mt19937_64 engine_;
};

}  // namespace setopt

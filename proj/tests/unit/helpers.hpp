#pragma once

#include <initializer_list>
#include <vector>

#include <doctest.h>

#include "setopt/common.hpp"

inline setopt::Vec vec(std::initializer_list<double> xs) {
  setopt::Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline std::vector<setopt::Vec> pts(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<setopt::Vec> out;
  for (const auto& r : rows) out.push_back(vec(r));
  return out;
}

inline bool same_set(const std::vector<setopt::Vec>& a, const std::vector<setopt::Vec>& b,
                     double tol = 1e-12) {
  auto covered = [tol](const std::vector<setopt::Vec>& from, const std::vector<setopt::Vec>& to) {
    for (const auto& p : from) {
      bool hit = false;
      for (const auto& q : to) hit = hit || (p.size() == q.size() && (p - q).norm() <= tol);
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

#define CHECK_ERROR(expr, ec)                                      \
  do {                                                             \
    bool thrown_ = false;                                          \
    try {                                                          \
      (void)(expr);                                                \
    } catch (const setopt::Error& e_) {                            \
      thrown_ = true;                                              \
      CHECK_MESSAGE(e_.code() == (ec), e_.what());                 \
    }                                                              \
    CHECK_MESSAGE(thrown_, "expected an error from " #expr);       \
  } while (0)

#pragma once

#include <Eigen/Dense>

namespace hvf {

// Ambient dimensions stay small (S^3 sits in R^4), so vectors use bounded
// inline storage and never touch the heap.
inline constexpr int kMaxAmbient = 8;
inline constexpr int kMaxBundle = 2 * kMaxAmbient;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAmbient, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxAmbient, kMaxAmbient>;
using BundleVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxBundle, 1>;
using BundleMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                                kMaxBundle, kMaxBundle>;

inline Vec zeros(int n) { return Vec::Zero(n); }

inline Vec unit_vector(int n, int k) {
  Vec e = Vec::Zero(n);
  e(k) = 1.0;
  return e;
}

}  // namespace hvf

#pragma once

#include <vector>

#include <Eigen/Core>

namespace hsn {

/// Deterministic unit-sphere sample set in R^dim: a low-discrepancy grid plus
/// all +-coordinate axes (the axes realize extremal directions for diagonal
/// tensors). dim=1 gives {+1, -1}.
std::vector<Eigen::VectorXd> sphere_samples(int dim, int count);

struct GridConfig {
  double xi_min = 1e-3;
  double xi_max = 1e1;
  int radial = 24;
  int angular = 8;  ///< per-sphere sample count; ignored for n = 1 (two rays)
};

struct FrequencySample {
  Eigen::VectorXd xi;
  double weight;  ///< quadrature weight for integrals over R^n (d xi)
};

/// Log-radial x uniform-angular product grid over xi_min <= |xi| <= xi_max.
/// Weights combine trapezoidal log-radial quadrature, the r^{n-1} Jacobian and
/// the angular measure; xi = 0 is never included.
std::vector<FrequencySample> frequency_grid(int n, const GridConfig& cfg);

}  // namespace hsn

#pragma once

#include <functional>

#include <Eigen/Core>

#include "hsn/multiindex.hpp"

namespace hsn {

struct QuadResult {
  Eigen::VectorXcd value;
  double error = 0;  ///< accumulated error estimate (sum over intervals)
  int evaluations = 0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod 7/15 for vector-valued integrands on [a, b]:
/// repeatedly bisects the interval with the largest error estimate until
/// error <= abs_tol + rel_tol * |value| or the interval budget runs out.
/// dim is the integrand's output dimension.
QuadResult integrate(const std::function<Eigen::VectorXcd(double)>& f, double a, double b,
                     int dim, double abs_tol = 1e-12, double rel_tol = 1e-9,
                     int max_intervals = 4000);

struct ScalarQuadResult {
  cplx value;
  double error = 0;
  bool converged = false;
};

ScalarQuadResult integrate_scalar(const std::function<cplx(double)>& f, double a, double b,
                                  double abs_tol = 1e-12, double rel_tol = 1e-9,
                                  int max_intervals = 4000);

}  // namespace hsn

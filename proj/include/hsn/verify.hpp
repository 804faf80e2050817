#pragma once

#include <functional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "hsn/coefficients.hpp"
#include "hsn/halfspace.hpp"
#include "hsn/symbol.hpp"

namespace hsn {

/// Boundary Rellich inequality for self-adjoint slice-elliptic tensors:
/// the full trace energy is controlled by the mixed Dirichlet-Neumann
/// pairing, lhs <= rhs with
///   lhs = sum_xi weight sum_a omega_a |w^{(a)}(0)|^2,
///   rhs = -(2/lambda) sum_xi weight Re sum_l conj(w^{(l+1)}(0)) G_l.
struct RellichReport {
  double lhs = 0;
  double rhs = 0;
  double lambda_used = 0;  ///< min of the sampled global and per-direction slice constants
  double margin = 0;       ///< rhs - lhs; nonnegative up to roundoff when the hypotheses hold
};

/// Throws std::invalid_argument when A is not self-adjoint or the usable
/// slice constant is nonpositive. A negative margin on admissible input is a
/// finding, not an error.
RellichReport rellich_check(const CoefTensor& A, const FrequencyField& coeffs,
                            Side side = Side::upper, double root_tol = 1e-7);

/// Empirical constant in the uniqueness estimate:
/// (sup_L2 + square_function) / neumann_L2_weighted for a solved field.
double uniqueness_estimate(const CoefTensor& A, const FrequencyField& coeffs,
                           Side side = Side::upper, double root_tol = 1e-7);

/// Parameter sweep of boundary-matrix invertibility. Per value: the minimum
/// over the frequency samples of sigma_min/sigma_max of the row-normalized
/// Neumann matrix (row l divided by (2 pi |xi|)^{2m-1-l}, making the ratio
/// scale-invariant), the slice constant, and sign-change zeros of
/// Re det(normalized N) refined by bisection.
struct SweepReport {
  std::vector<double> values;
  std::vector<double> sigma_ratio;   ///< min over xi of sigma_min/sigma_max
  std::vector<double> lambda_slice;
  std::vector<double> zeros;         ///< refined to 1e-6
};

SweepReport wellposedness_sweep(const std::function<CoefTensor(double)>& family, double lo,
                                double hi, int steps,
                                const std::vector<Eigen::VectorXd>& xi_samples,
                                double zero_tol = 1e-9);

/// Walks A_s = (1-s) A0 + s A1 from s = 0 to 1, certifying each step by the
/// Neumann-series contraction ||N_s - N_r|| * ||N_r^{-1}|| <= 1/2 at every
/// frequency sample (operator 2-norms). Steps halve adaptively; if no step
/// above min_step is admissible the walk stops and reports the frontier.
struct ContinuationReport {
  std::vector<double> steps;  ///< certified s values in order (ends with 1 on success)
  bool success = false;
  double failure_point = 0;   ///< last certified s when !success
};

ContinuationReport continuation_certificate(const CoefTensor& A0, const CoefTensor& A1,
                                            const std::vector<Eigen::VectorXd>& xi_samples,
                                            double max_step = 0.25, double min_step = 1e-6,
                                            double root_tol = 1e-7);

/// Layer-potential jump relations at one frequency for random data:
/// single-layer traces match across the boundary and conormals sum to g
/// (closed form); double-layer traces jump by -f and conormals cancel
/// (quadrature-limited).
struct JumpReport {
  double single_trace = 0;     ///< |Tr+ S g - Tr- S g|
  double single_conormal = 0;  ///< |M+ S g + M- S g - g|
  double double_trace = 0;     ///< |Tr+ D f - Tr- D f + f|
  double double_conormal = 0;  ///< |M+ D f + M- D f|
  bool quad_ok = true;
};

JumpReport jump_check(const CoefTensor& A, const Eigen::VectorXd& xi, const NeumannVector& g,
                      const TraceVector& f, double quad_tol = 1e-9);

/// Green reproduction at one frequency: for an upper-side decaying solution
/// w, the combination -D(Tr+ w) + S(M+ w) reproduces w^{(a)}(t), a = 0..m,
/// at interior points t > 0 and vanishes at exterior points t < 0. Errors
/// are maxima over the sampled points and orders, relative to the trace
/// magnitude scale.
struct GreenReport {
  double interior = 0;
  double exterior = 0;
  bool quad_ok = true;
};

GreenReport green_check(const CoefTensor& A, const Eigen::VectorXd& xi, const ModeProfile& w,
                        double quad_tol = 1e-9);

/// Adjoint identities at one frequency (valid without self-adjointness):
///   <phi, M+ D_A f>   = <M+_{A*} D_{A*} phi, f>,
///   <gamma, Tr+ S_L g> = <Tr+ S_{L*} gamma, g>,
/// with <x, y> = sum conj(x_l) y_l. Reports both deviations.
struct DualityReport {
  double deviation_double = 0;
  double deviation_single = 0;
  bool quad_ok = true;
};

DualityReport duality_check(const CoefTensor& A, const Eigen::VectorXd& xi,
                            const TraceVector& phi, const TraceVector& f,
                            const NeumannVector& g, const TraceVector& gamma,
                            double quad_tol = 1e-9);

/// Standard-normal complex vector (re and im independent N(0,1)).
Eigen::VectorXcd random_complex_vector(int size, std::mt19937_64& rng);

/// Uniform direction on the unit sphere in n variables.
Eigen::VectorXd random_direction(int n, std::mt19937_64& rng);

/// Calibration tensor plus a Hermitian perturbation of entrywise magnitude
/// <= delta, rejection-sampled until the sampled slice constant exceeds
/// min_slice. Throws std::runtime_error when max_tries is exhausted.
CoefTensor random_selfadjoint_tensor(int n, int m, double delta, std::mt19937_64& rng,
                                     double min_slice = 0.1, int max_tries = 200);

/// Calibration tensor plus an arbitrary complex perturbation (generally not
/// self-adjoint), rejection-sampled until both the tensor and its adjoint
/// admit mode bases at a probe frequency.
CoefTensor random_tensor(int n, int m, double delta, std::mt19937_64& rng, int max_tries = 200);

}  // namespace hsn

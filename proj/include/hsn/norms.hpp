#pragma once

#include <Eigen/Core>

#include "hsn/coefficients.hpp"
#include "hsn/halfspace.hpp"
#include "hsn/symbol.hpp"

namespace hsn {

/// Closed-form int_0^inf t^{p+q+w} e^{(lambda + conj(mu)) t} dt
///   = (p+q+w)! / (-(lambda + conj(mu)))^{p+q+w+1}.
/// Throws std::domain_error unless Re(lambda + conj(mu)) < 0.
cplx gram_integral(cplx lambda, cplx mu, int p, int q, int weight_power);

/// Exact t^w-weighted squared L2 norm of a decaying profile on (0, inf),
/// assembled from gram_integral over all mode pairs.
double profile_weighted_l2(const ModeProfile& f, int weight_power);

/// Per-frequency solution seminorms of an upper-side decaying profile.
struct ModeNorms {
  double square_function = 0;        ///< sum_a omega_a int |w^{(a+1)}|^2 t dt
  double square_function_rough = 0;  ///< sum_a omega_a int |w^{(a)}|^2 t dt
  double sup_L2 = 0;                 ///< sup_t sum_a omega_a |w^{(a)}(t)|^2
};

/// Closed-form square functions; the sup is sampled on a log grid of 64
/// points per decade spanning [1e-3, 1e3]/|xi| plus t = 0 (the profiles are
/// finite exponential sums, so sampling at this density is faithful).
ModeNorms mode_norms(const ReducedSymbol& sym, const ModeProfile& w);

/// Weighted data seminorms of a frequency field with m-component payload.
/// The whitney/besov family reads the payload as trace data, the neumann
/// family as conormal data; all are weighted-L2 proxies on the frequency
/// side.
struct DataNorms {
  double whitney_L2 = 0;    ///< sum_l int omega^{(m-1)}_l |phi_l|^2
  double whitney_W1 = 0;    ///< ... times (2 pi |xi|)^2
  double besov_half = 0;    ///< ... times |xi|
  double neumann_L2_weighted = 0;       ///< sum_l int |G_l|^2 |xi|^{2l+2-2m}
  double neumann_Wminus1_weighted = 0;  ///< sum_l int |G_l|^2 |xi|^{2l-2m}
};

DataNorms data_norms(const FrequencyField& data, int m);

/// All solution and boundary norms of a solved coefficient field in one
/// report (flagged/zero samples contribute nothing).
struct NormReport {
  double square_function = 0;
  double square_function_rough = 0;
  double sup_L2 = 0;  ///< sup over a global t grid of the xi-integrated slice norm
  double whitney_L2 = 0;
  double whitney_W1 = 0;
  double besov_half = 0;
  double neumann_L2_weighted = 0;
  double neumann_Wminus1_weighted = 0;
};

/// Per frequency: reconstructs the profile, takes square functions and slice
/// norms in closed form, boundary traces and conormals exactly, and
/// integrates with the field's quadrature weights. The sup_L2 grid spans
/// [1e-3/max|xi|, 1e3/min|xi|] at 64 points per decade plus t = 0.
NormReport solution_report(const CoefTensor& A, const FrequencyField& coeffs, Side side,
                           double root_tol = 1e-7);

}  // namespace hsn

#pragma once

#include <Eigen/Core>

#include "hsn/halfspace.hpp"
#include "hsn/symbol.hpp"

namespace hsn {

/// Per-frequency fundamental solution E of the vertical ODE, p(d/dt) E =
/// delta: an exponential sum over the decaying roots on t > 0 and over the
/// growing roots on t < 0 (the lower coefficients carry the matching minus
/// sign from the anticausal transform). E is C^{2m-2} across 0 and
/// E^{(2m-1)} jumps by exactly 1/lead.
struct OdeKernel {
  ModeProfile upper;  ///< valid on t > 0
  ModeProfile lower;  ///< valid on t < 0
  cplx lead;          ///< leading charpoly coefficient p[2m]
  int m = 0;
};

/// Partial fractions of 1/p with full multiplicity handling: at each root,
/// Taylor-shift p, invert the regular factor as a power series, and read off
/// the pole coefficients.
OdeKernel newton_kernel(const ReducedSymbol& sym, double root_tol = 1e-7);

/// Coefficients of p(z0 + u) in ascending powers of u (synthetic division).
Eigen::VectorXcd taylor_shift(const Eigen::VectorXcd& p, cplx z0);

/// First `count` power-series coefficients of 1/h; requires h[0] != 0.
Eigen::VectorXcd series_inverse(const Eigen::VectorXcd& h, int count);

/// A potential: one exact mode profile per open half-line.
struct LayerPotential {
  ModeProfile upper;  ///< valid on t > 0
  ModeProfile lower;  ///< valid on t < 0
};

/// Single layer S g = sum_{l=0}^{m-1} (-1)^l g_l E^{(l)} on both sides.
/// Traces match across t = 0 exactly (E is C^{2m-2}); the conormal sum
/// M+ S g + M- S g reproduces g.
LayerPotential single_layer(const OdeKernel& kernel, const NeumannVector& g);

/// u = sum_{a=0}^{m} (-1)^a s_a E^{(a)} for arbitrary reduced delta-layer
/// weights s (length m+1).
LayerPotential layer_from_source(const OdeKernel& kernel, const Eigen::VectorXcd& s);

/// How Neumann components are spread over order-m derivative arrays before
/// reduction. Any admissible spreading yields the same potential; the two
/// schemes are kept to test that independence.
enum class SourceScheme {
  omega,  ///< v_{(mu,a)} = (2 pi i xi)^mu g_a / omega_a, smooth in xi != 0
  axis    ///< concentrate on the largest-|xi_k| coordinate axis
};

/// Array source over the canonical order-m multiindex set in n+1 variables
/// whose trace pairing reproduces g (entries with vertical order a = m are
/// zero). The axis scheme requires the chosen component of xi to be nonzero.
Eigen::VectorXcd source_array(const ReducedSymbol& sym, SourceScheme scheme,
                              const NeumannVector& g);

/// Collapse an array source to the reduced delta-layer weights
/// s_a = sum_{|mu| = m-a} conj((2 pi i xi)^mu) v_{(mu,a)}.
Eigen::VectorXcd reduce_source(const ReducedSymbol& sym, const Eigen::VectorXcd& v);

/// Derivatives 0..count-1 at t of the boundary extension
///   (E phi)(t) = e^{-(2 pi |xi| t)^{2m}} sum_{k<m} (t^k / k!) phi_k,
/// whose first m-1 derivatives at 0 reproduce phi.
Eigen::VectorXcd extension_derivs(int m, double scale, const TraceVector& phi, double t,
                                  int count);

/// Smallest T with e^{-(scale T)^{2m}} <= tail.
double extension_cutoff(int m, double scale, double tail = 1e-16);

struct QuadReport {
  double error = 0;
  int evaluations = 0;
  bool converged = true;
};

/// Double layer D f = -1_+ F + Pi(1_+ A grad^m F) with F the boundary
/// extension of f. On each open half-line D f solves the homogeneous ODE, so
/// its far-field mode representation (extracted from convolution integrals
/// of the kernel against the reduced source h_a = sum_b C_ab F^{(b)})
/// extends to the whole half-line by ODE uniqueness; the returned profiles
/// are that representation, with -F already accounted for.
LayerPotential double_layer(const ReducedSymbol& sym, const OdeKernel& kernel,
                            const TraceVector& f, double quad_tol = 1e-9,
                            QuadReport* report = nullptr);

/// Neumann pairing through the extension: quadrature realization of
///   int_eps^T sum_ab C_ab conj((E phi)^{(a)}) w^{(b)} dt,
/// which equals sum_l conj(phi_l) G_l[w] for upper-side decaying w.
cplx neumann_via_E(const ReducedSymbol& sym, const ModeProfile& w, const TraceVector& phi,
                   double quad_tol = 1e-9);

}  // namespace hsn

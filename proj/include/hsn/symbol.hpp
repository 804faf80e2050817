#pragma once

#include <vector>

#include <Eigen/Core>

#include "hsn/coefficients.hpp"

namespace hsn {

/// Vertical reduction of a coefficient tensor at a fixed nonzero horizontal
/// frequency xi: with d^g picking up (2 pi i xi)^{g_par} on the horizontal
/// factors, the sesquilinear form collapses to an (m+1) x (m+1) matrix over
/// the vertical orders,
///   C_{ab}(xi) = sum conj((2 pi i xi)^{a_par}) A_{(a_par,a),(b_par,b)}
///                    (2 pi i xi)^{b_par}.
/// Self-adjoint tensors give Hermitian C.
struct ReducedSymbol {
  int n = 0;
  int m = 0;
  Eigen::VectorXd xi;
  double scale = 0;       ///< 2 pi |xi|, the natural length^-1 of the slice
  Eigen::MatrixXcd C;     ///< (m+1) x (m+1), indices are vertical orders
  Eigen::VectorXd omega;  ///< omega_a = sum_{|mu| = m-a} (2 pi xi)^{2 mu}
};

/// Throws std::invalid_argument when xi is zero, non-finite, or has the wrong
/// dimension. xi = 0 is a genuine boundary of the theory, not a removable
/// limit, so it is rejected rather than regularized.
ReducedSymbol reduce(const CoefTensor& t, const Eigen::VectorXd& xi);

/// Weight vector of an order-`order` derivative array at frequency xi:
/// entry a = sum_{|mu| = order-a} (2 pi xi)^{2 mu}, a = 0..order, so that
/// |grad^order u|^2 at frequency xi is sum_a (entry a) |u^{(a)}|^2.
Eigen::VectorXd omega_weights(int n, int order, const Eigen::VectorXd& xi);

/// Characteristic polynomial of the vertical ODE
///   sum_{ab} (-1)^a C_{ab} w^{(a+b)} = 0,
/// ascending coefficients p[0..2m] with p[a+b] += (-1)^a C_{ab}. Exponentials
/// e^{lambda t} solve the ODE exactly when p(lambda) = 0.
Eigen::VectorXcd charpoly(const ReducedSymbol& sym);

/// Roots of an ascending-coefficient polynomial via the companion matrix.
/// Requires a nonzero leading coefficient.
std::vector<cplx> poly_roots(const Eigen::VectorXcd& p);

/// Distinct root with algebraic multiplicity.
struct SymbolRoot {
  cplx lambda;
  int mult = 1;
};

/// Single-linkage clustering of numerically simple roots into distinct roots
/// with multiplicity; tol is the linkage threshold in the units of the input.
/// Each cluster reports its arithmetic mean. Output is sorted by (Re, Im).
std::vector<SymbolRoot> cluster_roots(const std::vector<cplx>& roots, double tol);

/// The two root systems of the vertical ODE at one frequency. Slice
/// ellipticity forces an empty imaginary axis and exactly m roots per side
/// (with multiplicity).
struct ModeBasis {
  std::vector<SymbolRoot> decaying;  ///< Re lambda < 0
  std::vector<SymbolRoot> growing;   ///< Re lambda > 0
  double scale = 0;                  ///< 2 pi |xi|; roots live at this magnitude
  cplx lead;                         ///< leading charpoly coefficient p[2m]
};

/// Root-finds the characteristic polynomial in the normalized variable
/// mu = lambda / (2 pi |xi|) (where roots are O(1) regardless of frequency),
/// clusters with threshold root_tol in mu units, rescales, and splits by the
/// sign of Re. Throws std::runtime_error when a cluster sits within root_tol
/// of the imaginary axis or the side counts differ from m; either event
/// certifies a slice-ellipticity failure at this frequency.
ModeBasis mode_basis(const ReducedSymbol& sym, double root_tol = 1e-7);

/// Closed-form decaying roots of the calibration operator:
/// lambda_k = 2 pi |xi| i e^{i pi k/(m+1)}, k = 1..m, all simple.
std::vector<cplx> special_roots(int m, double scale);

/// j-th derivative of t^r e^{lambda t} at t = 0:
/// binom(j, r) r! lambda^{j-r} for j >= r, else 0.
cplx deriv0(cplx lambda, int r, int j);

/// Finite sum  sum_j sum_r coeffs[j][r] t^r e^{lambdas[j] t}. Every profile
/// this library produces (solutions, fundamental kernels, layer potentials at
/// fixed frequency) has this form, so differentiation and boundary traces are
/// exact rational operations on the coefficients.
struct ModeProfile {
  std::vector<cplx> lambdas;
  std::vector<Eigen::VectorXcd> coeffs;  ///< coeffs[j][r] multiplies t^r e^{lambdas[j] t}

  int terms() const { return static_cast<int>(lambdas.size()); }
};

/// Termwise d/dt: c[r] -> lambda c[r] + (r+1) c[r+1].
ModeProfile differentiate(const ModeProfile& f);

/// Point evaluation (Horner in t inside each exponential mode).
cplx eval_profile(const ModeProfile& f, double t);

/// Exact f(0), f'(0), ..., f^{(count-1)}(0).
Eigen::VectorXcd derivs_at_zero(const ModeProfile& f, int count);

/// Smallest |Re lambda| across the profile's modes (controls the slowest
/// exponential rate, hence truncation lengths). Returns +inf for an empty
/// profile.
double min_decay_rate(const ModeProfile& f);

}  // namespace hsn

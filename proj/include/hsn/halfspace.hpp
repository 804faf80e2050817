#pragma once

#include <vector>

#include <Eigen/Core>

#include "hsn/coefficients.hpp"
#include "hsn/grids.hpp"
#include "hsn/symbol.hpp"

namespace hsn {

/// Which component of {t > 0} cup {t < 0} a solve or trace refers to.
/// Upper-side solutions are spanned by the decaying roots (Re lambda < 0),
/// lower-side ones by the growing roots, so both decay away from t = 0.
enum class Side { upper, lower };

using TraceVector = Eigen::VectorXcd;    ///< (w(0), w'(0), ..., w^{(m-1)}(0))
using NeumannVector = Eigen::VectorXcd;  ///< conormal components (G_0, ..., G_{m-1})

/// Frequency samples with quadrature weights plus one payload vector per
/// sample (boundary data or mode coefficients).
struct FrequencyField {
  int n = 0;
  std::vector<FrequencySample> samples;
  std::vector<Eigen::VectorXcd> payload;

  int size() const { return static_cast<int>(samples.size()); }
};

/// Throws std::invalid_argument on zero or non-finite frequencies,
/// nonpositive weights, payload arity mismatches, or non-finite payloads.
void validate_field(const FrequencyField& field);

const std::vector<SymbolRoot>& side_roots(const ModeBasis& basis, Side side);

/// Number of basis columns (sum of multiplicities).
int basis_dimension(const std::vector<SymbolRoot>& roots);

/// Mode profile from coefficients in the canonical column order: roots in
/// listed order, powers r = 0..mult-1 within each root.
ModeProfile profile_from_coeffs(const std::vector<SymbolRoot>& roots, const Eigen::VectorXcd& f);

/// Trace map: entry (l, k) is the l-th t-derivative at 0 of the k-th basis
/// column (confluent Vandermonde when roots repeat), l = 0..m-1.
Eigen::MatrixXcd dirichlet_map(const std::vector<SymbolRoot>& roots, int m);

/// First m derivatives at 0 of an arbitrary profile.
TraceVector traces_of(const ModeProfile& w, int m);

/// Conormal data of a profile decaying on the given side: integrating
/// <grad^m psi, A grad^m w> by parts in t over that side leaves the boundary
/// pairing sum_l conj(psi^{(l)}(0)) G_l with
///   G_l = -+ sum_{b=0}^{m} sum_{a=l+1}^{m} (-1)^{a-1-l} C_ab w^{(a+b-1-l)}(0)
/// (minus on the upper side, plus on the lower side).
NeumannVector conormal_of(const ReducedSymbol& sym, const ModeProfile& w, Side side);

/// Matrix of conormal_of over the basis columns: N f = G for mode
/// coefficients f in the canonical column order.
Eigen::MatrixXcd neumann_map(const ReducedSymbol& sym, const std::vector<SymbolRoot>& roots,
                             Side side);

/// Closed-form conormal matrix of the calibration operator at 2 pi |xi| = s:
///   N_{lk} = -2 i^l s^{2m-1-l} sin(pi (1+l) k / (m+1)) / (e^{2 pi i k/(m+1)} - 1),
/// rows l = 0..m-1, columns matching the k = 1..m ordering of special_roots.
Eigen::MatrixXcd special_neumann_matrix(int m, double scale);

/// M_{Lk} = sin(pi L k / (m+1)), L, k = 1..m; satisfies M^2 = ((m+1)/2) I.
Eigen::MatrixXd sine_matrix(int m);

/// Exact inverse (2/(m+1)) M.
Eigen::MatrixXd sine_matrix_inverse(int m);

struct SolveOptions {
  double rtol = 1e-9;      ///< residual acceptance |N f - G| <= rtol |G|
  double cond_max = 1e12;  ///< conditioning ceiling before flagging
  double root_tol = 1e-7;  ///< root clustering threshold (normalized units)
};

/// One-frequency boundary solve. ill_posed marks a singular or
/// beyond-cond_max boundary matrix, a residual failure, or a
/// slice-ellipticity breakdown during root finding; f and w are then zero
/// and cond carries whatever was measurable (inf when the basis itself
/// failed).
struct FrequencySolve {
  Eigen::VectorXcd f;
  ModeProfile w;
  double cond = 0;
  double residual = 0;
  bool ill_posed = false;
};

FrequencySolve solve_neumann_at(const CoefTensor& A, const Eigen::VectorXd& xi,
                                const NeumannVector& G, Side side, const SolveOptions& opt = {});
FrequencySolve solve_dirichlet_at(const CoefTensor& A, const Eigen::VectorXd& xi,
                                  const TraceVector& phi, Side side, const SolveOptions& opt = {});

/// Field-level solve; samples are processed independently in sample order.
struct FieldSolve {
  FrequencyField coeffs;        ///< payload = mode coefficients per sample
  std::vector<double> cond;
  std::vector<char> ill_posed;  ///< 1 where the sample was flagged
  int flagged = 0;
};

FieldSolve solve_neumann(const CoefTensor& A, const FrequencyField& data, Side side,
                         const SolveOptions& opt = {});
FieldSolve solve_dirichlet(const CoefTensor& A, const FrequencyField& data, Side side,
                           const SolveOptions& opt = {});

struct SpatialPoint {
  Eigen::VectorXd x;
  double t = 0;
};

/// All order-j derivative components of the synthesized solution:
///   value(p, c) = sum_samples weight (2 pi i xi)^{gamma_par}
///                 (d/dt)^{gamma_vert} w(xi, t_p) e^{2 pi i xi . x_p}
/// for gamma = components[c]; flagged samples contribute zero.
struct Synthesis {
  MultiIndexSet components;  ///< order-j multiindices in n+1 variables
  Eigen::MatrixXcd values;   ///< points x components
};

Synthesis synthesize(const CoefTensor& A, const FrequencyField& coeffs, Side side,
                     const std::vector<SpatialPoint>& points, int j,
                     double root_tol = 1e-7);

}  // namespace hsn

#pragma once

#include <string>

#include <Eigen/Core>

#include "hsn/multiindex.hpp"

namespace hsn {

/// Constant coefficient tensor A_{ab} of a 2m-th order operator in n+1
/// variables (n horizontal + 1 vertical); both indices run over the canonical
/// enumeration of order-m multiindices in dimension n+1.
struct CoefTensor {
  int n = 0;  ///< horizontal dimension
  int m = 0;  ///< half the operator order
  MultiIndexSet mis;
  Eigen::MatrixXcd A;

  int side() const { return mis.size(); }
};

/// Diagonal tensor with A_{aa} = |a_par|!/a_par! where a_par is the horizontal
/// part. Its vertical reduction has the closed-form root/trace theory used as
/// the calibration anchor throughout.
CoefTensor make_special_operator(int n, int m);

/// Fourth-order family from the form rho <Lap u, Lap v> +
/// (1-rho) sum_{jk} <d_j d_k u, d_j d_k v>; rho = Poisson-ratio-like parameter.
CoefTensor make_biharmonic_rho(int n, double rho);

/// A*_{ab} = conj(A_{ba}).
CoefTensor adjoint_tensor(const CoefTensor& t);

/// max |A_{ab} - conj(A_{ba})| <= tol
bool check_self_adjoint(const CoefTensor& t, double tol = 1e-12);

struct EllipticityReport {
  double lambda_slice = 0;    ///< min generalized eigenvalue of (Herm C(xi), Omega(xi)) over directions
  double lambda_garding = 0;  ///< Garding constant restricted to gradient arrays
  double Lambda = 0;          ///< max |A_{ab}|
  bool is_self_adjoint = false;
  int sample_count = 0;
};

/// Slice constant for one tangential direction |dir| = 1: smallest eigenvalue
/// of the Hermitian part of C(dir) relative to diag(omega_a(dir)).
double slice_ellipticity_at(const CoefTensor& t, const Eigen::VectorXd& dir);

/// Samples the unit sphere (deterministic grid plus all coordinate axes).
/// Both quadratic forms are 0-homogeneous after weight matching, so sphere
/// sampling determines the constants.
EllipticityReport ellipticity_report(const CoefTensor& t, int angular_samples = 256);

/// Slice constant only (same sampling as ellipticity_report).
double slice_ellipticity(const CoefTensor& t, int angular_samples = 256);

}  // namespace hsn

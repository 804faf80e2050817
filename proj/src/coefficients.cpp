#include "hsn/coefficients.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "hsn/grids.hpp"
#include "hsn/symbol.hpp"

namespace hsn {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

CoefTensor make_special_operator(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("make_special_operator: need n, m >= 1");
  CoefTensor t;
  t.n = n;
  t.m = m;
  t.mis = MultiIndexSet(n + 1, m);
  t.A = Eigen::MatrixXcd::Zero(t.side(), t.side());
  for (int i = 0; i < t.side(); ++i) {
    MultiIndex par(t.mis[i].begin(), t.mis[i].end() - 1);
    t.A(i, i) = static_cast<double>(multinomial(par));
  }
  return t;
}

CoefTensor make_biharmonic_rho(int n, double rho) {
  if (n < 1) throw std::invalid_argument("make_biharmonic_rho: need n >= 1");
  CoefTensor t;
  t.n = n;
  t.m = 2;
  t.mis = MultiIndexSet(n + 1, 2);
  const int d = n + 1;
  t.A = Eigen::MatrixXcd::Zero(t.side(), t.side());
  auto second = [&](int j, int k) {
    MultiIndex a(d, 0);
    a[j] += 1;
    a[k] += 1;
    return t.mis.index_of(a);
  };
  // rho <Lap, Lap>: couples all pure-second-derivative pairs
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l) t.A(second(j, j), second(l, l)) += rho;
  // (1-rho) sum_{jk} <d_j d_k, d_j d_k>: mixed pairs (j,k),(k,j) both count
  for (int j = 0; j < d; ++j) t.A(second(j, j), second(j, j)) += 1.0 - rho;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) t.A(second(j, k), second(j, k)) += 2.0 * (1.0 - rho);
  return t;
}

CoefTensor adjoint_tensor(const CoefTensor& t) {
  CoefTensor s = t;
  s.A = t.A.adjoint();
  return s;
}

bool check_self_adjoint(const CoefTensor& t, double tol) {
  return (t.A - t.A.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double slice_ellipticity_at(const CoefTensor& t, const Eigen::VectorXd& dir) {
  ReducedSymbol sym = reduce(t, dir);
  Eigen::MatrixXcd H = 0.5 * (sym.C + sym.C.adjoint());
  // generalized problem (H, Omega) with Omega = diag(omega) > 0
  Eigen::VectorXd oisqrt = sym.omega.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXcd W = oisqrt.asDiagonal() * H * oisqrt.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W);
  return es.eigenvalues().minCoeff();
}

namespace {

double garding_at(const CoefTensor& t, const Eigen::VectorXd& zeta) {
  // Rayleigh quotient of the full symbol on the gradient array (2 pi i zeta)^a
  Eigen::VectorXcd z = cplx(0, kTwoPi) * zeta.cast<cplx>();
  Eigen::VectorXcd v(t.side());
  for (int i = 0; i < t.side(); ++i) v[i] = mi_pow(z, t.mis[i]);
  cplx q = v.dot(t.A * v);
  return q.real() / v.squaredNorm();
}

}  // namespace

double slice_ellipticity(const CoefTensor& t, int angular_samples) {
  double lam = std::numeric_limits<double>::infinity();
  for (const auto& d : sphere_samples(t.n, angular_samples))
    lam = std::min(lam, slice_ellipticity_at(t, d));
  return lam;
}

EllipticityReport ellipticity_report(const CoefTensor& t, int angular_samples) {
  EllipticityReport rep;
  rep.Lambda = t.A.cwiseAbs().maxCoeff();
  rep.is_self_adjoint = check_self_adjoint(t);
  auto slice_dirs = sphere_samples(t.n, angular_samples);
  auto full_dirs = sphere_samples(t.n + 1, angular_samples);
  rep.sample_count = static_cast<int>(slice_dirs.size() + full_dirs.size());
  rep.lambda_slice = std::numeric_limits<double>::infinity();
  for (const auto& d : slice_dirs) rep.lambda_slice = std::min(rep.lambda_slice, slice_ellipticity_at(t, d));
  rep.lambda_garding = std::numeric_limits<double>::infinity();
  for (const auto& z : full_dirs) rep.lambda_garding = std::min(rep.lambda_garding, garding_at(t, z));
  return rep;
}

}  // namespace hsn

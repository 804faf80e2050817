#include "hsn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "hsn/norms.hpp"
#include "hsn/potentials.hpp"

namespace hsn {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper-side conormal with an explicit (possibly reflected) symbol matrix.
Eigen::VectorXcd conormal_upper(const Eigen::MatrixXcd& C, const Eigen::VectorXcd& d, int m) {
  Eigen::VectorXcd G = Eigen::VectorXcd::Zero(m);
  for (int l = 0; l < m; ++l) {
    cplx acc(0, 0);
    for (int a = l + 1; a <= m; ++a) {
      const double par = ((a - 1 - l) % 2) ? -1.0 : 1.0;
      for (int b = 0; b <= m; ++b) acc += par * C(a, b) * d[a + b - 1 - l];
    }
    G[l] = -acc;
  }
  return G;
}

double op_norm(const Eigen::MatrixXcd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues()[0];
}

double sigma_min_ratio(const Eigen::MatrixXcd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv[0] == 0.0) return 0.0;
  return sv[sv.size() - 1] / sv[0];
}

Eigen::MatrixXcd row_normalized_neumann(const CoefTensor& A, const Eigen::VectorXd& xi,
                                        double root_tol) {
  const ReducedSymbol sym = reduce(A, xi);
  const ModeBasis mb = mode_basis(sym, root_tol);
  Eigen::MatrixXcd N = neumann_map(sym, mb.decaying, Side::upper);
  for (int l = 0; l < A.m; ++l) N.row(l) /= std::pow(sym.scale, 2 * A.m - 1 - l);
  return N;
}

CoefTensor interpolate(const CoefTensor& A0, const CoefTensor& A1, double s) {
  CoefTensor t = A0;
  t.A = (1.0 - s) * A0.A + s * A1.A;
  return t;
}
}  // namespace

RellichReport rellich_check(const CoefTensor& A, const FrequencyField& coeffs, Side side,
                            double root_tol) {
  if (!check_self_adjoint(A))
    throw std::invalid_argument("rellich_check: tensor must be self-adjoint");
  validate_field(coeffs);
  const int m = A.m;

  double lam = slice_ellipticity(A, 256);
  for (const FrequencySample& s : coeffs.samples)
    lam = std::min(lam, slice_ellipticity_at(A, s.xi.normalized()));
  if (!(lam > 0))
    throw std::invalid_argument("rellich_check: slice constant must be positive");

  RellichReport rep;
  rep.lambda_used = lam;
  for (int i = 0; i < coeffs.size(); ++i) {
    const Eigen::VectorXcd& fcoef = coeffs.payload[i];
    if (fcoef.size() == 0 || fcoef.cwiseAbs().maxCoeff() == 0.0) continue;
    const double wgt = coeffs.samples[i].weight;
    const ReducedSymbol sym = reduce(A, coeffs.samples[i].xi);
    const ModeBasis mb = mode_basis(sym, root_tol);
    ModeProfile w = profile_from_coeffs(side_roots(mb, side), fcoef);

    Eigen::MatrixXcd C = sym.C;
    if (side == Side::lower) {
      // Reflect t -> -t: an upper-side problem for the sign-conjugated
      // symbol, with the same omega weights and slice constant.
      for (auto& lamj : w.lambdas) lamj = -lamj;
      for (auto& c : w.coeffs)
        for (int r = 1; r < c.size(); r += 2) c[r] = -c[r];
      for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= m; ++b)
          if ((a + b) % 2) C(a, b) = -C(a, b);
    }

    const Eigen::VectorXcd d = derivs_at_zero(w, 2 * m);
    for (int a = 0; a <= m; ++a) rep.lhs += wgt * sym.omega[a] * std::norm(d[a]);
    const Eigen::VectorXcd G = conormal_upper(C, d, m);
    cplx pair(0, 0);
    for (int l = 0; l < m; ++l) pair += std::conj(d[l + 1]) * G[l];
    rep.rhs += wgt * (-2.0 / lam) * pair.real();
  }
  rep.margin = rep.rhs - rep.lhs;
  return rep;
}

double uniqueness_estimate(const CoefTensor& A, const FrequencyField& coeffs, Side side,
                           double root_tol) {
  const NormReport rep = solution_report(A, coeffs, side, root_tol);
  if (rep.neumann_L2_weighted == 0.0) return 0.0;
  return (rep.sup_L2 + rep.square_function) / rep.neumann_L2_weighted;
}

SweepReport wellposedness_sweep(const std::function<CoefTensor(double)>& family, double lo,
                                double hi, int steps,
                                const std::vector<Eigen::VectorXd>& xi_samples,
                                double zero_tol) {
  if (steps < 1) throw std::invalid_argument("wellposedness_sweep: need at least one step");
  if (xi_samples.empty()) throw std::invalid_argument("wellposedness_sweep: need xi samples");

  SweepReport rep;
  auto ratio_at = [&](double v, const Eigen::VectorXd& xi) {
    try {
      return sigma_min_ratio(row_normalized_neumann(family(v), xi, 1e-7));
    } catch (const std::runtime_error&) {
      return 0.0;  // no admissible root split: certificate fails outright
    }
  };
  auto zdet = [&](double v) {
    try {
      return row_normalized_neumann(family(v), xi_samples[0], 1e-7).determinant().real();
    } catch (const std::runtime_error&) {
      return 0.0;
    }
  };

  for (int i = 0; i < steps; ++i) {
    const double v = (steps == 1) ? lo : lo + (hi - lo) * i / (steps - 1);
    rep.values.push_back(v);
    double worst = kInf;
    for (const Eigen::VectorXd& xi : xi_samples) worst = std::min(worst, ratio_at(v, xi));
    rep.sigma_ratio.push_back(worst);
    rep.lambda_slice.push_back(slice_ellipticity(family(v), 64));
  }

  // Zeros: exact grid hits plus sign changes of Re det, refined by bisection.
  for (size_t i = 0; i < rep.values.size(); ++i)
    if (rep.sigma_ratio[i] <= zero_tol && (i == 0 || rep.sigma_ratio[i - 1] > zero_tol))
      rep.zeros.push_back(rep.values[i]);
  for (size_t i = 0; i + 1 < rep.values.size(); ++i) {
    double a = rep.values[i], b = rep.values[i + 1];
    double fa = zdet(a), fb = zdet(b);
    if (fa == 0.0 || fb == 0.0 || fa * fb > 0) continue;
    for (int it = 0; it < 80 && (b - a) > 1e-9; ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = zdet(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if (fa * fm < 0) {
        b = mid;
        fb = fm;
      } else {
        a = mid;
        fa = fm;
      }
    }
    rep.zeros.push_back(0.5 * (a + b));
  }
  std::sort(rep.zeros.begin(), rep.zeros.end());
  rep.zeros.erase(std::unique(rep.zeros.begin(), rep.zeros.end(),
                              [](double x, double y) { return std::abs(x - y) < 1e-6; }),
                  rep.zeros.end());
  return rep;
}

ContinuationReport continuation_certificate(const CoefTensor& A0, const CoefTensor& A1,
                                            const std::vector<Eigen::VectorXd>& xi_samples,
                                            double max_step, double min_step, double root_tol) {
  if (A0.n != A1.n || A0.m != A1.m)
    throw std::invalid_argument("continuation_certificate: tensor shapes must match");
  if (xi_samples.empty())
    throw std::invalid_argument("continuation_certificate: need xi samples");

  // The walked object is the Dirichlet-to-Neumann composition N D^{-1} in
  // fixed trace coordinates: unlike the raw mode-coefficient matrices it is
  // independent of root ordering and continuous through root confluence, so
  // the contraction test compares like with like. Its invertibility is
  // equivalent to that of the Neumann matrix whenever the trace map is
  // invertible. Rows are equilibrated by the scale powers sigma^{2m-1-l}
  // (conormal) and sigma^{l} (trace) so the walked matrix is dimensionless
  // and the contraction constant does not degrade at extreme frequencies.
  const int m = A0.m;
  auto maps_at = [&](double s, std::vector<Eigen::MatrixXcd>& out) {
    out.clear();
    for (const Eigen::VectorXd& xi : xi_samples) {
      const CoefTensor As = interpolate(A0, A1, s);
      const ReducedSymbol sym = reduce(As, xi);
      const ModeBasis mb = mode_basis(sym, root_tol);
      Eigen::MatrixXcd N = neumann_map(sym, mb.decaying, Side::upper);
      Eigen::MatrixXcd D = dirichlet_map(mb.decaying, m);
      for (int l = 0; l < m; ++l) {
        N.row(l) /= std::pow(sym.scale, 2 * m - 1 - l);
        D.row(l) /= std::pow(sym.scale, l);
      }
      // X = N D^{-1} via D^T X^T = N^T
      out.push_back(D.transpose().partialPivLu().solve(N.transpose()).transpose());
    }
  };

  ContinuationReport rep;
  std::vector<Eigen::MatrixXcd> Nref;
  std::vector<double> inv_norm;
  try {
    maps_at(0.0, Nref);
  } catch (const std::runtime_error&) {
    rep.failure_point = 0.0;
    return rep;
  }
  inv_norm.resize(Nref.size());
  for (size_t k = 0; k < Nref.size(); ++k) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Nref[k]);
    const double smin = svd.singularValues()[Nref[k].rows() - 1];
    if (smin == 0.0) {
      rep.failure_point = 0.0;
      return rep;
    }
    inv_norm[k] = 1.0 / smin;
  }

  double r = 0.0;
  double ds = max_step;
  rep.steps.push_back(0.0);
  while (r < 1.0) {
    const double s = std::min(r + ds, 1.0);
    bool ok = true;
    std::vector<Eigen::MatrixXcd> Ns;
    try {
      maps_at(s, Ns);
      for (size_t k = 0; k < Nref.size() && ok; ++k)
        if (op_norm(Ns[k] - Nref[k]) * inv_norm[k] > 0.5) ok = false;
    } catch (const std::runtime_error&) {
      ok = false;
    }
    if (ok) {
      // New reference: recompute the inverse norms at the certified point.
      bool invertible = true;
      for (size_t k = 0; k < Ns.size(); ++k) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Ns[k]);
        const double smin = svd.singularValues()[Ns[k].rows() - 1];
        if (smin == 0.0) {
          invertible = false;
          break;
        }
        inv_norm[k] = 1.0 / smin;
      }
      if (!invertible) {
        rep.failure_point = r;
        return rep;
      }
      Nref = std::move(Ns);
      r = s;
      rep.steps.push_back(r);
      ds = max_step;
    } else {
      ds *= 0.5;
      if (ds < min_step) {
        rep.failure_point = r;
        return rep;
      }
    }
  }
  rep.success = true;
  rep.failure_point = 1.0;
  return rep;
}

JumpReport jump_check(const CoefTensor& A, const Eigen::VectorXd& xi, const NeumannVector& g,
                      const TraceVector& f, double quad_tol) {
  const ReducedSymbol sym = reduce(A, xi);
  const OdeKernel K = newton_kernel(sym);
  const int m = A.m;

  JumpReport rep;
  const LayerPotential S = single_layer(K, g);
  rep.single_trace = (traces_of(S.upper, m) - traces_of(S.lower, m)).cwiseAbs().maxCoeff();
  rep.single_conormal = (conormal_of(sym, S.upper, Side::upper) +
                         conormal_of(sym, S.lower, Side::lower) - g)
                            .cwiseAbs()
                            .maxCoeff();

  QuadReport qrep;
  const LayerPotential D = double_layer(sym, K, f, quad_tol, &qrep);
  rep.quad_ok = qrep.converged;
  rep.double_trace = (traces_of(D.upper, m) - traces_of(D.lower, m) + f).cwiseAbs().maxCoeff();
  rep.double_conormal = (conormal_of(sym, D.upper, Side::upper) +
                         conormal_of(sym, D.lower, Side::lower))
                            .cwiseAbs()
                            .maxCoeff();
  return rep;
}

GreenReport green_check(const CoefTensor& A, const Eigen::VectorXd& xi, const ModeProfile& w,
                        double quad_tol) {
  const ReducedSymbol sym = reduce(A, xi);
  const OdeKernel K = newton_kernel(sym);
  const int m = A.m;

  const TraceVector f = traces_of(w, m);
  const NeumannVector g = conormal_of(sym, w, Side::upper);
  QuadReport qrep;
  const LayerPotential D = double_layer(sym, K, f, quad_tol, &qrep);
  const LayerPotential S = single_layer(K, g);

  GreenReport rep;
  rep.quad_ok = qrep.converged;

  std::vector<ModeProfile> lw(m + 1), ldu(m + 1), lsu(m + 1), ldl(m + 1), lsl(m + 1);
  lw[0] = w;
  ldu[0] = D.upper;
  lsu[0] = S.upper;
  ldl[0] = D.lower;
  lsl[0] = S.lower;
  for (int a = 1; a <= m; ++a) {
    lw[a] = differentiate(lw[a - 1]);
    ldu[a] = differentiate(ldu[a - 1]);
    lsu[a] = differentiate(lsu[a - 1]);
    ldl[a] = differentiate(ldl[a - 1]);
    lsl[a] = differentiate(lsl[a - 1]);
  }

  const double ts[5] = {0.05, 0.2, 0.5, 1.0, 2.5};
  for (double tt : ts) {
    const double t = tt / sym.scale;
    for (int a = 0; a <= m; ++a) {
      const cplx ww = eval_profile(lw[a], t);
      const cplx rhs = -eval_profile(ldu[a], t) + eval_profile(lsu[a], t);
      rep.interior = std::max(rep.interior, std::abs(rhs - ww) / (1.0 + std::abs(ww)));
      const cplx ext = -eval_profile(ldl[a], -t) + eval_profile(lsl[a], -t);
      rep.exterior = std::max(rep.exterior, std::abs(ext));
    }
  }
  return rep;
}

DualityReport duality_check(const CoefTensor& A, const Eigen::VectorXd& xi,
                            const TraceVector& phi, const TraceVector& f,
                            const NeumannVector& g, const TraceVector& gamma,
                            double quad_tol) {
  const CoefTensor As = adjoint_tensor(A);
  const ReducedSymbol sym = reduce(A, xi);
  const ReducedSymbol syms = reduce(As, xi);
  const OdeKernel K = newton_kernel(sym);
  const OdeKernel Ks = newton_kernel(syms);
  const int m = A.m;

  DualityReport rep;
  QuadReport q1, q2;
  const LayerPotential Df = double_layer(sym, K, f, quad_tol, &q1);
  const LayerPotential Dsphi = double_layer(syms, Ks, phi, quad_tol, &q2);
  rep.quad_ok = q1.converged && q2.converged;

  const NeumannVector MDf = conormal_of(sym, Df.upper, Side::upper);
  const NeumannVector MsDsphi = conormal_of(syms, Dsphi.upper, Side::upper);
  cplx lhsD(0, 0), rhsD(0, 0);
  for (int l = 0; l < m; ++l) {
    lhsD += std::conj(phi[l]) * MDf[l];
    rhsD += std::conj(MsDsphi[l]) * f[l];
  }
  rep.deviation_double = std::abs(lhsD - rhsD) / (1.0 + std::abs(lhsD));

  const LayerPotential Sg = single_layer(K, g);
  const LayerPotential Ssgamma = single_layer(Ks, gamma);
  const TraceVector TrSg = traces_of(Sg.upper, m);
  const TraceVector TrSsgamma = traces_of(Ssgamma.upper, m);
  cplx lhsS(0, 0), rhsS(0, 0);
  for (int l = 0; l < m; ++l) {
    lhsS += std::conj(gamma[l]) * TrSg[l];
    rhsS += std::conj(TrSsgamma[l]) * g[l];
  }
  rep.deviation_single = std::abs(lhsS - rhsS) / (1.0 + std::abs(lhsS));
  return rep;
}

Eigen::VectorXcd random_complex_vector(int size, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXcd v(size);
  for (int i = 0; i < size; ++i) {
    const double re = dist(rng);
    const double im = dist(rng);
    v[i] = cplx(re, im);
  }
  return v;
}

Eigen::VectorXd random_direction(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::VectorXd v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

CoefTensor random_selfadjoint_tensor(int n, int m, double delta, std::mt19937_64& rng,
                                     double min_slice, int max_tries) {
  const CoefTensor base = make_special_operator(n, m);
  std::uniform_real_distribution<double> dist(-delta, delta);
  for (int tries = 0; tries < max_tries; ++tries) {
    CoefTensor t = base;
    Eigen::MatrixXcd B(t.side(), t.side());
    for (int i = 0; i < t.side(); ++i)
      for (int j = 0; j < t.side(); ++j) B(i, j) = cplx(dist(rng), dist(rng));
    t.A += 0.5 * (B + B.adjoint());
    if (slice_ellipticity(t, 64) > min_slice) return t;
  }
  throw std::runtime_error("random_selfadjoint_tensor: rejection sampling exhausted");
}

CoefTensor random_tensor(int n, int m, double delta, std::mt19937_64& rng, int max_tries) {
  const CoefTensor base = make_special_operator(n, m);
  std::uniform_real_distribution<double> dist(-delta, delta);
  for (int tries = 0; tries < max_tries; ++tries) {
    CoefTensor t = base;
    Eigen::MatrixXcd B(t.side(), t.side());
    for (int i = 0; i < t.side(); ++i)
      for (int j = 0; j < t.side(); ++j) B(i, j) = cplx(dist(rng), dist(rng));
    t.A += B;
    try {
      Eigen::VectorXd probe = 0.7 * random_direction(n, rng);
      mode_basis(reduce(t, probe));
      mode_basis(reduce(adjoint_tensor(t), probe));
      return t;
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  throw std::runtime_error("random_tensor: rejection sampling exhausted");
}

}  // namespace hsn

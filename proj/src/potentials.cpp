#include "hsn/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hsn/quadrature.hpp"

namespace hsn {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}
}  // namespace

Eigen::VectorXcd taylor_shift(const Eigen::VectorXcd& p, cplx z0) {
  Eigen::VectorXcd s = p;
  const int n = static_cast<int>(p.size()) - 1;
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) s[j] += z0 * s[j + 1];
  return s;
}

Eigen::VectorXcd series_inverse(const Eigen::VectorXcd& h, int count) {
  if (h.size() == 0 || std::abs(h[0]) == 0.0)
    throw std::invalid_argument("series_inverse: constant term must be nonzero");
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(count);
  g[0] = 1.0 / h[0];
  for (int k = 1; k < count; ++k) {
    cplx acc(0, 0);
    for (int i = 1; i <= k && i < h.size(); ++i) acc += h[i] * g[k - i];
    g[k] = -acc / h[0];
  }
  return g;
}

OdeKernel newton_kernel(const ReducedSymbol& sym, double root_tol) {
  const ModeBasis mb = mode_basis(sym, root_tol);
  const Eigen::VectorXcd p = charpoly(sym);

  OdeKernel K;
  K.m = sym.m;
  K.lead = mb.lead;

  auto add_side = [&p](const std::vector<SymbolRoot>& roots, double sgn, ModeProfile& prof) {
    for (const SymbolRoot& root : roots) {
      const Eigen::VectorXcd shifted = taylor_shift(p, root.lambda);
      // p(lambda + u) = u^mult h(u) with h(0) != 0; the pole coefficients of
      // 1/p at this root are the series coefficients of 1/h.
      const Eigen::VectorXcd h = shifted.segment(root.mult, shifted.size() - root.mult);
      const Eigen::VectorXcd inv = series_inverse(h, root.mult);
      Eigen::VectorXcd c(root.mult);
      double rfac = 1.0;
      for (int r = 0; r < root.mult; ++r) {
        if (r > 0) rfac *= r;
        c[r] = sgn * inv[root.mult - 1 - r] / rfac;
      }
      prof.lambdas.push_back(root.lambda);
      prof.coeffs.push_back(c);
    }
  };
  add_side(mb.decaying, 1.0, K.upper);
  add_side(mb.growing, -1.0, K.lower);
  return K;
}

LayerPotential layer_from_source(const OdeKernel& kernel, const Eigen::VectorXcd& s) {
  if (s.size() != kernel.m + 1)
    throw std::invalid_argument("layer_from_source: need m+1 reduced weights");
  const int m = kernel.m;
  LayerPotential out;
  for (int side = 0; side < 2; ++side) {
    const ModeProfile& K0 = side == 0 ? kernel.upper : kernel.lower;
    std::vector<ModeProfile> ladder(m + 1);
    ladder[0] = K0;
    for (int a = 1; a <= m; ++a) ladder[a] = differentiate(ladder[a - 1]);
    ModeProfile prof;
    prof.lambdas = K0.lambdas;
    for (int j = 0; j < K0.terms(); ++j) {
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(K0.coeffs[j].size());
      for (int a = 0; a <= m; ++a) {
        const double sa = (a % 2) ? -1.0 : 1.0;
        c += sa * s[a] * ladder[a].coeffs[j];
      }
      prof.coeffs.push_back(c);
    }
    (side == 0 ? out.upper : out.lower) = prof;
  }
  return out;
}

LayerPotential single_layer(const OdeKernel& kernel, const NeumannVector& g) {
  if (g.size() != kernel.m) throw std::invalid_argument("single_layer: need m components");
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(kernel.m + 1);
  s.head(kernel.m) = g;
  return layer_from_source(kernel, s);
}

Eigen::VectorXcd source_array(const ReducedSymbol& sym, SourceScheme scheme,
                              const NeumannVector& g) {
  if (g.size() != sym.m) throw std::invalid_argument("source_array: need m components");
  const MultiIndexSet mis(sym.n + 1, sym.m);
  const Eigen::VectorXcd z = cplx(0, kTwoPi) * sym.xi.cast<cplx>();
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(mis.size());

  if (scheme == SourceScheme::omega) {
    for (int i = 0; i < mis.size(); ++i) {
      const MultiIndex& gamma = mis[i];
      const int a = gamma.back();
      if (a >= sym.m) continue;
      MultiIndex mu(gamma.begin(), gamma.end() - 1);
      v[i] = mi_pow(z, mu) * g[a] / sym.omega[a];
    }
  } else {
    int kstar = 0;
    sym.xi.cwiseAbs().maxCoeff(&kstar);
    if (sym.xi[kstar] == 0.0)
      throw std::invalid_argument("source_array: axis scheme needs a nonzero component");
    for (int a = 0; a < sym.m; ++a) {
      MultiIndex gamma(sym.n + 1, 0);
      gamma[kstar] = sym.m - a;
      gamma[sym.n] = a;
      MultiIndex mu(gamma.begin(), gamma.end() - 1);
      v[mis.index_of(gamma)] = g[a] / std::conj(mi_pow(z, mu));
    }
  }
  return v;
}

Eigen::VectorXcd reduce_source(const ReducedSymbol& sym, const Eigen::VectorXcd& v) {
  const MultiIndexSet mis(sym.n + 1, sym.m);
  if (v.size() != mis.size()) throw std::invalid_argument("reduce_source: arity mismatch");
  const Eigen::VectorXcd z = cplx(0, kTwoPi) * sym.xi.cast<cplx>();
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(sym.m + 1);
  for (int i = 0; i < mis.size(); ++i) {
    const MultiIndex& gamma = mis[i];
    MultiIndex mu(gamma.begin(), gamma.end() - 1);
    s[gamma.back()] += std::conj(mi_pow(z, mu)) * v[i];
  }
  return s;
}

Eigen::VectorXcd extension_derivs(int m, double scale, const TraceVector& phi, double t,
                                  int count) {
  if (phi.size() != m) throw std::invalid_argument("extension_derivs: need m trace components");
  const double c = std::pow(scale, 2 * m);
  const int pw = 2 * m;

  // Gaussian-type factor g = e^{-c t^{pw}}: g^{(i)} = q_i(t) g(t) with
  // q_0 = 1 and q_{i+1} = q_i' - pw c t^{pw-1} q_i.
  std::vector<Eigen::VectorXd> q(count);
  q[0] = Eigen::VectorXd::Ones(1);
  for (int i = 0; i + 1 < count; ++i) {
    const Eigen::VectorXd& cur = q[i];
    Eigen::VectorXd next = Eigen::VectorXd::Zero(cur.size() + pw - 1);
    for (int k = 1; k < cur.size(); ++k) next[k - 1] += k * cur[k];
    for (int k = 0; k < cur.size(); ++k) next[k + pw - 1] -= pw * c * cur[k];
    q[i + 1] = next;
  }
  auto poly_eval = [t](const Eigen::VectorXd& a) {
    double val = 0;
    for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k) val = val * t + a[k];
    return val;
  };
  const double g = std::exp(-c * std::pow(t, pw));

  // P(t) = sum_{k<m} phi_k t^k/k! and its derivatives.
  Eigen::VectorXcd Pd = Eigen::VectorXcd::Zero(count);
  for (int i = 0; i < count; ++i) {
    cplx acc(0, 0);
    double fac = 1.0;
    for (int k = i; k < m; ++k) {
      if (k > i) fac *= (k - i);
      acc += phi[k] * std::pow(t, k - i) / fac;
    }
    Pd[i] = acc;
  }

  Eigen::VectorXcd out(count);
  for (int b = 0; b < count; ++b) {
    cplx acc(0, 0);
    for (int i = 0; i <= b; ++i) acc += binom(b, i) * Pd[i] * poly_eval(q[b - i]);
    out[b] = acc * g;
  }
  return out;
}

double extension_cutoff(int m, double scale, double tail) {
  return std::pow(-std::log(tail), 1.0 / (2 * m)) / scale;
}

LayerPotential double_layer(const ReducedSymbol& sym, const OdeKernel& kernel,
                            const TraceVector& f, double quad_tol, QuadReport* report) {
  const int m = sym.m;
  if (f.size() != m) throw std::invalid_argument("double_layer: need m trace components");
  const double scale = sym.scale;

  // Kernel derivative ladders E^{(a)}, a = 0..m, per side.
  std::vector<std::vector<ModeProfile>> ladder(2);
  for (int side = 0; side < 2; ++side) {
    ladder[side].resize(m + 1);
    ladder[side][0] = side == 0 ? kernel.upper : kernel.lower;
    for (int a = 1; a <= m; ++a) ladder[side][a] = differentiate(ladder[side][a - 1]);
  }

  // Truncation: the source decays like e^{-(scale s)^{2m}} while the worst
  // weight e^{-lambda s} grows at most like e^{maxgrow s}; require 45 nats of
  // margin at the endpoint.
  double maxgrow = 0;
  for (const cplx& lam : kernel.upper.lambdas) maxgrow = std::max(maxgrow, std::abs(lam.real()));
  double T = extension_cutoff(m, scale, 1e-18);
  while (std::pow(scale * T, 2 * m) - maxgrow * T < 45.0) T *= 1.25;

  // Batched moments J[side, j, d, a] = int_0^T s^d e^{-lambda_j s} h_a(s) ds
  // with h = C * (extension derivatives of f).
  struct Block {
    int side, j, nd, offset;
  };
  std::vector<Block> blocks;
  int dim = 0;
  for (int side = 0; side < 2; ++side) {
    const ModeProfile& K = side == 0 ? kernel.upper : kernel.lower;
    for (int j = 0; j < K.terms(); ++j) {
      const int nd = static_cast<int>(K.coeffs[j].size());
      blocks.push_back({side, j, nd, dim});
      dim += nd * (m + 1);
    }
  }
  auto integrand = [&](double s) {
    const Eigen::VectorXcd Fd = extension_derivs(m, scale, f, s, m + 1);
    const Eigen::VectorXcd h = sym.C * Fd;
    Eigen::VectorXcd out(dim);
    for (const Block& blk : blocks) {
      const ModeProfile& K = blk.side == 0 ? kernel.upper : kernel.lower;
      const cplx e = std::exp(-K.lambdas[blk.j] * s);
      double sd = 1.0;
      int pos = blk.offset;
      for (int d = 0; d < blk.nd; ++d, sd *= s)
        for (int a = 0; a <= m; ++a) out[pos++] = sd * e * h[a];
    }
    return out;
  };
  const QuadResult qr = integrate(integrand, 0.0, T, dim, 1e-13, quad_tol, 6000);
  if (report) {
    report->error = qr.error;
    report->evaluations = qr.evaluations;
    report->converged = qr.converged;
  }

  // Far-field modes: expanding E^{(a)}(t - s) binomially under the integral,
  // the coefficient of t^q e^{lambda_j t} is
  //   sum_a (-1)^a sum_{r>=q} kc[a][j][r] binom(r, q) (-1)^{r-q} J[a][j][r-q].
  LayerPotential out;
  for (const Block& blk : blocks) {
    const ModeProfile& K0 = blk.side == 0 ? kernel.upper : kernel.lower;
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(blk.nd);
    for (int qq = 0; qq < blk.nd; ++qq) {
      cplx acc(0, 0);
      for (int a = 0; a <= m; ++a) {
        const double sa = (a % 2) ? -1.0 : 1.0;
        for (int r = qq; r < blk.nd; ++r) {
          const cplx kc = ladder[blk.side][a].coeffs[blk.j][r];
          const double br = binom(r, qq) * (((r - qq) % 2) ? -1.0 : 1.0);
          acc += sa * kc * br * qr.value[blk.offset + (r - qq) * (m + 1) + a];
        }
      }
      c[qq] = acc;
    }
    ModeProfile& prof = blk.side == 0 ? out.upper : out.lower;
    prof.lambdas.push_back(K0.lambdas[blk.j]);
    prof.coeffs.push_back(c);
  }
  return out;
}

cplx neumann_via_E(const ReducedSymbol& sym, const ModeProfile& w, const TraceVector& phi,
                   double quad_tol) {
  const int m = sym.m;
  if (phi.size() != m) throw std::invalid_argument("neumann_via_E: need m trace components");

  std::vector<ModeProfile> ladder(m + 1);
  ladder[0] = w;
  for (int b = 1; b <= m; ++b) ladder[b] = differentiate(ladder[b - 1]);

  const double xi_abs = sym.scale / kTwoPi;
  const double eps = 1e-8 / xi_abs;
  const double rate = std::max(min_decay_rate(w), 1e-12);
  const double T = std::max(extension_cutoff(m, sym.scale, 1e-20), 45.0 / rate);

  auto integrand = [&](double t) {
    const Eigen::VectorXcd Fd = extension_derivs(m, sym.scale, phi, t, m + 1);
    Eigen::VectorXcd wd(m + 1);
    for (int b = 0; b <= m; ++b) wd[b] = eval_profile(ladder[b], t);
    cplx acc(0, 0);
    for (int a = 0; a <= m; ++a)
      for (int b = 0; b <= m; ++b) acc += sym.C(a, b) * std::conj(Fd[a]) * wd[b];
    return acc;
  };
  const ScalarQuadResult r = integrate_scalar(integrand, eps, T, 1e-13, quad_tol, 6000);
  if (!r.converged) throw std::runtime_error("neumann_via_E: quadrature did not converge");
  return r.value;
}

}  // namespace hsn

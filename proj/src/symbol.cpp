#include "hsn/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace hsn {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

ReducedSymbol reduce(const CoefTensor& t, const Eigen::VectorXd& xi) {
  if (xi.size() != t.n) throw std::invalid_argument("reduce: frequency dimension mismatch");
  if (!xi.allFinite()) throw std::invalid_argument("reduce: frequency must be finite");
  const double r = xi.norm();
  if (r == 0.0) throw std::invalid_argument("reduce: zero frequency has no vertical reduction");

  ReducedSymbol sym;
  sym.n = t.n;
  sym.m = t.m;
  sym.xi = xi;
  sym.scale = kTwoPi * r;
  sym.C = Eigen::MatrixXcd::Zero(t.m + 1, t.m + 1);

  const Eigen::VectorXcd z = cplx(0, kTwoPi) * xi.cast<cplx>();
  const int side = t.side();
  std::vector<cplx> zpow(side);
  std::vector<int> vert(side);
  for (int i = 0; i < side; ++i) {
    const MultiIndex& a = t.mis[i];
    vert[i] = a.back();
    MultiIndex par(a.begin(), a.end() - 1);
    zpow[i] = mi_pow(z, par);
  }
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j)
      sym.C(vert[i], vert[j]) += std::conj(zpow[i]) * t.A(i, j) * zpow[j];

  sym.omega = omega_weights(t.n, t.m, xi);
  return sym;
}

Eigen::VectorXd omega_weights(int n, int order, const Eigen::VectorXd& xi) {
  Eigen::VectorXd omega(order + 1);
  const Eigen::VectorXd w2 = (kTwoPi * xi).array().square();
  for (int a = 0; a <= order; ++a) {
    double s = 0;
    const MultiIndexSet mus(n, order - a);
    for (const MultiIndex& mu : mus.list()) s += mi_pow(w2, mu).real();
    omega[a] = s;
  }
  return omega;
}

Eigen::VectorXcd charpoly(const ReducedSymbol& sym) {
  const int m = sym.m;
  Eigen::VectorXcd p = Eigen::VectorXcd::Zero(2 * m + 1);
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= m; ++b) p[a + b] += ((a % 2) ? -1.0 : 1.0) * sym.C(a, b);
  return p;
}

std::vector<cplx> poly_roots(const Eigen::VectorXcd& p) {
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg < 1) return {};
  const cplx lead = p[deg];
  if (std::abs(lead) == 0.0) throw std::invalid_argument("poly_roots: zero leading coefficient");
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw std::runtime_error("poly_roots: eigensolver failed");
  std::vector<cplx> roots(deg);
  for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()[i];
  return roots;
}

std::vector<SymbolRoot> cluster_roots(const std::vector<cplx>& roots, double tol) {
  const int k = static_cast<int>(roots.size());
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (std::abs(roots[i] - roots[j]) <= tol) parent[find(i)] = find(j);

  std::vector<SymbolRoot> out;
  std::vector<int> seen(k, -1);
  for (int i = 0; i < k; ++i) {
    int root = find(i);
    if (seen[root] < 0) {
      seen[root] = static_cast<int>(out.size());
      out.push_back({cplx(0, 0), 0});
    }
    SymbolRoot& c = out[seen[root]];
    c.lambda += roots[i];
    c.mult += 1;
  }
  for (auto& c : out) c.lambda /= static_cast<double>(c.mult);
  std::sort(out.begin(), out.end(), [](const SymbolRoot& a, const SymbolRoot& b) {
    if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
  });
  return out;
}

ModeBasis mode_basis(const ReducedSymbol& sym, double root_tol) {
  const int m = sym.m;
  const double s = sym.scale;
  const Eigen::VectorXcd p = charpoly(sym);

  // Normalize: q(mu) = p(s mu) has O(1) roots whatever the frequency, so the
  // clustering threshold is meaningful across the whole grid.
  Eigen::VectorXcd q(p.size());
  double sk = 1.0;
  for (int j = 0; j < p.size(); ++j, sk *= s) q[j] = p[j] * sk;
  if (std::abs(q[2 * m]) <= 1e-14 * q.cwiseAbs().maxCoeff())
    throw std::runtime_error("mode_basis: vanishing leading coefficient (C_mm ~ 0)");
  q /= q[2 * m];

  const std::vector<SymbolRoot> clusters = cluster_roots(poly_roots(q), root_tol);

  ModeBasis mb;
  mb.scale = s;
  mb.lead = p[2 * m];
  int ndec = 0, ngro = 0;
  for (const SymbolRoot& c : clusters) {
    if (std::abs(c.lambda.real()) <= root_tol)
      throw std::runtime_error("mode_basis: characteristic root on the imaginary axis");
    SymbolRoot scaled{c.lambda * s, c.mult};
    if (c.lambda.real() < 0) {
      mb.decaying.push_back(scaled);
      ndec += c.mult;
    } else {
      mb.growing.push_back(scaled);
      ngro += c.mult;
    }
  }
  if (ndec != m || ngro != m)
    throw std::runtime_error("mode_basis: root count split is not m/m across the axis");
  return mb;
}

std::vector<cplx> special_roots(int m, double scale) {
  std::vector<cplx> out;
  out.reserve(m);
  const double pi = kTwoPi / 2.0;
  for (int k = 1; k <= m; ++k) {
    const double th = pi * k / (m + 1);
    out.push_back(scale * cplx(0, 1) * std::exp(cplx(0, th)));
  }
  return out;
}

cplx deriv0(cplx lambda, int r, int j) {
  if (j < r) return cplx(0, 0);
  double factor = 1.0;  // binom(j, r) * r! = j! / (j - r)!
  for (int i = j - r + 1; i <= j; ++i) factor *= i;
  return factor * std::pow(lambda, j - r);
}

ModeProfile differentiate(const ModeProfile& f) {
  ModeProfile g;
  g.lambdas = f.lambdas;
  g.coeffs.resize(f.coeffs.size());
  for (int j = 0; j < f.terms(); ++j) {
    const Eigen::VectorXcd& c = f.coeffs[j];
    Eigen::VectorXcd nc(c.size());
    for (int r = 0; r < c.size(); ++r) {
      nc[r] = f.lambdas[j] * c[r];
      if (r + 1 < c.size()) nc[r] += static_cast<double>(r + 1) * c[r + 1];
    }
    g.coeffs[j] = nc;
  }
  return g;
}

cplx eval_profile(const ModeProfile& f, double t) {
  cplx s(0, 0);
  for (int j = 0; j < f.terms(); ++j) {
    const Eigen::VectorXcd& c = f.coeffs[j];
    cplx poly(0, 0);
    for (int r = static_cast<int>(c.size()) - 1; r >= 0; --r) poly = poly * t + c[r];
    s += poly * std::exp(f.lambdas[j] * t);
  }
  return s;
}

Eigen::VectorXcd derivs_at_zero(const ModeProfile& f, int count) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(count);
  for (int j = 0; j < f.terms(); ++j)
    for (int r = 0; r < f.coeffs[j].size(); ++r)
      for (int k = r; k < count; ++k) out[k] += f.coeffs[j][r] * deriv0(f.lambdas[j], r, k);
  return out;
}

double min_decay_rate(const ModeProfile& f) {
  double rate = std::numeric_limits<double>::infinity();
  for (const cplx& lam : f.lambdas) rate = std::min(rate, std::abs(lam.real()));
  return rate;
}

}  // namespace hsn

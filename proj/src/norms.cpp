#include "hsn/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hsn {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> g;
  const double decades = std::log10(hi / lo);
  const int count = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
  g.reserve(count + 1);
  for (int i = 0; i <= count; ++i) g.push_back(lo * std::pow(10.0, decades * i / count));
  return g;
}

double slice_norm(const std::vector<ModeProfile>& ladder, const Eigen::VectorXd& omega,
                  double t) {
  double s = 0;
  for (int a = 0; a < omega.size(); ++a) s += omega[a] * std::norm(eval_profile(ladder[a], t));
  return s;
}
}  // namespace

cplx gram_integral(cplx lambda, cplx mu, int p, int q, int weight_power) {
  const cplx s = lambda + std::conj(mu);
  if (!(s.real() < 0)) throw std::domain_error("gram_integral: needs a decaying mode pair");
  const int k = p + q + weight_power;
  return factorial(k) / std::pow(-s, k + 1);
}

double profile_weighted_l2(const ModeProfile& f, int weight_power) {
  cplx acc(0, 0);
  for (int j = 0; j < f.terms(); ++j)
    for (int k = 0; k < f.terms(); ++k)
      for (int r = 0; r < f.coeffs[j].size(); ++r)
        for (int s = 0; s < f.coeffs[k].size(); ++s)
          acc += f.coeffs[j][r] * std::conj(f.coeffs[k][s]) *
                 gram_integral(f.lambdas[j], f.lambdas[k], r, s, weight_power);
  return acc.real();
}

ModeNorms mode_norms(const ReducedSymbol& sym, const ModeProfile& w) {
  const int m = sym.m;
  std::vector<ModeProfile> ladder(m + 2);
  ladder[0] = w;
  for (int a = 1; a <= m + 1; ++a) ladder[a] = differentiate(ladder[a - 1]);

  ModeNorms out;
  for (int a = 0; a <= m; ++a) {
    out.square_function += sym.omega[a] * profile_weighted_l2(ladder[a + 1], 1);
    out.square_function_rough += sym.omega[a] * profile_weighted_l2(ladder[a], 1);
  }
  const double xi_abs = sym.scale / kTwoPi;
  out.sup_L2 = slice_norm(ladder, sym.omega, 0.0);
  for (double t : log_grid(1e-3 / xi_abs, 1e3 / xi_abs, 64))
    out.sup_L2 = std::max(out.sup_L2, slice_norm(ladder, sym.omega, t));
  return out;
}

DataNorms data_norms(const FrequencyField& data, int m) {
  validate_field(data);
  DataNorms out;
  for (int i = 0; i < data.size(); ++i) {
    const Eigen::VectorXd& xi = data.samples[i].xi;
    const double wgt = data.samples[i].weight;
    const Eigen::VectorXcd& v = data.payload[i];
    if (v.size() != m) throw std::invalid_argument("data_norms: payload arity must be m");
    const double xi_abs = xi.norm();
    const Eigen::VectorXd ow = omega_weights(data.n, m - 1, xi);

    double whit = 0;
    for (int l = 0; l < m; ++l) whit += ow[l] * std::norm(v[l]);
    out.whitney_L2 += wgt * whit;
    out.whitney_W1 += wgt * whit * kTwoPi * kTwoPi * xi_abs * xi_abs;
    out.besov_half += wgt * whit * xi_abs;

    for (int l = 0; l < m; ++l) {
      const double mag = std::norm(v[l]);
      out.neumann_L2_weighted += wgt * mag * std::pow(xi_abs, 2 * l + 2 - 2 * m);
      out.neumann_Wminus1_weighted += wgt * mag * std::pow(xi_abs, 2 * l - 2 * m);
    }
  }
  return out;
}

NormReport solution_report(const CoefTensor& A, const FrequencyField& coeffs, Side side,
                           double root_tol) {
  validate_field(coeffs);
  const int m = A.m;
  NormReport out;

  struct Cached {
    std::vector<ModeProfile> ladder;
    Eigen::VectorXd omega;
    double weight;
  };
  std::vector<Cached> cache;
  double xi_min = 0, xi_max = 0;

  for (int i = 0; i < coeffs.size(); ++i) {
    const Eigen::VectorXcd& f = coeffs.payload[i];
    if (f.size() == 0 || f.cwiseAbs().maxCoeff() == 0.0) continue;
    const Eigen::VectorXd& xi = coeffs.samples[i].xi;
    const double wgt = coeffs.samples[i].weight;
    const double xi_abs = xi.norm();
    xi_min = (cache.empty() || xi_abs < xi_min) ? xi_abs : xi_min;
    xi_max = std::max(xi_max, xi_abs);

    const ReducedSymbol sym = reduce(A, xi);
    const ModeBasis mb = mode_basis(sym, root_tol);
    const std::vector<SymbolRoot>& roots = side_roots(mb, side);
    ModeProfile w = profile_from_coeffs(roots, f);
    if (side == Side::lower) {
      // Reflect to (0, inf) so the Gram calculus applies: t -> -t maps
      // t^r e^{lambda t} to (-1)^r t^r e^{(-lambda) t}.
      for (auto& lam : w.lambdas) lam = -lam;
      for (auto& c : w.coeffs)
        for (int r = 1; r < c.size(); r += 2) c[r] = -c[r];
    }

    Cached entry;
    entry.ladder.resize(m + 2);
    entry.ladder[0] = w;
    for (int a = 1; a <= m + 1; ++a) entry.ladder[a] = differentiate(entry.ladder[a - 1]);
    entry.omega = sym.omega;
    entry.weight = wgt;

    for (int a = 0; a <= m; ++a) {
      out.square_function += wgt * sym.omega[a] * profile_weighted_l2(entry.ladder[a + 1], 1);
      out.square_function_rough += wgt * sym.omega[a] * profile_weighted_l2(entry.ladder[a], 1);
    }

    const TraceVector tr = traces_of(w, m);
    const Eigen::VectorXd ow = omega_weights(A.n, m - 1, xi);
    double whit = 0;
    for (int l = 0; l < m; ++l) whit += ow[l] * std::norm(tr[l]);
    out.whitney_L2 += wgt * whit;
    out.whitney_W1 += wgt * whit * kTwoPi * kTwoPi * xi_abs * xi_abs;
    out.besov_half += wgt * whit * xi_abs;

    const NeumannVector G = conormal_of(sym, profile_from_coeffs(roots, f), side);
    for (int l = 0; l < m; ++l) {
      const double mag = std::norm(G[l]);
      out.neumann_L2_weighted += wgt * mag * std::pow(xi_abs, 2 * l + 2 - 2 * m);
      out.neumann_Wminus1_weighted += wgt * mag * std::pow(xi_abs, 2 * l - 2 * m);
    }
    cache.push_back(std::move(entry));
  }

  if (!cache.empty()) {
    auto integrated_slice = [&cache](double t) {
      double s = 0;
      for (const Cached& e : cache) s += e.weight * slice_norm(e.ladder, e.omega, t);
      return s;
    };
    out.sup_L2 = integrated_slice(0.0);
    for (double t : log_grid(1e-3 / xi_max, 1e3 / xi_min, 64))
      out.sup_L2 = std::max(out.sup_L2, integrated_slice(t));
  }
  return out;
}

}  // namespace hsn

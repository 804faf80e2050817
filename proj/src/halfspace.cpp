#include "hsn/halfspace.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace hsn {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kInf = std::numeric_limits<double>::infinity();

double condition_number(const Eigen::MatrixXcd& M) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  if (smin == 0.0) return kInf;
  return sv[0] / smin;
}
}  // namespace

void validate_field(const FrequencyField& field) {
  if (field.n < 1) throw std::invalid_argument("frequency field: need n >= 1");
  if (field.samples.size() != field.payload.size())
    throw std::invalid_argument("frequency field: sample/payload count mismatch");
  for (size_t i = 0; i < field.samples.size(); ++i) {
    const FrequencySample& s = field.samples[i];
    if (s.xi.size() != field.n)
      throw std::invalid_argument("frequency field: frequency dimension mismatch");
    if (!s.xi.allFinite() || s.xi.norm() == 0.0)
      throw std::invalid_argument("frequency field: frequencies must be finite and nonzero");
    if (!(s.weight > 0.0) || !std::isfinite(s.weight))
      throw std::invalid_argument("frequency field: weights must be positive and finite");
    if (!field.payload[i].allFinite())
      throw std::invalid_argument("frequency field: payload must be finite");
  }
}

const std::vector<SymbolRoot>& side_roots(const ModeBasis& basis, Side side) {
  return side == Side::upper ? basis.decaying : basis.growing;
}

int basis_dimension(const std::vector<SymbolRoot>& roots) {
  int d = 0;
  for (const SymbolRoot& r : roots) d += r.mult;
  return d;
}

ModeProfile profile_from_coeffs(const std::vector<SymbolRoot>& roots, const Eigen::VectorXcd& f) {
  if (f.size() != basis_dimension(roots))
    throw std::invalid_argument("profile_from_coeffs: coefficient count mismatch");
  ModeProfile w;
  int idx = 0;
  for (const SymbolRoot& root : roots) {
    w.lambdas.push_back(root.lambda);
    Eigen::VectorXcd c(root.mult);
    for (int r = 0; r < root.mult; ++r) c[r] = f[idx++];
    w.coeffs.push_back(c);
  }
  return w;
}

Eigen::MatrixXcd dirichlet_map(const std::vector<SymbolRoot>& roots, int m) {
  Eigen::MatrixXcd M(m, basis_dimension(roots));
  int col = 0;
  for (const SymbolRoot& root : roots)
    for (int r = 0; r < root.mult; ++r, ++col)
      for (int l = 0; l < m; ++l) M(l, col) = deriv0(root.lambda, r, l);
  return M;
}

TraceVector traces_of(const ModeProfile& w, int m) { return derivs_at_zero(w, m); }

NeumannVector conormal_of(const ReducedSymbol& sym, const ModeProfile& w, Side side) {
  const int m = sym.m;
  const double sgn = (side == Side::upper) ? -1.0 : 1.0;
  const Eigen::VectorXcd d = derivs_at_zero(w, 2 * m);
  NeumannVector G = NeumannVector::Zero(m);
  for (int l = 0; l < m; ++l) {
    cplx acc(0, 0);
    for (int a = l + 1; a <= m; ++a) {
      const double par = ((a - 1 - l) % 2) ? -1.0 : 1.0;
      for (int b = 0; b <= m; ++b) acc += par * sym.C(a, b) * d[a + b - 1 - l];
    }
    G[l] = sgn * acc;
  }
  return G;
}

Eigen::MatrixXcd neumann_map(const ReducedSymbol& sym, const std::vector<SymbolRoot>& roots,
                             Side side) {
  const int m = sym.m;
  const int dim = basis_dimension(roots);
  Eigen::MatrixXcd N(m, dim);
  int col = 0;
  for (const SymbolRoot& root : roots)
    for (int r = 0; r < root.mult; ++r, ++col) {
      ModeProfile unit;
      unit.lambdas = {root.lambda};
      Eigen::VectorXcd c = Eigen::VectorXcd::Zero(r + 1);
      c[r] = 1.0;
      unit.coeffs = {c};
      N.col(col) = conormal_of(sym, unit, side);
    }
  return N;
}

Eigen::MatrixXcd special_neumann_matrix(int m, double scale) {
  const double pi = kTwoPi / 2.0;
  Eigen::MatrixXcd N(m, m);
  for (int l = 0; l < m; ++l) {
    const cplx il = std::pow(cplx(0, 1), l);
    const double sl = std::pow(scale, 2 * m - 1 - l);
    for (int k = 1; k <= m; ++k) {
      const cplx denom = std::exp(cplx(0, kTwoPi * k / (m + 1))) - 1.0;
      N(l, k - 1) = -2.0 * il * sl * std::sin(pi * (1 + l) * k / (m + 1)) / denom;
    }
  }
  return N;
}

Eigen::MatrixXd sine_matrix(int m) {
  const double pi = kTwoPi / 2.0;
  Eigen::MatrixXd M(m, m);
  for (int L = 1; L <= m; ++L)
    for (int k = 1; k <= m; ++k) M(L - 1, k - 1) = std::sin(pi * L * k / (m + 1));
  return M;
}

Eigen::MatrixXd sine_matrix_inverse(int m) { return (2.0 / (m + 1)) * sine_matrix(m); }

namespace {

FrequencySolve solve_at(const CoefTensor& A, const Eigen::VectorXd& xi,
                        const Eigen::VectorXcd& data, Side side, const SolveOptions& opt,
                        bool neumann) {
  if (data.size() != A.m) throw std::invalid_argument("boundary solve: data arity must be m");
  const ReducedSymbol sym = reduce(A, xi);

  FrequencySolve out;
  out.f = Eigen::VectorXcd::Zero(A.m);

  ModeBasis mb;
  try {
    mb = mode_basis(sym, opt.root_tol);
  } catch (const std::runtime_error&) {
    // Root structure degenerate at this frequency: no admissible basis.
    out.ill_posed = true;
    out.cond = kInf;
    return out;
  }
  const std::vector<SymbolRoot>& roots = side_roots(mb, side);
  const Eigen::MatrixXcd M =
      neumann ? neumann_map(sym, roots, side) : dirichlet_map(roots, A.m);

  out.cond = condition_number(M);
  if (!(out.cond <= opt.cond_max)) {
    out.ill_posed = true;
    return out;
  }

  Eigen::VectorXcd f = M.partialPivLu().solve(data);
  out.residual = (M * f - data).norm();
  const double ref = data.norm();
  if (ref > 0.0 && out.residual > opt.rtol * ref) {
    out.ill_posed = true;
    return out;
  }
  out.f = f;
  out.w = profile_from_coeffs(roots, f);
  return out;
}

FieldSolve solve_field(const CoefTensor& A, const FrequencyField& data, Side side,
                       const SolveOptions& opt, bool neumann) {
  validate_field(data);
  FieldSolve out;
  out.coeffs.n = data.n;
  out.coeffs.samples = data.samples;
  out.coeffs.payload.reserve(data.size());
  out.cond.reserve(data.size());
  out.ill_posed.reserve(data.size());
  for (int i = 0; i < data.size(); ++i) {
    FrequencySolve fs = solve_at(A, data.samples[i].xi, data.payload[i], side, opt, neumann);
    out.coeffs.payload.push_back(fs.f);
    out.cond.push_back(fs.cond);
    out.ill_posed.push_back(fs.ill_posed ? 1 : 0);
    if (fs.ill_posed) ++out.flagged;
  }
  return out;
}

}  // namespace

FrequencySolve solve_neumann_at(const CoefTensor& A, const Eigen::VectorXd& xi,
                                const NeumannVector& G, Side side, const SolveOptions& opt) {
  return solve_at(A, xi, G, side, opt, /*neumann=*/true);
}

FrequencySolve solve_dirichlet_at(const CoefTensor& A, const Eigen::VectorXd& xi,
                                  const TraceVector& phi, Side side, const SolveOptions& opt) {
  return solve_at(A, xi, phi, side, opt, /*neumann=*/false);
}

FieldSolve solve_neumann(const CoefTensor& A, const FrequencyField& data, Side side,
                         const SolveOptions& opt) {
  return solve_field(A, data, side, opt, /*neumann=*/true);
}

FieldSolve solve_dirichlet(const CoefTensor& A, const FrequencyField& data, Side side,
                           const SolveOptions& opt) {
  return solve_field(A, data, side, opt, /*neumann=*/false);
}

Synthesis synthesize(const CoefTensor& A, const FrequencyField& coeffs, Side side,
                     const std::vector<SpatialPoint>& points, int j, double root_tol) {
  validate_field(coeffs);
  if (j < 0) throw std::invalid_argument("synthesize: derivative order must be >= 0");

  Synthesis out;
  out.components = MultiIndexSet(A.n + 1, j);
  const int ncomp = out.components.size();
  const int npts = static_cast<int>(points.size());
  out.values = Eigen::MatrixXcd::Zero(npts, ncomp);

  for (const SpatialPoint& p : points)
    if (p.x.size() != A.n) throw std::invalid_argument("synthesize: point dimension mismatch");

  for (int s = 0; s < coeffs.size(); ++s) {
    const Eigen::VectorXcd& f = coeffs.payload[s];
    if (f.size() == 0 || f.cwiseAbs().maxCoeff() == 0.0) continue;  // flagged or empty sample
    const Eigen::VectorXd& xi = coeffs.samples[s].xi;
    const double weight = coeffs.samples[s].weight;

    const ReducedSymbol sym = reduce(A, xi);
    const ModeBasis mb = mode_basis(sym, root_tol);
    const std::vector<SymbolRoot>& roots = side_roots(mb, side);
    ModeProfile prof = profile_from_coeffs(roots, f);

    std::vector<ModeProfile> ladder(j + 1);
    ladder[0] = prof;
    for (int v = 1; v <= j; ++v) ladder[v] = differentiate(ladder[v - 1]);

    const Eigen::VectorXcd z = cplx(0, kTwoPi) * xi.cast<cplx>();
    std::vector<cplx> hz(ncomp);
    std::vector<int> vert(ncomp);
    for (int c = 0; c < ncomp; ++c) {
      const MultiIndex& gamma = out.components[c];
      vert[c] = gamma.back();
      MultiIndex par(gamma.begin(), gamma.end() - 1);
      hz[c] = mi_pow(z, par);
    }

    for (int p = 0; p < npts; ++p) {
      const cplx phase = std::exp(cplx(0, kTwoPi * xi.dot(points[p].x)));
      std::vector<cplx> dv(j + 1);
      for (int v = 0; v <= j; ++v) dv[v] = eval_profile(ladder[v], points[p].t);
      for (int c = 0; c < ncomp; ++c) out.values(p, c) += weight * hz[c] * dv[vert[c]] * phase;
    }
  }
  return out;
}

}  // namespace hsn

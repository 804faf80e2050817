#include "hsn/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace hsn {

namespace {

// Neumann boundary rows at t = 0: G_l as a linear functional of
// y = (w(0), ..., w^{(2m-1)}(0)), upper-side sign.
Eigen::MatrixXcd neumann_rows(const ReducedSymbol& sym) {
  const int m = sym.m;
  Eigen::MatrixXcd rows = Eigen::MatrixXcd::Zero(m, 2 * m);
  for (int l = 0; l < m; ++l)
    for (int a = l + 1; a <= m; ++a) {
      const double par = ((a - 1 - l) % 2) ? -1.0 : 1.0;
      for (int b = 0; b <= m; ++b) rows(l, a + b - 1 - l) -= par * sym.C(a, b);
    }
  return rows;
}

BvpOracleResult solve_bvp(const ReducedSymbol& sym, const Eigen::MatrixXcd& bc_rows,
                          const Eigen::VectorXcd& bc_rhs, int points) {
  const int m = sym.m;
  const int dim = 2 * m;
  if (points < 8) throw std::invalid_argument("bvp oracle: need at least 8 points");

  // Domain long enough that the slowest decaying mode is ~e^{-12} at the end.
  const ModeBasis mb = mode_basis(sym);
  double min_rate = std::numeric_limits<double>::infinity();
  for (const SymbolRoot& r : mb.decaying) min_rate = std::min(min_rate, -r.lambda.real());
  const double L = 12.0 / min_rate;
  const double h = L / (points - 1);

  // Companion matrix of sum_k p_k w^{(k)} = 0.
  const Eigen::VectorXcd p = charpoly(sym);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j + 1 < dim; ++j) M(j, j + 1) = 1.0;
  for (int k = 0; k < dim; ++k) M(dim - 1, k) = -p[k] / p[dim];

  // Box scheme: y_{i+1} - y_i - (h/2) M (y_i + y_{i+1}) = 0.
  const Eigen::MatrixXcd Aminus = -Eigen::MatrixXcd::Identity(dim, dim) - 0.5 * h * M;
  const Eigen::MatrixXcd Aplus = Eigen::MatrixXcd::Identity(dim, dim) - 0.5 * h * M;

  const int total = dim * points;
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<size_t>(total) * 2 * dim);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(total);

  for (int i = 0; i + 1 < points; ++i) {
    const int row0 = i * dim;
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) {
        if (Aminus(r, c) != cplx(0, 0)) trip.emplace_back(row0 + r, i * dim + c, Aminus(r, c));
        if (Aplus(r, c) != cplx(0, 0))
          trip.emplace_back(row0 + r, (i + 1) * dim + c, Aplus(r, c));
      }
  }
  // m boundary rows at 0.
  const int bc0 = (points - 1) * dim;
  for (int l = 0; l < m; ++l) {
    for (int c = 0; c < dim; ++c)
      if (bc_rows(l, c) != cplx(0, 0)) trip.emplace_back(bc0 + l, c, bc_rows(l, c));
    rhs[bc0 + l] = bc_rhs[l];
  }
  // m decay rows: first m components vanish at the far end.
  for (int l = 0; l < m; ++l)
    trip.emplace_back(bc0 + m + l, (points - 1) * dim + l, cplx(1, 0));

  Eigen::SparseMatrix<cplx> S(total, total);
  S.setFromTriplets(trip.begin(), trip.end());
  S.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.analyzePattern(S);
  lu.factorize(S);
  if (lu.info() != Eigen::Success) throw std::runtime_error("bvp oracle: factorization failed");
  const Eigen::VectorXcd y = lu.solve(rhs);

  BvpOracleResult out;
  out.boundary_state = y.head(dim);
  out.domain_length = L;
  out.points = points;
  return out;
}

}  // namespace

BvpOracleResult bvp_oracle_neumann(const ReducedSymbol& sym, const NeumannVector& G,
                                   int points) {
  if (G.size() != sym.m) throw std::invalid_argument("bvp oracle: need m Neumann components");
  return solve_bvp(sym, neumann_rows(sym), G, points);
}

BvpOracleResult bvp_oracle_dirichlet(const ReducedSymbol& sym, const TraceVector& phi,
                                     int points) {
  const int m = sym.m;
  if (phi.size() != m) throw std::invalid_argument("bvp oracle: need m trace components");
  Eigen::MatrixXcd rows = Eigen::MatrixXcd::Zero(m, 2 * m);
  for (int l = 0; l < m; ++l) rows(l, l) = 1.0;
  return solve_bvp(sym, rows, phi, points);
}

}  // namespace hsn

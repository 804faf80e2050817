#pragma once

#include <Eigen/Core>

#include "hsn/halfspace.hpp"
#include "hsn/symbol.hpp"

namespace hsn {

/// Independent finite-difference check on the per-frequency boundary solves.
/// The vertical ODE is rewritten as a first-order companion system
/// y' = M y, y = (w, w', ..., w^{(2m-1)}), discretized with the trapezoidal
/// box scheme on [0, 12/min|Re lambda|], with decay imposed by zeroing the
/// first m components at the far end and the boundary rows (Neumann or
/// Dirichlet) imposed at 0; the sparse block system is solved directly.
/// Nothing of the exponential mode calculus enters the discretization (the
/// roots are used only to size the domain).
struct BvpOracleResult {
  Eigen::VectorXcd boundary_state;  ///< y(0) = (w(0), ..., w^{(2m-1)}(0))
  double domain_length = 0;
  int points = 0;
};

BvpOracleResult bvp_oracle_neumann(const ReducedSymbol& sym, const NeumannVector& G,
                                   int points = 4096);
BvpOracleResult bvp_oracle_dirichlet(const ReducedSymbol& sym, const TraceVector& phi,
                                     int points = 4096);

}  // namespace hsn

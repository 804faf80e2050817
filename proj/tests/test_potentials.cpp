#include <doctest.h>

#include <cmath>

#include "hsn/potentials.hpp"
#include "hsn/verify.hpp"

using namespace hsn;

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

Eigen::VectorXd unit_xi(double scale) {
  Eigen::VectorXd xi(1);
  xi[0] = scale / kTwoPi;
  return xi;
}
}  // namespace

TEST_CASE("taylor shift recenters a polynomial") {
  Eigen::VectorXcd p(3);  // 1 + 2z + 3z^2
  p << cplx(1, 0), cplx(2, 0), cplx(3, 0);
  const Eigen::VectorXcd q = taylor_shift(p, cplx(1, 0));  // p(1+u) = 6 + 8u + 3u^2
  REQUIRE(q.size() == 3);
  CHECK(std::abs(q[0] - cplx(6, 0)) < 1e-14);
  CHECK(std::abs(q[1] - cplx(8, 0)) < 1e-14);
  CHECK(std::abs(q[2] - cplx(3, 0)) < 1e-14);
}

TEST_CASE("power series inverse") {
  Eigen::VectorXcd h(2);  // 2 + u
  h << cplx(2, 0), cplx(1, 0);
  const Eigen::VectorXcd inv = series_inverse(h, 4);
  REQUIRE(inv.size() == 4);
  CHECK(std::abs(inv[0] - cplx(0.5, 0)) < 1e-15);
  CHECK(std::abs(inv[1] - cplx(-0.25, 0)) < 1e-15);
  CHECK(std::abs(inv[2] - cplx(0.125, 0)) < 1e-15);
  CHECK(std::abs(inv[3] - cplx(-0.0625, 0)) < 1e-15);
}

TEST_CASE("fundamental kernel of the second-order symbol") {
  // w'' = s^2 w at s = 1: E(t) = e^{-|t|} / 2.
  const ReducedSymbol sym = reduce(make_special_operator(1, 1), unit_xi(1.0));
  const OdeKernel K = newton_kernel(sym);
  CHECK(K.m == 1);
  CHECK(std::abs(K.lead - cplx(-1, 0)) < 1e-14);
  REQUIRE(K.upper.terms() == 1);
  REQUIRE(K.lower.terms() == 1);
  CHECK(std::abs(K.upper.lambdas[0] - cplx(-1, 0)) < 1e-12);
  CHECK(std::abs(K.upper.coeffs[0][0] - cplx(0.5, 0)) < 1e-12);
  CHECK(std::abs(K.lower.lambdas[0] - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(eval_profile(K.lower, -0.3) - cplx(0.5 * std::exp(-0.3), 0)) < 1e-12);
  // Derivative jump at 0 is 1/lead.
  const cplx jump = derivs_at_zero(K.upper, 2)[1] - derivs_at_zero(K.lower, 2)[1];
  CHECK(std::abs(jump - 1.0 / K.lead) < 1e-12);
}

TEST_CASE("fundamental kernel with a confluent root") {
  // (s^2 - d^2/dt^2)^2 E = delta at s = 1: E(t) = (1 + |t|) e^{-|t|} / 4.
  const ReducedSymbol sym = reduce(make_biharmonic_rho(1, 0.0), unit_xi(1.0));
  const OdeKernel K = newton_kernel(sym);
  REQUIRE(K.upper.terms() == 1);
  REQUIRE(K.upper.coeffs[0].size() == 2);
  CHECK(std::abs(K.upper.lambdas[0] - cplx(-1, 0)) < 1e-10);
  CHECK(std::abs(K.upper.coeffs[0][0] - cplx(0.25, 0)) < 1e-10);
  CHECK(std::abs(K.upper.coeffs[0][1] - cplx(0.25, 0)) < 1e-10);

  // C^{2m-2} continuity across 0 and the 1/lead jump in E^{(2m-1)}.
  const Eigen::VectorXcd du = derivs_at_zero(K.upper, 4);
  const Eigen::VectorXcd dl = derivs_at_zero(K.lower, 4);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(du[j] - dl[j]) < 1e-10);
  CHECK(std::abs((du[3] - dl[3]) - 1.0 / K.lead) < 1e-10);
}

TEST_CASE("kernel jump relations hold for a generic tensor") {
  std::mt19937_64 rng(11);
  const CoefTensor A = random_tensor(2, 2, 0.25, rng);
  Eigen::VectorXd xi(2);
  xi << 0.13, 0.09;
  const ReducedSymbol sym = reduce(A, xi);
  const OdeKernel K = newton_kernel(sym);
  const Eigen::VectorXcd du = derivs_at_zero(K.upper, 4);
  const Eigen::VectorXcd dl = derivs_at_zero(K.lower, 4);
  const double mag = 1.0 + du.cwiseAbs().maxCoeff();
  for (int j = 0; j < 3; ++j) CHECK(std::abs(du[j] - dl[j]) < 1e-10 * mag);
  CHECK(std::abs((du[3] - dl[3]) - 1.0 / K.lead) < 1e-10 * mag);
}

TEST_CASE("single layer jump relations in closed form") {
  std::mt19937_64 rng(3);
  for (int m : {1, 2, 3}) {
    const CoefTensor A = make_special_operator(1, m);
    const ReducedSymbol sym = reduce(A, unit_xi(1.4));
    const OdeKernel K = newton_kernel(sym);
    const NeumannVector g = random_complex_vector(m, rng);
    const LayerPotential S = single_layer(K, g);
    // Traces agree across the boundary.
    const TraceVector up = traces_of(S.upper, m);
    const TraceVector down = traces_of(S.lower, m);
    CHECK((up - down).norm() <= 1e-10 * (1.0 + up.norm()));
    // Conormals from the two sides sum to the density.
    const NeumannVector sum =
        conormal_of(sym, S.upper, Side::upper) + conormal_of(sym, S.lower, Side::lower);
    CHECK((sum - g).norm() <= 1e-9 * (1.0 + g.norm()));
  }
}

TEST_CASE("both source spreadings reduce to the density") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2}) {
    const int m = 2;
    const CoefTensor A = make_special_operator(n, m);
    Eigen::VectorXd xi = random_direction(n, rng) * 0.21;
    const ReducedSymbol sym = reduce(A, xi);
    const NeumannVector g = random_complex_vector(m, rng);
    for (SourceScheme scheme : {SourceScheme::omega, SourceScheme::axis}) {
      const Eigen::VectorXcd v = source_array(sym, scheme, g);
      const Eigen::VectorXcd s = reduce_source(sym, v);
      REQUIRE(s.size() == m + 1);
      for (int a = 0; a < m; ++a) CHECK(std::abs(s[a] - g[a]) < 1e-12 * (1.0 + std::abs(g[a])));
      CHECK(std::abs(s[m]) < 1e-13);
    }
  }
}

TEST_CASE("layer_from_source on the reduced density matches single_layer") {
  const ReducedSymbol sym = reduce(make_special_operator(1, 2), unit_xi(0.9));
  const OdeKernel K = newton_kernel(sym);
  NeumannVector g(2);
  g << cplx(1, -1), cplx(0.5, 2);
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(3);
  s.head(2) = g;
  const LayerPotential a = single_layer(K, g);
  const LayerPotential b = layer_from_source(K, s);
  for (double t : {0.2, 1.0})
    CHECK(std::abs(eval_profile(a.upper, t) - eval_profile(b.upper, t)) < 1e-12);
  for (double t : {-0.2, -1.0})
    CHECK(std::abs(eval_profile(a.lower, t) - eval_profile(b.lower, t)) < 1e-12);
}

TEST_CASE("boundary extension reproduces its trace data") {
  const int m = 3;
  const double scale = 1.7;
  TraceVector phi(m);
  phi << cplx(1, 0.5), cplx(-2, 1), cplx(0.3, -0.7);
  const Eigen::VectorXcd d0 = extension_derivs(m, scale, phi, 0.0, m);
  for (int l = 0; l < m; ++l) CHECK(std::abs(d0[l] - phi[l]) < 1e-13);

  // The returned ladder is internally consistent: entry j+1 is the derivative
  // of entry j (checked by central differences away from 0).
  const double t = 0.4, h = 1e-5;
  const Eigen::VectorXcd mid = extension_derivs(m, scale, phi, t, m + 1);
  const Eigen::VectorXcd hi = extension_derivs(m, scale, phi, t + h, m + 1);
  const Eigen::VectorXcd lo = extension_derivs(m, scale, phi, t - h, m + 1);
  for (int j = 0; j + 1 < m + 1; ++j) {
    const cplx fd = (hi[j] - lo[j]) / (2.0 * h);
    CHECK(std::abs(fd - mid[j + 1]) < 1e-6 * (1.0 + std::abs(mid[j + 1])));
  }

  CHECK(extension_cutoff(m, scale, 1e-16) ==
        doctest::Approx(std::pow(-std::log(1e-16), 1.0 / (2 * m)) / scale).epsilon(1e-12));
}

TEST_CASE("double layer of the second-order symbol") {
  // At unit scale with f = (1): D f = -e^{-t}/2 above and e^{t}/2 below
  // (trace jump -1, conormals cancel).
  const ReducedSymbol sym = reduce(make_special_operator(1, 1), unit_xi(1.0));
  const OdeKernel K = newton_kernel(sym);
  TraceVector f(1);
  f << cplx(1, 0);
  QuadReport rep;
  const LayerPotential D = double_layer(sym, K, f, 1e-10, &rep);
  CHECK(rep.converged);
  CHECK(std::abs(eval_profile(D.upper, 0.4) + 0.5 * std::exp(-0.4)) < 1e-8);
  CHECK(std::abs(eval_profile(D.lower, -0.4) - 0.5 * std::exp(-0.4)) < 1e-8);
}

TEST_CASE("neumann pairing through the extension matches the conormal pairing") {
  std::mt19937_64 rng(17);
  for (int m : {1, 2}) {
    const CoefTensor A = make_special_operator(1, m);
    const ReducedSymbol sym = reduce(A, unit_xi(1.2));
    const ModeBasis mb = mode_basis(sym);
    const ModeProfile w = profile_from_coeffs(mb.decaying, random_complex_vector(m, rng));
    const TraceVector phi = random_complex_vector(m, rng);
    const NeumannVector G = conormal_of(sym, w, Side::upper);
    cplx direct = 0;
    for (int l = 0; l < m; ++l) direct += std::conj(phi[l]) * G[l];
    const cplx viaE = neumann_via_E(sym, w, phi, 1e-10);
    CHECK(std::abs(viaE - direct) < 1e-7 * (1.0 + std::abs(direct)));
  }
}

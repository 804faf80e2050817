#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hsn/symbol.hpp"

using namespace hsn;

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("second-order reduction at unit scale") {
  // xi = 1/(2 pi) makes 2 pi |xi| = 1; the calibration tensor reduces to the
  // identity and the vertical ODE is w'' = w.
  Eigen::VectorXd xi(1);
  xi[0] = 1.0 / kTwoPi;
  const ReducedSymbol sym = reduce(make_special_operator(1, 1), xi);
  CHECK(sym.scale == doctest::Approx(1.0).epsilon(1e-15));
  REQUIRE(sym.C.rows() == 2);
  CHECK(close(sym.C(0, 0), cplx(1, 0), 1e-14));
  CHECK(close(sym.C(1, 1), cplx(1, 0), 1e-14));
  CHECK(close(sym.C(0, 1), cplx(0, 0), 1e-14));
  CHECK(sym.omega[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sym.omega[1] == doctest::Approx(1.0).epsilon(1e-14));

  const Eigen::VectorXcd p = charpoly(sym);
  REQUIRE(p.size() == 3);
  CHECK(close(p[0], cplx(1, 0), 1e-14));
  CHECK(close(p[1], cplx(0, 0), 1e-14));
  CHECK(close(p[2], cplx(-1, 0), 1e-14));
}

TEST_CASE("reduction rejects degenerate frequencies") {
  const CoefTensor t = make_special_operator(2, 1);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(reduce(t, zero), std::invalid_argument);
  Eigen::VectorXd wrong(1);
  wrong[0] = 1.0;
  CHECK_THROWS_AS(reduce(t, wrong), std::invalid_argument);
  Eigen::VectorXd bad(2);
  bad << 1.0, std::nan("");
  CHECK_THROWS_AS(reduce(t, bad), std::invalid_argument);
}

TEST_CASE("omega weights expand the gradient slice weight") {
  // n=1, order 2 at 2 pi xi = s: weights (s^4, s^2, 1).
  Eigen::VectorXd xi(1);
  xi[0] = 0.7 / kTwoPi;
  const Eigen::VectorXd w = omega_weights(1, 2, xi);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == doctest::Approx(std::pow(0.7, 4)).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(std::pow(0.7, 2)).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fourth-order family has a parameter-independent characteristic polynomial") {
  // The top-order symbol of every member is the bilaplacian, so the vertical
  // polynomial is (s^2 - z^2)^2 regardless of rho.
  Eigen::VectorXd xi(1);
  xi[0] = 0.5;
  const double s = kTwoPi * 0.5;
  for (double rho : {0.0, 0.3, 1.0, -2.0}) {
    const ReducedSymbol sym = reduce(make_biharmonic_rho(1, rho), xi);
    const Eigen::VectorXcd p = charpoly(sym);
    REQUIRE(p.size() == 5);
    CHECK(close(p[0], cplx(std::pow(s, 4), 0), 1e-10));
    CHECK(close(p[1], cplx(0, 0), 1e-12));
    CHECK(close(p[2], cplx(-2.0 * s * s, 0), 1e-11));
    CHECK(close(p[3], cplx(0, 0), 1e-12));
    CHECK(close(p[4], cplx(1, 0), 1e-13));
  }
}

TEST_CASE("polynomial roots via the companion matrix") {
  Eigen::VectorXcd lin(2);
  lin << cplx(-2, 0), cplx(1, 0);
  auto r = poly_roots(lin);
  REQUIRE(r.size() == 1);
  CHECK(close(r[0], cplx(2, 0), 1e-13));

  Eigen::VectorXcd quad(3);
  quad << cplx(1, 0), cplx(0, 0), cplx(-1, 0);
  r = poly_roots(quad);
  REQUIRE(r.size() == 2);
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(close(r[0], cplx(-1, 0), 1e-13));
  CHECK(close(r[1], cplx(1, 0), 1e-13));

  Eigen::VectorXcd degenerate(3);
  degenerate << cplx(1, 0), cplx(1, 0), cplx(0, 0);
  CHECK_THROWS(poly_roots(degenerate));
}

TEST_CASE("root clustering merges within tolerance and sorts by (Re, Im)") {
  const std::vector<cplx> raw = {cplx(1, 1e-12), cplx(1, -1e-12), cplx(-2, 0)};
  const auto clusters = cluster_roots(raw, 1e-6);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].lambda == cplx(-2, 0));
  CHECK(clusters[0].mult == 1);
  CHECK(close(clusters[1].lambda, cplx(1, 0), 1e-12));
  CHECK(clusters[1].mult == 2);
}

TEST_CASE("closed-form calibration roots") {
  // lambda_k = s i e^{i pi k / (m+1)}; for m = 2 both roots share Re = -s
  // sqrt(3)/2 and differ by the sign of Im.
  const auto r = special_roots(2, 1.0);
  REQUIRE(r.size() == 2);
  CHECK(close(r[0], cplx(-std::sqrt(3.0) / 2.0, 0.5), 1e-14));
  CHECK(close(r[1], cplx(-std::sqrt(3.0) / 2.0, -0.5), 1e-14));
  // All decaying, magnitude = scale.
  for (int m : {1, 2, 3, 4}) {
    for (const cplx& lam : special_roots(m, 2.5)) {
      CHECK(lam.real() < 0.0);
      CHECK(std::abs(lam) == doctest::Approx(2.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("mode basis splits the calibration roots by side") {
  Eigen::VectorXd xi(1);
  xi[0] = 1.3 / kTwoPi;
  const ReducedSymbol sym = reduce(make_special_operator(1, 2), xi);
  const ModeBasis basis = mode_basis(sym);
  CHECK(basis.scale == doctest::Approx(1.3).epsilon(1e-14));
  REQUIRE(basis.decaying.size() == 2);
  REQUIRE(basis.growing.size() == 2);
  // The decaying set matches the closed form (as a set; both orders sort the
  // same here because the real parts tie and Im breaks the tie).
  const auto exact = special_roots(2, 1.3);
  for (const SymbolRoot& root : basis.decaying) {
    const bool hit = close(root.lambda, exact[0], 1e-9) || close(root.lambda, exact[1], 1e-9);
    CHECK(hit);
    CHECK(root.mult == 1);
  }
  for (const SymbolRoot& root : basis.growing) CHECK(root.lambda.real() > 0.0);
}

TEST_CASE("mode basis certifies slice-ellipticity failures") {
  // Flipping the sign of the vertical block puts both roots on the imaginary
  // axis (w'' = -s^2 w), which must throw rather than return a lopsided basis.
  CoefTensor t = make_special_operator(1, 1);
  t.A(1, 1) = cplx(-1, 0);
  Eigen::VectorXd xi(1);
  xi[0] = 0.4;
  const ReducedSymbol sym = reduce(t, xi);
  CHECK_THROWS_AS(mode_basis(sym), std::runtime_error);
}

TEST_CASE("derivative of t^r exp(lambda t) at zero") {
  CHECK(deriv0(cplx(2, 0), 1, 3) == cplx(12, 0));  // binom(3,1) 1! 2^2
  CHECK(deriv0(cplx(5, 0), 2, 1) == cplx(0, 0));   // j < r
  CHECK(deriv0(cplx(3, 0), 0, 2) == cplx(9, 0));
  CHECK(deriv0(cplx(0, 1), 2, 2) == cplx(2, 0));   // 2! lambda^0
}

TEST_CASE("profile calculus on t e^{-t}") {
  ModeProfile f;
  f.lambdas = {cplx(-1, 0)};
  Eigen::VectorXcd c(2);
  c << cplx(0, 0), cplx(1, 0);
  f.coeffs = {c};

  const ModeProfile df = differentiate(f);
  REQUIRE(df.coeffs.size() == 1);
  CHECK(df.coeffs[0][0] == cplx(1, 0));
  CHECK(df.coeffs[0][1] == cplx(-1, 0));

  CHECK(close(eval_profile(f, 0.5), cplx(0.5 * std::exp(-0.5), 0), 1e-15));
  CHECK(close(eval_profile(df, 2.0), cplx(-std::exp(-2.0), 0), 1e-15));

  const Eigen::VectorXcd d0 = derivs_at_zero(f, 3);
  REQUIRE(d0.size() == 3);
  CHECK(d0[0] == cplx(0, 0));
  CHECK(d0[1] == cplx(1, 0));   // (t e^{-t})' = (1 - t) e^{-t}
  CHECK(d0[2] == cplx(-2, 0));  // second derivative at 0
}

TEST_CASE("min decay rate scans the mode exponents") {
  ModeProfile f;
  f.lambdas = {cplx(-1, 2), cplx(-0.5, -3), cplx(-4, 0)};
  Eigen::VectorXcd one(1);
  one << cplx(1, 0);
  f.coeffs = {one, one, one};
  CHECK(min_decay_rate(f) == doctest::Approx(0.5));
  CHECK(std::isinf(min_decay_rate(ModeProfile{})));
}

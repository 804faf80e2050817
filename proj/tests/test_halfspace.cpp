#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "hsn/grids.hpp"
#include "hsn/halfspace.hpp"

using namespace hsn;

namespace {
constexpr double kTwoPi = 6.28318530717958647692;

Eigen::VectorXd unit_xi(double scale) {
  Eigen::VectorXd xi(1);
  xi[0] = scale / kTwoPi;
  return xi;
}

std::vector<SymbolRoot> simple_roots(const std::vector<cplx>& lambdas) {
  std::vector<SymbolRoot> out;
  for (const cplx& l : lambdas) out.push_back({l, 1});
  return out;
}
}  // namespace

TEST_CASE("sphere samples") {
  const auto rays = sphere_samples(1, 5);
  REQUIRE(rays.size() == 2);
  CHECK(rays[0][0] == 1.0);
  CHECK(rays[1][0] == -1.0);
  for (const auto& d : sphere_samples(2, 8)) CHECK(d.norm() == doctest::Approx(1.0));
  for (const auto& d : sphere_samples(3, 8)) CHECK(d.norm() == doctest::Approx(1.0));
}

TEST_CASE("frequency grid weights integrate the annulus measure") {
  GridConfig cfg;
  cfg.xi_min = 0.5;
  cfg.xi_max = 2.0;
  cfg.radial = 400;
  cfg.angular = 16;

  double total1 = 0;
  for (const auto& s : frequency_grid(1, cfg)) {
    CHECK(s.weight > 0.0);
    total1 += s.weight;
  }
  CHECK(total1 == doctest::Approx(2.0 * (2.0 - 0.5)).epsilon(1e-4));

  double total2 = 0;
  for (const auto& s : frequency_grid(2, cfg)) total2 += s.weight;
  const double pi = 3.14159265358979323846;
  CHECK(total2 == doctest::Approx(pi * (4.0 - 0.25)).epsilon(1e-4));
}

TEST_CASE("field validation rejects malformed samples") {
  FrequencyField field;
  field.n = 1;
  field.samples.push_back({unit_xi(1.0), 1.0});
  Eigen::VectorXcd pay(1);
  pay << cplx(1, 0);
  field.payload.push_back(pay);
  CHECK_NOTHROW(validate_field(field));

  FrequencyField zero = field;
  zero.samples[0].xi[0] = 0.0;
  CHECK_THROWS_AS(validate_field(zero), std::invalid_argument);

  FrequencyField negw = field;
  negw.samples[0].weight = -1.0;
  CHECK_THROWS_AS(validate_field(negw), std::invalid_argument);

  FrequencyField arity = field;
  arity.payload.push_back(pay);  // one payload too many
  CHECK_THROWS_AS(validate_field(arity), std::invalid_argument);

  FrequencyField nan = field;
  nan.payload[0][0] = cplx(std::nan(""), 0);
  CHECK_THROWS_AS(validate_field(nan), std::invalid_argument);
}

TEST_CASE("profile assembly follows the canonical column order") {
  const std::vector<SymbolRoot> roots = {{cplx(-1, 0), 2}, {cplx(-2, 0), 1}};
  CHECK(basis_dimension(roots) == 3);
  Eigen::VectorXcd f(3);
  f << cplx(1, 0), cplx(2, 0), cplx(3, 0);
  const ModeProfile w = profile_from_coeffs(roots, f);
  REQUIRE(w.terms() == 2);
  CHECK(w.lambdas[0] == cplx(-1, 0));
  CHECK(w.coeffs[0][0] == cplx(1, 0));
  CHECK(w.coeffs[0][1] == cplx(2, 0));
  CHECK(w.coeffs[1][0] == cplx(3, 0));
}

TEST_CASE("trace map handles a confluent root") {
  // Columns e^{-t}, t e^{-t}; rows are value and first derivative at 0.
  const std::vector<SymbolRoot> roots = {{cplx(-1, 0), 2}};
  const Eigen::MatrixXcd D = dirichlet_map(roots, 2);
  REQUIRE(D.rows() == 2);
  REQUIRE(D.cols() == 2);
  CHECK(D(0, 0) == cplx(1, 0));
  CHECK(D(0, 1) == cplx(0, 0));
  CHECK(D(1, 0) == cplx(-1, 0));
  CHECK(D(1, 1) == cplx(1, 0));
}

TEST_CASE("traces and conormal of the second-order mode") {
  // Unit scale: w = e^{-t} solves w'' = w; the single conormal component is
  // -C_11 w'(0) = 1 on the upper side and matches on the lower side for the
  // reflected mode e^{t}.
  const ReducedSymbol sym = reduce(make_special_operator(1, 1), unit_xi(1.0));
  ModeProfile up;
  up.lambdas = {cplx(-1, 0)};
  Eigen::VectorXcd one(1);
  one << cplx(1, 0);
  up.coeffs = {one};

  const TraceVector tr = traces_of(up, 1);
  REQUIRE(tr.size() == 1);
  CHECK(tr[0] == cplx(1, 0));

  const NeumannVector g = conormal_of(sym, up, Side::upper);
  REQUIRE(g.size() == 1);
  CHECK(std::abs(g[0] - cplx(1, 0)) < 1e-14);

  ModeProfile down;
  down.lambdas = {cplx(1, 0)};
  down.coeffs = {one};
  const NeumannVector gl = conormal_of(sym, down, Side::lower);
  CHECK(std::abs(gl[0] - cplx(1, 0)) < 1e-14);
}

TEST_CASE("closed-form boundary matrix at unit scale, half-order two") {
  // Hand-evaluated N_{lk} = -2 i^l sin(pi (1+l) k / 3) / (e^{2 pi i k/3} - 1).
  const Eigen::MatrixXcd N = special_neumann_matrix(2, 1.0);
  const double h = std::sqrt(3.0) / 2.0;
  REQUIRE(N.rows() == 2);
  CHECK(std::abs(N(0, 0) - cplx(h, 0.5)) < 1e-14);
  CHECK(std::abs(N(0, 1) - cplx(h, -0.5)) < 1e-14);
  CHECK(std::abs(N(1, 0) - cplx(-0.5, h)) < 1e-14);
  CHECK(std::abs(N(1, 1) - cplx(-0.5, -h)) < 1e-14);
}

TEST_CASE("closed-form boundary matrix row scaling") {
  // Row l scales like s^{2m-1-l}.
  const Eigen::MatrixXcd n1 = special_neumann_matrix(3, 1.0);
  const Eigen::MatrixXcd n2 = special_neumann_matrix(3, 2.0);
  for (int l = 0; l < 3; ++l) {
    const double factor = std::pow(2.0, 5 - l);
    for (int k = 0; k < 3; ++k)
      CHECK(std::abs(n2(l, k) - factor * n1(l, k)) < 1e-12 * std::abs(n2(l, k)));
  }
}

TEST_CASE("conormal matrix over the exact calibration roots matches the closed form") {
  for (int m : {1, 2, 3}) {
    for (double s : {0.7, 1.0, 3.2}) {
      const ReducedSymbol sym = reduce(make_special_operator(1, m), unit_xi(s));
      const auto roots = simple_roots(special_roots(m, sym.scale));
      const Eigen::MatrixXcd N = neumann_map(sym, roots, Side::upper);
      const Eigen::MatrixXcd ref = special_neumann_matrix(m, sym.scale);
      CHECK((N - ref).norm() <= 1e-12 * ref.norm());
    }
  }
}

TEST_CASE("sine matrix is an involution up to scale") {
  const Eigen::MatrixXd M2 = sine_matrix(2);
  const double h = std::sqrt(3.0) / 2.0;
  CHECK(M2(0, 0) == doctest::Approx(h).epsilon(1e-15));
  CHECK(M2(0, 1) == doctest::Approx(h).epsilon(1e-15));
  CHECK(M2(1, 0) == doctest::Approx(h).epsilon(1e-15));
  CHECK(M2(1, 1) == doctest::Approx(-h).epsilon(1e-15));

  for (int m = 1; m <= 8; ++m) {
    const Eigen::MatrixXd M = sine_matrix(m);
    const Eigen::MatrixXd sq = M * M;
    const Eigen::MatrixXd target =
        0.5 * (m + 1) * Eigen::MatrixXd::Identity(m, m);
    CHECK((sq - target).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd inv = sine_matrix_inverse(m);
    CHECK((M * inv - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("boundary solves round trip their data") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int m : {1, 2, 3}) {
    Eigen::VectorXd xi(2);
    xi << 0.11, -0.07;
    const CoefTensor A = make_special_operator(2, m);
    const ReducedSymbol sym = reduce(A, xi);

    NeumannVector G(m);
    for (int l = 0; l < m; ++l) G[l] = cplx(nd(rng), nd(rng));
    const FrequencySolve sol = solve_neumann_at(A, xi, G, Side::upper);
    CHECK_FALSE(sol.ill_posed);
    CHECK(sol.residual <= 1e-9 * (1.0 + G.norm()));
    const NeumannVector back = conormal_of(sym, sol.w, Side::upper);
    CHECK((back - G).norm() <= 1e-8 * (1.0 + G.norm()));
    // The solution decays on its side.
    for (const cplx& lam : sol.w.lambdas) CHECK(lam.real() < 0.0);

    TraceVector phi(m);
    for (int l = 0; l < m; ++l) phi[l] = cplx(nd(rng), nd(rng));
    const FrequencySolve dsol = solve_dirichlet_at(A, xi, phi, Side::upper);
    CHECK_FALSE(dsol.ill_posed);
    const TraceVector tr = traces_of(dsol.w, m);
    CHECK((tr - phi).norm() <= 1e-8 * (1.0 + phi.norm()));
  }
}

TEST_CASE("lower-side solves decay downward") {
  Eigen::VectorXd xi(1);
  xi[0] = 0.2;
  const CoefTensor A = make_special_operator(1, 2);
  NeumannVector G(2);
  G << cplx(1, 0), cplx(0, 1);
  const FrequencySolve sol = solve_neumann_at(A, xi, G, Side::lower);
  CHECK_FALSE(sol.ill_posed);
  for (const cplx& lam : sol.w.lambdas) CHECK(lam.real() > 0.0);
  const NeumannVector back = conormal_of(reduce(A, xi), sol.w, Side::lower);
  CHECK((back - G).norm() <= 1e-8 * (1.0 + G.norm()));
}

TEST_CASE("degenerate family member is flagged ill-posed") {
  const CoefTensor A = make_biharmonic_rho(1, 1.0);
  Eigen::VectorXd xi(1);
  xi[0] = 0.15;
  NeumannVector G(2);
  G << cplx(1, 0), cplx(1, 0);
  const FrequencySolve sol = solve_neumann_at(A, xi, G, Side::upper);
  CHECK(sol.ill_posed);
  REQUIRE(sol.f.size() == 2);
  CHECK(sol.f.norm() == 0.0);  // flagged solves return the zero coefficient vector
}

TEST_CASE("field solve processes samples independently") {
  const CoefTensor A = make_special_operator(1, 1);
  FrequencyField data;
  data.n = 1;
  for (double x : {0.1, -0.2, 0.5}) {
    data.samples.push_back({unit_xi(kTwoPi * x), 1.0});
    Eigen::VectorXcd g(1);
    g << cplx(x, 1);
    data.payload.push_back(g);
  }
  const FieldSolve sol = solve_neumann(A, data, Side::upper);
  CHECK(sol.flagged == 0);
  REQUIRE(sol.coeffs.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(sol.ill_posed[i] == 0);
    CHECK(sol.cond[i] >= 1.0);
    CHECK(sol.coeffs.payload[i].allFinite());
  }
}

TEST_CASE("synthesis reproduces one exponential mode") {
  // Single sample at 2 pi xi = 1 with unit coefficient and weight 2:
  // u(x, t) = 2 e^{-t} e^{i x}; first derivatives are (i u, -u).
  const CoefTensor A = make_special_operator(1, 1);
  FrequencyField coeffs;
  coeffs.n = 1;
  coeffs.samples.push_back({unit_xi(1.0), 2.0});
  Eigen::VectorXcd f(1);
  f << cplx(1, 0);
  coeffs.payload.push_back(f);

  std::vector<SpatialPoint> pts(1);
  pts[0].x = Eigen::VectorXd::Constant(1, 0.3);
  pts[0].t = 0.5;

  const Synthesis s0 = synthesize(A, coeffs, Side::upper, pts, 0);
  REQUIRE(s0.components.size() == 1);
  const cplx u = 2.0 * std::exp(-0.5) * std::exp(cplx(0, 0.3));
  CHECK(std::abs(s0.values(0, 0) - u) < 1e-12);

  const Synthesis s1 = synthesize(A, coeffs, Side::upper, pts, 1);
  REQUIRE(s1.components.size() == 2);
  const int ix = s1.components.index_of({1, 0});
  const int it = s1.components.index_of({0, 1});
  REQUIRE(ix >= 0);
  REQUIRE(it >= 0);
  CHECK(std::abs(s1.values(0, ix) - cplx(0, 1) * u) < 1e-12);
  CHECK(std::abs(s1.values(0, it) + u) < 1e-12);
}

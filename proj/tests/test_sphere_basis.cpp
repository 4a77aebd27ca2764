#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nls/legendre.hpp"
#include "nls/norms.hpp"
#include "nls/samplers.hpp"
#include "nls/transform.hpp"
#include "test_util.hpp"

using namespace nls;

TEST_CASE("mu eigenvalue roots") {
  CHECK(mu(0) == 0.0);
  CHECK(mu(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(mu(3) == doctest::Approx(std::sqrt(12.0)).epsilon(1e-15));
  for (int k = 0; k < 40; ++k) CHECK(mu(k + 1) > mu(k));
  CHECK_THROWS_AS(mu(-1), std::invalid_argument);
}

TEST_CASE("Gauss-Legendre nodes and weights") {
  for (int n : {5, 33, 129}) {
    VectorXd x, w;
    gauss_legendre(n, x, w);
    CHECK(w.minCoeff() > 0.0);
    CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 1; i < n; ++i) CHECK(x[i] > x[i - 1]);
    // exactness on a high-degree monomial: int x^{2n-2} = 2/(2n-1)
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += w[i] * std::pow(x[i], 2 * n - 2);
    CHECK(acc == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-12));
  }
}

TEST_CASE("harmonic evaluation and discrete orthonormality") {
  const auto grid = QuadratureGrid::make(8);

  SUBCASE("constant harmonic") {
    const GridField y00 = eval_harmonic({0, 0}, grid);
    for (int i = 0; i < grid->n_theta(); ++i)
      for (int j = 0; j < grid->n_phi(); ++j)
        CHECK(std::abs(y00.values(i, j) - 1.0 / std::sqrt(kFourPi)) < 1e-15);
  }
  SUBCASE("orthonormality within quadrature range") {
    const GridField a = eval_harmonic({5, 3}, grid);
    const GridField b = eval_harmonic({7, 3}, grid);
    CHECK(std::abs(inner(a, a) - 1.0) < 1e-12);
    CHECK(std::abs(inner(a, b)) < 1e-12);
    const GridField c = eval_harmonic({6, -4}, grid);
    CHECK(std::abs(inner(c, c) - 1.0) < 1e-12);
    CHECK(std::abs(inner(a, c)) < 1e-12);
  }
  SUBCASE("invalid mode rejected") {
    CHECK_THROWS_AS(eval_harmonic({2, 3}, grid), std::invalid_argument);
    CHECK_THROWS_AS(eval_harmonic({-1, 0}, grid), std::invalid_argument);
  }
}

TEST_CASE("analyze and synthesize") {
  const auto grid = QuadratureGrid::make(12);

  SUBCASE("delta coefficient round trip") {
    SpectralField f(12);
    f.at(3, 2) = 1.0;
    const SpectralField g = analyze(synthesize(f, grid), 12);
    CHECK((g.coeffs() - f.coeffs()).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("constant field analyzes to c00 = 1") {
    GridField f(grid);
    f.values.setConstant(1.0 / std::sqrt(kFourPi));
    const SpectralField g = analyze(f, 12);
    CHECK(std::abs(g.at(0, 0) - 1.0) < 1e-13);
    CHECK((g.coeffs().tail(g.size() - 1)).cwiseAbs().maxCoeff() < 1e-13);
  }
  SUBCASE("random band-limited round trip") {
    Rng rng(42);
    SpectralField f(12);
    for (Eigen::Index i = 0; i < f.size(); ++i) f.coeffs()[i] = rng.cnormal();
    const SpectralField g = analyze(synthesize(f, grid), 12);
    CHECK((g.coeffs() - f.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("grid too coarse") {
    SpectralField f(13);
    CHECK_THROWS_AS(synthesize(f, grid), std::invalid_argument);
    GridField h(grid);
    CHECK_THROWS_AS(analyze(h, 13), std::invalid_argument);
  }
  SUBCASE("discrete Parseval") {
    Rng rng(7);
    SpectralField f(12);
    for (Eigen::Index i = 0; i < f.size(); ++i) f.coeffs()[i] = rng.cnormal();
    const GridField g = synthesize(f, grid);
    CHECK(std::abs(std::sqrt(inner(g, g).real()) - f.l2_norm()) / f.l2_norm() < 1e-12);
  }
  SUBCASE("tableless grid agrees with cached table") {
    Rng rng(3);
    SpectralField f(6);
    for (Eigen::Index i = 0; i < f.size(); ++i) f.coeffs()[i] = rng.cnormal();
    const auto plain = QuadratureGrid::make(6, false);
    const auto cached = QuadratureGrid::make(6, true);
    CHECK((synthesize(f, plain).values - synthesize(f, cached).values).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("band projection") {
  SpectralField f(5);
  f.at(3, 1) = Complex(1.0, -2.0);

  SUBCASE("projection identity on a pure band") {
    CHECK((project_band(f, 3).coeffs() - f.coeffs()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(project_band(f, 2).coeffs().cwiseAbs().maxCoeff() == 0.0);
    CHECK(project_band(f, 9).coeffs().cwiseAbs().maxCoeff() == 0.0);  // k > K: zero field
  }
  SUBCASE("resolution of identity") {
    Rng rng(1);
    SpectralField u(5);
    for (Eigen::Index i = 0; i < u.size(); ++i) u.coeffs()[i] = rng.cnormal();
    SpectralField sum(5);
    for (int k = 0; k <= 5; ++k) sum = sum + project_band(u, k);
    CHECK((sum.coeffs() - u.coeffs()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("idempotent and self-adjoint") {
    Rng rng(2);
    SpectralField u(5), v(5);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      u.coeffs()[i] = rng.cnormal();
      v.coeffs()[i] = rng.cnormal();
    }
    const SpectralField pu = project_band(u, 4);
    CHECK((project_band(pu, 4).coeffs() - pu.coeffs()).cwiseAbs().maxCoeff() == 0.0);
    const Complex lhs = pu.coeffs().dot(v.coeffs());
    const Complex rhs = u.coeffs().dot(project_band(v, 4).coeffs());
    CHECK(std::abs(lhs - rhs) < 1e-14);
  }
}

TEST_CASE("wallis integrals") {
  CHECK(wallis(0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(wallis(1) == 2.0);
  CHECK(wallis(2) == doctest::Approx(kPi / 2.0).epsilon(1e-15));

  SUBCASE("n = 31 against the quadrature oracle") {
    const double oracle = simpson([](double t) { return std::pow(std::sin(t), 31); }, 0.0, kPi);
    CHECK(wallis(31) == doctest::Approx(oracle).epsilon(1e-10));
    const double scaled = wallis(31) * std::sqrt(31.0);
    CHECK(scaled >= 0.5);
    CHECK(scaled <= 3.0);
  }
  SUBCASE("recursion holds to 1e-14 relative") {
    for (int n = 2; n <= 200; ++n)
      CHECK(std::abs(n * wallis(n) - (n - 1) * wallis(n - 2)) < 1e-14 * n * wallis(n));
  }
}

TEST_CASE("highest harmonics") {
  SUBCASE("k = 0 is the constant harmonic") {
    const SpectralField h = highest_harmonic(0);
    CHECK(h.band_limit() == 0);
    CHECK(h.at(0, 0) == Complex(1.0));
  }
  SUBCASE("unit normalization for all k") {
    for (int k : {1, 5, 17, 64}) CHECK(highest_harmonic(k).l2_norm() == 1.0);
  }
  SUBCASE("raw norm against the separated quadrature oracle") {
    for (int k : {1, 3, 8}) {
      const double theta_part =
          simpson([k](double t) { return std::pow(std::sin(t), 2 * k + 1); }, 0.0, kPi);
      const double oracle = 2.0 * kPi * theta_part;
      const double nu2 = highest_harmonic_raw_norm(k) * highest_harmonic_raw_norm(k);
      CHECK(nu2 == doctest::Approx(oracle).epsilon(1e-10));
    }
  }
  SUBCASE("raw field matches sin^k(theta) e^{ik phi} pointwise") {
    const int k = 6;
    const auto grid = QuadratureGrid::make(8);
    const GridField g = synthesize(raw_highest_harmonic(k), grid);
    for (int i = 0; i < grid->n_theta(); ++i) {
      const double st = std::sqrt(1.0 - grid->nodes()[i] * grid->nodes()[i]);
      for (int j = 0; j < grid->n_phi(); ++j) {
        const Complex w = std::pow(st, k) * std::polar(1.0, k * grid->phis()[j]);
        CHECK(std::abs(w - g.values(i, j)) < 1e-13);
      }
    }
  }
}

TEST_CASE("eigenrelation commutes with band projection") {
  Rng rng(11);
  SpectralField u(9);
  for (Eigen::Index i = 0; i < u.size(); ++i) u.coeffs()[i] = rng.cnormal();
  const VectorXd sym = laplacian_symbol(9);
  for (int k : {0, 4, 9}) {
    SpectralField lap_then_proj = u;
    lap_then_proj.coeffs() = -u.coeffs().cwiseProduct(sym.cast<Complex>());
    lap_then_proj = project_band(lap_then_proj, k);
    SpectralField proj_then_lap = project_band(u, k);
    proj_then_lap.coeffs() *= -mu_squared(k);
    CHECK((lap_then_proj.coeffs() - proj_then_lap.coeffs()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("round trip at the working band limit") {
  const int K = 24;
  const auto grid = QuadratureGrid::make(K);
  Rng rng(99);
  SpectralField f(K);
  for (Eigen::Index i = 0; i < f.size(); ++i) f.coeffs()[i] = rng.cnormal();
  const SpectralField g = analyze(synthesize(f, grid), K);
  CHECK((g.coeffs() - f.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
}

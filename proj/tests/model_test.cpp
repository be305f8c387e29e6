#include <doctest.h>

#include <cmath>

#include "hopfcole/model_spec.hpp"
#include "hopfcole/rng.hpp"
#include "hopfcole/torus.hpp"
#include "test_support.hpp"

using namespace hopfcole;

namespace {
ScalingParams test_scaling(double K, int m) { return ScalingParams(K, m, 0.4, 0.5, 0.3, 20.0); }
}  // namespace

TEST_CASE("wrap_half maps into [-1/2, 1/2)") {
  CHECK(wrap_half(0.7) == doctest::Approx(-0.3).epsilon(1e-15));
  CHECK(wrap_half(0.0) == 0.0);
  CHECK(wrap_half(1.0) == 0.0);
  CHECK(wrap_half(0.5) == -0.5);
  RngStream rng(11);
  for (int i = 0; i < 2000; ++i) {
    double z = (rng.uniform01() - 0.5) * 40.0;
    double w = wrap_half(z);
    CHECK(w >= -0.5);
    CHECK(w < 0.5);
    double diff = z - w;
    CHECK(std::fabs(diff - std::round(diff)) < 1e-9);
  }
}

TEST_CASE("torus distance") {
  CHECK(torus_distance(torus_point(0.1), torus_point(0.9)) == doctest::Approx(0.2));
  CHECK(torus_distance(torus_point(0.37), torus_point(0.37)) == 0.0);
  CHECK(torus_distance(torus_point(0.0), torus_point(0.5)) == doctest::Approx(0.5));

  RngStream rng(12);
  for (int i = 0; i < 2000; ++i) {
    double x = rng.uniform01(), y = rng.uniform01(), z = rng.uniform01();
    double dxy = torus_distance(x, y);
    CHECK(dxy == doctest::Approx(torus_distance(y, x)).epsilon(1e-15));
    CHECK(dxy == doctest::Approx(std::fabs(wrap_half(x - y))).epsilon(1e-12));
    CHECK(dxy <= torus_distance(x, z) + torus_distance(z, y) + 1e-12);
    CHECK(dxy <= 0.5);
  }
}

TEST_CASE("mutation rate formula") {
  // log K = 10, delta = 0.01, Gaussian sigma = 1, p = 1:
  // rate(i, i) = 0.01 * 10 * G(0).
  ModelSpec spec(RateFunctions::constants(2.0, 1.0, 1.0), MutationKernel::gaussian(1.0),
                 ScalingParams(std::exp(10.0), 100, 0.4, 0.5, 0.3, 20.0));
  CHECK(spec.mutation_rate(3, 3) ==
        doctest::Approx(0.039894228040143268).epsilon(1e-12));

  SUBCASE("rate scales with p") {
    ModelSpec zero_p(RateFunctions::constants(2.0, 1.0, 0.0), MutationKernel::gaussian(1.0),
                     ScalingParams(std::exp(10.0), 100, 0.4, 0.5, 0.3, 20.0));
    CHECK(zero_p.mutation_rate(5, 9) == 0.0);
  }
  SUBCASE("index out of range") {
    CHECK_THROWS_AS(spec.mutation_rate(-1, 0), ConfigError);
    CHECK_THROWS_AS(spec.mutation_rate(0, 100), ConfigError);
  }
  SUBCASE("row sum equals p times the offset-weight sum, approaching p") {
    double sum = 0.0;
    for (int j = 0; j < spec.m(); ++j) sum += spec.mutation_rate(7, j);
    CHECK(sum == doctest::Approx(spec.p(7) * spec.weight_sum()).epsilon(1e-9));
    // Riemann mass tends to 1 as the mesh refines (window widens with log K).
    ModelSpec coarse(RateFunctions::constants(2.0, 1.0, 1.0), MutationKernel::gaussian(1.0),
                     test_scaling(std::exp(2.5), 5));
    CHECK(std::fabs(spec.weight_sum() - 1.0) < std::fabs(coarse.weight_sum() - 1.0));
    CHECK(std::fabs(spec.weight_sum() - 1.0) < 1e-3);
  }
  SUBCASE("rates agree with the precomputed offset table") {
    for (int i : {0, 17, 99})
      for (int j : {0, 3, 50, 99})
        CHECK(spec.mutation_rate(i, j) ==
              doctest::Approx(spec.p(i) * spec.offset_weight(spec.wrap_offset(j - i)))
                  .epsilon(1e-12));
  }
}

TEST_CASE("kernel mgf closed forms and quadrature route") {
  SUBCASE("normalization at q = 0 for every built-in kernel") {
    CHECK(MutationKernel::gaussian(0.5).mgf(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(MutationKernel::gaussian(1.0).mgf(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(MutationKernel::gaussian(2.0).mgf(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(MutationKernel::bump(0.25).mgf(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("gaussian examples") {
    auto k = MutationKernel::gaussian(1.0);
    CHECK(k.mgf(1.0) == doctest::Approx(1.6487212707001281).epsilon(1e-12));
    CHECK(k.mgf(-2.0) == doctest::Approx(7.3890560989306502).epsilon(1e-12));
    CHECK(k.mgf_by_quadrature(1.0) == doctest::Approx(1.6487212707001281).epsilon(1e-10));
    CHECK(k.mgf_by_quadrature(-2.0) == doctest::Approx(7.3890560989306502).epsilon(1e-10));
  }
  SUBCASE("gaussian closed form matches quadrature for |q| <= 10") {
    for (double sigma : {0.5, 1.0, 2.0}) {
      auto k = MutationKernel::gaussian(sigma);
      for (double q = -10.0; q <= 10.0; q += 1.25) {
        double analytic = std::exp(0.5 * sigma * sigma * q * q);
        CHECK(k.mgf(q) == doctest::Approx(analytic).epsilon(1e-12));
        CHECK(k.mgf_by_quadrature(q) == doctest::Approx(analytic).epsilon(1e-10));
      }
    }
  }
  SUBCASE("independent quadrature oracle") {
    auto k = MutationKernel::gaussian(1.0);
    for (double q : {-3.0, -0.7, 0.3, 2.0}) {
      double ref = oracle::integrate(
          [q](double h) { return oracle::normal_pdf(h) * std::exp(q * h); }, -40.0, 40.0);
      CHECK(k.mgf(q) == doctest::Approx(ref).epsilon(1e-10));
    }
  }
  SUBCASE("convexity in q") {
    auto k = MutationKernel::gaussian(1.3);
    RngStream rng(5);
    for (int i = 0; i < 200; ++i) {
      double q1 = (rng.uniform01() - 0.5) * 8.0;
      double q2 = (rng.uniform01() - 0.5) * 8.0;
      double lam = rng.uniform01();
      double lhs = k.mgf(lam * q1 + (1.0 - lam) * q2);
      double rhs = lam * k.mgf(q1) + (1.0 - lam) * k.mgf(q2);
      CHECK(lhs <= rhs + 1e-9 * std::max(1.0, rhs));
    }
  }
  SUBCASE("derivative matches central differences and the moment integral") {
    auto k = MutationKernel::bump(0.5);
    for (double q : {-2.0, 0.0, 1.5}) {
      double h = 1e-5;
      double fd = (k.mgf(q + h) - k.mgf(q - h)) / (2.0 * h);
      double deriv = k.mgf_prime(q);
      CHECK(deriv == doctest::Approx(fd).epsilon(1e-6));
      double moment = oracle::integrate(
          [&](double y) { return y * k.density(y) * std::exp(q * y); }, -0.5, 0.5);
      CHECK(deriv == doctest::Approx(moment).epsilon(1e-6));
    }
  }
  SUBCASE("overflow guard raises a numerical error") {
    CHECK_THROWS_AS(MutationKernel::gaussian(1.0).mgf(100.0), NumericalError);
  }
}

TEST_CASE("exponential moment constant gbar") {
  auto k = MutationKernel::gaussian(1.0);
  SUBCASE("alpha = 0 gives the unit mass") {
    CHECK(k.exp_moment(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("closed form 2 e^{1/2} Phi(1) at alpha = 1") {
    double closed = 2.0 * std::exp(0.5) * oracle::normal_cdf(1.0);
    CHECK(closed == doctest::Approx(2.7742859576700096).epsilon(1e-12));
    CHECK(k.exp_moment(1.0) == doctest::Approx(closed).epsilon(1e-10));
    double quad = oracle::integrate(
        [](double y) { return std::exp(std::fabs(y)) * oracle::normal_pdf(y); }, -40.0,
        40.0);
    CHECK(k.exp_moment(1.0) == doctest::Approx(quad).epsilon(1e-10));
  }
  SUBCASE("discrete sum within 2% of the continuum at h_K <= 0.05") {
    ScalingParams fine(std::exp(7.0), 140, 0.4, 0.5, 0.3, 20.0);  // h_K = 0.05
    double discrete = gbar_discrete(k, 1.0, fine);
    CHECK(std::fabs(discrete - k.exp_moment(1.0)) / k.exp_moment(1.0) < 0.02);
  }
  SUBCASE("ladder sup and continuum are reported together") {
    std::vector<ScalingParams> ladder = {test_scaling(std::exp(4.0), 20),
                                         test_scaling(std::exp(7.0), 140)};
    auto g = gbar(k, 1.0, ladder);
    CHECK(g.continuum == doctest::Approx(2.7742859576700096).epsilon(1e-10));
    CHECK(g.discrete_sup > 0.0);
    CHECK(g.discrete_sup <= g.continuum * 1.001);
  }
  SUBCASE("divergent configuration trips the overflow guard") {
    CHECK_THROWS_AS(k.exp_moment(80.0), NumericalError);
  }
}

TEST_CASE("rate function validation") {
  SUBCASE("supercriticality failure is reported") {
    auto r = RateFunctions::constants(1.0, 1.0, 0.5);  // b == d
    auto items = r.check_on_grid(16);
    bool found = false;
    for (const auto& it : items)
      if (it.name == "rates.supercritical") {
        found = true;
        CHECK_FALSE(it.passed);
      }
    CHECK(found);
    CHECK_THROWS_AS(enforce_checks(items, false), ConfigError);
  }
  SUBCASE("cosine preset carries exact bounds and Lipschitz constants") {
    auto r = RateFunctions::cosine(2.0, 0.5, 1.0, 0.0, 1.0, 0.25);
    auto items = r.check_on_grid(64);
    for (const auto& it : items) CHECK(it.passed);
    CHECK(r.b_max == doctest::Approx(2.5));
    CHECK(r.p_min == doctest::Approx(0.75));
  }
  SUBCASE("declared Lipschitz constants are validated against quotients") {
    auto r = RateFunctions::cosine(2.0, 0.5, 1.0, 0.0, 1.0, 0.0);
    r.lip_b = 0.01;  // deliberately too small
    auto items = r.check_on_grid(64);
    bool failed = false;
    for (const auto& it : items)
      if (it.name == "rates.lipschitz_declared" && !it.passed) failed = true;
    CHECK(failed);
  }
}

TEST_CASE("kernel assumption checks") {
  SUBCASE("built-ins pass") {
    for (const auto& k : {MutationKernel::gaussian(1.0), MutationKernel::bump(0.3)})
      for (const auto& item : k.check()) CHECK(item.passed);
  }
  SUBCASE("non-monotone declared tail fails") {
    // Two separated triangles: not monotone beyond the declared radius 0.1.
    auto k = MutationKernel::tabulated({-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0},
                                       {0.0, 0.8, 0.1, 0.9, 0.1, 0.8, 0.0}, 0.1);
    bool monotone_failed = false;
    for (const auto& item : k.check())
      if (item.name == "kernel.monotone_tails" && !item.passed) monotone_failed = true;
    CHECK(monotone_failed);
  }
}

TEST_CASE("scaling parameter checks") {
  CHECK_THROWS_AS(ScalingParams(0.5, 8, 0.4, 0.5, 0.3, 20.0), ConfigError);
  CHECK_THROWS_AS(ScalingParams(100.0, 8, 0.6, 0.5, 0.3, 20.0), ConfigError);

  // delta = 1/(2 log K) with log K = 10 passes the upper bound delta < 1/log K.
  ScalingParams s(std::exp(10.0), 20, 0.4, 0.5, 0.3, 20.0);
  CHECK(s.delta() == doctest::Approx(0.05));
  bool upper_ok = false;
  for (const auto& item : s.check())
    if (item.name == "scaling.delta_upper") upper_ok = item.passed;
  CHECK(upper_ok);
  CHECK(s.h_K() == doctest::Approx(0.5));
}

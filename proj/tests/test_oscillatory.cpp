#include <cmath>

#include <doctest.h>

#include "hypwave/errors.hpp"
#include "hypwave/oscillatory.hpp"
#include "hypwave/quad.hpp"

using namespace hypwave;

namespace {

constexpr double kPi = 3.14159265358979323846;

double chi_inf(double la) { return smooth_step(la - 1.0); }

SymbolSpec exp_symbol() {
  SymbolSpec a;
  a.evaluate = [](double la) { return cplx(std::exp(-la), 0.0); };
  a.derivative = [](double la) { return cplx(-std::exp(-la), 0.0); };
  a.order = 0.0;
  a.support = SymbolSupport::kInhomogeneousHalfline;
  a.derivative_order_available = 8;
  return a;
}

SymbolSpec chi_power_symbol(double p) {
  SymbolSpec a;
  a.evaluate = [p](double la) {
    return la <= 1.0 ? cplx(0.0, 0.0) : cplx(chi_inf(la) * std::pow(la, p), 0.0);
  };
  a.order = p;
  a.support = SymbolSupport::kInhomogeneousHalfline;
  return a;
}

}  // namespace

TEST_CASE("exponential symbol has the closed-form transform 1/(1-ix)") {
  const SymbolSpec a = exp_symbol();
  for (double x : {0.0, 0.3, -0.7, 2.0, 7.0, -15.0}) {
    const cplx want = cplx(1.0, 0.0) / cplx(1.0, -x);
    const cplx got = oscillatory_fourier(a, x, 1e-10);
    CHECK(std::abs(got - want) < 1e-8);
  }
}

TEST_CASE("engine matches brute-force quadrature on a compact symbol") {
  SymbolSpec a;
  a.evaluate = [](double la) {
    return cplx(std::sqrt(la) * smooth_step(2.0 - la), 0.0);
  };
  a.order = 0.5;
  a.support = SymbolSupport::kCompactHomogeneous;
  a.support_radius = 2.0;
  for (double x : {0.7, 3.3, 12.0, -5.0}) {
    const cplx got = oscillatory_fourier(a, x, 1e-9);
    const cplx want = adaptive_gk(
        [&](double la) {
          return a.evaluate(la) * std::exp(cplx(0.0, la * x));
        },
        0.0, 2.0, 1e-11);
    CHECK(std::abs(got - want) < 1e-8);
  }
}

TEST_CASE("engine matches brute-force quadrature on a half-line symbol") {
  const SymbolSpec a = chi_power_symbol(-2.0);
  const double x = 2.0;
  const cplx got = oscillatory_fourier(a, x, 1e-9);
  // truncation at 3000 leaves a tail below 2 * 3000^-2 / x
  const cplx want = adaptive_gk(
      [&](double la) { return a.evaluate(la) * std::exp(cplx(0.0, la * x)); },
      1.0, 3000.0, 1e-10, 1e-12, 20000);
  CHECK(std::abs(got - want) < 1e-6);
}

TEST_CASE("inhomogeneous order -2: bounded at the origin, rapid far decay") {
  const SymbolSpec a = chi_power_symbol(-2.0);
  double sup_small = 0.0;
  for (double x : {0.5, 0.25, 0.1, 0.05, 0.01, 1e-3, -0.4, -0.02}) {
    sup_small = std::max(sup_small, std::abs(oscillatory_fourier(a, x, 1e-9)));
  }
  CHECK(sup_small < 5.0);

  std::vector<double> xs, ks;
  for (double x = 5.0; x <= 50.0; x *= 1.5) {
    xs.push_back(x);
    ks.push_back(std::abs(oscillatory_fourier(a, x, 1e-11)) + 1e-280);
  }
  const SlopeFit fit = fit_loglog(xs, ks);
  CHECK(fit.slope <= -3.0);
}

TEST_CASE("compact homogeneous symbol of order 1/2 decays like x^{-3/2}") {
  SymbolSpec a;
  a.evaluate = [](double la) {
    return cplx(std::sqrt(la) * smooth_step(2.0 - la), 0.0);
  };
  a.order = 0.5;
  a.support = SymbolSupport::kCompactHomogeneous;
  a.support_radius = 2.0;
  std::vector<double> xs, ks;
  for (double x = 10.0; x <= 100.0; x *= 1.25) {
    xs.push_back(x);
    ks.push_back(std::abs(oscillatory_fourier(a, x, 1e-11)));
  }
  const SlopeFit fit = fit_loglog(xs, ks);
  CHECK(fit.slope == doctest::Approx(-1.5).epsilon(0.1));
}

TEST_CASE("full-line symbol: Gaussian maps to a scaled Gaussian") {
  SymbolSpec a;
  a.evaluate = [](double la) { return cplx(std::exp(-la * la), 0.0); };
  a.derivative = [](double la) {
    return cplx(-2.0 * la * std::exp(-la * la), 0.0);
  };
  a.order = 0.0;
  a.support = SymbolSupport::kInhomogeneousFullline;
  for (double x : {0.0, 1.0, 3.0, -2.0}) {
    const cplx want(std::sqrt(kPi) * std::exp(-0.25 * x * x), 0.0);
    const cplx got = oscillatory_fourier(a, x, 1e-10);
    CHECK(std::abs(got - want) < 1e-8);
  }
}

TEST_CASE("Lemma A.3 head: order -1-i with remainder -2 is bounded near 0") {
  const double zeta = 1.0;
  SymbolSpec a;
  a.evaluate = [zeta](double la) {
    if (la <= 1.0) return cplx(0.0, 0.0);
    const cplx head = zeta * chi_inf(la) *
                      std::exp(cplx(-1.0, -zeta) * std::log(la));
    const cplx b = chi_inf(la) * std::pow(la, -2.0);
    return head + b;
  };
  a.order = -1.0;
  a.support = SymbolSupport::kInhomogeneousHalfline;
  a.head = SymbolHead{cplx(zeta, 0.0), cplx(-1.0, -zeta), 1.0};

  double sup = 0.0;
  for (double ax : {0.5, 0.2, 0.05, 0.01, 1e-3, 1e-4}) {
    for (double s : {1.0, -1.0}) {
      sup = std::max(sup, std::abs(oscillatory_fourier(a, s * ax, 1e-8)));
    }
  }
  // bound shape: C (1 + zeta^2 + sup (1+la)^2 |b|), with sup|b|-term ~ 2.6
  CHECK(sup < 10.0 * (1.0 + zeta * zeta + 2.6));
  CHECK(sup > 0.0);

  const DecayReport rep = symbol_decay_check(
      a, {1.0, 2.0, 4.0, 8.0, 16.0}, 1e-8);
  CHECK(rep.origin_checked);
  CHECK(rep.origin_sup < 10.0 * (1.0 + zeta * zeta + 2.6));
}

TEST_CASE("declared head matches a rotated-contour evaluation of its tail") {
  // f = chi(la)(la^2+4)^{-1/2} with head la^{-1}: the head handling must
  // reproduce the exact integral, not just a bound
  auto g = [](cplx la) { return std::exp(-0.5 * std::log(la * la + 4.0)); };
  SymbolSpec a;
  a.order = -1.0;
  a.head = SymbolHead{cplx(1.0, 0.0), cplx(-1.0, 0.0), 6.0};
  a.evaluate = [g](double la) -> cplx {
    if (la <= 1.0) return cplx(0.0, 0.0);
    return chi_inf(la) * g(cplx(la, 0.0));
  };
  for (double x : {2.5, 1.5, -0.8}) {
    const cplx got = oscillatory_fourier(a, x, 1e-11);
    // oracle: [1,2] by plain quadrature, then rotate the contour at 2 into the
    // decaying half-plane (branch points of g sit at +-2i, never crossed)
    const double sgn = x > 0.0 ? 1.0 : -1.0;
    const cplx p1 = adaptive_gk(
        [&](double la) {
          return chi_inf(la) * g(cplx(la, 0.0)) * std::exp(cplx(0.0, x * la));
        },
        1.0, 2.0, 1e-13, 1e-13, 20000);
    const cplx p2 = cplx(0.0, sgn) / std::abs(x) *
                    std::exp(cplx(0.0, 2.0 * x)) *
                    adaptive_gk(
                        [&](double u) {
                          return g(cplx(2.0, sgn * u / std::abs(x))) *
                                 std::exp(-u);
                        },
                        0.0, 60.0, 1e-13, 1e-13, 20000);
    CHECK(std::abs(got - (p1 + p2)) < 1e-10);
  }
}

TEST_CASE("order -1 symbol grows like log(1/x) at the origin") {
  SymbolSpec a;
  a.evaluate = [](double la) {
    return la <= 1.0 ? cplx(0.0, 0.0) : cplx(chi_inf(la) / la, 0.0);
  };
  a.order = -1.0;
  a.support = SymbolSupport::kInhomogeneousHalfline;
  a.head = SymbolHead{cplx(1.0, 0.0), cplx(-1.0, 0.0), 1.0};

  const double k2 = std::abs(oscillatory_fourier(a, 1e-2, 1e-8));
  const double k4 = std::abs(oscillatory_fourier(a, 1e-4, 1e-8));
  // log(1/x) doubles between x = 1e-2 and 1e-4
  CHECK(k4 / k2 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("zero symbol, zero transform; divergent configurations refused") {
  SymbolSpec z;
  z.evaluate = [](double) { return cplx(0.0, 0.0); };
  z.order = -2.0;
  z.support = SymbolSupport::kInhomogeneousHalfline;
  CHECK(std::abs(oscillatory_fourier(z, 1.3, 1e-10)) == 0.0);

  const DecayReport zrep = symbol_decay_check(z, {1.0, 5.0, 12.0}, 1e-9);
  CHECK(zrep.max_abs == 0.0);

  // order -1 with no oscillation to help: divergent at x = 0
  SymbolSpec d;
  d.evaluate = [](double la) {
    return la <= 1.0 ? cplx(0.0, 0.0) : cplx(chi_inf(la) / la, 0.0);
  };
  d.order = -1.0;
  d.support = SymbolSupport::kInhomogeneousHalfline;
  d.head = SymbolHead{cplx(1.0, 0.0), cplx(-1.0, 0.0), 1.0};
  CHECK_THROWS_AS((void)oscillatory_fourier(d, 0.0, 1e-8), DomainError);
}

TEST_CASE("decay check input validation") {
  const SymbolSpec a = exp_symbol();
  CHECK_THROWS_AS((void)symbol_decay_check(a, {1.0, 2.0}, 1e-9), DomainError);
  CHECK_THROWS_AS((void)symbol_decay_check(a, {0.0, 10.0}, 1e-9), DomainError);
  const DecayReport rep = symbol_decay_check(a, {0.5, 1.0, 2.0, 5.0, 10.0}, 1e-9);
  // |1/(1-ix)| ~ 1/x for large x
  CHECK(rep.fit.slope < -0.5);
  CHECK(rep.max_abs <= 1.0 + 1e-9);
}

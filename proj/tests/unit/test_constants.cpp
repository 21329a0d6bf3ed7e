#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chemotaxis/constants.hpp"
#include "chemotaxis/errors.hpp"
#include "helpers.hpp"

using namespace chemotaxis;

TEST_SUITE("constants") {
  TEST_CASE("psi and theta landmark values") {
    CHECK(psi(0.0) == 0.0);
    CHECK(theta(0.0) == 1.0);
    CHECK(testing::ulp_distance(psi(1.0), 0.25) <= 4.0);
    CHECK(testing::ulp_distance(theta(1.0), 0.25) <= 4.0);
    CHECK(std::abs(psi(1e6) - std::exp(-1.0)) < 1e-5);
    CHECK(theta(1e6) < 1e-5);
    CHECK(std::abs(theta(1e-6) - 0.99998518) < 1e-8);
    CHECK(theta(1e-12) > 1.0 - 1e-10);
    CHECK_THROWS_AS(psi(-0.1), DomainError);
    CHECK_THROWS_AS(theta(-1.0), DomainError);
  }

  TEST_CASE("psi increases, theta decreases, psi = beta * theta") {
    double prev_psi = psi(0.0), prev_theta = theta(0.0);
    for (int k = 1; k <= 2000; ++k) {
      const double b = 0.01 * k;
      CHECK(psi(b) > prev_psi);
      CHECK(theta(b) < prev_theta);
      CHECK(psi(b) < std::exp(-1.0));
      CHECK(testing::ulp_distance(psi(b), b * theta(b)) <= 4.0);
      prev_psi = psi(b);
      prev_theta = theta(b);
    }
  }

  TEST_CASE("m_star closed form") {
    const auto c1 = EllipticConstantModel::user(1.0);
    CHECK(m_star(1, 2.0, 1.0, 1.0, c1) == doctest::Approx(164.0).epsilon(1e-14));
    CHECK(m_star(1, 2.0, 1.0, 2.0, c1) == doctest::Approx(656.0).epsilon(1e-14));
    CHECK(m_star(1, 3.0, 1.0, 1.0, c1) == doctest::Approx(1537.1851851851852).epsilon(1e-14));
    CHECK_THROWS_AS(m_star(1, 1.0, 1.0, 1.0, c1), DomainError);
    // strictly increasing in C and in nu
    CHECK(m_star(1, 2.0, 1.0, 1.0, EllipticConstantModel::user(1.01)) > 164.0);
    CHECK(m_star(1, 2.0, 1.0, 1.01, c1) > 164.0);
  }

  TEST_CASE("m_star with an empirical constant matches the closed formula") {
    const auto emp = EllipticConstantModel::empirical(200, 7);
    const double c = emp.value(2, 2.0);
    const double expected = (64.0 / 2.0) * c * (4.0 + 1.0) + 16.0 / 4.0;
    CHECK(m_star(2, 2.0, 1.0, 1.0, emp) == doctest::Approx(expected).epsilon(1e-14));
    // for p = 2, ∫|D²v|² = ∫|Δv|² under Neumann conditions, so every ratio stays below 1
    CHECK(c > 0.5);
    CHECK(c < 1.0 + 1e-6);
  }

  TEST_CASE("K constant") {
    const auto c1 = EllipticConstantModel::user(1.0);
    const ExtendedReal k = k_constant(1, 2.0, 1.0, 1.0, 1.0, c1);
    REQUIRE(k.is_finite());
    CHECK(std::abs(k.value() - 11.540963391225267) / 11.540963391225267 < 1e-6);
    CHECK(std::abs(k.value() - std::cbrt(1537.1851851851852)) < 1e-9);
    const ExtendedReal k3 = k_constant(3, 1.0, 1.0, 1.0, 1.0, c1);
    CHECK(k3.value() == doctest::Approx(11.857630157305746).epsilon(1e-12));
    CHECK(k.value() > 0.0);

    const auto seq = k_sequence(1, 2.0, 1.0, 1.0, 1.0, c1);
    REQUIRE(seq.size() == 20);
    CHECK(std::abs(seq.back() - k.value()) < 1e-5);
    const auto seq2 = k_sequence(1, 2.0, 1.0, 1.0, 2.0, c1);
    for (std::size_t j = 0; j < seq.size(); ++j) CHECK(seq2[j] == doctest::Approx(2.0 * seq[j]).epsilon(1e-13));

    // (q*+α)/γ ≤ 1 leaves M* undefined at the limit
    CHECK(k_constant(1, 0.5, 2.0, 1.0, 1.0, c1).is_infinite());
    CHECK_THROWS_AS(k_constant(1, 1.0, 1.0, 0.0, 1.0, c1), DomainError);
  }

  TEST_CASE("chi thresholds") {
    const auto c1 = EllipticConstantModel::user(1.0);
    ModelParams p;
    p.beta = 1.0;
    p.dim = 2;
    p.a = p.b = 1.0;
    auto t = chi_thresholds(p, c1);
    CHECK(t.chiw == doctest::Approx(1.0));
    REQUIRE(t.chi1);
    REQUIRE(t.chi2);
    CHECK(t.chi1->is_infinite());
    CHECK(t.chi2->is_infinite());

    p.beta = 1.5;
    p.dim = 3;
    t = chi_thresholds(p, c1);
    const double theta2 = 4.0 / 27.0;
    CHECK(theta(2.0) == doctest::Approx(theta2).epsilon(1e-15));
    CHECK(t.chi2->value() == doctest::Approx(2.1340172697895148).epsilon(1e-12));
    CHECK(t.chi1->value() == doctest::Approx(0.69661215036560853).epsilon(1e-12));

    // chiw grows with beta and scales like 1/N once γN > 2
    p.beta = 2.0;
    const double w3 = chi_thresholds(p, c1).chiw;
    p.dim = 2;
    p.gamma = 2.0;
    p.alpha = 2.0;
    const double w2g2 = chi_thresholds(p, c1).chiw;
    CHECK(w3 == doctest::Approx(2.0));
    CHECK(w2g2 == doctest::Approx(1.5));

    ModelParams off;
    off.m = 0.5;
    const auto t_off = chi_thresholds(off, c1);
    CHECK_FALSE(t_off.chi1);
    CHECK_FALSE(t_off.notes.empty());
  }

  TEST_CASE("elliptic constant estimator") {
    CHECK(estimate_c_star(1, 2.0, 50, 3) <= 1.0 + 1e-6);
    CHECK(estimate_c_star(1, 3.0, 50, 3) <= 1.0 + 1e-6);

    CosineTrialField single{1, {{1, 0, 0}}, {1.0}};
    const double pi4 = std::pow(std::numbers::pi, 4);
    CHECK(regularity_ratio(single, 2.0) == doctest::Approx(pi4 / (pi4 + 1.0)).epsilon(1e-5));

    const double a = estimate_c_star(2, 2.0, 200, 11);
    const double b = estimate_c_star(2, 2.0, 200, 11);
    CHECK(a == b);
    CHECK(a > 0.0);
    CHECK_THROWS(estimate_c_star(1, 2.0, 0, 1));

    CHECK_FALSE(EllipticConstantModel::default_for(1).is_empirical());
    CHECK(EllipticConstantModel::default_for(1).value(1, 2.0) == 1.0);
    CHECK(EllipticConstantModel::default_for(2).is_empirical());
  }

  TEST_CASE("exact decimals") {
    CHECK(parse_decimal("0.1") == Rational(1, 10));
    CHECK(parse_decimal("-2.5e-1") == Rational(-1, 4));
    CHECK(parse_decimal("3E2") == Rational(300));
    CHECK_THROWS(parse_decimal("1.2.3"));
    CHECK_THROWS(parse_decimal("abc"));
    CHECK_THROWS(parse_decimal(""));
    CHECK(format_decimal(Rational(1, 8)) == "0.125");
    CHECK(format_decimal(Rational(-3, 2)) == "-1.5");
    CHECK(format_decimal(Rational(7)) == "7");
  }

  TEST_CASE("extended reals") {
    const auto inf = ExtendedReal::infinity();
    CHECK(inf.is_infinite());
    CHECK(inf.above(1e300));
    CHECK_FALSE(ExtendedReal(1.0).above(1.0));
    CHECK(ExtendedReal(1.0) < inf);
    CHECK(inf.to_string() == "inf");
    CHECK_THROWS(inf.value());
  }
}

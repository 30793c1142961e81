#include "chebmotion/chebyshev.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace chebmotion;

TEST_SUITE("cheb-core") {

TEST_CASE("series evaluation at pinned points") {
    const ChebyshevSeries t3{{0.0, 0.0, 0.0, 1.0}};
    CHECK(t3.eval(0.5) == doctest::Approx(-1.0).epsilon(1e-14)); // cos(3 acos 1/2) = cos pi
    const ChebyshevSeries one{{1.0}};
    CHECK(one.eval(-0.7) == 1.0);
    CHECK(one.eval(0.95) == 1.0);
    // minimal quintic is odd
    const ChebyshevSeries quintic{{0.0, 1.171875, 0.0, -0.1953125, 0.0, 0.0234375}};
    CHECK(quintic.eval(0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)quintic.eval(1.0000001), std::domain_error);
    CHECK_THROWS_AS((void)quintic.eval(-1.1), std::domain_error);
}

TEST_CASE("Clenshaw agrees with the explicit recurrence") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const ChebyshevSeries s{testutil::random_coeffs(rng, trial % 21)};
        for (int i = 0; i < 20; ++i) {
            const double x = ux(rng);
            const double direct = static_cast<double>(testutil::eval_direct(s.coeffs(), x));
            CHECK(std::abs(s.eval(x) - direct) < 1e-12);
        }
    }

    SUBCASE("still stable at degree 50") {
        const ChebyshevSeries s{testutil::random_coeffs(rng, 50)};
        for (int i = 0; i < 100; ++i) {
            const double x = ux(rng);
            const double direct = static_cast<double>(testutil::eval_direct(s.coeffs(), x));
            CHECK(std::abs(s.eval(x) - direct) < 1e-12);
        }
    }
}

TEST_CASE("trigonometric identity eval(cos t) = sum p_k cos(k t)") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ut(0.0, 2.0 * std::numbers::pi);
    const std::vector<double> coeffs = testutil::random_coeffs(rng, 12);
    const ChebyshevSeries s{coeffs};
    for (int i = 0; i < 200; ++i) {
        const double t = ut(rng);
        double expected = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            expected += coeffs[k] * std::cos(static_cast<double>(k) * t);
        CHECK(std::abs(s.eval(std::cos(t)) - expected) < 1e-10);
    }
}

TEST_CASE("derivative series") {
    const ChebyshevSeries t1{{0.0, 1.0}};
    const auto d1 = t1.derivative();
    REQUIRE(d1.degree() == 0);
    CHECK(d1.coeffs()[0] == doctest::Approx(1.0));

    const ChebyshevSeries t2{{0.0, 0.0, 1.0}};
    const auto d2 = t2.derivative();
    REQUIRE(d2.degree() == 1);
    CHECK(d2.coeffs()[0] == doctest::Approx(0.0));
    CHECK(d2.coeffs()[1] == doctest::Approx(4.0));

    const ChebyshevSeries c{{3.0}};
    CHECK(c.derivative().degree() == -1);
    CHECK(c.derivative().eval(0.4) == 0.0);

    // against finite differences of the evaluation
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ux(-0.8, 0.8);
    for (int trial = 0; trial < 20; ++trial) {
        const ChebyshevSeries s{testutil::random_coeffs(rng, 3 + trial % 12)};
        const auto ds = s.derivative();
        for (int i = 0; i < 10; ++i) {
            const double x = ux(rng);
            const double fd = static_cast<double>(testutil::fd_derivative(s.coeffs(), x, 1));
            CHECK(std::abs(ds.eval(x) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("endpoint derivatives in closed form") {
    CHECK(endpoint_derivative(7, 0, 1) == doctest::Approx(1.0));
    CHECK(endpoint_derivative(3, 1, 1) == doctest::Approx(9.0));
    CHECK(endpoint_derivative(4, 2, -1) == doctest::Approx(80.0));
    CHECK_THROWS_AS((void)endpoint_derivative(3, 4, 1), std::invalid_argument);

    SUBCASE("sign rule") {
        for (int i = 0; i <= 12; ++i)
            for (int k = 0; k <= 3; ++k) {
                const double sign = ((i + k) % 2 == 0) ? 1.0 : -1.0;
                CHECK(endpoint_derivative(i, k, -1) ==
                      doctest::Approx(sign * endpoint_derivative(i, k, 1)));
            }
    }

    SUBCASE("matches finite differences of the recurrence") {
        for (int i = 0; i <= 15; ++i) {
            std::vector<double> unit(static_cast<std::size_t>(i) + 1, 0.0);
            unit.back() = 1.0;
            for (int k = 0; k <= 3; ++k) {
                for (int end : {-1, 1}) {
                    const double closed = endpoint_derivative(i, k, end);
                    const double fd = static_cast<double>(
                        testutil::fd_derivative(unit, static_cast<long double>(end), k));
                    if (std::abs(closed) > 1e-12)
                        CHECK(std::abs(fd - closed) / std::abs(closed) < 1e-6);
                    else
                        CHECK(std::abs(fd) < 1e-5);
                }
            }
        }
    }
}

TEST_CASE("monomial conversion") {
    const ChebyshevSeries cube = from_monomial(std::vector<double>{0.0, 0.0, 0.0, 1.0});
    REQUIRE(cube.degree() == 3);
    CHECK(cube.coeffs()[0] == doctest::Approx(0.0));
    CHECK(cube.coeffs()[1] == doctest::Approx(0.75));
    CHECK(cube.coeffs()[2] == doctest::Approx(0.0));
    CHECK(cube.coeffs()[3] == doctest::Approx(0.25));
    for (int i = 0; i <= 10; ++i) {
        const double x = -1.0 + 0.2 * i;
        CHECK(cube.eval(x) == doctest::Approx(x * x * x).epsilon(1e-12));
    }

    const ChebyshevSeries c5 = from_monomial(std::vector<double>{5.0});
    CHECK(c5.coeffs()[0] == doctest::Approx(5.0));
    const ChebyshevSeries ident = from_monomial(std::vector<double>{0.0, 1.0});
    CHECK(ident.coeffs()[0] == doctest::Approx(0.0));
    CHECK(ident.coeffs()[1] == doctest::Approx(1.0));

    SUBCASE("random polynomials evaluate identically") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<double> mono(static_cast<std::size_t>(1 + trial % 10));
            for (double& v : mono) v = u(rng);
            const ChebyshevSeries s = from_monomial(mono);
            for (int i = 0; i < 15; ++i) {
                const double x = -1.0 + 2.0 * i / 14.0;
                double horner = 0.0;
                for (std::size_t j = mono.size(); j-- > 0;) horner = horner * x + mono[j];
                CHECK(s.eval(x) == doctest::Approx(horner).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("coefficient bounds") {
    const auto b0 = coefficient_bounds(0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0] == 1.0);

    const auto b2 = coefficient_bounds(2);
    REQUIRE(b2.size() == 3);
    CHECK(b2[0] == 1.0);
    CHECK(b2[1] == doctest::Approx(1.27324).epsilon(1e-5));
    CHECK(b2[2] == doctest::Approx(4.0 / std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("projection recovers exact series and respects the bounds") {
    const ChebyshevSeries t2 = project_profile([](double x) { return 2.0 * x * x - 1.0; }, 5);
    for (int i = 0; i <= 5; ++i)
        CHECK(std::abs(t2.coeffs()[static_cast<std::size_t>(i)] - (i == 2 ? 1.0 : 0.0)) < 1e-10);

    const ChebyshevSeries ones = project_profile([](double) { return 1.0; }, 4);
    for (int i = 0; i <= 4; ++i)
        CHECK(std::abs(ones.coeffs()[static_cast<std::size_t>(i)] - (i == 0 ? 1.0 : 0.0)) < 1e-10);

    SUBCASE("quintic projection equals the basis change") {
        const std::vector<double> mono{0.0, 15.0 / 8.0, 0.0, -10.0 / 8.0, 0.0, 3.0 / 8.0};
        const ChebyshevSeries direct = from_monomial(mono);
        const ChebyshevSeries projected = project_profile(
            [&](double x) { return ((3.0 / 8.0 * x * x - 10.0 / 8.0) * x * x + 15.0 / 8.0) * x; },
            5);
        for (int i = 0; i <= 5; ++i)
            CHECK(std::abs(projected.coeffs()[static_cast<std::size_t>(i)] -
                           direct.coeffs()[static_cast<std::size_t>(i)]) < 1e-10);
    }

    SUBCASE("projection of construct is the identity") {
        std::mt19937_64 rng(29);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 2 + trial % 9;
            const std::vector<double> coeffs = testutil::random_coeffs(rng, n);
            const ChebyshevSeries s{coeffs};
            const ChebyshevSeries p =
                project_profile([&](double x) { return s.eval(x); }, n);
            for (int i = 0; i <= n; ++i)
                CHECK(std::abs(p.coeffs()[static_cast<std::size_t>(i)] -
                               coeffs[static_cast<std::size_t>(i)]) < 1e-10);
        }
    }

    SUBCASE("bounded functions stay inside the coefficient bounds") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::uniform_real_distribution<double> gain(0.2, 3.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> mono(4);
            for (double& v : mono) v = u(rng);
            const double g = gain(rng);
            const bool use_sin = trial % 2 == 0;
            const auto f = [&](double x) {
                double poly = 0.0;
                for (std::size_t j = mono.size(); j-- > 0;) poly = poly * x + mono[j];
                return use_sin ? std::sin(g * poly) : std::tanh(g * poly);
            };
            const int n = 2 + trial % 12;
            const ChebyshevSeries p = project_profile(f, n);
            const auto bounds = coefficient_bounds(n);
            for (int i = 0; i <= n; ++i)
                CHECK(std::abs(p.coeffs()[static_cast<std::size_t>(i)]) <=
                      bounds[static_cast<std::size_t>(i)] + 1e-10);
        }
    }
}

} // TEST_SUITE

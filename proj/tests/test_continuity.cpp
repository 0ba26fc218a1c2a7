#include "langevin/continuity.hpp"
#include "langevin/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace langevin;

TEST_CASE("Hoelder modulus switches to linear beyond one") {
    auto w = ModulusSpec::hoelder(2.0, 0.5);
    CHECK(w.eval(0.25) == doctest::Approx(1.0));
    CHECK(w.eval(1.0) == doctest::Approx(2.0));
    CHECK(w.eval(4.0) == doctest::Approx(8.0));
    CHECK_THROWS(w.eval(0.0));
}

TEST_CASE("Lipschitz modulus") {
    auto w = ModulusSpec::lipschitz(3.0);
    CHECK(w.eval(0.5) == doctest::Approx(1.5));
}

TEST_CASE("table modulus interpolates and extrapolates") {
    auto w = ModulusSpec::table({{1.0, 3.0}, {0.0, 1.0}});
    CHECK(w.eval(0.5) == doctest::Approx(2.0));
    CHECK(w.eval(2.0) == doctest::Approx(5.0));
    auto c = ModulusSpec::table({{0.5, 2.0}});
    CHECK(c.eval(0.1) == doctest::Approx(2.0));
    CHECK(c.eval(3.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(ModulusSpec::table({{0.5, 1.0}, {0.5, 2.0}}), InputError);
    // decreasing values are lifted to a monotone envelope
    auto m = ModulusSpec::table({{0.0, 2.0}, {1.0, 1.0}, {2.0, 3.0}});
    CHECK(m.eval(1.0) >= m.eval(0.5));
}

TEST_CASE("M-norm and derived bounds") {
    MNorm n{0.5, 2.0};
    CHECK(n.value() == doctest::Approx(2.5));
    CHECK(linear_growth_bound(n, 3.0) == doctest::Approx(0.5 + 2.0 + 6.0));
    CHECK(convolved_grad_lipschitz(ModulusSpec::lipschitz(1.0), 3, 0.5) == doctest::Approx(7.0));
    CHECK(convolved_grad_lipschitz(ModulusSpec::hoelder(1.0, 0.5), 1, 0.25) == doctest::Approx(5 * 0.5 / 0.25));
    CHECK_THROWS(convolved_grad_lipschitz(ModulusSpec::lipschitz(1.0), 1, 1.5));
    CHECK(sup_deviation_bound(ModulusSpec::hoelder(1.0, 0.5), 0.04) == doctest::Approx(0.2));
    CHECK(quadratic_growth_bound(n, 2.0, 1.0, false) == doctest::Approx(1.0 * 4 + (0.5 + 3.0) * 2 + 1.0));
    CHECK(quadratic_growth_bound(n, 2.0, 1.0, true) == doctest::Approx(1.0 * 4 + (0.5 + 5.0) * 2 + 1.0));
}

TEST_CASE("local Lipschitz bound dominates a concrete function") {
    // Phi(x) = |x|^{3/2} in one dimension: grad is 3/2 sign(x)|x|^{1/2}, omega(r) <= 3/2 * sqrt(2) r^{1/2} v r
    auto w = ModulusSpec::hoelder(1.5 * std::sqrt(2.0), 0.5);
    MNorm n{0.0, w.eval(1.0)};
    for (double x : {-2.0, -0.3, 0.1, 1.7})
        for (double y : {-1.1, 0.0, 0.4, 3.0}) {
            double lhs = std::abs(std::pow(std::abs(x), 1.5) - std::pow(std::abs(y), 1.5));
            CHECK(lhs <= local_lipschitz_bound(n, std::abs(x), std::abs(y), std::abs(x - y)) + 1e-12);
        }
}

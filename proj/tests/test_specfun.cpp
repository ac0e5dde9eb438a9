#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zetaflow/specfun.hpp"

using namespace zetaflow;
namespace sf = zetaflow::specfun;
using Catch::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
const Tolerance kTight{1e-15, 400};
}  // namespace

TEST_CASE("eta known values", "[specfun]") {
    const auto e1 = sf::eta({1.0, 0.0});
    CHECK(std::abs(e1.value.real() - std::numbers::ln2) < 1e-14);
    CHECK(std::abs(e1.value.imag()) < 1e-15);
    CHECK(std::abs(e1.value.real() - std::numbers::ln2) <= e1.abs_err);

    // independent Euler-transform oracle for eta(2) = pi^2/12
    const double eta2 = oracle::eta2_euler_transform();
    CHECK(std::abs(eta2 - kPi * kPi / 12.0) < 1e-11);
    const auto e2 = sf::eta({2.0, 0.0});
    CHECK(std::abs(e2.value.real() - eta2) < 1e-11);
    CHECK(std::abs(e2.value.real() - kPi * kPi / 12.0) < 1e-14);
}

TEST_CASE("eta reflection symmetry", "[specfun]") {
    const Complex z(0.7, 5.0);
    const Complex a = sf::eta(z).value;
    const Complex b = sf::eta(std::conj(z)).value;
    CHECK(std::abs(std::conj(a) - b) < 1e-13);
}

TEST_CASE("eta domain and budget errors", "[specfun]") {
    CHECK_THROWS_AS(sf::eta({0.0, 3.0}), DomainError);
    CHECK_THROWS_AS(sf::eta({-1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(sf::eta({0.5, 50.0}, {1e-13, 5}), ConvergenceError);
    CHECK_THROWS_AS(sf::eta({2.0, 0.0}, {1e-16, 400}), DomainError);  // below the tol floor
}

TEST_CASE("zeta oracle values", "[specfun]") {
    const auto z2 = sf::zeta({2.0, 0.0});
    CHECK(std::abs(z2.value.real() - kPi * kPi / 6.0) < 1e-12);
    CHECK(std::abs(z2.value.real() - oracle::zeta_real(2.0)) < 1e-12);

    // the frozen literal is itself checked against the Euler-Maclaurin oracle
    const double zeta3_oracle = oracle::zeta_real(3.0);
    CHECK(std::abs(zeta3_oracle - 1.2020569031595943) < 1e-13);
    const auto z3 = sf::zeta({3.0, 0.0});
    CHECK(std::abs(z3.value.real() - 1.2020569031595943) < 1e-12);
}

TEST_CASE("zeta vanishes at the first critical zero", "[specfun]") {
    // located independently by bracketing the rotated real function
    const auto zeros = oracle::bracket_critical_zeros(14.0, 14.3);
    REQUIRE(zeros.size() == 1);
    CHECK(std::abs(zeros[0] - 14.134725141734693) < 1e-9);
    const auto v = sf::zeta(Complex(0.5, zeros[0]), kTight);
    CHECK(std::abs(v.value) < 1e-6);
}

TEST_CASE("zeta guard discs", "[specfun]") {
    CHECK_THROWS_AS(sf::zeta({1.0 + 1e-8, 0.0}), PoleError);
    CHECK_THROWS_AS(sf::zeta({1.0, 1e-7}), PoleError);
    // first denominator zero above the real axis: 1 + 2 pi i / ln 2
    const double t1 = 2.0 * kPi / std::numbers::ln2;
    CHECK_THROWS_AS(sf::zeta({1.0, t1}), DenominatorError);
    CHECK_THROWS_AS(sf::zeta({1.0 + 1e-8, t1 - 1e-8}), DenominatorError);
    CHECK_THROWS_AS(sf::zeta({-0.5, 3.0}), DomainError);
    // just outside the discs evaluation works
    CHECK_NOTHROW(sf::zeta({1.0 + 1e-3, 0.5}));
    CHECK_NOTHROW(sf::zeta({1.0, t1 + 1e-3}));
}

TEST_CASE("zeta_prime against direct-sum oracle", "[specfun]") {
    const double ref = oracle::zeta_prime_real(2.0);
    CHECK(std::abs(ref - (-0.9375482543158438)) < 1e-13);
    const auto zp = sf::zeta_prime({2.0, 0.0});
    CHECK(std::abs(zp.value.real() - ref) <= zp.abs_err + 1e-13);
    CHECK(std::abs(zp.value.real() - (-0.9375482543158438)) < 1e-12);
    CHECK(std::abs(zp.value.imag()) < 1e-13);
}

TEST_CASE("zeta_prime reflection symmetry", "[specfun]") {
    const Complex z(0.6, 14.0);
    const Complex a = sf::zeta_prime(z).value;
    const Complex b = sf::zeta_prime(std::conj(z)).value;
    CHECK(std::abs(std::conj(a) - b) < 1e-13);
}

TEST_CASE("zeta_prime matches central differences", "[specfun]") {
    const double h = 1e-5;
    {
        const Complex z(2.0, 3.0);
        const Complex fd =
            (sf::zeta(z + h, kTight).value - sf::zeta(z - h, kTight).value) / (2.0 * h);
        CHECK(std::abs(sf::zeta_prime(z, kTight).value - fd) < 1e-8);
    }
    // 50-point grid across the strip and beyond
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> ure(0.2, 3.0), uim(-30.0, 30.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        Complex z(ure(rng), uim(rng));
        if (std::abs(z - Complex(1.0, 0.0)) < 2e-5) z += Complex(1e-4, 0.0);
        const Complex fd =
            (sf::zeta(z + h, kTight).value - sf::zeta(z - h, kTight).value) / (2.0 * h);
        worst = std::max(worst, std::abs(sf::zeta_prime(z, kTight).value - fd));
    }
    CHECK(worst <= 1e-7);
}

TEST_CASE("gamma reference points", "[specfun]") {
    const auto g1 = sf::gamma({1.0, 0.0});
    CHECK(std::abs(g1.value.real() - 1.0) < 1e-12);
    CHECK(std::abs(g1.value.imag()) < 1e-13);
    // factorial recurrence down from Gamma(1)
    const auto g5 = sf::gamma({5.0, 0.0});
    CHECK(std::abs(g5.value.real() - 24.0) < 24.0 * 1e-12);
    const auto gh = sf::gamma({0.5, 0.0});
    CHECK(std::abs(gh.value.real() - std::sqrt(kPi)) < 1e-12);
}

TEST_CASE("gamma duplication identity", "[specfun]") {
    // Gamma(z) Gamma(z + 1/2) = 2^{1-2z} sqrt(pi) Gamma(2z)
    for (Complex z : {Complex(0.5, 0.0), Complex(1.3, 2.0), Complex(0.8, -7.0), Complex(4.0, 11.0)}) {
        const Complex lhs = sf::gamma(z).value * sf::gamma(z + 0.5).value;
        const Complex rhs = std::pow(Complex(2.0, 0.0), 1.0 - 2.0 * z) * std::sqrt(kPi) *
                            sf::gamma(2.0 * z).value;
        CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
    }
}

TEST_CASE("gamma recurrence on the validated region", "[specfun]") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> ure(0.05, 49.0), uim(-100.0, 100.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Complex z(ure(rng), uim(rng));
        const Complex a = sf::gamma(z).value;
        const Complex b = sf::gamma(z + 1.0).value;
        worst = std::max(worst, std::abs(b - z * a) / std::abs(b));
    }
    CHECK(worst <= 1e-11);
}

TEST_CASE("gamma pole guard", "[specfun]") {
    CHECK_THROWS_AS(sf::gamma({0.0, 0.0}), PoleError);
    CHECK_THROWS_AS(sf::gamma({-3.0 + 1e-10, 0.0}), PoleError);
    CHECK_THROWS_AS(sf::gamma({-7.0, 1e-10}), PoleError);
    CHECK_NOTHROW(sf::gamma({-2.5, 0.0}));
    CHECK_NOTHROW(sf::gamma({-3.0, 0.5}));
}

TEST_CASE("zeta_direct values and tail bound", "[specfun]") {
    const auto d10 = sf::zeta_direct({10.0, 0.0}, 100);
    CHECK(std::abs(d10.value.real() - 1.0009945751278180) < 1e-14);

    const auto d2 = sf::zeta_direct({2.0, 0.0}, 1000000);
    const auto z2 = sf::zeta({2.0, 0.0});
    CHECK(std::abs(d2.value - z2.value) <= d2.abs_err + z2.abs_err);

    // the integral tail bound is analytically forced
    for (double sigma : {1.5, 2.0, 4.0}) {
        const long n = 1000;
        const auto v = sf::zeta_direct({sigma, 7.0}, n);
        const double tail = std::pow(double(n), 1.0 - sigma) / (sigma - 1.0);
        CHECK(v.abs_err >= tail);
        CHECK(v.abs_err <= tail * 1.000001 + 1e-12);
    }
    CHECK_THROWS_AS(sf::zeta_direct({1.0, 0.0}, 100), DomainError);
}

TEST_CASE("oracle equivalence of the two zeta routes", "[specfun]") {
    std::mt19937 rng(20240903);
    std::uniform_real_distribution<double> ure(1.5, 10.0), uim(-50.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        const Complex z(ure(rng), uim(rng));
        const auto a = sf::zeta(z);
        const auto b = sf::zeta_direct(z, 20000);
        CHECK(std::abs(a.value - b.value) <= a.abs_err + b.abs_err);
    }
    // where the direct tail can actually reach 1e-12, pin zeta down hard
    std::uniform_real_distribution<double> uhi(3.5, 10.0);
    for (int i = 0; i < 25; ++i) {
        const Complex z(uhi(rng), uim(rng));
        const double sigma = z.real();
        const long n = std::min<long>(
            2000000, long(std::ceil(std::pow(1e-12 * (sigma - 1.0), 1.0 / (1.0 - sigma)))) + 1);
        const auto b = sf::zeta_direct(z, n);
        REQUIRE(b.abs_err <= 2e-12);
        const auto a = sf::zeta(z);
        CHECK(std::abs(a.value - b.value) <= a.abs_err + b.abs_err);
    }
}

TEST_CASE("mobius sieve against trial division", "[specfun]") {
    const auto fast = sf::mobius_sieve(2000);
    const auto slow = oracle::mobius_brute(2000);
    for (long n = 1; n <= 2000; ++n) REQUIRE(int(fast[std::size_t(n)]) == slow[std::size_t(n)]);
    CHECK(int(fast[1]) == 1);
    CHECK(int(fast[2]) == -1);
    CHECK(int(fast[3]) == -1);
    CHECK(int(fast[4]) == 0);
    CHECK(int(fast[6]) == 1);
}

TEST_CASE("inverse zeta series", "[specfun]") {
    const auto inv2 = sf::inverse_zeta_series({2.0, 0.0}, 100000);
    CHECK(std::abs(inv2.value.real() - 6.0 / (kPi * kPi)) <= inv2.abs_err);

    const auto z3 = sf::zeta({3.0, 0.0});
    const auto inv3 = sf::inverse_zeta_series({3.0, 0.0}, 100000);
    CHECK(std::abs(z3.value * inv3.value - 1.0) < 1e-6);

    CHECK_THROWS_AS(sf::inverse_zeta_series({0.9, 0.0}, 100), DomainError);
}

TEST_CASE("mobius product identity on samples", "[specfun]") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ure(2.0, 8.0), uim(-20.0, 20.0);
    for (int i = 0; i < 10; ++i) {
        const Complex z(ure(rng), uim(rng));
        const auto zv = sf::zeta(z);
        const auto iv = sf::inverse_zeta_series(z, 100000);
        CHECK(std::abs(zv.value * iv.value - 1.0) <= 1e-4);
    }
}

TEST_CASE("sandwich bounds", "[specfun]") {
    const auto b2 = sf::sandwich_bounds({2.0, 0.0});
    CHECK(b2.lower == Approx(0.5));
    CHECK(b2.upper == Approx(2.0));
    CHECK(b2.value_abs == Approx(kPi * kPi / 6.0).epsilon(1e-12));
    CHECK(b2.holds);

    CHECK(sf::sandwich_bounds({10.0, 50.0}).holds);

    std::mt19937 rng(20240904);
    std::uniform_real_distribution<double> ure(1.001, 11.0), uim(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        const Complex z(ure(rng), uim(rng));
        CHECK(sf::sandwich_bounds(z).holds);
    }

    // |zeta| -> 1 deep in the half plane
    for (double t : {0.0, 10.0}) {
        const auto v = sf::zeta({50.0, t}, kTight);
        CHECK(std::abs(std::abs(v.value) - 1.0) <= 1e-14);
    }
    CHECK_THROWS_AS(sf::sandwich_bounds({1.0, 0.0}), DomainError);
}

TEST_CASE("abs_err claims hold on known points", "[specfun]") {
    const struct {
        Complex z;
        double exact_re;
    } cases[] = {
        {{2.0, 0.0}, kPi * kPi / 6.0},
        {{3.0, 0.0}, 1.2020569031595943},
    };
    for (const auto& c : cases) {
        for (double target : {1e-8, 1e-10, 1e-13}) {
            const auto v = sf::zeta(c.z, {target, 400});
            CHECK(std::abs(v.value.real() - c.exact_re) <= v.abs_err);
            CHECK(v.abs_err <= target * 1.5 + 1e-14);
        }
    }
}

#include "apzeta/errors.hpp"
#include "apzeta/reference_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace apzeta;
using Complex = std::complex<double>;

namespace {
const double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;
const double kZeta3 = 1.2020569031595942854;
const double kZeta4 = std::pow(std::numbers::pi, 4) / 90.0;
} // namespace

TEST_CASE("Bernoulli numbers") {
    const auto b = bernoulli_numbers(14);
    CHECK(b[0] == Rational(1));
    CHECK(b[1] == Rational::parse("-1/2"));
    CHECK(b[2] == Rational::parse("1/6"));
    CHECK(b[4] == Rational::parse("-1/30"));
    CHECK(b[12] == Rational::parse("-691/2730"));
    for (std::size_t k = 3; k < 14; k += 2) CHECK(b[k].is_zero());
    CHECK(bernoulli_numbers(64).size() == 64);
    CHECK_THROWS_AS(bernoulli_numbers(65), PreconditionError);
}

TEST_CASE("Euler-Maclaurin known values") {
    const auto z2 = zeta_euler_maclaurin({2.0, 0.0}, 1e-12);
    CHECK(z2.method == OracleMethod::euler_maclaurin);
    CHECK(std::abs(z2.value - kZeta2) < 1e-12);
    CHECK(std::abs(z2.value - kZeta2) <= z2.claimed_accuracy + 4e-16);
    CHECK(std::abs(zeta_euler_maclaurin({3.0, 0.0}, 1e-13).value - kZeta3) < 1e-13);
    CHECK(std::abs(zeta_euler_maclaurin({4.0, 0.0}, 1e-13).value - kZeta4) < 1e-13);
    const Complex ref(-0.33937380263883445757, -0.037091505973206031474);
    CHECK(std::abs(zeta_euler_maclaurin({0.5, 1e4}, 1e-11).value - ref) < 1e-11);
}

TEST_CASE("Euler-Maclaurin preconditions") {
    CHECK_THROWS_AS(zeta_euler_maclaurin({1.0, 0.0}, 1e-10), PreconditionError);
    CHECK_THROWS_AS(zeta_euler_maclaurin({-1.0, 0.0}, 1e-10), PreconditionError);
    CHECK_THROWS_AS(zeta_euler_maclaurin({2.0, 0.0}, 0.0), PreconditionError);
    CHECK_THROWS_AS(zeta_euler_maclaurin({0.5, 1e5}, 1e-15), PrecisionError);
}

TEST_CASE("eta series") {
    const auto r = zeta_eta({2.0, 0.0}, 1000000);
    CHECK(r.method == OracleMethod::eta_series);
    CHECK(std::abs(r.value - kZeta2) < 1e-6);
    CHECK(std::abs(r.value - kZeta2) <= r.claimed_accuracy);
    CHECK(r.claimed_accuracy > 0.0);
    CHECK_THROWS_AS(zeta_eta({1.0, 0.0}, 100), EtaDenominatorNearZero);
    CHECK_THROWS_AS(zeta_eta({1.0, 2.0 * std::numbers::pi / std::numbers::ln2}, 100), EtaDenominatorNearZero);
    CHECK_THROWS_AS(zeta_eta({0.0, 3.0}, 100), PreconditionError);
    CHECK_THROWS_AS(zeta_eta({2.0, 0.0}, 0), PreconditionError);
}

TEST_CASE("eta series at t = 1e4 reaches 1e-3 around 7.5e4 blocks") {
    const Complex s(0.5, 1e4);
    const auto ref = zeta_euler_maclaurin(s, 1e-11);
    CHECK(std::abs(zeta_eta(s, 75000).value - ref.value) < 1e-3);
}

TEST_CASE("closed forms") {
    CHECK(zeta_closed_form({0.0, 0.0})->value == Complex(-0.5, 0.0));
    CHECK(zeta_closed_form({-1.0, 0.0})->value.real() == doctest::Approx(-1.0 / 12.0));
    CHECK(zeta_closed_form({-4.0, 0.0})->value == Complex(0.0, 0.0));
    CHECK_FALSE(zeta_closed_form({-3.0, 0.0}).has_value());
    CHECK_FALSE(zeta_closed_form({2.0, 1.0}).has_value());
    CHECK(reference_zeta({2.0, 0.0}, 1e-12).method == OracleMethod::closed_form);
    CHECK(reference_zeta({2.0, 1.0}, 1e-12).method == OracleMethod::euler_maclaurin);
    CHECK(to_string(OracleMethod::eta_series) == "eta_series");
}

TEST_CASE("dual-method agreement at seeded points") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> sigma(0.5, 3.0);
    std::uniform_real_distribution<double> t(-1e4, 1e4);
    for (int i = 0; i < 20; ++i) {
        const Complex s(sigma(rng), t(rng));
        const auto em = zeta_euler_maclaurin(s, 1e-11);
        const auto eta = zeta_eta(s, 400000);
        CHECK(std::abs(em.value - eta.value) <= em.claimed_accuracy + eta.claimed_accuracy);
    }
}

TEST_CASE("refinement stays within the claimed accuracy") {
    for (const Complex s : {Complex(0.5, 100.0), Complex(1.5, 2000.0)}) {
        const auto coarse = zeta_eta(s, 20000);
        const auto fine = zeta_eta(s, 400000);
        CHECK(std::abs(coarse.value - fine.value) <= coarse.claimed_accuracy + fine.claimed_accuracy);
        CHECK(fine.claimed_accuracy < coarse.claimed_accuracy);
        const auto em = zeta_euler_maclaurin(s, 1e-12);
        CHECK(std::abs(coarse.value - em.value) <= coarse.claimed_accuracy);
        CHECK(std::abs(fine.value - em.value) <= fine.claimed_accuracy);
        const auto em_coarse = zeta_euler_maclaurin(s, 1e-6);
        const auto em_fine = zeta_euler_maclaurin(s, 1e-12);
        CHECK(std::abs(em_coarse.value - em_fine.value) <= em_coarse.claimed_accuracy);
    }
}

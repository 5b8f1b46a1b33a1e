#include "apzeta/errors.hpp"
#include "apzeta/series_eval.hpp"

#include "quad_reference.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace apzeta;

namespace {

const double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;

struct Pair {
    FilterCoefficients fc;
    SeriesWeights sw;
};

Pair make(std::uint64_t m) {
    auto fc = m == 2 ? FilterCoefficients::eta_baseline() : solve_filter(progression_modulus(m));
    auto sw = derive_weights(fc);
    return {std::move(fc), std::move(sw)};
}

double rel(const Complex& a, const Complex& b) {
    return std::abs(a - b) / std::abs(b);
}

} // namespace

TEST_CASE("complex_power_inverse") {
    CHECK(complex_power_inverse(1, {0.3, 123.0}) == Complex(1.0, 0.0));
    CHECK(complex_power_inverse(2, {2.0, 0.0}).real() == doctest::Approx(0.25).epsilon(1e-16));
    const Complex z = complex_power_inverse(3, {0.5, 14.134725});
    CHECK(std::abs(z) == doctest::Approx(0.5773502691896257645).epsilon(1e-15));
    CHECK(std::arg(z) == doctest::Approx(-2.962211967585173804).epsilon(1e-14));
    CHECK(std::abs(z - Complex(-0.56808632594675377124, -0.10301096837546944576)) < 1e-15);
    CHECK_THROWS_AS(complex_power_inverse(0, {1.0, 0.0}), PreconditionError);
}

TEST_CASE("large phase stays accurate in extended precision") {
    const Complex s(0.5, 1e7);
    const Complex z = complex_power_inverse(1000003, s);
    CHECK(std::abs(z) == doctest::Approx(1.0 / std::sqrt(1000003.0)).epsilon(1e-14));
    CHECK(phase_error_bound(s, 1000003) < kPhaseErrorBudget);
}

TEST_CASE("finite_complex rejects non-finite components") {
    CHECK_THROWS_AS(finite_complex(std::numeric_limits<double>::quiet_NaN(), 0.0), PreconditionError);
    CHECK_THROWS_AS(finite_complex(0.0, std::numeric_limits<double>::infinity()), PreconditionError);
    CHECK(finite_complex(1.0, 2.0) == Complex(1.0, 2.0));
}

TEST_CASE("eval_truncated small cases") {
    const auto eta = make(2);
    CHECK(eval_truncated(eta.sw, {2.0, 0.0}, 1).real() == doctest::Approx(0.75).epsilon(1e-16));
    const auto six = make(6);
    const Complex z = eval_truncated(six.sw, {2.0, 0.0}, 10000);
    CHECK(std::abs(z - 5.0 / 18.0 * kZeta2) < 1e-11);
}

TEST_CASE("eval_truncated matches a naive loop for N <= 100") {
    for (std::uint64_t m : {2, 6, 12, 24, 60}) {
        const auto p = make(m);
        for (const Complex s : {Complex(2.0, 0.0), Complex(0.5, 1e4), Complex(1.5, -300.0)}) {
            for (std::uint64_t N : {1, 7, 100}) {
                const auto ref = testing::quad_naive_loop(p.sw, s, N);
                CHECK(rel(eval_truncated(p.sw, s, N), ref.value) < 1e-14);
            }
        }
    }
}

TEST_CASE("cancelling sums stay within the normwise rounding bound") {
    // Sigma |terms| / |sum| reaches 1e8 here, so only a normwise bound is meaningful.
    const long double eps = std::numeric_limits<long double>::epsilon();
    for (std::uint64_t m : {6, 24, 60}) {
        const auto p = make(m);
        for (const Complex s : {Complex(0.5, 14.134725), Complex(-1.5, 3.0), Complex(0.5, 1e6)}) {
            for (std::uint64_t N : {1, 10, 100}) {
                const auto ref = testing::quad_naive_loop(p.sw, s, N);
                const double allowed =
                    ref.abs_sum * (16.0 * static_cast<double>(eps) + phase_error_bound(s, m * N + m)) + 1e-300;
                const Complex v = eval_truncated(p.sw, s, N);
                CHECK(std::abs(v - ref.value) <= allowed);
            }
        }
    }
}

TEST_CASE("parallel mode is deterministic and matches sequential") {
    const auto p = make(24);
    const Complex s(0.5, 1e4);
    const EvalOptions par{SummationMode::parallel, false};
    const Complex a = eval_truncated(p.sw, s, 50000, par);
    const Complex b = eval_truncated(p.sw, s, 50000, par);
    CHECK(a == b);
    CHECK(rel(a, eval_truncated(p.sw, s, 50000)) < 1e-12);
    CHECK(eval_truncated(p.sw, s, 10, par) == eval_truncated(p.sw, s, 10));
}

TEST_CASE("linearity in the weights") {
    const auto p = make(6);
    RationalVector scaled;
    const Rational q(BigInt(-7), BigInt(3));
    for (const auto& b : p.sw.b()) scaled.push_back(b * q);
    const SeriesWeights sw2(p.sw.modulus(), scaled);
    for (const Complex s : {Complex(2.0, 1.0), Complex(0.5, 1000.0)}) {
        const Complex base = eval_truncated(p.sw, s, 500);
        CHECK(rel(eval_truncated(sw2, s, 500), q.to_double() * base) < 1e-14);
    }
}

TEST_CASE("block splitting") {
    const auto p = make(60);
    const Complex s(0.5, 2e4);
    const Complex whole = eval_truncated(p.sw, s, 3000);
    const Complex split = eval_truncated(p.sw, s, 1200) + eval_block_range(p.sw, s, 1200, 3000);
    CHECK(rel(split, whole) < 1e-12);
    CHECK_THROWS_AS(eval_block_range(p.sw, s, 10, 5), PreconditionError);
}

TEST_CASE("block scanner reproduces sequential evaluation exactly") {
    const auto p = make(6);
    const Complex s(0.5, 1e5);
    BlockScanner scanner(p.sw, s);
    for (std::uint64_t N : {1, 2, 1000, 4097, 10000}) {
        scanner.advance_to(N);
        CHECK(scanner.partial_sum() == eval_truncated(p.sw, s, N));
    }
    CHECK_THROWS_AS(scanner.advance_to(5), PreconditionError);
}

TEST_CASE("domain checks") {
    const auto p = make(6);
    CHECK_THROWS_AS(eval_truncated(p.sw, {2.0, 0.0}, 0), PreconditionError);
    CHECK_THROWS_AS(eval_truncated(p.sw, {-2.5, 0.0}, 10), PreconditionError);
    CHECK_NOTHROW(eval_truncated(p.sw, {-2.5, 0.0}, 10, {SummationMode::sequential, true}));
    CHECK_THROWS_AS(eval_truncated(p.sw, {std::numeric_limits<double>::quiet_NaN(), 0.0}, 10),
                    PreconditionError);
    CHECK_THROWS_AS(eval_truncated(p.sw, {0.5, 1e13}, 10), PrecisionError);
    CHECK_THROWS_AS(eval_truncated(p.sw, {-3000.0, 0.0}, 100, {SummationMode::sequential, true}),
                    EvaluationError);
    const auto eta = make(2);
    CHECK_THROWS_AS(eval_truncated(eta.sw, {0.0, 5.0}, 10), PreconditionError);
}

TEST_CASE("dirichlet polynomial") {
    const auto six = make(6);
    CHECK(std::abs(dirichlet_poly(six.fc, {2.0, 0.0}) - 5.0 / 18.0) < 1e-16);
    CHECK(std::abs(dirichlet_poly(six.fc, {0.0, 0.0})) < 1e-15);
    const auto tw = make(24);
    CHECK(std::abs(dirichlet_poly(tw.fc, {0.0, 0.0})) < 1e-12);
    CHECK(denominator_threshold(six.fc) == doctest::Approx(12e-6));
}

TEST_CASE("zeta estimates") {
    const auto six = make(6);
    CHECK(std::abs(zeta_estimate(six.fc, six.sw, {2.0, 0.0}, 10000) - kZeta2) < 1e-10);

    const Complex ref(-0.33937380263883445757, -0.037091505973206031474);
    CHECK(std::abs(zeta_estimate(six.fc, six.sw, {0.5, 1e4}, 2000) - ref) < 1e-3);

    const auto ev = evaluate_zeta(six.fc, six.sw, {0.0, 0.0}, 100);
    CHECK_FALSE(ev.condition_ok);
    CHECK_FALSE(ev.zeta.has_value());
    CHECK_THROWS_AS(ev.zeta_estimate(), DenominatorNearZero);
    CHECK_THROWS_AS(zeta_estimate(six.fc, six.sw, {0.0, 0.0}, 100), DenominatorNearZero);

    const auto tw = make(24);
    CHECK_THROWS_AS(evaluate_zeta(six.fc, tw.sw, {2.0, 0.0}, 10), PreconditionError);
}

TEST_CASE("the quotient is 0/0 at s = -1 and the derivative quotient recovers zeta(-1)") {
    const auto six = make(6);
    CHECK(std::abs(dirichlet_poly(six.fc, {-1.0, 0.0})) < 1e-12);
    CHECK(std::abs(eval_truncated(six.sw, {-1.0, 0.0}, 1000)) < 1e-6);
    const auto lim = evaluate_zeta_limit(six.fc, six.sw, {-1.0, 0.0}, 1000000,
                                         {SummationMode::parallel, false});
    CHECK(std::abs(lim.zeta_estimate() + 1.0 / 12.0) < 1e-6);
    const auto lim0 = evaluate_zeta_limit(six.fc, six.sw, {0.0, 0.0}, 100000);
    CHECK(std::abs(lim0.zeta_estimate() + 0.5) < 1e-6);
    CHECK_THROWS_AS(evaluate_zeta_limit(six.fc, six.sw, {1.0, 0.0}, 100), PreconditionError);
    CHECK_THROWS_AS(evaluate_zeta_limit(six.fc, six.sw, {2.0, 0.0}, 100), PreconditionError);
}

TEST_CASE("partial Dirichlet sums") {
    CHECK(eval_partial_dirichlet({2.0, 0.0}, 1) == Complex(1.0, 0.0));
    const double tail = kZeta2 - eval_partial_dirichlet({2.0, 0.0}, 1000000).real();
    CHECK(tail > 0.9e-6);
    CHECK(tail < 1.1e-6);
    CHECK_THROWS_AS(eval_partial_dirichlet({2.0, 0.0}, 0), PreconditionError);

    // Partial sum plus the integral tail 1/(2M^2) - 1/(2M^3) against the m=6 estimate.
    const auto six = make(6);
    const double M = 100.0;
    const double partial = eval_partial_dirichlet({3.0, 0.0}, 100).real() + 0.5 / (M * M) - 0.5 / (M * M * M);
    CHECK(std::abs(partial - zeta_estimate(six.fc, six.sw, {3.0, 0.0}, 100000).real()) < 1e-6);
}

TEST_CASE("consistency with the defining series for Re(s) >= 2") {
    const auto p = make(24);
    for (const Complex s : {Complex(2.0, 0.0), Complex(2.5, 40.0), Complex(3.0, -7.0)}) {
        const std::uint64_t M = 200000;
        const double tail = std::pow(static_cast<double>(M), 1.0 - s.real()) / (s.real() - 1.0);
        const Complex est = zeta_estimate(p.fc, p.sw, s, 20000);
        CHECK(std::abs(est - eval_partial_dirichlet(s, M)) <= tail);
    }
}

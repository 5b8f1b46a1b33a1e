#include "apzeta/reference_oracle.hpp"

#include "apzeta/compensated_sum.hpp"
#include "apzeta/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace apzeta {

namespace {

using LComplex = std::complex<long double>;

constexpr std::size_t kMaxBernoulli = 64;
constexpr long double kLongEps = std::numeric_limits<long double>::epsilon();
constexpr double kDoubleEps = std::numeric_limits<double>::epsilon();

// Independent of the main evaluator's power routine on purpose: plain complex
// exp/log in long double.
LComplex npow_neg(long double n, const LComplex& s) {
    return std::exp(-s * std::log(n));
}

std::complex<double> to_double(const LComplex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Statistical allowance for rounding in a sum of M terms of size n^-sigma.
double rounding_allowance(double sum_sq_magnitudes, double t, double ln_max, double value) {
    const double per_term = static_cast<double>(kLongEps) * (4.0 + 2.0 * std::abs(t) * ln_max);
    return 4.0 * std::sqrt(sum_sq_magnitudes) * per_term + 2.0 * kDoubleEps * value;
}

void require_finite(std::complex<double> s) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw PreconditionError("s must be finite");
    }
}

} // namespace

std::string_view to_string(OracleMethod method) {
    switch (method) {
    case OracleMethod::euler_maclaurin:
        return "euler_maclaurin";
    case OracleMethod::eta_series:
        return "eta_series";
    case OracleMethod::closed_form:
        return "closed_form";
    }
    return "unknown";
}

std::vector<Rational> bernoulli_numbers(std::size_t count) {
    if (count > kMaxBernoulli) {
        throw PreconditionError("at most " + std::to_string(kMaxBernoulli) +
                                " Bernoulli numbers are supported");
    }
    std::vector<Rational> b;
    b.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        if (n == 0) {
            b.emplace_back(1);
            continue;
        }
        // sum_{j=0}^{n} C(n+1, j) B_j = 0
        Rational acc;
        BigInt binom = 1; // C(n+1, 0)
        for (std::size_t j = 0; j < n; ++j) {
            acc += Rational(binom) * b[j];
            binom = binom * static_cast<unsigned long>(n + 1 - j) / static_cast<unsigned long>(j + 1);
        }
        b.push_back(-acc / Rational(static_cast<long>(n + 1)));
    }
    return b;
}

OracleResult zeta_euler_maclaurin(std::complex<double> s, double target) {
    require_finite(s);
    if (!(s.real() > 0.0)) {
        throw PreconditionError("Euler-Maclaurin oracle requires Re(s) > 0");
    }
    if (s == std::complex<double>(1.0, 0.0)) {
        throw PreconditionError("zeta has a pole at s = 1");
    }
    if (!(target > 0.0)) {
        throw PreconditionError("target accuracy must be positive");
    }

    static const std::vector<Rational> bernoulli = bernoulli_numbers(kMaxBernoulli);
    const double sigma = s.real();
    const double t = s.imag();
    const LComplex sl(s.real(), s.imag());

    // Smallest p with the remainder bound below target/2, for a given M.
    auto plan = [&](std::uint64_t M, std::size_t& p_out, double& bound_out) {
        const long double lnM = std::log(static_cast<long double>(M));
        // rising = s(s+1)...(s+2k-2); factorial = (2k)!
        LComplex rising = sl;
        long double factorial = 2.0L;
        const long double base_mag = std::exp((1.0L - sigma) * lnM);
        for (std::size_t k = 1; 2 * k < bernoulli.size(); ++k) {
            // |T_k| with k = p+1, bound on E_p.
            const long double coeff =
                std::abs(static_cast<long double>(bernoulli[2 * k].to_double())) / factorial;
            const long double tk = coeff * std::abs(rising) * base_mag *
                                   std::exp(-static_cast<long double>(2 * k) * lnM);
            const std::size_t p = k - 1;
            const long double e = std::abs(sl + static_cast<long double>(2 * p + 1)) /
                                  (sigma + static_cast<long double>(2 * p + 1)) * tk;
            if (p >= 1 && e <= 0.5L * target) {
                p_out = p;
                bound_out = static_cast<double>(e);
                return true;
            }
            rising *= (sl + static_cast<long double>(2 * k - 1)) * (sl + static_cast<long double>(2 * k));
            factorial *= static_cast<long double>((2 * k + 1) * (2 * k + 2));
        }
        return false;
    };

    std::uint64_t M = std::max<std::uint64_t>(16, static_cast<std::uint64_t>(std::ceil(std::abs(s) / std::numbers::pi)) + 16);
    std::size_t p = 0;
    double remainder = 0.0;
    while (!plan(M, p, remainder)) {
        M *= 2;
        if (M > (std::uint64_t{1} << 28)) {
            throw PrecisionError("Euler-Maclaurin cannot reach target " + std::to_string(target));
        }
    }

    CompensatedComplexSum<long double> head;
    double sum_sq = 0.0;
    for (std::uint64_t n = 1; n < M; ++n) {
        head.add(npow_neg(static_cast<long double>(n), sl));
        sum_sq += std::pow(static_cast<double>(n), -2.0 * sigma);
    }
    const long double Ml = static_cast<long double>(M);
    const LComplex m_pow = npow_neg(Ml, sl); // M^-s
    LComplex value = head.value() + Ml * m_pow / (sl - 1.0L) + 0.5L * m_pow;

    LComplex rising = sl;
    long double factorial = 2.0L;
    LComplex m_power = m_pow / Ml; // M^(-s-1)
    for (std::size_t k = 1; k <= p; ++k) {
        const long double coeff = static_cast<long double>(bernoulli[2 * k].to_double()) / factorial;
        value += coeff * rising * m_power;
        rising *= (sl + static_cast<long double>(2 * k - 1)) * (sl + static_cast<long double>(2 * k));
        factorial *= static_cast<long double>((2 * k + 1) * (2 * k + 2));
        m_power /= Ml * Ml;
    }

    OracleResult out;
    out.value = to_double(value);
    out.method = OracleMethod::euler_maclaurin;
    out.claimed_accuracy = remainder + rounding_allowance(sum_sq, t, std::log(static_cast<double>(M)),
                                                          std::abs(out.value));
    if (out.claimed_accuracy > target) {
        throw PrecisionError("Euler-Maclaurin rounding allowance exceeds target " + std::to_string(target));
    }
    return out;
}

OracleResult zeta_eta(std::complex<double> s, std::uint64_t N) {
    require_finite(s);
    if (!(s.real() > 0.0)) {
        throw PreconditionError("eta series requires Re(s) > 0");
    }
    if (N == 0) {
        throw PreconditionError("eta series needs at least one block");
    }
    const LComplex sl(s.real(), s.imag());
    const LComplex denominator = 1.0L - 2.0L * npow_neg(2.0L, sl);
    if (std::abs(denominator) < 1e-8L) {
        throw EtaDenominatorNearZero("1 - 2^(1-s) vanishes at this s");
    }

    CompensatedComplexSum<long double> acc;
    double sum_sq = 0.0;
    for (std::uint64_t n = 0; n < N; ++n) {
        const long double odd = static_cast<long double>(2 * n + 1);
        acc.add(npow_neg(odd, sl) - npow_neg(odd + 1.0L, sl));
    }
    // Sum of squared term magnitudes, by the integral bound (terms decrease).
    const double sigma = s.real();
    sum_sq = 1.0 + (std::abs(2.0 * sigma - 1.0) < 1e-12
                        ? std::log(2.0 * static_cast<double>(N) + 1.0)
                        : (1.0 - std::pow(2.0 * static_cast<double>(N) + 1.0, 1.0 - 2.0 * sigma)) /
                              (2.0 * sigma - 1.0));

    const double K = 2.0 * static_cast<double>(N) + 1.0;
    const double abs_s = std::abs(s);
    const double abs_s1 = std::abs(s + 1.0);
    const double tail = 0.5 * std::pow(K, -sigma) + 0.25 * abs_s * std::pow(K, -sigma - 1.0) +
                        abs_s * abs_s1 * std::pow(K - 1.0, -sigma - 1.0) / (4.0 * (sigma + 1.0));

    OracleResult out;
    out.value = to_double(acc.value() / denominator);
    out.method = OracleMethod::eta_series;
    const double den = static_cast<double>(std::abs(denominator));
    out.claimed_accuracy = (tail + rounding_allowance(sum_sq, s.imag(), std::log(K), 0.0)) / den +
                           2.0 * kDoubleEps * std::abs(out.value);
    return out;
}

std::optional<OracleResult> zeta_closed_form(std::complex<double> s) {
    if (s.imag() != 0.0) {
        return std::nullopt;
    }
    const double x = s.real();
    double value = 0.0;
    if (x == 0.0) {
        value = -0.5;
    } else if (x == -1.0) {
        value = -1.0 / 12.0;
    } else if (x == 2.0) {
        value = std::numbers::pi * std::numbers::pi / 6.0;
    } else if (x == 3.0) {
        value = 1.2020569031595942853997381615114;
    } else if (x == 4.0) {
        value = std::pow(std::numbers::pi, 4) / 90.0;
    } else if (x < 0.0 && std::fmod(x, 2.0) == 0.0) {
        value = 0.0;
    } else {
        return std::nullopt;
    }
    return OracleResult{{value, 0.0}, 4.0 * kDoubleEps * std::max(1.0, std::abs(value)),
                        OracleMethod::closed_form};
}

OracleResult reference_zeta(std::complex<double> s, double target) {
    if (auto closed = zeta_closed_form(s)) {
        return *closed;
    }
    return zeta_euler_maclaurin(s, target);
}

} // namespace apzeta

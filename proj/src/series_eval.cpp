#include "apzeta/series_eval.hpp"

#include "apzeta/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace apzeta {

namespace {

// 2 pi split into the nearest long double and the residual.
constexpr long double kTwoPiHi = 6.283185307179586476925286766559005768L;
constexpr long double kTwoPiLo = -1.0033115225336664047e-19L;

// Exact product a * b = p + e (Dekker split).
struct TwoProduct {
    long double p;
    long double e;
};

TwoProduct two_product(long double a, long double b) {
    constexpr long double kSplit = 4294967297.0L;  // 2^32 + 1
    const long double ca = kSplit * a;
    const long double ah = ca - (ca - a);
    const long double al = a - ah;
    const long double cb = kSplit * b;
    const long double bh = cb - (cb - b);
    const long double bl = b - bh;
    const long double p = a * b;
    const long double e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, e};
}

// exp(-s * ln_base) with the phase reduced in extended precision.
ExtendedComplex power_from_log(long double ln_base, const Complex& s) {
    const long double sigma = s.real();
    const long double t = s.imag();
    const long double magnitude = std::exp(-sigma * ln_base);
    if (t == 0.0L) {
        return {magnitude, 0.0L};
    }
    // -t ln = hi + lo exactly, then hi is reduced modulo 2 pi.
    const TwoProduct x = two_product(-t, ln_base);
    const long double k = std::rint(x.p / kTwoPiHi);
    const TwoProduct r = two_product(k, kTwoPiHi);
    const long double phase = (x.p - r.p) - r.e - k * kTwoPiLo + x.e;
    return {magnitude * std::cos(phase), magnitude * std::sin(phase)};
}

void check_domain(double abscissa, std::uint64_t m, const Complex& s, std::uint64_t N,
                  bool explore) {
    if (N == 0) {
        throw PreconditionError("number of outer blocks must be at least 1");
    }
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
        throw PreconditionError("s must be finite");
    }
    if (!explore && !(s.real() > abscissa)) {
        std::ostringstream os;
        os << "Re(s)=" << s.real() << " is outside the proven half-plane Re(s) > " << abscissa
           << " for m=" << m << "; exploration must be requested explicitly";
        throw PreconditionError(os.str());
    }
    const double phase_error = phase_error_bound(s, m * N + m);
    if (phase_error > kPhaseErrorBudget) {
        std::ostringstream os;
        os << "per-term phase error " << phase_error << " exceeds budget " << kPhaseErrorBudget;
        throw PrecisionError(os.str());
    }
}

void check_pairing(const FilterCoefficients& fc, const SeriesWeights& sw) {
    if (fc.modulus() != sw.modulus() || derive_weights(fc).b() != sw.b()) {
        throw PreconditionError("series weights were not derived from these filter coefficients");
    }
}

CompensatedComplexSum<long double> sum_blocks(const SeriesWeights& sw, const Complex& s,
                                              std::uint64_t N, const EvalOptions& options,
                                              bool derivative) {
    check_domain(sw.convergence_abscissa(), sw.modulus().m, s, N, options.explore);
    const WeightTable table(sw);
    if (options.mode == SummationMode::sequential) {
        CompensatedComplexSum<long double> acc;
        accumulate_blocks(table, s, 0, N, acc, derivative);
        return acc;
    }

    const std::uint64_t chunks = (N + kParallelChunkBlocks - 1) / kParallelChunkBlocks;
    std::vector<CompensatedComplexSum<long double>> partial(chunks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            const std::uint64_t begin = c * kParallelChunkBlocks;
            const std::uint64_t end = std::min(N, begin + kParallelChunkBlocks);
            accumulate_blocks(table, s, begin, end, partial[c], derivative);
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto thread_count = static_cast<unsigned>(std::min<std::uint64_t>(hw, chunks));
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned i = 0; i < thread_count; ++i) {
        threads.emplace_back([&] {
            try {
                worker();
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = chunks;
            }
        });
    }
    for (auto& th : threads) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    // Pairwise tree reduction in chunk order.
    for (std::size_t width = 1; width < partial.size(); width *= 2) {
        for (std::size_t i = 0; i + width < partial.size(); i += 2 * width) {
            partial[i].merge(partial[i + width]);
        }
    }
    return partial.front();
}

Complex to_double(const ExtendedComplex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

} // namespace

Complex finite_complex(double re, double im) {
    if (!std::isfinite(re) || !std::isfinite(im)) {
        throw PreconditionError("complex value must have finite components");
    }
    return {re, im};
}

ExtendedComplex power_inverse_extended(std::uint64_t base, const Complex& s) {
    if (base == 0) {
        throw PreconditionError("power base must be at least 1");
    }
    return power_from_log(std::log(static_cast<long double>(base)), s);
}

Complex complex_power_inverse(std::uint64_t base, const Complex& s) {
    return to_double(power_inverse_extended(base, s));
}

double phase_error_bound(const Complex& s, std::uint64_t max_base) {
    const long double ln = std::log(static_cast<long double>(std::max<std::uint64_t>(max_base, 2)));
    const long double ulp = std::nextafter(ln, std::numeric_limits<long double>::infinity()) - ln;
    return static_cast<double>(std::abs(static_cast<long double>(s.imag())) * ulp);
}

WeightTable::WeightTable(const SeriesWeights& sw) : m_(sw.modulus().m) {
    b_.reserve(m_);
    for (const auto& q : sw.b()) {
        b_.push_back(static_cast<long double>(q.to_double()));
        abs_sum_ += std::abs(q.to_double());
    }
}

void accumulate_blocks(const WeightTable& table, const Complex& s, std::uint64_t n_begin,
                       std::uint64_t n_end, CompensatedComplexSum<long double>& acc,
                       bool derivative) {
    const std::uint64_t m = table.modulus();
    const auto& b = table.weights();
    for (std::uint64_t n = n_begin; n < n_end; ++n) {
        for (std::uint64_t k = 1; k <= m; ++k) {
            const long double weight = b[k - 1];
            if (weight == 0.0L) {
                continue;
            }
            const long double ln = std::log(static_cast<long double>(m * n + k));
            ExtendedComplex term = weight * power_from_log(ln, s);
            if (derivative) {
                term *= -ln;
            }
            if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
                throw EvaluationError(n, k);
            }
            acc.add(term);
        }
    }
}

void check_evaluation_domain(const SeriesWeights& sw, const Complex& s, std::uint64_t N,
                             bool explore) {
    check_domain(sw.convergence_abscissa(), sw.modulus().m, s, N, explore);
}

Complex eval_truncated(const SeriesWeights& sw, const Complex& s, std::uint64_t N,
                       const EvalOptions& options) {
    return to_double(sum_blocks(sw, s, N, options, false).value());
}

Complex eval_truncated_derivative(const SeriesWeights& sw, const Complex& s, std::uint64_t N,
                                  const EvalOptions& options) {
    return to_double(sum_blocks(sw, s, N, options, true).value());
}

Complex eval_block_range(const SeriesWeights& sw, const Complex& s, std::uint64_t n_begin,
                         std::uint64_t n_end) {
    if (n_end < n_begin) {
        throw PreconditionError("block range end precedes its start");
    }
    check_domain(sw.convergence_abscissa(), sw.modulus().m, s, std::max<std::uint64_t>(n_end, 1),
                 false);
    CompensatedComplexSum<long double> acc;
    accumulate_blocks(WeightTable(sw), s, n_begin, n_end, acc);
    return to_double(acc.value());
}

Complex dirichlet_poly(const FilterCoefficients& fc, const Complex& s) {
    CompensatedComplexSum<long double> acc;
    const auto& divisors = fc.modulus().divisors;
    for (std::size_t j = 0; j < divisors.size(); ++j) {
        if (!fc.a()[j].is_zero()) {
            acc.add(static_cast<long double>(fc.a()[j].to_double()) *
                    power_inverse_extended(divisors[j], s));
        }
    }
    return to_double(acc.value());
}

Complex dirichlet_poly_derivative(const FilterCoefficients& fc, const Complex& s) {
    CompensatedComplexSum<long double> acc;
    const auto& divisors = fc.modulus().divisors;
    for (std::size_t j = 0; j < divisors.size(); ++j) {
        if (!fc.a()[j].is_zero()) {
            const long double ln = std::log(static_cast<long double>(divisors[j]));
            acc.add(-ln * static_cast<long double>(fc.a()[j].to_double()) *
                    power_from_log(ln, s));
        }
    }
    return to_double(acc.value());
}

double denominator_threshold(const FilterCoefficients& fc) {
    double total = 0.0;
    for (const auto& q : fc.a()) {
        total += std::abs(q.to_double());
    }
    return 1e-6 * total;
}

Complex TruncatedEvaluation::zeta_estimate() const {
    if (!zeta) {
        std::ostringstream os;
        os << "denominator modulus " << std::abs(denominator) << " below threshold " << threshold;
        throw DenominatorNearZero(os.str());
    }
    return *zeta;
}

TruncatedEvaluation evaluate_zeta(const FilterCoefficients& fc, const SeriesWeights& sw,
                                  const Complex& s, std::uint64_t N, const EvalOptions& options) {
    check_pairing(fc, sw);
    TruncatedEvaluation out;
    out.partial_sum = eval_truncated(sw, s, N, options);
    out.denominator = dirichlet_poly(fc, s);
    out.outer_terms = N;
    out.modulus = sw.modulus().m;
    out.threshold = denominator_threshold(fc);
    out.condition_ok = std::abs(out.denominator) >= out.threshold;
    if (out.condition_ok) {
        out.zeta = out.partial_sum / out.denominator;
    }
    return out;
}

Complex zeta_estimate(const FilterCoefficients& fc, const SeriesWeights& sw, const Complex& s,
                      std::uint64_t N, const EvalOptions& options) {
    return evaluate_zeta(fc, sw, s, N, options).zeta_estimate();
}

TruncatedEvaluation evaluate_zeta_limit(const FilterCoefficients& fc, const SeriesWeights& sw,
                                        const Complex& s, std::uint64_t N,
                                        const EvalOptions& options) {
    check_pairing(fc, sw);
    if (s == Complex(1.0, 0.0)) {
        throw PreconditionError("s = 1 is the pole of zeta");
    }
    const double threshold = denominator_threshold(fc);
    if (std::abs(dirichlet_poly(fc, s)) >= threshold) {
        throw PreconditionError("denominator does not vanish at s; use evaluate_zeta");
    }
    TruncatedEvaluation out;
    out.partial_sum = eval_truncated_derivative(sw, s, N, options);
    out.denominator = dirichlet_poly_derivative(fc, s);
    out.outer_terms = N;
    out.modulus = sw.modulus().m;
    out.threshold = threshold;
    out.condition_ok = std::abs(out.denominator) >= threshold;
    if (out.condition_ok) {
        out.zeta = out.partial_sum / out.denominator;
    }
    return out;
}

Complex eval_partial_dirichlet(const Complex& s, std::uint64_t M) {
    if (M == 0) {
        throw PreconditionError("number of terms must be at least 1");
    }
    CompensatedComplexSum<long double> acc;
    for (std::uint64_t n = 1; n <= M; ++n) {
        acc.add(power_inverse_extended(n, s));
    }
    return to_double(acc.value());
}

BlockScanner::BlockScanner(const SeriesWeights& sw, const Complex& s, bool explore)
    : table_(sw), abscissa_(sw.convergence_abscissa()), s_(s), explore_(explore) {}

void BlockScanner::advance_to(std::uint64_t N) {
    if (N < blocks_) {
        throw PreconditionError("block scanner cannot move backwards");
    }
    check_domain(abscissa_, table_.modulus(), s_, std::max<std::uint64_t>(N, 1), explore_);
    accumulate_blocks(table_, s_, blocks_, N, acc_);
    blocks_ = N;
}

Complex BlockScanner::partial_sum() const {
    return to_double(acc_.value());
}

} // namespace apzeta

#pragma once

#include "apzeta/compensated_sum.hpp"
#include "apzeta/progression_weights.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace apzeta {

using Complex = std::complex<double>;
using ExtendedComplex = std::complex<long double>;

/// Builds a complex value, rejecting NaN and infinite components.
Complex finite_complex(double re, double im);

/// base^(-s) = exp(-s ln base). The phase t ln base is formed and reduced
/// modulo 2 pi in extended precision, so its absolute error is about
/// |t| ulp(ln base) with the long double ulp.
ExtendedComplex power_inverse_extended(std::uint64_t base, const Complex& s);
Complex complex_power_inverse(std::uint64_t base, const Complex& s);

/// Bound on the phase error of a single term base^(-s) as computed above.
double phase_error_bound(const Complex& s, std::uint64_t max_base);

/// Largest per-term phase error the evaluator accepts.
inline constexpr double kPhaseErrorBudget = 1e-8;

enum class SummationMode { sequential, parallel };

/// Outer blocks per chunk in parallel mode. Fixed so results do not depend on
/// the number of threads.
inline constexpr std::uint64_t kParallelChunkBlocks = 4096;

struct EvalOptions {
    SummationMode mode = SummationMode::sequential;
    /// Permit Re(s) at or below the proven convergence abscissa.
    bool explore = false;
};

/// The weights of a SeriesWeights converted to floating point once.
class WeightTable {
public:
    explicit WeightTable(const SeriesWeights& sw);

    std::uint64_t modulus() const { return m_; }
    const std::vector<long double>& weights() const { return b_; }
    double abs_sum() const { return abs_sum_; }

private:
    std::uint64_t m_;
    std::vector<long double> b_;
    double abs_sum_ = 0.0;
};

/// Adds sum_{n = n_begin}^{n_end - 1} sum_{k=1}^{m} b_k (mn+k)^(-s) to acc,
/// in that order. With derivative set, the terms are replaced by
/// -b_k ln(mn+k) (mn+k)^(-s).
void accumulate_blocks(const WeightTable& table, const Complex& s, std::uint64_t n_begin,
                       std::uint64_t n_end, CompensatedComplexSum<long double>& acc,
                       bool derivative = false);

/// Checks the region and phase-budget preconditions for evaluating N blocks.
void check_evaluation_domain(const SeriesWeights& sw, const Complex& s, std::uint64_t N,
                             bool explore);

/// The truncated series with N complete inner blocks, n = 0 .. N-1.
Complex eval_truncated(const SeriesWeights& sw, const Complex& s, std::uint64_t N,
                       const EvalOptions& options = {});

/// Same series over outer indices [n_begin, n_end), compensated sequential order.
Complex eval_block_range(const SeriesWeights& sw, const Complex& s, std::uint64_t n_begin,
                         std::uint64_t n_end);

/// Derivative in s of the truncated series.
Complex eval_truncated_derivative(const SeriesWeights& sw, const Complex& s, std::uint64_t N,
                                  const EvalOptions& options = {});

/// sum_j a_j d_j^(-s).
Complex dirichlet_poly(const FilterCoefficients& fc, const Complex& s);
/// d/ds of dirichlet_poly: -sum_j a_j ln(d_j) d_j^(-s).
Complex dirichlet_poly_derivative(const FilterCoefficients& fc, const Complex& s);

/// 1e-6 * sum_j |a_j|.
double denominator_threshold(const FilterCoefficients& fc);

struct TruncatedEvaluation {
    Complex partial_sum;
    Complex denominator;
    std::optional<Complex> zeta;
    std::uint64_t outer_terms = 0;
    std::uint64_t modulus = 0;
    bool condition_ok = false;
    double threshold = 0.0;

    /// Throws DenominatorNearZero when the estimate was withheld.
    Complex zeta_estimate() const;
};

/// Partial sum, denominator, and their quotient. The quotient is withheld when
/// |denominator| < denominator_threshold(fc).
TruncatedEvaluation evaluate_zeta(const FilterCoefficients& fc, const SeriesWeights& sw,
                                  const Complex& s, std::uint64_t N,
                                  const EvalOptions& options = {});

/// Convenience: evaluate_zeta(...).zeta_estimate().
Complex zeta_estimate(const FilterCoefficients& fc, const SeriesWeights& sw, const Complex& s,
                      std::uint64_t N, const EvalOptions& options = {});

/// Estimate at a point where the denominator vanishes exactly and the truncated
/// series is identically zero (s = 0 and the negative odd integers above
/// 1 - d(m)): the quotient of the derivatives of series and denominator.
/// Rejects s = 1 and points where the denominator does not vanish.
/// Throws DenominatorNearZero when the derivative of the denominator is below
/// the threshold as well.
TruncatedEvaluation evaluate_zeta_limit(const FilterCoefficients& fc, const SeriesWeights& sw,
                                        const Complex& s, std::uint64_t N,
                                        const EvalOptions& options = {});

/// sum_{n=1}^{M} n^(-s).
Complex eval_partial_dirichlet(const Complex& s, std::uint64_t M);

/// Incremental evaluation for scans over N: after advance_to(N) the partial
/// sum equals eval_truncated(sw, s, N) in sequential mode bit for bit.
class BlockScanner {
public:
    BlockScanner(const SeriesWeights& sw, const Complex& s, bool explore = false);

    void advance_to(std::uint64_t N);
    std::uint64_t blocks() const { return blocks_; }
    Complex partial_sum() const;

private:
    WeightTable table_;
    double abscissa_;
    Complex s_;
    bool explore_;
    std::uint64_t blocks_ = 0;
    CompensatedComplexSum<long double> acc_;
};

} // namespace apzeta

#pragma once

#include "apzeta/progression_weights.hpp"
#include "apzeta/reference_oracle.hpp"
#include "apzeta/series_eval.hpp"

#include <cstdint>
#include <vector>

namespace apzeta {

/// Taylor coefficient of (1+z)^(-s): (-1)^l / l! * prod_{u<l} (s+u).
Complex falling_coefficient(unsigned l, const Complex& s);

/// 1 / (m (Re s + d - 1) (mN - m/2)^(Re s + d - 1)), an upper bound for
/// sum_{n >= N} (mn + m/2)^-(Re s + d). Requires Re(s) + d > 1 and N >= 1.
double tail_bound(const Complex& s, std::uint64_t N, std::uint64_t m, unsigned d);

struct TailEstimate {
    double tail_bound = 0.0;
    Rational leading_moment;   // sum_k b_k k^d(m)
    Complex falling_factor;    // f_d(m)(s)
    double predicted_error = 0.0;
};

/// Leading-term model of the truncation error of the zeta estimate:
/// | T(s,N) f_d(s) sum_k b_k k^d / sum_j a_j d_j^-s |.
/// Requires vanishing_order >= d(m); throws DenominatorNearZero when the
/// denominator is below threshold.
TailEstimate predicted_error(const FilterCoefficients& fc, const SeriesWeights& sw,
                             const Complex& s, std::uint64_t N);

/// Critical-line simplification |s|^d / d! / (m (mN)^(d - 1/2)) times the
/// moment-to-denominator ratio, with s = 1/2 + it.
double critical_line_error(const FilterCoefficients& fc, const SeriesWeights& sw, double t,
                           std::uint64_t N);

/// kappa = eta^(1/(d - 1/2)): the factor on N that buys a factor eta in accuracy.
double accuracy_scaling_factor(unsigned d, double eta);

/// Smallest N with modelled error <= target. On the critical line with |s| >= 10 m
/// the critical-line model is inverted, otherwise the leading-term model.
std::uint64_t predict_min_N(const FilterCoefficients& fc, const SeriesWeights& sw,
                            const Complex& s, double target);

/// Rigorous bound on |zeta estimate - zeta| for Re(s) > 1 that ignores the
/// moment cancellation: sum_k |b_k| / (m (sigma-1) (m(N-1)+1)^(sigma-1)) / |denominator|.
double absolute_tail_bound(const FilterCoefficients& fc, const SeriesWeights& sw,
                           const Complex& s, std::uint64_t N);

/// Inclusive grid start, start+step, ..., <= stop.
struct Grid {
    std::uint64_t start = 1;
    std::uint64_t stop = 1;
    std::uint64_t step = 1;

    std::size_t size() const;
    std::uint64_t at(std::size_t i) const { return start + i * step; }
};

/// Validates start >= 1, step >= 1, stop >= start.
Grid make_grid(std::uint64_t start, std::uint64_t stop, std::uint64_t step);

struct MinNResult {
    bool reached = false;
    std::uint64_t N = 0;        // first passing grid point, or last grid point when exhausted
    double error = 0.0;         // |estimate - reference| at N
    Complex estimate;
};

/// First grid N with |zeta_estimate(N) - reference| < target, scanning the
/// grid in order; later grid points are not inspected. The reference must
/// claim accuracy <= target / 10.
MinNResult empirical_min_N(const FilterCoefficients& fc, const SeriesWeights& sw,
                           const Complex& s, double target, const OracleResult& reference,
                           const Grid& grid);

/// Several targets in one pass over the grid; results in target order.
std::vector<MinNResult> empirical_min_N(const FilterCoefficients& fc, const SeriesWeights& sw,
                                        const Complex& s, const std::vector<double>& targets,
                                        const OracleResult& reference, const Grid& grid);

struct CurvePoint {
    std::uint64_t N = 0;
    Complex estimate;
    double error = 0.0;
};

/// |zeta_estimate(N) - reference| for every grid point.
std::vector<CurvePoint> error_curve(const FilterCoefficients& fc, const SeriesWeights& sw,
                                    const Complex& s, const OracleResult& reference,
                                    const Grid& grid, bool explore = false);

} // namespace apzeta

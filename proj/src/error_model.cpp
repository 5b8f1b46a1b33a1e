#include "apzeta/error_model.hpp"

#include "apzeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace apzeta {

namespace {

void require_leading_term_model(const FilterCoefficients& fc, const SeriesWeights& sw) {
    const auto d = fc.modulus().divisor_count();
    if (sw.vanishing_order() < d) {
        std::ostringstream os;
        os << "error model needs vanishing order >= d(m)=" << d << ", weights have "
           << sw.vanishing_order();
        throw PreconditionError(os.str());
    }
}

Complex checked_denominator(const FilterCoefficients& fc, const Complex& s) {
    const Complex den = dirichlet_poly(fc, s);
    if (std::abs(den) < denominator_threshold(fc)) {
        std::ostringstream os;
        os << "denominator modulus " << std::abs(den) << " below threshold "
           << denominator_threshold(fc);
        throw DenominatorNearZero(os.str());
    }
    return den;
}

double abs_leading_moment(const FilterCoefficients& fc, const SeriesWeights& sw) {
    const auto d = static_cast<unsigned>(fc.modulus().divisor_count());
    return std::abs(weight_moment(sw.b(), d).to_double());
}

bool on_critical_line_regime(const Complex& s, std::uint64_t m) {
    return std::abs(s.real() - 0.5) < 1e-12 && std::abs(s) >= 10.0 * static_cast<double>(m);
}

// Shared scan: evaluates each grid point once and hands the error to visit.
// visit returns false to stop early.
template <typename Visit>
void scan_grid(const FilterCoefficients& fc, const SeriesWeights& sw, const Complex& s,
               const OracleResult& reference, const Grid& grid, bool explore, Visit visit) {
    if (fc.modulus() != sw.modulus() || derive_weights(fc).b() != sw.b()) {
        throw PreconditionError("series weights were not derived from these filter coefficients");
    }
    const Complex den = checked_denominator(fc, s);
    BlockScanner scanner(sw, s, explore);
    // Check the domain for the far end before spending time on the scan.
    check_evaluation_domain(sw, s, grid.at(grid.size() - 1), explore);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::uint64_t N = grid.at(i);
        scanner.advance_to(N);
        const Complex estimate = scanner.partial_sum() / den;
        if (!visit(N, estimate, std::abs(estimate - reference.value))) {
            return;
        }
    }
}

} // namespace

Complex falling_coefficient(unsigned l, const Complex& s) {
    Complex acc(1.0, 0.0);
    for (unsigned u = 0; u < l; ++u) {
        acc *= -(s + static_cast<double>(u)) / static_cast<double>(u + 1);
    }
    return acc;
}

double tail_bound(const Complex& s, std::uint64_t N, std::uint64_t m, unsigned d) {
    const double exponent = s.real() + static_cast<double>(d) - 1.0;
    if (!(exponent > 0.0)) {
        throw PreconditionError("tail bound diverges for Re(s) + d <= 1");
    }
    if (N == 0 || m == 0) {
        throw PreconditionError("tail bound needs N >= 1 and m >= 1");
    }
    const double md = static_cast<double>(m);
    const double base = md * static_cast<double>(N) - md / 2.0;
    return 1.0 / (md * exponent * std::pow(base, exponent));
}

TailEstimate predicted_error(const FilterCoefficients& fc, const SeriesWeights& sw,
                             const Complex& s, std::uint64_t N) {
    require_leading_term_model(fc, sw);
    const auto d = static_cast<unsigned>(fc.modulus().divisor_count());
    TailEstimate out;
    out.tail_bound = tail_bound(s, N, fc.modulus().m, d);
    out.leading_moment = weight_moment(sw.b(), d);
    out.falling_factor = falling_coefficient(d, s);
    const Complex den = checked_denominator(fc, s);
    out.predicted_error = out.tail_bound * std::abs(out.falling_factor) *
                          std::abs(out.leading_moment.to_double()) / std::abs(den);
    return out;
}

double critical_line_error(const FilterCoefficients& fc, const SeriesWeights& sw, double t,
                           std::uint64_t N) {
    require_leading_term_model(fc, sw);
    if (N == 0) {
        throw PreconditionError("N must be at least 1");
    }
    const Complex s(0.5, t);
    const auto d = static_cast<double>(fc.modulus().divisor_count());
    const double m = static_cast<double>(fc.modulus().m);
    const double log_value = d * std::log(std::abs(s)) - std::lgamma(d + 1.0) - std::log(m) -
                             (d - 0.5) * std::log(m * static_cast<double>(N));
    return std::exp(log_value) * abs_leading_moment(fc, sw) / std::abs(checked_denominator(fc, s));
}

double accuracy_scaling_factor(unsigned d, double eta) {
    return std::pow(eta, 1.0 / (static_cast<double>(d) - 0.5));
}

std::uint64_t predict_min_N(const FilterCoefficients& fc, const SeriesWeights& sw,
                            const Complex& s, double target) {
    require_leading_term_model(fc, sw);
    if (!(target > 0.0)) {
        throw PreconditionError("target accuracy must be positive");
    }
    const auto d = static_cast<double>(fc.modulus().divisor_count());
    const double m = static_cast<double>(fc.modulus().m);
    const double ratio = abs_leading_moment(fc, sw) / std::abs(checked_denominator(fc, s));

    double N = 0.0;
    if (on_critical_line_regime(s, fc.modulus().m)) {
        // (mN)^(d - 1/2) >= |s|^d ratio / (d! m target)
        const double log_rhs = d * std::log(std::abs(s)) - std::lgamma(d + 1.0) +
                               std::log(ratio) - std::log(m) - std::log(target);
        N = std::exp(log_rhs / (d - 0.5)) / m;
    } else {
        const double a = s.real() + d - 1.0;
        if (!(a > 0.0)) {
            throw PreconditionError("leading-term model diverges for Re(s) + d <= 1");
        }
        const Complex f = falling_coefficient(static_cast<unsigned>(d), s);
        // (mN - m/2)^a >= |f| ratio / (m a target)
        const double log_rhs =
            std::log(std::abs(f)) + std::log(ratio) - std::log(m * a) - std::log(target);
        N = (std::exp(log_rhs / a) + m / 2.0) / m;
    }
    if (!std::isfinite(N) || N > 1e18) {
        throw PreconditionError("predicted N is out of range");
    }
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(N)));
}

double absolute_tail_bound(const FilterCoefficients& fc, const SeriesWeights& sw,
                           const Complex& s, std::uint64_t N) {
    const double sigma = s.real();
    if (!(sigma > 1.0)) {
        throw PreconditionError("absolute tail bound requires Re(s) > 1");
    }
    if (N == 0) {
        throw PreconditionError("N must be at least 1");
    }
    double abs_b = 0.0;
    for (const auto& q : sw.b()) {
        abs_b += std::abs(q.to_double());
    }
    const double m = static_cast<double>(fc.modulus().m);
    const double first = m * static_cast<double>(N - 1) + 1.0;
    const double tail = abs_b / (m * (sigma - 1.0) * std::pow(first, sigma - 1.0));
    return tail / std::abs(checked_denominator(fc, s));
}

std::size_t Grid::size() const {
    return static_cast<std::size_t>((stop - start) / step) + 1;
}

Grid make_grid(std::uint64_t start, std::uint64_t stop, std::uint64_t step) {
    if (start == 0 || step == 0 || stop < start) {
        throw PreconditionError("grid needs 1 <= start <= stop and step >= 1");
    }
    return {start, stop, step};
}

MinNResult empirical_min_N(const FilterCoefficients& fc, const SeriesWeights& sw,
                           const Complex& s, double target, const OracleResult& reference,
                           const Grid& grid) {
    return empirical_min_N(fc, sw, s, std::vector<double>{target}, reference, grid).front();
}

std::vector<MinNResult> empirical_min_N(const FilterCoefficients& fc, const SeriesWeights& sw,
                                        const Complex& s, const std::vector<double>& targets,
                                        const OracleResult& reference, const Grid& grid) {
    if (targets.empty()) {
        throw PreconditionError("at least one target is required");
    }
    for (const double target : targets) {
        if (!(target > 0.0)) {
            throw PreconditionError("targets must be positive");
        }
        if (reference.claimed_accuracy > target / 10.0) {
            std::ostringstream os;
            os << "reference accuracy " << reference.claimed_accuracy
               << " is not within target/10 for target " << target;
            throw PreconditionError(os.str());
        }
    }
    std::vector<MinNResult> results(targets.size());
    std::size_t open = targets.size();
    scan_grid(fc, sw, s, reference, grid, false,
              [&](std::uint64_t N, const Complex& estimate, double error) {
                  for (std::size_t i = 0; i < targets.size(); ++i) {
                      if (results[i].reached) {
                          continue;
                      }
                      results[i].N = N;
                      results[i].error = error;
                      results[i].estimate = estimate;
                      if (error < targets[i]) {
                          results[i].reached = true;
                          --open;
                      }
                  }
                  return open > 0;
              });
    return results;
}

std::vector<CurvePoint> error_curve(const FilterCoefficients& fc, const SeriesWeights& sw,
                                    const Complex& s, const OracleResult& reference,
                                    const Grid& grid, bool explore) {
    std::vector<CurvePoint> points;
    points.reserve(grid.size());
    scan_grid(fc, sw, s, reference, grid, explore,
              [&](std::uint64_t N, const Complex& estimate, double error) {
                  points.push_back({N, estimate, error});
                  return true;
              });
    return points;
}

} // namespace apzeta

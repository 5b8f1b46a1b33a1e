#pragma once

#include "apzeta/exact_matrix.hpp"
#include "apzeta/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apzeta {

/// The modulus m of the arithmetic progressions and its ascending divisor list.
struct ProgressionModulus {
    std::uint64_t m = 1;
    std::vector<std::uint64_t> divisors;

    std::size_t divisor_count() const { return divisors.size(); }
    friend bool operator==(const ProgressionModulus&, const ProgressionModulus&) = default;
};

/// Trial division; rejects m = 0.
ProgressionModulus progression_modulus(std::uint64_t m);

/// d(m) x d(m) matrix with entry (i, j) = sum_{n=1}^{m/d_j} (d_j n)^i, i = 0 .. d(m)-1.
/// A filter vector a lies in its right kernel exactly when the weights
/// b_k = sum_{d_j | k} a_j have vanishing moments of order 0 .. d(m)-1.
ExactMatrix filter_moment_matrix(const ProgressionModulus& pm);

/// d(m) x m matrix with entry (r, k-1) = k^r: the moment conditions applied
/// directly to a weight vector b.
ExactMatrix weight_moment_matrix(const ProgressionModulus& pm);

/// c = [0, m^2, -3m, 2, 0, ..., 0], a nonzero left-kernel vector of the filter
/// matrix whenever d(m) >= 4. Throws MethodNotApplicable otherwise.
RationalVector singularity_witness(const ProgressionModulus& pm);

/// Filter vector a (one entry per divisor). Construction checks that a is a
/// nonzero primitive integer vector in the kernel of the filter matrix, except
/// for the built-in eta baseline (m = 2), which lies outside the construction.
class FilterCoefficients {
public:
    static FilterCoefficients from_kernel_vector(ProgressionModulus pm, RationalVector a);
    static FilterCoefficients eta_baseline();

    const ProgressionModulus& modulus() const { return modulus_; }
    const RationalVector& a() const { return a_; }
    bool is_baseline() const { return baseline_; }

    friend bool operator==(const FilterCoefficients&, const FilterCoefficients&) = default;

private:
    FilterCoefficients(ProgressionModulus pm, RationalVector a, bool baseline)
        : modulus_(std::move(pm)), a_(std::move(a)), baseline_(baseline) {}

    ProgressionModulus modulus_;
    RationalVector a_;
    bool baseline_ = false;
};

/// Periodic series weights b_1 .. b_m and the number of leading vanishing moments.
class SeriesWeights {
public:
    /// Validates that b is nonzero and computes vanishing_order exactly.
    SeriesWeights(ProgressionModulus pm, RationalVector b);

    const ProgressionModulus& modulus() const { return modulus_; }
    const RationalVector& b() const { return b_; }
    std::size_t vanishing_order() const { return vanishing_order_; }

    /// Abscissa sigma0 such that the series is known to converge for Re(s) > sigma0:
    /// 2 - vanishing_order in general; 0 for the alternating eta weights [1, -1].
    double convergence_abscissa() const;

private:
    ProgressionModulus modulus_;
    RationalVector b_;
    std::size_t vanishing_order_ = 0;
};

/// Exact moment sum_{k=1}^{m} b_k k^r.
Rational weight_moment(std::span<const Rational> b, unsigned r);

/// Kernel structure of the filter matrix for a given modulus.
struct FilterSystem {
    ProgressionModulus modulus;
    ExactMatrix matrix;
    RowEchelon echelon;

    std::size_t rank() const { return echelon.rank(); }
    std::size_t nullity() const { return matrix.cols() - echelon.rank(); }
};

FilterSystem filter_system(const ProgressionModulus& pm);

/// Published filter vectors for m in {6, 24, 60}; nullopt for any other m.
std::optional<RationalVector> published_filter(std::uint64_t m);

/// Solves A a = 0. With no assignment, the free variables are taken from the
/// published vector when one exists for m, otherwise the first free column is
/// set to -1. The result is made primitive.
FilterCoefficients solve_filter(const ProgressionModulus& pm,
                                const std::optional<RationalVector>& free_assignment = std::nullopt);

/// b_k = sum of a_j over divisors d_j dividing k, k = 1 .. m.
SeriesWeights derive_weights(const FilterCoefficients& fc);

struct MomentReport {
    std::vector<Rational> moments;   // moments[r] = sum_k b_k k^r
    bool passed = false;
};

MomentReport verify_vanishing(std::span<const Rational> b, std::size_t order);
inline MomentReport verify_vanishing(const SeriesWeights& sw, std::size_t order) {
    return verify_vanishing(sw.b(), order);
}

/// Inverse of derive_weights: the a with b_k = sum_{d_j | k} a_j for every k,
/// if one exists. The returned vector is not rescaled.
std::optional<RationalVector> divisor_form_decomposition(const ProgressionModulus& pm,
                                                         std::span<const Rational> b);

} // namespace apzeta

#include "apzeta/progression_weights.hpp"

#include "apzeta/errors.hpp"

#include <algorithm>
#include <string>

namespace apzeta {

ProgressionModulus progression_modulus(std::uint64_t m) {
    if (m == 0) {
        throw PreconditionError("modulus must be positive");
    }
    std::vector<std::uint64_t> small;
    std::vector<std::uint64_t> large;
    for (std::uint64_t d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            small.push_back(d);
            if (d != m / d) {
                large.push_back(m / d);
            }
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return {m, std::move(small)};
}

ExactMatrix filter_moment_matrix(const ProgressionModulus& pm) {
    const std::size_t d = pm.divisor_count();
    // Power sums are integers; accumulate in BigInt and convert once.
    std::vector<BigInt> sums(d * d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        const std::uint64_t dj = pm.divisors[j];
        for (std::uint64_t n = 1; n <= pm.m / dj; ++n) {
            BigInt power = 1;
            const BigInt x = static_cast<unsigned long>(dj * n);
            for (std::size_t i = 0; i < d; ++i) {
                sums[i * d + j] += power;
                power *= x;
            }
        }
    }
    ExactMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            a(i, j) = Rational(sums[i * d + j]);
        }
    }
    return a;
}

ExactMatrix weight_moment_matrix(const ProgressionModulus& pm) {
    const std::size_t d = pm.divisor_count();
    ExactMatrix b(d, pm.m);
    for (std::uint64_t k = 1; k <= pm.m; ++k) {
        BigInt power = 1;
        for (std::size_t r = 0; r < d; ++r) {
            b(r, k - 1) = Rational(power);
            power *= static_cast<unsigned long>(k);
        }
    }
    return b;
}

RationalVector singularity_witness(const ProgressionModulus& pm) {
    if (pm.divisor_count() < 4) {
        throw MethodNotApplicable("m=" + std::to_string(pm.m) + " has d(m)=" +
                                  std::to_string(pm.divisor_count()) +
                                  " < 4; the filter matrix is nonsingular");
    }
    RationalVector c(pm.divisor_count());
    const BigInt m = static_cast<unsigned long>(pm.m);
    c[1] = Rational(BigInt(m * m));
    c[2] = Rational(BigInt(-3 * m));
    c[3] = 2;
    return c;
}

FilterCoefficients FilterCoefficients::from_kernel_vector(ProgressionModulus pm, RationalVector a) {
    if (a.size() != pm.divisor_count()) {
        throw DimensionMismatch("filter vector has " + std::to_string(a.size()) +
                                " entries, expected d(m)=" + std::to_string(pm.divisor_count()));
    }
    if (is_zero_vector(a)) {
        throw PreconditionError("filter vector is zero");
    }
    if (primitive_integer(a) != a) {
        throw PreconditionError("filter vector is not primitive-normalized");
    }
    if (!is_zero_vector(mat_vec(filter_moment_matrix(pm), a))) {
        throw PreconditionError("filter vector is not in the kernel of the filter matrix");
    }
    return FilterCoefficients(std::move(pm), std::move(a), false);
}

FilterCoefficients FilterCoefficients::eta_baseline() {
    return FilterCoefficients(progression_modulus(2), RationalVector{1, -2}, true);
}

Rational weight_moment(std::span<const Rational> b, unsigned r) {
    Rational acc;
    for (std::size_t k = 1; k <= b.size(); ++k) {
        if (!b[k - 1].is_zero()) {
            acc += b[k - 1] * pow(Rational(static_cast<long>(k)), r);
        }
    }
    return acc;
}

SeriesWeights::SeriesWeights(ProgressionModulus pm, RationalVector b)
    : modulus_(std::move(pm)), b_(std::move(b)) {
    if (b_.size() != modulus_.m) {
        throw DimensionMismatch("weight vector has " + std::to_string(b_.size()) +
                                " entries, expected m=" + std::to_string(modulus_.m));
    }
    if (is_zero_vector(b_)) {
        throw PreconditionError("series weights are all zero");
    }
    // Moments r = 0 .. m-1, exact; k^r built incrementally.
    RationalVector powers(b_.size(), Rational(1));
    while (vanishing_order_ < b_.size()) {
        Rational moment;
        for (std::size_t k = 0; k < b_.size(); ++k) {
            moment += b_[k] * powers[k];
            powers[k] *= Rational(static_cast<long>(k + 1));
        }
        if (!moment.is_zero()) {
            break;
        }
        ++vanishing_order_;
    }
}

double SeriesWeights::convergence_abscissa() const {
    if (modulus_.m == 2 && b_ == RationalVector{1, -1}) {
        return 0.0;
    }
    return 2.0 - static_cast<double>(vanishing_order_);
}

FilterSystem filter_system(const ProgressionModulus& pm) {
    ExactMatrix a = filter_moment_matrix(pm);
    RowEchelon echelon = rref(a);
    return {pm, std::move(a), std::move(echelon)};
}

std::optional<RationalVector> published_filter(std::uint64_t m) {
    switch (m) {
    case 6:
        return RationalVector{1, -5, 5, -1};
    case 24:
        return RationalVector{56, -407, 792, -517, 77, 0, -1, 0};
    case 60:
        return RationalVector{61768, -567996, 1595836, -2051621, 1292980, -334789,
                              4415, -593, 0, 0, 0, 0};
    default:
        return std::nullopt;
    }
}

FilterCoefficients solve_filter(const ProgressionModulus& pm,
                                const std::optional<RationalVector>& free_assignment) {
    if (pm.divisor_count() < 4) {
        throw MethodNotApplicable("m=" + std::to_string(pm.m) + " has d(m)=" +
                                  std::to_string(pm.divisor_count()) + " < 4");
    }
    const FilterSystem system = filter_system(pm);
    const auto free = system.echelon.free_columns();

    RationalVector assignment;
    if (free_assignment) {
        assignment = *free_assignment;
        if (assignment.size() != free.size()) {
            throw DimensionMismatch("free assignment has " + std::to_string(assignment.size()) +
                                    " entries, the kernel has " + std::to_string(free.size()) +
                                    " free columns");
        }
        if (is_zero_vector(assignment)) {
            throw PreconditionError("free assignment is all zero");
        }
    } else if (const auto published = published_filter(pm.m)) {
        for (const auto c : free) {
            assignment.push_back((*published)[c]);
        }
    } else {
        assignment.assign(free.size(), Rational(0));
        assignment.front() = -1;
    }

    RationalVector a = primitive_integer(kernel_vector(system.echelon, assignment));
    return FilterCoefficients::from_kernel_vector(pm, std::move(a));
}

SeriesWeights derive_weights(const FilterCoefficients& fc) {
    const auto& pm = fc.modulus();
    RationalVector b(pm.m);
    for (std::uint64_t k = 1; k <= pm.m; ++k) {
        for (std::size_t j = 0; j < pm.divisor_count(); ++j) {
            if (k % pm.divisors[j] == 0) {
                b[k - 1] += fc.a()[j];
            }
        }
    }
    return SeriesWeights(pm, std::move(b));
}

MomentReport verify_vanishing(std::span<const Rational> b, std::size_t order) {
    MomentReport report;
    report.moments.reserve(order);
    report.passed = true;
    for (std::size_t r = 0; r < order; ++r) {
        report.moments.push_back(weight_moment(b, static_cast<unsigned>(r)));
        if (!report.moments.back().is_zero()) {
            report.passed = false;
        }
    }
    return report;
}

std::optional<RationalVector> divisor_form_decomposition(const ProgressionModulus& pm,
                                                         std::span<const Rational> b) {
    if (b.size() != pm.m) {
        throw DimensionMismatch("weight vector length must equal m");
    }
    // The rows k = d_j form a unit lower-triangular system in the divisor order.
    const std::size_t d = pm.divisor_count();
    RationalVector a(d);
    for (std::size_t j = 0; j < d; ++j) {
        Rational acc = b[pm.divisors[j] - 1];
        for (std::size_t i = 0; i < j; ++i) {
            if (pm.divisors[j] % pm.divisors[i] == 0) {
                acc -= a[i];
            }
        }
        a[j] = acc;
    }
    for (std::uint64_t k = 1; k <= pm.m; ++k) {
        Rational acc;
        for (std::size_t j = 0; j < d; ++j) {
            if (k % pm.divisors[j] == 0) {
                acc += a[j];
            }
        }
        if (acc != b[k - 1]) {
            return std::nullopt;
        }
    }
    return a;
}

} // namespace apzeta

#pragma once

#include <cmath>
#include <complex>

namespace apzeta {

/// Neumaier's variant of Kahan summation: the running compensation also
/// captures the error when the addend is larger than the partial sum.
template <typename Real>
class CompensatedSum {
public:
    void add(Real x) {
        const Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    void merge(const CompensatedSum& other) {
        add(other.sum_);
        add(other.comp_);
    }

    Real value() const { return sum_ + comp_; }

private:
    Real sum_ = 0;
    Real comp_ = 0;
};

template <typename Real>
class CompensatedComplexSum {
public:
    void add(const std::complex<Real>& z) {
        re_.add(z.real());
        im_.add(z.imag());
    }

    void merge(const CompensatedComplexSum& other) {
        re_.merge(other.re_);
        im_.merge(other.im_);
    }

    std::complex<Real> value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<Real> re_;
    CompensatedSum<Real> im_;
};

} // namespace apzeta

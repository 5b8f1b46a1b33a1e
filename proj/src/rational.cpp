#include "apzeta/rational.hpp"

#include "apzeta/errors.hpp"

namespace apzeta {

Rational::Rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) {
        throw PreconditionError("rational with zero denominator");
    }
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(BigInt(std::string(text), 10));
        }
        return Rational(BigInt(std::string(text.substr(0, slash)), 10),
                        BigInt(std::string(text.substr(slash + 1)), 10));
    } catch (const std::invalid_argument&) {
        throw PreconditionError("malformed rational: '" + std::string(text) + "'");
    }
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) {
        throw PreconditionError("rational division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

Rational pow(const Rational& base, unsigned exponent) {
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), exponent);
    return Rational(num, den);
}

} // namespace apzeta

#pragma once

#include "apzeta/rational.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace apzeta {

enum class OracleMethod { euler_maclaurin, eta_series, closed_form };

std::string_view to_string(OracleMethod method);

/// A reference value of zeta(s) together with an upper bound on its error.
struct OracleResult {
    std::complex<double> value;
    double claimed_accuracy = 0.0;
    OracleMethod method = OracleMethod::closed_form;
};

/// B_0 .. B_{count-1} from the recurrence sum_{j<n+1} C(n+1, j) B_j = 0
/// (so B_1 = -1/2). count <= 64.
std::vector<Rational> bernoulli_numbers(std::size_t count);

/// Euler-Maclaurin summation
///   zeta(s) = sum_{n<M} n^-s + M^(1-s)/(s-1) + M^-s/2
///             + sum_{k=1}^{p} B_2k/(2k)! s(s+1)...(s+2k-2) M^(1-s-2k) + E
/// with |E| <= |s+2p+1|/(Re s+2p+1) |T_{p+1}|. M and p are chosen so that the
/// remainder bound plus a rounding allowance is at most target.
/// Requires Re(s) > 0, s != 1. Throws PrecisionError when target is unreachable.
OracleResult zeta_euler_maclaurin(std::complex<double> s, double target);

/// Alternating series sum_{n<N} ((2n+1)^-s - (2n+2)^-s) / (1 - 2^(1-s)).
/// claimed_accuracy bounds the alternating tail through its second
/// differences:
///   |tail| <= K^-sigma/2 + |s| K^(-sigma-1)/4 + |s(s+1)| (K-1)^(-sigma-1)/(4(sigma+1)),
/// K = 2N+1, divided by |1 - 2^(1-s)|, plus a rounding allowance.
/// Requires Re(s) > 0; throws EtaDenominatorNearZero when |1 - 2^(1-s)| < 1e-8.
OracleResult zeta_eta(std::complex<double> s, std::uint64_t N);

/// Known constants: zeta(0) = -1/2, zeta(-1) = -1/12, zeta(2) = pi^2/6,
/// zeta(3) (Apery), zeta(4) = pi^4/90, and the trivial zeros -2, -4, ...
std::optional<OracleResult> zeta_closed_form(std::complex<double> s);

/// Closed form when one exists, else Euler-Maclaurin at the given target.
OracleResult reference_zeta(std::complex<double> s, double target);

} // namespace apzeta

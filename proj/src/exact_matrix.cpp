#include "apzeta/exact_matrix.hpp"

#include "apzeta/errors.hpp"

#include <string>
#include <utility>

namespace apzeta {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1;
    }
    return out;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<RationalVector>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    ExactMatrix out(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw DimensionMismatch("ragged rows in matrix literal");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            out(r, c) = rows[r][c];
        }
    }
    return out;
}

RationalVector ExactMatrix::column(std::size_t c) const {
    RationalVector out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out.push_back((*this)(r, c));
    }
    return out;
}

std::vector<std::size_t> RowEchelon::free_columns() const {
    std::vector<std::size_t> out;
    std::size_t p = 0;
    for (std::size_t c = 0; c < reduced.cols(); ++c) {
        if (p < pivots.size() && pivots[p] == c) {
            ++p;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

namespace {

void swap_rows(ExactMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
        std::swap(m(a, c), m(b, c));
    }
}

} // namespace

RowEchelon rref(const ExactMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw PreconditionError("rref of an empty matrix");
    }
    ExactMatrix r = m;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t pick = row;
        while (pick < r.rows() && r(pick, col).is_zero()) {
            ++pick;
        }
        if (pick == r.rows()) {
            continue;
        }
        swap_rows(r, row, pick);

        const Rational inv = Rational(1) / r(row, col);
        for (std::size_t c = col; c < r.cols(); ++c) {
            r(row, c) *= inv;
        }
        for (std::size_t other = 0; other < r.rows(); ++other) {
            if (other == row || r(other, col).is_zero()) {
                continue;
            }
            const Rational factor = r(other, col);
            for (std::size_t c = col; c < r.cols(); ++c) {
                r(other, c) -= factor * r(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots)};
}

RationalVector kernel_vector(const RowEchelon& echelon, std::span<const Rational> free_values) {
    const auto free = echelon.free_columns();
    if (free_values.size() != free.size()) {
        throw DimensionMismatch("expected " + std::to_string(free.size()) + " free values, got " +
                                std::to_string(free_values.size()));
    }
    RationalVector v(echelon.reduced.cols());
    for (std::size_t f = 0; f < free.size(); ++f) {
        v[free[f]] = free_values[f];
    }
    for (std::size_t i = 0; i < echelon.pivots.size(); ++i) {
        Rational acc;
        for (std::size_t f = 0; f < free.size(); ++f) {
            if (!free_values[f].is_zero()) {
                acc -= echelon.reduced(i, free[f]) * free_values[f];
            }
        }
        v[echelon.pivots[i]] = acc;
    }
    return v;
}

std::vector<RationalVector> right_kernel_basis(const ExactMatrix& m) {
    const RowEchelon echelon = rref(m);
    const auto free = echelon.free_columns();
    std::vector<RationalVector> basis;
    basis.reserve(free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        RationalVector assignment(free.size());
        assignment[f] = -1;
        basis.push_back(primitive_integer(kernel_vector(echelon, assignment)));
    }
    return basis;
}

Rational determinant(const ExactMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("determinant of a non-square matrix");
    }
    ExactMatrix r = m;
    Rational det = 1;
    const std::size_t n = r.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pick = col;
        while (pick < n && r(pick, col).is_zero()) {
            ++pick;
        }
        if (pick == n) {
            return Rational(0);
        }
        if (pick != col) {
            swap_rows(r, col, pick);
            det = -det;
        }
        det *= r(col, col);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (r(row, col).is_zero()) {
                continue;
            }
            const Rational factor = r(row, col) / r(col, col);
            for (std::size_t c = col; c < n; ++c) {
                r(row, c) -= factor * r(col, c);
            }
        }
    }
    return det;
}

RationalVector mat_vec(const ExactMatrix& m, std::span<const Rational> v) {
    if (v.size() != m.cols()) {
        throw DimensionMismatch("mat_vec: vector length " + std::to_string(v.size()) +
                                " vs " + std::to_string(m.cols()) + " columns");
    }
    RationalVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!v[c].is_zero()) {
                out[r] += m(r, c) * v[c];
            }
        }
    }
    return out;
}

RationalVector vec_mat(std::span<const Rational> w, const ExactMatrix& m) {
    if (w.size() != m.rows()) {
        throw DimensionMismatch("vec_mat: vector length " + std::to_string(w.size()) +
                                " vs " + std::to_string(m.rows()) + " rows");
    }
    RationalVector out(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (w[r].is_zero()) {
            continue;
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[c] += w[r] * m(r, c);
        }
    }
    return out;
}

bool is_zero_vector(std::span<const Rational> v) {
    for (const auto& x : v) {
        if (!x.is_zero()) {
            return false;
        }
    }
    return true;
}

RationalVector primitive_integer(RationalVector v) {
    if (is_zero_vector(v)) {
        return v;
    }
    BigInt den_lcm = 1;
    for (const auto& x : v) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.denominator().get_mpz_t());
    }
    std::vector<BigInt> ints;
    ints.reserve(v.size());
    BigInt g = 0;
    for (const auto& x : v) {
        BigInt scaled = x.numerator() * (den_lcm / x.denominator());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled.get_mpz_t());
        ints.push_back(std::move(scaled));
    }
    int lead_sign = 0;
    for (const auto& x : ints) {
        if (sgn(x) != 0) {
            lead_sign = sgn(x);
            break;
        }
    }
    if (lead_sign < 0) {
        g = -g;
    }
    RationalVector out;
    out.reserve(v.size());
    for (const auto& x : ints) {
        out.emplace_back(BigInt(x / g));
    }
    return out;
}

} // namespace apzeta

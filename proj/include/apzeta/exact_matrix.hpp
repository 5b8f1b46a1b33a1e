#pragma once

#include "apzeta/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace apzeta {

/// Dense row-major matrix of exact rationals.
class ExactMatrix {
public:
    ExactMatrix(std::size_t rows, std::size_t cols);

    static ExactMatrix identity(std::size_t n);
    static ExactMatrix from_rows(const std::vector<RationalVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const {
        return {entries_.data() + r * cols_, cols_};
    }
    RationalVector column(std::size_t c) const;

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> entries_;
};

/// Reduced row echelon form together with its pivot columns (ascending).
struct RowEchelon {
    ExactMatrix reduced;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return pivots.size(); }
    std::vector<std::size_t> free_columns() const;
};

/// Gauss-Jordan elimination over the rationals. Pivot is the first nonzero
/// entry at or below the current row in each column.
RowEchelon rref(const ExactMatrix& m);

/// One basis vector per free column: that free variable is -1, the other free
/// variables are 0, pivots are solved from the RREF, then the vector is made
/// primitive. Empty when the kernel is trivial.
std::vector<RationalVector> right_kernel_basis(const ExactMatrix& m);

/// Solves the pivot variables for the given values of the free variables
/// (ordered like RowEchelon::free_columns()).
RationalVector kernel_vector(const RowEchelon& echelon, std::span<const Rational> free_values);

Rational determinant(const ExactMatrix& m);

RationalVector mat_vec(const ExactMatrix& m, std::span<const Rational> v);
RationalVector vec_mat(std::span<const Rational> w, const ExactMatrix& m);

bool is_zero_vector(std::span<const Rational> v);

/// Scales a nonzero rational vector to integers with gcd 1 and a positive first
/// nonzero entry. The zero vector is returned unchanged.
RationalVector primitive_integer(RationalVector v);

} // namespace apzeta

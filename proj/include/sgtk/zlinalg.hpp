/**
 * Exact integer linear algebra.
 *
 * Everything here works over Z with 64-bit entries and checked arithmetic:
 * an intermediate that does not fit raises std::overflow_error instead of
 * wrapping. All instances this toolkit cares about are tiny, but Smith
 * pivoting can inflate intermediates on adversarial input.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sgtk::zlinalg {

using Int = std::int64_t;
using IntVector = std::vector<Int>;

namespace checked {
Int add(Int a, Int b);
Int sub(Int a, Int b);
Int mul(Int a, Int b);
Int neg(Int a);
}  // namespace checked

/// Nonnegative gcd; gcd(0, 0) = 0.
Int gcd(Int a, Int b);

/// Floor division, b != 0.
Int floor_div(Int a, Int b);

/**
 * Dense row-major integer matrix. Either dimension may be zero.
 */
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
    static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Int at(std::size_t r, std::size_t c) const;

    IntVector row(std::size_t r) const;
    IntVector column(std::size_t c) const;
    IntMatrix transpose() const;
    bool is_zero() const;

    // Elementary operations, all unimodular except scale_row by non-units.
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, Int factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, Int factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector multiply(const IntMatrix& a, std::span<const Int> x);
Int dot(std::span<const Int> a, std::span<const Int> b);

/// Fraction-free (Bareiss) determinant of a square matrix.
Int determinant(const IntMatrix& a);

/// U * A * V = D with U, V unimodular and D = diag(d1 | d2 | ... ), d_i >= 0.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    std::size_t rank = 0;

    IntVector diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Row-style Hermite normal form. Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

/**
 * Basis of the integer kernel lattice {x : A x = 0}, in Hermite normal form
 * (so the output is canonical). Empty iff A is injective.
 */
std::vector<IntVector> kernel_basis(const IntMatrix& a);

/// Some integer x with A x = b, or nullopt when none exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, std::span<const Int> b);

std::string to_string(std::span<const Int> v);

}  // namespace sgtk::zlinalg

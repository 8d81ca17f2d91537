#include "sgtk/zlinalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sgtk::zlinalg {

namespace checked {

Int add(Int a, Int b)
{
    Int out;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("integer overflow in addition");
    return out;
}

Int sub(Int a, Int b)
{
    Int out;
    if (__builtin_sub_overflow(a, b, &out))
        throw std::overflow_error("integer overflow in subtraction");
    return out;
}

Int mul(Int a, Int b)
{
    Int out;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("integer overflow in multiplication");
    return out;
}

Int neg(Int a)
{
    return sub(0, a);
}

}  // namespace checked

Int gcd(Int a, Int b)
{
    a = a < 0 ? checked::neg(a) : a;
    b = b < 0 ? checked::neg(b) : b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Int floor_div(Int a, Int b)
{
    if (b == 0)
        throw std::domain_error("division by zero");
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0)
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw std::invalid_argument("row length mismatch");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows)
{
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m(i, j) = cols[j][i];
    }
    return m;
}

Int IntMatrix::at(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_)
        throw std::out_of_range("matrix index out of range");
    return (*this)(r, c);
}

IntVector IntMatrix::row(std::size_t r) const
{
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t c) const
{
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out[i] = (*this)(i, c);
    return out;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](Int x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, Int factor)
{
    if (factor == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(dst, j) = checked::add((*this)(dst, j), checked::mul(factor, (*this)(src, j)));
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, Int factor)
{
    if (factor == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, dst) = checked::add((*this)(i, dst), checked::mul(factor, (*this)(i, src)));
}

void IntMatrix::negate_row(std::size_t r)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = checked::neg((*this)(r, j));
}

void IntMatrix::negate_col(std::size_t c)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, c) = checked::neg((*this)(i, c));
}

std::string IntMatrix::to_string() const
{
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i)
            out << ", ";
        out << zlinalg::to_string(row(i));
    }
    out << ']';
    return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Int aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = checked::add(c(i, j), checked::mul(aik, b(k, j)));
        }
    return c;
}

IntVector multiply(const IntMatrix& a, std::span<const Int> x)
{
    if (a.cols() != x.size())
        throw std::invalid_argument("matrix-vector dimension mismatch");
    IntVector y(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            y[i] = checked::add(y[i], checked::mul(a(i, j), x[j]));
    return y;
}

Int dot(std::span<const Int> a, std::span<const Int> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot product length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s = checked::add(s, checked::mul(a[i], b[i]));
    return s;
}

Int determinant(const IntMatrix& input)
{
    if (input.rows() != input.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = input.rows();
    if (n == 0)
        return 1;
    IntMatrix m = input;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int num = checked::sub(checked::mul(m(i, j), m(k, k)), checked::mul(m(i, k), m(k, j)));
                m(i, j) = num / prev;  // exact by Sylvester's identity
            }
        prev = m(k, k);
    }
    return checked::mul(sign, m(n - 1, n - 1));
}

IntVector SmithDecomposition::diagonal() const
{
    IntVector d(std::min(D.rows(), D.cols()));
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = D(i, i);
    return d;
}

namespace {

Int abs_checked(Int x)
{
    return x < 0 ? checked::neg(x) : x;
}

// x*a + y*b = g with g = gcd(a, b) >= 0.
Int extended_gcd(Int a, Int b, Int& x, Int& y)
{
    Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const Int q = a / b;
        Int t = a - q * b;
        a = b;
        b = t;
        t = checked::sub(x0, checked::mul(q, x1));
        x0 = x1;
        x1 = t;
        t = checked::sub(y0, checked::mul(q, y1));
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = checked::neg(a);
        x0 = checked::neg(x0);
        y0 = checked::neg(y0);
    }
    x = x0;
    y = y0;
    return a;
}

// rows (r1, r2) <- [a b; c d] (r1, r2)
void mix_rows(IntMatrix& m, std::size_t r1, std::size_t r2, Int a, Int b, Int c, Int d)
{
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Int u = m(r1, j), v = m(r2, j);
        m(r1, j) = checked::add(checked::mul(a, u), checked::mul(b, v));
        m(r2, j) = checked::add(checked::mul(c, u), checked::mul(d, v));
    }
}

bool is_diagonal(const IntMatrix& d)
{
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (i != j && d(i, j) != 0)
                return false;
    return true;
}

// Row Hermite form with transform: T * a = H, all rows kept. Reducing [a | I]
// as one matrix also reduces the transform, which keeps U and V small.
void hermite_with_transform(const IntMatrix& a, IntMatrix& h, IntMatrix& t)
{
    const std::size_t m = a.rows(), n = a.cols();
    IntMatrix aug(m, n + m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    const IntMatrix r = hermite_normal_form(aug);  // rank m, so no row is dropped
    h = IntMatrix(m, n);
    t = IntMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = r(i, j);
        for (std::size_t j = 0; j < m; ++j)
            t(i, j) = r(i, n + j);
    }
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    SmithDecomposition s{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
    IntMatrix& d = s.D;

    // Alternate row and column Hermite forms until diagonal.
    while (!is_diagonal(d)) {
        IntMatrix h, t;
        hermite_with_transform(d, h, t);
        d = h;
        s.U = t * s.U;
        if (is_diagonal(d))
            break;
        hermite_with_transform(d.transpose(), h, t);
        d = h.transpose();
        s.V = s.V * t.transpose();
    }

    // Divisibility chain. diag(x, y) -> diag(g, xy/g) through [x 0; y y] and a Bezout row mix.
    const std::size_t k = std::min(m, n);
    for (bool again = true; again;) {
        again = false;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) {
                const Int x = d(i, i), y = d(j, j);
                if (y == 0 || (x != 0 && y % x == 0))
                    continue;
                again = true;
                if (x == 0) {
                    d.swap_rows(i, j);
                    s.U.swap_rows(i, j);
                    d.swap_cols(i, j);
                    s.V.swap_cols(i, j);
                    continue;
                }
                d.add_col_multiple(i, j, 1);
                s.V.add_col_multiple(i, j, 1);
                Int u = 0, v = 0;
                const Int g = extended_gcd(x, y, u, v);
                const Int c = checked::neg(y / g), e = x / g;
                mix_rows(d, i, j, u, v, c, e);
                mix_rows(s.U, i, j, u, v, c, e);
                const Int q = d(i, j) / d(i, i);
                d.add_col_multiple(j, i, checked::neg(q));
                s.V.add_col_multiple(j, i, checked::neg(q));
            }
    }

    for (std::size_t t = 0; t < k; ++t) {
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.U.negate_row(t);
        }
        if (d(t, t) != 0)
            s.rank = t + 1;
    }
    return s;
}

IntMatrix hermite_normal_form(const IntMatrix& a)
{
    IntMatrix h = a;
    const std::size_t m = h.rows();
    const std::size_t n = h.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        while (true) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (h(i, c) != 0 && (best == m || abs_checked(h(i, c)) < abs_checked(h(best, c))))
                    best = i;
            if (best == m)
                break;
            h.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (h(i, c) == 0)
                    continue;
                h.add_row_multiple(i, r, checked::neg(h(i, c) / h(r, c)));
                if (h(i, c) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (h(r, c) == 0)
            continue;
        if (h(r, c) < 0)
            h.negate_row(r);
        for (std::size_t i = 0; i < r; ++i)
            h.add_row_multiple(i, r, checked::neg(floor_div(h(i, c), h(r, c))));
        ++r;
    }
    IntMatrix out(r, n);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out(i, j) = h(i, j);
    return out;
}

std::size_t rank(const IntMatrix& a)
{
    return hermite_normal_form(a).rows();
}

std::vector<IntVector> kernel_basis(const IntMatrix& a)
{
    const SmithDecomposition s = smith_normal_form(a);
    const std::size_t n = a.cols();
    std::vector<IntVector> raw;
    for (std::size_t j = s.rank; j < n; ++j)
        raw.push_back(s.V.column(j));
    if (raw.empty())
        return {};
    const IntMatrix h = hermite_normal_form(IntMatrix::from_rows(raw, n));
    std::vector<IntVector> basis;
    for (std::size_t i = 0; i < h.rows(); ++i)
        basis.push_back(h.row(i));
    return basis;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, std::span<const Int> b)
{
    if (b.size() != a.rows())
        throw std::invalid_argument("right-hand side length " + std::to_string(b.size()) +
                                    " does not match " + std::to_string(a.rows()) + " rows");
    const SmithDecomposition s = smith_normal_form(a);
    const IntVector ub = multiply(s.U, b);
    IntVector y(a.cols(), 0);
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < s.rank) {
            const Int di = s.D(i, i);
            if (ub[i] % di != 0)
                return std::nullopt;
            y[i] = ub[i] / di;
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    IntVector x = multiply(s.V, y);
    if (multiply(a, x) != IntVector(b.begin(), b.end()))
        throw std::logic_error("solve_integer: substitution check failed");
    return x;
}

std::string to_string(std::span<const Int> v)
{
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out << ", ";
        out << v[i];
    }
    out << ')';
    return out.str();
}

}  // namespace sgtk::zlinalg

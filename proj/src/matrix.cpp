#include "laddermod/matrix.hpp"

#include <sstream>

namespace laddermod {

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f))
{
}

Matrix Matrix::identity(const Field& f, std::size_t n)
{
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
}

Matrix Matrix::parse(const Field& f, std::size_t rows, std::size_t cols,
                     const std::vector<std::vector<std::string>>& entries)
{
    if (entries.size() != rows) throw DimensionError("row count mismatch");
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (entries[r].size() != cols) throw DimensionError("column count mismatch in row " + std::to_string(r));
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = Scalar::parse(f, entries[r][c]);
    }
    return m;
}

Matrix Matrix::from_ints(const Field& f, std::size_t rows, std::size_t cols,
                         std::initializer_list<long> row_major)
{
    if (row_major.size() != rows * cols) throw DimensionError("entry count mismatch");
    Matrix m(f, rows, cols);
    std::size_t k = 0;
    for (long v : row_major) m.data_[k++] = Scalar(f, v);
    return m;
}

const Scalar& Matrix::at(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
    return (*this)(r, c);
}

bool Matrix::is_zero() const
{
    for (const auto& x : data_)
        if (!x.is_zero()) return false;
    return true;
}

Matrix Matrix::transpose() const
{
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::column(std::size_t c) const
{
    return select_columns({c});
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& cols) const
{
    Matrix out(field_, rows_, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= cols_) throw std::out_of_range("column index out of range");
        for (std::size_t r = 0; r < rows_; ++r) out(r, j) = (*this)(r, cols[j]);
    }
    return out;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const
{
    Matrix out(field_, rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] >= rows_) throw std::out_of_range("row index out of range");
        for (std::size_t c = 0; c < cols_; ++c) out(i, c) = (*this)(rows[i], c);
    }
    return out;
}

void Matrix::set_column(std::size_t c, const Matrix& v)
{
    if (v.rows_ != rows_ || v.cols_ != 1 || c >= cols_) throw DimensionError("set_column shape");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v(r, 0);
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source, const Scalar& k)
{
    if (k.is_zero()) return;
    for (std::size_t c = 0; c < cols_; ++c) {
        const Scalar& s = (*this)(source, c);
        if (!s.is_zero()) (*this)(target, c) += k * s;
    }
}

void Matrix::add_col_multiple(std::size_t target, std::size_t source, const Scalar& k)
{
    if (k.is_zero()) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        const Scalar& s = (*this)(r, source);
        if (!s.is_zero()) (*this)(r, target) += k * s;
    }
}

void Matrix::scale_row(std::size_t r, const Scalar& k)
{
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) *= k;
}

void Matrix::scale_col(std::size_t c, const Scalar& k)
{
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) *= k;
}

std::string Matrix::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ' ';
            os << (*this)(r, c).str();
        }
    }
    os << "] (" << rows_ << 'x' << cols_ << ')';
    return os.str();
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix mat_mul(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    if (!(a.field() == b.field())) throw FieldMismatch("mat_mul: field mismatch");
    Matrix out(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Scalar& y = b(k, j);
                if (!y.is_zero()) out(i, j) += x * y;
            }
        }
    return out;
}

Matrix mat_add(const Matrix& a, const Matrix& b)
{
    if (!a.same_shape(b)) throw DimensionError("mat_add: shape mismatch");
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
    return out;
}

Matrix mat_sub(const Matrix& a, const Matrix& b)
{
    if (!a.same_shape(b)) throw DimensionError("mat_sub: shape mismatch");
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) -= b(r, c);
    return out;
}

Matrix mat_scale(const Matrix& a, const Scalar& k)
{
    Matrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r) out.scale_row(r, k);
    return out;
}

Matrix mat_inverse(const Matrix& a)
{
    if (a.rows() != a.cols()) throw DimensionError("mat_inverse: not square");
    const std::size_t n = a.rows();
    Matrix m = a;
    Matrix inv = Matrix::identity(a.field(), n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) throw SingularMatrix("mat_inverse: singular matrix");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(m(piv, c), m(col, c));
                std::swap(inv(piv, c), inv(col, c));
            }
        }
        Scalar s = m(col, col).inverse();
        m.scale_row(col, s);
        inv.scale_row(col, s);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m(r, col).is_zero()) continue;
            Scalar k = -m(r, col);
            m.add_row_multiple(r, col, k);
            inv.add_row_multiple(r, col, k);
        }
    }
    return inv;
}

namespace {

// Row-reduces a copy; returns the pivot column of each pivot row.
std::vector<std::size_t> echelon_pivots(Matrix m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
        Scalar s = m(row, col).inverse();
        for (std::size_t r = row + 1; r < m.rows(); ++r)
            if (!m(r, col).is_zero()) m.add_row_multiple(r, row, -(m(r, col) * s));
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const Matrix& a)
{
    return echelon_pivots(a).size();
}

std::vector<std::size_t> pivot_columns(const Matrix& a)
{
    return echelon_pivots(a);
}

std::optional<Matrix> solve_exact(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows()) throw DimensionError("solve_exact: row mismatch");
    const std::size_t n = a.cols();
    // augmented elimination on [a | b]
    Matrix m(a.field(), a.rows(), n + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < n; ++c) m(r, c) = a(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) m(r, n + c) = b(r, c);
    }
    std::vector<std::size_t> piv_row_of_col(n, a.rows());
    std::size_t row = 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) throw DimensionError("solve_exact: matrix lacks full column rank");
        if (piv != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
        m.scale_row(row, m(row, col).inverse());
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (r != row && !m(r, col).is_zero()) m.add_row_multiple(r, row, -m(r, col));
        piv_row_of_col[col] = row;
        ++row;
    }
    for (std::size_t r = row; r < m.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            if (!m(r, n + c).is_zero()) return std::nullopt;
    Matrix x(a.field(), n, b.cols());
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t c = 0; c < b.cols(); ++c) x(col, c) = m(piv_row_of_col[col], n + c);
    return x;
}

std::optional<std::vector<std::size_t>> barcode_form_columns(const Matrix& a)
{
    std::vector<std::size_t> c;
    bool seen_zero_row = false;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        std::optional<std::size_t> hit;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a(r, j);
            if (x.is_zero()) continue;
            if (!x.is_one() || hit) return std::nullopt;
            hit = j;
        }
        if (!hit) {
            seen_zero_row = true;
            continue;
        }
        if (seen_zero_row) return std::nullopt;
        if (!c.empty() && *hit <= c.back()) return std::nullopt;
        c.push_back(*hit);
    }
    return c;
}

}  // namespace laddermod

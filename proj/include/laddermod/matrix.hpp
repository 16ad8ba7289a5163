#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "laddermod/field.hpp"

namespace laddermod {

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrix : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Dense row-major matrix over a Field. Zero rows or zero columns are allowed.
class Matrix {
public:
    Matrix() : field_(Field::rational()) {}
    Matrix(const Field& f, std::size_t rows, std::size_t cols);

    static Matrix identity(const Field& f, std::size_t n);
    // Rows of integer/fraction literals, e.g. {{"1/2", "-1/2"}, {"0", "1"}}.
    static Matrix parse(const Field& f, std::size_t rows, std::size_t cols,
                        const std::vector<std::vector<std::string>>& entries);
    static Matrix from_ints(const Field& f, std::size_t rows, std::size_t cols,
                            std::initializer_list<long> row_major);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty_shape() const { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const;

    bool is_zero() const;
    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    Matrix transpose() const;
    Matrix column(std::size_t c) const;
    Matrix select_columns(const std::vector<std::size_t>& cols) const;
    Matrix select_rows(const std::vector<std::size_t>& rows) const;
    void set_column(std::size_t c, const Matrix& v);

    void add_row_multiple(std::size_t target, std::size_t source, const Scalar& k);
    void add_col_multiple(std::size_t target, std::size_t source, const Scalar& k);
    void scale_row(std::size_t r, const Scalar& k);
    void scale_col(std::size_t c, const Scalar& k);

    std::string str() const;

    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    Field field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_scale(const Matrix& a, const Scalar& k);
Matrix mat_inverse(const Matrix& a);

std::size_t rank(const Matrix& a);

// Indices of a maximal set of linearly independent columns (greedy, left to right).
std::vector<std::size_t> pivot_columns(const Matrix& a);

// Solve a * x = b where a has full column rank and b lies in its column space.
// Returns nullopt if b is not in the column space.
std::optional<Matrix> solve_exact(const Matrix& a, const Matrix& b);

// c(i) (0-based) for every nonzero row, if a is in barcode form.
std::optional<std::vector<std::size_t>> barcode_form_columns(const Matrix& a);
inline bool is_barcode_form(const Matrix& a) { return barcode_form_columns(a).has_value(); }

}  // namespace laddermod

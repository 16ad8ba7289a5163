#pragma once

#include <vector>

#include "laddermod/matrix.hpp"

namespace laddermod::detail {

using Vec = std::vector<Scalar>;

Vec column_of(const Matrix& m, std::size_t c);
Matrix as_column(const Field& f, const Vec& v);
Vec mat_vec(const Matrix& a, const Vec& v);

// Incremental span of accepted vectors, with coefficient tracking.
class SpanBuilder {
public:
    SpanBuilder(const Field& f, std::size_t dim) : field_(f), dim_(dim) {}

    struct Reduced {
        Vec residual;
        Vec coefs;  // v = sum coefs[j] * accepted[j] + residual
        bool in_span() const;
    };

    Reduced reduce(const Vec& v) const;
    // returns true and appends if v is independent of the accepted vectors
    bool try_add(const Vec& v);
    std::size_t size() const { return count_; }

private:
    Field field_;
    std::size_t dim_;
    std::size_t count_ = 0;
    struct Row {
        Vec v;
        Vec t;  // v = sum t[j] * accepted[j]
        std::size_t pivot;
    };
    std::vector<Row> rows_;
};

}  // namespace laddermod::detail

#include "span.hpp"

namespace laddermod::detail {

Vec column_of(const Matrix& m, std::size_t c)
{
    Vec v;
    v.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) v.push_back(m(r, c));
    return v;
}

Matrix as_column(const Field& f, const Vec& v)
{
    Matrix m(f, v.size(), 1);
    for (std::size_t r = 0; r < v.size(); ++r) m(r, 0) = v[r];
    return m;
}

Vec mat_vec(const Matrix& a, const Vec& v)
{
    if (a.cols() != v.size()) throw DimensionError("mat_vec shape");
    Vec out(a.rows(), Scalar::zero(a.field()));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (!a(r, c).is_zero() && !v[c].is_zero()) out[r] += a(r, c) * v[c];
    return out;
}

bool SpanBuilder::Reduced::in_span() const
{
    for (const auto& x : residual)
        if (!x.is_zero()) return false;
    return true;
}

SpanBuilder::Reduced SpanBuilder::reduce(const Vec& v) const
{
    if (v.size() != dim_) throw DimensionError("SpanBuilder: vector size");
    Reduced out{v, Vec(count_, Scalar::zero(field_))};
    for (const Row& row : rows_) {
        const Scalar& x = out.residual[row.pivot];
        if (x.is_zero()) continue;
        Scalar f = x / row.v[row.pivot];
        for (std::size_t i = 0; i < dim_; ++i)
            if (!row.v[i].is_zero()) out.residual[i] -= f * row.v[i];
        for (std::size_t j = 0; j < row.t.size(); ++j)
            if (!row.t[j].is_zero()) out.coefs[j] += f * row.t[j];
    }
    return out;
}

bool SpanBuilder::try_add(const Vec& v)
{
    Reduced red = reduce(v);
    std::size_t pivot = dim_;
    for (std::size_t i = 0; i < dim_; ++i)
        if (!red.residual[i].is_zero()) {
            pivot = i;
            break;
        }
    if (pivot == dim_) return false;
    Row row{std::move(red.residual), Vec(count_ + 1, Scalar::zero(field_)), pivot};
    for (std::size_t j = 0; j < count_; ++j) row.t[j] = -red.coefs[j];
    row.t[count_] = Scalar::one(field_);
    for (Row& r : rows_) r.t.resize(count_ + 1, Scalar::zero(field_));
    rows_.push_back(std::move(row));
    ++count_;
    return true;
}

}  // namespace laddermod::detail

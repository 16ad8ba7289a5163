#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace lmtest {

Matrix schoolbook_mul(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("schoolbook_mul: shapes");
    Matrix out(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Scalar acc = Scalar::zero(a.field());
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    return out;
}

std::size_t oracle_rank(const Matrix& m)
{
    // plain row echelon on a copy of the entries
    std::vector<std::vector<Scalar>> rows(m.rows(), std::vector<Scalar>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < m.cols(); ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

bool oracle_overlap(const Interval& i, const Interval& j)
{
    return i.a <= j.a && j.a <= i.b && i.b <= j.b;
}

bool oracle_strictly_inside(const Interval& i, const Interval& j)
{
    return j.a < i.a && i.b < j.b;
}

Index oracle_nestedness(const std::vector<Interval>& bars)
{
    Index best = -1;
    for (const auto& i : bars)
        for (const auto& j : bars)
            if (oracle_strictly_inside(i, j)) {
                Index gap = std::min(i.a - j.a, j.b - i.b);
                if (best < 0 || gap < best) best = gap;
            }
    return best;
}

std::size_t oracle_bars_containing(const std::vector<Interval>& bars, Index i, Index j)
{
    return static_cast<std::size_t>(
        std::count_if(bars.begin(), bars.end(), [&](const Interval& b) { return b.a <= i && j <= b.b; }));
}

mpq_class brute_bottleneck(const std::vector<Interval>& x, const std::vector<Interval>& y)
{
    auto half = [](const Interval& i) { return mpq_class(i.b - i.a, 2); };
    auto pair_cost = [](const Interval& i, const Interval& j) {
        return mpq_class(static_cast<long>(std::max(std::llabs(i.a - j.a), std::llabs(i.b - j.b))));
    };
    std::vector<bool> used(y.size(), false);
    mpq_class best = -1;
    std::function<void(std::size_t, mpq_class)> go = [&](std::size_t k, mpq_class cur) {
        if (best >= 0 && cur >= best) return;
        if (k == x.size()) {
            for (std::size_t j = 0; j < y.size(); ++j)
                if (!used[j]) cur = std::max(cur, half(y[j]));
            if (best < 0 || cur < best) best = cur;
            return;
        }
        go(k + 1, std::max(cur, half(x[k])));
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (used[j]) continue;
            used[j] = true;
            go(k + 1, std::max(cur, pair_cost(x[k], y[j])));
            used[j] = false;
        }
    };
    go(0, mpq_class(0));
    best.canonicalize();
    return best;
}

std::vector<Interval> expand(const Barcode& b)
{
    std::vector<Interval> out;
    for (const auto& [bar, mu] : b)
        for (std::size_t k = 0; k < mu; ++k) out.push_back(bar);
    return out;
}

}  // namespace lmtest

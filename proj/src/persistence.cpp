#include "laddermod/persistence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "span.hpp"

namespace laddermod {

using detail::Vec;

Interval::Interval(Index birth, Index death) : a(birth), b(death)
{
    if (a > b) throw std::invalid_argument("interval with birth after death: [" + std::to_string(a) + "," +
                                           std::to_string(b) + "]");
}

std::string Interval::str() const
{
    return "[" + std::to_string(a) + "," + std::to_string(b) + "]";
}

bool lex_before(const Interval& i, const Interval& j)
{
    return i.a < j.a || (i.a == j.a && i.b < j.b);
}

bool overlap_precedes(const Interval& i, const Interval& j)
{
    return i.a <= j.a && j.a <= i.b && i.b <= j.b;
}

bool strictly_nested(const Interval& i, const Interval& j)
{
    return j.a < i.a && i.a <= i.b && i.b < j.b;
}

std::optional<Interval> intersect(const Interval& i, const Interval& j)
{
    Index lo = std::max(i.a, j.a), hi = std::min(i.b, j.b);
    if (lo > hi) return std::nullopt;
    return Interval(lo, hi);
}

Barcode::Barcode(std::initializer_list<Interval> bars)
{
    for (const auto& b : bars) add(b);
}

void Barcode::add(const Interval& bar, std::size_t mult)
{
    if (mult) bars_[bar] += mult;
}

void Barcode::remove(const Interval& bar, std::size_t mult)
{
    auto it = bars_.find(bar);
    if (it == bars_.end() || it->second < mult) throw std::invalid_argument("remove: bar not present " + bar.str());
    it->second -= mult;
    if (it->second == 0) bars_.erase(it);
}

std::size_t Barcode::multiplicity(const Interval& bar) const
{
    auto it = bars_.find(bar);
    return it == bars_.end() ? 0 : it->second;
}

std::size_t Barcode::total() const
{
    std::size_t n = 0;
    for (const auto& [bar, mu] : bars_) n += mu;
    return n;
}

std::size_t Barcode::rank(Index i, Index j) const
{
    std::size_t n = 0;
    for (const auto& [bar, mu] : bars_)
        if (bar.a <= i && j <= bar.b) n += mu;
    return n;
}

Barcode Barcode::shifted(Index delta) const
{
    Barcode out;
    for (const auto& [bar, mu] : bars_) out.add(bar.shifted(delta), mu);
    return out;
}

std::string Barcode::str() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [bar, mu] : bars_) {
        if (!first) os << ' ';
        first = false;
        os << bar.str();
        if (mu > 1) os << 'x' << mu;
    }
    return os.str();
}

Index Nestedness::value() const
{
    if (!v_) throw std::logic_error("nestedness is infinite");
    return *v_;
}

std::string Nestedness::str() const
{
    return v_ ? std::to_string(*v_) : std::string("inf");
}

std::strong_ordering operator<=>(const Nestedness& x, const Nestedness& y)
{
    if (x.is_infinite() && y.is_infinite()) return std::strong_ordering::equal;
    if (x.is_infinite()) return std::strong_ordering::greater;
    if (y.is_infinite()) return std::strong_ordering::less;
    return *x.v_ <=> *y.v_;
}

Nestedness nestedness(const Barcode& b)
{
    std::optional<Index> best;
    for (const auto& [inner, m1] : b)
        for (const auto& [outer, m2] : b) {
            if (!strictly_nested(inner, outer)) continue;
            Index d = std::min(std::abs(inner.a - outer.a), std::abs(inner.b - outer.b));
            if (!best || d < *best) best = d;
        }
    return best ? Nestedness(*best) : Nestedness::infinite();
}

PersistenceModule::PersistenceModule(const Field& f, Index origin, std::vector<std::size_t> dims,
                                     std::vector<Matrix> maps)
    : field_(f), origin_(origin), dims_(std::move(dims)), maps_(std::move(maps))
{
    if (dims_.empty()) throw DimensionError("persistence module needs at least one index");
    if (maps_.size() != dims_.size() - 1)
        throw DimensionError("expected " + std::to_string(dims_.size() - 1) + " maps, got " +
                             std::to_string(maps_.size()));
    for (std::size_t k = 0; k < maps_.size(); ++k) {
        const Matrix& a = maps_[k];
        if (a.rows() != dims_[k + 1] || a.cols() != dims_[k])
            throw DimensionError("map into index " + std::to_string(origin_ + Index(k) + 1) + " has shape " +
                                 std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", expected " +
                                 std::to_string(dims_[k + 1]) + "x" + std::to_string(dims_[k]));
        if (!(a.field() == f)) throw FieldMismatch("map field differs from module field");
    }
}

PersistenceModule PersistenceModule::zero(const Field& f, Index origin, Index last)
{
    if (last < origin) throw DimensionError("empty grid");
    std::size_t n = static_cast<std::size_t>(last - origin + 1);
    std::vector<Matrix> maps(n - 1, Matrix(f, 0, 0));
    return PersistenceModule(f, origin, std::vector<std::size_t>(n, 0), std::move(maps));
}

std::size_t PersistenceModule::dim(Index t) const
{
    return in_grid(t) ? dims_[static_cast<std::size_t>(t - origin_)] : 0;
}

Matrix PersistenceModule::structure_map(Index t) const
{
    if (in_grid(t) && in_grid(t - 1)) return maps_[static_cast<std::size_t>(t - origin_ - 1)];
    return Matrix(field_, dim(t), dim(t - 1));
}

Matrix inner_morphism_matrix(const PersistenceModule& m, Index i, Index j)
{
    if (i > j || !m.in_grid(i) || !m.in_grid(j))
        throw std::out_of_range("inner morphism indices out of range: " + std::to_string(i) + "," +
                                std::to_string(j));
    Matrix acc = Matrix::identity(m.field(), m.dim(i));
    for (Index t = i + 1; t <= j; ++t) acc = mat_mul(m.structure_map(t), acc);
    return acc;
}

Matrix inner_map(const PersistenceModule& m, Index i, Index j)
{
    if (i > j) throw std::out_of_range("inner map with i > j");
    if (m.in_grid(i) && m.in_grid(j)) return inner_morphism_matrix(m, i, j);
    return Matrix(m.field(), m.dim(j), m.dim(i));
}

PersistenceModule shift(const PersistenceModule& m, Index delta)
{
    return PersistenceModule(m.field(), m.origin() - delta, m.dims(), m.maps());
}

PersistenceModule extend(const PersistenceModule& m, Index lo, Index hi)
{
    if (lo > m.origin() || hi < m.last()) throw DimensionError("extend: target grid must contain the module grid");
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;
    for (Index t = lo; t <= hi; ++t) {
        dims.push_back(m.dim(t));
        if (t > lo) maps.push_back(m.structure_map(t));
    }
    return PersistenceModule(m.field(), lo, std::move(dims), std::move(maps));
}

bool equivalent(const PersistenceModule& x, const PersistenceModule& y)
{
    if (!(x.field() == y.field())) return false;
    Index lo = std::min(x.origin(), y.origin()), hi = std::max(x.last(), y.last());
    return extend(x, lo, hi) == extend(y, lo, hi);
}

PersistenceModule apply_basis_change(const PersistenceModule& m, const BasisChange& g)
{
    if (g.origin != m.origin() || g.g.size() != m.dims().size())
        throw DimensionError("basis change grid differs from module grid");
    std::vector<Matrix> maps;
    std::vector<Matrix> inv;
    for (std::size_t k = 0; k < g.g.size(); ++k) {
        if (g.g[k].rows() != m.dims()[k] || g.g[k].cols() != m.dims()[k])
            throw DimensionError("basis change component has wrong shape");
        inv.push_back(mat_inverse(g.g[k]));
    }
    for (std::size_t k = 0; k < m.maps().size(); ++k)
        maps.push_back(mat_mul(mat_mul(g.g[k + 1], m.maps()[k]), inv[k]));
    return PersistenceModule(m.field(), m.origin(), m.dims(), std::move(maps));
}

std::size_t BarGenerator::position(Index t) const
{
    if (!bar.contains(t)) throw std::out_of_range("generator " + label() + " is not alive at " + std::to_string(t));
    return positions[static_cast<std::size_t>(t - bar.a)];
}

std::string BarGenerator::label() const
{
    return bar.str() + "#" + std::to_string(slot);
}

Matrix BarcodeBasis::vector(std::size_t k, Index t) const
{
    const BarGenerator& gen = generators.at(k);
    return basis.at(static_cast<std::size_t>(t - origin())).column(gen.position(t));
}

std::vector<std::size_t> BarcodeBasis::alive_at(Index t) const
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < generators.size(); ++k)
        if (generators[k].bar.contains(t)) out.push_back(k);
    return out;
}

namespace {

struct Chain {
    Index birth;
    std::size_t birth_pos;
    Index death = 0;
    std::vector<Vec> vecs;  // vecs[s - birth]
};

Vec unit(const Field& f, std::size_t n, std::size_t i)
{
    Vec v(n, Scalar::zero(f));
    v[i] = Scalar::one(f);
    return v;
}

}  // namespace

BarcodeBasis reduce_to_barcode_basis(const PersistenceModule& m)
{
    const Field& f = m.field();
    const Index origin = m.origin();
    std::vector<Chain> chains;
    std::vector<std::vector<std::size_t>> orders(m.dims().size());

    for (std::size_t k = 0; k < m.dim(origin); ++k) {
        chains.push_back(Chain{origin, k, 0, {unit(f, m.dim(origin), k)}});
        orders[0].push_back(k);
    }

    for (Index t = origin; t <= m.last(); ++t) {
        const auto& order = orders[static_cast<std::size_t>(t - origin)];
        if (t == m.last()) {
            for (std::size_t id : order) chains[id].death = t;
            break;
        }
        const Matrix a = m.structure_map(t + 1);
        const std::size_t next_dim = m.dim(t + 1);

        std::vector<std::size_t> elder = order;
        std::sort(elder.begin(), elder.end(), [&](std::size_t x, std::size_t y) {
            return std::tie(chains[x].birth, chains[x].birth_pos) < std::tie(chains[y].birth, chains[y].birth_pos);
        });

        detail::SpanBuilder span(f, next_dim);
        std::vector<std::size_t> accepted;
        std::vector<bool> survives(chains.size(), false);
        std::vector<Vec> images(chains.size());
        for (std::size_t id : elder) {
            Vec img = detail::mat_vec(a, chains[id].vecs.back());
            auto red = span.reduce(img);
            if (red.in_span()) {
                Chain& c = chains[id];
                for (std::size_t j = 0; j < accepted.size(); ++j) {
                    if (red.coefs[j].is_zero()) continue;
                    const Chain& elder_chain = chains[accepted[j]];
                    for (Index s = c.birth; s <= t; ++s) {
                        const Vec& w = elder_chain.vecs[static_cast<std::size_t>(s - elder_chain.birth)];
                        Vec& v = c.vecs[static_cast<std::size_t>(s - c.birth)];
                        for (std::size_t i = 0; i < v.size(); ++i)
                            if (!w[i].is_zero()) v[i] -= red.coefs[j] * w[i];
                    }
                }
                c.death = t;
            } else {
                span.try_add(img);
                accepted.push_back(id);
                survives[id] = true;
                images[id] = std::move(img);
            }
        }

        auto& next = orders[static_cast<std::size_t>(t + 1 - origin)];
        for (std::size_t id : order)
            if (survives[id]) {
                chains[id].vecs.push_back(std::move(images[id]));
                next.push_back(id);
            }
        for (std::size_t i = 0; i < next_dim && span.size() < next_dim; ++i) {
            Vec e = unit(f, next_dim, i);
            if (span.try_add(e)) {
                chains.push_back(Chain{t + 1, next.size(), 0, {e}});
                next.push_back(chains.size() - 1);
            }
        }
    }

    BarcodeBasis out;
    out.change.origin = origin;
    for (std::size_t k = 0; k < orders.size(); ++k) {
        Index t = origin + static_cast<Index>(k);
        Matrix b(f, m.dim(t), m.dim(t));
        for (std::size_t pos = 0; pos < orders[k].size(); ++pos) {
            const Chain& c = chains[orders[k][pos]];
            const Vec& v = c.vecs[static_cast<std::size_t>(t - c.birth)];
            for (std::size_t r = 0; r < v.size(); ++r) b(r, pos) = v[r];
        }
        out.change.g.push_back(mat_inverse(b));
        out.basis.push_back(std::move(b));
    }

    std::vector<std::size_t> ids(chains.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::sort(ids.begin(), ids.end(), [&](std::size_t x, std::size_t y) {
        return std::tie(chains[x].birth, chains[x].death, chains[x].birth_pos) <
               std::tie(chains[y].birth, chains[y].death, chains[y].birth_pos);
    });
    std::vector<std::vector<std::size_t>> pos_of(orders.size());
    for (std::size_t k = 0; k < orders.size(); ++k) {
        pos_of[k].assign(chains.size(), 0);
        for (std::size_t p = 0; p < orders[k].size(); ++p) pos_of[k][orders[k][p]] = p;
    }
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const Chain& c = chains[ids[i]];
        BarGenerator gen;
        gen.bar = Interval(c.birth, c.death);
        gen.slot = (i > 0 && out.generators.back().bar == gen.bar) ? out.generators.back().slot + 1 : 0;
        for (Index t = c.birth; t <= c.death; ++t) gen.positions.push_back(pos_of[static_cast<std::size_t>(t - origin)][ids[i]]);
        out.barcode.add(gen.bar);
        out.generators.push_back(std::move(gen));
    }
    return out;
}

BarcodeBasis rebuild_basis(const PersistenceModule& m, const BarcodeBasis& layout,
                           const std::vector<std::vector<Matrix>>& vectors)
{
    if (vectors.size() != layout.generators.size()) throw DimensionError("rebuild_basis: generator count");
    BarcodeBasis out = layout;
    for (std::size_t k = 0; k < layout.basis.size(); ++k) {
        Index t = layout.origin() + static_cast<Index>(k);
        Matrix b(m.field(), m.dim(t), m.dim(t));
        for (std::size_t g = 0; g < layout.generators.size(); ++g) {
            const BarGenerator& gen = layout.generators[g];
            if (!gen.bar.contains(t)) continue;
            b.set_column(gen.position(t), vectors[g][static_cast<std::size_t>(t - gen.bar.a)]);
        }
        out.change.g[k] = mat_inverse(b);
        out.basis[k] = std::move(b);
    }
    return out;
}

std::optional<std::string> check_barcode_basis(const PersistenceModule& m, const BarcodeBasis& basis)
{
    if (basis.origin() != m.origin() || basis.basis.size() != m.dims().size())
        return std::string("basis grid differs from module grid");
    for (Index t = m.origin(); t <= m.last(); ++t) {
        std::size_t k = static_cast<std::size_t>(t - m.origin());
        const Matrix& b = basis.basis[k];
        if (b.rows() != m.dim(t) || b.cols() != m.dim(t)) return "basis at " + std::to_string(t) + " has wrong shape";
        if (!(mat_mul(basis.change.g[k], b) == Matrix::identity(m.field(), m.dim(t))))
            return "g_t is not the inverse of B_t at " + std::to_string(t);
        std::vector<bool> used(m.dim(t), false);
        for (std::size_t g : basis.alive_at(t)) {
            std::size_t p = basis.generators[g].position(t);
            if (p >= used.size() || used[p]) return "positions at " + std::to_string(t) + " are not a bijection";
            used[p] = true;
        }
        if (std::find(used.begin(), used.end(), false) != used.end())
            return "positions at " + std::to_string(t) + " do not cover the space";
    }
    Barcode seen;
    for (const auto& gen : basis.generators) seen.add(gen.bar);
    if (!(seen == basis.barcode)) return std::string("barcode does not match the generators");

    for (Index t = m.origin() + 1; t <= m.last(); ++t) {
        std::size_t k = static_cast<std::size_t>(t - m.origin());
        Matrix a = mat_mul(mat_mul(basis.change.g[k], m.structure_map(t)), basis.basis[k - 1]);
        if (!is_barcode_form(a)) return "map into " + std::to_string(t) + " is not in barcode form";
        for (const auto& gen : basis.generators) {
            if (gen.bar.contains(t - 1)) {
                std::size_t col = gen.position(t - 1);
                for (std::size_t r = 0; r < a.rows(); ++r) {
                    bool expect_one = gen.bar.contains(t) && r == gen.position(t);
                    if (expect_one ? !a(r, col).is_one() : !a(r, col).is_zero())
                        return "generator " + gen.label() + " does not chain across " + std::to_string(t - 1) + "->" +
                               std::to_string(t);
                }
            }
            if (gen.bar.a == t) {
                std::size_t row = gen.position(t);
                for (std::size_t c = 0; c < a.cols(); ++c)
                    if (!a(row, c).is_zero()) return "generator " + gen.label() + " is hit at its birth";
            }
        }
    }
    return std::nullopt;
}

}  // namespace laddermod

#include "laddermod/morphism.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace laddermod {

namespace {

std::pair<Index, Index> union_grid(const PersistenceModule& x, const PersistenceModule& y)
{
    return {std::min(x.origin(), y.origin()), std::max(x.last(), y.last())};
}

// B_t of a basis, or the empty matrix outside the basis grid
const Matrix* basis_at(const BarcodeBasis& b, Index t)
{
    Index k = t - b.origin();
    if (k < 0 || k >= static_cast<Index>(b.basis.size())) return nullptr;
    return &b.basis[static_cast<std::size_t>(k)];
}

const Matrix* change_at(const BarcodeBasis& b, Index t)
{
    Index k = t - b.origin();
    if (k < 0 || k >= static_cast<Index>(b.change.g.size())) return nullptr;
    return &b.change.g[static_cast<std::size_t>(k)];
}

void check_basis_fits(const PersistenceModule& m, const BarcodeBasis& b, const char* which)
{
    Index lo = std::min(m.origin(), b.origin());
    Index hi = std::max(m.last(), b.origin() + static_cast<Index>(b.basis.size()) - 1);
    for (Index t = lo; t <= hi; ++t) {
        const Matrix* bt = basis_at(b, t);
        std::size_t n = bt ? bt->rows() : 0;
        if (n != m.dim(t))
            throw DimensionError(std::string(which) + " basis does not fit its module at index " + std::to_string(t));
    }
    for (const auto& gen : b.generators)
        if (gen.bar.a < m.origin() || gen.bar.b > m.last())
            throw DimensionError(std::string(which) + " basis generator outside the module grid");
}

bool same_generators(const std::vector<BarGenerator>& x, const std::vector<BarGenerator>& y)
{
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i].bar == y[i].bar) || x[i].slot != y[i].slot) return false;
    return true;
}

}  // namespace

LadderModule::LadderModule(const PersistenceModule& dom, const PersistenceModule& cod, std::vector<Matrix> comps)
    : dom_(dom), cod_(cod), comps_(std::move(comps))
{
    if (!(dom.field() == cod.field())) throw FieldMismatch("ladder: domain and codomain fields differ");
    auto [lo, hi] = union_grid(dom, cod);
    dom_ = extend(dom, lo, hi);
    cod_ = extend(cod, lo, hi);
    if (comps_.size() != static_cast<std::size_t>(hi - lo + 1))
        throw DimensionError("ladder: expected " + std::to_string(hi - lo + 1) + " components, got " +
                             std::to_string(comps_.size()));
    for (Index t = lo; t <= hi; ++t) {
        const Matrix& c = comps_[static_cast<std::size_t>(t - lo)];
        if (c.rows() != cod_.dim(t) || c.cols() != dom_.dim(t))
            throw DimensionError("ladder: component " + std::to_string(t) + " has shape " + std::to_string(c.rows()) +
                                 "x" + std::to_string(c.cols()) + ", expected " + std::to_string(cod_.dim(t)) + "x" +
                                 std::to_string(dom_.dim(t)));
        if (!(c.field() == dom.field())) throw FieldMismatch("ladder: component field differs");
    }
}

Matrix LadderModule::component(Index t) const
{
    if (t >= origin() && t <= last()) return comps_[static_cast<std::size_t>(t - origin())];
    return Matrix(field(), cod_.dim(t), dom_.dim(t));
}

LadderModule make_ladder(const PersistenceModule& dom, const PersistenceModule& cod, Index lo,
                         std::vector<Matrix> comps)
{
    auto [ulo, uhi] = union_grid(dom, cod);
    Index hi = lo + static_cast<Index>(comps.size()) - 1;
    for (Index t = lo; t <= hi; ++t) {
        if (t >= ulo && t <= uhi) continue;
        if (!comps[static_cast<std::size_t>(t - lo)].empty_shape())
            throw DimensionError("ladder: component " + std::to_string(t) + " lies outside both grids");
    }
    std::vector<Matrix> out;
    for (Index t = ulo; t <= uhi; ++t) {
        if (t >= lo && t <= hi) {
            out.push_back(comps[static_cast<std::size_t>(t - lo)]);
        } else if (dom.dim(t) == 0 || cod.dim(t) == 0) {
            out.emplace_back(dom.field(), cod.dim(t), dom.dim(t));
        } else {
            throw DimensionError("ladder: missing component " + std::to_string(t));
        }
    }
    return LadderModule(dom, cod, std::move(out));
}

std::string SquareViolation::str() const
{
    return "square " + std::to_string(index - 1) + "->" + std::to_string(index) + " does not commute";
}

std::optional<SquareViolation> validate_ladder(const LadderModule& m)
{
    for (Index t = m.origin() + 1; t <= m.last(); ++t) {
        Matrix down_then_right = mat_mul(m.component(t), m.dom().structure_map(t));
        Matrix right_then_down = mat_mul(m.cod().structure_map(t), m.component(t - 1));
        if (!(down_then_right == right_then_down)) return SquareViolation{t};
    }
    return std::nullopt;
}

LadderModule zero_morphism(const PersistenceModule& dom, const PersistenceModule& cod)
{
    auto [lo, hi] = union_grid(dom, cod);
    std::vector<Matrix> comps;
    for (Index t = lo; t <= hi; ++t) comps.emplace_back(dom.field(), cod.dim(t), dom.dim(t));
    return LadderModule(dom, cod, std::move(comps));
}

LadderModule identity_morphism(const PersistenceModule& m)
{
    std::vector<Matrix> comps;
    for (Index t = m.origin(); t <= m.last(); ++t) comps.push_back(Matrix::identity(m.field(), m.dim(t)));
    return LadderModule(m, m, std::move(comps));
}

LadderModule compose(const LadderModule& outer, const LadderModule& inner)
{
    if (!equivalent(inner.cod(), outer.dom()))
        throw DimensionError("compose: codomain of the inner morphism differs from domain of the outer");
    auto [lo, hi] = union_grid(inner.dom(), outer.cod());
    std::vector<Matrix> comps;
    for (Index t = lo; t <= hi; ++t) comps.push_back(mat_mul(outer.component(t), inner.component(t)));
    return LadderModule(inner.dom(), outer.cod(), std::move(comps));
}

LadderModule shift_ladder(const LadderModule& m, Index delta)
{
    return LadderModule(shift(m.dom(), delta), shift(m.cod(), delta), m.comps());
}

LadderModule inner_shift_morphism(const PersistenceModule& m, Index s)
{
    if (s < 0) throw std::invalid_argument("inner shift morphism needs s >= 0");
    PersistenceModule target = shift(m, s);
    auto [lo, hi] = union_grid(m, target);
    std::vector<Matrix> comps;
    for (Index t = lo; t <= hi; ++t) comps.push_back(inner_map(m, t, t + s));
    return LadderModule(m, target, std::move(comps));
}

bool ladder_equal(const LadderModule& x, const LadderModule& y)
{
    if (!equivalent(x.dom(), y.dom()) || !equivalent(x.cod(), y.cod())) return false;
    Index lo = std::min(x.origin(), y.origin()), hi = std::max(x.last(), y.last());
    for (Index t = lo; t <= hi; ++t)
        if (!(x.component(t) == y.component(t))) return false;
    return true;
}

std::string MorphismMatrix::str() const
{
    std::ostringstream os;
    os << "cols:";
    for (const auto& g : col_gens) os << ' ' << g.label();
    os << '\n';
    for (std::size_t r = 0; r < row_gens.size(); ++r) {
        os << row_gens[r].label() << ':';
        for (std::size_t c = 0; c < col_gens.size(); ++c) os << ' ' << entries(r, c).str();
        os << '\n';
    }
    return os.str();
}

MorphismMatrix to_single_matrix(const LadderModule& m, const BarcodeBasis& dom_basis, const BarcodeBasis& cod_basis)
{
    check_basis_fits(m.dom(), dom_basis, "domain");
    check_basis_fits(m.cod(), cod_basis, "codomain");
    MorphismMatrix mm{cod_basis.generators, dom_basis.generators,
                      Matrix(m.field(), cod_basis.generators.size(), dom_basis.generators.size())};
    // the coefficient of x_K in Phi(x_J) is read at the birth of J
    std::map<Index, Matrix> at_birth;
    for (std::size_t c = 0; c < mm.col_gens.size(); ++c) {
        Index a = mm.col_gens[c].bar.a;
        if (m.cod().dim(a) == 0) continue;
        auto it = at_birth.find(a);
        if (it == at_birth.end()) {
            Matrix local = mat_mul(mat_mul(*change_at(cod_basis, a), m.component(a)), *basis_at(dom_basis, a));
            it = at_birth.emplace(a, std::move(local)).first;
        }
        std::size_t col = mm.col_gens[c].position(a);
        for (std::size_t r = 0; r < mm.row_gens.size(); ++r) {
            const BarGenerator& k = mm.row_gens[r];
            if (!k.bar.contains(a)) continue;
            mm.entries(r, c) = it->second(k.position(a), col);
        }
    }
    return mm;
}

LadderModule from_single_matrix(const MorphismMatrix& mm, const PersistenceModule& dom, const PersistenceModule& cod,
                                const BarcodeBasis& dom_basis, const BarcodeBasis& cod_basis)
{
    if (auto bad = support_violation(mm))
        throw SupportViolation("entry (" + mm.row_gens[bad->first].label() + ", " + mm.col_gens[bad->second].label() +
                               ") violates the support constraint");
    if (!same_generators(mm.row_gens, cod_basis.generators) || !same_generators(mm.col_gens, dom_basis.generators))
        throw DimensionError("from_single_matrix: generators differ from the bases");
    check_basis_fits(dom, dom_basis, "domain");
    check_basis_fits(cod, cod_basis, "codomain");
    auto [lo, hi] = union_grid(dom, cod);
    std::vector<Matrix> comps;
    for (Index t = lo; t <= hi; ++t) {
        Matrix c(dom.field(), cod.dim(t), dom.dim(t));
        if (c.empty_shape()) {
            comps.push_back(std::move(c));
            continue;
        }
        for (std::size_t j = 0; j < mm.col_gens.size(); ++j) {
            if (!mm.col_gens[j].bar.contains(t)) continue;
            for (std::size_t k = 0; k < mm.row_gens.size(); ++k) {
                if (!mm.row_gens[k].bar.contains(t)) continue;
                c(mm.row_gens[k].position(t), mm.col_gens[j].position(t)) = mm.entries(k, j);
            }
        }
        comps.push_back(mat_mul(mat_mul(*basis_at(cod_basis, t), c), *change_at(dom_basis, t)));
    }
    return LadderModule(dom, cod, std::move(comps));
}

std::optional<std::pair<std::size_t, std::size_t>> support_violation(const MorphismMatrix& mm)
{
    for (std::size_t c = 0; c < mm.col_gens.size(); ++c)
        for (std::size_t r = 0; r < mm.row_gens.size(); ++r)
            if (!mm.entries(r, c).is_zero() && !overlap_precedes(mm.row_bar(r), mm.col_bar(c)))
                return std::make_pair(r, c);
    return std::nullopt;
}

std::vector<BarGenerator> support(const MorphismMatrix& mm, std::size_t col)
{
    if (col >= mm.col_gens.size()) throw std::out_of_range("support: unknown column generator");
    std::vector<BarGenerator> out;
    for (std::size_t r = 0; r < mm.row_gens.size(); ++r)
        if (!mm.entries(r, col).is_zero()) out.push_back(mm.row_gens[r]);
    return out;
}

MorphismMatrix shift_generators(const MorphismMatrix& mm, Index row_delta, Index col_delta)
{
    MorphismMatrix out = mm;
    for (auto& g : out.row_gens) g.bar = g.bar.shifted(row_delta);
    for (auto& g : out.col_gens) g.bar = g.bar.shifted(col_delta);
    return out;
}

MorphismMatrix compose_single(const MorphismMatrix& outer, const MorphismMatrix& inner)
{
    if (!same_generators(outer.col_gens, inner.row_gens))
        throw std::invalid_argument("compose_single: barcode mismatch between the two matrices");
    MorphismMatrix out{outer.row_gens, inner.col_gens, mat_mul(outer.entries, inner.entries)};
    for (std::size_t r = 0; r < out.row_gens.size(); ++r)
        for (std::size_t c = 0; c < out.col_gens.size(); ++c)
            if (!overlap_precedes(out.row_bar(r), out.col_bar(c))) out.entries(r, c) = Scalar::zero(out.entries.field());
    return out;
}

std::string TriangleFailure::str() const
{
    return "triangle " + family + " fails at t=" + std::to_string(index);
}

Certification check_delta_invertible(const LadderModule& phi, const LadderModule& psi, Index delta)
{
    if (delta < 0) throw std::invalid_argument("delta must be non-negative");
    const PersistenceModule& v = phi.dom();
    const PersistenceModule& w = phi.cod();
    if (!equivalent(psi.dom(), w)) throw DimensionError("inverse candidate: domain differs from codomain of phi");
    if (!equivalent(psi.cod(), shift(v, 2 * delta)))
        throw DimensionError("inverse candidate: codomain differs from the 2*delta shift of the domain of phi");

    InterleavingCertificate cert;
    cert.delta = delta;
    cert.lo = std::min(v.origin(), w.origin()) - 2 * delta;
    cert.hi = std::max(v.last(), w.last());
    for (Index t = cert.lo; t <= cert.hi; ++t) {
        Matrix first = mat_mul(psi.component(t), phi.component(t));
        if (!(first == inner_map(v, t, t + 2 * delta))) return TriangleFailure{"psi.phi", t};
        Matrix second = mat_mul(phi.component(t + 2 * delta), psi.component(t));
        if (!(second == inner_map(w, t, t + 2 * delta))) return TriangleFailure{"phi.psi", t};
        cert.psi_after_phi.push_back(std::move(first));
        cert.phi_after_psi.push_back(std::move(second));
    }
    return cert;
}

std::pair<LadderModule, LadderModule> interleaving_to_invertible(const LadderModule& phi, const LadderModule& psi,
                                                                 Index delta)
{
    return {phi, shift_ladder(psi, delta)};
}

Certification check_interleaving(const LadderModule& phi, const LadderModule& psi, Index delta)
{
    if (delta < 0) throw std::invalid_argument("delta must be non-negative");
    if (!equivalent(shift(psi.dom(), delta), phi.cod()))
        throw DimensionError("interleaving: codomain of phi is not W(delta)");
    if (!equivalent(psi.cod(), shift(phi.dom(), delta)))
        throw DimensionError("interleaving: codomain of psi is not V(delta)");
    auto [p, q] = interleaving_to_invertible(phi, psi, delta);
    Certification r = check_delta_invertible(p, q, delta);
    if (!r) {
        TriangleFailure f = r.error();
        // report in the unshifted indexing of the pair
        if (f.family == "phi.psi") f.index += delta;
        return f;
    }
    InterleavingCertificate cert = r.value();
    cert.interleaving = true;
    return cert;
}

TriangleReport triangle_report(const LadderModule& phi, const LadderModule& psi, Index delta, bool interleaving)
{
    LadderModule p = phi, q = psi;
    if (interleaving) {
        // validates shapes
        check_interleaving(phi, psi, delta);
        std::tie(p, q) = interleaving_to_invertible(phi, psi, delta);
    } else {
        check_delta_invertible(phi, psi, delta);
    }
    const PersistenceModule& v = p.dom();
    const PersistenceModule& w = p.cod();
    TriangleReport rep;
    for (Index t = std::min(v.origin(), w.origin()) - 2 * delta; t <= std::max(v.last(), w.last()); ++t) {
        if (!rep.psi_phi && !(mat_mul(q.component(t), p.component(t)) == inner_map(v, t, t + 2 * delta)))
            rep.psi_phi = t;
        if (!rep.phi_psi && !(mat_mul(p.component(t + 2 * delta), q.component(t)) == inner_map(w, t, t + 2 * delta)))
            rep.phi_psi = interleaving ? t + delta : t;
    }
    return rep;
}

}  // namespace laddermod

#include "laddermod/coarse.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace laddermod {

namespace {

// Sub-module spanned by the chosen generators of a barcode basis, with the
// coordinate projection and inclusion.
struct Part {
    PersistenceModule module;
    LadderModule pr;
    LadderModule inc;
};

Part extract_part(const PersistenceModule& m, const BarcodeBasis& basis, const std::vector<std::size_t>& chosen)
{
    const Field& f = m.field();
    std::vector<std::vector<std::size_t>> rows;  // rows[t - origin]: positions in V_t, increasing
    for (Index t = m.origin(); t <= m.last(); ++t) {
        std::vector<std::size_t> pos;
        for (std::size_t k : chosen)
            if (basis.generators[k].bar.contains(t)) pos.push_back(basis.generators[k].position(t));
        std::sort(pos.begin(), pos.end());
        rows.push_back(std::move(pos));
    }
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps, pr, inc;
    for (Index t = m.origin(); t <= m.last(); ++t) {
        std::size_t k = static_cast<std::size_t>(t - m.origin());
        dims.push_back(rows[k].size());
        // selection matrix S_t : V_t -> part_t in barcode coordinates
        Matrix sel(f, rows[k].size(), m.dim(t));
        for (std::size_t i = 0; i < rows[k].size(); ++i) sel(i, rows[k][i]) = Scalar::one(f);
        pr.push_back(mat_mul(sel, basis.change.g[k]));
        inc.push_back(mat_mul(basis.basis[k], sel.transpose()));
        if (t > m.origin()) {
            Matrix local = mat_mul(mat_mul(basis.change.g[k], m.structure_map(t)), basis.basis[k - 1]);
            maps.push_back(local.select_rows(rows[k]).select_columns(rows[k - 1]));
        }
    }
    PersistenceModule part(f, m.origin(), std::move(dims), std::move(maps));
    LadderModule p(m, part, std::move(pr));
    LadderModule i(part, m, std::move(inc));
    return Part{part, p, i};
}

Index half(Index q)
{
    if (q < 0) throw std::invalid_argument("q must be non-negative");
    if (q % 2 != 0) throw std::invalid_argument("q must be even on the integer grid (refine the grid for odd q)");
    return q / 2;
}

}  // namespace

QSplitting q_split(const PersistenceModule& m, Index q)
{
    if (q < 0) throw std::invalid_argument("q must be non-negative");
    BarcodeBasis basis = reduce_to_barcode_basis(m);
    if (q == 0) {
        PersistenceModule zero = PersistenceModule::zero(m.field(), m.origin(), m.last());
        std::vector<std::size_t> all(basis.generators.size());
        for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
        return QSplitting{0,
                          m,
                          zero,
                          identity_morphism(m),
                          zero_morphism(m, zero),
                          identity_morphism(m),
                          zero_morphism(zero, m),
                          std::move(basis),
                          std::move(all),
                          {}};
    }
    std::vector<std::size_t> long_gens, short_gens;
    for (std::size_t k = 0; k < basis.generators.size(); ++k)
        (basis.generators[k].bar.length() >= q ? long_gens : short_gens).push_back(k);
    Part l = extract_part(m, basis, long_gens);
    Part s = extract_part(m, basis, short_gens);
    return QSplitting{q, l.module, s.module, l.pr, s.pr, l.inc, s.inc, std::move(basis), std::move(long_gens),
                      std::move(short_gens)};
}

Nestedness long_bar_nestedness(const Barcode& b, Index q)
{
    Barcode kept;
    for (const auto& [bar, mu] : b)
        if (bar.length() >= q) kept.add(bar, mu);
    return nestedness(kept);
}

CoarseInterleaving coarse_interleaving(const QSplitting& s)
{
    Index h = half(s.q);
    LadderModule phi = compose(inner_shift_morphism(s.long_part, h), s.pr_long);
    LadderModule phi_tilde = compose(shift_ladder(s.inc_long, h), inner_shift_morphism(s.long_part, h));
    auto cert = check_interleaving(phi, phi_tilde, h);
    if (!cert) throw std::logic_error("q-splitting interleaving failed: " + cert.error().str());
    return CoarseInterleaving{std::move(phi), std::move(phi_tilde), cert.value()};
}

LadderModule pr_long_inverse(const QSplitting& s)
{
    return compose(shift_ladder(s.inc_long, s.q), inner_shift_morphism(s.long_part, s.q));
}

std::string to_string(CoarseVariant v)
{
    switch (v) {
    case CoarseVariant::Target: return "target";
    case CoarseVariant::Source: return "source";
    case CoarseVariant::Both: return "both";
    }
    return "?";
}

CoarseVariant parse_variant(const std::string& s)
{
    if (s == "target") return CoarseVariant::Target;
    if (s == "source") return CoarseVariant::Source;
    if (s == "both") return CoarseVariant::Both;
    throw std::invalid_argument("unknown variant: " + s + " (expected target, source or both)");
}

InducedPair induce_coarse_morphism(const LadderModule& phi, const LadderModule& psi, Index delta, Index q,
                                   CoarseVariant variant)
{
    Index h = half(q);
    auto base = check_delta_invertible(phi, psi, delta);
    if (!base) throw std::invalid_argument("input pair is not delta-invertible: " + base.error().str());
    QSplitting sv = q_split(phi.dom(), q);
    QSplitting sw = q_split(phi.cod(), q);
    if (q == 0) return InducedPair{phi, psi, delta, std::move(sv), std::move(sw), base.value()};

    const Index d2 = 2 * delta;
    // Psi(q) o i^W(q) o [q]_{W_long}
    auto psi_from_w_long = [&] {
        return compose(shift_ladder(psi, q), compose(shift_ladder(sw.inc_long, q), inner_shift_morphism(sw.long_part, q)));
    };
    std::optional<LadderModule> new_phi, new_psi;
    switch (variant) {
    case CoarseVariant::Target:
        new_phi = compose(sw.pr_long, phi);
        new_psi = psi_from_w_long();
        break;
    case CoarseVariant::Source:
        new_phi = compose(phi, sv.inc_long);
        // pr^V(q + 2 delta) o [q]_V(2 delta) o Psi
        new_psi = compose(shift_ladder(sv.pr_long, q + d2),
                          compose(shift_ladder(inner_shift_morphism(phi.dom(), q), d2), psi));
        break;
    case CoarseVariant::Both:
        new_phi = compose(sw.pr_long, compose(phi, sv.inc_long));
        new_psi = compose(shift_ladder(sv.pr_long, q + d2), psi_from_w_long());
        break;
    }
    auto cert = check_delta_invertible(*new_phi, *new_psi, delta + h);
    if (!cert) throw std::logic_error("induced coarse pair failed certification: " + cert.error().str());
    return InducedPair{*new_phi, *new_psi, delta + h, std::move(sv), std::move(sw), cert.value()};
}

std::string CoarsePrecondition::str() const
{
    return std::string(holds ? "holds" : "fails") + ": 2*delta + q = " + std::to_string(2 * delta + q) +
           ", nestedness " + dom.str() + " (domain), " + cod.str() + " (codomain)";
}

CoarsePrecondition coarse_precondition(const LadderModule& phi, Index delta, Index q, CoarseVariant variant)
{
    Barcode bv = reduce_to_barcode_basis(phi.dom()).barcode;
    Barcode bw = reduce_to_barcode_basis(phi.cod()).barcode;
    bool long_dom = variant != CoarseVariant::Target;
    bool long_cod = variant != CoarseVariant::Source;
    CoarsePrecondition p{long_dom ? long_bar_nestedness(bv, q) : nestedness(bv),
                         long_cod ? long_bar_nestedness(bw, q) : nestedness(bw), delta, q, false};
    p.holds = Nestedness(2 * delta + q) < std::min(p.dom, p.cod);
    return p;
}

CoarseDecomposition coarse_decompose(const LadderModule& phi, const LadderModule& psi, Index delta, Index q,
                                     CoarseVariant variant)
{
    InducedPair induced = induce_coarse_morphism(phi, psi, delta, q, variant);
    CoarsePrecondition pre = coarse_precondition(phi, delta, q, variant);
    auto d = decompose(induced.phi);
    return CoarseDecomposition{std::move(induced), pre, std::move(d)};
}

BarcodeBasis extend_basis(const QSplitting& s, const BarcodeBasis& long_basis)
{
    const BarcodeBasis& full = s.basis;
    if (long_basis.generators.size() != s.long_generators.size())
        throw DimensionError("extend_basis: generator count differs from the long part");
    std::vector<std::vector<Matrix>> vecs(full.generators.size());
    for (std::size_t i = 0; i < s.long_generators.size(); ++i) {
        std::size_t k = s.long_generators[i];
        const BarGenerator& g = full.generators[k];
        if (!(long_basis.generators[i].bar == g.bar)) throw DimensionError("extend_basis: bar mismatch");
        for (Index t = g.bar.a; t <= g.bar.b; ++t)
            vecs[k].push_back(mat_mul(s.inc_long.component(t), long_basis.vector(i, t)));
    }
    for (std::size_t k : s.short_generators) {
        const BarGenerator& g = full.generators[k];
        for (Index t = g.bar.a; t <= g.bar.b; ++t) vecs[k].push_back(full.vector(k, t));
    }
    return rebuild_basis(s.inc_long.cod(), full, vecs);
}

PersistenceModule refine_grid(const PersistenceModule& m)
{
    std::vector<std::size_t> dims;
    std::vector<Matrix> maps;
    for (Index t = m.origin(); t <= m.last(); ++t) {
        dims.push_back(m.dim(t));
        dims.push_back(m.dim(t));
        if (t > m.origin()) maps.push_back(m.structure_map(t));
        maps.push_back(Matrix::identity(m.field(), m.dim(t)));
    }
    return PersistenceModule(m.field(), 2 * m.origin(), std::move(dims), std::move(maps));
}

LadderModule refine_ladder(const LadderModule& m)
{
    std::vector<Matrix> comps;
    for (Index t = m.origin(); t <= m.last(); ++t) {
        comps.push_back(m.component(t));
        comps.push_back(m.component(t));
    }
    return LadderModule(refine_grid(m.dom()), refine_grid(m.cod()), std::move(comps));
}

}  // namespace laddermod

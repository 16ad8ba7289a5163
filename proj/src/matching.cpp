#include "laddermod/matching.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace laddermod {

void PartialMatching::add_pair(const Interval& source, const Interval& target, std::size_t mult)
{
    if (mult) pairs_[{source, target}] += mult;
}

std::size_t PartialMatching::multiplicity(const Interval& source, const Interval& target) const
{
    auto it = pairs_.find({source, target});
    return it == pairs_.end() ? 0 : it->second;
}

std::vector<MatchedPair> PartialMatching::pairs() const
{
    std::vector<MatchedPair> out;
    for (const auto& [key, mu] : pairs_) out.push_back(MatchedPair{key.first, key.second, mu});
    return out;
}

Barcode PartialMatching::source_barcode() const
{
    Barcode b = unmatched_source_;
    for (const auto& [key, mu] : pairs_) b.add(key.first, mu);
    return b;
}

Barcode PartialMatching::target_barcode() const
{
    Barcode b = unmatched_target_;
    for (const auto& [key, mu] : pairs_) b.add(key.second, mu);
    return b;
}

std::string PartialMatching::str() const
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [key, mu] : pairs_) {
        if (!first) os << ", ";
        first = false;
        os << '(' << key.first.str() << ", " << key.second.str() << ')';
        if (mu > 1) os << 'x' << mu;
    }
    os << '}';
    if (!unmatched_source_.empty()) os << " unmatched source: " << unmatched_source_.str();
    if (!unmatched_target_.empty()) os << " unmatched target: " << unmatched_target_.str();
    return os.str();
}

PartialMatching induced_matching(const LadderDecomposition& d, Index codomain_shift)
{
    PartialMatching m;
    for (const auto& p : d.pairs) m.add_pair(p.dom_bar, p.cod_bar.shifted(-codomain_shift), p.multiplicity);
    for (const auto& [bar, mu] : d.plus) m.add_unmatched_source(bar, mu);
    for (const auto& [bar, mu] : d.minus) m.add_unmatched_target(bar.shifted(-codomain_shift), mu);
    return m;
}

namespace {

// distance of a bar to the diagonal
mpq_class half_length(const Interval& i)
{
    mpq_class h(static_cast<long>(i.length()), 2);
    h.canonicalize();
    return h;
}

}  // namespace

mpq_class matching_cost(const PartialMatching& m)
{
    mpq_class cost = 0;
    for (const auto& p : m.pairs()) {
        mpq_class c = std::max(std::abs(p.source.a - p.target.a), std::abs(p.source.b - p.target.b));
        cost = std::max(cost, c);
    }
    for (const Barcode* side : {&m.unmatched_source(), &m.unmatched_target()})
        for (const auto& [bar, mu] : *side) cost = std::max(cost, half_length(bar));
    cost.canonicalize();
    return cost;
}

CostBound check_cost_bound(const PartialMatching& m, const mpq_class& delta)
{
    mpq_class c = matching_cost(m);
    return CostBound{c, delta, c <= delta};
}

CorrespondenceReport check_matching_correspondence(const PartialMatching& phi_matching,
                                                   const PartialMatching& psi_matching, Index threshold)
{
    std::set<std::pair<Interval, Interval>> keys;  // (v_bar, w_bar)
    for (const auto& p : phi_matching.pairs()) keys.insert({p.source, p.target});
    for (const auto& p : psi_matching.pairs()) keys.insert({p.target, p.source});
    CorrespondenceReport rep;
    for (const auto& [v, w] : keys) {
        CorrespondenceEntry e{v, w, phi_matching.multiplicity(v, w), psi_matching.multiplicity(w, v)};
        bool long_pair = v.length() >= threshold && w.length() >= threshold;
        if (!long_pair) {
            if (e.phi_mult != e.psi_mult) rep.short_divergences.push_back(e);
        } else if (e.phi_mult == e.psi_mult) {
            rep.long_agreements.push_back(e);
        } else {
            rep.long_disagreements.push_back(e);
        }
    }
    return rep;
}

PersistenceModule image_module(const LadderModule& phi)
{
    const Field& f = phi.field();
    std::vector<Matrix> bases;
    std::vector<std::size_t> dims;
    for (Index t = phi.origin(); t <= phi.last(); ++t) {
        Matrix c = phi.component(t);
        Matrix b = c.select_columns(pivot_columns(c));
        dims.push_back(b.cols());
        bases.push_back(std::move(b));
    }
    std::vector<Matrix> maps;
    for (std::size_t k = 1; k < bases.size(); ++k) {
        Index t = phi.origin() + static_cast<Index>(k);
        Matrix pushed = mat_mul(phi.cod().structure_map(t), bases[k - 1]);
        auto x = solve_exact(bases[k], pushed);
        if (!x) throw std::logic_error("image is not preserved by the structure map (invalid ladder?)");
        maps.push_back(std::move(*x));
    }
    if (bases.empty()) return PersistenceModule::zero(f, phi.origin(), phi.origin());
    return PersistenceModule(f, phi.origin(), std::move(dims), std::move(maps));
}

namespace {

// One entry per bar copy: (interval, copy number within equal intervals)
using Copy = std::pair<Interval, std::size_t>;

std::vector<Copy> copies(const Barcode& b)
{
    std::vector<Copy> out;
    for (const auto& [bar, mu] : b)
        for (std::size_t k = 0; k < mu; ++k) out.emplace_back(bar, k);
    return out;
}

// Matches copies of x to copies of y inside families sharing the key, by
// decreasing length, then copy number.
std::map<Copy, Copy> family_match(const Barcode& x, const Barcode& y, const std::function<Index(const Interval&)>& key)
{
    std::map<Index, std::vector<Copy>> fx, fy;
    for (const auto& c : copies(x)) fx[key(c.first)].push_back(c);
    for (const auto& c : copies(y)) fy[key(c.first)].push_back(c);
    auto order = [](const Copy& p, const Copy& q) {
        if (p.first.length() != q.first.length()) return p.first.length() > q.first.length();
        if (!(p.first == q.first)) return p.first < q.first;
        return p.second < q.second;
    };
    std::map<Copy, Copy> out;
    for (auto& [k, xs] : fx) {
        auto it = fy.find(k);
        if (it == fy.end()) continue;
        auto& ys = it->second;
        std::sort(xs.begin(), xs.end(), order);
        std::sort(ys.begin(), ys.end(), order);
        for (std::size_t n = 0; n < std::min(xs.size(), ys.size()); ++n) out[xs[n]] = ys[n];
    }
    return out;
}

}  // namespace

PartialMatching bl_matching_from_barcodes(const Barcode& dom, const Barcode& cod, const Barcode& image,
                                          Index codomain_shift)
{
    auto into_cod = family_match(image, cod, [](const Interval& i) { return i.b; });
    auto from_dom = family_match(dom, image, [](const Interval& i) { return i.a; });
    PartialMatching m;
    std::set<Copy> cod_used;
    for (const auto& dc : copies(dom)) {
        auto a = from_dom.find(dc);
        if (a != from_dom.end()) {
            auto b = into_cod.find(a->second);
            if (b != into_cod.end()) {
                m.add_pair(dc.first, b->second.first.shifted(-codomain_shift));
                cod_used.insert(b->second);
                continue;
            }
        }
        m.add_unmatched_source(dc.first);
    }
    for (const auto& cc : copies(cod))
        if (!cod_used.count(cc)) m.add_unmatched_target(cc.first.shifted(-codomain_shift));
    return m;
}

PartialMatching bl_matching(const LadderModule& phi, Index codomain_shift)
{
    return bl_matching_from_barcodes(reduce_to_barcode_basis(phi.dom()).barcode,
                                     reduce_to_barcode_basis(phi.cod()).barcode,
                                     reduce_to_barcode_basis(image_module(phi)).barcode, codomain_shift);
}

std::size_t BasisIndependentMatching::at(Index a, Index b, Index c, Index d) const
{
    auto it = table.find({a, b, c, d});
    return it == table.end() ? 0 : it->second;
}

bool BasisIndependentMatching::satisfies_bounds(const Barcode& source, const Barcode& target) const
{
    std::map<Interval, std::size_t> row, col;
    for (const auto& [k, mu] : table) {
        row[Interval(k[0], k[1])] += mu;
        col[Interval(k[2], k[3])] += mu;
    }
    for (const auto& [bar, n] : row)
        if (n > source.multiplicity(bar)) return false;
    for (const auto& [bar, n] : col)
        if (n > target.multiplicity(bar)) return false;
    return true;
}

BasisIndependentMatching to_basis_independent(const PartialMatching& m)
{
    BasisIndependentMatching out;
    for (const auto& p : m.pairs()) out.table[{p.source.a, p.source.b, p.target.a, p.target.b}] += p.multiplicity;
    return out;
}

namespace {

bool augment(std::size_t u, const std::vector<std::vector<std::size_t>>& adj, std::vector<bool>& seen,
             std::vector<std::size_t>& match_right)
{
    for (std::size_t v : adj[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        if (match_right[v] == SIZE_MAX || augment(match_right[v], adj, seen, match_right)) {
            match_right[v] = u;
            return true;
        }
    }
    return false;
}

}  // namespace

mpq_class bottleneck_distance(const Barcode& x, const Barcode& y, std::size_t max_bars)
{
    auto xs = copies(x), ys = copies(y);
    if (xs.size() + ys.size() > max_bars)
        throw SizeGuardExceeded("bottleneck_distance: " + std::to_string(xs.size() + ys.size()) + " bars exceed the guard");
    auto pair_cost = [](const Interval& i, const Interval& j) {
        return mpq_class(std::max(std::abs(i.a - j.a), std::abs(i.b - j.b)));
    };

    std::set<mpq_class> candidates{mpq_class(0)};
    for (const auto& [i, _] : xs) {
        candidates.insert(half_length(i));
        for (const auto& [j, __] : ys) candidates.insert(pair_cost(i, j));
    }
    for (const auto& [j, _] : ys) candidates.insert(half_length(j));

    const std::size_t n = xs.size(), m = ys.size();
    // left: xs then diagonal copies of ys; right: ys then diagonal copies of xs
    auto feasible = [&](const mpq_class& c) {
        std::vector<std::vector<std::size_t>> adj(n + m);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j)
                if (pair_cost(xs[i].first, ys[j].first) <= c) adj[i].push_back(j);
            if (half_length(xs[i].first) <= c) adj[i].push_back(m + i);
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (half_length(ys[j].first) <= c) adj[n + j].push_back(j);
            for (std::size_t i = 0; i < n; ++i) adj[n + j].push_back(m + i);
        }
        std::vector<std::size_t> match_right(n + m, SIZE_MAX);
        for (std::size_t u = 0; u < n + m; ++u) {
            std::vector<bool> seen(n + m, false);
            if (!augment(u, adj, seen, match_right)) return false;
        }
        return true;
    };
    std::vector<mpq_class> sorted(candidates.begin(), candidates.end());
    std::size_t lo = 0, hi = sorted.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(sorted[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return sorted[lo];
}

CoarseMatching coarse_matching(const LadderModule& phi, const LadderModule& psi, Index delta, Index q,
                               CoarseVariant variant)
{
    InducedPair induced = induce_coarse_morphism(phi, psi, delta, q, variant);
    const Index h = q / 2;
    LadderModule morphism = compose(inner_shift_morphism(induced.phi.cod(), h), induced.phi);
    auto d = decompose(morphism);
    PartialMatching m;
    if (d) {
        m = induced_matching(d.value(), delta + h);
        if (q > 0 && variant != CoarseVariant::Target)
            for (std::size_t k : induced.dom_split.short_generators)
                m.add_unmatched_source(induced.dom_split.basis.generators[k].bar);
        if (q > 0 && variant != CoarseVariant::Source)
            for (std::size_t k : induced.cod_split.short_generators)
                m.add_unmatched_target(induced.cod_split.basis.generators[k].bar.shifted(-delta));
    }
    return CoarseMatching{std::move(induced), std::move(morphism), std::move(d), std::move(m)};
}

std::string format_cost(const mpq_class& c)
{
    return c.get_str();
}

}  // namespace laddermod

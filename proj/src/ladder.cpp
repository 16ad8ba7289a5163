#include "laddermod/ladder.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_set>

namespace laddermod {

std::string to_string(OpKind k)
{
    switch (k) {
    case OpKind::Ao1Col: return "AO1-col";
    case OpKind::Ao1Row: return "AO1-row";
    case OpKind::Ao2: return "AO2";
    case OpKind::Ao3: return "AO3";
    case OpKind::ScaleRow: return "scale-row";
    case OpKind::ScaleCol: return "scale-col";
    }
    return "?";
}

std::string AdmissibleOp::str(const MorphismMatrix& mm) const
{
    std::ostringstream os;
    os << to_string(kind) << ' ';
    switch (kind) {
    case OpKind::ScaleCol: os << "col " << mm.col_gens.at(target).label() << " *= " << coef.str(); break;
    case OpKind::ScaleRow: os << "row " << mm.row_gens.at(target).label() << " *= " << coef.str(); break;
    case OpKind::Ao1Col:
    case OpKind::Ao2:
        os << "col " << mm.col_gens.at(target).label() << " += " << coef.str() << " * col "
           << mm.col_gens.at(source).label();
        break;
    case OpKind::Ao1Row:
    case OpKind::Ao3:
        os << "row " << mm.row_gens.at(target).label() << " += " << coef.str() << " * row "
           << mm.row_gens.at(source).label();
        break;
    }
    return os.str();
}

bool is_legal(const AdmissibleOp& op, const MorphismMatrix& mm)
{
    const std::size_t nr = mm.row_gens.size(), nc = mm.col_gens.size();
    switch (op.kind) {
    case OpKind::ScaleCol: return op.target < nc && !op.coef.is_zero();
    case OpKind::ScaleRow: return op.target < nr && !op.coef.is_zero();
    case OpKind::Ao1Col:
        return op.target < nc && op.source < nc && op.target != op.source && mm.col_bar(op.target) == mm.col_bar(op.source);
    case OpKind::Ao1Row:
        return op.target < nr && op.source < nr && op.target != op.source && mm.row_bar(op.target) == mm.row_bar(op.source);
    case OpKind::Ao2:
        return op.target < nc && op.source < nc && op.target != op.source &&
               overlap_precedes(mm.col_bar(op.source), mm.col_bar(op.target));
    case OpKind::Ao3:
        return op.target < nr && op.source < nr && op.target != op.source &&
               overlap_precedes(mm.row_bar(op.target), mm.row_bar(op.source));
    }
    return false;
}

void apply_op(const AdmissibleOp& op, MorphismMatrix& mm)
{
    if (!is_legal(op, mm)) throw std::invalid_argument("illegal operation: " + to_string(op.kind));
    switch (op.kind) {
    case OpKind::ScaleCol: mm.entries.scale_col(op.target, op.coef); break;
    case OpKind::ScaleRow: mm.entries.scale_row(op.target, op.coef); break;
    case OpKind::Ao1Col:
    case OpKind::Ao2: mm.entries.add_col_multiple(op.target, op.source, op.coef); break;
    case OpKind::Ao1Row:
    case OpKind::Ao3: mm.entries.add_row_multiple(op.target, op.source, op.coef); break;
    }
    // no morphism between non-overlapping bars, so those entries of the product vanish
    if (op.kind == OpKind::Ao2) {
        for (std::size_t r = 0; r < mm.row_gens.size(); ++r)
            if (!overlap_precedes(mm.row_bar(r), mm.col_bar(op.target))) mm.entries(r, op.target) = Scalar::zero(mm.entries.field());
    } else if (op.kind == OpKind::Ao3) {
        for (std::size_t c = 0; c < mm.col_gens.size(); ++c)
            if (!overlap_precedes(mm.row_bar(op.target), mm.col_bar(c))) mm.entries(op.target, c) = Scalar::zero(mm.entries.field());
    }
}

bool is_matching_form(const Matrix& m)
{
    std::vector<bool> col_used(m.cols(), false);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        bool row_used = false;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Scalar& x = m(r, c);
            if (x.is_zero()) continue;
            if (!x.is_one() || row_used || col_used[c]) return false;
            row_used = true;
            col_used[c] = true;
        }
    }
    return true;
}

std::string ReductionFailure::str() const
{
    return "blocking entry at row " + row_bar.str() + "#" + std::to_string(row_slot) + ", column " + col_bar.str() +
           "#" + std::to_string(col_slot) + ": " + reason;
}

namespace {

// [begin, end) ranges of equal bars in a lexicographically sorted generator list
std::vector<std::pair<std::size_t, std::size_t>> bar_groups(const std::vector<BarGenerator>& gens)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < gens.size();) {
        std::size_t j = i;
        while (j < gens.size() && gens[j].bar == gens[i].bar) ++j;
        out.emplace_back(i, j);
        i = j;
    }
    return out;
}

void require_sorted(const std::vector<BarGenerator>& gens)
{
    for (std::size_t i = 1; i < gens.size(); ++i)
        if (std::tie(gens[i].bar, gens[i].slot) <= std::tie(gens[i - 1].bar, gens[i - 1].slot))
            throw std::invalid_argument("generators are not in lexicographic order");
}

}  // namespace

Result<Reduction, ReductionFailure> reduce_to_matching_form(const MorphismMatrix& mm, ReductionOptions opts)
{
    require_sorted(mm.row_gens);
    require_sorted(mm.col_gens);
    if (mm.entries.rows() != mm.row_gens.size() || mm.entries.cols() != mm.col_gens.size())
        throw DimensionError("morphism matrix shape differs from its generator lists");
    if (auto bad = support_violation(mm))
        throw SupportViolation("entry (" + mm.row_gens[bad->first].label() + ", " + mm.col_gens[bad->second].label() +
                               ") violates the support constraint");

    Reduction red{mm, {}};
    MorphismMatrix& cur = red.reduced;
    const Matrix& m = cur.entries;
    std::vector<std::optional<std::size_t>> row_pivot(m.rows()), col_pivot(m.cols());

    auto emit = [&](OpKind kind, std::size_t target, std::size_t source, Scalar coef) {
        AdmissibleOp op{kind, target, source, std::move(coef)};
        apply_op(op, cur);
        red.ops.push_back(std::move(op));
    };

    const auto row_groups = bar_groups(mm.row_gens);
    for (const auto& [c0, c1] : bar_groups(mm.col_gens)) {
        const Interval col_bar = mm.col_gens[c0].bar;
        for (auto it = row_groups.rbegin(); it != row_groups.rend(); ++it) {
            const auto [r0, r1] = *it;
            const Interval row_bar = mm.row_gens[r0].bar;
            if (!overlap_precedes(row_bar, col_bar)) continue;

            // entries sharing a row or column with an earlier pivot
            for (std::size_t c = c0; c < c1; ++c)
                for (std::size_t r = r0; r < r1; ++r) {
                    if (m(r, c).is_zero()) continue;
                    const bool below = col_pivot[c].has_value();
                    const bool left = row_pivot[r].has_value();
                    if (!below && !left) continue;
                    bool row_ok = below && overlap_precedes(row_bar, cur.row_bar(*col_pivot[c]));
                    bool col_ok = left && overlap_precedes(cur.col_bar(*row_pivot[r]), col_bar);
                    bool use_row = row_ok && (opts.prefer_row_clearing || !col_ok);
                    if (use_row) {
                        std::size_t src = *col_pivot[c];
                        emit(OpKind::Ao3, r, src, -(m(r, c) / m(src, c)));
                    } else if (col_ok) {
                        std::size_t src = *row_pivot[r];
                        emit(OpKind::Ao2, c, src, -(m(r, c) / m(r, src)));
                    } else {
                        std::string why;
                        if (below)
                            why += "column already has a pivot in row " + cur.row_gens[*col_pivot[c]].label() +
                                   " but " + row_bar.str() + " does not precede " +
                                   cur.row_bar(*col_pivot[c]).str();
                        if (left) {
                            if (!why.empty()) why += "; ";
                            why += "row already has a pivot in column " + cur.col_gens[*row_pivot[r]].label() +
                                   " but " + cur.col_bar(*row_pivot[r]).str() + " does not precede " + col_bar.str();
                        }
                        return ReductionFailure{r, c, row_bar, col_bar, cur.row_gens[r].slot, cur.col_gens[c].slot,
                                                why};
                    }
                }

            // Gaussian elimination on the free part of the block
            for (;;) {
                std::optional<std::pair<std::size_t, std::size_t>> pick;
                for (std::size_t r = r0; r < r1; ++r) {
                    if (row_pivot[r]) continue;
                    for (std::size_t c = c0; c < c1; ++c) {
                        if (col_pivot[c] || m(r, c).is_zero()) continue;
                        if (!pick || opts.last_pivot) pick = std::make_pair(r, c);
                        if (!opts.last_pivot) break;
                    }
                    if (pick && !opts.last_pivot) break;
                }
                if (!pick) break;
                auto [pr, pc] = *pick;
                if (!m(pr, pc).is_one()) emit(OpKind::ScaleCol, pc, pc, m(pr, pc).inverse());
                for (std::size_t c = c0; c < c1; ++c)
                    if (c != pc && !m(pr, c).is_zero()) emit(OpKind::Ao1Col, c, pc, -m(pr, c));
                for (std::size_t r = r0; r < r1; ++r)
                    if (r != pr && !m(r, pc).is_zero()) emit(OpKind::Ao1Row, r, pr, -m(r, pc));
                row_pivot[pr] = pc;
                col_pivot[pc] = pr;
            }
        }
    }
    if (!is_matching_form(cur)) throw std::logic_error("reduction finished without reaching matching form");
    return red;
}

std::size_t LadderDecomposition::multiplicity(const Interval& dom_bar, const Interval& cod_bar) const
{
    for (const auto& p : pairs)
        if (p.dom_bar == dom_bar && p.cod_bar == cod_bar) return p.multiplicity;
    return 0;
}

std::vector<std::string> LadderDecomposition::summand_lines() const
{
    std::vector<std::string> out;
    auto mult = [](std::size_t mu) { return mu > 1 ? " x" + std::to_string(mu) : std::string(); };
    for (const auto& p : pairs) out.push_back("R " + p.dom_bar.str() + "->" + p.cod_bar.str() + mult(p.multiplicity));
    for (const auto& [bar, mu] : plus) out.push_back("I+ " + bar.str() + mult(mu));
    for (const auto& [bar, mu] : minus) out.push_back("I- " + bar.str() + mult(mu));
    return out;
}

bool LadderDecomposition::same_summands(const LadderDecomposition& o) const
{
    return pairs == o.pairs && plus == o.plus && minus == o.minus;
}

LadderDecomposition summands_of(const MorphismMatrix& matching)
{
    if (!is_matching_form(matching)) throw std::invalid_argument("summands_of: matrix is not in matching form");
    LadderDecomposition d;
    std::map<std::pair<Interval, Interval>, std::size_t> counts;
    std::vector<bool> row_used(matching.row_gens.size(), false);
    for (std::size_t c = 0; c < matching.col_gens.size(); ++c) {
        bool used = false;
        for (std::size_t r = 0; r < matching.row_gens.size(); ++r) {
            if (matching.entries(r, c).is_zero()) continue;
            d.links.emplace_back(c, r);
            ++counts[{matching.col_bar(c), matching.row_bar(r)}];
            row_used[r] = true;
            used = true;
        }
        if (!used) d.plus.add(matching.col_bar(c));
    }
    for (std::size_t r = 0; r < matching.row_gens.size(); ++r)
        if (!row_used[r]) d.minus.add(matching.row_bar(r));
    for (const auto& [key, mu] : counts) d.pairs.push_back(RPair{key.first, key.second, mu});
    d.matching = matching;
    return d;
}

Result<LadderDecomposition, ReductionFailure> decompose(const LadderModule& m, ReductionOptions opts)
{
    BarcodeBasis dom_b = reduce_to_barcode_basis(m.dom());
    BarcodeBasis cod_b = reduce_to_barcode_basis(m.cod());
    MorphismMatrix mm = to_single_matrix(m, dom_b, cod_b);
    auto red = reduce_to_matching_form(mm, opts);
    if (!red) return red.error();

    auto collect = [](const BarcodeBasis& b) {
        std::vector<std::vector<Matrix>> vecs;
        for (std::size_t k = 0; k < b.generators.size(); ++k) {
            std::vector<Matrix> chain;
            for (Index t = b.generators[k].bar.a; t <= b.generators[k].bar.b; ++t) chain.push_back(b.vector(k, t));
            vecs.push_back(std::move(chain));
        }
        return vecs;
    };
    auto xs = collect(dom_b);
    auto ys = collect(cod_b);
    // column op col c += k col c'  <=>  x_c <- x_c + k x_c'  where both are alive
    // row op    row r += k row r'  <=>  y_r' <- y_r' - k y_r  where both are alive
    auto add_into = [](std::vector<Matrix>& into, const Interval& into_bar, const std::vector<Matrix>& from,
                       const Interval& from_bar, const Scalar& k) {
        auto common = intersect(into_bar, from_bar);
        if (!common) return;
        for (Index t = common->a; t <= common->b; ++t) {
            Matrix& v = into[static_cast<std::size_t>(t - into_bar.a)];
            v = mat_add(v, mat_scale(from[static_cast<std::size_t>(t - from_bar.a)], k));
        }
    };
    for (const auto& op : red.value().ops) {
        switch (op.kind) {
        case OpKind::ScaleCol:
            for (auto& v : xs[op.target]) v = mat_scale(v, op.coef);
            break;
        case OpKind::ScaleRow:
            for (auto& v : ys[op.target]) v = mat_scale(v, op.coef.inverse());
            break;
        case OpKind::Ao1Col:
        case OpKind::Ao2:
            add_into(xs[op.target], mm.col_bar(op.target), xs[op.source], mm.col_bar(op.source), op.coef);
            break;
        case OpKind::Ao1Row:
        case OpKind::Ao3:
            add_into(ys[op.source], mm.row_bar(op.source), ys[op.target], mm.row_bar(op.target), -op.coef);
            break;
        }
    }

    LadderDecomposition d = summands_of(red.value().reduced);
    d.dom_basis = rebuild_basis(m.dom(), dom_b, xs);
    d.cod_basis = rebuild_basis(m.cod(), cod_b, ys);
    d.ops = std::move(red.value().ops);
    return d;
}

std::string PreconditionReport::str() const
{
    return std::string(holds ? "holds" : "fails") + ": 2*delta = " + std::to_string(2 * delta) + ", nestedness " +
           dom.str() + " (domain), " + cod.str() + " (codomain)";
}

PreconditionReport check_nestedness_precondition(const LadderModule& phi, Index delta)
{
    PreconditionReport rep{nestedness(reduce_to_barcode_basis(phi.dom()).barcode),
                           nestedness(reduce_to_barcode_basis(phi.cod()).barcode), delta, false};
    Nestedness twice(2 * delta);
    rep.holds = twice < std::min(rep.dom, rep.cod);
    return rep;
}

std::string DecompositionMismatch::str() const
{
    return "mismatch at " + std::to_string(index) + ": " + what;
}

std::optional<DecompositionMismatch> verify_decomposition(const LadderModule& m, const LadderDecomposition& d)
{
    if (auto bad = check_barcode_basis(m.dom(), d.dom_basis)) return DecompositionMismatch{m.origin(), "domain: " + *bad};
    if (auto bad = check_barcode_basis(m.cod(), d.cod_basis))
        return DecompositionMismatch{m.origin(), "codomain: " + *bad};

    const auto& xg = d.dom_basis.generators;
    const auto& yg = d.cod_basis.generators;
    std::vector<bool> x_used(xg.size(), false), y_used(yg.size(), false);
    std::map<std::pair<Interval, Interval>, std::size_t> counts;
    for (auto [j, k] : d.links) {
        if (j >= xg.size() || k >= yg.size() || x_used[j] || y_used[k])
            return DecompositionMismatch{m.origin(), "links do not form a partial bijection of generators"};
        if (!overlap_precedes(yg[k].bar, xg[j].bar))
            return DecompositionMismatch{xg[j].bar.a, "linked bars " + xg[j].bar.str() + ", " + yg[k].bar.str() +
                                                          " violate the overlap order"};
        x_used[j] = y_used[k] = true;
        ++counts[{xg[j].bar, yg[k].bar}];
    }
    std::vector<RPair> pairs;
    for (const auto& [key, mu] : counts) pairs.push_back(RPair{key.first, key.second, mu});
    Barcode plus, minus;
    for (std::size_t j = 0; j < xg.size(); ++j)
        if (!x_used[j]) plus.add(xg[j].bar);
    for (std::size_t k = 0; k < yg.size(); ++k)
        if (!y_used[k]) minus.add(yg[k].bar);
    if (!(pairs == d.pairs) || !(plus == d.plus) || !(minus == d.minus))
        return DecompositionMismatch{m.origin(), "summand multiset does not match the generator links"};

    for (Index t = m.origin(); t <= m.last(); ++t) {
        std::size_t k = static_cast<std::size_t>(t - m.origin());
        Matrix c(m.field(), m.cod().dim(t), m.dom().dim(t));
        for (auto [j, i] : d.links)
            if (xg[j].bar.contains(t) && yg[i].bar.contains(t))
                c(yg[i].position(t), xg[j].position(t)) = Scalar::one(m.field());
        Matrix rebuilt = mat_mul(mat_mul(d.cod_basis.basis[k], c), d.dom_basis.change.g[k]);
        if (!(rebuilt == m.component(t)))
            return DecompositionMismatch{t, "component rebuilt from the summands differs: " + rebuilt.str() + " vs " +
                                                m.component(t).str()};
    }
    return std::nullopt;
}

namespace {

std::string key_of(const Matrix& m)
{
    std::string s;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            s += m(r, c).str();
            s += ',';
        }
    return s;
}

bool at_most_one_per_line(const Matrix& m)
{
    std::vector<bool> col_used(m.cols(), false);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        bool row_used = false;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c).is_zero()) continue;
            if (row_used || col_used[c]) return false;
            row_used = col_used[c] = true;
        }
    }
    return true;
}

}  // namespace

SearchOutcome search_clearings(const MorphismMatrix& mm, std::size_t max_depth, std::size_t max_states)
{
    // matching form up to scaling: at most one nonzero per row and column
    SearchOutcome out{false, true, 0};
    std::unordered_set<std::string> seen;
    std::deque<std::pair<MorphismMatrix, std::size_t>> queue;
    queue.emplace_back(mm, 0);
    seen.insert(key_of(mm.entries));
    const std::size_t nr = mm.row_gens.size(), nc = mm.col_gens.size();
    while (!queue.empty()) {
        auto [cur, depth] = std::move(queue.front());
        queue.pop_front();
        const Matrix& m = cur.entries;
        ++out.explored;
        if (at_most_one_per_line(m)) {
            out.found = true;
            return out;
        }
        auto push = [&](OpKind kind, std::size_t target, std::size_t source, Scalar coef) {
            if (depth + 1 > max_depth || seen.size() >= max_states) {
                out.exhausted = false;
                return;
            }
            MorphismMatrix next = cur;
            apply_op({kind, target, source, std::move(coef)}, next);
            if (seen.insert(key_of(next.entries)).second) queue.emplace_back(std::move(next), depth + 1);
        };
        for (std::size_t r = 0; r < nr; ++r)
            for (std::size_t c = 0; c < nc; ++c) {
                if (m(r, c).is_zero()) continue;
                for (std::size_t c2 = 0; c2 < nc; ++c2) {
                    if (c2 == c || m(r, c2).is_zero()) continue;
                    if (!overlap_precedes(mm.col_bar(c2), mm.col_bar(c))) continue;
                    push(OpKind::Ao2, c, c2, -(m(r, c) / m(r, c2)));
                }
                for (std::size_t r2 = 0; r2 < nr; ++r2) {
                    if (r2 == r || m(r2, c).is_zero()) continue;
                    if (!overlap_precedes(mm.row_bar(r), mm.row_bar(r2))) continue;
                    push(OpKind::Ao3, r, r2, -(m(r, c) / m(r2, c)));
                }
            }
    }
    return out;
}

namespace {

// Positions (row, col) a morphism between these generator lists may occupy.
std::vector<std::pair<std::size_t, std::size_t>> pattern(const std::vector<BarGenerator>& rows,
                                                         const std::vector<BarGenerator>& cols)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (overlap_precedes(rows[r].bar, cols[c].bar)) out.emplace_back(r, c);
    return out;
}

Matrix masked_product(const Matrix& a, const Matrix& b, const std::vector<BarGenerator>& rows,
                      const std::vector<BarGenerator>& cols)
{
    Matrix p = mat_mul(a, b);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!overlap_precedes(rows[r].bar, cols[c].bar)) p(r, c) = Scalar::zero(a.field());
    return p;
}

// all automorphisms of the interval sum described by gens, over F_p
std::vector<Matrix> automorphisms(const std::vector<BarGenerator>& gens, const Field& f, std::size_t limit, bool& cut)
{
    const std::uint32_t p = f.characteristic();
    auto pos = pattern(gens, gens);
    auto groups = bar_groups(gens);
    std::vector<Matrix> out;
    std::vector<std::uint32_t> digits(pos.size(), 0);
    for (;;) {
        Matrix t(f, gens.size(), gens.size());
        for (std::size_t i = 0; i < pos.size(); ++i) t(pos[i].first, pos[i].second) = Scalar(f, long(digits[i]));
        bool invertible = true;
        for (auto [g0, g1] : groups) {
            std::vector<std::size_t> idx;
            for (std::size_t i = g0; i < g1; ++i) idx.push_back(i);
            if (rank(t.select_rows(idx).select_columns(idx)) != idx.size()) {
                invertible = false;
                break;
            }
        }
        if (invertible) {
            if (out.size() >= limit) {
                cut = true;
                return out;
            }
            out.push_back(std::move(t));
        }
        std::size_t i = 0;
        while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
        if (i == digits.size()) break;
    }
    return out;
}

}  // namespace

SearchOutcome search_automorphisms(const MorphismMatrix& mm, std::size_t max_states)
{
    const Field f = mm.entries.field();
    if (f.is_rational()) throw std::invalid_argument("automorphism search needs a prime field");
    SearchOutcome out{false, true, 0};
    bool cut = false;
    auto tw = automorphisms(mm.row_gens, f, max_states, cut);
    auto sv = automorphisms(mm.col_gens, f, max_states, cut);
    if (cut) out.exhausted = false;
    for (const Matrix& s : sv) {
        Matrix ms = masked_product(mm.entries, s, mm.row_gens, mm.col_gens);
        for (const Matrix& t : tw) {
            if (out.explored >= max_states) {
                out.exhausted = false;
                return out;
            }
            ++out.explored;
            if (at_most_one_per_line(masked_product(t, ms, mm.row_gens, mm.col_gens))) {
                out.found = true;
                return out;
            }
        }
    }
    return out;
}

}  // namespace laddermod

// laddermod: barcode, decompose, match and verify from the shell.
// Exit codes: 0 success, 1 input error, 2 algorithmic failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "laddermod/io.hpp"
#include "laddermod/matching.hpp"

using namespace laddermod;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kAlgorithmFailure = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PairSelection {
    std::string morphism;
    std::string inverse;
    std::string pair;  // "", "interleaving" or "invertible"
};

struct Loaded {
    MorphismDocument doc;
    const NamedMorphism* phi = nullptr;
    const NamedMorphism* psi = nullptr;
    PairKind kind = PairKind::Interleaving;
};

Loaded load(const std::string& path, const PairSelection& sel)
{
    Loaded l{load_morphism_document(path)};
    if (l.doc.morphisms.empty()) throw InputError(path + ": no morphism defined");
    try {
        l.phi = sel.morphism.empty() ? &l.doc.morphisms[0] : &l.doc.morphism(sel.morphism);
        if (!sel.inverse.empty()) {
            l.psi = &l.doc.morphism(sel.inverse);
        } else {
            for (const auto& m : l.doc.morphisms)
                if (&m != l.phi && m.dom == l.phi->cod && m.cod == l.phi->dom) {
                    l.psi = &m;
                    break;
                }
        }
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    if (sel.pair == "invertible")
        l.kind = PairKind::Invertible;
    else if (sel.pair == "interleaving")
        l.kind = PairKind::Interleaving;
    else if (!sel.pair.empty())
        throw InputError("--pair must be 'interleaving' or 'invertible'");
    else if (l.doc.pair)
        l.kind = *l.doc.pair;
    return l;
}

Index need_delta(const Loaded& l, std::optional<Index> flag)
{
    if (flag) return *flag;
    if (l.doc.delta) return *l.doc.delta;
    throw InputError("delta required (--delta or a 'delta' line)");
}

// (Phi, Psi) in delta-invertible form
std::pair<LadderModule, LadderModule> invertible_pair(const Loaded& l, Index delta)
{
    if (!l.psi) throw InputError("no candidate inverse in the document (add a second morphism or --inverse)");
    if (l.kind == PairKind::Interleaving) return interleaving_to_invertible(l.phi->ladder, l.psi->ladder, delta);
    return {l.phi->ladder, l.psi->ladder};
}

void print_summands(const LadderDecomposition& d)
{
    auto lines = d.summand_lines();
    std::string joined;
    for (const auto& s : lines) joined += (joined.empty() ? "" : ", ") + s;
    std::cout << "summands: " << joined << '\n';
    for (const auto& s : lines) std::cout << "  " << s << '\n';
}

void print_matching(const std::string& label, const PartialMatching& m)
{
    std::cout << label << ": " << m.str() << '\n';
    for (const auto& p : m.pairs())
        std::cout << "  " << p.source.str() << " <-> " << p.target.str()
                  << (p.multiplicity > 1 ? " x" + std::to_string(p.multiplicity) : "") << '\n';
    for (const auto& [bar, mu] : m.unmatched_source())
        std::cout << "  unmatched source " << bar.str() << (mu > 1 ? " x" + std::to_string(mu) : "") << '\n';
    for (const auto& [bar, mu] : m.unmatched_target())
        std::cout << "  unmatched target " << bar.str() << (mu > 1 ? " x" + std::to_string(mu) : "") << '\n';
    std::cout << "  cost " << format_cost(matching_cost(m)) << '\n';
}

void report_triangles(const TriangleReport& rep)
{
    std::cout << "psi.phi: " << (rep.psi_phi ? "fail at " + std::to_string(*rep.psi_phi) : std::string("pass")) << '\n';
    std::cout << "phi.psi: " << (rep.phi_psi ? "fail at " + std::to_string(*rep.phi_psi) : std::string("pass")) << '\n';
}

// Triangles with the composites taken at the declared shifts; when those do not
// add up to 2 delta the composites are compared to the inner maps anyway and
// any difference, shape included, counts as a violation.
TriangleReport composite_report(const Loaded& l, Index delta)
{
    bool inter = l.kind == PairKind::Interleaving;
    const LadderModule& p = l.phi->ladder;
    LadderModule q = inter ? shift_ladder(l.psi->ladder, l.phi->shift) : l.psi->ladder;
    if (!equivalent(q.dom(), p.cod())) throw InputError("the inverse does not start at the codomain of the morphism");
    Index s = inter ? l.phi->shift + l.psi->shift : l.psi->shift;
    const PersistenceModule& v = p.dom();
    const PersistenceModule& w = p.cod();
    auto differ = [](const Matrix& a, const Matrix& b) { return !(a == b) && !(a.is_zero() && b.is_zero()); };
    TriangleReport rep;
    Index lo = std::min(v.origin(), w.origin()) - std::max(s, 2 * delta);
    Index hi = std::max(v.last(), w.last());
    for (Index t = lo; t <= hi; ++t) {
        if (!rep.psi_phi && differ(mat_mul(q.component(t), p.component(t)), inner_map(v, t, t + 2 * delta)))
            rep.psi_phi = t;
        if (!rep.phi_psi && differ(mat_mul(p.component(t + s), q.component(t)), inner_map(w, t, t + 2 * delta)))
            rep.phi_psi = inter ? t + delta : t;
    }
    return rep;
}

// odd q: double the grid so q/2 is an integer
struct CoarseInput {
    LadderModule phi;
    LadderModule psi;
    Index delta;
    Index q;
    bool refined;
};

CoarseInput coarse_input(const Loaded& l, Index delta, Index q)
{
    if (q < 0) throw InputError("--q must be non-negative");
    auto [phi, psi] = invertible_pair(l, delta);
    if (q % 2 == 0) return {phi, psi, delta, q, false};
    return {refine_ladder(phi), refine_ladder(psi), 2 * delta, 2 * q, true};
}

int cmd_barcode(const std::string& path, const std::string& svg, bool diagram)
{
    PersistenceModule m = load_module(path);
    Barcode b = reduce_to_barcode_basis(m).barcode;
    std::cout << barcode_listing(b) << '\n';
    std::cout << "nestedness " << nestedness(b).str() << '\n';
    if (diagram) std::cout << barcode_text_diagram(b, m.origin(), m.last());
    if (!svg.empty()) {
        std::ofstream out(svg);
        if (!out) throw InputError("cannot write " + svg);
        out << barcode_svg(b, m.origin(), m.last(), path);
    }
    return kOk;
}

int cmd_decompose(const std::string& path, const PairSelection& sel, std::optional<Index> delta_flag,
                  std::optional<Index> q, const std::string& variant_name)
{
    Loaded l = load(path, sel);
    const LadderModule& phi = l.phi->ladder;
    Barcode bv = reduce_to_barcode_basis(phi.dom()).barcode;
    Barcode bw = reduce_to_barcode_basis(phi.cod()).barcode;
    std::cout << "morphism " << l.phi->name << ": " << l.phi->dom << " -> " << l.phi->cod << "(" << l.phi->shift
              << ")\n";
    std::cout << "domain barcode: " << barcode_listing(bv) << "  nestedness " << nestedness(bv).str() << '\n';
    std::cout << "codomain barcode: " << barcode_listing(bw) << "  nestedness " << nestedness(bw).str() << '\n';

    std::optional<Index> delta = delta_flag ? delta_flag : l.doc.delta;
    if (q && *q > 0) {
        if (!delta) throw InputError("--q needs a delta");
        CoarseVariant variant = parse_variant(variant_name);
        CoarseInput in = coarse_input(l, *delta, *q);
        if (in.refined) std::cout << "odd q: grid refined, indices doubled (q " << in.q << ", delta " << in.delta << ")\n";
        auto base = check_delta_invertible(in.phi, in.psi, in.delta);
        if (!base) {
            std::cout << "certification: fail (" << base.error().str() << ")\n";
            return kAlgorithmFailure;
        }
        CoarseDecomposition cd = coarse_decompose(in.phi, in.psi, in.delta, in.q, variant);
        std::cout << "coarse variant " << to_string(variant) << ", q " << in.q << '\n';
        std::cout << "precondition: " << cd.precondition.str() << '\n';
        std::cout << "induced pair certified at delta + q/2 = " << cd.induced.delta << '\n';
        if (!cd.decomposition) {
            std::cout << "ReductionFailure: " << cd.decomposition.error().str() << '\n';
            return kAlgorithmFailure;
        }
        print_summands(cd.decomposition.value());
        return kOk;
    }

    if (delta) {
        std::cout << "precondition: " << check_nestedness_precondition(phi, *delta).str() << '\n';
        if (l.psi) {
            auto [p, s] = invertible_pair(l, *delta);
            auto cert = check_delta_invertible(p, s, *delta);
            std::cout << "certification: " << (cert ? "pass" : "fail (" + cert.error().str() + ")") << '\n';
        } else {
            std::cout << "certification: skipped (no inverse)\n";
        }
    }
    auto d = decompose(phi);
    if (!d) {
        std::cout << "ReductionFailure: " << d.error().str() << '\n';
        return kAlgorithmFailure;
    }
    print_summands(d.value());
    return kOk;
}

int cmd_match(const std::string& path, const PairSelection& sel, const std::string& method, bool compare,
              std::optional<Index> delta_flag, std::optional<Index> q, const std::string& variant_name)
{
    if (method != "ladder" && method != "bl") throw InputError("--method must be 'ladder' or 'bl'");
    Loaded l = load(path, sel);
    std::optional<Index> delta = delta_flag ? delta_flag : l.doc.delta;

    if (q && *q > 0) {
        if (!delta) throw InputError("--q needs a delta");
        CoarseVariant variant = parse_variant(variant_name);
        CoarseInput in = coarse_input(l, *delta, *q);
        if (in.refined) std::cout << "odd q: grid refined, indices doubled (q " << in.q << ", delta " << in.delta << ")\n";
        if (auto base = check_delta_invertible(in.phi, in.psi, in.delta); !base) {
            std::cout << "certification: fail (" << base.error().str() << ")\n";
            return kAlgorithmFailure;
        }
        CoarseMatching cm = coarse_matching(in.phi, in.psi, in.delta, in.q, variant);
        if (!cm.decomposition) {
            std::cout << "ReductionFailure: " << cm.decomposition.error().str() << '\n';
            return kAlgorithmFailure;
        }
        print_matching("coarse matching (" + to_string(variant) + ", q " + std::to_string(in.q) + ")", cm.matching);
        std::cout << "bound " << cm.induced.delta << '\n';
        return kOk;
    }

    int status = kOk;
    auto ladder_matching = [&](const NamedMorphism& m) -> std::optional<PartialMatching> {
        auto d = decompose(m.ladder);
        if (!d) {
            std::cout << "ReductionFailure (" << m.name << "): " << d.error().str() << '\n';
            status = kAlgorithmFailure;
            return std::nullopt;
        }
        return induced_matching(d.value(), m.shift);
    };

    if (!compare) {
        std::optional<PartialMatching> m =
            method == "bl" ? std::optional(bl_matching(l.phi->ladder, l.phi->shift)) : ladder_matching(*l.phi);
        if (!m) return status;
        print_matching(method + " matching of " + l.phi->name, *m);
        if (delta) {
            CostBound cb = check_cost_bound(*m, *delta);
            std::cout << "cost bound delta " << *delta << ": " << (cb.ok ? "ok" : "exceeded") << '\n';
        }
        return status;
    }

    // every morphism with the same source and target as the selected one
    std::vector<const NamedMorphism*> group;
    for (const auto& m : l.doc.morphisms)
        if (m.dom == l.phi->dom && m.cod == l.phi->cod && m.shift == l.phi->shift) group.push_back(&m);
    std::vector<PartialMatching> bl, ladder;
    bool ladder_ok = true;
    for (const NamedMorphism* m : group) {
        bl.push_back(bl_matching(m->ladder, m->shift));
        print_matching("bl matching of " + m->name, bl.back());
        if (auto lm = ladder_matching(*m)) {
            ladder.push_back(*lm);
            print_matching("ladder matching of " + m->name, *lm);
        } else {
            ladder_ok = false;
        }
    }
    if (group.size() > 1) {
        auto all_equal = [](const std::vector<PartialMatching>& v) {
            for (const auto& x : v)
                if (!(x == v.front())) return false;
            return true;
        };
        std::cout << "bl matchings identical: " << (all_equal(bl) ? "yes" : "no") << '\n';
        if (ladder_ok) std::cout << "ladder matchings identical: " << (all_equal(ladder) ? "yes" : "no") << '\n';
    }
    return status;
}

int cmd_verify(const std::string& path, const PairSelection& sel, std::optional<Index> delta_flag,
               std::optional<Index> scan_max)
{
    Loaded l = load(path, sel);
    if (!l.psi) throw InputError("no candidate inverse in the document (add a second morphism or --inverse)");
    bool inter = l.kind == PairKind::Interleaving;
    std::cout << "pair " << l.phi->name << ", " << l.psi->name << " (" << (inter ? "interleaving" : "invertible")
              << ")\n";

    if (scan_max) {
        // the given pair, post-composed with inner shifts, certified at each delta in turn
        const LadderModule& phi = l.phi->ladder;
        const LadderModule& psi = l.psi->ladder;
        for (Index d = 0; d <= *scan_max; ++d) {
            Index phi_extra = inter ? d - l.phi->shift : 0;
            Index psi_extra = (inter ? d : 2 * d) - l.psi->shift;
            if (phi_extra < 0 || psi_extra < 0) continue;
            LadderModule p = compose(inner_shift_morphism(phi.cod(), phi_extra), phi);
            LadderModule s = compose(inner_shift_morphism(psi.cod(), psi_extra), psi);
            if (triangle_report(p, s, d, inter).ok()) {
                std::cout << "smallest certified delta: " << d << '\n';
                return kOk;
            }
        }
        std::cout << "no certified delta <= " << *scan_max << '\n';
        return kAlgorithmFailure;
    }

    Index delta = need_delta(l, delta_flag);
    TriangleReport rep = [&] {
        try {
            return triangle_report(l.phi->ladder, l.psi->ladder, delta, inter);
        } catch (const DimensionError&) {
            std::cout << "declared shifts do not match delta " << delta << "; comparing composites\n";
            return composite_report(l, delta);
        }
    }();
    report_triangles(rep);
    std::cout << (rep.ok() ? "certified" : "not certified") << " at delta " << delta << '\n';
    return rep.ok() ? kOk : kAlgorithmFailure;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"laddermod: ladder decompositions of persistence module morphisms"};
    app.require_subcommand(1);

    std::string file, svg, method = "ladder", variant = "both";
    bool diagram = false, compare = false;
    PairSelection sel;
    std::optional<Index> delta, q, scan_max;

    auto add_pair_options = [&](CLI::App* c) {
        c->add_option("file", file, "morphism document")->required();
        c->add_option("--morphism", sel.morphism, "morphism to use (default: the first)");
        c->add_option("--inverse", sel.inverse, "candidate inverse (default: the morphism going back)");
        c->add_option("--pair", sel.pair, "interleaving or invertible (default: the document's 'pair' line)");
    };

    auto* barcode = app.add_subcommand("barcode", "barcode of a module file");
    barcode->add_option("file", file, "module file")->required();
    barcode->add_option("--svg", svg, "write an SVG barcode diagram");
    barcode->add_flag("--diagram", diagram, "print a text diagram");

    auto* dec = app.add_subcommand("decompose", "ladder decomposition of a morphism");
    add_pair_options(dec);
    dec->add_option("--delta", delta, "interleaving parameter");
    dec->add_option("--q", q, "coarseness parameter");
    dec->add_option("--variant", variant, "coarse variant: target, source or both");

    auto* match = app.add_subcommand("match", "induced partial matchings");
    add_pair_options(match);
    match->add_option("--method", method, "ladder or bl");
    match->add_flag("--compare", compare, "print both methods for every parallel morphism");
    match->add_option("--delta", delta, "interleaving parameter (cost bound)");
    match->add_option("--q", q, "coarseness parameter");
    match->add_option("--variant", variant, "coarse variant: target, source or both");

    auto* verify = app.add_subcommand("verify", "check interleaving triangles");
    add_pair_options(verify);
    verify->add_option("--delta", delta, "interleaving parameter");
    verify->add_option("--scan-delta-max", scan_max, "smallest delta <= N certifying the pair");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInputError;
    }

    try {
        if (*barcode) return cmd_barcode(file, svg, diagram);
        if (*dec) return cmd_decompose(file, sel, delta, q, variant);
        if (*match) return cmd_match(file, sel, method, compare, delta, q, variant);
        if (*verify) return cmd_verify(file, sel, delta, scan_max);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        // DimensionError, FieldMismatch and friends: the input does not fit
        std::cerr << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return kAlgorithmFailure;
    }
    return kInputError;
}

#include "suites.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <set>
#include <algorithm>
#include <sstream>

#include "generators.hpp"
#include "laddermod/io.hpp"
#include "laddermod/matching.hpp"
#include "oracles.hpp"

namespace lmtest {

std::string data_dir()
{
#ifdef LADDERMOD_DATA_DIR
    return LADDERMOD_DATA_DIR;
#else
    return "data";
#endif
}

namespace {

class Checker {
public:
    explicit Checker(SuiteResult& r) : r_(r) {}
    bool operator()(bool ok, const std::string& what)
    {
        if (!ok && r_.pass) {
            r_.pass = false;
            r_.detail = what;
        }
        return ok;
    }

private:
    SuiteResult& r_;
};

template <class F>
SuiteResult timed(F body)
{
    SuiteResult r;
    auto start = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

MorphismDocument load_doc(const std::string& name)
{
    return load_morphism_document(std::filesystem::path(data_dir()) / name);
}

Matrix column(const Field& f, std::initializer_list<mpq_class> entries)
{
    Matrix m(f, entries.size(), 1);
    std::size_t i = 0;
    for (const auto& e : entries) m(i++, 0) = Scalar(f, e);
    return m;
}

const BarGenerator* generator_for(const BarcodeBasis& b, const Interval& bar, std::size_t& index)
{
    for (std::size_t k = 0; k < b.generators.size(); ++k)
        if (b.generators[k].bar == bar) {
            index = k;
            return &b.generators[k];
        }
    return nullptr;
}

// expected vector of a generator at each index of its bar
bool generator_is(const BarcodeBasis& b, const Interval& bar, const std::function<Matrix(Index)>& expected,
                  std::string& why)
{
    std::size_t k = 0;
    if (!generator_for(b, bar, k)) {
        why = "no generator for " + bar.str();
        return false;
    }
    for (Index t = bar.a; t <= bar.b; ++t)
        if (!(b.vector(k, t) == expected(t))) {
            why = "generator " + bar.str() + " at " + std::to_string(t) + " is " + b.vector(k, t).transpose().str();
            return false;
        }
    return true;
}

std::vector<std::pair<Interval, Interval>> pair_list(const PartialMatching& m)
{
    std::vector<std::pair<Interval, Interval>> out;
    for (const auto& p : m.pairs())
        for (std::size_t k = 0; k < p.multiplicity; ++k) out.emplace_back(p.source, p.target);
    return out;
}

using Pairs = std::vector<std::pair<Interval, Interval>>;

Pairs sorted(Pairs p)
{
    std::sort(p.begin(), p.end());
    return p;
}

std::string str(const Pairs& p)
{
    std::string s;
    for (const auto& [a, b] : p) s += "(" + a.str() + "," + b.str() + ")";
    return s;
}

}  // namespace

SuiteResult golden_decomposition()
{
    return timed([](SuiteResult& r) {
        Checker check(r);
        MorphismDocument doc = load_doc("running.lmd");
        const LadderModule& phi = doc.morphism("phi").ladder;
        const Field f = phi.field();
        auto d = decompose(phi);
        r.instances = 1;
        if (!check(d.ok(), "decomposition failed")) return;
        const LadderDecomposition& dec = d.value();
        std::vector<std::string> want{"R [0,4]->[0,4]", "R [1,7]->[0,5]", "I+ [4,4]"};
        check(dec.summand_lines() == want, "summands differ");
        std::string why;
        mpq_class h(1, 2);
        // V_t has dimension 1, 2, 2, 2, 3, 1, 1, 1 at t = 0..7
        check(generator_is(dec.dom_basis, {0, 4},
                           [&](Index t) {
                               if (t == 0) return column(f, {h});
                               if (t == 4) return column(f, {h, 0, 0});
                               return column(f, {h, 0});
                           },
                           why),
              why);
        check(generator_is(dec.dom_basis, {1, 7},
                           [&](Index t) {
                               if (t <= 3) return column(f, {0, 1});
                               if (t == 4) return column(f, {0, 1, 0});
                               return column(f, {1});
                           },
                           why),
              why);
        check(generator_is(dec.dom_basis, {4, 4}, [&](Index) { return column(f, {-h, 0, 1}); }, why), why);
        check(generator_is(dec.cod_basis, {0, 4}, [&](Index) { return column(f, {1, 0}); }, why), why);
        check(generator_is(dec.cod_basis, {0, 5},
                           [&](Index t) { return t <= 4 ? column(f, {1, 1}) : column(f, {1}); }, why),
              why);
        check(is_matching_form(dec.matching), "final matrix not in matching form");
        auto mismatch = verify_decomposition(phi, dec);
        check(!mismatch, mismatch ? mismatch->str() : "");
        if (r.pass) r.detail = "R[0,4]->[0,4] + R[1,7]->[0,5] + I+[4,4], generators as printed";
    });
}

SuiteResult golden_counterexample()
{
    return timed([](SuiteResult& r) {
        Checker check(r);
        std::string text = read_file(std::filesystem::path(data_dir()) / "counterexample.lmd");
        MorphismDocument doc = parse_morphism_document(text, data_dir());
        const LadderModule& phi = doc.morphism("phi").ladder;
        r.instances = 1;
        auto pre = check_nestedness_precondition(phi, 1);
        check(!pre.holds && pre.dom == Nestedness(2) && pre.cod.is_infinite(), "expected 2 delta = min nestedness");
        auto d = decompose(phi);
        if (!check(!d.ok(), "counterexample decomposed")) return;
        const ReductionFailure& fail = d.error();
        check(fail.row_bar == Interval(0, 5) && fail.col_bar == Interval(2, 5),
              "unexpected blocking entry " + fail.str());

        BarcodeBasis bv = reduce_to_barcode_basis(phi.dom());
        BarcodeBasis bw = reduce_to_barcode_basis(phi.cod());
        MorphismMatrix mm = to_single_matrix(phi, bv, bw);
        SearchOutcome bfs = search_clearings(mm, 12, 200000);
        check(!bfs.found && bfs.exhausted, "clearing search found a matching form or did not finish");

        for (std::string p : {"prime 3", "prime 5"}) {
            std::string t = text;
            t.replace(t.find("field rational"), 14, "field " + p);
            MorphismDocument dp = parse_morphism_document(t, data_dir());
            const LadderModule& phip = dp.morphism("phi").ladder;
            MorphismMatrix mp =
                to_single_matrix(phip, reduce_to_barcode_basis(phip.dom()), reduce_to_barcode_basis(phip.cod()));
            SearchOutcome aut = search_automorphisms(mp, 1000000);
            check(!aut.found && aut.exhausted, "automorphism search over " + p + " found a matching form");
            r.instances++;
        }
        if (r.pass)
            r.detail = "ReductionFailure at " + fail.row_bar.str() + " x " + fail.col_bar.str() + "; searches exhausted (" +
                       std::to_string(bfs.explored) + " states)";
    });
}

SuiteResult golden_nestedness()
{
    return timed([](SuiteResult& r) {
        Checker check(r);
        auto xi = [](const PersistenceModule& m) { return nestedness(reduce_to_barcode_basis(m).barcode); };
        PersistenceModule ex3 = load_module(std::filesystem::path(data_dir()) / "nested_example.mod");
        check(reduce_to_barcode_basis(ex3).barcode == Barcode{{0, 8}, {1, 5}, {1, 8}, {3, 5}}, "example barcode");
        check(xi(ex3) == Nestedness(1), "example: " + xi(ex3).str());
        MorphismDocument run = load_doc("running.lmd");
        const LadderModule& phi = run.morphism("phi").ladder;
        check(xi(phi.dom()) == Nestedness(3), "running V: " + xi(phi.dom()).str());
        check(xi(phi.cod()).is_infinite(), "running W': " + xi(phi.cod()).str());
        MorphismDocument ce = load_doc("counterexample.lmd");
        check(xi(ce.morphism("phi").ladder.dom()) == Nestedness(2), "counterexample V");
        r.instances = 4;
        if (r.pass) r.detail = "1, 3, inf, 2";
    });
}

SuiteResult golden_matchings()
{
    return timed([](SuiteResult& r) {
        Checker check(r);
        MorphismDocument doc = load_doc("running.lmd");
        auto dphi = decompose(doc.morphism("phi").ladder);
        auto dpsi = decompose(doc.morphism("psi").ladder);
        if (!check(dphi.ok() && dpsi.ok(), "decomposition failed")) return;
        PartialMatching mphi = induced_matching(dphi.value(), 1);
        PartialMatching mpsi = induced_matching(dpsi.value(), 1);
        Pairs want_phi{{{0, 4}, {1, 5}}, {{1, 7}, {1, 6}}};
        Pairs want_psi{{{1, 5}, {0, 4}}, {{1, 6}, {1, 7}}};
        check(pair_list(mphi) == want_phi, "chi_phi = " + str(pair_list(mphi)));
        check(pair_list(mpsi) == want_psi, "chi_psi = " + str(pair_list(mpsi)));
        check(matching_cost(mphi) == 1, "cost phi " + matching_cost(mphi).get_str());
        check(matching_cost(mpsi) == 1, "cost psi " + matching_cost(mpsi).get_str());
        r.instances = 2;
        if (r.pass) r.detail = "chi_phi, chi_psi as printed, cost 1 each";
    });
}

SuiteResult golden_bl_divergence()
{
    return timed([](SuiteResult& r) {
        Checker check(r);
        MorphismDocument doc = load_doc("bl.lmd");
        const LadderModule& phi = doc.morphism("phi").ladder;
        const LadderModule& psi = doc.morphism("psi").ladder;
        Barcode im_phi = reduce_to_barcode_basis(image_module(phi)).barcode;
        Barcode im_psi = reduce_to_barcode_basis(image_module(psi)).barcode;
        Barcode want_im;
        want_im.add({0, 2}, 2);
        check(im_phi == want_im && im_psi == want_im, "image barcode " + im_phi.str() + " / " + im_psi.str());
        Pairs bl_want{{{0, 2}, {1, 3}}, {{0, 3}, {0, 3}}};
        check(sorted(pair_list(bl_matching(phi, 1))) == bl_want, "bl(phi) " + str(pair_list(bl_matching(phi, 1))));
        check(sorted(pair_list(bl_matching(psi, 1))) == bl_want, "bl(psi) " + str(pair_list(bl_matching(psi, 1))));
        auto dphi = decompose(phi);
        auto dpsi = decompose(psi);
        if (!check(dphi.ok() && dpsi.ok(), "decomposition failed")) return;
        Pairs lphi = sorted(pair_list(induced_matching(dphi.value(), 1)));
        Pairs lpsi = sorted(pair_list(induced_matching(dpsi.value(), 1)));
        check(lphi == sorted(Pairs{{{0, 3}, {0, 3}}, {{0, 2}, {1, 3}}}), "ladder(phi) " + str(lphi));
        check(lpsi == sorted(Pairs{{{0, 3}, {1, 3}}, {{0, 2}, {0, 3}}}), "ladder(psi) " + str(lpsi));
        check(lphi != lpsi, "ladder matchings coincide");
        r.instances = 2;
        if (r.pass) r.detail = "BL matchings equal, ladder matchings differ";
    });
}

InvertibleSuite invertible_suite(std::size_t n, unsigned seed)
{
    InvertibleSuite out;
    Checker dec_check(out.decomposition), cost_check(out.cost_bound), corr_check(out.correspondence);
    Rng rng(seed);
    auto start = std::chrono::steady_clock::now();
    std::size_t long_pairs = 0;
    try {
        for (std::size_t k = 0; k < n; ++k) {
            Field f = k % 5 == 4 ? Field::prime(7) : Field::rational();
            Index delta = 1 + static_cast<Index>(k % 2);
            InvertiblePair p = random_invertible_pair(f, rng, delta, 0, 2 * delta);
            std::string tag = "instance " + std::to_string(k) + ": ";
            if (!dec_check(check_delta_invertible(p.phi, p.psi, delta).ok(), tag + "generated pair not certified"))
                break;
            Barcode vb, wb;
            for (const auto& b : p.v_bars) vb.add(b);
            for (const auto& b : p.w_bars) wb.add(b);
            dec_check(reduce_to_barcode_basis(p.phi.dom()).barcode == vb &&
                          reduce_to_barcode_basis(p.phi.cod()).barcode == wb,
                      tag + "generated barcodes differ from the intended bars");
            dec_check(check_nestedness_precondition(p.phi, delta).holds, tag + "precondition fails");
            auto d = decompose(p.phi);
            if (!dec_check(d.ok(), tag + "decompose: " + (d ? "" : d.error().str()))) continue;
            auto mismatch = verify_decomposition(p.phi, d.value());
            dec_check(!mismatch, tag + "verify: " + (mismatch ? mismatch->str() : ""));
            out.decomposition.instances++;

            // matching of phi against the bars of W = W'(-delta)
            PartialMatching chi_phi = induced_matching(d.value(), delta);
            std::vector<Interval> w_bars;
            for (const auto& b : p.w_bars) w_bars.push_back(b.shifted(-delta));
            mpq_class cost = matching_cost(chi_phi);
            mpq_class db = brute_bottleneck(p.v_bars, w_bars);
            cost_check(cost <= delta, tag + "cost " + cost.get_str() + " > delta");
            cost_check(cost >= db, tag + "cost " + cost.get_str() + " below bottleneck " + db.get_str());
            out.cost_bound.instances++;

            // psi in interleaving form W -> V(delta)
            LadderModule psi_int = shift_ladder(p.psi, -delta);
            auto dpsi = decompose(psi_int);
            if (!corr_check(dpsi.ok(), tag + "decompose psi: " + (dpsi ? "" : dpsi.error().str()))) continue;
            auto mpsi = verify_decomposition(psi_int, dpsi.value());
            corr_check(!mpsi, tag + "verify psi: " + (mpsi ? mpsi->str() : ""));
            PartialMatching chi_psi = induced_matching(dpsi.value(), delta);
            std::set<Interval> vs(p.v_bars.begin(), p.v_bars.end()), ws(w_bars.begin(), w_bars.end());
            for (const auto& v : vs)
                for (const auto& w : ws) {
                    if (v.length() < 2 * delta || w.length() < 2 * delta) continue;
                    ++long_pairs;
                    corr_check(chi_phi.multiplicity(v, w) == chi_psi.multiplicity(w, v),
                               tag + "multiplicity of (" + v.str() + "," + w.str() + ") differs");
                }
            out.correspondence.instances++;
        }
    } catch (const std::exception& e) {
        dec_check(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.decomposition.seconds = out.cost_bound.seconds = out.correspondence.seconds = secs;
    if (out.decomposition.pass) out.decomposition.detail = "all decomposed and verified";
    if (out.cost_bound.pass) out.cost_bound.detail = "bottleneck <= cost <= delta throughout";
    if (out.correspondence.pass)
        out.correspondence.detail = std::to_string(long_pairs) + " long bar pairs symmetric";
    return out;
}

SuiteResult nested_free_suite(std::size_t n, unsigned seed)
{
    return timed([&](SuiteResult& r) {
        Checker check(r);
        Rng rng(seed);
        auto nested_free = [&] {
            while (true) {
                auto bars = random_bars(rng, 5, 0, 9, 9);
                if (oracle_nestedness(bars) < 0) return bars;
            }
        };
        for (std::size_t k = 0; k < n && r.pass; ++k) {
            Field f = k % 4 == 3 ? Field::prime(5) : Field::rational();
            RandomMorphism m = random_morphism(f, rng, nested_free(), nested_free(), 0.6);
            check(!validate_ladder(m.phi), "generated morphism invalid");
            auto d = decompose(m.phi);
            if (!check(d.ok(), "instance " + std::to_string(k) + ": " + (d ? "" : d.error().str()))) break;
            auto mm = verify_decomposition(m.phi, d.value());
            check(!mm, "instance " + std::to_string(k) + ": " + (mm ? mm->str() : ""));
            r.instances++;
        }
        if (r.pass) r.detail = "all decomposed and verified";
    });
}

SuiteResult coarse_suite(std::size_t n, unsigned seed)
{
    return timed([&](SuiteResult& r) {
        Checker check(r);
        Rng rng(seed);
        std::size_t short_bars = 0;
        for (std::size_t k = 0; k < n && r.pass; ++k) {
            Field f = Field::rational();
            Index delta = 1, q = k % 2 ? 4 : 2;
            InvertiblePair p = random_invertible_pair(f, rng, delta, q, 2 * delta + q);
            std::string tag = "instance " + std::to_string(k) + ": ";
            check(coarse_precondition(p.phi, delta, q, CoarseVariant::Both).holds, tag + "precondition");
            CoarseDecomposition cd = coarse_decompose(p.phi, p.psi, delta, q, CoarseVariant::Both);
            if (!check(cd.decomposition.ok(), tag + "coarse decomposition failed")) break;
            check(check_delta_invertible(cd.induced.phi, cd.induced.psi, delta + q / 2).ok(), tag + "induced pair");
            CoarseMatching cm = coarse_matching(p.phi, p.psi, delta, q, CoarseVariant::Both);
            if (!check(cm.decomposition.ok(), tag + "matching decomposition failed")) break;
            auto mm = verify_decomposition(cm.morphism, cm.decomposition.value());
            check(!mm, tag + (mm ? mm->str() : ""));
            mpq_class cost = matching_cost(cm.matching);
            check(cost <= delta + q / 2, tag + "cost " + cost.get_str());
            for (const auto& pr : cm.matching.pairs())
                check(pr.source.length() >= q && pr.target.length() >= q,
                      tag + "short bar matched: " + pr.source.str() + " " + pr.target.str());
            Barcode vb, wb;
            for (const auto& b : p.v_bars) vb.add(b);
            for (const auto& b : p.w_bars) wb.add(b.shifted(-delta));
            check(cm.matching.source_barcode() == vb, tag + "source bars incomplete");
            check(cm.matching.target_barcode() == wb, tag + "target bars incomplete");
            for (const auto& b : p.v_bars) short_bars += b.length() < q;
            for (const auto& b : p.w_bars) short_bars += b.length() < q;
            r.instances++;
        }
        if (r.pass) r.detail = std::to_string(short_bars) + " sub-q bars, all unmatched";
    });
}

SuiteResult oracle_suite(std::size_t n_rank, std::size_t n_mask, unsigned seed)
{
    return timed([&](SuiteResult& r) {
        Checker check(r);
        Rng rng(seed);
        for (std::size_t k = 0; k < n_rank && r.pass; ++k) {
            Field f = k % 3 == 2 ? Field::prime(3) : Field::rational();
            auto bars = random_bars(rng, 6, 0, 8, 8);
            BarModule bm = bar_module(f, bars, 0, 8);
            PersistenceModule m = apply_basis_change(bm.module, random_basis_change(bm.module, rng));
            Barcode want;
            for (const auto& b : bars) want.add(b);
            BarcodeBasis basis = reduce_to_barcode_basis(m);
            check(basis.barcode == want, "rank instance " + std::to_string(k) + ": barcode " + basis.barcode.str());
            check(!check_barcode_basis(m, basis), "rank instance " + std::to_string(k) + ": basis check");
            for (Index i = 0; i <= 8; ++i)
                for (Index j = i; j <= 8; ++j)
                    check(oracle_rank(inner_morphism_matrix(m, i, j)) == oracle_bars_containing(bars, i, j),
                          "rank instance " + std::to_string(k) + " at [" + std::to_string(i) + "," + std::to_string(j) + "]");
            r.instances++;
        }
        for (std::size_t k = 0; k < n_mask && r.pass; ++k) {
            Field f = k % 3 == 2 ? Field::prime(5) : Field::rational();
            auto ub = random_bars(rng, 4, 0, 7, 7);
            auto vb = random_bars(rng, 4, 0, 7, 7);
            auto wb = random_bars(rng, 4, 0, 7, 7);
            // fixed grid so both morphisms share the middle module
            ub.emplace_back(0, 7);
            vb.emplace_back(0, 7);
            wb.emplace_back(0, 7);
            BarModule um = bar_module(f, ub, 0, 7), vm = bar_module(f, vb, 0, 7), wm = bar_module(f, wb, 0, 7);
            BasisChange gu = random_basis_change(um.module, rng);
            BasisChange gv = random_basis_change(vm.module, rng);
            BasisChange gw = random_basis_change(wm.module, rng);
            LadderModule phi = conjugate(link_morphism(um, vm, random_links(f, rng, ub, vb, 0.7)), gu, gv);
            LadderModule psi = conjugate(link_morphism(vm, wm, random_links(f, rng, vb, wb, 0.7)), gv, gw);
            BarcodeBasis bu = reduce_to_barcode_basis(phi.dom());
            BarcodeBasis bv = reduce_to_barcode_basis(phi.cod());
            BarcodeBasis bw = reduce_to_barcode_basis(psi.cod());
            MorphismMatrix m1 = to_single_matrix(phi, bu, bv);
            MorphismMatrix m2 = to_single_matrix(psi, bv, bw);
            MorphismMatrix m3 = to_single_matrix(compose(psi, phi), bu, bw);
            Matrix expect = schoolbook_mul(m2.entries, m1.entries);
            for (std::size_t i = 0; i < expect.rows(); ++i)
                for (std::size_t j = 0; j < expect.cols(); ++j)
                    if (!oracle_overlap(m3.row_bar(i), m3.col_bar(j))) expect(i, j) = Scalar::zero(f);
            check(m3.entries == expect, "mask instance " + std::to_string(k) + ": composite differs from masked product");
            check(compose_single(m2, m1).entries == expect, "mask instance " + std::to_string(k) + ": compose_single");
            r.instances++;
        }
        if (r.pass)
            r.detail = std::to_string(n_rank) + " rank-function instances, " + std::to_string(n_mask) + " mask instances";
    });
}

SuiteResult round_trip_suite()
{
    return timed([](SuiteResult& r) {
        Checker check(r);
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(data_dir())) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& p : files) {
            std::string text = read_file(p);
            std::string again;
            if (p.extension() == ".mod") {
                PersistenceModule m = parse_module(text, p.string());
                again = print_module(m);
                check(parse_module(again) == m, p.filename().string() + ": value round trip");
            } else if (p.extension() == ".lmd") {
                MorphismDocument d = parse_morphism_document(text, data_dir(), p.string());
                again = print_morphism_document(d);
                MorphismDocument d2 = parse_morphism_document(again, data_dir());
                bool same = d2.morphisms.size() == d.morphisms.size();
                for (std::size_t k = 0; same && k < d.morphisms.size(); ++k)
                    same = ladder_equal(d.morphisms[k].ladder, d2.morphisms[k].ladder);
                check(same, p.filename().string() + ": value round trip");
            } else {
                continue;
            }
            check(again == text, p.filename().string() + ": printed form differs from file");
            r.instances++;
        }
        if (r.pass) r.detail = std::to_string(r.instances) + " files bit-identical";
    });
}

}  // namespace lmtest

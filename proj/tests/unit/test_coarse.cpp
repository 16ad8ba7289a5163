#include <filesystem>

#include "doctest.h"
#include "laddermod/coarse.hpp"
#include "laddermod/io.hpp"
#include "support/generators.hpp"
#include "support/suites.hpp"

using namespace laddermod;
using namespace lmtest;

TEST_CASE("q-splitting separates long and short bars")
{
    Rng rng(10);
    Field f = Field::rational();
    BarModule bm = bar_module(f, {{0, 5}, {1, 2}, {3, 3}, {2, 6}}, 0, 6);
    PersistenceModule m = apply_basis_change(bm.module, random_basis_change(bm.module, rng));
    QSplitting s = q_split(m, 2);
    CHECK(reduce_to_barcode_basis(s.long_part).barcode == Barcode{{0, 5}, {2, 6}});
    CHECK(reduce_to_barcode_basis(s.short_part).barcode == Barcode{{1, 2}, {3, 3}});
    // pr o inc = id on each part, inc pr + inc pr = id on m
    CHECK(ladder_equal(compose(s.pr_long, s.inc_long), identity_morphism(s.long_part)));
    CHECK(ladder_equal(compose(s.pr_short, s.inc_short), identity_morphism(s.short_part)));
    LadderModule a = compose(s.inc_long, s.pr_long), b = compose(s.inc_short, s.pr_short);
    for (Index t = m.origin(); t <= m.last(); ++t)
        CHECK(mat_add(a.component(t), b.component(t)) == Matrix::identity(f, m.dim(t)));
}

TEST_CASE("projection to the long part is a q/2-interleaving")
{
    Rng rng(11);
    for (Index q : {2, 4}) {
        auto bars = random_bars(rng, 5, 0, 8, 8);
        BarModule bm = bar_module(Field::rational(), bars, 0, 8);
        QSplitting s = q_split(bm.module, q);
        CoarseInterleaving c = coarse_interleaving(s);
        CHECK(check_interleaving(c.phi, c.phi_tilde, q / 2).ok());
        CHECK(check_delta_invertible(s.pr_long, pr_long_inverse(s), q / 2).ok());
    }
    QSplitting odd = q_split(bar_module(Field::rational(), {{0, 3}}, 0, 3).module, 3);
    CHECK_THROWS(coarse_interleaving(odd));
}

TEST_CASE("long-bar nestedness ignores short bars")
{
    Barcode b{{0, 8}, {3, 4}, {1, 7}};
    CHECK(nestedness(b) == Nestedness(1));
    CHECK(long_bar_nestedness(b, 2) == Nestedness(1));
    CHECK(long_bar_nestedness(b, 7).is_infinite());
}

TEST_CASE("grid refinement doubles bars")
{
    BarModule bm = bar_module(Field::rational(), {{0, 2}, {1, 1}}, 0, 2);
    PersistenceModule r = refine_grid(bm.module);
    CHECK(reduce_to_barcode_basis(r).barcode == Barcode{{0, 5}, {2, 3}});
}

TEST_CASE("coarse decomposition of the running pair")
{
    auto doc = load_morphism_document(std::filesystem::path(data_dir()) / "running.lmd");
    auto [phi, psi] = interleaving_to_invertible(doc.morphism("phi").ladder, doc.morphism("psi").ladder, 1);
    for (CoarseVariant v : {CoarseVariant::Target, CoarseVariant::Source, CoarseVariant::Both}) {
        CoarseDecomposition cd = coarse_decompose(phi, psi, 1, 2, v);
        REQUIRE(cd.decomposition.ok());
        CHECK(check_delta_invertible(cd.induced.phi, cd.induced.psi, 2).ok());
        CHECK(!verify_decomposition(cd.induced.phi, cd.decomposition.value()));
    }
    CHECK(parse_variant("both") == CoarseVariant::Both);
    CHECK_THROWS(parse_variant("neither"));
}

#include <filesystem>

#include "doctest.h"
#include "laddermod/io.hpp"
#include "support/generators.hpp"
#include "support/suites.hpp"

using namespace laddermod;
using namespace lmtest;

TEST_CASE("module text round trip")
{
    Rng rng(14);
    for (int k = 0; k < 50; ++k) {
        Field f = k % 2 ? Field::prime(7) : Field::rational();
        auto bars = random_bars(rng, 4, -3, 5, 6);
        BarModule bm = bar_module(f, bars, -3, 5);
        PersistenceModule m = apply_basis_change(bm.module, random_basis_change(bm.module, rng));
        std::string text = print_module(m);
        PersistenceModule back = parse_module(text);
        CHECK(back == m);
        CHECK(print_module(back) == text);
    }
}

TEST_CASE("parse errors carry a line number")
{
    std::string bad = "laddermod module\nfield rational\norigin 0\ndims 1 1\nmap 1 1x1\n1 2\n";
    try {
        parse_module(bad, "x.mod");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 6);
        CHECK(std::string(e.what()).rfind("x.mod:6:", 0) == 0);
    }
    CHECK_THROWS_AS(parse_module("laddermod module\norigin 0\ndims 1 1\n"), ParseError);  // missing map
    CHECK_THROWS_AS(parse_module("nonsense\n"), ParseError);
    CHECK_THROWS_AS(parse_module("laddermod module\norigin 0\ndims 2\nmap 1 1x1\n1\n"), ParseError);
    // comments and blank lines are fine
    PersistenceModule z = parse_module("# zero\nladdermod module\n\norigin 4\ndims 0\n");
    CHECK(z.origin() == 4);
}

TEST_CASE("morphism documents")
{
    auto doc = load_morphism_document(std::filesystem::path(data_dir()) / "running.lmd");
    CHECK(doc.delta == 1);
    CHECK(doc.pair == PairKind::Interleaving);
    CHECK(doc.morphism("phi").shift == 1);
    CHECK_THROWS(doc.morphism("nope"));
    std::string text = print_morphism_document(doc);
    auto again = parse_morphism_document(text, data_dir());
    CHECK(ladder_equal(again.morphism("psi").ladder, doc.morphism("psi").ladder));
    // a non-commuting square is an input error
    std::string broken = text;
    auto pos = broken.find("component 0 ");
    REQUIRE(pos != std::string::npos);
    auto row = broken.find('\n', pos) + 1;
    broken[row] = broken[row] == '0' ? '1' : '0';
    CHECK_THROWS_AS(parse_morphism_document(broken, data_dir()), ParseError);
}

TEST_CASE("barcode rendering")
{
    Barcode b{{0, 2}, {1, 3}};
    CHECK(barcode_listing(b) == "[0,2] [1,3]");
    std::string d = barcode_text_diagram(b, 0, 3);
    CHECK(d.find("[0,2]") != std::string::npos);
    CHECK(d.find("===") != std::string::npos);
    std::string svg = barcode_svg(b, 0, 3, "V");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(barcode_listing(Barcode{}).empty());
}

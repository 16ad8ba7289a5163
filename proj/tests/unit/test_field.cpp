#include "doctest.h"
#include "laddermod/field.hpp"

using namespace laddermod;

TEST_CASE("rational arithmetic stays exact")
{
    Field q = Field::rational();
    Scalar a = Scalar::parse(q, "1/3"), b = Scalar::parse(q, "-1/6");
    CHECK((a + b).str() == "1/6");
    CHECK((a * b).str() == "-1/18");
    CHECK((a / b).str() == "-2");
    CHECK((a - a).is_zero());
    CHECK((a * a.inverse()).is_one());
    CHECK(Scalar::parse(q, "4/8").str() == "1/2");
}

TEST_CASE("prime field arithmetic")
{
    Field f = Field::prime(7);
    Scalar a(f, 3L), b(f, 5L);
    CHECK((a + b).str() == "1");
    CHECK((a * b).str() == "1");
    CHECK((a * a.inverse()).is_one());
    CHECK((-a).str() == "4");
    CHECK(Scalar(f, -1L).str() == "6");
    // fractions are read as a * b^{-1}
    CHECK(Scalar::parse(f, "1/2").str() == "4");
    for (long x = 1; x < 7; ++x) CHECK((Scalar(f, x) * Scalar(f, x).inverse()).is_one());
}

TEST_CASE("field parsing and names")
{
    CHECK(Field::parse("rational") == Field::rational());
    CHECK(Field::parse("Q") == Field::rational());
    CHECK(Field::parse("prime 5") == Field::prime(5));
    CHECK(Field::parse("F5") == Field::prime(5));
    CHECK(Field::prime(5).name() == "prime 5");
    CHECK(Field::rational().name() == "rational");
    CHECK_THROWS(Field::prime(6));
    CHECK_THROWS(Field::parse("reals"));
}

TEST_CASE("mixing fields is refused")
{
    Scalar a(Field::rational(), 1L), b(Field::prime(3), 1L);
    CHECK_THROWS_AS(a + b, FieldMismatch);
    CHECK_THROWS(Scalar::zero(Field::rational()).inverse());
    CHECK_THROWS(Scalar::parse(Field::rational(), "1/0"));
    CHECK_THROWS(Scalar::parse(Field::rational(), "x"));
}

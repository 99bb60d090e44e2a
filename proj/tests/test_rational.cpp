#include <doctest.h>

#include "pil/rational.hpp"

using namespace pil;

TEST_CASE("rational parse and format round-trip") {
  CHECK(format_rat(parse_rat("3/4")) == "3/4");
  CHECK(format_rat(parse_rat("-3/4")) == "-3/4");
  CHECK(format_rat(parse_rat("7")) == "7/1");
  CHECK(format_rat(parse_rat("0")) == "0/1");
  CHECK(format_rat(parse_rat("6/4")) == "3/2");
  CHECK(format_rat(parse_rat("3/-6")) == "-1/2");
  CHECK(parse_rat("2/4") == Rat(1, 2));
}

TEST_CASE("rational parse rejects malformed literals") {
  CHECK_THROWS_AS(parse_rat(""), SchemaError);
  CHECK_THROWS_AS(parse_rat("a/b"), SchemaError);
  CHECK_THROWS_AS(parse_rat("1/0"), SchemaError);
  CHECK_THROWS_AS(parse_rat("1/2/3"), SchemaError);
  CHECK_THROWS_AS(parse_rat("-"), SchemaError);
  CHECK_THROWS_AS(parse_rat("1.5"), SchemaError);
}

TEST_CASE("extended rationals order infinity above everything") {
  ExtRat inf = ExtRat::inf();
  ExtRat two{Rat(2)};
  CHECK(two < inf);
  CHECK(!(inf < two));
  CHECK(inf == ExtRat::inf());
  CHECK((two + inf).infinite);
  CHECK((two + ExtRat(Rat(1, 2))).value == Rat(5, 2));
  CHECK(format_ext(inf) == "inf");
  CHECK(format_ext(two) == "2/1");
  CHECK(parse_ext("inf").infinite);
  CHECK(parse_ext("5/3").value == Rat(5, 3));
}

TEST_CASE("floor division matches mathematical floor for negatives") {
  CHECK(rat_floor_div(Rat(7, 2), Rat(1)) == Rat(3));
  CHECK(rat_floor_div(Rat(-7, 2), Rat(1)) == Rat(-4));
  CHECK(rat_floor_div(Rat(6), Rat(2)) == Rat(3));
  CHECK(rat_floor_div(Rat(-6), Rat(2)) == Rat(-3));
  CHECK(rat_floor_div(Rat(1, 3), Rat(1, 2)) == Rat(0));
  CHECK(rat_floor_div(Rat(-1, 3), Rat(1, 2)) == Rat(-1));
  // ceiling via -floor(-x/d)
  CHECK(-rat_floor_div(Rat(-7, 2), Rat(1)) == Rat(4));
}

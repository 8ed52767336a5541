#include <doctest.h>

#include "iospec/parser.hpp"
#include "support/generators.hpp"

using namespace iospec;
using namespace iospec::testing;

TEST_CASE("parse the prompting sum specification") {
  const Specification s = parseSpec(kPromptingSumText);
  const Term lenX = apply("len", {all("x")});
  const Specification expected =
      seq({readInput("n", InputDomain::naturals()),
           tillExit(branch(apply("==", {lenX, current("n")}),
                           seq({writeOutput(OutputTermSet{true, {apply("-", {current("n"), lenX})}}),
                                readInput("x", InputDomain::integers())}),
                           exitMarker())),
           writeOutput({apply("sum", {all("x")})})});
  CHECK(s == expected);
}

TEST_CASE("operator precedence and associativity") {
  CHECK(parseTerm("1 + 2 * 3") == apply("+", {constant(1), apply("*", {constant(2), constant(3)})}));
  CHECK(parseTerm("1 - 2 - 3") == apply("-", {apply("-", {constant(1), constant(2)}), constant(3)}));
  CHECK(parseTerm("(1 + 2) * 3") == apply("*", {apply("+", {constant(1), constant(2)}), constant(3)}));
  CHECK(parseTerm("a_C < 1 || b_C < 2 && not (c_C == 3)") ==
        apply("or", {apply("<", {current("a"), constant(1)}),
                     apply("and", {apply("<", {current("b"), constant(2)}),
                                   apply("not", {apply("==", {current("c"), constant(3)})})})}));
  CHECK(parseTerm("-4") == constant(-4));
  CHECK(parseTerm("-x_C") == apply("-", {constant(0), current("x")}));
  CHECK(parseTerm("sum(x_A)") == apply("sum", {all("x")}));
  CHECK(parseTerm("len(my_var_A)") == apply("len", {all("my_var")}));
}

TEST_CASE("chained comparisons are rejected") {
  CHECK_THROWS_AS(parseTerm("1 < 2 < 3"), ParseError);
}

TEST_CASE("parse errors carry a span and the expected tokens") {
  try {
    parseSpec("read x : ints\nwrite { x_C\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.span.startLine == 3);
    CHECK_FALSE(e.expected.empty());
  }
  try {
    parseSpec("read x ints");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.span.startLine == 1);
    CHECK(e.span.startColumn == 8);
  }
  CHECK_THROWS_AS(parseSpec("read x : ints $"), ParseError);
  CHECK_THROWS_AS(parseSpec("read read : ints"), ParseError);
  CHECK_THROWS_AS(parseSpec("write { }"), ParseError);
  CHECK_THROWS_AS(parseSpec("if 1 == 1 then { skip }"), ParseError);
  CHECK_THROWS_AS(parseSpec("read x : { }"), ParseError);
  CHECK_THROWS_AS(parseSpec("}"), ParseError);
}

TEST_CASE("static errors are reported after parsing") {
  try {
    parseSpec("write { x_C } read x : ints");
    FAIL("no error");
  } catch (const StaticError& e) {
    REQUIRE(e.violations.size() == 1);
    CHECK(e.violations[0].kind == ViolationKind::UseBeforeRead);
  }
  CHECK_THROWS_AS(parseSpec("exit"), StaticError);
  CHECK_THROWS_AS(parseSpec("loop { write { 1 } }"), StaticError);
  CHECK_THROWS_AS(parseSpec("write { eps }"), StaticError);
  CHECK_NOTHROW(parseSpecUnchecked("exit"));
}

TEST_CASE("comments, skip and explicit domains") {
  const Specification s = parseSpec("# header\nskip read d : {3, -1, 3} # trailing\nskip");
  CHECK(s == readInput("d", InputDomain::of({-1, 3})));
  CHECK(parseSpec("").empty());
  CHECK(parseSpec("skip").empty());
}

TEST_CASE("rendering") {
  CHECK(renderSpec(Specification{}) == "skip");
  CHECK(renderSpec(parseSpec(kSumText)) ==
        "read n : nats\n"
        "loop {\n"
        "  if len(x_A) == n_C then {\n"
        "    exit\n"
        "  } else {\n"
        "    read x : ints\n"
        "  }\n"
        "}\n"
        "write { sum(x_A) }");
  CHECK(renderTerm(parseTerm("(1 - 2) - (3 - 4)")) == "1 - 2 - (3 - 4)");
  CHECK(renderTerm(parseTerm("(1 + 2) * -3")) == "(1 + 2) * -3");
  CHECK(renderTerm(parseTerm("not (a_C < 1 && true_C == 2)")) == "not (a_C < 1 && true_C == 2)");
}

TEST_CASE("property: parseSpec is the inverse of renderSpec") {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const Specification s = normalizeSpec(randomSpec(rng));
    const std::string text = renderSpec(s);
    Specification back;
    REQUIRE_NOTHROW(back = parseSpec(text));
    CHECK_MESSAGE(back == s, text);
    CHECK(renderSpec(back) == text);
  }
}

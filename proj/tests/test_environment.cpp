#include <doctest.h>

#include "iospec/environment.hpp"
#include "iospec/parser.hpp"
#include "support/generators.hpp"

using namespace iospec;
using namespace iospec::testing;

namespace {

const FunctionRegistry& reg() { return FunctionRegistry::builtins(); }

Value eval(const char* term, const Environment& env) { return evalTerm(parseTerm(term), env, reg()); }

}  // namespace

TEST_CASE("histories are chronological and persistent") {
  const Environment e0 = Environment::initial({"x", "n"});
  const Environment e1 = e0.store("x", 4);
  const Environment e2 = e1.store("x", -2);
  CHECK(e0.history("x").empty());
  CHECK(e1.history("x") == ints({4}));
  CHECK(e2.history("x") == ints({4, -2}));
  CHECK(e2.historyLength("x") == 2);
  CHECK(*e2.current("x") == -2);
  CHECK(e0.current("x") == nullptr);
  CHECK(e2.history("unknown").empty());
  CHECK_FALSE(e1 == e2);
  CHECK(e1 == e0.store("x", 4));
  CHECK(e1.fingerprint() == e0.store("x", 4).fingerprint());
  CHECK(e1.fingerprint() != e2.fingerprint());
}

TEST_CASE("term evaluation") {
  const Environment env = Environment::initial({"x", "n"}).store("n", 3).store("x", 5).store("x", -1).store("x", 7);
  CHECK(std::get<Integer>(eval("sum(x_A)", env)) == 11);
  CHECK(std::get<Integer>(eval("len(x_A)", env)) == 3);
  CHECK(std::get<Integer>(eval("x_C * 2 - n_C", env)) == 11);
  CHECK(std::get<bool>(eval("len(x_A) == n_C", env)));
  CHECK_FALSE(std::get<bool>(eval("x_C < 0 || not (n_C >= 3)", env)));
  CHECK(std::get<std::vector<Integer>>(evalTerm(all("x"), env, reg())) == ints({5, -1, 7}));
  CHECK(std::get<Integer>(eval("sum(y_A)", env)) == 0);
}

TEST_CASE("arithmetic does not overflow") {
  Environment env = Environment::initial({"x"}).store("x", Integer("9223372036854775807"));
  CHECK(std::get<Integer>(eval("x_C * x_C + 1", env)) == Integer("85070591730234615847396907784232501250"));
}

TEST_CASE("x_C without a value is an evaluation error") {
  CHECK_THROWS_AS(eval("x_C + 1", Environment::initial({"x"})), UnboundCurrent);
  try {
    eval("x_C", Environment{});
  } catch (const UnboundCurrent& e) {
    CHECK(e.variable == "x");
  }
  CHECK_THROWS_AS(evalTerm(apply("nosuch", {}), Environment{}, reg()), EvalError);
}

TEST_CASE("output sets evaluate to word sets") {
  const Environment env = Environment::initial({"x"}).store("x", 3);
  const OutputWordSet s = evalOutputSet(OutputTermSet::of(true, {current("x"), constant(3), constant(1)}), env, reg());
  CHECK(s == OutputWordSet{{}, {Integer(3)}, {Integer(1)}});
  CHECK(evalOutputSet(OutputTermSet::of(false, {current("x")}), env, reg()) == OutputWordSet{{Integer(3)}});
}

TEST_CASE("word set concatenation") {
  const OutputWordSet a{{}, {Integer(1)}};
  const OutputWordSet b{{}, {Integer(1)}};
  CHECK(a.concat(b) == OutputWordSet{{}, {Integer(1)}, {Integer(1), Integer(1)}});
  CHECK(renderWordSet(a.concat(b)) == "{eps, 1, <1 1>}");
  CHECK(OutputWordSet{{Integer(2)}}.isValid());
  CHECK_FALSE(OutputWordSet{{}}.isValid());
  CHECK_FALSE(OutputWordSet{}.isValid());
}

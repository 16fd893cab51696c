#include "doctest.h"

#include <cstdint>
#include <map>
#include <vector>

#include "brelim/constructions.hpp"
#include "brelim/eval.hpp"
#include "brelim/harness.hpp"
#include "brelim/parser.hpp"
#include "brelim/translate.hpp"
#include "brelim/typecheck.hpp"

using namespace brelim;

static const FinType kN = FinType::nat();
static const FinType kNN = FinType::arrow(kN, kN);
static const CircContext kCtx{kN, kN};

namespace {

bool uses_primitive_tags(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::Plus:
    case Term::Tag::Monus:
    case Term::Tag::Max:
    case Term::Tag::Lt:
    case Term::Tag::Geq:
    case Term::Tag::IfZero:
      return true;
    default:
      break;
  }
  for (size_t i = 0; i < t.arity(); ++i)
    if (uses_primitive_tags(t.kid(i))) return true;
  return false;
}

std::uint64_t run_num(const Term& t) {
  Fuel fuel;
  return eval_closed(t, fuel).num_value();
}

}  // namespace

TEST_CASE("desugaring preserves values and removes every primitive") {
  const char* sources[] = {
      "plus 3 4",   "monus 2 5",   "monus 5 2",  "max 3 6",     "max 6 3",
      "lt 2 2",     "lt 1 2",      "geq 2 2",    "geq 1 2",     "if0 0 7 8",
      "if0 3 7 8",  "plus (max 2 3) (monus 4 (lt 0 1))",
  };
  TypingContext empty;
  for (const char* src : sources) {
    Term t = parse_term(src);
    Term d = desugar(t, empty);
    CHECK(!uses_primitive_tags(d));
    CHECK(run_num(d) == run_num(t));
    CHECK(typecheck_closed(d) == kN);
  }
}

TEST_CASE("desugaring if0 at function type keeps both branches applicable") {
  TypingContext empty;
  Term t = parse_term("if0 (lt 0 1) (fun n:N. S n) (fun n:N. 0)");
  Term d = desugar(t, empty);
  CHECK(!uses_primitive_tags(d));
  Fuel fuel;
  CHECK(apply(eval_closed(d, fuel), Value::num(4), fuel).num_value() == 5);
}

TEST_CASE("desugaring leaves lambda structure and variables alone") {
  TypingContext ctx;
  ctx.bind("b", kN);
  Term t = parse_term("fun x:N. plus x b");
  Term d = desugar(t, ctx);
  REQUIRE(d.is(Term::Tag::Lam));
  CHECK(free_vars(d) == std::set<std::string>{"b"});
  Fuel fuel;
  Env env = Env().extend("b", Value::num(10));
  CHECK(apply(eval(d, env, fuel), Value::num(5), fuel).num_value() == 15);
}

TEST_CASE("translating zero gives the literal pair") {
  CircResult r = circ_term(parse_term("0"), kCtx, "alpha", {});
  Term expected = parse_term(
      "<fun al':N -> N. 0, fun G':N* -> N. fun H':N* -> (N -> N) -> N. G'>");
  CHECK(alpha_equal(r.translated, expected));
  CHECK(typecheck_closed(r.translated) == circ_type(kN, kCtx));
}

TEST_CASE("translating a successor keeps the value and passes the bar along") {
  CircResult r = circ_term(parse_term("S 0"), kCtx, "alpha", {});
  Term norm = normalize(r.translated, 10'000);
  REQUIRE(norm.is(Term::Tag::Pair));
  // value component: one successor over the embedded zero
  Fuel fuel;
  Value alpha = Value::host([](const Value& v, Fuel&) { return v; });
  CHECK(apply(eval_closed(fst(r.translated), fuel), alpha, fuel).num_value() == 1);
  // bar component: unchanged from zero's trivial one
  Term trivial = parse_term("fun G':N* -> N. fun H':N* -> (N -> N) -> N. G'");
  CHECK(alpha_equal(normalize(snd(r.translated), 10'000), trivial));
}

TEST_CASE("translating one choice-sequence call produces the depth-0 unfolder") {
  CircResult r = circ_term(parse_term("alpha 0"), kCtx, "alpha", {});
  CHECK(typecheck_closed(r.translated) == circ_type(kN, kCtx));

  PsiTerm psi = build_psi(kCtx);
  Term expected_b = lam(
      "G'", kCtx.g_type(),
      lam("H'", kCtx.h_type(),
          lam("q'", FinType::seq(kCtx.tau),
              app(psi.term, {nat_lit(0), var("G'"), var("H'"), var("q'")}))));
  CHECK(alpha_equal(normalize(snd(r.translated), 100'000),
                    normalize(expected_b, 100'000)));
}

TEST_CASE("translation is deterministic and bar-recursor-free") {
  for (const auto& e : corpus()) {
    if (e.tau != kN) continue;
    Term body = parse_term(e.source).kid(0);
    CircResult a = circ_term(body, {e.tau, kN}, "alpha", {});
    CircResult b = circ_term(body, {e.tau, kN}, "alpha", {});
    CHECK(print(a.translated) == print(b.translated));
    CHECK(a.translated.br_free());
  }
}

TEST_CASE("translated corpus bodies typecheck at the translated type") {
  for (const auto& e : corpus()) {
    CircContext ctx{e.tau, kN};
    Term body = parse_term(e.source).kid(0);
    CircResult r = circ_term(body, ctx, "alpha", {});
    CHECK(typecheck_closed(r.translated) == circ_type(kN, ctx));
  }
}

TEST_CASE("free variables are renamed through the varmap") {
  std::map<std::string, FinType> frees{{"b", kN}, {"c", kNN}};
  Term t = parse_term("plus b (c (alpha 0))");
  CircResult r = circ_term(t, kCtx, "alpha", frees);
  REQUIRE(r.varmap.size() == 2);
  CHECK(r.varmap.at("b") == "b'c");
  CHECK(r.varmap.at("c") == "c'c");
  CHECK(free_vars(r.translated) == std::set<std::string>{"b'c", "c'c"});

  TypingContext tc;
  tc.bind("b'c", circ_type(kN, kCtx));
  tc.bind("c'c", circ_type(kNN, kCtx));
  CHECK(typecheck(r.translated, tc) == circ_type(kN, kCtx));
}

TEST_CASE("translation rejects inputs outside the fragment") {
  CHECK_THROWS_AS(circ_term(parse_term("len nil[N]"), kCtx, "alpha", {}), TranslateError);
  CHECK_THROWS_AS(circ_term(parse_term("<0, 0>"), kCtx, "alpha", {}), TranslateError);
  CHECK_THROWS_AS(circ_term(parse_term("br[N, N]"), kCtx, "alpha", {}), TranslateError);
  // recursors must land in N or rho -> N
  CHECK_THROWS_WITH_AS(
      circ_term(parse_term("rec[N -> N -> N] (fun a:N. fun b:N. a) "
                           "(fun k:N. fun r:N -> N -> N. r) (alpha 0) 1 2"),
                kCtx, "alpha", {}),
      doctest::Contains("only rec[N] and rec[rho -> N]"), TranslateError);
  // apostrophes in user identifiers collide with generated binders
  CHECK_THROWS_WITH_AS(circ_term(parse_term("fun x':N. x'"), kCtx, "alpha", {}),
                       doctest::Contains("apostrophe"), TranslateError);
  // free variables must be declared
  CHECK_THROWS_AS(circ_term(parse_term("plus b 1"), kCtx, "alpha", {}), Error);
  // alpha cannot double as an ordinary free variable
  std::map<std::string, FinType> bad{{"alpha", kNN}};
  CHECK_THROWS_AS(circ_term(parse_term("alpha 0"), kCtx, "alpha", bad), TranslateError);
}

TEST_CASE("eliminate_br rejects terms that are not stopping functionals") {
  CHECK_THROWS_AS(eliminate_br(parse_term("fun alpha:N. alpha"), kCtx), Error);
  CHECK_THROWS_AS(eliminate_br(parse_term("fun alpha:N -> N. alpha"), kCtx), Error);
  CHECK_THROWS_AS(eliminate_br(parse_term("plus b 1"), kCtx), Error);
}

TEST_CASE("eliminate_br output is closed, bar-free and well-typed") {
  for (const auto& e : corpus()) {
    CircContext ctx{e.tau, kN};
    Elimination el = eliminate_br(parse_term(e.source), ctx);
    CHECK(el.term.br_free());
    CHECK(free_vars(el.term).empty());
    CHECK(typecheck_closed(el.term) == ctx.b_type());
  }
}

TEST_CASE("eliminate_br eta-expands a point-free stopping functional") {
  // same functional written without its own binder
  Term pointfree = parse_term("(fun f:(N -> N) -> N. f) (fun alpha:N -> N. alpha 0)");
  Elimination el = eliminate_br(pointfree, kCtx);
  CHECK(typecheck_closed(el.term) == kCtx.b_type());
  Elimination direct = eliminate_br(parse_term("fun alpha:N -> N. alpha 0"), kCtx);
  Fuel fuel;
  Value a = eval_closed(el.term, fuel);
  Value b = eval_closed(direct.term, fuel);
  for (std::uint64_t g_id = 0; g_id < g_grammar_size(); ++g_id) {
    Value G = make_g(kCtx, g_id);
    Value H = make_h(kCtx, 0);
    Value s = Value::seq(kN, {Value::num(2)});
    Value va = apply(apply(apply(a, G, fuel), H, fuel), s, fuel);
    Value vb = apply(apply(apply(b, G, fuel), H, fuel), s, fuel);
    CHECK(va.num_value() == vb.num_value());
  }
}

TEST_CASE("the eliminated term opens with the carried-over candidate") {
  Term y = parse_term("fun alpha:N -> N. rec[N] 0 (fun k:N. alpha) (alpha 0)");
  Elimination el = eliminate_br(y, kCtx);

  FinType st = FinType::seq(kN);
  Term q_arm = lam("q'", st,
                   app(el.psi, {app(y, hat(var("q'"))), var("G'"), var("H'"), var("q'")}));
  Term expected =
      lam("G'", kCtx.g_type(),
          lam("H'", kCtx.h_type(),
              lam("s'", st,
                  app(app(app(el.b_component, q_arm),
                          app(app(el.guarded_h, var("G'")), var("H'"))),
                      var("s'")))));
  CHECK(alpha_equal(normalize(el.term, 200'000), normalize(expected, 200'000)));
}

TEST_CASE("normalization performs projections and stops at its cap") {
  Term t = parse_term("fst <plus 1 1, 0>");
  CHECK(normalize(t, 100).as_numeral() == std::nullopt);  // plus stays symbolic
  CHECK(print(normalize(t, 100)) == "plus 1 1");
  CHECK(normalize(parse_term("(fun x:N. S x) 3"), 100).as_numeral() == 4);
  CHECK(normalize(parse_term("snd <0, (fun x:N. x) 1>"), 100).as_numeral() == 1);

  // self-application is outside the type system, so build raw nested redexes
  Term loop = parse_term(
      "(fun a:N. (fun b:N. (fun c:N. (fun d:N. 0) c) b) a) ((fun z:N. z) 9)");
  CHECK_THROWS_AS(normalize(loop, 2), Error);
}

TEST_CASE("fst of a translated term recovers the source meaning") {
  for (const auto& e : corpus()) {
    CircContext ctx{e.tau, kN};
    Term full = parse_term(e.source);
    Term body = full.kid(0);
    CircResult r = circ_term(body, ctx, "alpha", {});

    Fuel fuel;
    Value val = eval_closed(fst(r.translated), fuel);
    Value yv = eval_closed(full, fuel);
    for (std::uint64_t i = 0; i < 20; ++i) {
      Value alpha = ctx.tau_is_nat()
                        ? Value::host([i](const Value& n, Fuel&) {
                            return Value::num((n.num_value() * (i % 3 + 1) + i) % 5);
                          })
                        : Value::host([i](const Value& n, Fuel&) {
                            return Value::host([i, n](const Value& m, Fuel&) {
                              return Value::num((n.num_value() + m.num_value() + i) % 4);
                            });
                          });
      CHECK(apply(val, alpha, fuel).num_value() == apply(yv, alpha, fuel).num_value());
    }
  }
}

#include "brelim/translate.hpp"

#include <optional>
#include <set>

#include "brelim/constructions.hpp"

namespace brelim {

namespace {

const FinType& nat_ty() {
  static const FinType n = FinType::nat();
  return n;
}

// ---- desugaring --------------------------------------------------------

// Closed helpers; internal binders use reserved apostrophized names, so no
// capture is possible no matter what the surrounding term looks like.

const Term& plus_comb() {
  static const Term t = lam(
      "a'", nat_ty(),
      lam("b'", nat_ty(),
          app(app(app(rec(nat_ty()), var("a'")),
                  lam("k'", nat_ty(), lam("r'", nat_ty(), succ(var("r'"))))),
              var("b'"))));
  return t;
}

const Term& monus_comb() {
  // Predecessor of r', then iterate it b' times starting from a'.
  static const Term t = [] {
    Term pred = app(app(app(rec(nat_ty()), zero()),
                        lam("k2'", nat_ty(), lam("r2'", nat_ty(), var("k2'")))),
                    var("r'"));
    return lam("a'", nat_ty(),
               lam("b'", nat_ty(),
                   app(app(app(rec(nat_ty()), var("a'")),
                           lam("k'", nat_ty(), lam("r'", nat_ty(), pred))),
                       var("b'"))));
  }();
  return t;
}

const Term& sg_comb() {
  // 0 for 0, 1 for successors.
  static const Term t =
      lam("n'", nat_ty(),
          app(app(app(rec(nat_ty()), zero()),
                  lam("k'", nat_ty(), lam("r'", nat_ty(), succ(zero())))),
              var("n'")));
  return t;
}

const Term& lt_comb() {
  // a < b iff (a+1) - b = 0; collapse to the canonical 0/1 with sg.
  static const Term t =
      lam("a'", nat_ty(),
          lam("b'", nat_ty(),
              app(sg_comb(), app(app(monus_comb(), succ(var("a'"))), var("b'")))));
  return t;
}

const Term& geq_comb() {
  // a >= b iff b - a = 0.
  static const Term t =
      lam("a'", nat_ty(),
          lam("b'", nat_ty(),
              app(sg_comb(), app(app(monus_comb(), var("b'")), var("a'")))));
  return t;
}

const Term& max_comb() {
  // max a b = a + (b - a).
  static const Term t =
      lam("a'", nat_ty(),
          lam("b'", nat_ty(),
              app(app(plus_comb(), var("a'")),
                  app(app(monus_comb(), var("b'")), var("a'")))));
  return t;
}

Term ds(const Term& t, TypingContext& ctx) {
  using Tag = Term::Tag;
  switch (t.tag()) {
    case Tag::Var:
    case Tag::Zero:
    case Tag::Rec:
      return t;
    case Tag::Succ:
      return succ(ds(t.kid(0), ctx));
    case Tag::Lam: {
      ctx.push(t.name(), t.type());
      Term body = ds(t.kid(0), ctx);
      ctx.pop();
      return lam(t.name(), t.type(), std::move(body));
    }
    case Tag::App:
      return app(ds(t.kid(0), ctx), ds(t.kid(1), ctx));
    case Tag::Plus:
      return app(app(plus_comb(), ds(t.kid(0), ctx)), ds(t.kid(1), ctx));
    case Tag::Monus:
      return app(app(monus_comb(), ds(t.kid(0), ctx)), ds(t.kid(1), ctx));
    case Tag::Max:
      return app(app(max_comb(), ds(t.kid(0), ctx)), ds(t.kid(1), ctx));
    case Tag::Lt:
      return app(app(lt_comb(), ds(t.kid(0), ctx)), ds(t.kid(1), ctx));
    case Tag::Geq:
      return app(app(geq_comb(), ds(t.kid(0), ctx)), ds(t.kid(1), ctx));
    case Tag::IfZero: {
      Term c = ds(t.kid(0), ctx);
      Term z = ds(t.kid(1), ctx);
      Term nz = ds(t.kid(2), ctx);
      FinType rho = typecheck(z, ctx);
      // if0 c z nz = rec[rho] z (fun _ _. nz) c; the step fires only for
      // positive scrutinees, matching the primitive's branch selection.
      std::set<std::string> avoid = free_vars(nz);
      std::string k = fresh_name("k", avoid);
      avoid.insert(k);
      std::string r = fresh_name("r", avoid);
      return app(app(app(rec(rho), std::move(z)),
                     lam(k, nat_ty(), lam(r, rho, std::move(nz)))),
                 std::move(c));
    }
    default:
      throw TranslateError("not in the translation's source fragment: " + print(t));
  }
}

// ---- the term translation ----------------------------------------------

std::string mangled(const std::string& name) { return name + "'c"; }

void reject_reserved_names(const Term& t) {
  if ((t.tag() == Term::Tag::Var || t.tag() == Term::Tag::Lam) &&
      t.name().find('\'') != std::string::npos)
    throw TranslateError("identifier '" + t.name() +
                         "' uses an apostrophe, which is reserved for generated names");
  for (size_t i = 0; i < t.arity(); ++i) reject_reserved_names(t.kid(i));
}

struct Translator {
  const CircContext& ctx;
  const std::string& alpha;
  const std::map<std::string, FinType>& free_types;
  Term psi;

  FinType nc, gt, ht, st, alt;

  Translator(const CircContext& ctx_, const std::string& alpha_,
             const std::map<std::string, FinType>& free_types_, Term psi_)
      : ctx(ctx_),
        alpha(alpha_),
        free_types(free_types_),
        psi(std::move(psi_)),
        nc(circ_type(nat_ty(), ctx_)),
        gt(ctx_.g_type()),
        ht(ctx_.h_type()),
        st(FinType::seq(ctx_.tau)),
        alt(FinType::arrow(nat_ty(), ctx_.tau)) {}

  Term trivial_b() const { return lam("G'", gt, lam("H'", ht, var("G'"))); }

  Term zero_pair() const {
    return pair(lam("al'", alt, zero()), trivial_b());
  }

  Term succ_comb() const {
    return lam("x'", nc,
               pair(lam("al'", alt, succ(app(fst(var("x'")), var("al'")))),
                    snd(var("x'"))));
  }

  // psi (fst x' (hat q')) G' H' q'
  Term psi_at(Term bound_index) const {
    return app(app(app(app(psi, std::move(bound_index)), var("G'")), var("H'")), var("q'"));
  }

  Term alpha_comb() const {
    if (ctx.tau_is_nat()) {
      // fun x'. < fun al'. al' (fst x' al'),
      //           fun G'. fun H'. snd x' (fun q'. psi (fst x' (hat q')) G' H' q') H' >
      Term arm = lam("q'", st, psi_at(app(fst(var("x'")), hat(var("q'")))));
      return lam(
          "x'", nc,
          pair(lam("al'", alt, app(var("al'"), app(fst(var("x'")), var("al'")))),
               lam("G'", gt,
                   lam("H'", ht, app(app(snd(var("x'")), arm), var("H'"))))));
    }
    // Two-argument form: both indices must be settled, so the unfolding
    // depth is the max of the two values and the two b components chain.
    Term arm = lam("q'", st, psi_at(max(app(fst(var("x'")), hat(var("q'"))),
                                        app(fst(var("y'")), hat(var("q'"))))));
    Term chained = app(app(snd(var("x'")), arm), var("H'"));
    Term bcomp = lam(
        "G'", gt,
        lam("H'", ht, app(app(snd(var("y'")), std::move(chained)), var("H'"))));
    Term val = lam("al'", alt,
                   app(app(var("al'"), app(fst(var("x'")), var("al'"))),
                       app(fst(var("y'")), var("al'"))));
    return lam("x'", nc, lam("y'", nc, pair(std::move(val), std::move(bcomp))));
  }

  Term rec_comb(const FinType& eta) const {
    bool to_nat = eta.is_nat();
    if (!to_nat && !(eta.is_arrow() && eta.cod().is_nat()))
      throw TranslateError("recursor at type " + eta.show() +
                           " is outside the translation; only rec[N] and rec[rho -> N] occur "
                           "in the source fragment");
    FinType etac = circ_type(eta, ctx);
    FinType ft = FinType::arrow(nc, FinType::arrow(etac, etac));
    // Numeral literals lift to < fun al'. k', fun G'. fun H'. G' >.
    Term kpair = pair(lam("al'", alt, var("k'")), trivial_b());
    Term step = lam("k'", nat_ty(), app(var("F'"), std::move(kpair)));
    auto iterate = [&](Term count) {
      Term base = app(app(app(rec(etac), var("a'")), step), std::move(count));
      return to_nat ? base : app(std::move(base), var("v'"));
    };
    Term val = lam("al'", alt,
                   app(fst(iterate(app(fst(var("x'")), var("al'")))), var("al'")));
    Term arm = lam("q'", st,
                   app(app(app(snd(iterate(app(fst(var("x'")), hat(var("q'"))))),
                               var("G'")),
                           var("H'")),
                       var("q'")));
    Term bcomp =
        lam("G'", gt,
            lam("H'", ht, app(app(snd(var("x'")), std::move(arm)), var("H'"))));
    Term body = pair(std::move(val), std::move(bcomp));
    if (!to_nat) body = lam("v'", circ_type(eta.dom(), ctx), std::move(body));
    return lam("a'", etac,
               lam("F'", ft, lam("x'", nc, std::move(body))));
  }

  Term go(const Term& t, std::set<std::string>& bound) const {
    using Tag = Term::Tag;
    switch (t.tag()) {
      case Tag::Zero:
        return zero_pair();
      case Tag::Succ:
        return app(succ_comb(), go(t.kid(0), bound));
      case Tag::Var: {
        if (t.name() == alpha && !bound.count(t.name())) return alpha_comb();
        if (bound.count(t.name()) || free_types.count(t.name())) return var(mangled(t.name()));
        throw TranslateError("free variable '" + t.name() + "' has no assigned type");
      }
      case Tag::Lam: {
        FinType bty = circ_type(t.type(), ctx);
        bool fresh = bound.insert(t.name()).second;
        Term body = go(t.kid(0), bound);
        if (fresh) bound.erase(t.name());
        return lam(mangled(t.name()), std::move(bty), std::move(body));
      }
      case Tag::App:
        return app(go(t.kid(0), bound), go(t.kid(1), bound));
      case Tag::Rec:
        return rec_comb(t.type());
      default:
        throw TranslateError("not in the translation's source fragment: " + print(t));
    }
  }
};

}  // namespace

Term desugar(const Term& t, TypingContext& ctx) { return ds(t, ctx); }

CircResult circ_term(const Term& t, const CircContext& ctx, const std::string& alpha,
                     const std::map<std::string, FinType>& free_types) {
  reject_reserved_names(t);
  if (free_types.count(alpha))
    throw TranslateError("'" + alpha + "' is the choice-sequence variable; do not list it");

  TypingContext tctx;
  tctx.bind(alpha, FinType::arrow(FinType::nat(), ctx.tau));
  for (const auto& [name, ty] : free_types) tctx.bind(name, ty);
  typecheck(t, tctx);  // reject ill-typed input up front

  Term plain = desugar(t, tctx);
  Translator tr(ctx, alpha, free_types, build_psi(ctx).term);
  std::set<std::string> bound;
  Term translated = tr.go(plain, bound);

  std::map<std::string, std::string> varmap;
  for (const std::string& v : free_vars(t))
    if (v != alpha) varmap[v] = mangled(v);
  return CircResult{t, std::move(translated), ctx, std::move(varmap)};
}

Elimination eliminate_br(const Term& y, const CircContext& ctx) {
  FinType yt = typecheck_closed(y);
  if (yt != ctx.y_type())
    throw TranslateError("eliminate_br needs a closed term of type " + ctx.y_type().show() +
                         ", got " + yt.show());
  Term fn = y;
  if (!fn.is(Term::Tag::Lam)) fn = lam("alpha", FinType::arrow(FinType::nat(), ctx.tau),
                                       app(fn, var("alpha")));

  reject_reserved_names(fn);
  const std::string& alpha = fn.name();
  Term body = fn.kid(0);

  Term psi = build_psi(ctx).term;
  TypingContext tctx;
  tctx.bind(alpha, FinType::arrow(FinType::nat(), ctx.tau));
  typecheck(body, tctx);
  Term plain = desugar(body, tctx);
  const std::map<std::string, FinType> no_frees;
  Translator tr(ctx, alpha, no_frees, psi);
  std::set<std::string> bound;
  Term translated = tr.go(plain, bound);
  Term b_component = snd(translated);

  PhiTerm phi = build_phi(y, ctx, psi);
  // One administrative beta step: plug the b component in for phi's D'.
  Term out = subst(phi.term.kid(0), phi.term.name(), b_component);
  FinType out_ty = typecheck_closed(out);
  if (out_ty != ctx.b_type())
    throw TranslateError("internal: eliminated term has type " + out_ty.show());

  return Elimination{std::move(out), std::move(psi), std::move(phi.guard),
                     std::move(b_component),
                     CircResult{body, std::move(translated), ctx, {}}};
}

namespace {

std::optional<Term> contract(const Term& t) {
  switch (t.tag()) {
    case Term::Tag::App:
      if (t.kid(0).is(Term::Tag::Lam))
        return subst(t.kid(0).kid(0), t.kid(0).name(), t.kid(1));
      break;
    case Term::Tag::Fst:
      if (t.kid(0).is(Term::Tag::Pair)) return t.kid(0).kid(0);
      break;
    case Term::Tag::Snd:
      if (t.kid(0).is(Term::Tag::Pair)) return t.kid(0).kid(1);
      break;
    default:
      break;
  }
  return std::nullopt;
}

std::optional<Term> step_lmo(const Term& t) {
  if (auto r = contract(t)) return r;
  for (size_t i = 0; i < t.arity(); ++i) {
    if (auto r = step_lmo(t.kid(i))) {
      auto node = *t.node();
      node.kids[i] = *r;
      return Term(std::make_shared<const Term::Node>(std::move(node)));
    }
  }
  return std::nullopt;
}

}  // namespace

Term normalize(const Term& t, std::uint64_t max_steps) {
  Term cur = t;
  for (std::uint64_t i = 0; i < max_steps; ++i) {
    auto next = step_lmo(cur);
    if (!next) return cur;
    cur = *next;
  }
  throw Error("normalization step budget exhausted");
}

}  // namespace brelim

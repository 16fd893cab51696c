#include "brelim/constructions.hpp"

#include "brelim/typecheck.hpp"

namespace brelim {

namespace {

void require_y(const Term& y, const CircContext& ctx, const char* who) {
  FinType want = ctx.y_type();
  FinType got = typecheck_closed(y);
  if (got != want)
    throw TypeError(std::string(who) + " needs a closed term of type " + want.show() + ", got " +
                    got.show());
}

}  // namespace

Term build_varphi(const CircContext& ctx) {
  FinType gt = ctx.g_type();
  FinType ht = ctx.h_type();
  FinType st = FinType::seq(ctx.tau);
  // fun G'. fun H'. rec[tau* -> sigma] G'
  //   (fun n'. fun p'. fun s'. H' s' (fun x'. p' (append s' x')))
  Term step = lam("n'", FinType::nat(),
                  lam("p'", gt,
                      lam("s'", st,
                          app(app(var("H'"), var("s'")),
                              lam("x'", ctx.tau,
                                  app(var("p'"), append(var("s'"), var("x'"))))))));
  return lam("G'", gt, lam("H'", ht, app(app(rec(gt), var("G'")), step)));
}

PsiTerm build_psi(const CircContext& ctx) {
  FinType gt = ctx.g_type();
  FinType ht = ctx.h_type();
  FinType st = FinType::seq(ctx.tau);
  Term varphi = build_varphi(ctx);
  // fun k'. fun G'. fun H'. fun s'.
  //   if0 (lt k' (len s')) (G' s') (varphi G' H' (monus (S k') (len s')) s')
  Term body = if_zero(lt(var("k'"), len(var("s'"))),
                      app(var("G'"), var("s'")),
                      app(app(app(app(varphi, var("G'")), var("H'")),
                              monus(succ(var("k'")), len(var("s'")))),
                          var("s'")));
  Term psi = lam("k'", FinType::nat(), lam("G'", gt, lam("H'", ht, lam("s'", st, body))));
  FinType ty = FinType::arrow(FinType::nat(), ctx.b_type());
  return PsiTerm{std::move(psi), std::move(ty), ctx};
}

Term build_calH(const Term& y, const CircContext& ctx) {
  require_y(y, ctx, "calH");
  FinType gt = ctx.g_type();
  FinType ht = ctx.h_type();
  FinType st = FinType::seq(ctx.tau);
  FinType ft = FinType::arrow(ctx.tau, ctx.sigma);
  // fun G'. fun H'. fun s'. fun f'.
  //   if0 (lt (y (hat s')) (len s')) (G' s') (H' s' f')
  Term body = if_zero(lt(app(y, hat(var("s'"))), len(var("s'"))),
                      app(var("G'"), var("s'")),
                      app(app(var("H'"), var("s'")), var("f'")));
  return lam("G'", gt, lam("H'", ht, lam("s'", st, lam("f'", ft, body))));
}

PhiTerm build_phi(const Term& y, const CircContext& ctx) {
  return build_phi(y, ctx, build_psi(ctx).term);
}

PhiTerm build_phi(const Term& y, const CircContext& ctx, const Term& psi) {
  require_y(y, ctx, "phi");
  FinType gt = ctx.g_type();
  FinType ht = ctx.h_type();
  FinType bt = ctx.b_type();
  FinType st = FinType::seq(ctx.tau);
  Term calH = build_calH(y, ctx);
  // fun D'. fun G'. fun H'. fun s'.
  //   D' (fun q'. psi (y (hat q')) G' H' q') (calH G' H') s'
  Term depth_arm = lam("q'", st,
                       app(app(app(app(psi, app(y, hat(var("q'")))), var("G'")), var("H'")),
                           var("q'")));
  Term body = app(app(app(var("D'"), depth_arm), app(app(calH, var("G'")), var("H'"))),
                  var("s'"));
  Term phi = lam("D'", bt, lam("G'", gt, lam("H'", ht, lam("s'", st, body))));
  return PhiTerm{std::move(phi), std::move(calH), FinType::arrow(bt, bt), ctx};
}

}  // namespace brelim

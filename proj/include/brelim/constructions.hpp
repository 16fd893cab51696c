#pragma once

#include "brelim/term.hpp"
#include "brelim/type.hpp"

namespace brelim {

// Closed terms witnessing that bar recursion with a known stopping depth is
// already definable with an ordinary recursor at type tau* -> sigma.

struct PsiTerm {
  Term term;
  FinType type;  // N -> (tau* -> sigma) -> (tau* -> (tau -> sigma) -> sigma) -> tau* -> sigma
  CircContext ctx;
};

struct PhiTerm {
  Term term;   // takes a candidate of the b_type shape and produces one
  Term guard;  // the relativised-H node embedded inside term
  FinType type;
  CircContext ctx;
};

// varphi G H 0 = G and varphi G H (n+1) = fun s. H s (fun x. varphi G H n (s*x)):
// the n-fold unfolding of the recursive call, built with rec[tau* -> sigma].
Term build_varphi(const CircContext& ctx);

// psi k G H s = G s when |s| > k, otherwise varphi G H (k+1-|s|) s. For any
// Y bounded by k this satisfies both defining equations of bar recursion.
PsiTerm build_psi(const CircContext& ctx);

// The relativised H: calH y G H s f = G s when y(hat s) < |s|, else H s f.
// y must be a closed term of type (N -> tau) -> N.
Term build_calH(const Term& y, const CircContext& ctx);

// phi y D G H s = D (fun q. psi (y (hat q)) G H q) (calH y G H) s.
// Feeding it any D that agrees with the branch structure of a bar securing
// y yields a term satisfying both bar-recursion equations for Y = y.
// The psi overload embeds the given (already built) psi term by reference
// so printed output can fold it behind one named definition.
PhiTerm build_phi(const Term& y, const CircContext& ctx);
PhiTerm build_phi(const Term& y, const CircContext& ctx, const Term& psi);

}  // namespace brelim

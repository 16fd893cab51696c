#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "brelim/term.hpp"
#include "brelim/type.hpp"
#include "brelim/typecheck.hpp"

namespace brelim {

struct TranslateError : Error {
  using Error::Error;
};

struct CircResult {
  Term source;
  Term translated;
  CircContext ctx;
  // Source free variable -> its name in the translated term. The bound
  // alpha never appears here; the translation removes it.
  std::map<std::string, std::string> varmap;
};

// Rewrites plus/monus/max/lt/geq/if0 into closed recursor combinators so
// the degree translation only ever sees {0, S, rec, fun, application,
// variables}. All recursors introduced here are at type N (or the if0
// branch type). ctx types the free variables.
Term desugar(const Term& t, TypingContext& ctx);

// The degree translation. `alpha` names the designated choice-sequence
// variable of type N -> tau; other free variables must appear in
// free_types and come out renamed per CircResult::varmap. Input
// identifiers may not contain apostrophes (reserved for generated names).
CircResult circ_term(const Term& t, const CircContext& ctx, const std::string& alpha,
                     const std::map<std::string, FinType>& free_types);

struct Elimination {
  Term term;         // closed, (tau*->sigma) -> (tau*->(tau->sigma)->sigma) -> tau* -> sigma
  Term psi;          // the shared depth-bounded unfolder embedded throughout
  Term guarded_h;    // calH specialised to this y
  Term b_component;  // snd of the translated body of y
  CircResult circ;
};

// Bar-recursion elimination for Y = y, a closed term of type
// (N -> tau) -> N. The output is bar-recursor-free, uses recursors of
// level at most 2 + max(1 + level tau, level sigma) + i where i bounds the
// recursor levels of y, and agrees with eval_br_oracle on all inputs.
Elimination eliminate_br(const Term& y, const CircContext& ctx);

// Leftmost-outermost beta / pair-projection normalization with a step cap;
// no rec/if0/arithmetic rules, those stay symbolic. Used for structural
// checks and presentation, not by the evaluator.
Term normalize(const Term& t, std::uint64_t max_steps);

}  // namespace brelim

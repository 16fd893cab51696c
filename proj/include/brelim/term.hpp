#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "brelim/type.hpp"

namespace brelim {

// Immutable term tree. Copies share structure; builders are free functions
// below so construction reads close to the surface syntax.
class Term {
 public:
  enum class Tag {
    Var,      // name
    Zero,     //
    Succ,     // kid 0
    Rec,      // constant, type() = result type rho; applied via App
    Lam,      // name, type() = binder type, kid 0 = body
    App,      // kid 0 = fn, kid 1 = arg
    Nil,      // constant empty sequence, type() = element type
    Append,   // kid 0 = sequence, kid 1 = new last element
    Concat,   // kid 0, kid 1 sequences
    Len,      // kid 0 sequence
    Hat,      // kid 0 sequence; value is its total zero-extension N -> elem
    Index,    // kid 0 sequence or function, kid 1 index
    Trunc,    // type() = element type, kid 0 sequence or function, kid 1
              // length; the length-n initial segment as a sequence
    Pair,     // kid 0, kid 1
    Fst,      // kid 0
    Snd,      // kid 0
    Lt,       // kid 0 < kid 1, encoded 0 = true / 1 = false
    Geq,      // kid 0 >= kid 1, encoded 0 = true / 1 = false
    Plus,     // kid 0 + kid 1
    Monus,    // kid 0 - kid 1, truncated at 0
    Max,      // max of kid 0, kid 1
    IfZero,   // kid 0 scrutinee, kid 1 zero branch, kid 2 nonzero branch
    Br,       // constant bar recursor, type() = tau, type2() = sigma
  };

  Tag tag() const { return node_->tag; }
  const std::string& name() const { return node_->name; }
  const FinType& type() const;
  const FinType& type2() const;
  size_t arity() const { return node_->kids.size(); }
  const Term& kid(size_t i) const { return node_->kids[i]; }

  bool is(Tag t) const { return tag() == t; }

  // Numeral view: Succ^n(Zero) for some n.
  std::optional<std::uint64_t> as_numeral() const;

  // True when the term mentions no Br constant.
  bool br_free() const;

  bool operator==(const Term& other) const { return node_ == other.node_; }

  struct Node {
    Tag tag;
    std::string name;
    std::optional<FinType> ty, ty2;
    std::vector<Term> kids;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const std::shared_ptr<const Node>& node() const { return node_; }

 private:
  std::shared_ptr<const Node> node_;
};

// Builders.
Term var(std::string name);
Term zero();
Term succ(Term t);
Term nat_lit(std::uint64_t n);  // n nested Succ over Zero
Term rec(FinType rho);
Term lam(std::string name, FinType ty, Term body);
Term app(Term f, Term a);
Term app(Term f, std::initializer_list<Term> args);
Term nil(FinType elem);
Term append(Term s, Term x);
Term concat(Term s, Term t);
Term len(Term s);
Term hat(Term s);
Term index(Term s, Term i);
Term trunc(FinType elem, Term s, Term n);
Term pair(Term a, Term b);
Term fst(Term p);
Term snd(Term p);
Term lt(Term a, Term b);
Term geq(Term a, Term b);
Term plus(Term a, Term b);
Term monus(Term a, Term b);
Term max(Term a, Term b);
Term if_zero(Term c, Term z, Term nz);
Term br(FinType tau, FinType sigma);

// Canonical inhabitant of a type: 0, fun _.0^cod, nil, <0^l, 0^r>.
Term zero_term(const FinType& ty);

std::set<std::string> free_vars(const Term& t);

// Capture-avoiding substitution of `value` for free occurrences of `name`.
Term subst(const Term& t, const std::string& name, const Term& value);

// Structural equality up to renaming of bound variables.
bool alpha_equal(const Term& a, const Term& b);

// Surface syntax. print . parse == id up to whitespace; parse . print == id.
std::string print(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

// Console presentation that renders shared subterms appearing in `defs` by
// name, preceded by a "name := body" table. Matching is by node identity,
// so only terms physically embedded by reference are folded.
std::string print_with_defs(const Term& t,
                            const std::vector<std::pair<std::string, Term>>& defs);

// A fresh identifier based on `base` that avoids everything in `used`.
// Generated names always contain an apostrophe, which user-supplied input
// to the translator may not, so the two namespaces cannot collide.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

}  // namespace brelim

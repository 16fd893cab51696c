#include "brelim/term.hpp"

#include <ostream>
#include <sstream>

namespace brelim {

namespace {

Term make(Term::Tag tag, std::string name, std::optional<FinType> ty,
          std::optional<FinType> ty2, std::vector<Term> kids) {
  return Term(std::make_shared<const Term::Node>(
      Term::Node{tag, std::move(name), std::move(ty), std::move(ty2), std::move(kids)}));
}

}  // namespace

const FinType& Term::type() const {
  if (!node_->ty) throw Error("term carries no type annotation");
  return *node_->ty;
}

const FinType& Term::type2() const {
  if (!node_->ty2) throw Error("term carries no second type annotation");
  return *node_->ty2;
}

std::optional<std::uint64_t> Term::as_numeral() const {
  std::uint64_t n = 0;
  const Term* t = this;
  while (t->tag() == Tag::Succ) {
    ++n;
    t = &t->kid(0);
  }
  if (t->tag() == Tag::Zero) return n;
  return std::nullopt;
}

bool Term::br_free() const {
  if (tag() == Tag::Br) return false;
  for (const Term& k : node_->kids)
    if (!k.br_free()) return false;
  return true;
}

Term var(std::string name) { return make(Term::Tag::Var, std::move(name), {}, {}, {}); }
Term zero() { return make(Term::Tag::Zero, "", {}, {}, {}); }
Term succ(Term t) { return make(Term::Tag::Succ, "", {}, {}, {std::move(t)}); }

Term nat_lit(std::uint64_t n) {
  Term t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = succ(std::move(t));
  return t;
}

Term rec(FinType rho) { return make(Term::Tag::Rec, "", std::move(rho), {}, {}); }

Term lam(std::string name, FinType ty, Term body) {
  return make(Term::Tag::Lam, std::move(name), std::move(ty), {}, {std::move(body)});
}

Term app(Term f, Term a) {
  return make(Term::Tag::App, "", {}, {}, {std::move(f), std::move(a)});
}

Term app(Term f, std::initializer_list<Term> args) {
  Term t = std::move(f);
  for (const Term& a : args) t = app(std::move(t), a);
  return t;
}

Term nil(FinType elem) { return make(Term::Tag::Nil, "", std::move(elem), {}, {}); }
Term append(Term s, Term x) {
  return make(Term::Tag::Append, "", {}, {}, {std::move(s), std::move(x)});
}
Term concat(Term s, Term t) {
  return make(Term::Tag::Concat, "", {}, {}, {std::move(s), std::move(t)});
}
Term len(Term s) { return make(Term::Tag::Len, "", {}, {}, {std::move(s)}); }
Term hat(Term s) { return make(Term::Tag::Hat, "", {}, {}, {std::move(s)}); }
Term index(Term s, Term i) {
  return make(Term::Tag::Index, "", {}, {}, {std::move(s), std::move(i)});
}
Term trunc(FinType elem, Term s, Term n) {
  return make(Term::Tag::Trunc, "", std::move(elem), {}, {std::move(s), std::move(n)});
}
Term pair(Term a, Term b) {
  return make(Term::Tag::Pair, "", {}, {}, {std::move(a), std::move(b)});
}
Term fst(Term p) { return make(Term::Tag::Fst, "", {}, {}, {std::move(p)}); }
Term snd(Term p) { return make(Term::Tag::Snd, "", {}, {}, {std::move(p)}); }
Term lt(Term a, Term b) { return make(Term::Tag::Lt, "", {}, {}, {std::move(a), std::move(b)}); }
Term geq(Term a, Term b) { return make(Term::Tag::Geq, "", {}, {}, {std::move(a), std::move(b)}); }
Term plus(Term a, Term b) {
  return make(Term::Tag::Plus, "", {}, {}, {std::move(a), std::move(b)});
}
Term monus(Term a, Term b) {
  return make(Term::Tag::Monus, "", {}, {}, {std::move(a), std::move(b)});
}
Term max(Term a, Term b) { return make(Term::Tag::Max, "", {}, {}, {std::move(a), std::move(b)}); }
Term if_zero(Term c, Term z, Term nz) {
  return make(Term::Tag::IfZero, "", {}, {}, {std::move(c), std::move(z), std::move(nz)});
}
Term br(FinType tau, FinType sigma) {
  return make(Term::Tag::Br, "", std::move(tau), std::move(sigma), {});
}

Term zero_term(const FinType& ty) {
  switch (ty.kind()) {
    case FinType::Kind::Nat:
      return zero();
    case FinType::Kind::Arrow:
      return lam("u'", ty.dom(), zero_term(ty.cod()));
    case FinType::Kind::Seq:
      return nil(ty.elem());
    case FinType::Kind::Prod:
      return pair(zero_term(ty.left()), zero_term(ty.right()));
  }
  throw Error("unreachable type kind");
}

namespace {

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.tag()) {
    case Term::Tag::Var:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case Term::Tag::Lam: {
      bool fresh = bound.insert(t.name()).second;
      collect_free(t.kid(0), bound, out);
      if (fresh) bound.erase(t.name());
      return;
    }
    default:
      for (size_t i = 0; i < t.arity(); ++i) collect_free(t.kid(i), bound, out);
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  std::string cand = base + "'";
  for (int i = 1; used.count(cand); ++i) cand = base + "'" + std::to_string(i);
  return cand;
}

Term subst(const Term& t, const std::string& name, const Term& value) {
  switch (t.tag()) {
    case Term::Tag::Var:
      return t.name() == name ? value : t;
    case Term::Tag::Lam: {
      if (t.name() == name) return t;
      std::set<std::string> body_free = free_vars(t.kid(0));
      if (!body_free.count(name)) return t;
      std::set<std::string> value_free = free_vars(value);
      if (value_free.count(t.name())) {
        std::set<std::string> used = value_free;
        used.insert(body_free.begin(), body_free.end());
        used.insert(name);
        std::string renamed = fresh_name(t.name(), used);
        Term body = subst(t.kid(0), t.name(), var(renamed));
        return lam(renamed, t.type(), subst(body, name, value));
      }
      return lam(t.name(), t.type(), subst(t.kid(0), name, value));
    }
    default: {
      std::vector<Term> kids;
      kids.reserve(t.arity());
      bool changed = false;
      for (size_t i = 0; i < t.arity(); ++i) {
        kids.push_back(subst(t.kid(i), name, value));
        changed = changed || !(kids.back() == t.kid(i));
      }
      if (!changed) return t;
      auto n = *t.node();
      n.kids = std::move(kids);
      return Term(std::make_shared<const Term::Node>(std::move(n)));
    }
  }
}

namespace {

bool alpha_eq(const Term& a, const Term& b,
              std::vector<std::pair<std::string, std::string>>& bound) {
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case Term::Tag::Var: {
      for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
        if (it->first == a.name() || it->second == b.name())
          return it->first == a.name() && it->second == b.name();
      }
      return a.name() == b.name();
    }
    case Term::Tag::Lam: {
      if (!(a.type() == b.type())) return false;
      bound.emplace_back(a.name(), b.name());
      bool ok = alpha_eq(a.kid(0), b.kid(0), bound);
      bound.pop_back();
      return ok;
    }
    case Term::Tag::Rec:
    case Term::Tag::Nil:
      return a.type() == b.type();
    case Term::Tag::Br:
      return a.type() == b.type() && a.type2() == b.type2();
    default: {
      if (a.arity() != b.arity()) return false;
      for (size_t i = 0; i < a.arity(); ++i)
        if (!alpha_eq(a.kid(i), b.kid(i), bound)) return false;
      return true;
    }
  }
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  std::vector<std::pair<std::string, std::string>> bound;
  return alpha_eq(a, b, bound);
}

namespace {

struct Printer {
  std::ostream& os;
  const std::vector<std::pair<std::string, Term>>* defs = nullptr;
  const Term* self = nullptr;  // def currently being printed; not folded

  bool try_def(const Term& t) {
    if (!defs) return false;
    for (const auto& [name, d] : *defs) {
      if (d == t && !(self && *self == t)) {
        os << name;
        return true;
      }
    }
    return false;
  }

  // prec 0: any term; 1: application position; 2: atom position.
  void show(const Term& t, int prec) {
    if (try_def(t)) return;
    if (auto n = t.as_numeral()) {
      os << *n;
      return;
    }
    switch (t.tag()) {
      case Term::Tag::Var:
        os << t.name();
        return;
      case Term::Tag::Zero:
        os << "0";
        return;
      case Term::Tag::Lam:
        if (prec > 0) os << "(";
        os << "fun " << t.name() << ":" << t.type() << ". ";
        show(t.kid(0), 0);
        if (prec > 0) os << ")";
        return;
      case Term::Tag::App:
        if (prec > 1) os << "(";
        show(t.kid(0), 1);
        os << " ";
        show(t.kid(1), 2);
        if (prec > 1) os << ")";
        return;
      case Term::Tag::Succ:
        kw("S", {&t.kid(0)}, prec);
        return;
      case Term::Tag::Rec:
        os << "rec[" << t.type() << "]";
        return;
      case Term::Tag::Nil:
        os << "nil[" << t.type() << "]";
        return;
      case Term::Tag::Br:
        os << "br[" << t.type() << ", " << t.type2() << "]";
        return;
      case Term::Tag::Pair:
        os << "<";
        show(t.kid(0), 0);
        os << ", ";
        show(t.kid(1), 0);
        os << ">";
        return;
      case Term::Tag::Append:
        kw("append", {&t.kid(0), &t.kid(1)}, prec);
        return;
      case Term::Tag::Concat:
        kw("concat", {&t.kid(0), &t.kid(1)}, prec);
        return;
      case Term::Tag::Len:
        kw("len", {&t.kid(0)}, prec);
        return;
      case Term::Tag::Hat:
        kw("hat", {&t.kid(0)}, prec);
        return;
      case Term::Tag::Index:
        kw("idx", {&t.kid(0), &t.kid(1)}, prec);
        return;
      case Term::Tag::Trunc:
        if (prec > 1) os << "(";
        os << "trunc[" << t.type() << "] ";
        show(t.kid(0), 2);
        os << " ";
        show(t.kid(1), 2);
        if (prec > 1) os << ")";
        return;
      case Term::Tag::Fst:
        kw("fst", {&t.kid(0)}, prec);
        return;
      case Term::Tag::Snd:
        kw("snd", {&t.kid(0)}, prec);
        return;
      case Term::Tag::Lt:
        kw("lt", {&t.kid(0), &t.kid(1)}, prec);
        return;
      case Term::Tag::Geq:
        kw("geq", {&t.kid(0), &t.kid(1)}, prec);
        return;
      case Term::Tag::Plus:
        kw("plus", {&t.kid(0), &t.kid(1)}, prec);
        return;
      case Term::Tag::Monus:
        kw("monus", {&t.kid(0), &t.kid(1)}, prec);
        return;
      case Term::Tag::Max:
        kw("max", {&t.kid(0), &t.kid(1)}, prec);
        return;
      case Term::Tag::IfZero:
        kw("if0", {&t.kid(0), &t.kid(1), &t.kid(2)}, prec);
        return;
    }
  }

  // Keyword-led forms are atoms in the grammar but get parenthesized in
  // argument position anyway for readability.
  void kw(const char* word, std::initializer_list<const Term*> args, int prec) {
    if (prec > 1) os << "(";
    os << word;
    for (const Term* a : args) {
      os << " ";
      show(*a, 2);
    }
    if (prec > 1) os << ")";
  }
};

}  // namespace

std::string print(const Term& t) {
  std::ostringstream os;
  Printer{os}.show(t, 0);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  Printer{os}.show(t, 0);
  return os;
}

std::string print_with_defs(const Term& t,
                            const std::vector<std::pair<std::string, Term>>& defs) {
  std::ostringstream os;
  for (const auto& [name, d] : defs) {
    os << name << " :=\n  ";
    Printer p{os, &defs, &d};
    p.show(d, 0);
    os << "\n";
  }
  os << "term :=\n  ";
  Printer p{os, &defs, nullptr};
  p.show(t, 0);
  os << "\n";
  return os.str();
}

}  // namespace brelim

#include "brelim/typecheck.hpp"

namespace brelim {

TypingContext& TypingContext::bind(const std::string& name, FinType ty) {
  if (lookup(name)) throw TypeError("duplicate context entry for '" + name + "'");
  entries_.emplace_back(name, std::move(ty));
  return *this;
}

void TypingContext::push(const std::string& name, FinType ty) {
  entries_.emplace_back(name, std::move(ty));
}

void TypingContext::pop() { entries_.pop_back(); }

const FinType* TypingContext::lookup(const std::string& name) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->first == name) return &it->second;
  return nullptr;
}

namespace {

FinType check(const Term& t, TypingContext& ctx);

FinType check_nat(const Term& t, TypingContext& ctx, const char* where) {
  FinType ty = check(t, ctx);
  if (!ty.is_nat()) throw TypeError(std::string(where) + " expects N, got " + ty.show());
  return ty;
}

FinType check_seq(const Term& t, TypingContext& ctx, const char* where) {
  FinType ty = check(t, ctx);
  if (!ty.is_seq())
    throw TypeError(std::string(where) + " expects a sequence, got " + ty.show());
  return ty;
}

// Sequence-or-stream operand of idx/trunc: yields the element type.
FinType elem_of(const Term& t, TypingContext& ctx, const char* where) {
  FinType ty = check(t, ctx);
  if (ty.is_seq()) return ty.elem();
  if (ty.is_arrow() && ty.dom().is_nat()) return ty.cod();
  throw TypeError(std::string(where) + " expects a sequence or an N -> _ function, got " +
                  ty.show());
}

FinType check(const Term& t, TypingContext& ctx) {
  using Tag = Term::Tag;
  switch (t.tag()) {
    case Tag::Var: {
      const FinType* ty = ctx.lookup(t.name());
      if (!ty) throw TypeError("unbound variable '" + t.name() + "'");
      return *ty;
    }
    case Tag::Zero:
      return FinType::nat();
    case Tag::Succ:
      return check_nat(t.kid(0), ctx, "S");
    case Tag::Rec: {
      // rho -> (N -> rho -> rho) -> N -> rho
      const FinType& rho = t.type();
      FinType step = FinType::arrow(FinType::nat(), FinType::arrow(rho, rho));
      return FinType::arrow(rho, FinType::arrow(step, FinType::arrow(FinType::nat(), rho)));
    }
    case Tag::Lam: {
      ctx.push(t.name(), t.type());
      FinType body = check(t.kid(0), ctx);
      ctx.pop();
      return FinType::arrow(t.type(), body);
    }
    case Tag::App: {
      FinType f = check(t.kid(0), ctx);
      FinType a = check(t.kid(1), ctx);
      if (!f.is_arrow())
        throw TypeError("cannot apply a term of type " + f.show());
      if (f.dom() != a)
        throw TypeError("argument type mismatch: expected " + f.dom().show() + ", got " +
                        a.show());
      return f.cod();
    }
    case Tag::Nil:
      return FinType::seq(t.type());
    case Tag::Append: {
      FinType s = check_seq(t.kid(0), ctx, "append");
      FinType x = check(t.kid(1), ctx);
      if (s.elem() != x)
        throw TypeError("append element mismatch: sequence of " + s.elem().show() + ", element " +
                        x.show());
      return s;
    }
    case Tag::Concat: {
      FinType a = check_seq(t.kid(0), ctx, "concat");
      FinType b = check_seq(t.kid(1), ctx, "concat");
      if (a != b) throw TypeError("concat of " + a.show() + " with " + b.show());
      return a;
    }
    case Tag::Len:
      check_seq(t.kid(0), ctx, "len");
      return FinType::nat();
    case Tag::Hat: {
      FinType s = check_seq(t.kid(0), ctx, "hat");
      return FinType::arrow(FinType::nat(), s.elem());
    }
    case Tag::Index: {
      FinType e = elem_of(t.kid(0), ctx, "idx");
      check_nat(t.kid(1), ctx, "idx position");
      return e;
    }
    case Tag::Trunc: {
      FinType e = elem_of(t.kid(0), ctx, "trunc");
      if (e != t.type())
        throw TypeError("trunc[" + t.type().show() + "] over elements of type " + e.show());
      check_nat(t.kid(1), ctx, "trunc length");
      return FinType::seq(e);
    }
    case Tag::Pair:
      return FinType::prod(check(t.kid(0), ctx), check(t.kid(1), ctx));
    case Tag::Fst: {
      FinType p = check(t.kid(0), ctx);
      if (!p.is_prod()) throw TypeError("fst expects a pair, got " + p.show());
      return p.left();
    }
    case Tag::Snd: {
      FinType p = check(t.kid(0), ctx);
      if (!p.is_prod()) throw TypeError("snd expects a pair, got " + p.show());
      return p.right();
    }
    case Tag::Lt:
    case Tag::Geq:
    case Tag::Plus:
    case Tag::Monus:
    case Tag::Max:
      check_nat(t.kid(0), ctx, "arithmetic");
      check_nat(t.kid(1), ctx, "arithmetic");
      return FinType::nat();
    case Tag::IfZero: {
      check_nat(t.kid(0), ctx, "if0 scrutinee");
      FinType z = check(t.kid(1), ctx);
      FinType nz = check(t.kid(2), ctx);
      if (z != nz)
        throw TypeError("if0 branches disagree: " + z.show() + " vs " + nz.show());
      return z;
    }
    case Tag::Br: {
      CircContext cc(t.type(), t.type2());
      return cc.br_type();
    }
  }
  throw TypeError("unreachable term tag");
}

}  // namespace

FinType typecheck(const Term& t, TypingContext& ctx) { return check(t, ctx); }

FinType typecheck_closed(const Term& t) {
  TypingContext ctx;
  return check(t, ctx);
}

}  // namespace brelim

#include "brelim/eval.hpp"

#include <sstream>
#include <variant>

namespace brelim {

struct Value::Data {
  struct SeqData {
    FinType elem;
    std::vector<Value> items;
  };
  struct PairData {
    Value a, b;
  };
  struct ClosureData {
    std::string binder;
    Term body;
    Env env;
  };
  std::variant<std::uint64_t, SeqData, PairData, ClosureData, HostFn> v;
};

Value Value::num(std::uint64_t n) {
  return Value(std::make_shared<const Data>(Data{n}));
}

Value Value::seq(FinType elem, std::vector<Value> items) {
  return Value(std::make_shared<const Data>(
      Data{Data::SeqData{std::move(elem), std::move(items)}}));
}

Value Value::make_pair(Value a, Value b) {
  return Value(std::make_shared<const Data>(Data{Data::PairData{std::move(a), std::move(b)}}));
}

Value Value::closure(std::string binder, Term body, Env env) {
  return Value(std::make_shared<const Data>(
      Data{Data::ClosureData{std::move(binder), std::move(body), std::move(env)}}));
}

Value Value::host(HostFn fn) {
  return Value(std::make_shared<const Data>(Data{std::move(fn)}));
}

Value::Kind Value::kind() const {
  switch (data_->v.index()) {
    case 0: return Kind::Num;
    case 1: return Kind::Seq;
    case 2: return Kind::Pair;
    case 3: return Kind::Closure;
    default: return Kind::Host;
  }
}

std::uint64_t Value::num_value() const {
  if (auto* n = std::get_if<std::uint64_t>(&data_->v)) return *n;
  throw EvalError("expected a numeral value, got " + show());
}

const std::vector<Value>& Value::items() const {
  if (auto* s = std::get_if<Data::SeqData>(&data_->v)) return s->items;
  throw EvalError("expected a sequence value, got " + show());
}

const FinType& Value::elem_type() const {
  if (auto* s = std::get_if<Data::SeqData>(&data_->v)) return s->elem;
  throw EvalError("expected a sequence value, got " + show());
}

const Value& Value::first() const {
  if (auto* p = std::get_if<Data::PairData>(&data_->v)) return p->a;
  throw EvalError("expected a pair value, got " + show());
}

const Value& Value::second() const {
  if (auto* p = std::get_if<Data::PairData>(&data_->v)) return p->b;
  throw EvalError("expected a pair value, got " + show());
}

std::string Value::show() const {
  std::ostringstream os;
  switch (kind()) {
    case Kind::Num:
      os << num_value();
      break;
    case Kind::Seq: {
      os << "[";
      bool sep = false;
      for (const Value& v : items()) {
        if (sep) os << ", ";
        os << v.show();
        sep = true;
      }
      os << "]";
      break;
    }
    case Kind::Pair:
      os << "<" << first().show() << ", " << second().show() << ">";
      break;
    case Kind::Closure:
    case Kind::Host:
      os << "<fun>";
      break;
  }
  return os.str();
}

Env Env::extend(const std::string& name, Value v) const {
  Env out;
  out.head_ = std::make_shared<const Node>(Node{name, std::move(v), head_});
  return out;
}

const Value* Env::lookup(const std::string& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->name == name) return &n->v;
  return nullptr;
}

Value apply(const Value& f, const Value& arg, Fuel& fuel) {
  fuel.tick();
  if (auto* c = std::get_if<Value::Data::ClosureData>(&f.data_->v))
    return eval(c->body, c->env.extend(c->binder, arg), fuel);
  if (auto* h = std::get_if<Value::HostFn>(&f.data_->v)) return (*h)(arg, fuel);
  throw EvalError("cannot apply " + f.show());
}

Value zero_value(const FinType& ty) {
  switch (ty.kind()) {
    case FinType::Kind::Nat:
      return Value::num(0);
    case FinType::Kind::Seq:
      return Value::seq(ty.elem(), {});
    case FinType::Kind::Prod:
      return Value::make_pair(zero_value(ty.left()), zero_value(ty.right()));
    case FinType::Kind::Arrow: {
      Value z = zero_value(ty.cod());
      return Value::host([z](const Value&, Fuel&) { return z; });
    }
  }
  throw EvalError("unreachable type kind");
}

Value hat_value(const Value& s) {
  Value z = zero_value(s.elem_type());
  return Value::host([s, z](const Value& i, Fuel&) {
    std::uint64_t n = i.num_value();
    const auto& items = s.items();
    return n < items.size() ? items[n] : z;
  });
}

namespace {

Value rec_value(const Value& a, const Value& f, std::uint64_t n, Fuel& fuel) {
  Value r = a;
  for (std::uint64_t m = 0; m < n; ++m) r = apply(apply(f, Value::num(m), fuel), r, fuel);
  return r;
}

Value index_value(const Value& e, const Value& i, Fuel& fuel) {
  if (e.kind() == Value::Kind::Seq) {
    std::uint64_t n = i.num_value();
    const auto& items = e.items();
    return n < items.size() ? items[n] : zero_value(e.elem_type());
  }
  return apply(e, i, fuel);
}

Value br_unfold(const Value& G, const Value& H, const Value& Y, const Value& s, Fuel& fuel,
                std::uint64_t depth) {
  if (depth >= fuel.max_br_depth)
    throw BrDepthError("bar recursion depth budget exhausted at " + s.show(), s.show());
  std::uint64_t y = apply(Y, hat_value(s), fuel).num_value();
  if (y < s.items().size()) return apply(G, s, fuel);
  // Capture by value: when sigma is an arrow type, H's result can be a
  // closure over this continuation that gets applied after unfolding ends.
  Value cont = Value::host([G, H, Y, s, depth](const Value& x, Fuel& fl) {
    std::vector<Value> items = s.items();
    items.push_back(x);
    return br_unfold(G, H, Y, Value::seq(s.elem_type(), std::move(items)), fl, depth + 1);
  });
  return apply(apply(H, s, fuel), cont, fuel);
}

}  // namespace

Value eval_br_oracle(const Value& G, const Value& H, const Value& Y, const Value& s,
                     Fuel& fuel) {
  return br_unfold(G, H, Y, s, fuel, 0);
}

Value eval(const Term& t, const Env& env, Fuel& fuel) {
  using Tag = Term::Tag;
  fuel.tick();
  switch (t.tag()) {
    case Tag::Var: {
      const Value* v = env.lookup(t.name());
      if (!v) throw EvalError("unbound variable '" + t.name() + "' at runtime");
      return *v;
    }
    case Tag::Zero:
      return Value::num(0);
    case Tag::Succ:
      return Value::num(eval(t.kid(0), env, fuel).num_value() + 1);
    case Tag::Lam:
      return Value::closure(t.name(), t.kid(0), env);
    case Tag::App: {
      Value f = eval(t.kid(0), env, fuel);
      Value a = eval(t.kid(1), env, fuel);
      return apply(f, a, fuel);
    }
    case Tag::Rec:
      return Value::host([](const Value& a, Fuel&) {
        return Value::host([a](const Value& f, Fuel&) {
          return Value::host([a, f](const Value& n, Fuel& fl) {
            return rec_value(a, f, n.num_value(), fl);
          });
        });
      });
    case Tag::Nil:
      return Value::seq(t.type(), {});
    case Tag::Append: {
      Value s = eval(t.kid(0), env, fuel);
      Value x = eval(t.kid(1), env, fuel);
      std::vector<Value> items = s.items();
      items.push_back(std::move(x));
      return Value::seq(s.elem_type(), std::move(items));
    }
    case Tag::Concat: {
      Value a = eval(t.kid(0), env, fuel);
      Value b = eval(t.kid(1), env, fuel);
      std::vector<Value> items = a.items();
      items.insert(items.end(), b.items().begin(), b.items().end());
      return Value::seq(a.elem_type(), std::move(items));
    }
    case Tag::Len:
      return Value::num(eval(t.kid(0), env, fuel).items().size());
    case Tag::Hat:
      return hat_value(eval(t.kid(0), env, fuel));
    case Tag::Index: {
      Value e = eval(t.kid(0), env, fuel);
      Value i = eval(t.kid(1), env, fuel);
      return index_value(e, i, fuel);
    }
    case Tag::Trunc: {
      Value e = eval(t.kid(0), env, fuel);
      std::uint64_t n = eval(t.kid(1), env, fuel).num_value();
      std::vector<Value> items;
      items.reserve(n);
      for (std::uint64_t i = 0; i < n; ++i)
        items.push_back(index_value(e, Value::num(i), fuel));
      return Value::seq(t.type(), std::move(items));
    }
    case Tag::Pair: {
      Value a = eval(t.kid(0), env, fuel);
      return Value::make_pair(std::move(a), eval(t.kid(1), env, fuel));
    }
    case Tag::Fst:
      return eval(t.kid(0), env, fuel).first();
    case Tag::Snd:
      return eval(t.kid(0), env, fuel).second();
    case Tag::Lt: {
      std::uint64_t a = eval(t.kid(0), env, fuel).num_value();
      std::uint64_t b = eval(t.kid(1), env, fuel).num_value();
      return Value::num(a < b ? 0 : 1);
    }
    case Tag::Geq: {
      std::uint64_t a = eval(t.kid(0), env, fuel).num_value();
      std::uint64_t b = eval(t.kid(1), env, fuel).num_value();
      return Value::num(a >= b ? 0 : 1);
    }
    case Tag::Plus: {
      std::uint64_t a = eval(t.kid(0), env, fuel).num_value();
      std::uint64_t b = eval(t.kid(1), env, fuel).num_value();
      return Value::num(a + b);
    }
    case Tag::Monus: {
      std::uint64_t a = eval(t.kid(0), env, fuel).num_value();
      std::uint64_t b = eval(t.kid(1), env, fuel).num_value();
      return Value::num(a > b ? a - b : 0);
    }
    case Tag::Max: {
      std::uint64_t a = eval(t.kid(0), env, fuel).num_value();
      std::uint64_t b = eval(t.kid(1), env, fuel).num_value();
      return Value::num(a > b ? a : b);
    }
    case Tag::IfZero: {
      std::uint64_t c = eval(t.kid(0), env, fuel).num_value();
      return eval(t.kid(c == 0 ? 1 : 2), env, fuel);
    }
    case Tag::Br:
      return Value::host([](const Value& G, Fuel&) {
        return Value::host([G](const Value& H, Fuel&) {
          return Value::host([G, H](const Value& Y, Fuel&) {
            return Value::host([G, H, Y](const Value& s, Fuel& fl) {
              return eval_br_oracle(G, H, Y, s, fl);
            });
          });
        });
      });
  }
  throw EvalError("unreachable term tag");
}

Value eval_closed(const Term& t, Fuel& fuel) {
  Env env;
  return eval(t, env, fuel);
}

ProbeGen default_probes() {
  return [](const FinType& ty) -> std::vector<Value> {
    if (ty.is_nat()) {
      return {Value::num(0), Value::num(1), Value::num(2), Value::num(5), Value::num(7)};
    }
    if (ty.is_arrow() && ty.dom().is_nat() && ty.cod().is_nat()) {
      auto fn = [](std::uint64_t add, std::uint64_t scale) {
        return Value::host([add, scale](const Value& n, Fuel&) {
          return Value::num(n.num_value() * scale + add);
        });
      };
      return {fn(0, 1), fn(0, 0), fn(1, 1), fn(3, 0), fn(2, 2)};
    }
    // Fallback for other domains: a few constant functions.
    if (ty.is_arrow()) {
      std::vector<Value> out;
      Value z = zero_value(ty.cod());
      out.push_back(Value::host([z](const Value&, Fuel&) { return z; }));
      return out;
    }
    if (ty.is_seq()) {
      std::vector<Value> out;
      out.push_back(Value::seq(ty.elem(), {}));
      out.push_back(Value::seq(ty.elem(), {zero_value(ty.elem())}));
      return out;
    }
    return {};
  };
}

bool values_equal(const Value& a, const Value& b, const FinType& ty, const ProbeGen& probes,
                  Fuel& fuel) {
  switch (ty.kind()) {
    case FinType::Kind::Nat:
      return a.num_value() == b.num_value();
    case FinType::Kind::Seq: {
      const auto& xs = a.items();
      const auto& ys = b.items();
      if (xs.size() != ys.size()) return false;
      for (size_t i = 0; i < xs.size(); ++i)
        if (!values_equal(xs[i], ys[i], ty.elem(), probes, fuel)) return false;
      return true;
    }
    case FinType::Kind::Prod:
      return values_equal(a.first(), b.first(), ty.left(), probes, fuel) &&
             values_equal(a.second(), b.second(), ty.right(), probes, fuel);
    case FinType::Kind::Arrow: {
      for (const Value& p : probes(ty.dom())) {
        Value ra = apply(a, p, fuel);
        Value rb = apply(b, p, fuel);
        if (!values_equal(ra, rb, ty.cod(), probes, fuel)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace brelim

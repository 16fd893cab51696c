#include "brelim/witness.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include "brelim/translate.hpp"
#include "brelim/typecheck.hpp"

namespace brelim {

struct BarWitness::Data {
  Meaning m;
  Bar b;
  App a;
};

BarWitness BarWitness::ground(Meaning m, Bar b) {
  return BarWitness(
      std::make_shared<const Data>(Data{std::move(m), std::move(b), nullptr}));
}

BarWitness BarWitness::lifted(App a) {
  return BarWitness(
      std::make_shared<const Data>(Data{nullptr, nullptr, std::move(a)}));
}

bool BarWitness::is_ground() const { return static_cast<bool>(d_->m); }

Value BarWitness::meaning(const Value& alpha, Fuel& fuel) const {
  if (!is_ground()) throw EvalError("meaning of an arrow-kind witness");
  return d_->m(alpha, fuel);
}

bool BarWitness::holds(const Value& s, Fuel& fuel) const {
  if (!is_ground()) throw EvalError("predicate of an arrow-kind witness");
  return d_->b(s, fuel);
}

BarWitness BarWitness::apply(const BarWitness& arg) const {
  if (is_ground()) throw EvalError("application of a ground-kind witness");
  return d_->a(arg);
}

namespace {

BarWitness lit_witness(std::uint64_t n) {
  return BarWitness::ground(
      [n](const Value&, Fuel&) { return Value::num(n); },
      [](const Value&, Fuel&) { return true; });
}

BarWitness alpha_witness(const CircContext& ctx) {
  if (ctx.tau_is_nat()) {
    return BarWitness::lifted([](const BarWitness& x) {
      return BarWitness::ground(
          [x](const Value& a, Fuel& fu) { return apply(a, x.meaning(a, fu), fu); },
          [x](const Value& s, Fuel& fu) {
            if (!x.holds(s, fu)) return false;
            return x.meaning(hat_value(s), fu).num_value() < s.items().size();
          });
    });
  }
  return BarWitness::lifted([](const BarWitness& x) {
    return BarWitness::lifted([x](const BarWitness& y) {
      return BarWitness::ground(
          [x, y](const Value& a, Fuel& fu) {
            return apply(apply(a, x.meaning(a, fu), fu), y.meaning(a, fu), fu);
          },
          [x, y](const Value& s, Fuel& fu) {
            if (!x.holds(s, fu) || !y.holds(s, fu)) return false;
            Value ext = hat_value(s);
            std::uint64_t gx = x.meaning(ext, fu).num_value();
            std::uint64_t gy = y.meaning(ext, fu).num_value();
            return std::max(gx, gy) < s.items().size();
          });
    });
  });
}

BarWitness rec_witness(const FinType& eta) {
  bool to_nat = eta.is_nat();
  if (!to_nat && !(eta.is_arrow() && eta.cod().is_nat()))
    throw TranslateError("recursor at type " + eta.show() +
                         " is outside the translation; only rec[N] and rec[rho -> N] occur "
                         "in the source fragment");
  return BarWitness::lifted([to_nat](const BarWitness& a) {
    return BarWitness::lifted([to_nat, a](const BarWitness& F) {
      auto iter = [a, F](std::uint64_t n) {
        BarWitness r = a;
        for (std::uint64_t k = 0; k < n; ++k)
          r = F.apply(lit_witness(k)).apply(r);
        return r;
      };
      return BarWitness::lifted([to_nat, iter](const BarWitness& x) {
        if (to_nat)
          return BarWitness::ground(
              [iter, x](const Value& al, Fuel& fu) {
                return iter(x.meaning(al, fu).num_value()).meaning(al, fu);
              },
              [iter, x](const Value& s, Fuel& fu) {
                if (!x.holds(s, fu)) return false;
                std::uint64_t n = x.meaning(hat_value(s), fu).num_value();
                return iter(n).holds(s, fu);
              });
        return BarWitness::lifted([iter, x](const BarWitness& v) {
          return BarWitness::ground(
              [iter, x, v](const Value& al, Fuel& fu) {
                return iter(x.meaning(al, fu).num_value()).apply(v).meaning(al, fu);
              },
              [iter, x, v](const Value& s, Fuel& fu) {
                if (!x.holds(s, fu)) return false;
                std::uint64_t n = x.meaning(hat_value(s), fu).num_value();
                return iter(n).apply(v).holds(s, fu);
              });
        });
      });
    });
  });
}

BarWitness build(const Term& t, const CircContext& ctx, const std::string& alpha,
                 const std::map<std::string, BarWitness>& env) {
  using Tag = Term::Tag;
  switch (t.tag()) {
    case Tag::Zero:
      return lit_witness(0);
    case Tag::Succ: {
      BarWitness w = build(t.kid(0), ctx, alpha, env);
      return BarWitness::ground(
          [w](const Value& a, Fuel& fu) {
            return Value::num(w.meaning(a, fu).num_value() + 1);
          },
          [w](const Value& s, Fuel& fu) { return w.holds(s, fu); });
    }
    case Tag::Var: {
      auto it = env.find(t.name());
      if (it != env.end()) return it->second;
      if (t.name() == alpha) return alpha_witness(ctx);
      throw TranslateError("free variable '" + t.name() + "' has no witness");
    }
    case Tag::Lam: {
      Term body = t.kid(0);
      std::string name = t.name();
      return BarWitness::lifted(
          [body, name, ctx, alpha, env](const BarWitness& arg) {
            auto inner = env;
            inner.insert_or_assign(name, arg);
            return build(body, ctx, alpha, inner);
          });
    }
    case Tag::App:
      return build(t.kid(0), ctx, alpha, env).apply(build(t.kid(1), ctx, alpha, env));
    case Tag::Rec:
      return rec_witness(t.type());
    default:
      throw TranslateError("not in the translation's source fragment: " + print(t));
  }
}

}  // namespace

BarWitness bar_witness(const Term& t, const CircContext& ctx, const std::string& alpha,
                       const std::map<std::string, FinType>& free_types,
                       const std::map<std::string, BarWitness>& wenv) {
  TypingContext tctx;
  tctx.bind(alpha, FinType::arrow(FinType::nat(), ctx.tau));
  for (const auto& [name, ty] : free_types) tctx.bind(name, ty);
  typecheck(t, tctx);
  Term plain = desugar(t, tctx);
  return build(plain, ctx, alpha, wenv);
}

namespace {

// Small deterministic pools for sampling; elements and whole sequences for
// either tau, plus total sequences standing in for the choice variable.

std::vector<Value> element_pool(const FinType& tau) {
  std::vector<Value> out;
  if (tau.is_nat()) {
    for (std::uint64_t v = 0; v < 3; ++v) out.push_back(Value::num(v));
    return out;
  }
  out.push_back(Value::host([](const Value& n, Fuel&) { return n; }));
  for (std::uint64_t c = 0; c < 3; ++c)
    out.push_back(Value::host([c](const Value&, Fuel&) { return Value::num(c); }));
  out.push_back(Value::host(
      [](const Value& n, Fuel&) { return Value::num(n.num_value() + 1); }));
  out.push_back(Value::host([](const Value& n, Fuel&) {
    std::uint64_t v = n.num_value();
    return Value::num(v >= 2 ? 0 : 2 - v);
  }));
  return out;
}

Value pool_alpha(const FinType& tau, std::uint64_t mul, std::uint64_t add) {
  if (tau.is_nat())
    return Value::host([mul, add](const Value& n, Fuel&) {
      return Value::num((n.num_value() * mul + add) % 3);
    });
  return Value::host([tau, mul, add](const Value& n, Fuel&) {
    std::vector<Value> pool = element_pool(tau);
    return pool[(n.num_value() * mul + add) % pool.size()];
  });
}

// s followed by beta: the completion whose n-th entry is s[n] for n < |s|.
Value splice(const Value& s, const Value& beta) {
  return Value::host([s, beta](const Value& n, Fuel& fu) {
    std::uint64_t i = n.num_value();
    if (i < s.items().size()) return s.items()[i];
    return apply(beta, Value::num(i - s.items().size()), fu);
  });
}

}  // namespace

WitnessReport check_witness(const BarWitness& w, const CircContext& ctx,
                            std::uint64_t seed, std::uint64_t samples,
                            std::uint64_t max_prefix, Fuel& fuel) {
  std::mt19937_64 eng(seed);
  std::vector<Value> pool = element_pool(ctx.tau);
  auto rand_seq = [&](std::uint64_t max_len) {
    std::vector<Value> items;
    std::uint64_t len = eng() % (max_len + 1);
    for (std::uint64_t i = 0; i < len; ++i) items.push_back(pool[eng() % pool.size()]);
    return Value::seq(ctx.tau, items);
  };
  auto rand_alpha = [&] { return pool_alpha(ctx.tau, eng() % 3, eng() % 3); };

  WitnessReport rep;
  rep.decidable = rep.monotone = rep.securing = rep.barred = true;

  for (std::uint64_t i = 0; i < samples; ++i) {
    Value s = rand_seq(4);
    bool held;
    try {
      held = w.holds(s, fuel);
    } catch (const Error&) {
      rep.decidable = false;
      continue;
    }
    if (!held) continue;

    for (int rounds = 0; rounds < 2; ++rounds) {
      std::vector<Value> longer = s.items();
      longer.push_back(pool[eng() % pool.size()]);
      Value ext = Value::seq(ctx.tau, longer);
      if (!w.holds(ext, fuel)) rep.monotone = false;
      s = ext;
    }

    Value beta1 = rand_alpha(), beta2 = rand_alpha();
    Value v1 = w.meaning(splice(s, beta1), fuel);
    Value v2 = w.meaning(splice(s, beta2), fuel);
    if (v1.num_value() != v2.num_value()) rep.securing = false;
  }

  for (std::uint64_t i = 0; i < samples; ++i) {
    Value al = rand_alpha();
    bool reached = false;
    std::vector<Value> prefix;
    for (std::uint64_t n = 0; n <= max_prefix && !reached; ++n) {
      if (w.holds(Value::seq(ctx.tau, prefix), fuel)) reached = true;
      if (n < max_prefix) prefix.push_back(apply(al, Value::num(n), fuel));
    }
    if (!reached) rep.barred = false;
  }
  return rep;
}

}  // namespace brelim

#include "brelim/harness.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "brelim/constructions.hpp"
#include "brelim/parser.hpp"
#include "brelim/translate.hpp"
#include "brelim/typecheck.hpp"

namespace brelim {

std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kConst = 2;
constexpr std::uint64_t kMod = 3;

// A number carried into sigma through constant shapes, and back out by
// applying to zeroes; both are the identity when sigma = N.
Value embed_num(const FinType& sigma, std::uint64_t n) {
  switch (sigma.kind()) {
    case FinType::Kind::Nat:
      return Value::num(n);
    case FinType::Kind::Arrow: {
      FinType cod = sigma.cod();
      return Value::host([cod, n](const Value&, Fuel&) { return embed_num(cod, n); });
    }
    case FinType::Kind::Prod:
      return Value::make_pair(embed_num(sigma.left(), n), embed_num(sigma.right(), n));
    case FinType::Kind::Seq:
      return Value::seq(sigma.elem(), {embed_num(sigma.elem(), n)});
  }
  throw EvalError("unreachable");
}

std::uint64_t project_num(const FinType& sigma, const Value& v, Fuel& fuel) {
  switch (sigma.kind()) {
    case FinType::Kind::Nat:
      return v.num_value();
    case FinType::Kind::Arrow:
      return project_num(sigma.cod(), apply(v, zero_value(sigma.dom()), fuel), fuel);
    case FinType::Kind::Prod:
      return project_num(sigma.left(), v.first(), fuel);
    case FinType::Kind::Seq:
      return v.items().empty() ? 0
                               : project_num(sigma.elem(), v.items()[0], fuel);
  }
  throw EvalError("unreachable");
}

std::uint64_t elem_val(const FinType& tau, const Value& e, Fuel& fuel) {
  if (tau.is_nat()) return e.num_value();
  return apply(e, Value::num(0), fuel).num_value();
}

Value first_or_zero(const FinType& tau, const Value& s) {
  return s.items().empty() ? zero_value(tau) : s.items()[0];
}

// The f-argument grammar: numbers for tau = N, simple functions otherwise.
Value h_arg(const FinType& tau, const Value& s, int which, Fuel& fuel) {
  if (tau.is_nat()) {
    switch (which) {
      case 0: return Value::num(0);
      case 1: return first_or_zero(tau, s);
      default: return Value::num(0);
    }
  }
  switch (which) {
    case 0:
      return Value::host([](const Value& n, Fuel&) { return n; });
    case 1: {
      Value head = first_or_zero(tau, s);
      return Value::host([head](const Value& n, Fuel& fu) {
        return Value::num(apply(head, n, fu).num_value() + 1);
      });
    }
    default:
      return zero_value(tau);
  }
  (void)fuel;
}

Value lift_num(const FinType& tau, std::uint64_t n) {
  if (tau.is_nat()) return Value::num(n);
  return Value::host([n](const Value&, Fuel&) { return Value::num(n); });
}

}  // namespace

std::uint64_t g_grammar_size() { return 4; }
std::uint64_t h_grammar_size() { return 4; }

std::string g_describe(std::uint64_t id) {
  switch (id % 4) {
    case 0: return "len";
    case 1: return "head+len";
    case 2: return "const";
    default: return "sum-mod";
  }
}

std::string h_describe(std::uint64_t id) {
  switch (id % 4) {
    case 0: return "probe";
    case 1: return "probe+len";
    case 2: return "const";
    default: return "feedback";
  }
}

Value make_g(const CircContext& ctx, std::uint64_t id) {
  FinType tau = ctx.tau, sigma = ctx.sigma;
  switch (id % 4) {
    case 0:
      return Value::host([sigma](const Value& s, Fuel&) {
        return embed_num(sigma, s.items().size());
      });
    case 1:
      return Value::host([tau, sigma](const Value& s, Fuel& fu) {
        return embed_num(sigma,
                         elem_val(tau, first_or_zero(tau, s), fu) + s.items().size());
      });
    case 2:
      return Value::host([sigma](const Value&, Fuel&) {
        return embed_num(sigma, kConst);
      });
    default:
      return Value::host([tau, sigma](const Value& s, Fuel& fu) {
        std::uint64_t total = 0;
        for (const Value& e : s.items()) total += elem_val(tau, e, fu);
        return embed_num(sigma, total % kMod);
      });
  }
}

Value make_h(const CircContext& ctx, std::uint64_t id) {
  FinType tau = ctx.tau, sigma = ctx.sigma;
  switch (id % 4) {
    case 0:
      return Value::host([tau](const Value& s, Fuel&) {
        return Value::host([tau, s](const Value& f, Fuel& fu) {
          return apply(f, h_arg(tau, s, 0, fu), fu);
        });
      });
    case 1:
      return Value::host([tau, sigma](const Value& s, Fuel&) {
        return Value::host([tau, sigma, s](const Value& f, Fuel& fu) {
          Value r = apply(f, h_arg(tau, s, 1, fu), fu);
          return embed_num(sigma, project_num(sigma, r, fu) + s.items().size());
        });
      });
    case 2:
      return Value::host([sigma](const Value&, Fuel&) {
        return Value::host([sigma](const Value&, Fuel&) {
          return embed_num(sigma, kConst);
        });
      });
    default:
      return Value::host([tau, sigma](const Value& s, Fuel&) {
        return Value::host([tau, sigma, s](const Value& f, Fuel& fu) {
          Value inner = apply(f, h_arg(tau, s, 2, fu), fu);
          std::uint64_t w = project_num(sigma, inner, fu) % kMod;
          return apply(f, lift_num(tau, w), fu);
        });
      });
  }
}

SampleInput sample_input(const SampleSpec& spec, const CircContext& ctx,
                         std::uint64_t index) {
  std::mt19937_64 eng(splitmix64(spec.seed, index));
  SampleInput in{make_g(ctx, 0), make_h(ctx, 0), Value::seq(ctx.tau, {}), 0, 0, ""};
  in.g_id = eng() % g_grammar_size();
  in.h_id = eng() % h_grammar_size();
  in.g = make_g(ctx, in.g_id);
  in.h = make_h(ctx, in.h_id);

  std::uint64_t len = eng() % (spec.max_len + 1);
  std::vector<Value> items;
  std::ostringstream desc;
  desc << "[";
  for (std::uint64_t i = 0; i < len; ++i) {
    if (i) desc << ", ";
    if (ctx.tau.is_nat()) {
      std::uint64_t v = eng() % spec.alphabet;
      items.push_back(Value::num(v));
      desc << v;
    } else {
      std::uint64_t kind = eng() % 4;
      std::uint64_t c = eng() % spec.alphabet;
      switch (kind) {
        case 0:
          items.push_back(Value::host([](const Value& n, Fuel&) { return n; }));
          desc << "id";
          break;
        case 1:
          items.push_back(
              Value::host([c](const Value&, Fuel&) { return Value::num(c); }));
          desc << "const" << c;
          break;
        case 2:
          items.push_back(Value::host([c](const Value& n, Fuel&) {
            return Value::num(n.num_value() + c);
          }));
          desc << "plus" << c;
          break;
        default:
          items.push_back(Value::host([c](const Value& n, Fuel&) {
            std::uint64_t v = n.num_value();
            return Value::num(v >= c ? 0 : c - v);
          }));
          desc << c << "-monus";
          break;
      }
    }
  }
  desc << "]";
  in.s = Value::seq(ctx.tau, std::move(items));
  in.s_desc = desc.str();
  return in;
}

Census analyze_fragment(const Term& t) {
  std::map<std::string, CensusEntry> acc;
  std::uint64_t max_level = 0;
  std::vector<Term> stack = {t};
  while (!stack.empty()) {
    Term cur = stack.back();
    stack.pop_back();
    if (cur.is(Term::Tag::Rec)) {
      const FinType& ty = cur.type();
      CensusEntry& e = acc[ty.show()];
      e.rec_type = ty.show();
      e.level = ty.level();
      ++e.count;
      max_level = std::max<std::uint64_t>(max_level, e.level);
    }
    for (size_t i = 0; i < cur.arity(); ++i) stack.push_back(cur.kid(i));
  }
  Census out;
  for (auto& [_, e] : acc) out.entries.push_back(std::move(e));
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) {
    return a.level != b.level ? a.level < b.level : a.rec_type < b.rec_type;
  });
  out.max_level = max_level;
  return out;
}

std::string Report::to_json() const {
  nlohmann::json j;
  j["term"] = term;
  j["tau"] = tau;
  j["sigma"] = sigma;
  j["seed"] = seed;
  j["all_equal"] = all_equal;
  j["bound_j"] = bound_j;
  j["max_level"] = census.max_level;
  nlohmann::json samp = nlohmann::json::array();
  for (const SampleVerdict& v : samples) {
    nlohmann::json one;
    one["s"] = v.s;
    one["oracle"] = v.oracle;
    one["translated"] = v.translated;
    one["equal"] = v.equal;
    one["g"] = g_describe(v.g_id);
    one["h"] = h_describe(v.h_id);
    if (!v.error.empty()) one["error"] = v.error;
    samp.push_back(one);
  }
  j["samples"] = samp;
  nlohmann::json cen = nlohmann::json::array();
  for (const CensusEntry& e : census.entries) {
    nlohmann::json one;
    one["rec_type"] = e.rec_type;
    one["level"] = e.level;
    one["count"] = e.count;
    cen.push_back(one);
  }
  j["census"] = cen;
  if (shrunk) {
    nlohmann::json one;
    one["s"] = shrunk->s;
    one["oracle"] = shrunk->oracle;
    one["translated"] = shrunk->translated;
    one["equal"] = shrunk->equal;
    one["g"] = g_describe(shrunk->g_id);
    one["h"] = h_describe(shrunk->h_id);
    if (!shrunk->error.empty()) one["error"] = shrunk->error;
    j["shrunk"] = one;
  }
  return j.dump(2);
}

namespace {

struct Outcome {
  std::string oracle, translated, error;
  bool equal = false;
  bool fuel = false;
};

Outcome run_sample(const Term& y, const Term& eliminated, const CircContext& ctx,
                   const SampleSpec& spec, const Value& G, const Value& H,
                   const Value& s) {
  Outcome out;
  try {
    Fuel fuel{spec.fuel_steps, spec.fuel_br_depth, 0};
    Value yv = eval_closed(y, fuel);
    Value oracle = eval_br_oracle(G, H, yv, s, fuel);
    Value tv = eval_closed(eliminated, fuel);
    Value got = apply(apply(apply(tv, G, fuel), H, fuel), s, fuel);
    out.oracle = oracle.show();
    out.translated = got.show();
    out.equal = values_equal(oracle, got, ctx.sigma, default_probes(), fuel);
  } catch (const FuelError& e) {
    out.error = e.what();
    out.fuel = true;
  } catch (const BrDepthError& e) {
    out.error = e.what();
    out.fuel = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

std::string show_prefix(const std::string& desc, std::uint64_t keep) {
  // descriptors are "[a, b, c]"; reuse the first `keep` entries
  std::vector<std::string> parts;
  std::string inner = desc.substr(1, desc.size() - 2);
  std::istringstream is(inner);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    size_t b = tok.find_first_not_of(' ');
    if (b != std::string::npos) parts.push_back(tok.substr(b));
  }
  std::ostringstream os;
  os << "[";
  for (std::uint64_t i = 0; i < keep && i < parts.size(); ++i) {
    if (i) os << ", ";
    os << parts[i];
  }
  os << "]";
  return os.str();
}

}  // namespace

Report check_equivalence(const Term& y, const CircContext& ctx, const SampleSpec& spec) {
  Report rep;
  rep.term = print(y);
  rep.tau = ctx.tau.show();
  rep.sigma = ctx.sigma.show();
  rep.seed = spec.seed;

  Elimination elim = eliminate_br(y, ctx);
  rep.census = analyze_fragment(elim.term);
  std::uint64_t source_level = analyze_fragment(y).max_level;
  rep.bound_j =
      2 + std::max(1 + ctx.tau.level(), ctx.sigma.level()) + source_level;

  rep.samples.resize(spec.samples);
  const Term eliminated = elim.term;

#pragma omp parallel for schedule(dynamic) if (spec.parallel)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(spec.samples); ++idx) {
    SampleVerdict v;
    SampleInput in = sample_input(spec, ctx, idx);
    v.g_id = in.g_id;
    v.h_id = in.h_id;
    v.s = in.s_desc;
    Outcome out = run_sample(y, eliminated, ctx, spec, in.g, in.h, in.s);
    v.oracle = out.oracle;
    v.translated = out.translated;
    v.equal = out.equal;
    v.error = out.error;
    rep.samples[idx] = std::move(v);
    if (out.fuel) {
#pragma omp critical
      rep.fuel_exhausted = true;
    }
  }

  rep.all_equal = true;
  std::int64_t first_bad = -1;
  for (std::size_t i = 0; i < rep.samples.size(); ++i)
    if (!rep.samples[i].equal) {
      rep.all_equal = false;
      if (first_bad < 0) first_bad = static_cast<std::int64_t>(i);
    }

  if (first_bad >= 0) {
    SampleInput in = sample_input(spec, ctx, first_bad);
    auto fails = [&](const Value& G, const Value& H, const Value& s) {
      return !run_sample(y, eliminated, ctx, spec, G, H, s).equal;
    };
    Value s = in.s;
    std::string s_desc = in.s_desc;
    for (std::uint64_t keep = 0; keep <= in.s.items().size(); ++keep) {
      std::vector<Value> items(in.s.items().begin(), in.s.items().begin() + keep);
      Value cand = Value::seq(ctx.tau, items);
      if (fails(in.g, in.h, cand)) {
        s = cand;
        s_desc = show_prefix(in.s_desc, keep);
        break;
      }
    }
    std::uint64_t g_id = in.g_id, h_id = in.h_id;
    for (std::uint64_t g2 = 0; g2 <= in.g_id; ++g2)
      if (fails(make_g(ctx, g2), in.h, s)) {
        g_id = g2;
        break;
      }
    for (std::uint64_t h2 = 0; h2 <= in.h_id; ++h2)
      if (fails(make_g(ctx, g_id), make_h(ctx, h2), s)) {
        h_id = h2;
        break;
      }
    SampleVerdict small;
    small.g_id = g_id;
    small.h_id = h_id;
    small.s = s_desc;
    Outcome out = run_sample(y, eliminated, ctx, spec, make_g(ctx, g_id),
                             make_h(ctx, h_id), s);
    small.oracle = out.oracle;
    small.translated = out.translated;
    small.equal = out.equal;
    small.error = out.error;
    rep.shrunk = std::move(small);
  }
  return rep;
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    FinType N = FinType::nat();
    FinType NN = FinType::arrow(N, N);
    std::vector<CorpusEntry> v;
    v.push_back({"zero", "fun alpha:N->N. 0", N});
    v.push_back({"one", "fun alpha:N->N. 1", N});
    v.push_back({"two", "fun alpha:N->N. 2", N});
    v.push_back({"three", "fun alpha:N->N. 3", N});
    v.push_back({"first", "fun alpha:N->N. alpha 0", N});
    v.push_back({"self-index", "fun alpha:N->N. alpha (alpha 0)", N});
    v.push_back({"sum", "fun alpha:N->N. plus (alpha 0) (alpha 1)", N});
    v.push_back({"larger", "fun alpha:N->N. max (alpha 0) (alpha 1)", N});
    v.push_back({"iterate", "fun alpha:N->N. rec[N] 0 (fun k:N. alpha) (alpha 0)", N});
    v.push_back({"iterate-fn",
                 "fun alpha:N->N. rec[N->N] (fun z:N. z) "
                 "(fun k:N. fun r:N->N. fun z:N. alpha (r z)) (alpha 0) 0",
                 N});
    v.push_back({"apply00", "fun alpha:N->(N->N). alpha 0 0", NN});
    v.push_back({"nested-index", "fun alpha:N->(N->N). alpha (alpha 0 0) 1", NN});
    v.push_back(
        {"double-nested", "fun alpha:N->(N->N). alpha (alpha 0 1) (alpha 1 0)", NN});
    return v;
  }();
  return entries;
}

int run_demo(std::ostream& os) {
  FinType N = FinType::nat();
  CircContext ctx(N, N);
  Term y = parse_term("fun alpha:N->N. rec[N] 0 (fun k:N. alpha) (alpha 0)");
  Elimination e = eliminate_br(y, ctx);

  os << "stopping functional:\n  " << y << "\n\n";
  os << "bar recursion eliminated (recursors only):\n\n";
  os << print_with_defs(
      e.term, {{"Psi", e.psi}, {"relH", e.guarded_h}, {"B", e.b_component}});

  Census c = analyze_fragment(e.term);
  os << "\nrecursor census:\n";
  for (const CensusEntry& en : c.entries)
    os << "  level " << en.level << "  x" << en.count << "  " << en.rec_type << "\n";
  os << "  max level " << c.max_level << " (bound 3)\n";

  // The eliminated term should be B applied to the depth arm and the
  // relativised H; check that shape after contracting administrative
  // redexes on both sides.
  Term body = y.kid(0);
  FinType st = FinType::seq(ctx.tau);
  Term arm = lam("q'", st,
                 app(app(app(app(e.psi, subst(body, "alpha", hat(var("q'")))),
                             var("G'")),
                         var("H'")),
                     var("q'")));
  Term expected =
      lam("G'", ctx.g_type(),
          lam("H'", ctx.h_type(),
              lam("s'", st,
                  app(app(app(e.b_component, arm),
                          app(app(e.guarded_h, var("G'")), var("H'"))),
                      var("s'")))));
  bool shape_ok =
      alpha_equal(normalize(e.term, 200'000), normalize(expected, 200'000));
  os << "head shape: " << (shape_ok ? "matches" : "DOES NOT MATCH")
     << " B (fun q'. Psi (t[hat q'/alpha]) G' H' q') (relH G' H') s'\n";

  SampleSpec spec;
  Report rep = check_equivalence(y, ctx, spec);
  std::uint64_t equal = 0;
  for (const SampleVerdict& v : rep.samples) equal += v.equal;
  os << "oracle agreement: " << equal << "/" << rep.samples.size() << " samples (seed "
     << spec.seed << ")\n";

  if (rep.fuel_exhausted) return 3;
  if (!rep.all_equal || !shape_ok || c.max_level > 3) return 1;
  return 0;
}

}  // namespace brelim

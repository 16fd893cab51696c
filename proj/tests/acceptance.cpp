// Acceptance gate: one line per criterion, exit code = number of failures.
// Criterion 8 drives the installed CLI and needs --cli <path>.

#include <unistd.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "brelim/constructions.hpp"
#include "brelim/eval.hpp"
#include "brelim/harness.hpp"
#include "brelim/parser.hpp"
#include "brelim/translate.hpp"
#include "brelim/typecheck.hpp"
#include "brelim/witness.hpp"

using namespace brelim;

namespace {

constexpr double kPsiGridBudgetSeconds = 5.0;
constexpr double kEquivalenceBudgetSeconds = 30.0;
constexpr std::uint64_t kEquivalenceSamples = 100;
constexpr std::uint64_t kValSamples = 50;
constexpr std::uint64_t kWitnessSamples = 50;
constexpr std::uint64_t kWitnessMaxPrefix = 25;
constexpr std::uint64_t kEqThreeSamples = 24;

const FinType kN = FinType::nat();
const CircContext kCtx{FinType::nat(), FinType::nat()};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Value num_seq(const std::vector<std::uint64_t>& xs) {
  std::vector<Value> items;
  for (auto x : xs) items.push_back(Value::num(x));
  return Value::seq(kN, std::move(items));
}

// All sequences over {0,1,2} of length <= max_len, shortest first.
std::vector<std::vector<std::uint64_t>> all_seqs(std::uint64_t max_len) {
  std::vector<std::vector<std::uint64_t>> out{{}};
  std::size_t level_start = 0;
  for (std::uint64_t l = 1; l <= max_len; ++l) {
    std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i)
      for (std::uint64_t d = 0; d < 3; ++d) {
        auto s = out[i];
        s.push_back(d);
        out.push_back(std::move(s));
      }
    level_start = level_end;
  }
  return out;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// criterion 1: both branch equations of the depth-bounded unfolder, on the
// full k/sequence/generator grid, within the time budget
Outcome psi_branch_grid() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  Fuel fuel;
  fuel.max_steps = 4'000'000'000ULL;
  Value psi = eval_closed(build_psi(kCtx).term, fuel);
  std::uint64_t checked = 0;
  for (std::uint64_t k = 0; k <= 5 && out.pass; ++k) {
    Value psi_k = apply(psi, Value::num(k), fuel);
    auto seqs = all_seqs(k + 2);
    for (std::uint64_t g_id = 0; g_id < g_grammar_size() && out.pass; ++g_id) {
      for (std::uint64_t h_id = 0; h_id < h_grammar_size() && out.pass; ++h_id) {
        Value G = make_g(kCtx, g_id);
        Value H = make_h(kCtx, h_id);
        Value pk = apply(apply(psi_k, G, fuel), H, fuel);
        for (const auto& digits : seqs) {
          Value s = num_seq(digits);
          std::uint64_t got = apply(pk, s, fuel).num_value();
          std::uint64_t want;
          if (k < digits.size()) {
            want = apply(G, s, fuel).num_value();
          } else {
            Value cont = Value::host([&pk, &digits](const Value& x, Fuel& f) {
              auto ext = digits;
              ext.push_back(x.num_value());
              return apply(pk, num_seq(ext), f);
            });
            want = apply(apply(H, s, fuel), cont, fuel).num_value();
          }
          ++checked;
          if (got != want) {
            std::ostringstream why;
            why << "k=" << k << " g=" << g_id << " h=" << h_id << " s=" << s.show()
                << ": got " << got << ", want " << want;
            out.fail(why.str());
            break;
          }
        }
      }
    }
  }
  double dt = seconds_since(t0);
  if (out.pass && dt >= kPsiGridBudgetSeconds) {
    std::ostringstream why;
    why << "grid exceeded the " << kPsiGridBudgetSeconds << " s budget (" << dt << " s)";
    out.fail(why.str());
  }
  if (out.pass) {
    std::ostringstream d;
    d << checked << " branch checks, " << dt << " s";
    out.detail = d.str();
  }
  return out;
}

// criterion 2: eliminated terms match the direct unfolding on seeded samples
Outcome elimination_equivalence() {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  std::uint64_t fn_cases = 0;
  bool saw_demo_term = false;
  for (const auto& e : corpus()) {
    CircContext ctx{e.tau, kN};
    SampleSpec spec;
    spec.seed = 42;
    spec.samples = kEquivalenceSamples;
    Report rep = check_equivalence(parse_term(e.source), ctx, spec);
    if (!rep.all_equal || rep.fuel_exhausted) {
      std::string why = e.name + ": ";
      if (rep.shrunk)
        why += "diverges at s=" + rep.shrunk->s +
               (rep.shrunk->error.empty()
                    ? " oracle=" + rep.shrunk->oracle + " translated=" + rep.shrunk->translated
                    : " error=" + rep.shrunk->error);
      else
        why += "mismatch";
      out.fail(why);
    }
    fn_cases += !e.tau.is_nat();
    saw_demo_term |= e.source.find("rec[N] 0 (fun k:N. alpha) (alpha 0)") != std::string::npos;
  }
  if (fn_cases < 2) out.fail("fewer than two function-element corpus entries");
  if (!saw_demo_term) out.fail("walkthrough term missing from the corpus");
  double dt = seconds_since(t0);
  if (out.pass && dt >= kEquivalenceBudgetSeconds) {
    std::ostringstream why;
    why << "suite exceeded the " << kEquivalenceBudgetSeconds << " s budget (" << dt << " s)";
    out.fail(why.str());
  }
  if (out.pass) {
    std::ostringstream d;
    d << corpus().size() << " terms x " << kEquivalenceSamples << " samples, " << dt << " s";
    out.detail = d.str();
  }
  return out;
}

// criterion 3: recursor levels of the output stay within the closed bound
Outcome fragment_bound() {
  Outcome out;
  std::uint64_t t0_entries = 0;
  for (const auto& e : corpus()) {
    CircContext ctx{e.tau, kN};
    Term y = parse_term(e.source);
    Census source = analyze_fragment(y);
    Census output = analyze_fragment(eliminate_br(y, ctx).term);
    std::uint64_t bound =
        2 + std::uint64_t(std::max(1 + ctx.tau.level(), ctx.sigma.level())) + source.max_level;
    if (output.max_level > bound) {
      std::ostringstream why;
      why << e.name << ": output level " << output.max_level << " > bound " << bound;
      out.fail(why.str());
    }
    if (ctx.tau.is_nat() && source.max_level == 0) {
      ++t0_entries;
      if (output.max_level > 3) {
        std::ostringstream why;
        why << e.name << ": level-0 source escaped T_3 (level " << output.max_level << ")";
        out.fail(why.str());
      }
    }
  }
  if (t0_entries == 0) out.fail("no level-0 sources with numeric elements in the corpus");
  if (out.pass) {
    std::ostringstream d;
    d << corpus().size() << " outputs within bound, " << t0_entries << " inside T_3";
    out.detail = d.str();
  }
  return out;
}

// criterion 4: translated-type level formula, exhaustively to arrow depth 3
Outcome level_formula() {
  Outcome out;
  std::vector<FinType> depth_le[4];
  depth_le[0] = {kN};
  for (int d = 1; d <= 3; ++d) {
    depth_le[d] = depth_le[d - 1];
    for (const auto& a : depth_le[d - 1])
      for (const auto& b : depth_le[d - 1]) {
        FinType arrow = FinType::arrow(a, b);
        bool seen = false;
        for (const auto& t : depth_le[d]) seen |= t == arrow;
        if (!seen) depth_le[d].push_back(arrow);
      }
  }
  FinType nn = FinType::arrow(kN, kN);
  std::uint64_t checked = 0;
  for (const FinType& tau : {kN, nn}) {
    for (const FinType& sigma : {kN, nn, FinType::arrow(nn, kN)}) {
      CircContext ctx{tau, sigma};
      for (const FinType& eta : depth_le[3]) {
        int want = 2 + std::max(1 + tau.level(), sigma.level()) + eta.level();
        if (circ_type(eta, ctx).level() != want || level_bound(eta, ctx) != want) {
          out.fail("formula breaks at eta = " + eta.show() + ", tau = " + tau.show() +
                   ", sigma = " + sigma.show());
          return out;
        }
        ++checked;
      }
    }
  }
  std::ostringstream d;
  d << depth_le[3].size() << " types x 6 contexts, " << checked << " checks";
  out.detail = d.str();
  return out;
}

// deterministic alpha families used by criteria 5 and 6
Value make_alpha(const FinType& tau, std::uint64_t i) {
  if (tau.is_nat()) {
    std::uint64_t mul = i % 3 + 1, add = i / 3 % 5, mod = i % 2 ? 4 : 5;
    return Value::host([mul, add, mod](const Value& n, Fuel&) {
      return Value::num((n.num_value() * mul + add) % mod);
    });
  }
  std::uint64_t c1 = i % 3, c2 = i / 3 % 3, c3 = i / 9 % 3;
  return Value::host([c1, c2, c3](const Value& n, Fuel&) {
    std::uint64_t nv = n.num_value();
    return Value::host([c1, c2, c3, nv](const Value& m, Fuel&) {
      return Value::num((nv * c1 + m.num_value() * c2 + c3) % 5);
    });
  });
}

// criterion 5: the value component reproduces the source meaning pointwise
Outcome val_component() {
  Outcome out;
  std::uint64_t checked = 0;
  for (const auto& e : corpus()) {
    CircContext ctx{e.tau, kN};
    Term full = parse_term(e.source);
    Term body = full.kid(0);
    CircResult r = circ_term(body, ctx, "alpha", {});
    Fuel fuel;
    Value val = eval_closed(fst(r.translated), fuel);
    Value yv = eval_closed(full, fuel);
    for (std::uint64_t i = 0; i < kValSamples; ++i) {
      Value alpha = make_alpha(ctx.tau, i);
      std::uint64_t got = apply(val, alpha, fuel).num_value();
      std::uint64_t want = apply(yv, alpha, fuel).num_value();
      ++checked;
      if (got != want) {
        std::ostringstream why;
        why << e.name << " at alpha #" << i << ": got " << got << ", want " << want;
        out.fail(why.str());
        break;
      }
    }
    if (!out.pass) break;
  }
  if (out.pass) {
    std::ostringstream d;
    d << checked << " pointwise agreements";
    out.detail = d.str();
  }
  return out;
}

// criterion 6: witness samplers pass and the bar component follows the
// witness's branches on sampled inputs
Outcome witness_and_branches() {
  Outcome out;
  std::uint64_t branch_checks = 0;
  for (const auto& e : corpus()) {
    CircContext ctx{e.tau, kN};
    Term body = parse_term(e.source).kid(0);
    BarWitness w = bar_witness(body, ctx, "alpha");
    Fuel fuel;
    fuel.max_steps = 400'000'000ULL;
    WitnessReport rep = check_witness(w, ctx, 11, kWitnessSamples, kWitnessMaxPrefix, fuel);
    if (!rep.all()) {
      std::string why = e.name + ": sampler failed (";
      why += rep.decidable ? "" : " decidable";
      why += rep.monotone ? "" : " monotone";
      why += rep.securing ? "" : " securing";
      why += rep.barred ? "" : " barred";
      out.fail(why + " )");
      break;
    }

    CircResult r = circ_term(body, ctx, "alpha", {});
    Value b = eval_closed(snd(r.translated), fuel);
    SampleSpec spec;
    spec.seed = 17;
    for (std::uint64_t i = 0; i < kEqThreeSamples; ++i) {
      SampleInput in = sample_input(spec, ctx, i);
      Value bgh = apply(apply(b, in.g, fuel), in.h, fuel);
      std::uint64_t got = apply(bgh, in.s, fuel).num_value();
      std::uint64_t want;
      if (w.holds(in.s, fuel)) {
        want = apply(in.g, in.s, fuel).num_value();
      } else {
        Value s = in.s;
        Value cont = Value::host([&bgh, s, &ctx](const Value& x, Fuel& f) {
          std::vector<Value> items = s.items();
          items.push_back(x);
          return apply(bgh, Value::seq(ctx.tau, std::move(items)), f);
        });
        want = apply(apply(in.h, in.s, fuel), cont, fuel).num_value();
      }
      ++branch_checks;
      if (got != want) {
        std::ostringstream why;
        why << e.name << " sample " << i << " s=" << in.s.show() << ": got " << got
            << ", want " << want;
        out.fail(why.str());
        break;
      }
    }
    if (!out.pass) break;
  }
  if (out.pass) {
    std::ostringstream d;
    d << corpus().size() << " witnesses, " << branch_checks << " branch checks";
    out.detail = d.str();
  }
  return out;
}

// criterion 7: the direct unfolding at constant stopping functionals meets
// the bounded unfolder on the criterion-1 grid
Outcome constant_y_cross_check() {
  Outcome out;
  Fuel fuel;
  fuel.max_steps = 4'000'000'000ULL;
  Value psi = eval_closed(build_psi(kCtx).term, fuel);
  std::uint64_t checked = 0;
  for (std::uint64_t k = 0; k <= 5 && out.pass; ++k) {
    Value psi_k = apply(psi, Value::num(k), fuel);
    Value Y = Value::host([k](const Value&, Fuel&) { return Value::num(k); });
    auto seqs = all_seqs(k + 2);
    for (std::uint64_t g_id = 0; g_id < g_grammar_size() && out.pass; ++g_id) {
      for (std::uint64_t h_id = 0; h_id < h_grammar_size() && out.pass; ++h_id) {
        Value G = make_g(kCtx, g_id);
        Value H = make_h(kCtx, h_id);
        Value pk = apply(apply(psi_k, G, fuel), H, fuel);
        for (const auto& digits : seqs) {
          Value s = num_seq(digits);
          std::uint64_t got = apply(pk, s, fuel).num_value();
          std::uint64_t want = eval_br_oracle(G, H, Y, s, fuel).num_value();
          ++checked;
          if (got != want) {
            std::ostringstream why;
            why << "k=" << k << " g=" << g_id << " h=" << h_id << " s=" << s.show()
                << ": unfolder " << got << ", oracle " << want;
            out.fail(why.str());
            break;
          }
        }
      }
    }
  }
  if (out.pass) {
    std::ostringstream d;
    d << checked << " oracle agreements";
    out.detail = d.str();
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// criterion 8: two seeded CLI runs emit byte-identical reports
Outcome cli_determinism(const std::string& cli) {
  Outcome out;
  if (cli.empty()) {
    out.fail("no --cli <path> given");
    return out;
  }
  std::string stem = "/tmp/brelim_accept_" + std::to_string(::getpid());
  std::string input = stem + ".t";
  {
    std::ofstream f(input);
    f << "fun alpha:N->N. rec[N] 0 (fun k:N. alpha) (alpha 0)\n";
  }
  std::string r1 = stem + "_1.json", r2 = stem + "_2.json";
  std::string base = "\"" + cli + "\" check --tau N --sigma N --input \"" + input +
                     "\" --seed 7 --samples 50 --report ";
  int c1 = std::system((base + "\"" + r1 + "\" > /dev/null").c_str());
  int c2 = std::system((base + "\"" + r2 + "\" > /dev/null").c_str());
  std::string b1 = slurp(r1), b2 = slurp(r2);
  std::remove(input.c_str());
  std::remove(r1.c_str());
  std::remove(r2.c_str());
  if (c1 != 0 || c2 != 0) {
    out.fail("CLI exited nonzero (" + std::to_string(c1) + ", " + std::to_string(c2) + ")");
  } else if (b1.empty()) {
    out.fail("empty report");
  } else if (b1 != b2) {
    out.fail("reports differ between runs");
  } else {
    out.detail = std::to_string(b1.size()) + " report bytes, identical across runs";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  struct Row {
    int id;
    const char* what;
    Outcome (*run)();
  };
  const Row rows[] = {
      {1, "bounded unfolder branch equations on the full grid", psi_branch_grid},
      {2, "eliminated terms track the direct unfolding on the corpus", elimination_equivalence},
      {3, "output recursor levels stay within the closed bound", fragment_bound},
      {4, "translated-type level formula, exhaustive to depth 3", level_formula},
      {5, "value component agrees with the source pointwise", val_component},
      {6, "securing witnesses pass the samplers and steer the bar component",
       witness_and_branches},
      {7, "constant stopping functionals meet the bounded unfolder", constant_y_cross_check},
  };

  int failures = 0;
  for (const auto& row : rows) {
    Outcome o;
    try {
      o = row.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << "criterion " << row.id << ": " << (o.pass ? "PASS" : "FAIL") << " — "
              << row.what << (o.detail.empty() ? "" : " (" + o.detail + ")") << "\n";
  }

  Outcome o8;
  try {
    o8 = cli_determinism(cli);
  } catch (const std::exception& e) {
    o8.fail(std::string("exception: ") + e.what());
  }
  failures += !o8.pass;
  std::cout << "criterion 8: " << (o8.pass ? "PASS" : "FAIL")
            << " — seeded check runs are byte-deterministic"
            << (o8.detail.empty() ? "" : " (" + o8.detail + ")") << "\n";

  return failures;
}

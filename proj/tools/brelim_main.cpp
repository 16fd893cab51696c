#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "brelim/eval.hpp"
#include "brelim/harness.hpp"
#include "brelim/parser.hpp"
#include "brelim/translate.hpp"
#include "brelim/typecheck.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;
constexpr int kExitFuel = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw brelim::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw brelim::Error("cannot write " + path);
  out << text;
}

int cmd_translate(const std::string& tau_s, const std::string& sigma_s,
                  const std::string& input, const std::string& output) {
  brelim::CircContext ctx(brelim::parse_type(tau_s), brelim::parse_type(sigma_s));
  brelim::Term y = brelim::parse_term(slurp(input));
  brelim::Elimination e = brelim::eliminate_br(y, ctx);
  spit(output, brelim::print(e.term) + "\n");
  std::cout << "wrote " << output << " (type " << ctx.b_type() << ")\n";
  return kExitPass;
}

int cmd_check(const std::string& tau_s, const std::string& sigma_s,
              const std::string& input, std::uint64_t seed, std::uint64_t samples,
              std::uint64_t fuel_steps, std::uint64_t fuel_br_depth,
              const std::string& report_path) {
  brelim::CircContext ctx(brelim::parse_type(tau_s), brelim::parse_type(sigma_s));
  brelim::Term y = brelim::parse_term(slurp(input));
  brelim::SampleSpec spec;
  spec.seed = seed;
  spec.samples = samples;
  spec.fuel_steps = fuel_steps;
  spec.fuel_br_depth = fuel_br_depth;

  auto t0 = std::chrono::steady_clock::now();
  brelim::Report rep = brelim::check_equivalence(y, ctx, spec);
  auto t1 = std::chrono::steady_clock::now();

  if (!report_path.empty()) spit(report_path, rep.to_json() + "\n");

  std::uint64_t equal = 0;
  for (const auto& v : rep.samples) equal += v.equal;
  std::cout << equal << "/" << rep.samples.size() << " samples equal, max recursor level "
            << rep.census.max_level << " (bound " << rep.bound_j << "), "
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
            << " ms\n";
  if (rep.shrunk) {
    std::cout << "minimal counterexample: s=" << rep.shrunk->s << " g=" << rep.shrunk->g_id
              << " h=" << rep.shrunk->h_id;
    if (rep.shrunk->error.empty())
      std::cout << " oracle=" << rep.shrunk->oracle << " translated=" << rep.shrunk->translated;
    else
      std::cout << " error=" << rep.shrunk->error;
    std::cout << "\n";
  }
  if (rep.fuel_exhausted) return kExitFuel;
  return rep.all_equal ? kExitPass : kExitMismatch;
}

int cmd_level(const std::string& input) {
  brelim::Term t = brelim::parse_term(slurp(input));
  brelim::Census c = brelim::analyze_fragment(t);
  if (c.entries.empty()) {
    std::cout << "no recursors; level 0\n";
    return kExitPass;
  }
  for (const auto& e : c.entries)
    std::cout << "level " << e.level << "  x" << e.count << "  rec[" << e.rec_type
              << "]\n";
  std::cout << "max level " << c.max_level << "\n";
  return kExitPass;
}

int cmd_run(const std::string& input, const std::vector<std::string>& arg_files) {
  brelim::Term t = brelim::parse_term(slurp(input));
  brelim::typecheck_closed(t);
  brelim::Fuel fuel;
  brelim::Value v = brelim::eval_closed(t, fuel);
  for (const std::string& path : arg_files) {
    brelim::Term a = brelim::parse_term(slurp(path));
    brelim::typecheck_closed(a);
    v = brelim::apply(v, brelim::eval_closed(a, fuel), fuel);
  }
  std::cout << v.show() << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eliminates Spector bar recursion at type levels 0/1 from System T terms"};
  app.require_subcommand(1);

  std::string tau_s = "N", sigma_s = "N", input, output, report_path;
  std::uint64_t seed = 42, samples = 100;
  std::uint64_t fuel_steps = 1'000'000, fuel_br_depth = 10'000;
  std::vector<std::string> arg_files;

  auto* translate = app.add_subcommand(
      "translate", "rewrite a stopping functional into a recursor-only definition");
  translate->add_option("--tau", tau_s, "sequence element type (N or N->N)");
  translate->add_option("--sigma", sigma_s, "result type");
  translate->add_option("--input", input, "file with the stopping functional")->required();
  translate->add_option("--output", output, "file for the rewritten term")->required();

  auto* check = app.add_subcommand(
      "check", "compare the rewritten term against direct unfolding on samples");
  check->add_option("--tau", tau_s, "sequence element type (N or N->N)");
  check->add_option("--sigma", sigma_s, "result type");
  check->add_option("--input", input, "file with the stopping functional")->required();
  check->add_option("--seed", seed, "sample seed");
  check->add_option("--samples", samples, "sample count");
  check->add_option("--fuel-steps", fuel_steps, "evaluation step budget per sample");
  check->add_option("--fuel-br-depth", fuel_br_depth, "unfolding depth budget per sample");
  check->add_option("--report", report_path, "write the JSON report here");

  auto* level = app.add_subcommand("level", "recursor census of a term");
  level->add_option("--input", input, "term file")->required();

  auto* run = app.add_subcommand("run", "evaluate a closed term, applied to arguments");
  run->add_option("--input", input, "term file")->required();
  run->add_option("--args", arg_files, "files with closed argument terms");

  auto* demo = app.add_subcommand("demo", "end-to-end walkthrough on the iterated example");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*translate) return cmd_translate(tau_s, sigma_s, input, output);
    if (*check)
      return cmd_check(tau_s, sigma_s, input, seed, samples, fuel_steps, fuel_br_depth,
                       report_path);
    if (*level) return cmd_level(input);
    if (*run) return cmd_run(input, arg_files);
    if (*demo) return brelim::run_demo(std::cout);
  } catch (const brelim::FuelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFuel;
  } catch (const brelim::BrDepthError& e) {
    std::cerr << "error: " << e.what() << " at " << e.path << "\n";
    return kExitFuel;
  } catch (const brelim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

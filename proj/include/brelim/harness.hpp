#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "brelim/eval.hpp"
#include "brelim/term.hpp"
#include "brelim/type.hpp"

namespace brelim {

struct SampleSpec {
  std::uint64_t seed = 42;
  std::uint64_t samples = 100;
  std::uint64_t fuel_steps = 1'000'000;
  std::uint64_t fuel_br_depth = 10'000;
  std::uint64_t alphabet = 3;  // numeric elements are drawn below this bound
  std::uint64_t max_len = 4;
  bool parallel = true;
};

// Derived per-sample seed; a pure function of (seed, index), so reruns are
// bit-identical regardless of scheduling.
std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t index);

// Fixed generator grammars. Numeric constants use c = 2, modulus m = 3.
//   G: 0 |s|   1 val(hat s 0)+|s|   2 c   3 (sum of element values) mod m
//   H: 0 f a0  1 proj(f a1)+|s|     2 c   3 f (lift (proj (f 0) mod m))
// where a0/a1 instantiate the argument grammar for tau (0 and hat s 0 for
// tau = N; fun n. n and fun n. (hat s 0) n + 1 for tau = N -> N) and
// results embed into / project out of sigma through constant shapes.
std::uint64_t g_grammar_size();
std::uint64_t h_grammar_size();
Value make_g(const CircContext& ctx, std::uint64_t id);
Value make_h(const CircContext& ctx, std::uint64_t id);
std::string g_describe(std::uint64_t id);
std::string h_describe(std::uint64_t id);

struct SampleInput {
  Value g, h, s;
  std::uint64_t g_id = 0, h_id = 0;
  std::string s_desc;
};

SampleInput sample_input(const SampleSpec& spec, const CircContext& ctx,
                         std::uint64_t index);

struct SampleVerdict {
  std::string s;
  std::string oracle;
  std::string translated;
  bool equal = false;
  std::uint64_t g_id = 0, h_id = 0;
  std::string error;  // nonempty when evaluation failed; equal stays false
};

struct CensusEntry {
  std::string rec_type;
  std::uint64_t level = 0;
  std::uint64_t count = 0;
};

struct Census {
  std::vector<CensusEntry> entries;  // sorted by (level, rec_type)
  std::uint64_t max_level = 0;
};

// Every recursor occurrence in t, grouped by type; max_level is 0 when
// there are none.
Census analyze_fragment(const Term& t);

struct Report {
  std::string term, tau, sigma;
  std::uint64_t seed = 0;
  std::vector<SampleVerdict> samples;
  Census census;
  std::uint64_t bound_j = 0;
  bool all_equal = false;
  bool fuel_exhausted = false;
  std::optional<SampleVerdict> shrunk;  // minimal failing sample, if any

  // Deterministic serialization (sorted keys, no volatile fields).
  std::string to_json() const;
};

// Eliminates bar recursion from y once, then compares the result with the
// direct unfolding on spec.samples independent inputs. Exact comparison at
// sigma = N; probe-based extensional comparison at arrow sigma.
Report check_equivalence(const Term& y, const CircContext& ctx, const SampleSpec& spec);

struct CorpusEntry {
  std::string name;
  std::string source;
  FinType tau;
};

// The fixed suite of stopping functionals the test and acceptance suites
// run against; sigma = N throughout.
const std::vector<CorpusEntry>& corpus();

// End-to-end walkthrough on the iterated-application example
// rec[N] 0 (fun k:N. alpha) (alpha 0): prints the eliminated term behind a
// definition table, structurally checks its head shape, reports the census
// and runs a 100-sample equivalence. Returns a process exit code.
int run_demo(std::ostream& os);

}  // namespace brelim

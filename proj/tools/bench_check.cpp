#include <chrono>
#include <iostream>

#include "brelim/harness.hpp"
#include "brelim/parser.hpp"

// Times the sample loop with and without the parallel schedule and checks
// the reports match byte for byte.

int main() {
  using namespace brelim;
  CircContext ctx(FinType::nat(), FinType::nat());
  Term y = parse_term("fun alpha:N->N. rec[N] 0 (fun k:N. alpha) (alpha 0)");

  SampleSpec spec;
  spec.samples = 2000;

  auto timed = [&](bool parallel) {
    spec.parallel = parallel;
    auto t0 = std::chrono::steady_clock::now();
    Report rep = check_equivalence(y, ctx, spec);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return std::make_pair(ms, rep.to_json());
  };

  auto [serial_ms, serial_json] = timed(false);
  auto [parallel_ms, parallel_json] = timed(true);

  std::cout << "samples: " << spec.samples << "\n"
            << "serial:   " << serial_ms << " ms\n"
            << "parallel: " << parallel_ms << " ms\n"
            << "speedup:  " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0) << "x\n"
            << "reports identical: " << (serial_json == parallel_json ? "yes" : "NO")
            << "\n";
  return serial_json == parallel_json ? 0 : 1;
}

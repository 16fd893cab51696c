#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "brelim/eval.hpp"
#include "brelim/term.hpp"
#include "brelim/type.hpp"

namespace brelim {

// Executable securing data for a term over the choice sequence. A ground
// witness carries the term's value as a function of the whole sequence
// together with a decidable predicate on finite prefixes; once the
// predicate holds on s, the value is already determined by s. An arrow
// witness maps argument witnesses to result witnesses.
class BarWitness {
 public:
  using Meaning = std::function<Value(const Value& alpha, Fuel&)>;
  using Bar = std::function<bool(const Value& s, Fuel&)>;
  using App = std::function<BarWitness(const BarWitness&)>;

  static BarWitness ground(Meaning m, Bar b);
  static BarWitness lifted(App a);

  bool is_ground() const;
  Value meaning(const Value& alpha, Fuel& fuel) const;
  bool holds(const Value& s, Fuel& fuel) const;
  BarWitness apply(const BarWitness& arg) const;

 private:
  struct Data;
  explicit BarWitness(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// Builds the witness for t compositionally. `alpha` names the choice
// sequence (type N -> tau). Other free variables need a type in free_types
// and a witness in wenv. Arithmetic sugar is rewritten away first, so the
// construction only deals with {0, S, rec, fun, application, variables}.
BarWitness bar_witness(const Term& t, const CircContext& ctx, const std::string& alpha,
                       const std::map<std::string, FinType>& free_types = {},
                       const std::map<std::string, BarWitness>& wenv = {});

// Sampled checks of the four properties a ground witness promises.
struct WitnessReport {
  bool decidable = false;  // holds() is total on sampled sequences
  bool monotone = false;   // holds(s) stays true on sampled extensions
  bool securing = false;   // holds(s) pins meaning() on sampled completions
  bool barred = false;     // sampled alphas reach the predicate within a bound
  bool all() const { return decidable && monotone && securing && barred; }
};

// Deterministic in (seed, samples). The bar search tries prefixes of each
// sampled alpha up to length max_prefix.
WitnessReport check_witness(const BarWitness& w, const CircContext& ctx,
                            std::uint64_t seed, std::uint64_t samples,
                            std::uint64_t max_prefix, Fuel& fuel);

}  // namespace brelim

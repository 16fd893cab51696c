#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "brelim/term.hpp"
#include "brelim/type.hpp"

namespace brelim {

struct EvalError : Error {
  using Error::Error;
};

// Raised when the step budget runs out.
struct FuelError : Error {
  using Error::Error;
};

// Raised when bar-recursion unfolding exceeds its depth budget; carries the
// sequence at which it happened.
struct BrDepthError : Error {
  std::string path;
  BrDepthError(const std::string& msg, std::string path_)
      : Error(msg), path(std::move(path_)) {}
};

struct Fuel {
  std::uint64_t max_steps = 1'000'000;
  std::uint64_t max_br_depth = 10'000;
  std::uint64_t steps = 0;

  void tick() {
    if (++steps > max_steps) throw FuelError("evaluation step budget exhausted");
  }
};

class Env;

// Call-by-value runtime value. Copies are cheap handle copies; the payload
// is immutable once built.
class Value {
 public:
  enum class Kind { Num, Seq, Pair, Closure, Host };

  // Host functions receive the evaluator's fuel so injected functionals
  // spend from the same budget as term code.
  using HostFn = std::function<Value(const Value&, Fuel&)>;

  static Value num(std::uint64_t n);
  static Value seq(FinType elem, std::vector<Value> items);
  static Value make_pair(Value a, Value b);
  static Value closure(std::string binder, Term body, Env env);
  static Value host(HostFn fn);

  Kind kind() const;
  bool is_fun() const { return kind() == Kind::Closure || kind() == Kind::Host; }

  std::uint64_t num_value() const;
  const std::vector<Value>& items() const;
  const FinType& elem_type() const;
  const Value& first() const;
  const Value& second() const;

  // Readable description: numerals, [..] sequences, <..> pairs, <fun>.
  std::string show() const;

  struct Data;

 private:
  explicit Value(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
  friend Value apply(const Value&, const Value&, Fuel&);
};

class Env {
 public:
  Env() = default;
  Env extend(const std::string& name, Value v) const;
  const Value* lookup(const std::string& name) const;

 private:
  struct Node {
    std::string name;
    Value v;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

Value eval(const Term& t, const Env& env, Fuel& fuel);
Value eval_closed(const Term& t, Fuel& fuel);

Value apply(const Value& f, const Value& arg, Fuel& fuel);

// 0 at N, nil at sequences, pointwise zero pairs, constant-zero functions.
Value zero_value(const FinType& ty);

// Total zero-extension of a finite sequence value, as a host function.
Value hat_value(const Value& s);

// Direct unfolding of Spector bar recursion:
//   if Y(hat s) < |s| then G(s) else H(s)(fun x. <recurse on s*x>).
// Used as the independent reference the translated terms are checked
// against; depth is limited by fuel.max_br_depth.
Value eval_br_oracle(const Value& G, const Value& H, const Value& Y, const Value& s,
                     Fuel& fuel);

// Extensional comparison. Ground types compare exactly; at arrows both
// sides are applied to probe arguments for the domain type and the results
// compared recursively.
using ProbeGen = std::function<std::vector<Value>(const FinType&)>;
ProbeGen default_probes();
bool values_equal(const Value& a, const Value& b, const FinType& ty, const ProbeGen& probes,
                  Fuel& fuel);

}  // namespace brelim

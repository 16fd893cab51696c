#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace brelim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TypeError : Error {
  using Error::Error;
};

// Finite types over N: arrows, finite sequences (T*), binary products.
class FinType {
 public:
  enum class Kind { Nat, Arrow, Seq, Prod };

  static FinType nat();
  static FinType arrow(FinType dom, FinType cod);
  static FinType seq(FinType elem);
  static FinType prod(FinType left, FinType right);

  Kind kind() const { return node_->kind; }
  bool is_nat() const { return kind() == Kind::Nat; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_seq() const { return kind() == Kind::Seq; }
  bool is_prod() const { return kind() == Kind::Prod; }

  // Arrow accessors.
  FinType dom() const;
  FinType cod() const;
  // Seq accessor.
  FinType elem() const;
  // Prod accessors.
  FinType left() const;
  FinType right() const;

  // level(N) = 0, level(a -> b) = max(1 + level a, level b),
  // level(t*) = level t, level(a x b) = max(level a, level b).
  int level() const;

  bool operator==(const FinType& other) const;
  bool operator!=(const FinType& other) const { return !(*this == other); }

  std::string show() const;

 private:
  struct Node {
    Kind kind;
    std::shared_ptr<const Node> a, b;
  };
  explicit FinType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const FinType& t);

// The two type parameters of a bar-recursion instance. tau is the sequence
// element type (level <= 1, i.e. N or N -> N here), sigma the result type.
struct CircContext {
  FinType tau;
  FinType sigma;

  CircContext(FinType tau_, FinType sigma_);

  bool tau_is_nat() const { return tau.is_nat(); }

  // tau* -> sigma
  FinType g_type() const;
  // tau* -> (tau -> sigma) -> sigma
  FinType h_type() const;
  // (tau* -> sigma) -> (tau* -> (tau -> sigma) -> sigma) -> tau* -> sigma
  FinType b_type() const;
  // (N -> tau) -> N
  FinType y_type() const;
  // full bar recursor type: g_type -> h_type -> y_type -> tau* -> sigma
  FinType br_type() const;
};

// The degree translation on types:
//   N maps to ((N -> tau) -> N) x b_type, arrows map pointwise.
// Sequence and product types are not in the translation's source language.
FinType circ_type(const FinType& eta, const CircContext& ctx);

// 2 + max(1 + level tau, level sigma) + level eta; equals
// level(circ_type(eta)) for every eta built from N and arrows.
int level_bound(const FinType& eta, const CircContext& ctx);

}  // namespace brelim

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "brelim/term.hpp"
#include "brelim/type.hpp"

namespace brelim {

// Scoped variable typing. Bindings shadow; the free-variable context built
// through bind() rejects duplicates, lambdas push/pop freely.
class TypingContext {
 public:
  TypingContext() = default;

  TypingContext& bind(const std::string& name, FinType ty);

  void push(const std::string& name, FinType ty);
  void pop();

  const FinType* lookup(const std::string& name) const;

 private:
  std::vector<std::pair<std::string, FinType>> entries_;
};

FinType typecheck(const Term& t, TypingContext& ctx);
FinType typecheck_closed(const Term& t);

}  // namespace brelim

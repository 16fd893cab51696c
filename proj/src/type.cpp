#include "brelim/type.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace brelim {

FinType FinType::nat() {
  static const auto node = std::make_shared<const Node>(Node{Kind::Nat, nullptr, nullptr});
  return FinType(node);
}

FinType FinType::arrow(FinType dom, FinType cod) {
  return FinType(std::make_shared<const Node>(Node{Kind::Arrow, dom.node_, cod.node_}));
}

FinType FinType::seq(FinType elem) {
  return FinType(std::make_shared<const Node>(Node{Kind::Seq, elem.node_, nullptr}));
}

FinType FinType::prod(FinType left, FinType right) {
  return FinType(std::make_shared<const Node>(Node{Kind::Prod, left.node_, right.node_}));
}

namespace {
const char* kind_name(FinType::Kind k) {
  switch (k) {
    case FinType::Kind::Nat: return "N";
    case FinType::Kind::Arrow: return "arrow";
    case FinType::Kind::Seq: return "sequence";
    case FinType::Kind::Prod: return "product";
  }
  return "?";
}
}  // namespace

FinType FinType::dom() const {
  if (!is_arrow()) throw TypeError("dom() on " + std::string(kind_name(kind())) + " type");
  return FinType(node_->a);
}

FinType FinType::cod() const {
  if (!is_arrow()) throw TypeError("cod() on " + std::string(kind_name(kind())) + " type");
  return FinType(node_->b);
}

FinType FinType::elem() const {
  if (!is_seq()) throw TypeError("elem() on " + std::string(kind_name(kind())) + " type");
  return FinType(node_->a);
}

FinType FinType::left() const {
  if (!is_prod()) throw TypeError("left() on " + std::string(kind_name(kind())) + " type");
  return FinType(node_->a);
}

FinType FinType::right() const {
  if (!is_prod()) throw TypeError("right() on " + std::string(kind_name(kind())) + " type");
  return FinType(node_->b);
}

int FinType::level() const {
  switch (kind()) {
    case Kind::Nat:
      return 0;
    case Kind::Arrow:
      return std::max(1 + FinType(node_->a).level(), FinType(node_->b).level());
    case Kind::Seq:
      return FinType(node_->a).level();
    case Kind::Prod:
      return std::max(FinType(node_->a).level(), FinType(node_->b).level());
  }
  return 0;
}

bool FinType::operator==(const FinType& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Nat:
      return true;
    case Kind::Seq:
      return FinType(node_->a) == FinType(other.node_->a);
    case Kind::Arrow:
    case Kind::Prod:
      return FinType(node_->a) == FinType(other.node_->a) &&
             FinType(node_->b) == FinType(other.node_->b);
  }
  return false;
}

namespace {

// Precedence for printing: seq star binds tightest, then x, then ->.
// show_prec(t, p): parenthesize when t's top connective binds looser than p.
void show_type(const FinType& t, int prec, std::ostream& os) {
  switch (t.kind()) {
    case FinType::Kind::Nat:
      os << "N";
      return;
    case FinType::Kind::Seq:
      show_type(t.elem(), 3, os);
      os << "*";
      return;
    case FinType::Kind::Prod: {
      bool paren = prec > 1;
      if (paren) os << "(";
      show_type(t.left(), 2, os);  // x associates to the left
      os << " x ";
      show_type(t.right(), 2, os);
      if (paren) os << ")";
      return;
    }
    case FinType::Kind::Arrow: {
      bool paren = prec > 0;
      if (paren) os << "(";
      show_type(t.dom(), 1, os);
      os << " -> ";
      show_type(t.cod(), 0, os);  // -> associates to the right
      if (paren) os << ")";
      return;
    }
  }
}

}  // namespace

std::string FinType::show() const {
  std::ostringstream os;
  show_type(*this, 0, os);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FinType& t) {
  show_type(t, 0, os);
  return os;
}

CircContext::CircContext(FinType tau_, FinType sigma_)
    : tau(std::move(tau_)), sigma(std::move(sigma_)) {
  if (tau.level() > 1 || tau.is_seq() || tau.is_prod() ||
      (tau.is_arrow() && (!tau.dom().is_nat() || !tau.cod().is_nat()))) {
    throw TypeError("sequence element type must be N or N -> N, got " + tau.show());
  }
}

FinType CircContext::g_type() const {
  return FinType::arrow(FinType::seq(tau), sigma);
}

FinType CircContext::h_type() const {
  return FinType::arrow(FinType::seq(tau),
                        FinType::arrow(FinType::arrow(tau, sigma), sigma));
}

FinType CircContext::b_type() const {
  return FinType::arrow(g_type(), FinType::arrow(h_type(), g_type()));
}

FinType CircContext::y_type() const {
  return FinType::arrow(FinType::arrow(FinType::nat(), tau), FinType::nat());
}

FinType CircContext::br_type() const {
  return FinType::arrow(g_type(),
                        FinType::arrow(h_type(), FinType::arrow(y_type(), g_type())));
}

FinType circ_type(const FinType& eta, const CircContext& ctx) {
  switch (eta.kind()) {
    case FinType::Kind::Nat:
      return FinType::prod(ctx.y_type(), ctx.b_type());
    case FinType::Kind::Arrow:
      return FinType::arrow(circ_type(eta.dom(), ctx), circ_type(eta.cod(), ctx));
    case FinType::Kind::Seq:
    case FinType::Kind::Prod:
      throw TypeError("the degree translation is defined on types built from N and ->, got " +
                      eta.show());
  }
  throw TypeError("unreachable type kind");
}

int level_bound(const FinType& eta, const CircContext& ctx) {
  // Validate eta the same way circ_type does.
  switch (eta.kind()) {
    case FinType::Kind::Seq:
    case FinType::Kind::Prod:
      throw TypeError("level bound is defined on types built from N and ->, got " + eta.show());
    default:
      break;
  }
  if (eta.is_arrow()) {
    level_bound(eta.dom(), ctx);
    level_bound(eta.cod(), ctx);
  }
  return 2 + std::max(1 + ctx.tau.level(), ctx.sigma.level()) + eta.level();
}

}  // namespace brelim

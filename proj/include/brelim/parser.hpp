#pragma once

#include <string>

#include "brelim/term.hpp"
#include "brelim/type.hpp"

namespace brelim {

struct ParseError : Error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

// Surface syntax, one term per input. `--` starts a line comment.
//
//   term ::= "fun" ident ":" type "." term | app
//   app  ::= app atom | atom
//   atom ::= numeral | "S" atom | "rec" "[" type "]" | ident | "(" term ")"
//          | "<" term "," term ">" | "fst" atom | "snd" atom
//          | "nil" "[" type "]" | "append" atom atom | "concat" atom atom
//          | "len" atom | "hat" atom | "idx" atom atom
//          | "trunc" "[" type "]" atom atom
//          | "br" "[" type "," type "]" | "if0" atom atom atom
//          | "lt" atom atom | "geq" atom atom | "plus" atom atom
//          | "monus" atom atom | "max" atom atom
//
//   type ::= prodty ("->" type)?          (right-associative)
//   prodty ::= seqty ("x" seqty)*         (left-associative)
//   seqty ::= atomty "*"*                 (postfix, binds tightest)
//   atomty ::= "N" | "(" type ")"
//
// Identifiers are [A-Za-z_][A-Za-z0-9_']* minus the keywords; apostrophes
// are legal so machine-generated terms round-trip.
Term parse_term(const std::string& src);
FinType parse_type(const std::string& src);

}  // namespace brelim

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "lexval/engine.hpp"

namespace lexval {

/// Position of a token in the source text (1-based line/column,
/// 0-based byte offset).
struct SourceSpan {
  int line = 1;
  int column = 1;
  std::size_t offset = 0;
};

/// Parse or semantic error, pointing at the first offending token.
class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::vector<std::string> expected,
             std::string found, std::string message);

  SourceSpan span;
  std::vector<std::string> expected;
  std::string found;
};

/// Parses a rule-base document:
///
///   document   := scaledecl negdecl? item* ;
///   scaledecl  := "scale" IDENT "{" IDENT+ "}" ;
///   negdecl    := "negation" "{" (IDENT "->" IDENT)+ "}" ;
///   item       := ruledecl | factdecl ;
///   ruledecl   := "rule" IDENT ":" "if" atom ("and" atom)*
///                 "then" concl ("and" concl)* ;
///   concl      := atom "[" pv "]" ;
///   factdecl   := "fact" atom "[" pv "]" ;
///   atom       := IDENT "=" IDENT ;
///   pv         := IDENT | "(" IDENT ("," IDENT)* ")" ;
///
/// '#' comments to end of line. Identifiers are [A-Za-z][A-Za-z0-9_-]*,
/// case-sensitive; the lowercase keywords are reserved. A single grade in a
/// pv position is promoted to a singleton valuation; explicit valuation
/// literals are canonicalized.
RuleBase parse_document(std::string_view text);

/// Parses a document consisting of a scale declaration (plus optional
/// negation table) only; used by the CLI's inline --scale flag.
Scale parse_scale_decl(std::string_view text);

/// Calculator expression over valuation literals:
///   NOT binds tighter than AND, which binds tighter than OR;
///   SIMP/RIMP/MPR/MPS are binary function calls, e.g. MPR((LARGE), (SMALL)).
/// Operator names are reserved words within expressions.
class Expr {
 public:
  virtual ~Expr() = default;
  virtual Valuation evaluate() const = 0;
};

using ExprPtr = std::unique_ptr<Expr>;

ExprPtr parse_expression(std::string_view text, const Scale& scale);

/// Convenience: parse and evaluate in one step.
Valuation eval_expression(std::string_view text, const Scale& scale);

/// Canonical text for a rule base: one declaration per line, rules before
/// facts, negation table only when it differs from the default reflection.
/// parse_document(serialize(rb)) == rb.
std::string serialize(const RuleBase& rb);

}  // namespace lexval

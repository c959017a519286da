// SPDX-License-Identifier: Apache-2.0
#include "lexval/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace lexval {

namespace {

enum class TokKind {
  Ident,
  LBrace,
  RBrace,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Colon,
  Equals,
  Arrow,
  End,
};

const char* kind_name(TokKind kind) {
  switch (kind) {
    case TokKind::Ident: return "identifier";
    case TokKind::LBrace: return "'{'";
    case TokKind::RBrace: return "'}'";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::LBracket: return "'['";
    case TokKind::RBracket: return "']'";
    case TokKind::Comma: return "','";
    case TokKind::Colon: return "':'";
    case TokKind::Equals: return "'='";
    case TokKind::Arrow: return "'->'";
    case TokKind::End: return "end of input";
  }
  return "?";
}

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  SourceSpan span;
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (true) {
      skip_trivia();
      const SourceSpan span = here();
      if (pos_ >= text_.size()) {
        tokens.push_back(Token{TokKind::End, "", span});
        return tokens;
      }
      const char c = text_[pos_];
      if (is_ident_start(c)) {
        std::size_t end = pos_ + 1;
        while (end < text_.size() && is_ident_char(text_[end])) {
          // Never swallow a '-' that starts an arrow, so that unspaced
          // negation entries like "a->b" still lex.
          if (text_[end] == '-' && end + 1 < text_.size() && text_[end + 1] == '>') {
            break;
          }
          ++end;
        }
        tokens.push_back(Token{TokKind::Ident,
                               std::string(text_.substr(pos_, end - pos_)), span});
        advance_to(end);
        continue;
      }
      if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        tokens.push_back(Token{TokKind::Arrow, "->", span});
        advance_to(pos_ + 2);
        continue;
      }
      TokKind kind;
      switch (c) {
        case '{': kind = TokKind::LBrace; break;
        case '}': kind = TokKind::RBrace; break;
        case '(': kind = TokKind::LParen; break;
        case ')': kind = TokKind::RParen; break;
        case '[': kind = TokKind::LBracket; break;
        case ']': kind = TokKind::RBracket; break;
        case ',': kind = TokKind::Comma; break;
        case ':': kind = TokKind::Colon; break;
        case '=': kind = TokKind::Equals; break;
        default:
          throw ParseError(span, {"token"}, std::string(1, c),
                           "unexpected character '" + std::string(1, c) + "'");
      }
      tokens.push_back(Token{kind, std::string(1, c), span});
      advance_to(pos_ + 1);
    }
  }

 private:
  SourceSpan here() const { return SourceSpan{line_, column_, pos_}; }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance_to(pos_ + 1);
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance_to(pos_ + 1);
      } else {
        return;
      }
    }
  }

  void advance_to(std::size_t end) {
    while (pos_ < end) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
      ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

const std::vector<std::string> kKeywords = {"scale", "negation", "rule",
                                            "if",    "and",      "then", "fact"};

bool is_keyword(const std::string& word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

class DocumentParser {
 public:
  explicit DocumentParser(std::string_view text) : tokens_(Lexer(text).run()) {}

  RuleBase parse() {
    Scale scale = parse_scale_decl();
    if (at_keyword("negation")) scale = parse_negation(scale);
    std::vector<Rule> rules;
    std::vector<Fact> facts;
    while (!at(TokKind::End)) {
      if (at_keyword("rule")) {
        rules.push_back(parse_rule(scale));
      } else if (at_keyword("fact")) {
        facts.push_back(parse_fact(scale));
      } else {
        fail({"'rule'", "'fact'", "end of input"});
      }
    }
    try {
      return RuleBase(std::move(scale), std::move(rules), std::move(facts));
    } catch (const ValidationError& e) {
      // Duplicate fact atoms etc. are caught against the last token; finer
      // spans for the common cases are raised before construction below.
      throw ParseError(peek().span, {}, peek().text, e.what());
    }
  }

  Scale parse_scale_only() {
    Scale scale = parse_scale_decl();
    if (at_keyword("negation")) scale = parse_negation(scale);
    expect(TokKind::End);
    return scale;
  }

 private:
  const Token& peek() const { return tokens_[index_]; }

  bool at(TokKind kind) const { return peek().kind == kind; }

  bool at_keyword(std::string_view word) const {
    return peek().kind == TokKind::Ident && peek().text == word;
  }

  Token take() { return tokens_[index_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& tok = peek();
    std::string message = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) message += i + 1 == expected.size() ? " or " : ", ";
      message += expected[i];
    }
    message += ", found ";
    message += tok.kind == TokKind::End ? "end of input" : "'" + tok.text + "'";
    throw ParseError(tok.span, std::move(expected), tok.text, std::move(message));
  }

  Token expect(TokKind kind) {
    if (!at(kind)) fail({kind_name(kind)});
    return take();
  }

  Token expect_keyword(std::string_view word) {
    if (!at_keyword(word)) fail({"'" + std::string(word) + "'"});
    return take();
  }

  Token expect_ident() {
    if (!at(TokKind::Ident)) fail({kind_name(TokKind::Ident)});
    if (is_keyword(peek().text)) {
      const Token& tok = peek();
      throw ParseError(tok.span, {"identifier"}, tok.text,
                       "keyword '" + tok.text + "' cannot be used as an identifier");
    }
    return take();
  }

  Scale parse_scale_decl() {
    expect_keyword("scale");
    const Token name = expect_ident();
    expect(TokKind::LBrace);
    std::vector<std::string> labels;
    std::vector<Token> label_tokens;
    while (at(TokKind::Ident)) {
      label_tokens.push_back(expect_ident());
      labels.push_back(label_tokens.back().text);
    }
    if (labels.empty()) fail({"grade label"});
    expect(TokKind::RBrace);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = i + 1; j < labels.size(); ++j) {
        if (labels[i] == labels[j]) {
          throw ParseError(label_tokens[j].span, {}, labels[j],
                           "duplicate grade label '" + labels[j] + "'");
        }
      }
    }
    if (labels.size() < 2) {
      throw ParseError(label_tokens.front().span, {}, labels.front(),
                       "a scale needs at least 2 grades");
    }
    return Scale::make(name.text, std::move(labels));
  }

  Scale parse_negation(const Scale& scale) {
    expect_keyword("negation");
    const Token brace = expect(TokKind::LBrace);
    std::vector<int> image(static_cast<std::size_t>(scale.size()), -1);
    std::vector<Token> entry_tokens;
    bool any = false;
    while (at(TokKind::Ident)) {
      const Token from = expect_ident();
      expect(TokKind::Arrow);
      const Token to = expect_ident();
      const int from_rank = resolve_grade(scale, from);
      const int to_rank = resolve_grade(scale, to);
      if (image[static_cast<std::size_t>(from_rank)] != -1) {
        throw ParseError(from.span, {}, from.text,
                         "grade '" + from.text + "' negated twice");
      }
      image[static_cast<std::size_t>(from_rank)] = to_rank;
      any = true;
    }
    if (!any) fail({"negation entry"});
    expect(TokKind::RBrace);
    for (int r = 0; r < scale.size(); ++r) {
      if (image[static_cast<std::size_t>(r)] == -1) {
        throw ParseError(brace.span, {}, "{",
                         "negation table is missing grade '" + scale.label_of(r) + "'");
      }
    }
    try {
      return scale.with_negation(image);
    } catch (const ValidationError& e) {
      throw ParseError(brace.span, {}, "{", e.what());
    }
  }

  int resolve_grade(const Scale& scale, const Token& tok) const {
    if (!scale.has_label(tok.text)) {
      throw ParseError(tok.span, {"grade label"}, tok.text,
                       "unknown grade '" + tok.text + "' on scale '" +
                           scale.name() + "'");
    }
    return scale.rank_of(tok.text);
  }

  Atom parse_atom() {
    const Token attribute = expect_ident();
    expect(TokKind::Equals);
    const Token value = expect_ident();
    return Atom{attribute.text, value.text};
  }

  Valuation parse_pv(const Scale& scale) {
    std::vector<int> ranks;
    if (at(TokKind::LParen)) {
      take();
      ranks.push_back(resolve_grade(scale, expect_ident()));
      while (at(TokKind::Comma)) {
        take();
        ranks.push_back(resolve_grade(scale, expect_ident()));
      }
      expect(TokKind::RParen);
    } else {
      ranks.push_back(resolve_grade(scale, expect_ident()));
    }
    return Valuation::from_grades(scale, std::move(ranks));
  }

  Rule parse_rule(const Scale& scale) {
    expect_keyword("rule");
    const Token id = expect_ident();
    if (!rule_ids_.insert(id.text).second) {
      throw ParseError(id.span, {}, id.text, "duplicate rule id '" + id.text + "'");
    }
    expect(TokKind::Colon);
    expect_keyword("if");
    std::vector<Atom> premises;
    premises.push_back(parse_atom());
    while (at_keyword("and")) {
      take();
      premises.push_back(parse_atom());
    }
    expect_keyword("then");
    std::vector<Conclusion> conclusions;
    conclusions.push_back(parse_conclusion(scale));
    while (at_keyword("and")) {
      take();
      conclusions.push_back(parse_conclusion(scale));
    }
    return Rule{id.text, std::move(premises), std::move(conclusions)};
  }

  Conclusion parse_conclusion(const Scale& scale) {
    Atom atom = parse_atom();
    const Token bracket = expect(TokKind::LBracket);
    Valuation pv = parse_pv(scale);
    expect(TokKind::RBracket);
    if (pv.is_bottom()) {
      throw ParseError(bracket.span, {}, "[",
                       "conclusion " + atom.to_string() +
                           " must have a plausibility above bottom");
    }
    return Conclusion{std::move(atom), std::move(pv)};
  }

  Fact parse_fact(const Scale& scale) {
    expect_keyword("fact");
    const Token attribute_token = peek();
    Atom atom = parse_atom();
    if (!fact_atoms_.insert(atom).second) {
      throw ParseError(attribute_token.span, {}, attribute_token.text,
                       "duplicate fact for atom " + atom.to_string());
    }
    expect(TokKind::LBracket);
    Valuation pv = parse_pv(scale);
    expect(TokKind::RBracket);
    return Fact{std::move(atom), std::move(pv)};
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  std::set<std::string> rule_ids_;
  std::set<Atom> fact_atoms_;
};

}  // namespace

ParseError::ParseError(SourceSpan span_, std::vector<std::string> expected_,
                       std::string found_, std::string message)
    : Error(std::to_string(span_.line) + ":" + std::to_string(span_.column) +
            ": " + message),
      span(span_),
      expected(std::move(expected_)),
      found(std::move(found_)) {}

RuleBase parse_document(std::string_view text) {
  return DocumentParser(text).parse();
}

Scale parse_scale_decl(std::string_view text) {
  return DocumentParser(text).parse_scale_only();
}

namespace {

// ----- calculator expressions -----

class LiteralExpr : public Expr {
 public:
  explicit LiteralExpr(Valuation v) : value_(std::move(v)) {}
  Valuation evaluate() const override { return value_; }

 private:
  Valuation value_;
};

class UnaryExpr : public Expr {
 public:
  UnaryExpr(Valuation (*fn)(const Valuation&), ExprPtr operand)
      : fn_(fn), operand_(std::move(operand)) {}
  Valuation evaluate() const override { return fn_(operand_->evaluate()); }

 private:
  Valuation (*fn_)(const Valuation&);
  ExprPtr operand_;
};

class BinaryExpr : public Expr {
 public:
  BinaryExpr(Valuation (*fn)(const Valuation&, const Valuation&), ExprPtr lhs,
             ExprPtr rhs)
      : fn_(fn), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}
  Valuation evaluate() const override {
    return fn_(lhs_->evaluate(), rhs_->evaluate());
  }

 private:
  Valuation (*fn_)(const Valuation&, const Valuation&);
  ExprPtr lhs_;
  ExprPtr rhs_;
};

Valuation eval_conj(const Valuation& a, const Valuation& b) { return conj(a, b); }
Valuation eval_mpgf_r(const Valuation& a, const Valuation& b) {
  return mpgf_r(a, b);
}

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const Scale& scale)
      : tokens_(Lexer(text).run()), scale_(scale) {}

  ExprPtr parse() {
    ExprPtr e = parse_or();
    if (!at(TokKind::End)) fail({"operator", "end of input"});
    return e;
  }

 private:
  static bool is_operator_word(const std::string& word) {
    return word == "AND" || word == "OR" || word == "NOT" || word == "SIMP" ||
           word == "RIMP" || word == "MPR" || word == "MPS";
  }

  const Token& peek() const { return tokens_[index_]; }
  bool at(TokKind kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const {
    return peek().kind == TokKind::Ident && peek().text == word;
  }
  Token take() { return tokens_[index_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& tok = peek();
    std::string message = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) message += i + 1 == expected.size() ? " or " : ", ";
      message += expected[i];
    }
    message += ", found ";
    message += tok.kind == TokKind::End ? "end of input" : "'" + tok.text + "'";
    throw ParseError(tok.span, std::move(expected), tok.text, std::move(message));
  }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (at_word("OR")) {
      take();
      lhs = std::make_unique<BinaryExpr>(&disj, std::move(lhs), parse_and());
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_unary();
    while (at_word("AND")) {
      take();
      lhs = std::make_unique<BinaryExpr>(&eval_conj, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (at_word("NOT")) {
      take();
      return std::make_unique<UnaryExpr>(&neg, parse_unary());
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    if (at(TokKind::Ident)) {
      const std::string& word = peek().text;
      if (word == "SIMP" || word == "RIMP" || word == "MPR" || word == "MPS") {
        return parse_call();
      }
      if (is_operator_word(word)) fail({"valuation", "'('"});
      // A bare grade label is a singleton valuation.
      const Token tok = take();
      return std::make_unique<LiteralExpr>(resolve_literal({tok}));
    }
    if (at(TokKind::LParen)) {
      // '(' starts either a valuation literal or a parenthesized expression;
      // a grade label followed by ',' or ')' means a literal.
      const std::size_t saved = index_;
      take();
      if (at(TokKind::Ident) && !is_operator_word(peek().text) &&
          scale_.has_label(peek().text)) {
        std::vector<Token> grades;
        grades.push_back(take());
        while (at(TokKind::Comma)) {
          take();
          if (!at(TokKind::Ident)) fail({"grade label"});
          grades.push_back(take());
        }
        if (at(TokKind::RParen)) {
          take();
          return std::make_unique<LiteralExpr>(resolve_literal(grades));
        }
        index_ = saved;  // it was an expression after all, e.g. "(LARGE AND X)"
      } else {
        index_ = saved;
      }
      take();  // '('
      ExprPtr inner = parse_or();
      if (!at(TokKind::RParen)) fail({kind_name(TokKind::RParen)});
      take();
      return inner;
    }
    fail({"valuation", "'('", "NOT", "SIMP", "RIMP", "MPR", "MPS"});
  }

  ExprPtr parse_call() {
    const Token op = take();
    if (!at(TokKind::LParen)) fail({kind_name(TokKind::LParen)});
    take();
    ExprPtr first = parse_or();
    if (!at(TokKind::Comma)) fail({kind_name(TokKind::Comma)});
    take();
    ExprPtr second = parse_or();
    if (!at(TokKind::RParen)) fail({kind_name(TokKind::RParen)});
    take();
    Valuation (*fn)(const Valuation&, const Valuation&) = nullptr;
    if (op.text == "SIMP") fn = &s_implication;
    if (op.text == "RIMP") fn = &r_implication;
    if (op.text == "MPR") fn = &eval_mpgf_r;
    if (op.text == "MPS") fn = &mpgf_s;
    return std::make_unique<BinaryExpr>(fn, std::move(first), std::move(second));
  }

  Valuation resolve_literal(const std::vector<Token>& grades) const {
    std::vector<int> ranks;
    ranks.reserve(grades.size());
    for (const Token& tok : grades) {
      if (!scale_.has_label(tok.text)) {
        throw ParseError(tok.span, {"grade label"}, tok.text,
                         "unknown grade '" + tok.text + "' on scale '" +
                             scale_.name() + "'");
      }
      ranks.push_back(scale_.rank_of(tok.text));
    }
    return Valuation::from_grades(scale_, std::move(ranks));
  }

  std::vector<Token> tokens_;
  const Scale& scale_;
  std::size_t index_ = 0;
};

}  // namespace

ExprPtr parse_expression(std::string_view text, const Scale& scale) {
  return ExpressionParser(text, scale).parse();
}

Valuation eval_expression(std::string_view text, const Scale& scale) {
  return parse_expression(text, scale)->evaluate();
}

namespace {

std::string pv_text(const Valuation& pv) {
  if (pv.length() == 1) return pv.scale().label_of(pv.first_rank());
  return pv.to_string();
}

}  // namespace

std::string serialize(const RuleBase& rb) {
  std::ostringstream out;
  out << "scale " << rb.scale().name() << " {";
  for (const auto& label : rb.scale().labels()) out << ' ' << label;
  out << " }\n";
  if (!rb.scale().negation_is_default()) {
    out << "negation {";
    for (int r = 0; r < rb.scale().size(); ++r) {
      out << ' ' << rb.scale().label_of(r) << " -> "
          << rb.scale().label_of(rb.scale().negate_rank(r));
    }
    out << " }\n";
  }
  for (const auto& rule : rb.rules()) {
    out << "rule " << rule.id << ": if ";
    for (std::size_t i = 0; i < rule.premises.size(); ++i) {
      if (i > 0) out << " and ";
      out << rule.premises[i].to_string();
    }
    out << " then ";
    for (std::size_t i = 0; i < rule.conclusions.size(); ++i) {
      if (i > 0) out << " and ";
      out << rule.conclusions[i].atom.to_string() << " ["
          << pv_text(rule.conclusions[i].pv) << ']';
    }
    out << '\n';
  }
  for (const auto& fact : rb.facts()) {
    out << "fact " << fact.atom.to_string() << " [" << pv_text(fact.pv) << "]\n";
  }
  return out.str();
}

}  // namespace lexval

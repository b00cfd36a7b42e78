#include "pexp/parser.hpp"

#include <cctype>

namespace pexp {

ParseError::ParseError(const std::string &message, size_t line_, size_t col_)
    : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                         std::to_string(col_) + ": " + message),
      line(line_), col(col_) {}

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos;
      } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
        while (pos < text.size() && text[pos] != '\n')
          ++pos;
      } else {
        break;
      }
    }
  }

  [[nodiscard]] bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  [[nodiscard]] char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string &message) const {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < pos && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(message, line, col);
  }

  bool try_consume(std::string_view token) {
    skip_ws();
    if (text.substr(pos, token.size()) != token)
      return false;
    // Keywords must not run into a longer identifier.
    if (std::isalpha(static_cast<unsigned char>(token.back())) || token.back() == '_') {
      size_t after = pos + token.size();
      if (after < text.size() &&
          (std::isalnum(static_cast<unsigned char>(text[after])) || text[after] == '_'))
        return false;
    }
    pos += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!try_consume(token))
      fail("expected '" + std::string(token) + "'");
  }

  [[nodiscard]] std::optional<std::string> try_identifier() {
    skip_ws();
    size_t start = pos;
    if (pos >= text.size())
      return std::nullopt;
    char c = text[pos];
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
      return std::nullopt;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return std::string(text.substr(start, pos - start));
  }

  [[nodiscard]] std::string identifier() {
    auto id = try_identifier();
    if (!id)
      fail("expected identifier");
    return *id;
  }

  // Unsigned rational literal: digits, optionally followed by '/digits'
  // or '.digits' with no intervening whitespace.
  [[nodiscard]] std::optional<Rational> try_number() {
    skip_ws();
    size_t start = pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      return std::nullopt;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos < text.size() && (text[pos] == '/' || text[pos] == '.')) {
      size_t mark = pos;
      ++pos;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
      } else {
        pos = mark;
      }
    }
    auto parsed = parse_rational(text.substr(start, pos - start));
    if (!parsed)
      fail("malformed number literal");
    return parsed;
  }

  /// Rational with optional sign, e.g. in domain lists and probabilities.
  [[nodiscard]] Rational signed_number() {
    bool negative = try_consume("-");
    auto n = try_number();
    if (!n)
      fail("expected number");
    return negative ? -*n : *n;
  }
};

struct Parser {
  Cursor cur;

  // ---- arithmetic ------------------------------------------------------

  ArithPtr arith() {
    ArithPtr e = arith_term();
    for (;;) {
      if (cur.try_consume("+"))
        e = ArithExpr::add(e, arith_term());
      else if (cur.try_consume("-"))
        e = ArithExpr::sub(e, arith_term());
      else
        return e;
    }
  }

  ArithPtr arith_term() {
    ArithPtr e = arith_factor();
    while (cur.try_consume("*"))
      e = ArithExpr::mul(e, arith_factor());
    return e;
  }

  ArithPtr arith_factor() {
    if (cur.try_consume("-"))
      return ArithExpr::negate(arith_factor());
    ArithPtr e;
    if (auto n = cur.try_number()) {
      e = ArithExpr::constant(*n);
    } else if (cur.peek() == '(') {
      cur.expect("(");
      e = arith();
      cur.expect(")");
    } else if (cur.peek() == '[') {
      cur.expect("[");
      e = ArithExpr::indicator(boolean());
      cur.expect("]");
    } else if (auto id = cur.try_identifier()) {
      e = ArithExpr::variable(*id);
    } else {
      cur.fail("expected arithmetic expression");
    }
    while (cur.try_consume("^")) {
      auto n = cur.try_number();
      if (!n || *n != 2)
        cur.fail("only squaring (^2) is supported");
      e = ArithExpr::square(e);
    }
    return e;
  }

  // ---- booleans --------------------------------------------------------

  BoolPtr boolean() {
    BoolPtr e = bool_and();
    while (cur.try_consume("||") || cur.try_consume("or"))
      e = BoolExpr::disj(e, bool_and());
    return e;
  }

  BoolPtr bool_and() {
    BoolPtr e = bool_atom();
    while (cur.try_consume("&&") || cur.try_consume("and"))
      e = BoolExpr::conj(e, bool_atom());
    return e;
  }

  BoolPtr bool_atom() {
    if (cur.try_consume("!"))
      return BoolExpr::negation(bool_atom());
    if (cur.try_consume("true"))
      return BoolExpr::truth(true);
    if (cur.try_consume("false"))
      return BoolExpr::truth(false);
    if (cur.peek() == '(') {
      // Either a parenthesised boolean or the left side of a comparison.
      size_t save = cur.pos;
      cur.expect("(");
      try {
        BoolPtr inner = boolean();
        cur.expect(")");
        if (!at_comparison_op())
          return inner;
      } catch (const ParseError &) {
      }
      cur.pos = save;
    }
    return comparison();
  }

  [[nodiscard]] bool at_comparison_op() {
    char c = cur.peek();
    return c == '<' || c == '>' || c == '=' ||
           (c == '!' && cur.pos + 1 < cur.text.size() && cur.text[cur.pos + 1] == '=');
  }

  BoolPtr comparison() {
    ArithPtr lhs = arith();
    BoolExpr::Cmp op;
    if (cur.try_consume("<="))
      op = BoolExpr::Cmp::Le;
    else if (cur.try_consume(">="))
      op = BoolExpr::Cmp::Ge;
    else if (cur.try_consume("!="))
      op = BoolExpr::Cmp::Ne;
    else if (cur.try_consume("=="))
      op = BoolExpr::Cmp::Eq;
    else if (cur.try_consume("="))
      op = BoolExpr::Cmp::Eq;
    else if (cur.try_consume("<"))
      op = BoolExpr::Cmp::Lt;
    else if (cur.try_consume(">"))
      op = BoolExpr::Cmp::Gt;
    else
      cur.fail("expected comparison operator");
    return BoolExpr::compare(op, lhs, arith());
  }

  // ---- expectations ----------------------------------------------------

  ExpPtr expectation() {
    std::vector<ExpPtr> terms;
    terms.push_back(exp_term());
    while (cur.try_consume("+"))
      terms.push_back(exp_term());
    return Expectation::sum(std::move(terms));
  }

  ExpPtr exp_term() {
    ExpPtr e = exp_factor();
    while (cur.try_consume("*")) {
      ExpPtr rhs = exp_factor();
      if (e->kind == Expectation::Kind::Constant)
        e = Expectation::scale(e->value, rhs);
      else if (rhs->kind == Expectation::Kind::Constant)
        e = Expectation::scale(rhs->value, e);
      else
        e = Expectation::product(e, rhs);
    }
    return e;
  }

  ExpPtr exp_factor() {
    if (auto n = cur.try_number())
      return Expectation::constant(*n);
    if (cur.peek() == '[') {
      cur.expect("[");
      ExpPtr e = Expectation::indicator(boolean());
      cur.expect("]");
      return e;
    }
    if (cur.peek() == '(') {
      cur.expect("(");
      ExpPtr e = expectation();
      cur.expect(")");
      return e;
    }
    cur.fail("expected expectation factor (number, [guard] or parenthesised sum)");
  }

  // ---- instructions ----------------------------------------------------

  Prog instructions(std::string_view terminator) {
    Prog prog;
    for (;;) {
      prog.insts.push_back(instruction());
      if (!cur.try_consume(";"))
        break;
      // Allow a trailing semicolon before the closing brace / end of input.
      cur.skip_ws();
      if (cur.pos >= cur.text.size())
        break;
      if (!terminator.empty() && cur.text.substr(cur.pos, terminator.size()) == terminator)
        break;
    }
    return prog;
  }

  Prog block() {
    cur.expect("{");
    Prog prog = instructions("}");
    cur.expect("}");
    return prog;
  }

  Inst instruction() {
    if (cur.try_consume("skip"))
      return make_skip();
    if (cur.try_consume("if")) {
      cur.expect("(");
      BoolPtr guard = boolean();
      cur.expect(")");
      Prog then_branch = block();
      cur.expect("else");
      Prog else_branch = block();
      return make_cond(std::move(guard), std::move(then_branch), std::move(else_branch));
    }
    if (cur.try_consume("while"))
      return loop();
    if (cur.peek() == '{') {
      Prog left = block();
      cur.expect("[");
      Rational p = cur.signed_number();
      if (p < 0 || p > 1)
        cur.fail("choice probability must lie in [0,1]");
      cur.expect("]");
      Prog right = block();
      return make_pchoice(std::move(left), std::move(p), std::move(right));
    }
    std::string target = cur.identifier();
    cur.expect(":=");
    return make_assign(std::move(target), arith());
  }

  Inst loop() {
    cur.expect("(");
    BoolPtr guard = boolean();
    cur.expect(")");
    cur.expect("@invariant");
    cur.expect("{");
    ExpPtr invariant = expectation();
    cur.expect("}");
    std::optional<TotalLoopAnnotation> total;
    if (cur.try_consume("@terminates")) {
      TotalLoopAnnotation t;
      cur.expect("{");
      t.terminates = boolean();
      cur.expect("}");
      cur.expect("@variant");
      cur.expect("{");
      t.variant = arith();
      cur.expect("}");
      cur.expect("@bounds");
      cur.expect("{");
      t.lower = cur.signed_number();
      cur.expect(",");
      t.upper = cur.signed_number();
      cur.expect("}");
      if (t.lower > t.upper)
        cur.fail("variant bounds must satisfy lower <= upper");
      if (boost::multiprecision::denominator(t.lower) != 1 ||
          boost::multiprecision::denominator(t.upper) != 1)
        cur.fail("variant bounds must be integers");
      cur.expect("@eps");
      cur.expect("{");
      t.eps = cur.signed_number();
      cur.expect("}");
      if (t.eps <= 0 || t.eps > 1)
        cur.fail("eps must lie in (0,1]");
      total = std::move(t);
    }
    cur.expect("do");
    Prog body = block();
    return make_while(std::move(guard), std::move(invariant), std::move(body), std::move(total));
  }

  // ---- file sections ---------------------------------------------------

  ProgramFile file() {
    ProgramFile out;
    cur.expect("domains");
    cur.expect("{");
    while (cur.peek() != '}') {
      VarDomain d;
      d.var = cur.identifier();
      if (out.space.find(d.var))
        cur.fail("duplicate domain for variable '" + d.var + "'");
      cur.expect("in");
      cur.expect("{");
      d.values.push_back(cur.signed_number());
      while (cur.try_consume(","))
        d.values.push_back(cur.signed_number());
      cur.expect("}");
      cur.expect(";");
      for (size_t i = 0; i < d.values.size(); ++i)
        for (size_t j = i + 1; j < d.values.size(); ++j)
          if (d.values[i] == d.values[j])
            cur.fail("duplicate value in domain of '" + d.var + "'");
      out.space.domains.push_back(std::move(d));
    }
    cur.expect("}");

    cur.expect("spec");
    if (cur.try_consume("total"))
      out.mode = Mode::Total;
    else if (cur.try_consume("partial"))
      out.mode = Mode::Partial;
    else
      cur.fail("expected 'partial' or 'total'");
    cur.expect("pre");
    cur.expect("{");
    out.pre = expectation();
    cur.expect("}");
    cur.expect("post");
    cur.expect("{");
    out.post = expectation();
    cur.expect("}");

    cur.expect("program");
    out.prog = block();
    if (!cur.at_end())
      cur.fail("unexpected trailing input");
    if (out.mode == Mode::Total)
      require_total_annotations(out.prog);
    return out;
  }

  void require_total_annotations(const Prog &prog) {
    for (const auto &inst : prog.insts) {
      if (inst.kind == Inst::Kind::While && !inst.total)
        cur.fail("total mode requires @terminates/@variant/@bounds/@eps on every loop");
      if (inst.branch1)
        require_total_annotations(*inst.branch1);
      if (inst.branch2)
        require_total_annotations(*inst.branch2);
    }
  }
};

} // namespace

ProgramFile parse_program_file(std::string_view text) {
  Parser p{Cursor{text}};
  return p.file();
}

Prog parse_program(std::string_view text) {
  Parser p{Cursor{text}};
  Prog prog = p.instructions("");
  if (!p.cur.at_end())
    p.cur.fail("unexpected trailing input");
  return prog;
}

ExpPtr parse_expectation(std::string_view text) {
  Parser p{Cursor{text}};
  ExpPtr e = p.expectation();
  if (!p.cur.at_end())
    p.cur.fail("unexpected trailing input");
  return e;
}

ArithPtr parse_arith(std::string_view text) {
  Parser p{Cursor{text}};
  ArithPtr e = p.arith();
  if (!p.cur.at_end())
    p.cur.fail("unexpected trailing input");
  return e;
}

BoolPtr parse_bool(std::string_view text) {
  Parser p{Cursor{text}};
  BoolPtr e = p.boolean();
  if (!p.cur.at_end())
    p.cur.fail("unexpected trailing input");
  return e;
}

} // namespace pexp

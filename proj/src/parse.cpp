#include "liberator/parse.hpp"

#include <cctype>
#include <map>
#include <vector>

namespace liberator {

ParseError::ParseError(std::string message, std::size_t line_,
                       std::size_t column_)
    : std::runtime_error(message + " (line " + std::to_string(line_) +
                         ", column " + std::to_string(column_) + ")"),
      line(line_),
      column(column_) {}

namespace {

struct Token {
  enum class Kind { Integer, Name, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return name_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

// Splits the input into tokens; '#' comments run to end of line. The End
// sentinel carries the position just past the input.
std::vector<Token> tokenize(const std::string& text, std::size_t first_line) {
  std::vector<Token> out;
  std::size_t line = first_line;
  std::size_t column = 1;
  std::size_t i = 0;
  const std::string punct = "+-*/^(){}[],=";
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++column;
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.column = column;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::Kind::Integer;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        t.text += text[i++];
        ++column;
      }
    } else if (name_start(c)) {
      t.kind = Token::Kind::Name;
      while (i < text.size() && name_char(text[i])) {
        t.text += text[i++];
        ++column;
      }
    } else if (punct.find(c) != std::string::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      ++i;
      ++column;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "'",
                       line, column);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.column = column;
  out.push_back(std::move(end));
  return out;
}

// Recursive-descent expression parser:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := coeff ['*' factors] | coeff factors | factors
//   factors:= factor (['*'] factor)*
//   factor := primary ['^' INT]
//   primary:= NAME | '{' NAME ',' NAME '}' | '(' expr ')'
//   coeff  := INT ['/' INT]
class ExprParser {
 public:
  ExprParser(const std::vector<Token>& tokens, const GeneratorSet& gens)
      : tokens_(tokens), gens_(gens) {}

  NCPoly parse_all() {
    NCPoly value = parse_expr();
    expect_end();
    return value;
  }

  NCPoly parse_expr() {
    bool negative = false;
    if (is_punct("+") || is_punct("-")) {
      negative = take().text == "-";
    }
    NCPoly total = parse_term();
    if (negative) total = -total;
    while (is_punct("+") || is_punct("-")) {
      const bool minus = take().text == "-";
      NCPoly term = parse_term();
      if (minus) {
        total -= term;
      } else {
        total += term;
      }
    }
    return total;
  }

  void expect_end() {
    if (peek().kind != Token::Kind::End) {
      throw ParseError("unexpected trailing input '" + peek().text + "'",
                       peek().line, peek().column);
    }
  }

 private:
  NCPoly parse_term() {
    NCPoly product = NCPoly::scalar(gens_, ParamPoly(1));
    bool have_factor = false;
    if (peek().kind == Token::Kind::Integer) {
      product = NCPoly::scalar(gens_, ParamPoly(parse_rational()));
      have_factor = true;
      if (is_punct("*")) {
        take();
        if (!starts_factor()) {
          throw ParseError("expected a factor after '*'", peek().line,
                           peek().column);
        }
      }
    }
    while (starts_factor()) {
      product = product * parse_factor();
      have_factor = true;
      if (is_punct("*")) {
        take();
        if (!starts_factor()) {
          throw ParseError("expected a factor after '*'", peek().line,
                           peek().column);
        }
      }
    }
    if (!have_factor) {
      throw ParseError("expected a term", peek().line, peek().column);
    }
    return product;
  }

  bool starts_factor() {
    return peek().kind == Token::Kind::Name || is_punct("{") || is_punct("(");
  }

  NCPoly parse_factor() {
    NCPoly base = parse_primary();
    unsigned power = 1;
    if (is_punct("^")) {
      take();
      power = parse_exponent();
    }
    NCPoly result = NCPoly::scalar(gens_, ParamPoly(1));
    for (unsigned k = 0; k < power; ++k) result = result * base;
    return result;
  }

  NCPoly parse_primary() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Name) {
      return NCPoly::generator(gens_, generator_index(take()));
    }
    if (is_punct("{")) {
      take();
      const std::size_t a = generator_index(expect_name("generator"));
      expect_punct(",");
      const std::size_t b = generator_index(expect_name("generator"));
      expect_punct("}");
      const NCPoly pa = NCPoly::generator(gens_, a);
      const NCPoly pb = NCPoly::generator(gens_, b);
      return Rational(1, 2) * (pa * pb + pb * pa);
    }
    if (is_punct("(")) {
      take();
      NCPoly inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    throw ParseError("expected a generator, '{', or '('", t.line, t.column);
  }

  Rational parse_rational() {
    const Token num = take();
    Integer n(num.text);
    if (is_punct("/")) {
      take();
      const Token den = expect_integer("denominator");
      Integer d(den.text);
      if (d == 0) throw ParseError("zero denominator", den.line, den.column);
      return Rational(n, d);
    }
    return Rational(n);
  }

  unsigned parse_exponent() {
    const Token t = expect_integer("nonnegative integer exponent");
    if (t.text.size() > 9) {
      throw ParseError("exponent out of range", t.line, t.column);
    }
    return static_cast<unsigned>(std::stoul(t.text));
  }

  std::size_t generator_index(const Token& t) {
    try {
      return gens_.index_of(t.text);
    } catch (const std::invalid_argument&) {
      throw ParseError("unknown generator '" + t.text + "'", t.line, t.column);
    }
  }

  const Token& peek() const { return tokens_[pos_]; }

  Token take() {
    const Token t = tokens_[pos_];
    if (t.kind != Token::Kind::End) ++pos_;
    return t;
  }

  bool is_punct(const std::string& p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }

  Token expect_name(const std::string& what) {
    if (peek().kind != Token::Kind::Name) {
      throw ParseError("expected a " + what, peek().line, peek().column);
    }
    return take();
  }

  Token expect_integer(const std::string& what) {
    if (peek().kind != Token::Kind::Integer) {
      throw ParseError("expected a " + what, peek().line, peek().column);
    }
    return take();
  }

  void expect_punct(const std::string& p) {
    if (!is_punct(p)) {
      throw ParseError("expected '" + p + "'", peek().line, peek().column);
    }
    take();
  }

  const std::vector<Token>& tokens_;
  const GeneratorSet& gens_;
  std::size_t pos_ = 0;
};

}  // namespace

Dynamics parse_dynamics(const std::string& text) {
  // Split into physical lines so every diagnostic lands on the right one.
  std::vector<std::pair<std::size_t, std::string>> lines;
  {
    std::size_t line_no = 1;
    std::string current;
    for (const char c : text) {
      if (c == '\n') {
        lines.emplace_back(line_no++, current);
        current.clear();
      } else {
        current += c;
      }
    }
    lines.emplace_back(line_no, current);
  }

  GeneratorSet gens;
  bool have_generators = false;
  std::size_t generators_line = 1;
  std::map<std::string, NCPoly> equations;

  for (const auto& [line_no, raw] : lines) {
    const std::vector<Token> tokens = tokenize(raw, line_no);
    if (tokens.front().kind == Token::Kind::End) continue;  // blank / comment

    if (!have_generators) {
      const Token& head = tokens.front();
      if (head.kind != Token::Kind::Name || head.text != "generators") {
        throw ParseError("expected a 'generators' line", head.line,
                         head.column);
      }
      for (std::size_t k = 1; k + 1 < tokens.size(); ++k) {
        const Token& t = tokens[k];
        if (t.kind != Token::Kind::Name) {
          throw ParseError("expected a generator name", t.line, t.column);
        }
        for (const std::string& existing : gens.names) {
          if (existing == t.text) {
            throw ParseError("duplicate generator '" + t.text + "'", t.line,
                             t.column);
          }
        }
        gens.names.push_back(t.text);
      }
      if (gens.names.empty()) {
        throw ParseError("expected at least one generator name", head.line,
                         head.column);
      }
      have_generators = true;
      generators_line = line_no;
      continue;
    }

    // Equation line: d<name>/dt = expr
    const Token& head = tokens.front();
    if (head.kind != Token::Kind::Name || head.text.size() < 2 ||
        head.text[0] != 'd') {
      throw ParseError("expected an equation 'd<generator>/dt = ...'",
                       head.line, head.column);
    }
    const std::string name = head.text.substr(1);
    bool declared = false;
    for (const std::string& existing : gens.names) {
      if (existing == name) declared = true;
    }
    if (!declared) {
      throw ParseError("equation for undeclared generator '" + name + "'",
                       head.line, head.column + 1);
    }
    if (tokens.size() < 4 || tokens[1].kind != Token::Kind::Punct ||
        tokens[1].text != "/" || tokens[2].kind != Token::Kind::Name ||
        tokens[2].text != "dt") {
      throw ParseError("expected '/dt' after 'd" + name + "'", tokens[1].line,
                       tokens[1].column);
    }
    if (tokens[3].kind != Token::Kind::Punct || tokens[3].text != "=") {
      throw ParseError("expected '=' in equation", tokens[3].line,
                       tokens[3].column);
    }
    if (equations.count(name) != 0) {
      throw ParseError("duplicate equation for '" + name + "'", head.line,
                       head.column);
    }
    const std::vector<Token> rhs(tokens.begin() + 4, tokens.end());
    ExprParser parser(rhs, gens);
    equations.emplace(name, parser.parse_all());
  }

  if (!have_generators) {
    throw ParseError("expected a 'generators' line", 1, 1);
  }
  std::vector<NCPoly> rhs;
  for (const std::string& name : gens.names) {
    const auto it = equations.find(name);
    if (it == equations.end()) {
      throw ParseError("missing equation for generator '" + name + "'",
                       generators_line, 1);
    }
    rhs.push_back(it->second);
  }
  return make_dynamics(gens, std::move(rhs));
}

NCPoly parse_expression(const std::string& text, const GeneratorSet& gens) {
  const std::vector<Token> tokens = tokenize(text, 1);
  ExprParser parser(tokens, gens);
  return parser.parse_all();
}

std::pair<std::pair<std::size_t, std::size_t>, NCPoly> parse_relation(
    const std::string& text, const GeneratorSet& gens) {
  const std::vector<Token> tokens = tokenize(text, 1);
  std::size_t pos = 0;
  const auto expect = [&](const std::string& what, Token::Kind kind,
                          const std::string& punct = "") -> const Token& {
    const Token& t = tokens[pos];
    if (t.kind != kind || (kind == Token::Kind::Punct && t.text != punct)) {
      throw ParseError("expected " + what, t.line, t.column);
    }
    ++pos;
    return t;
  };
  expect("'['", Token::Kind::Punct, "[");
  const Token& a = expect("a generator", Token::Kind::Name);
  expect("','", Token::Kind::Punct, ",");
  const Token& b = expect("a generator", Token::Kind::Name);
  expect("']'", Token::Kind::Punct, "]");
  expect("'='", Token::Kind::Punct, "=");

  std::size_t i, j;
  try {
    i = gens.index_of(a.text);
  } catch (const std::invalid_argument&) {
    throw ParseError("unknown generator '" + a.text + "'", a.line, a.column);
  }
  try {
    j = gens.index_of(b.text);
  } catch (const std::invalid_argument&) {
    throw ParseError("unknown generator '" + b.text + "'", b.line, b.column);
  }
  if (i == j) {
    throw ParseError("bracket of a generator with itself", a.line, a.column);
  }

  const std::vector<Token> rhs(tokens.begin() + pos, tokens.end());
  ExprParser parser(rhs, gens);
  NCPoly f = parser.parse_all();
  if (i < j) return {{i, j}, f};
  return {{j, i}, -f};
}

std::string pretty_print(const Dynamics& dyn) {
  std::string out = "generators";
  for (const std::string& name : dyn.gens.names) out += " " + name;
  out += "\n";
  for (std::size_t i = 0; i < dyn.gens.size(); ++i) {
    out += "d" + dyn.gens.names[i] + "/dt = " + dyn.rhs[i].str() + "\n";
  }
  return out;
}

}  // namespace liberator

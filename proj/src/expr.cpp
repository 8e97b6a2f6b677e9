#include "charslope/expr.hpp"

#include <array>
#include <charconv>
#include <optional>

namespace charslope {

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) out += (i + 1 == expected.size()) ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       std::string found)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": expected " +
                         join_expected(expected) + ", found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok { End, Ident, Number, Punct, Bad };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.line = line_;
    t.column = col_;
    if (pos_ >= src_.size()) return t;
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
      t.kind = Tok::Ident;
    } else if (is_digit(c) || (c == '-' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      advance();
      while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
      if (pos_ + 1 < src_.size() && src_[pos_] == '.' && is_digit(src_[pos_ + 1])) {
        advance();
        while (pos_ < src_.size() && is_digit(src_[pos_])) advance();
      }
      t.kind = Tok::Number;
    } else if (std::string_view("(),;{}=[]").find(c) != std::string_view::npos) {
      advance();
      t.kind = Tok::Punct;
    } else {
      advance();
      t.kind = Tok::Bad;
    }
    t.text = src_.substr(start, pos_ - start);
    return t;
  }

 private:
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c) || c == '-'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Bad: {
      const auto byte = static_cast<unsigned char>(t.text.front());
      if (byte >= 0x20 && byte < 0x7f) return "'" + std::string(t.text) + "'";
      static constexpr char kHex[] = "0123456789abcdef";
      return std::string("byte 0x") + kHex[byte >> 4] + kHex[byte & 0xf];
    }
    default:
      return "'" + std::string(t.text) + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  SatelliteTree parse() {
    SatelliteTree t = knot();
    if (cur_.kind != Tok::End) fail({"end of input"});
    return t;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(cur_.line, cur_.column, std::move(expected), describe(cur_));
  }

  void bump() { cur_ = lex_.next(); }

  bool at_punct(char c) const {
    return cur_.kind == Tok::Punct && cur_.text.size() == 1 && cur_.text[0] == c;
  }

  void expect(char c) {
    if (!at_punct(c)) fail({std::string("'") + c + "'"});
    bump();
  }

  void expect_word(std::string_view word) {
    if (cur_.kind != Tok::Ident || cur_.text != word) fail({"'" + std::string(word) + "'"});
    bump();
  }

  std::int64_t integer() {
    if (cur_.kind != Tok::Number || cur_.text.find('.') != std::string_view::npos) fail({"integer"});
    std::int64_t v = 0;
    const auto* first = cur_.text.data();
    const auto* last = first + cur_.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) fail({"integer in 64-bit range"});
    bump();
    return v;
  }

  double decimal() {
    if (cur_.kind != Tok::Number || cur_.text.front() == '-') fail({"decimal"});
    double v = 0.0;
    const auto* first = cur_.text.data();
    const auto* last = first + cur_.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::fixed);
    if (ec != std::errc{} || ptr != last) fail({"decimal in double range"});
    bump();
    return v;
  }

  SatelliteTree knot() {
    if (++depth_ > kMaxExpressionDepth) fail({"shallower nesting (limit 256)"});
    SatelliteTree out = knot_body();
    --depth_;
    return out;
  }

  SatelliteTree knot_body() {
    static const std::vector<std::string> kKnotStart = {"'unknot'", "'torus'", "'cable'", "'sum'",
                                                        "'hyp'"};
    if (cur_.kind != Tok::Ident) fail(kKnotStart);
    const std::string_view word = cur_.text;
    if (word == "unknot") {
      bump();
      return unknot();
    }
    if (word == "torus") {
      bump();
      expect('(');
      const auto a = integer();
      expect(',');
      const auto b = integer();
      expect(')');
      return torus(a, b);
    }
    if (word == "cable") {
      bump();
      expect('(');
      const auto r = integer();
      expect(',');
      const auto s = integer();
      expect(';');
      SatelliteTree companion = knot();
      expect(')');
      return cable(r, s, std::move(companion));
    }
    if (word == "sum") {
      bump();
      expect('(');
      std::vector<SatelliteTree> parts;
      parts.push_back(knot());
      // Arity is a validation concern.
      while (at_punct(',')) {
        bump();
        parts.push_back(knot());
      }
      if (!at_punct(')')) fail({"','", "')'"});
      bump();
      return sum(std::move(parts));
    }
    if (word == "hyp") {
      bump();
      expect('(');
      GeometryRef geom = geometry();
      std::vector<SatelliteTree> children;
      if (at_punct(';')) {
        bump();
        children.push_back(knot());
        while (at_punct(',')) {
          bump();
          children.push_back(knot());
        }
      }
      if (!at_punct(')')) fail(children.empty() ? std::vector<std::string>{"';'", "')'"}
                                                 : std::vector<std::string>{"','", "')'"});
      bump();
      return hyp(std::move(geom), std::move(children));
    }
    fail(kKnotStart);
  }

  GeometryRef geometry() {
    if (cur_.kind == Tok::Ident) {
      std::string name(cur_.text);
      bump();
      return name;
    }
    if (!at_punct('{')) fail({"identifier", "'{'"});
    bump();
    expect_word("sys");
    expect('=');
    const double sys = decimal();
    std::vector<double> mu;
    std::optional<std::vector<std::int64_t>> lk;
    bool seen_mu = false;
    while (at_punct(',')) {
      bump();
      if (!seen_mu && !lk && cur_.kind == Tok::Ident && cur_.text == "mu") {
        bump();
        expect('=');
        expect('[');
        mu.push_back(decimal());
        while (at_punct(',')) {
          bump();
          mu.push_back(decimal());
        }
        expect(']');
        seen_mu = true;
      } else if (!lk && cur_.kind == Tok::Ident && cur_.text == "lk") {
        bump();
        expect('=');
        expect('[');
        lk.emplace();
        lk->push_back(integer());
        while (at_punct(',')) {
          bump();
          lk->push_back(integer());
        }
        expect(']');
      } else {
        if (!seen_mu && !lk) fail({"'mu'", "'lk'"});
        fail({"'lk'"});
      }
    }
    if (!at_punct('}')) fail(lk ? std::vector<std::string>{"'}'"}
                                : std::vector<std::string>{"','", "'}'"});
    bump();
    return inline_geometry(sys, std::move(mu), std::move(lk));
  }

  Lexer lex_;
  Token cur_;
  std::size_t depth_ = 0;
};

void render_into(const SatelliteTree& t, std::string& out);

void render_children(const std::vector<SatelliteTree>& children, std::string& out) {
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += ',';
    render_into(children[i], out);
  }
}

void render_geometry(const GeometryRef& ref, std::string& out) {
  if (const auto* key = std::get_if<std::string>(&ref)) {
    out += *key;
    return;
  }
  const auto& g = std::get<HyperbolicGeometry>(ref);
  if (g.name) {
    out += *g.name;
    return;
  }
  out += "{sys=" + format_decimal(g.systole);
  if (!g.meridian_lengths.empty()) {
    out += ",mu=[";
    for (std::size_t i = 0; i < g.meridian_lengths.size(); ++i) {
      if (i) out += ',';
      out += format_decimal(g.meridian_lengths[i]);
    }
    out += ']';
  }
  if (g.linking_numbers && !g.linking_numbers->empty()) {
    out += ",lk=[";
    for (std::size_t i = 0; i < g.linking_numbers->size(); ++i) {
      if (i) out += ',';
      out += std::to_string((*g.linking_numbers)[i]);
    }
    out += ']';
  }
  out += '}';
}

void render_into(const SatelliteTree& t, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, UnknotLeaf>) {
          out += "unknot";
        } else if constexpr (std::is_same_v<T, TorusLeaf>) {
          out += "torus(" + std::to_string(n.a) + "," + std::to_string(n.b) + ")";
        } else if constexpr (std::is_same_v<T, CableNode>) {
          out += "cable(" + std::to_string(n.r) + "," + std::to_string(n.s) + ";";
          render_into(n.companion(), out);
          out += ')';
        } else if constexpr (std::is_same_v<T, ComposingNode>) {
          out += "sum(";
          render_children(n.children, out);
          out += ')';
        } else {
          out += "hyp(";
          render_geometry(n.geometry, out);
          if (!n.children.empty()) {
            out += ';';
            render_children(n.children, out);
          }
          out += ')';
        }
      },
      t.node());
}

}  // namespace

SatelliteTree parse_knot(std::string_view text) { return Parser(text).parse(); }

std::string render(const SatelliteTree& tree) {
  std::string out;
  render_into(tree, out);
  return out;
}

std::string format_decimal(double v) {
  std::array<char, 512> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  if (ec != std::errc{}) throw std::invalid_argument("cannot format decimal");
  return std::string(buf.data(), ptr);
}

}  // namespace charslope

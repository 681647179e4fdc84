#pragma once

// Session files.
//
//   field GF(101)                       # or: field QQ
//   ring x, y, z weights 1, 1, 1        # weights optional, also [weights ..]
//   ci x^3, y^3, z^3
//   module coker [[x^3, y^3, z^3, x*z, y*z^2]] rowdegrees 0
//   module koszul                       # K^A with its canonical dg structure
//   complex d1 [[..]] d2 [[..]] action e1 [[..]] [[..]] action e2 ..
//   options n 20 seed 0 output "report.json"
//
// Line breaks are insignificant apart from ending `#` comments. Chain files
// for `realize` hold `nu k` (optional) and one `locus g1, .., gm` per member,
// where `locus 0` is Spec S and `locus 1` is the empty set.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jumploci/homotopy.hpp"
#include "jumploci/ideal.hpp"
#include "jumploci/resolution.hpp"
#include "jumploci/text.hpp"

namespace jumploci {

struct SessionOptions {
  std::optional<int> n;
  std::optional<uint64_t> seed;
  std::optional<std::string> output;
  friend bool operator==(const SessionOptions&, const SessionOptions&) = default;
};

template <class Field>
struct Session {
  RingData<Field> ring;
  ModuleInput<Field> module;
  SessionOptions options;
};

using AnySession = std::variant<Session<PrimeField>, Session<RationalField>>;

template <class Field>
struct ChainSpec {
  int nu = 0;
  std::vector<Ideal<Field>> chain;
};

namespace detail {

struct Token {
  enum Kind { Ident, Number, String, Punct, End } kind = End;
  std::string text;
  int line = 1;
  int column = 1;
  size_t offset = 0;
  size_t length = 0;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1;
  size_t lineStart = 0;
  size_t i = 0;
  auto col = [&](size_t at) { return int(at - lineStart) + 1; };
  while (i < s.size()) {
    char ch = s[i];
    if (ch == '\n') {
      ++line;
      lineStart = ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (ch == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.column = col(i);
    t.offset = i;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Token::Ident;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Token::Number;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else if (ch == '"') {
      size_t j = i + 1;
      while (j < s.size() && s[j] != '"' && s[j] != '\n') ++j;
      if (j >= s.size() || s[j] != '"') throw ParseError("unterminated string", line, col(i));
      t.kind = Token::String;
      t.text = std::string(s.substr(i + 1, j - i - 1));
      i = j + 1;
    } else if (std::string_view(",[]()+-*/^").find(ch) != std::string_view::npos) {
      t.kind = Token::Punct;
      t.text = std::string(1, ch);
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + ch + "'", line, col(i));
    }
    t.length = i - t.offset;
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col(i);
  end.offset = s.size();
  out.push_back(end);
  return out;
}

class TokenStream {
 public:
  TokenStream(std::string_view src, std::vector<Token> toks) : src_(src), toks_(std::move(toks)) {}

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Token::End) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::End; }
  bool is(std::string_view text, size_t k = 0) const {
    const Token& t = peek(k);
    return (t.kind == Token::Ident || t.kind == Token::Punct) && t.text == text;
  }
  bool accept(std::string_view text) {
    if (!is(text)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw ParseError(msg, at.line, at.column); }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }
  const Token& expect(std::string_view text) {
    if (!is(text)) fail("expected '" + std::string(text) + "'" + found());
    return next();
  }
  const Token& expect_ident() {
    if (peek().kind != Token::Ident) fail("expected a name" + found());
    return next();
  }
  long long expect_int() {
    bool neg = accept("-");
    if (peek().kind != Token::Number) fail("expected an integer" + found());
    const Token& t = next();
    if (t.text.size() > 12) fail("integer too large", t);
    long long v = std::stoll(t.text);
    return neg ? -v : v;
  }
  std::string found() const {
    const Token& t = peek();
    if (t.kind == Token::End) return ", found end of input";
    return ", found '" + t.text + "'";
  }

  /// Token span of a polynomial expression: operands joined by + - * / ^,
  /// with parentheses. Stops before the first token that cannot continue it.
  std::pair<const Token*, std::string_view> poly_span() {
    const Token* first = &peek();
    size_t start = peek().offset;
    size_t end = start;
    bool expectOperand = true;
    int depth = 0;
    while (true) {
      const Token& t = peek();
      if (expectOperand) {
        if (t.kind == Token::Ident || t.kind == Token::Number) expectOperand = false;
        else if (t.kind == Token::Punct && t.text == "(") ++depth;
        else if (t.kind == Token::Punct && (t.text == "-" || t.text == "+")) {
        } else fail("expected a polynomial" + found());
      } else {
        if (t.kind == Token::Punct && std::string_view("+-*/^").find(t.text[0]) != std::string_view::npos)
          expectOperand = true;
        else if (t.kind == Token::Punct && t.text == ")" && depth > 0) --depth;
        else break;
      }
      end = t.offset + t.length;
      next();
    }
    if (depth != 0) fail("unbalanced parentheses", *first);
    return {first, src_.substr(start, end - start)};
  }

 private:
  std::string_view src_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

template <class Field>
class SessionParser {
 public:
  using P = Poly<Field>;

  SessionParser(TokenStream& ts, Field field) : ts_(ts), field_(std::move(field)) {}

  Session<Field> parse() {
    Session<Field> s;
    ts_.expect("ring");
    parse_ring();
    const Token ciTok = ts_.peek();
    ts_.expect("ci");
    std::vector<P> f;
    do f.push_back(poly()); while (ts_.accept(","));
    try {
      s.ring = make_ring_data(A_, f);
    } catch (const std::invalid_argument& e) {
      ts_.fail(e.what(), ciTok);
    }
    bool haveModule = false;
    while (!ts_.at_end()) {
      const Token& t = ts_.peek();
      if (ts_.is("module") || ts_.is("complex")) {
        if (haveModule) ts_.fail("a session holds exactly one module", t);
        haveModule = true;
        bool isModule = ts_.is("module");
        ts_.next();
        if (isModule) parse_module(s);
        else parse_complex(s);
      } else if (ts_.accept("options")) {
        parse_options(s.options);
      } else {
        ts_.fail("expected 'module', 'complex' or 'options'" + ts_.found());
      }
    }
    if (!haveModule) ts_.fail("missing 'module' or 'complex' statement");
    return s;
  }

  /// Chain file body, with polynomials in the ring S of `R`.
  ChainSpec<Field> parse_chain(const RingData<Field>& R) {
    ChainSpec<Field> out;
    out.nu = int(R.nu());
    A_ = R.S;
    while (!ts_.at_end()) {
      if (ts_.accept("nu")) {
        long long v = ts_.expect_int();
        if (v < 0) ts_.fail("nu must be nonnegative");
        out.nu = int(v);
      } else if (ts_.accept("locus")) {
        std::vector<P> gens;
        do {
          auto [tok, text] = ts_.poly_span();
          P g = parse_poly(*R.S, text, tok->line, tok->column);
          if (!g.is_homogeneous(R.S->weights())) ts_.fail("inhomogeneous generator '" + std::string(text) + "'", *tok);
          if (!g.is_zero()) gens.push_back(std::move(g));
        } while (ts_.accept(","));
        out.chain.emplace_back(R.S, std::move(gens));
      } else {
        ts_.fail("expected 'nu' or 'locus'" + ts_.found());
      }
    }
    return out;
  }

 private:
  void parse_ring() {
    std::vector<std::string> names;
    std::vector<Token> nameToks;
    do {
      const Token& t = ts_.expect_ident();
      for (const auto& n : names)
        if (n == t.text) ts_.fail("variable '" + t.text + "' declared twice", t);
      names.push_back(t.text);
      nameToks.push_back(t);
    } while (ts_.accept(","));
    std::vector<int> weights(names.size(), 1);
    bool bracket = ts_.is("[") && ts_.is("weights", 1);
    if (bracket) ts_.next();
    if (ts_.accept("weights")) {
      const Token at = ts_.peek();
      weights.clear();
      do {
        long long w = ts_.expect_int();
        if (w <= 0) ts_.fail("variable weights must be positive", at);
        weights.push_back(int(w));
      } while (ts_.accept(","));
      if (weights.size() != names.size()) ts_.fail("one weight per variable required", at);
    }
    if (bracket) ts_.expect("]");
    A_ = make_ring(field_, RingKind::A, names, weights);
  }

  P poly() {
    auto [tok, text] = ts_.poly_span();
    P p = parse_poly(*A_, text, tok->line, tok->column);
    if (!p.is_homogeneous(A_->weights())) ts_.fail("inhomogeneous entry '" + std::string(text) + "'", *tok);
    return p;
  }

  /// [[a, b], [c, d]]; column degrees are inferred later from row degrees.
  PolyMatrix<Field> matrix() {
    const Token start = ts_.peek();
    ts_.expect("[");
    std::vector<std::vector<P>> rows;
    do {
      ts_.expect("[");
      std::vector<P> row;
      do row.push_back(poly()); while (ts_.accept(","));
      ts_.expect("]");
      if (!rows.empty() && row.size() != rows.front().size()) ts_.fail("rows of different lengths", start);
      rows.push_back(std::move(row));
    } while (ts_.accept(","));
    ts_.expect("]");
    PolyMatrix<Field> M(A_->tag(), rows.size(), rows.front().size());
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < rows[i].size(); ++j) M(i, j) = std::move(rows[i][j]);
    return M;
  }

  std::vector<int> int_list() {
    std::vector<int> out;
    do out.push_back(int(ts_.expect_int())); while (ts_.accept(","));
    return out;
  }

  void check_columns(const PolyMatrix<Field>& M, const std::vector<int>& rowDeg, const Token& at) {
    for (size_t j = 0; j < M.cols(); ++j) {
      std::optional<int> deg;
      for (size_t i = 0; i < M.rows(); ++i) {
        if (M(i, j).is_zero()) continue;
        int d = M(i, j).degree_in(A_->weights()) + rowDeg[i];
        if (deg && *deg != d) ts_.fail("column " + std::to_string(j + 1) + " is not homogeneous", at);
        deg = d;
      }
    }
  }

  void parse_module(Session<Field>& s) {
    if (ts_.accept("koszul")) {
      s.module = koszul_input(s.ring);
      return;
    }
    ts_.expect("coker");
    const Token at = ts_.peek();
    auto M = matrix();
    std::vector<int> rowDeg(M.rows(), 0);
    if (ts_.accept("rowdegrees")) {
      const Token rt = ts_.peek();
      rowDeg = int_list();
      if (rowDeg.size() != M.rows()) ts_.fail("one row degree per row required", rt);
    }
    check_columns(M, rowDeg, at);
    M.setRowDegrees(bidegrees(0, rowDeg));
    s.module.presentation = std::move(M);
  }

  void parse_complex(Session<Field>& s) {
    auto& in = s.module;
    while (ts_.peek().kind == Token::Ident && ts_.peek().text == "d" + std::to_string(in.differentials.size() + 1)) {
      ts_.next();
      in.differentials.push_back(matrix());
    }
    if (in.differentials.empty()) ts_.fail("expected 'd1'" + ts_.found());
    size_t L = in.differentials.size();
    while (ts_.accept("action")) {
      std::string want = "e" + std::to_string(in.actions.size() + 1);
      const Token& t = ts_.expect_ident();
      if (t.text != want) ts_.fail("expected '" + want + "'", t);
      std::vector<PolyMatrix<Field>> maps;
      for (size_t k = 0; k < L; ++k) maps.push_back(matrix());
      in.actions.push_back(std::move(maps));
    }
    if (!in.actions.empty() && in.actions.size() != s.ring.c())
      ts_.fail("expected one action per element of the sequence (" + std::to_string(s.ring.c()) + ")");
    in.baseDegrees.assign(in.differentials.front().rows(), 0);
    if (ts_.accept("rowdegrees")) {
      const Token rt = ts_.peek();
      in.baseDegrees = int_list();
      if (in.baseDegrees.size() != in.differentials.front().rows()) ts_.fail("one row degree per row of d1 required", rt);
    }
    for (size_t t = 1; t < L; ++t)
      if (in.differentials[t].rows() != in.differentials[t - 1].cols())
        ts_.fail("d" + std::to_string(t + 1) + " does not compose with d" + std::to_string(t));
  }

  void parse_options(SessionOptions& o) {
    bool any = false;
    while (true) {
      if (ts_.accept("n")) {
        long long v = ts_.expect_int();
        if (v < 1) ts_.fail("n must be positive");
        o.n = int(v);
      } else if (ts_.accept("seed")) {
        long long v = ts_.expect_int();
        if (v < 0) ts_.fail("seed must be nonnegative");
        o.seed = uint64_t(v);
      } else if (ts_.accept("output")) {
        if (ts_.peek().kind != Token::String) ts_.fail("expected a quoted path" + ts_.found());
        o.output = ts_.next().text;
      } else {
        break;
      }
      any = true;
    }
    if (!any) ts_.fail("expected 'n', 'seed' or 'output'" + ts_.found());
  }

  TokenStream& ts_;
  Field field_;
  RingPtr<Field> A_;
};

/// Reads `field ...` and leaves the stream after it.
inline std::variant<PrimeField, RationalField> parse_field(TokenStream& ts) {
  ts.expect("field");
  const Token& t = ts.expect_ident();
  if (t.text == "QQ") return RationalField{};
  if (t.text != "GF") ts.fail("unknown field '" + t.text + "'; expected GF(p) or QQ", t);
  ts.expect("(");
  const Token& p = ts.peek();
  long long v = ts.expect_int();
  ts.expect(")");
  if (v < 2 || v >= (1LL << 31)) ts.fail(std::to_string(v) + " is not a prime below 2^31", p);
  if (!is_prime(uint64_t(v))) ts.fail("GF(" + std::to_string(v) + "): " + std::to_string(v) + " is not prime", p);
  return PrimeField(uint32_t(v));
}

}  // namespace detail

inline AnySession parse_session(std::string_view text) {
  detail::TokenStream ts(text, detail::tokenize(text));
  auto field = detail::parse_field(ts);
  return std::visit(
      [&](auto& k) -> AnySession {
        using Field = std::decay_t<decltype(k)>;
        return detail::SessionParser<Field>(ts, k).parse();
      },
      field);
}

template <class Field>
ChainSpec<Field> parse_chain(std::string_view text, const RingData<Field>& R) {
  detail::TokenStream ts(text, detail::tokenize(text));
  return detail::SessionParser<Field>(ts, R.field()).parse_chain(R);
}

// ---------------------------------------------------------------------------
// Canonical printing.

namespace detail {

template <class Field>
std::string matrix_text(const PolyMatrix<Field>& M, const PolyRing<Field>& A) {
  std::string out = "[";
  for (size_t i = 0; i < M.rows(); ++i) {
    out += i ? ", [" : "[";
    for (size_t j = 0; j < M.cols(); ++j) out += (j ? ", " : "") + to_string(M(i, j), A);
    out += "]";
  }
  return out + "]";
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out;
}

}  // namespace detail

template <class Field>
std::string print_session(const Session<Field>& s) {
  const auto& A = *s.ring.A;
  std::string out = "field " + A.field().name() + "\n";
  out += "ring ";
  for (size_t i = 0; i < A.nvars(); ++i) out += (i ? ", " : "") + A.names()[i];
  if (std::any_of(A.weights().begin(), A.weights().end(), [](int w) { return w != 1; }))
    out += " weights " + detail::join_ints(A.weights());
  out += "\nci ";
  for (size_t i = 0; i < s.ring.c(); ++i) out += (i ? ", " : "") + to_string(s.ring.f[i], A);
  out += "\n";
  const auto& in = s.module;
  if (in.koszul) {
    out += "module koszul\n";
  } else if (in.presentation) {
    out += "module coker " + detail::matrix_text(*in.presentation, A);
    auto rd = internal_degrees(in.presentation->rowDegrees());
    if (std::any_of(rd.begin(), rd.end(), [](int d) { return d != 0; })) out += " rowdegrees " + detail::join_ints(rd);
    out += "\n";
  } else {
    out += "complex\n";
    for (size_t t = 0; t < in.differentials.size(); ++t)
      out += "  d" + std::to_string(t + 1) + " " + detail::matrix_text(in.differentials[t], A) + "\n";
    for (size_t i = 0; i < in.actions.size(); ++i) {
      out += "  action e" + std::to_string(i + 1);
      for (const auto& m : in.actions[i]) out += " " + detail::matrix_text(m, A);
      out += "\n";
    }
    if (std::any_of(in.baseDegrees.begin(), in.baseDegrees.end(), [](int d) { return d != 0; }))
      out += "  rowdegrees " + detail::join_ints(in.baseDegrees) + "\n";
  }
  const auto& o = s.options;
  if (o.n || o.seed || o.output) {
    out += "options";
    if (o.n) out += " n " + std::to_string(*o.n);
    if (o.seed) out += " seed " + std::to_string(*o.seed);
    if (o.output) out += " output \"" + *o.output + "\"";
    out += "\n";
  }
  return out;
}

inline std::string print_session(const AnySession& s) {
  return std::visit([](const auto& x) { return print_session(x); }, s);
}

/// Structural equality: ring, sequence, module data and options.
template <class Field>
bool same_session(const Session<Field>& a, const Session<Field>& b) {
  if (!(*a.ring.A == *b.ring.A) || a.ring.f != b.ring.f || !(a.options == b.options)) return false;
  const auto& x = a.module;
  const auto& y = b.module;
  if (x.koszul != y.koszul || x.presentation.has_value() != y.presentation.has_value()) return false;
  if (x.presentation && (!(*x.presentation == *y.presentation) ||
                         x.presentation->rowDegrees() != y.presentation->rowDegrees()))
    return false;
  return x.differentials == y.differentials && x.actions == y.actions && x.baseDegrees == y.baseDegrees;
}

}  // namespace jumploci

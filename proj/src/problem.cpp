#include <cctype>
#include <set>

#include "logstrat/cli.hpp"
#include "logstrat/errors.hpp"

namespace logstrat::cli {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Cursor over the comment-stripped input with 1-based line/column tracking.
class Reader {
 public:
  explicit Reader(std::string text) : text_(std::move(text)) {
    // Blank out comments in place so offsets keep their positions.
    bool comment = false;
    for (char& c : text_) {
      if (c == '\n') comment = false;
      else if (c == '#') comment = true;
      if (comment) c = ' ';
    }
  }

  bool done() {
    skip_space(true);
    return pos_ >= text_.size();
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

  // Skips blanks; newlines only when `lines` is set.
  void skip_space(bool lines) {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) && (lines || text_[pos_] != '\n'))
      bump();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string word() {
    skip_space(false);
    if (!ident_start(peek())) fail(peek() ? std::string("expected a name, found '") + peek() + "'" : "expected a name");
    std::string w;
    while (ident_char(peek())) {
      w += peek();
      bump();
    }
    return w;
  }

  // Rest of the current line, trimmed, holding its start position.
  struct Span {
    std::string text;
    std::size_t line, column;
  };

  Span rest_of_line() {
    skip_space(false);
    Span s{"", line_, col_};
    while (pos_ < text_.size() && text_[pos_] != '\n') {
      s.text += text_[pos_];
      bump();
    }
    while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.back()))) s.text.pop_back();
    return s;
  }

  void expect(char c) {
    skip_space(false);
    if (peek() != c) fail(std::string("expected '") + c + "'");
    bump();
  }

  void end_of_line() {
    skip_space(false);
    if (pos_ < text_.size() && text_[pos_] != '\n') fail(std::string("unexpected '") + peek() + "' after directive");
  }

  // Items of a { ... } block split at top-level separators; may span lines.
  std::vector<Span> block(const std::string& separators) {
    skip_space(false);
    if (peek() != '{') fail("expected '{'");
    const std::size_t open_line = line_, open_col = col_;
    bump();
    std::vector<Span> items;
    Span cur{"", line_, col_};
    int depth = 0;
    bool started = false;
    auto flush = [&] {
      while (!cur.text.empty() && std::isspace(static_cast<unsigned char>(cur.text.back()))) cur.text.pop_back();
      items.push_back(cur);
    };
    for (;;) {
      if (pos_ >= text_.size()) throw ParseError("unterminated '{'", open_line, open_col);
      const char c = text_[pos_];
      if (depth == 0 && c == '}') {
        bump();
        break;
      }
      if (depth == 0 && separators.find(c) != std::string::npos) {
        if (!started) fail("empty item in block");
        flush();
        bump();
        cur = Span{"", line_, col_};
        started = false;
        continue;
      }
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (!started && std::isspace(static_cast<unsigned char>(c))) {
        bump();
        cur = Span{"", line_, col_};
        continue;
      }
      started = true;
      cur.text += c;
      bump();
    }
    if (started) flush();
    else if (!items.empty()) fail("empty item in block");
    return items;
  }

 private:
  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

RingPtr parse_ring(Reader& in) {
  const std::size_t line = in.line(), col = in.column();
  const std::string field = in.word();
  if (field != "Q") throw ParseError("only the rationals Q are supported as coefficient field", line, col);
  in.expect('[');
  std::vector<std::string> vars;
  std::set<std::string> seen;
  for (;;) {
    const std::size_t vl = in.line(), vc = in.column();
    std::string v = in.word();
    if (!seen.insert(v).second) throw ParseError("duplicate variable '" + v + "'", vl, vc);
    vars.push_back(std::move(v));
    in.skip_space(false);
    if (in.peek() == ',') {
      in.expect(',');
      continue;
    }
    in.expect(']');
    break;
  }
  MonomialOrder order = MonomialOrder::DegRevLex;
  in.skip_space(false);
  if (ident_start(in.peek())) {
    const std::size_t kl = in.line(), kc = in.column();
    if (in.word() != "order") throw ParseError("expected 'order'", kl, kc);
    const std::size_t ol = in.line(), oc = in.column();
    const std::string name = in.word();
    const auto o = parse_order(name);
    if (!o) throw ParseError("unknown monomial order '" + name + "'", ol, oc);
    order = *o;
  }
  in.end_of_line();
  try {
    return Ring::make(std::move(vars), order);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), line, col);
  }
}

// Tuple form "(a, b, c)": the item opens with '(' whose match ends the item
// and holds a top-level comma.
std::optional<std::vector<Reader::Span>> tuple_parts(const Reader::Span& item) {
  if (item.text.empty() || item.text.front() != '(' || item.text.back() != ')') return std::nullopt;
  int depth = 0;
  std::vector<Reader::Span> parts;
  std::size_t line = item.line, col = item.column + 1;
  Reader::Span cur{"", line, col};
  for (std::size_t k = 1; k + 1 < item.text.size(); ++k) {
    const char c = item.text[k];
    if (c == '(') ++depth;
    if (c == ')' && --depth < 0) return std::nullopt;
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    if (depth == 0 && c == ',') {
      parts.push_back(cur);
      cur = Reader::Span{"", line, col};
      continue;
    }
    cur.text += c;
  }
  if (depth != 0 || parts.empty()) return std::nullopt;
  parts.push_back(cur);
  return parts;
}

Derivation parse_derivation(const Reader::Span& item, const RingPtr& ring) {
  const std::size_t n = ring->arity();
  if (auto parts = tuple_parts(item)) {
    if (parts->size() != n)
      throw PreconditionError(std::to_string(item.line) + ":" + std::to_string(item.column) + ": derivation has " +
                              std::to_string(parts->size()) + " coefficients but the ring has " + std::to_string(n) +
                              " variables");
    std::vector<Polynomial> coeffs;
    for (const auto& p : *parts) coeffs.push_back(parse_polynomial_at(p.text, ring, p.line, p.column));
    return Derivation(ring, std::move(coeffs));
  }

  // Basis-symbol form: parse over Q[x..., dx...] and read off the linear part.
  std::set<std::string> names(ring->variables().begin(), ring->variables().end());
  std::vector<std::string> ext = ring->variables();
  for (const auto& v : ring->variables()) {
    if (names.count("d" + v)) throw ParseError("variable d" + v + " clashes with the basis symbol for " + v, item.line, item.column);
    ext.push_back("d" + v);
  }
  // Basis symbols for variables the ring lacks are arity errors, not typos.
  for (std::size_t k = 0; k < item.text.size();) {
    if (!ident_start(item.text[k]) || (k > 0 && ident_char(item.text[k - 1]))) {
      ++k;
      continue;
    }
    std::size_t e = k;
    while (e < item.text.size() && ident_char(item.text[e])) ++e;
    const std::string w = item.text.substr(k, e - k);
    if (w.size() > 1 && w[0] == 'd' && !names.count(w) && !names.count(w.substr(1)))
      throw PreconditionError(std::to_string(item.line) + ":" + std::to_string(item.column + k) + ": basis symbol " + w +
                              " names no variable of a ring with " + std::to_string(n) + " variables");
    k = e;
  }
  if (ext.size() > kMaxVariables)
    throw PreconditionError("basis-symbol derivations support at most " + std::to_string(kMaxVariables / 2) +
                            " variables; use the tuple form");
  const RingPtr big = Ring::make(ext, ring->order());
  const Polynomial p = parse_polynomial_at(item.text, big, item.line, item.column);
  std::vector<std::vector<Term>> parts(n);
  for (const auto& t : p.terms()) {
    std::int64_t d = 0;
    std::size_t which = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (t.mono[n + j] > 0) {
        d += t.mono[n + j];
        which = j;
      }
    if (d != 1)
      throw ParseError(d == 0 ? "derivation term without a basis symbol such as d" + ring->name(0)
                              : "derivation term is not linear in the basis symbols",
                       item.line, item.column);
    Monomial m = t.mono;
    m[n + which] = 0;
    parts[which].push_back({m, t.coeff});
  }
  std::vector<Polynomial> coeffs;
  for (auto& terms : parts) coeffs.push_back(Polynomial::from_terms(ring, std::move(terms)));
  return Derivation(ring, std::move(coeffs));
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  Reader in(text);
  ProblemSpec spec;
  bool have_ideal = false, have_derivations = false;
  std::vector<Reader::Span> derivation_items;
  while (!in.done()) {
    const std::size_t line = in.line(), col = in.column();
    const std::string directive = in.word();
    if (directive == "ring") {
      if (spec.ring) throw ParseError("duplicate ring directive", line, col);
      spec.ring = parse_ring(in);
    } else if (directive == "ideal") {
      if (!spec.ring) throw ParseError("ideal given before the ring", line, col);
      if (have_ideal) throw ParseError("duplicate ideal directive", line, col);
      have_ideal = true;
      for (const auto& item : in.block(",;")) {
        Polynomial g = parse_polynomial_at(item.text, spec.ring, item.line, item.column);
        if (!g.is_zero()) spec.ideal.push_back(std::move(g));
      }
      in.end_of_line();
    } else if (directive == "derivations") {
      if (!spec.ring) throw ParseError("derivations given before the ring", line, col);
      if (have_derivations) throw ParseError("duplicate derivations directive", line, col);
      have_derivations = true;
      in.skip_space(false);
      if (in.peek() == '{') {
        spec.source = DerivationSource::Explicit;
        for (const auto& item : in.block(";")) spec.derivations.push_back(parse_derivation(item, spec.ring));
      } else {
        const std::size_t wl = in.line(), wc = in.column();
        const std::string w = in.word();
        if (w != "tangent") throw ParseError("expected 'tangent' or '{'", wl, wc);
        spec.source = DerivationSource::Tangent;
      }
      in.end_of_line();
    } else if (directive == "option") {
      const std::size_t nl = in.line(), nc = in.column();
      std::string name = in.word();
      while (in.peek() == '-') {
        in.expect('-');
        name += "-" + in.word();
      }
      const Reader::Span value = in.rest_of_line();
      auto number = [&]() -> std::uint64_t {
        if (value.text.empty() || value.text.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("option " + name + " needs a non-negative integer", value.line, value.column);
        try {
          return std::stoull(value.text);
        } catch (const std::out_of_range&) {
          throw ParseError("option " + name + " is out of range", value.line, value.column);
        }
      };
      if (name == "first-integral-degree") {
        const std::uint64_t v = number();
        if (v > 64) throw ParseError("first-integral-degree is limited to 64", value.line, value.column);
        spec.options.first_integral_degree = static_cast<unsigned>(v);
      } else if (name == "step-budget") {
        spec.options.step_budget = number();
      } else if (name == "output") {
        if (value.text != "json" && value.text != "text")
          throw ParseError("output must be json or text", value.line, value.column);
        spec.options.output = value.text;
      } else if (name == "strict-bracket") {
        if (value.text != "true" && value.text != "false")
          throw ParseError("strict-bracket must be true or false", value.line, value.column);
        spec.options.strict_bracket = value.text == "true";
      } else {
        throw ParseError("unknown option '" + name + "'", nl, nc);
      }
    } else {
      throw ParseError("unknown directive '" + directive + "'", line, col);
    }
  }
  if (!spec.ring) throw ParseError("missing ring directive", 0, 0);
  if (!have_ideal) throw ParseError("missing ideal directive", 0, 0);
  return spec;
}

std::string print_problem(const ProblemSpec& spec) {
  std::string out = "ring Q[";
  for (std::size_t k = 0; k < spec.ring->arity(); ++k) out += (k ? "," : "") + spec.ring->name(k);
  out += "] order " + std::string(to_string(spec.ring->order())) + "\n";
  out += "ideal {";
  for (std::size_t k = 0; k < spec.ideal.size(); ++k) out += (k ? ", " : " ") + spec.ideal[k].to_string();
  out += spec.ideal.empty() ? "}\n" : " }\n";
  if (spec.source == DerivationSource::Tangent) {
    out += "derivations tangent\n";
  } else {
    out += "derivations {";
    for (std::size_t k = 0; k < spec.derivations.size(); ++k) {
      // Tuple form round-trips for any arity, including zero fields.
      out += k ? " ; (" : " (";
      const auto& c = spec.derivations[k].coefficients();
      for (std::size_t j = 0; j < c.size(); ++j) out += (j ? ", " : "") + c[j].to_string();
      out += ")";
    }
    out += spec.derivations.empty() ? "}\n" : " }\n";
  }
  const auto& o = spec.options;
  if (o.first_integral_degree) out += "option first-integral-degree " + std::to_string(*o.first_integral_degree) + "\n";
  if (o.step_budget) out += "option step-budget " + std::to_string(*o.step_budget) + "\n";
  if (o.output) out += "option output " + *o.output + "\n";
  if (o.strict_bracket) out += std::string("option strict-bracket ") + (*o.strict_bracket ? "true" : "false") + "\n";
  return out;
}

bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
  if (!a.ring || !b.ring || !a.ring->same_as(*b.ring)) return false;
  auto texts = [](const auto& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(x.to_string());
    return out;
  };
  return texts(a.ideal) == texts(b.ideal) && a.source == b.source && texts(a.derivations) == texts(b.derivations) &&
         a.options.first_integral_degree == b.options.first_integral_degree &&
         a.options.step_budget == b.options.step_budget && a.options.output == b.options.output &&
         a.options.strict_bracket == b.options.strict_bracket;
}

}  // namespace logstrat::cli

#include "nonholonomy/cli/document.hpp"

#include <cctype>
#include <charconv>

namespace nonholonomy::cli {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

std::optional<std::string> TaskSpec::arg(std::string_view key) const {
  for (const auto& [k, v] : args) {
    if (k == key) return v;
  }
  return std::nullopt;
}

namespace {

enum class Tok { Ident, Number, Field, Punct, Raw, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is(char c) const { return kind == Tok::Punct && text.size() == 1 && text[0] == c; }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= src_.size()) return t;
    const char c = src_[pos_];
    if (ident_start(c)) {
      t.kind = Tok::Ident;
      while (pos_ < src_.size() && ident_char(src_[pos_])) t.text += take();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Number;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += take();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        t.text += take();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += take();
      }
    } else if (c == '@') {
      take();
      t.kind = Tok::Field;
      if (pos_ >= src_.size() || !ident_start(src_[pos_])) throw ParseError("expected a coordinate name after '@'", t.line, t.column);
      while (pos_ < src_.size() && ident_char(src_[pos_])) t.text += take();
    } else if (std::string_view("+-*^(),;=").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, take());
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
    }
    return t;
  }

  // Run of characters up to whitespace or ';', used for task names and values.
  Token raw() {
    skip_blank();
    Token t;
    t.kind = Tok::Raw;
    t.line = line_;
    t.column = column_;
    while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) && src_[pos_] != ';' &&
           src_[pos_] != '#') {
      t.text += take();
    }
    if (t.text.empty()) throw ParseError("expected a value", t.line, t.column);
    return t;
  }

 private:
  char take() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        take();
      } else if (src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool is_builtin(std::string_view name) {
  return name == "d" || name == "pow2" || name == "bracket" || name == "iota";
}

bool is_keyword(std::string_view name) {
  for (std::string_view k : {"coords", "form", "field", "frame", "coframe", "omegas", "task"}) {
    if (name == k) return true;
  }
  return false;
}

std::string describe(const Value& v) {
  if (const auto* f = std::get_if<DiffForm>(&v)) {
    return f->degree() == 0 ? "function" : std::to_string(f->degree()) + "-form";
  }
  return "vector field";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  Document parse() {
    while (tok_.kind != Tok::End) statement();
    return std::move(doc_);
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw ParseError(message, at.line, at.column);
  }

  void advance() { tok_ = lex_.next(); }

  Token expect(char c) {
    if (!tok_.is(c)) fail(std::string("expected '") + c + "'" + found(), tok_);
    Token t = tok_;
    advance();
    return t;
  }

  Token expect_ident(const char* what) {
    if (tok_.kind != Tok::Ident) fail(std::string("expected ") + what + found(), tok_);
    Token t = tok_;
    advance();
    return t;
  }

  std::string found() const {
    if (tok_.kind == Tok::End) return ", found end of input";
    return ", found '" + tok_.text + "'";
  }

  const Chart& chart(const Token& at) const {
    if (!doc_.chart) fail("coords must be declared before use", at);
    return *doc_.chart;
  }

  void statement() {
    const Token kw = expect_ident("a statement keyword");
    if (kw.text == "coords") {
      coords(kw);
    } else if (kw.text == "form" || kw.text == "field") {
      binding(kw);
    } else if (kw.text == "frame") {
      name_list(kw, doc_.frame);
    } else if (kw.text == "coframe") {
      name_list(kw, doc_.coframe);
    } else if (kw.text == "omegas") {
      name_list(kw, doc_.omegas);
    } else if (kw.text == "task") {
      task();
    } else {
      fail("unknown statement '" + kw.text + "'", kw);
    }
  }

  void coords(const Token& kw) {
    if (doc_.chart) fail("coords declared twice", kw);
    if (!doc_.bindings.empty()) fail("coords must come before any binding", kw);
    std::vector<std::string> names;
    while (tok_.kind == Tok::Ident) {
      if (is_builtin(tok_.text) || is_keyword(tok_.text)) fail("'" + tok_.text + "' is reserved", tok_);
      for (const auto& n : names) {
        if (n == tok_.text) fail("duplicate coordinate '" + tok_.text + "'", tok_);
      }
      names.push_back(tok_.text);
      advance();
    }
    if (names.empty()) fail("expected at least one coordinate name" + found(), tok_);
    if (names.size() > MultiIndex::kMaxDim) fail("at most 64 coordinates are supported", kw);
    expect(';');
    doc_.chart = Chart(std::move(names));
  }

  void binding(const Token& kw) {
    const Chart& c = chart(kw);
    const Token name = expect_ident("a binding name");
    if (is_builtin(name.text) || is_keyword(name.text)) fail("'" + name.text + "' is reserved", name);
    if (c.index_of(name.text)) fail("'" + name.text + "' is a coordinate", name);
    if (doc_.find(name.text)) fail("'" + name.text + "' is already defined", name);
    expect('=');
    const Token start = tok_;
    Value v = expression();
    expect(';');
    const bool want_form = kw.text == "form";
    if (want_form != std::holds_alternative<DiffForm>(v)) {
      fail(std::string(want_form ? "form" : "field") + " binding '" + name.text + "' has a " + describe(v) + " value",
           start);
    }
    doc_.bindings.push_back({name.text, std::move(v)});
  }

  void name_list(const Token& kw, std::vector<std::string>& out) {
    if (!out.empty()) fail(kw.text + " declared twice", kw);
    do {
      const Token name = expect_ident("a binding name");
      const Binding* b = doc_.find(name.text);
      if (!b) fail("unknown identifier '" + name.text + "'", name);
      const auto* f = std::get_if<DiffForm>(&b->value);
      if (kw.text == "frame" && f) fail("frame entry '" + name.text + "' is not a vector field", name);
      if (kw.text == "coframe" && (!f || f->degree() != 1)) fail("coframe entry '" + name.text + "' is not a 1-form", name);
      if (kw.text == "omegas" && (!f || f->degree() != 2)) fail("omegas entry '" + name.text + "' is not a 2-form", name);
      out.push_back(name.text);
    } while (tok_.is(',') && (advance(), true));
    expect(';');
  }

  void task() {
    TaskSpec spec;
    if (tok_.kind != Tok::Ident) fail("expected a task name" + found(), tok_);
    // Task names may contain '-', so re-scan the remainder as raw text.
    spec.name = tok_.text;
    spec.name += continue_raw();
    while (!tok_.is(';')) {
      const Token key = expect_ident("a task argument or ';'");
      if (!tok_.is('=')) fail("expected '='" + found(), tok_);
      const Token value = lex_.raw();
      spec.args.emplace_back(key.text, value.text);
      advance();
    }
    advance();
    doc_.tasks.push_back(std::move(spec));
  }

  // Glues '-'-joined identifier pieces onto the current token, e.g. check-dlo.
  std::string continue_raw() {
    std::string tail;
    advance();
    while (tok_.is('-')) {
      advance();
      if (tok_.kind != Tok::Ident && tok_.kind != Tok::Number) fail("malformed task name", tok_);
      tail += "-" + tok_.text;
      advance();
    }
    return tail;
  }

  // expr := term (('+' | '-') term)*
  Value expression() {
    Value lhs = term();
    while (tok_.is('+') || tok_.is('-')) {
      const Token op = tok_;
      advance();
      Value rhs = term();
      lhs = add(std::move(lhs), std::move(rhs), op);
    }
    return lhs;
  }

  // term := unary (('*' | '^') unary)*
  Value term() {
    Value lhs = unary();
    while (tok_.is('*') || tok_.is('^')) {
      const Token op = tok_;
      advance();
      Value rhs = unary();
      lhs = op.text == "*" ? multiply(std::move(lhs), std::move(rhs), op) : wedge_op(std::move(lhs), std::move(rhs), op);
    }
    return lhs;
  }

  Value unary() {
    if (tok_.is('-')) {
      advance();
      Value v = unary();
      return std::visit([](auto& x) -> Value { return -x; }, v);
    }
    return primary();
  }

  Value primary() {
    const Token t = tok_;
    const Chart& c = chart(t);
    switch (t.kind) {
      case Tok::Number: {
        advance();
        try {
          return DiffForm::scalar(Polynomial(c, parse_scalar(t.text)));
        } catch (const InputError& e) {
          fail(e.what(), t);
        }
      }
      case Tok::Field: {
        advance();
        const auto i = c.index_of(t.text);
        if (!i) fail("unknown coordinate '" + t.text + "'", t);
        return VectorField::coordinate(c, *i);
      }
      case Tok::Ident:
        advance();
        if (is_builtin(t.text)) return builtin(t);
        if (const auto i = c.index_of(t.text)) return DiffForm::scalar(Polynomial::variable(c, *i));
        if (const Binding* b = doc_.find(t.text)) return b->value;
        fail("unknown identifier '" + t.text + "'", t);
      case Tok::Punct:
        if (t.is('(')) {
          advance();
          Value v = expression();
          expect(')');
          return v;
        }
        break;
      default:
        break;
    }
    fail("expected an expression" + found(), t);
  }

  Value builtin(const Token& name) {
    expect('(');
    const Token a0 = tok_;
    Value first = expression();
    if (name.text == "d") {
      expect(')');
      const DiffForm& f = as_form(first, a0);
      if (f.degree() + 1 > f.chart().dim()) fail("d of a top-degree form", name);
      return exterior_derivative(f);
    }
    expect(',');
    if (name.text == "pow2") {
      const Token kt = tok_;
      if (kt.kind != Tok::Number || kt.text.find('/') != std::string::npos) fail("pow2 needs an integer exponent", kt);
      advance();
      expect(')');
      const DiffForm& w = as_form(first, a0);
      if (w.degree() != 2) fail("pow2 needs a 2-form, got a " + describe(first), a0);
      std::size_t k = 0;
      std::from_chars(kt.text.data(), kt.text.data() + kt.text.size(), k);
      if (k == 0) fail("pow2 exponent must be positive", kt);
      if (2 * k > w.chart().dim()) fail("pow2 degree exceeds the dimension", kt);
      return wedge_power(w, k);
    }
    const Token a1 = tok_;
    Value second = expression();
    expect(')');
    if (name.text == "bracket") return lie_bracket(as_field(first, a0), as_field(second, a1));
    const DiffForm& f = as_form(second, a1);
    if (f.degree() == 0) fail("iota needs a form of positive degree", a1);
    return interior_product(as_field(first, a0), f);
  }

  const DiffForm& as_form(const Value& v, const Token& at) const {
    if (const auto* f = std::get_if<DiffForm>(&v)) return *f;
    fail("expected a form, got a vector field", at);
  }

  const VectorField& as_field(const Value& v, const Token& at) const {
    if (const auto* x = std::get_if<VectorField>(&v)) return *x;
    fail("expected a vector field, got a " + describe(v), at);
  }

  Value add(Value a, Value b, const Token& op) const {
    auto* fa = std::get_if<DiffForm>(&a);
    auto* fb = std::get_if<DiffForm>(&b);
    if (fa && fb) {
      if (fa->degree() != fb->degree()) {
        fail("degree mismatch: " + describe(a) + " " + op.text + " " + describe(b), op);
      }
      return op.text == "+" ? *fa + *fb : *fa - *fb;
    }
    if (!fa && !fb) {
      const auto& xa = std::get<VectorField>(a);
      const auto& xb = std::get<VectorField>(b);
      return op.text == "+" ? xa + xb : xa - xb;
    }
    fail("cannot combine a " + describe(a) + " and a " + describe(b) + " with '" + op.text + "'", op);
  }

  Value multiply(Value a, Value b, const Token& op) const {
    auto* fa = std::get_if<DiffForm>(&a);
    auto* fb = std::get_if<DiffForm>(&b);
    if (fa && fb) {
      if (fa->degree() != 0 && fb->degree() != 0) fail("'*' needs a function on one side; use '^' for the wedge", op);
      return wedge(*fa, *fb);
    }
    if (fa && fa->degree() == 0 && !fb) return fa->coefficient(MultiIndex{}) * std::get<VectorField>(b);
    if (fb && fb->degree() == 0 && !fa) return fb->coefficient(MultiIndex{}) * std::get<VectorField>(a);
    fail("cannot multiply a " + describe(a) + " by a " + describe(b), op);
  }

  Value wedge_op(Value a, Value b, const Token& op) const {
    auto* fa = std::get_if<DiffForm>(&a);
    auto* fb = std::get_if<DiffForm>(&b);
    if (!fa || !fb) fail("'^' needs forms on both sides", op);
    if (fa->degree() + fb->degree() > fa->chart().dim()) {
      fail("degree mismatch: wedge of degree " + std::to_string(fa->degree() + fb->degree()) + " exceeds dimension " +
               std::to_string(fa->chart().dim()),
           op);
    }
    return wedge(*fa, *fb);
  }

  Lexer lex_;
  Token tok_;
  Document doc_;
};

void join(std::string& out, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : "") + names[i];
}

}  // namespace

const Binding* Document::find(std::string_view name) const {
  for (const auto& b : bindings) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

const DiffForm& Document::form(std::string_view name) const {
  const Binding* b = find(name);
  if (!b) throw InputError("unknown form '" + std::string(name) + "'");
  if (const auto* f = std::get_if<DiffForm>(&b->value)) return *f;
  throw InputError("'" + std::string(name) + "' is not a form");
}

const VectorField& Document::field(std::string_view name) const {
  const Binding* b = find(name);
  if (!b) throw InputError("unknown field '" + std::string(name) + "'");
  if (const auto* x = std::get_if<VectorField>(&b->value)) return *x;
  throw InputError("'" + std::string(name) + "' is not a vector field");
}

std::vector<DiffForm> Document::coframe_forms() const {
  std::vector<DiffForm> out;
  for (const auto& n : coframe) out.push_back(form(n));
  return out;
}

std::vector<DiffForm> Document::omega_forms() const {
  std::vector<DiffForm> out;
  for (const auto& n : omegas) out.push_back(form(n));
  return out;
}

Distribution Document::distribution() const {
  if (!chart) throw InputError("document declares no coordinates");
  std::vector<VectorField> fields;
  for (const auto& n : frame) fields.push_back(field(n));
  if (!frame.empty() && !coframe.empty()) return Distribution::from_both(*chart, std::move(fields), coframe_forms());
  if (!frame.empty()) return Distribution::from_frame(*chart, std::move(fields));
  if (!coframe.empty()) return Distribution::from_coframe(*chart, coframe_forms());
  throw InputError("document has neither a frame nor a coframe statement");
}

std::string Document::to_string() const {
  std::string out;
  if (chart) {
    out += "coords";
    for (const auto& n : chart->names()) out += " " + n;
    out += ";\n";
  }
  for (const auto& b : bindings) {
    if (const auto* f = std::get_if<DiffForm>(&b.value)) {
      out += "form " + b.name + " = " + f->to_string() + ";\n";
    } else {
      out += "field " + b.name + " = " + std::get<VectorField>(b.value).to_string() + ";\n";
    }
  }
  const std::pair<const char*, const std::vector<std::string>*> lists[] = {
      {"frame", &frame}, {"coframe", &coframe}, {"omegas", &omegas}};
  for (const auto& [kw, names] : lists) {
    if (names->empty()) continue;
    out += std::string(kw) + " ";
    join(out, *names);
    out += ";\n";
  }
  for (const auto& t : tasks) {
    out += "task " + t.name;
    for (const auto& [k, v] : t.args) out += " " + k + "=" + v;
    out += ";\n";
  }
  return out;
}

Document parse_document(std::string_view text) { return Parser(text).parse(); }

}  // namespace nonholonomy::cli

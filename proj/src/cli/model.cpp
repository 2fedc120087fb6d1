#include "npc/cli/model.hpp"

#include "npc/exterior/calculus.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace npc {

ParseError::ParseError(int line, int column, std::string token, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                         (token.empty() ? std::string(" (at end of line)") : " (at '" + token + "')")),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

std::string kind_keyword(BindingKind kind) {
  switch (kind) {
    case BindingKind::scalar:
      return "scalar";
    case BindingKind::form:
      return "form";
    case BindingKind::mv:
      return "mv";
    case BindingKind::lambda:
      return "lambda";
    case BindingKind::volume:
      return "volume";
  }
  return "?";
}

std::string Value::type_name() const {
  if (scalar) return "scalar";
  if (tensor) {
    return std::to_string(tensor->degree()) + (tensor->is_form() ? "-form" : "-multivector");
  }
  if (volume) return volume->has_std ? "volume" : "volume factor";
  return "nothing";
}

const Binding* ModelFile::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &bindings_[it->second];
}

const Binding& ModelFile::get(const std::string& name) const {
  const Binding* b = find(name);
  if (!b) throw std::invalid_argument("unknown name '" + name + "'");
  return *b;
}

void ModelFile::add(Binding b) {
  if (index_.count(b.name)) throw std::invalid_argument("duplicate name '" + b.name + "'");
  index_.emplace(b.name, bindings_.size());
  bindings_.push_back(std::move(b));
}

const NambuStructure& ModelFile::structure(const std::string& name) const {
  const Binding& b = get(name);
  if (!b.structure) throw std::invalid_argument("'" + name + "' is not a lambda binding");
  return *b.structure;
}

const VolumeSpec& ModelFile::volume(const std::string& name) const {
  const Binding& b = get(name);
  if (!b.volume) throw std::invalid_argument("'" + name + "' is not a volume binding");
  return *b.volume;
}

bool operator==(const ModelFile& a, const ModelFile& b) {
  if (!a.chart_ || !b.chart_) return a.chart_ == b.chart_;
  if (!(*a.chart_ == *b.chart_) || a.bindings_.size() != b.bindings_.size()) return false;
  for (std::size_t i = 0; i < a.bindings_.size(); ++i) {
    const Binding& x = a.bindings_[i];
    const Binding& y = b.bindings_[i];
    if (x.kind != y.kind || x.name != y.name) return false;
    if (x.scalar.has_value() != y.scalar.has_value() || (x.scalar && !(*x.scalar == *y.scalar))) return false;
    if (x.tensor.has_value() != y.tensor.has_value() || (x.tensor && !(*x.tensor == *y.tensor))) return false;
    if (x.volume.has_value() != y.volume.has_value()) return false;
    if (x.volume && (!(x.volume->u == y.volume->u) || !(x.volume->w == y.volume->w))) return false;
    if (x.structure.has_value() != y.structure.has_value()) return false;
    if (x.structure && x.structure->order() != y.structure->order()) return false;
  }
  return true;
}

namespace {

enum class TokenKind { ident, number, symbol, end };

struct Token {
  TokenKind kind;
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      out.push_back({TokenKind::ident, line.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      if (j < line.size() && line[j] == '.') {
        ++j;
        if (j >= line.size() || !std::isdigit(static_cast<unsigned char>(line[j]))) {
          throw ParseError(line_no, col, line.substr(i, j - i), "malformed number");
        }
        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      }
      out.push_back({TokenKind::number, line.substr(i, j - i), col});
      i = j;
    } else if (c == '*' && i + 1 < line.size() && line[i + 1] == '*') {
      out.push_back({TokenKind::symbol, "**", col});
      i += 2;
    } else if (std::string("+-*/^()=@,").find(c) != std::string::npos) {
      out.push_back({TokenKind::symbol, std::string(1, c), col});
      ++i;
    } else {
      throw ParseError(line_no, col, std::string(1, c), "unexpected character");
    }
  }
  out.push_back({TokenKind::end, "", static_cast<int>(line.size()) + 1});
  return out;
}

Rational parse_number(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(mpz_class(text));
  const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  mpz_class den = 1;
  for (std::size_t k = dot + 1; k < text.size(); ++k) den *= 10;
  Rational q(mpz_class(digits), den);
  q.canonicalize();
  return q;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"space", "coords", "scalar", "form", "mv", "lambda",
                                       "volume", "order", "std", "exp", "d"};
  return k;
}

class Parser {
 public:
  Parser(const ModelFile& model, std::vector<Token> tokens, int line)
      : model_(model), chart_(model.chart()), tokens_(std::move(tokens)), line_(line) {}

  Value expression() { return sum(); }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool at_end() const { return peek().kind == TokenKind::end; }
  bool accept(const std::string& symbol) {
    if (peek().kind == TokenKind::symbol && peek().text == symbol) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const Token& t, const std::string& message) const {
    throw ParseError(line_, t.column, t.text, message);
  }
  void expect(const std::string& symbol) {
    if (!accept(symbol)) fail(peek(), "expected '" + symbol + "'");
  }

 private:
  std::size_t dim() const { return chart_->dim(); }

  static Value scalar_value(RationalFunction f) {
    Value v;
    v.scalar = std::move(f);
    return v;
  }

  Value tensor_value(GradedTensor t) const {
    Value v;
    if (t.degree() == 0) v.scalar = t.scalar_value();
    else v.tensor = std::move(t);
    return v;
  }

  Polynomial polynomial_of(const Value& v, const Token& at) const {
    if (!v.scalar) fail(at, "expected a polynomial, got " + v.type_name());
    auto p = v.scalar->as_polynomial();
    if (!p) fail(at, "expected a polynomial, got a rational function");
    return *p;
  }

  Value sum() {
    Value acc = product();
    while (true) {
      const Token& op = peek();
      if (accept("+")) acc = add(acc, product(), op, false);
      else if (accept("-")) acc = add(acc, product(), op, true);
      else return acc;
    }
  }

  Value add(const Value& a, const Value& b, const Token& op, bool subtract) {
    if (a.scalar && b.scalar) return scalar_value(subtract ? *a.scalar - *b.scalar : *a.scalar + *b.scalar);
    if (a.tensor && b.tensor) {
      if (a.tensor->variance() != b.tensor->variance() || a.tensor->degree() != b.tensor->degree()) {
        fail(op, "type mismatch: cannot combine " + a.type_name() + " with " + b.type_name());
      }
      return tensor_value(subtract ? *a.tensor - *b.tensor : *a.tensor + *b.tensor);
    }
    fail(op, "type mismatch: cannot add " + a.type_name() + " and " + b.type_name());
  }

  Value product() {
    Value acc = unary();
    while (true) {
      const Token& op = peek();
      if (accept("*")) acc = multiply(acc, unary(), op);
      else if (accept("/")) acc = divide(acc, unary(), op);
      else return acc;
    }
  }

  Value multiply(const Value& a, const Value& b, const Token& op) {
    if (a.scalar && b.scalar) return scalar_value(*a.scalar * *b.scalar);
    if (a.scalar && b.tensor) return tensor_value(*b.tensor * *a.scalar);
    if (a.tensor && b.scalar) return tensor_value(*a.tensor * *b.scalar);
    if (a.volume || b.volume) {
      VolumeFactor out{Polynomial::constant(dim(), 1), Polynomial(dim()), false};
      for (const Value* v : {&a, &b}) {
        if (v->volume) {
          if (out.has_std && v->volume->has_std) fail(op, "std appears twice in a volume");
          out.u *= v->volume->u;
          out.w += v->volume->w;
          out.has_std = out.has_std || v->volume->has_std;
        } else if (v->scalar) {
          out.u *= polynomial_of(*v, op);
        } else {
          fail(op, "type mismatch: cannot multiply a volume by " + v->type_name());
        }
      }
      Value r;
      r.volume = std::move(out);
      return r;
    }
    fail(op, "type mismatch: use '^' for the exterior product of " + a.type_name() + " and " + b.type_name());
  }

  Value divide(const Value& a, const Value& b, const Token& op) {
    if (!b.scalar) fail(op, "division by " + b.type_name());
    if (b.scalar->is_zero()) fail(op, "division by zero");
    const RationalFunction inv = RationalFunction::constant(dim(), 1) / *b.scalar;
    if (a.scalar) return scalar_value(*a.scalar * inv);
    if (a.tensor) return tensor_value(*a.tensor * inv);
    fail(op, "type mismatch: cannot divide " + a.type_name());
  }

  Value unary() {
    const Token& op = peek();
    if (accept("-")) {
      Value v = unary();
      if (v.scalar) return scalar_value(-*v.scalar);
      if (v.tensor) return tensor_value(-*v.tensor);
      fail(op, "cannot negate " + v.type_name());
    }
    return power();
  }

  Value power() {
    Value acc = atom();
    while (true) {
      const Token& op = peek();
      if (accept("**")) {
        acc = raise(acc, op);
      } else if (accept("^")) {
        if (acc.scalar && peek().kind == TokenKind::number && peek().text.find('.') == std::string::npos) {
          acc = raise(acc, op);
        } else {
          acc = wedge_values(acc, atom(), op);
        }
      } else {
        return acc;
      }
    }
  }

  Value raise(const Value& base, const Token& op) {
    const Token& exp = next();
    if (exp.kind != TokenKind::number || exp.text.find('.') != std::string::npos) {
      fail(exp, "exponent must be a non-negative integer");
    }
    if (!base.scalar) fail(op, "power of " + base.type_name());
    const unsigned long e = std::stoul(exp.text);
    if (e > 64) fail(exp, "exponent too large");
    RationalFunction r = RationalFunction::constant(dim(), 1);
    for (unsigned long k = 0; k < e; ++k) r *= *base.scalar;
    return scalar_value(r);
  }

  Value wedge_values(const Value& a, const Value& b, const Token& op) {
    if (a.scalar || b.scalar) {
      if (a.volume || b.volume) fail(op, "wedge with a volume");
      return multiply(a, b, op);
    }
    if (!a.tensor || !b.tensor) fail(op, "type mismatch: cannot wedge " + a.type_name() + " and " + b.type_name());
    if (a.tensor->variance() != b.tensor->variance()) fail(op, "type mismatch: wedge of a form with a multivector");
    if (static_cast<std::size_t>(a.tensor->degree() + b.tensor->degree()) > dim()) {
      fail(op, "degree exceeds chart dimension");
    }
    return tensor_value(wedge(*a.tensor, *b.tensor));
  }

  Value differential_of(const Value& v, const Token& at) const {
    if (v.scalar) return tensor_value(differential(chart_, *v.scalar));
    if (v.tensor && v.tensor->is_form()) {
      if (static_cast<std::size_t>(v.tensor->degree()) >= dim()) fail(at, "d of a top-degree form");
      return tensor_value(ext_d(*v.tensor));
    }
    fail(at, "d applies to scalars and forms, not " + v.type_name());
  }

  std::optional<Value> lookup(const std::string& name) const {
    if (const Binding* b = model_.find(name)) {
      Value v;
      if (b->scalar) v.scalar = *b->scalar;
      else if (b->tensor) v = tensor_value(*b->tensor);
      else if (b->volume) v.volume = VolumeFactor{b->volume->u, b->volume->w, true};
      return v;
    }
    const int idx = chart_->index_of(name);
    if (idx >= 0) return scalar_value(coordinate_function(chart_, static_cast<std::size_t>(idx)));
    return std::nullopt;
  }

  Value atom() {
    const Token& t = next();
    if (t.kind == TokenKind::number) return scalar_value(RationalFunction::constant(dim(), parse_number(t.text)));
    if (t.kind == TokenKind::symbol && t.text == "(") {
      Value v = expression();
      expect(")");
      return v;
    }
    if (t.kind == TokenKind::symbol && t.text == "@") {
      const Token& n = next();
      if (n.kind != TokenKind::number || n.text.find('.') != std::string::npos) fail(n, "expected a coordinate number after '@'");
      const unsigned long i = std::stoul(n.text);
      if (i < 1 || i > dim()) fail(n, "basis index outside 1.." + std::to_string(dim()));
      return tensor_value(coordinate_vector(chart_, i - 1));
    }
    if (t.kind != TokenKind::ident) fail(t, at_end() && t.kind == TokenKind::end ? "unexpected end of expression" : "unexpected token");
    if (auto v = lookup(t.text)) return *v;
    if (t.text == "std") {
      Value v;
      v.volume = VolumeFactor{Polynomial::constant(dim(), 1), Polynomial(dim()), true};
      return v;
    }
    if (t.text == "exp") {
      expect("(");
      const Token& at = peek();
      Value arg = expression();
      expect(")");
      Value v;
      v.volume = VolumeFactor{Polynomial::constant(dim(), 1), -polynomial_of(arg, at), false};
      return v;
    }
    if (t.text == "d") {
      const Token& at = peek();
      return differential_of(atom(), at);
    }
    if (t.text.size() > 1 && t.text[0] == 'd') {
      if (auto v = lookup(t.text.substr(1))) return differential_of(*v, t);
    }
    fail(t, "unknown name");
  }

  const ModelFile& model_;
  ChartPtr chart_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

std::optional<BindingKind> binding_kind(const std::string& word) {
  if (word == "scalar") return BindingKind::scalar;
  if (word == "form") return BindingKind::form;
  if (word == "mv") return BindingKind::mv;
  if (word == "lambda") return BindingKind::lambda;
  if (word == "volume") return BindingKind::volume;
  return std::nullopt;
}

void check_name(const ModelFile& model, const Token& t, int line) {
  const std::string& n = t.text;
  if (keywords().count(n)) throw ParseError(line, t.column, n, "reserved word used as a name");
  if (model.chart()->index_of(n) >= 0) throw ParseError(line, t.column, n, "name shadows a coordinate");
  if (n.size() > 1 && n[0] == 'd' && model.chart()->index_of(n.substr(1)) >= 0) {
    throw ParseError(line, t.column, n, "name shadows a coordinate differential");
  }
  if (model.find(n)) throw ParseError(line, t.column, n, "duplicate name");
}

ChartPtr parse_space(const std::vector<Token>& toks, int line) {
  // space INT coords IDENT+
  if (toks.size() < 4 || toks[1].kind != TokenKind::number || toks[1].text.find('.') != std::string::npos) {
    const Token& t = toks.size() > 1 ? toks[1] : toks[0];
    throw ParseError(line, t.column, t.text, "expected dimension after 'space'");
  }
  if (toks[2].kind != TokenKind::ident || toks[2].text != "coords") {
    throw ParseError(line, toks[2].column, toks[2].text, "expected 'coords'");
  }
  const unsigned long m = std::stoul(toks[1].text);
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (std::size_t i = 3; i + 1 < toks.size(); ++i) {
    if (toks[i].kind != TokenKind::ident) throw ParseError(line, toks[i].column, toks[i].text, "expected a coordinate name");
    if (keywords().count(toks[i].text)) throw ParseError(line, toks[i].column, toks[i].text, "reserved word used as a coordinate");
    if (!seen.insert(toks[i].text).second) throw ParseError(line, toks[i].column, toks[i].text, "duplicate coordinate");
    names.push_back(toks[i].text);
  }
  if (m < 1 || names.size() != m) {
    throw ParseError(line, toks[1].column, toks[1].text,
                     "dimension " + toks[1].text + " does not match " + std::to_string(names.size()) + " coordinate names");
  }
  return make_chart(m, names);
}

GradedTensor as_tensor(const Value& v, const ChartPtr& chart, Variance variance) {
  if (v.scalar) return GradedTensor::scalar(chart, *v.scalar, variance);
  return *v.tensor;
}

}  // namespace

ModelFile parse_model(const std::string& text) {
  ModelFile model;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto toks = tokenize(raw, line);
    if (toks.front().kind == TokenKind::end) continue;
    const Token& head = toks.front();
    if (head.kind == TokenKind::ident && head.text == "space") {
      if (model.chart()) throw ParseError(line, head.column, head.text, "space declared twice");
      model = ModelFile(parse_space(toks, line));
      continue;
    }
    const auto kind = head.kind == TokenKind::ident ? binding_kind(head.text) : std::nullopt;
    if (!kind) throw ParseError(line, head.column, head.text, "expected 'space' or a binding keyword");
    if (!model.chart()) throw ParseError(line, head.column, head.text, "binding before the space declaration");
    if (toks[1].kind != TokenKind::ident) throw ParseError(line, toks[1].column, toks[1].text, "expected a name");
    check_name(model, toks[1], line);
    Parser p(model, toks, line);
    p.next();
    p.next();
    p.expect("=");
    const Token& expr_start = p.peek();
    Value v = p.expression();
    std::optional<int> order;
    std::optional<Token> order_tok;
    if (p.peek().kind == TokenKind::ident && p.peek().text == "order") {
      p.next();
      const Token& n = p.next();
      if (n.kind != TokenKind::number || n.text.find('.') != std::string::npos) p.fail(n, "expected an integer order");
      order = std::stoi(n.text);
      order_tok = n;
    }
    if (!p.at_end()) p.fail(p.peek(), "unexpected token after expression");
    if (order && *kind != BindingKind::lambda) p.fail(*order_tok, "'order' only applies to lambda bindings");

    Binding b{*kind, toks[1].text, std::nullopt, std::nullopt, std::nullopt, std::nullopt, line};
    const ChartPtr& chart = model.chart();
    switch (*kind) {
      case BindingKind::scalar:
        if (!v.scalar) p.fail(expr_start, "type mismatch: scalar binding got " + v.type_name());
        b.scalar = *v.scalar;
        break;
      case BindingKind::form:
        if (v.volume || (v.tensor && !v.tensor->is_form())) p.fail(expr_start, "type mismatch: form binding got " + v.type_name());
        b.tensor = as_tensor(v, chart, Variance::form);
        break;
      case BindingKind::mv:
        if (v.volume || (v.tensor && v.tensor->is_form())) p.fail(expr_start, "type mismatch: mv binding got " + v.type_name());
        b.tensor = as_tensor(v, chart, Variance::multivector);
        break;
      case BindingKind::lambda: {
        if (!v.tensor || v.tensor->is_form()) p.fail(expr_start, "type mismatch: lambda binding got " + v.type_name());
        const int n = order.value_or(v.tensor->degree());
        if (n != v.tensor->degree()) {
          p.fail(*order_tok, "degree/type mismatch: " + v.type_name() + " declared order " + std::to_string(n));
        }
        try {
          b.structure = NambuStructure(*v.tensor, n);
        } catch (const std::invalid_argument& e) {
          p.fail(order_tok ? *order_tok : expr_start, e.what());
        }
        b.tensor = *v.tensor;
        break;
      }
      case BindingKind::volume: {
        if (!v.volume || !v.volume->has_std) p.fail(expr_start, "type mismatch: volume binding needs a product with std");
        if (v.volume->u.is_zero()) p.fail(expr_start, "volume coefficient is zero");
        b.volume = VolumeSpec::make(chart, v.volume->u, v.volume->w);
        break;
      }
    }
    model.add(std::move(b));
  }
  if (!model.chart()) throw ParseError(line + 1, 1, "", "missing space declaration");
  return model;
}

std::string serialize(const ModelFile& model) {
  std::ostringstream os;
  const auto& chart = *model.chart();
  os << "space " << chart.dim() << " coords";
  for (const auto& n : chart.names()) os << ' ' << n;
  os << '\n';
  for (const auto& b : model.bindings()) {
    os << kind_keyword(b.kind) << ' ' << b.name << " = ";
    switch (b.kind) {
      case BindingKind::scalar:
        os << b.scalar->to_dsl(chart.names());
        break;
      case BindingKind::form:
      case BindingKind::mv:
        if (b.tensor->degree() == 0) os << b.tensor->scalar_value().to_dsl(chart.names());
        else os << b.tensor->to_dsl();
        break;
      case BindingKind::lambda:
        os << b.tensor->to_dsl() << " order " << b.structure->order();
        break;
      case BindingKind::volume:
        os << b.volume->to_dsl();
        break;
    }
    os << '\n';
  }
  return os.str();
}

Value evaluate_expression(const ModelFile& model, const std::string& text) {
  if (!model.chart()) throw std::invalid_argument("model has no space declaration");
  Parser p(model, tokenize(text, 1), 1);
  Value v = p.expression();
  if (!p.at_end()) p.fail(p.peek(), "unexpected token after expression");
  return v;
}

RationalFunction evaluate_scalar(const ModelFile& model, const std::string& text) {
  Value v = evaluate_expression(model, text);
  if (!v.scalar) throw std::invalid_argument("'" + text + "' is a " + v.type_name() + ", expected a scalar");
  return *v.scalar;
}

GradedTensor evaluate_tensor(const ModelFile& model, const std::string& text) {
  Value v = evaluate_expression(model, text);
  if (v.scalar) return GradedTensor::scalar(model.chart(), *v.scalar);
  if (!v.tensor) throw std::invalid_argument("'" + text + "' is a " + v.type_name() + ", expected a tensor");
  return *v.tensor;
}

}  // namespace npc

#include <cctype>
#include <sstream>

#include <json.hpp>

#include "padic/cli.hpp"

namespace padic {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

enum class Tok : std::uint8_t { Ident, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_' || line[i] == '\''))
        ++i;
      out.push_back({Tok::Ident, std::string(line.substr(start, i - start)), start + 1});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      if (i < line.size() && line[i] == '/') {
        ++i;
        if (i >= line.size() || !std::isdigit(static_cast<unsigned char>(line[i])))
          throw ParseError(line_no, i + 1, "expected a denominator after '/'");
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      }
      out.push_back({Tok::Number, std::string(line.substr(start, i - start)), start + 1});
    } else {
      static constexpr std::string_view two[] = {"<=", ">=", "==", "!="};
      std::string sym(1, c);
      for (auto t : two)
        if (line.substr(i, 2) == t) sym = std::string(t);
      if (sym.size() == 1 && std::string_view("+-=<>:()").find(c) == std::string_view::npos)
        throw ParseError(line_no, start + 1, std::string("unexpected character '") + c + "'");
      i += sym.size();
      out.push_back({Tok::Sym, sym, start + 1});
    }
  }
  out.push_back({Tok::End, "", line.size() + 1});
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, std::size_t line_no, Instance& inst)
      : toks_(std::move(toks)), line_(line_no), inst_(inst) {}

  void parse() {
    const Token& head = next();
    if (head.kind != Tok::Ident) fail(head, "expected a keyword (vars, eq, val, ord)");
    if (head.text == "vars") return parse_vars();
    if (head.text == "eq") return parse_eq();
    if (head.text == "val") return parse_val();
    if (head.text == "ord") return parse_ord();
    fail(head, "unknown keyword '" + head.text + "'");
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.column, msg); }
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool peek_sym(std::string_view s) const { return peek().kind == Tok::Sym && peek().text == s; }
  void expect_sym(std::string_view s) {
    const Token& t = next();
    if (t.kind != Tok::Sym || t.text != s) fail(t, "expected '" + std::string(s) + "'");
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' at end of line");
  }

  Rational number(const Token& t) {
    try {
      return parse_rational(t.text);
    } catch (const InputError& e) {
      fail(t, e.what());
    }
  }
  Rational signed_rational() {
    bool neg = false;
    if (peek_sym("-") || peek_sym("+")) neg = next().text == "-";
    const Token& t = next();
    if (t.kind != Tok::Number) fail(t, "expected a number");
    Rational q = number(t);
    return neg ? Rational(-q) : q;
  }
  BigInt signed_integer() {
    bool neg = false;
    if (peek_sym("-") || peek_sym("+")) neg = next().text == "-";
    const Token& t = next();
    if (t.kind != Tok::Number || t.text.find('/') != std::string::npos) fail(t, "expected an integer");
    BigInt v(t.text);
    return neg ? BigInt(-v) : v;
  }
  std::size_t variable() {
    const Token& t = next();
    if (t.kind != Tok::Ident) fail(t, "expected a variable name");
    auto idx = inst_.index_of(t.text);
    if (!idx) fail(t, "unknown variable '" + t.text + "'");
    return *idx;
  }

  // [±] [coeff] var ((+|-) [coeff] var)*
  QVector terms() {
    QVector row(inst_.size());
    bool first = true;
    for (;;) {
      bool neg = false;
      if (peek_sym("+") || peek_sym("-")) {
        neg = next().text == "-";
      } else if (!first) {
        break;
      }
      Rational c = 1;
      if (peek().kind == Tok::Number) c = number(next());
      const std::size_t j = variable();
      row[j] += neg ? Rational(-c) : c;
      first = false;
    }
    return row;
  }

  void parse_vars() {
    if (peek().kind == Tok::End) fail(peek(), "vars needs at least one name");
    while (peek().kind != Tok::End) {
      const Token& t = next();
      if (t.kind != Tok::Ident) fail(t, "expected a variable name");
      if (t.text == "v" || t.text == "vars" || t.text == "eq" || t.text == "val" || t.text == "ord")
        fail(t, "'" + t.text + "' is reserved");
      if (inst_.index_of(t.text)) fail(t, "variable '" + t.text + "' declared twice");
      inst_.variables.push_back(t.text);
      for (auto& e : inst_.equations) e.coeffs.emplace_back(0);
      for (auto& o : inst_.orders) o.coeffs.emplace_back(0);
    }
  }

  void parse_eq() {
    QVector row = terms();
    expect_sym("=");
    Rational rhs = signed_rational();
    expect_end();
    inst_.equations.push_back({std::move(row), rhs});
  }

  void parse_val() {
    const Token& pt = next();
    if (pt.kind != Tok::Number || pt.text.find('/') != std::string::npos) fail(pt, "expected a prime");
    const BigInt p(pt.text);
    if (!is_prime(p)) fail(pt, pt.text + " is not prime");
    expect_sym(":");
    const Token& v = next();
    if (v.kind != Tok::Ident || v.text != "v") fail(v, "expected 'v('");
    expect_sym("(");
    const std::size_t var = variable();
    expect_sym(")");
    const Token& op = next();
    static const std::pair<std::string_view, ValRel> ops[] = {{">=", ValRel::Ge}, {"<=", ValRel::Le},
                                                              {"==", ValRel::Eq}, {"!=", ValRel::Ne},
                                                              {"<", ValRel::Lt},  {">", ValRel::Gt}};
    std::optional<ValRel> rel;
    for (const auto& [s, r] : ops)
      if (op.kind == Tok::Sym && op.text == s) rel = r;
    if (!rel) fail(op, "expected one of >= <= == != < >");
    const BigInt bound = signed_integer();
    expect_end();
    inst_.valuations.push_back({Prime(p), var, *rel, bound});
  }

  void parse_ord() {
    QVector row = terms();
    const Token& op = next();
    if (op.kind != Tok::Sym || (op.text != "<" && op.text != "<=")) fail(op, "expected '<' or '<='");
    Rational rhs = signed_rational();
    expect_end();
    inst_.orders.push_back({std::move(row), op.text == "<" ? OrdRel::Lt : OrdRel::Le, rhs});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
  Instance& inst_;
};

std::string render_terms(const Instance& inst, const QVector& row) {
  std::string s;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == 0) continue;
    const bool neg = row[j] < 0;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    s += to_string(Rational(abs(row[j]))) + " " + inst.variables[j];
  }
  if (s.empty()) s = "0 " + inst.variables.front();
  return s;
}

const char* val_op(ValRel r) {
  switch (r) {
    case ValRel::Ge: return ">=";
    case ValRel::Le: return "<=";
    case ValRel::Eq: return "==";
    case ValRel::Ne: return "!=";
    case ValRel::Lt: return "<";
    case ValRel::Gt: return ">";
  }
  return "?";
}

nlohmann::json bigint_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto toks = lex(line, line_no);
    if (toks.front().kind == Tok::End) continue;
    LineParser(std::move(toks), line_no, inst).parse();
  }
  inst.validate();
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  if (!inst.variables.empty()) {
    out << "vars";
    for (const auto& v : inst.variables) out << ' ' << v;
    out << '\n';
  }
  for (const auto& e : inst.equations) out << "eq " << render_terms(inst, e.coeffs) << " = " << to_string(e.rhs) << '\n';
  for (const auto& c : inst.valuations)
    out << "val " << c.prime.to_string() << " : v(" << inst.variables[c.var] << ") " << val_op(c.rel) << ' '
        << c.bound.get_str() << '\n';
  for (const auto& o : inst.orders)
    out << "ord " << render_terms(inst, o.coeffs) << (o.rel == OrdRel::Lt ? " < " : " <= ") << to_string(o.rhs)
        << '\n';
  return out.str();
}

std::vector<std::pair<Prime, Fragment>> fragments_of(const Instance& inst) {
  std::vector<std::pair<Prime, Fragment>> out;
  for (const auto& p : inst.primes()) {
    KindSet kinds;
    for (const auto& c : inst.valuations) {
      if (c.prime != p) continue;
      kinds.ge |= c.rel == ValRel::Ge || c.rel == ValRel::Gt;
      kinds.le |= c.rel == ValRel::Le || c.rel == ValRel::Lt;
      kinds.eq |= c.rel == ValRel::Eq;
      kinds.ne |= c.rel == ValRel::Ne;
    }
    out.emplace_back(p, classify_kinds(p, kinds));
  }
  return out;
}

std::string render_witness(const Instance& inst, const Witness& w) {
  std::string s;
  for (std::size_t j = 0; j < w.size(); ++j) s += inst.variables[j] + " = " + to_string(w[j]) + "\n";
  return s;
}

std::string verdict_to_json(const Instance& inst, const Verdict& v, double time_ms) {
  nlohmann::json doc;
  doc["status"] = to_string(v.status);
  nlohmann::json frag = nlohmann::json::object();
  for (const auto& [p, f] : fragments_of(inst)) frag[p.to_string()] = to_string(f);
  doc["fragment"] = frag;
  if (!v.code.empty()) doc["code"] = v.code;
  if (!v.reason.empty()) doc["reason"] = v.reason;
  if (v.witness) {
    nlohmann::json w = nlohmann::json::object();
    for (std::size_t j = 0; j < v.witness->size(); ++j) {
      nlohmann::json entry;
      nlohmann::json terms = nlohmann::json::array();
      if (const auto* q = std::get_if<Rational>(&(*v.witness)[j])) {
        entry["p"] = nullptr;
        terms.push_back({to_string(*q), 0});
      } else {
        const auto& s = std::get<PowerSum>((*v.witness)[j]);
        entry["p"] = bigint_json(s.prime().value());
        for (const auto& t : s.terms()) terms.push_back({to_string(t.coeff), bigint_json(t.exponent)});
      }
      entry["terms"] = std::move(terms);
      w[inst.variables[j]] = std::move(entry);
    }
    doc["witness"] = std::move(w);
  }
  doc["stats"] = {{"size", bigint_json(instance_size(inst))}, {"time_ms", time_ms}};
  return doc.dump();
}

Witness witness_from_json(const Instance& inst, std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("witness JSON: ") + e.what());
  }
  const nlohmann::json& w = doc.contains("witness") ? doc["witness"] : doc;
  if (!w.is_object()) throw InputError("witness JSON: expected an object of variables");
  auto as_bigint = [](const nlohmann::json& v) {
    if (v.is_number_integer()) return BigInt(std::to_string(v.get<long long>()));
    if (v.is_string()) return BigInt(v.get<std::string>());
    throw InputError("witness JSON: expected an integer");
  };
  Witness out;
  for (const auto& name : inst.variables) {
    if (!w.contains(name)) throw InputError("witness JSON: no value for '" + name + "'");
    const auto& entry = w[name];
    if (!entry.contains("terms") || !entry["terms"].is_array())
      throw InputError("witness JSON: '" + name + "' needs a terms array");
    std::vector<Term> terms;
    for (const auto& t : entry["terms"]) {
      if (!t.is_array() || t.size() != 2 || !t[0].is_string())
        throw InputError("witness JSON: terms are [\"num/den\", exponent] pairs");
      terms.push_back({parse_rational(t[0].get<std::string>()), as_bigint(t[1])});
    }
    if (!entry.contains("p") || entry["p"].is_null()) {
      Rational q = 0;
      for (const auto& t : terms) {
        if (t.exponent != 0) throw InputError("witness JSON: rational '" + name + "' has a nonzero exponent");
        q += t.coeff;
      }
      out.emplace_back(q);
    } else {
      out.emplace_back(PowerSum(Prime(as_bigint(entry["p"])), std::move(terms)));
    }
  }
  return out;
}

}  // namespace padic

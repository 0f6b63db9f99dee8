#include "mellin/expr.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

namespace mellin {

using nlohmann::json;

namespace {
constexpr double kPi = std::numbers::pi;
}

Term Term::identity(cplx d0) {
  Term t;
  t.kind = Kind::Identity;
  t.coef = d0;
  return t;
}

Term Term::fourier(Multiplier a0) {
  Term t;
  t.kind = Kind::Fourier;
  t.symbol = std::move(a0);
  return t;
}

Term Term::mellin_k(int m, cplx c, cplx d) {
  Term t;
  t.kind = Kind::MellinK;
  t.k = MellinKNode{m, c};
  t.coef = d;
  return t;
}

Term Term::sandwich(Multiplier a, MellinKNode k, Multiplier b, cplx d) {
  Term t;
  t.kind = Kind::Sandwich;
  t.a = std::move(a);
  t.b = std::move(b);
  t.k = k;
  t.coef = d;
  return t;
}

OperatorExpr OperatorExpr::scalar(EntryExpr terms) {
  OperatorExpr e;
  e.n = 1;
  e.entries.push_back(std::move(terms));
  return e;
}

OperatorExpr OperatorExpr::matrix(int n) {
  OperatorExpr e;
  e.n = n;
  e.entries.resize(static_cast<size_t>(n) * n);
  return e;
}

namespace {

void validate_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Identity:
      return;
    case Term::Kind::Fourier:
      if (t.symbol.order() != 0.0)
        fail(Err::UnsupportedExprShape, "Fourier symbol must be bounded (order 0)");
      return;
    case Term::Kind::MellinK:
    case Term::Kind::Sandwich:
      if (t.k.m < 1 || t.k.m > 2)
        fail(Err::UnsupportedExprShape,
             "K^m with m >= 3 is outside the symbol calculus; reduce via partial fractions");
      if (t.k.c.imag() == 0.0 && t.k.c.real() >= 0.0)
        fail(Err::ArgCOnAxis, "Mellin kernel pole on the positive axis");
      if (t.kind == Term::Kind::Sandwich &&
          (t.a.order() != 0.0 || t.b.order() != 0.0))
        fail(Err::UnsupportedExprShape, "sandwich outer symbols must be bounded");
      return;
  }
}

}  // namespace

void OperatorExpr::validate_for_symbol() const {
  if (n < 1 || entries.size() != static_cast<size_t>(n) * n)
    fail(Err::UnsupportedExprShape, "malformed operator matrix");
  for (const EntryExpr& entry : entries)
    for (const Term& t : entry) validate_term(t);
}

OperatorExpr corner_system_expr(double alpha) {
  if (alpha == 0.0 || std::abs(alpha) >= kPi) fail(Err::AlphaOnAxis, "require 0 < |alpha| < pi");
  const cplx cp = std::polar(1.0, alpha);
  const cplx cm = std::polar(1.0, -alpha);
  const cplx w = cplx(1.0 / (2.0 * kPi), 0.0);
  OperatorExpr e = OperatorExpr::matrix(2);
  e.at(0, 0) = {Term::identity(1.0)};
  e.at(1, 1) = {Term::identity(1.0)};
  e.at(0, 1) = {Term::mellin_k(1, cp, w), Term::mellin_k(1, cm, w)};
  e.at(1, 0) = {Term::mellin_k(1, cp, -w), Term::mellin_k(1, cm, -w)};
  return e;
}

// ---------------------------------------------------------------------------
// JSON encoding

namespace {

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(Err::SpecParse, std::string("expected [re, im] for ") + what);
  return cplx(j[0].get<double>(), j[1].get<double>());
}

json multiplier_to_json(const Multiplier& m) {
  json j;
  switch (m.kind) {
    case Multiplier::Kind::Constant:
      j["family"] = "constant";
      j["value"] = cplx_to_json(m.value);
      break;
    case Multiplier::Kind::PiecewiseConstant:
      j["family"] = "piecewise_constant";
      j["left"] = cplx_to_json(m.left);
      j["right"] = cplx_to_json(m.right);
      break;
    case Multiplier::Kind::GRatio:
      j["family"] = "g_ratio";
      j["s"] = m.power;
      j["num_shift"] = cplx_to_json(m.num_shift);
      j["den_shift"] = cplx_to_json(m.den_shift);
      break;
    case Multiplier::Kind::Lambda:
      j["family"] = "lambda";
      j["r"] = m.power;
      j["shift"] = cplx_to_json(m.shift);
      break;
    case Multiplier::Kind::Product: {
      j["family"] = "product";
      json fs = json::array();
      for (const Multiplier& f : m.factors) fs.push_back(multiplier_to_json(f));
      j["factors"] = std::move(fs);
      break;
    }
  }
  return j;
}

Multiplier multiplier_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    fail(Err::SpecParse, "symbol must be an object with a family tag");
  const std::string family = j["family"].get<std::string>();
  if (family == "constant") return Multiplier::constant(cplx_from_json(j.at("value"), "value"));
  if (family == "piecewise_constant")
    return Multiplier::piecewise(cplx_from_json(j.at("left"), "left"),
                                 cplx_from_json(j.at("right"), "right"));
  if (family == "g_ratio")
    return Multiplier::g_ratio(j.at("s").get<double>(),
                               cplx_from_json(j.at("num_shift"), "num_shift"),
                               cplx_from_json(j.at("den_shift"), "den_shift"));
  if (family == "lambda")
    return Multiplier::lambda(j.at("r").get<double>(), cplx_from_json(j.at("shift"), "shift"));
  if (family == "product") {
    std::vector<Multiplier> fs;
    for (const json& f : j.at("factors")) fs.push_back(multiplier_from_json(f));
    return Multiplier::product(std::move(fs));
  }
  fail(Err::SpecParse, "unknown symbol family '" + family + "'");
}

json term_to_json(const Term& t) {
  json j;
  switch (t.kind) {
    case Term::Kind::Identity:
      j["kind"] = "identity";
      j["coef"] = cplx_to_json(t.coef);
      break;
    case Term::Kind::Fourier:
      j["kind"] = "fourier";
      j["symbol"] = multiplier_to_json(t.symbol);
      break;
    case Term::Kind::MellinK:
      j["kind"] = "mellinK";
      j["m"] = t.k.m;
      j["c"] = cplx_to_json(t.k.c);
      j["coef"] = cplx_to_json(t.coef);
      break;
    case Term::Kind::Sandwich:
      j["kind"] = "sandwich";
      j["a"] = multiplier_to_json(t.a);
      j["k"] = {{"m", t.k.m}, {"c", cplx_to_json(t.k.c)}, {"coef", cplx_to_json(t.coef)}};
      j["b"] = multiplier_to_json(t.b);
      break;
  }
  return j;
}

Term term_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) fail(Err::SpecParse, "term must carry a kind");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "identity") return Term::identity(cplx_from_json(j.at("coef"), "coef"));
  if (kind == "fourier") return Term::fourier(multiplier_from_json(j.at("symbol")));
  if (kind == "mellinK") {
    const cplx d = j.contains("coef") ? cplx_from_json(j["coef"], "coef") : cplx(1.0, 0.0);
    return Term::mellin_k(j.at("m").get<int>(), cplx_from_json(j.at("c"), "c"), d);
  }
  if (kind == "sandwich") {
    const json& k = j.at("k");
    const cplx d = k.contains("coef") ? cplx_from_json(k["coef"], "coef") : cplx(1.0, 0.0);
    return Term::sandwich(multiplier_from_json(j.at("a")),
                          MellinKNode{k.at("m").get<int>(), cplx_from_json(k.at("c"), "c")},
                          multiplier_from_json(j.at("b")), d);
  }
  fail(Err::SpecParse, "unknown term kind '" + kind + "'");
}

EntryExpr entry_from_json(const json& arr) {
  EntryExpr entry;
  for (const json& t : arr) entry.push_back(term_from_json(t));
  return entry;
}

}  // namespace

OperatorSpec parse_operator_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    fail(Err::SpecParse, std::string("invalid JSON: ") + e.what());
  }
  OperatorSpec spec;
  if (j.contains("space")) {
    const json& sp = j["space"];
    AnalysisParams params;
    if (sp.contains("p")) params.p = sp["p"].get<double>();
    if (sp.contains("s")) params.s = sp["s"].get<double>();
    if (sp.contains("weight_exp")) params.weight_exp = sp["weight_exp"].get<double>();
    if (sp.contains("gamma")) params.gamma = cplx_from_json(sp["gamma"], "gamma");
    if (sp.contains("gamma0")) params.gamma0 = cplx_from_json(sp["gamma0"], "gamma0");
    try {
      params.validate();
    } catch (const Error& e) {
      fail(Err::SpecParse, std::string("bad space block: ") + e.what());
    }
    spec.params = params;
    spec.has_params = true;
  }
  if (!j.contains("operator") || !j["operator"].is_object())
    fail(Err::SpecParse, "missing operator block");
  const json& op = j["operator"];
  if (!op.contains("terms") || !op["terms"].is_array() || op["terms"].empty())
    fail(Err::SpecParse, "operator.terms must be a nonempty array");
  const json& terms = op["terms"];
  if (terms[0].is_array()) {
    // matrix form: rows of columns of term lists
    const int n = static_cast<int>(terms.size());
    OperatorExpr e = OperatorExpr::matrix(n);
    for (int i = 0; i < n; ++i) {
      if (!terms[i].is_array() || static_cast<int>(terms[i].size()) != n)
        fail(Err::SpecParse, "operator matrix must be square");
      for (int jj = 0; jj < n; ++jj) {
        if (!terms[i][jj].is_array()) fail(Err::SpecParse, "matrix entries must be term arrays");
        e.at(i, jj) = entry_from_json(terms[i][jj]);
      }
    }
    spec.expr = std::move(e);
  } else {
    spec.expr = OperatorExpr::scalar(entry_from_json(terms));
  }
  spec.expr.validate_for_symbol();
  return spec;
}

std::string canonical_spec_json(const OperatorExpr& expr) {
  json terms;
  if (expr.n == 1) {
    terms = json::array();
    for (const Term& t : expr.entries[0]) terms.push_back(term_to_json(t));
  } else {
    terms = json::array();
    for (int i = 0; i < expr.n; ++i) {
      json row = json::array();
      for (int j = 0; j < expr.n; ++j) {
        json cell = json::array();
        for (const Term& t : expr.at(i, j)) cell.push_back(term_to_json(t));
        row.push_back(std::move(cell));
      }
      terms.push_back(std::move(row));
    }
  }
  json root;
  root["operator"]["terms"] = std::move(terms);
  return root.dump();
}

uint64_t expr_hash(const OperatorExpr& expr) {
  const std::string text = canonical_spec_json(expr);
  uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace mellin

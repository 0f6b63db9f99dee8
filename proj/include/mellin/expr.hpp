#pragma once

// Operator expressions for the model algebra
//   A = d0 I + W_{a0} + sum_j W_{a_j} K^{m_j}_{c_j} W_{b_j}
// (entrywise for matrix operators), with a canonical JSON encoding.

#include <cstdint>
#include <string>
#include <vector>

#include "mellin/core.hpp"
#include "mellin/transforms.hpp"

namespace mellin {

struct MellinKNode {
  int m = 1;
  cplx c{-1.0, 0.0};
};

struct Term {
  enum class Kind { Identity, Fourier, MellinK, Sandwich };

  Kind kind = Kind::Identity;
  cplx coef{1.0, 0.0};  // d0 for Identity, d for MellinK/Sandwich
  Multiplier symbol;    // Fourier symbol a0
  Multiplier a, b;      // Sandwich outer symbols
  MellinKNode k;        // MellinK / Sandwich inner operator

  static Term identity(cplx d0);
  static Term fourier(Multiplier a0);
  static Term mellin_k(int m, cplx c, cplx d = cplx(1.0, 0.0));
  static Term sandwich(Multiplier a, MellinKNode k, Multiplier b, cplx d = cplx(1.0, 0.0));
};

using EntryExpr = std::vector<Term>;  // a sum of terms

struct OperatorExpr {
  int n = 1;                        // matrix dimension
  std::vector<EntryExpr> entries;   // row-major, n*n sums

  const EntryExpr& at(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
  EntryExpr& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }

  static OperatorExpr scalar(EntryExpr terms);
  static OperatorExpr matrix(int n);

  // Rejects expressions a symbol cannot be assembled for: Mellin
  // multiplicity outside {1,2}, unbounded (nonzero-order) Fourier symbols,
  // and lifted K-terms with arg c = 0.
  void validate_for_symbol() const;
};

// The 2x2 boundary system of the corner problem: identity on the diagonal,
// +-(1/2pi)(K^1_{e^{i alpha}} + K^1_{e^{-i alpha}}) off the diagonal.
OperatorExpr corner_system_expr(double alpha);

// Canonical JSON round trip ({"space": {...}, "operator": {...}}); space is
// optional on parse.  Numbers use %.17g so the encoding is byte-stable.
struct OperatorSpec {
  AnalysisParams params;
  bool has_params = false;
  OperatorExpr expr;
};

OperatorSpec parse_operator_spec(const std::string& json_text);
std::string canonical_spec_json(const OperatorExpr& expr);
uint64_t expr_hash(const OperatorExpr& expr);

}  // namespace mellin

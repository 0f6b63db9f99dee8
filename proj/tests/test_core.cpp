#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "mellin/core.hpp"
#include "mellin/expr.hpp"

using namespace mellin;

namespace {

cplx eval_partial_fraction(const std::vector<cplx>& poles, const std::vector<cplx>& d,
                           cplx t) {
  cplx acc = 0.0;
  for (size_t j = 0; j < poles.size(); ++j) acc += d[j] / (t - poles[j]);
  return acc;
}

cplx eval_product_inverse(const std::vector<cplx>& poles, cplx t) {
  cplx prod = 1.0;
  for (const cplx& c : poles) prod *= t - c;
  return 1.0 / prod;
}

}  // namespace

TEST_CASE("admissible kernel validation") {
  CHECK_NOTHROW(validate_admissible_kernel({{cplx(1.0), cplx(-1.0), 1}}));

  CHECK_THROWS_AS(validate_admissible_kernel({{cplx(1.0), cplx(1.0), 1}}, /*for_lifting=*/true),
                  Error);
  try {
    validate_admissible_kernel({{cplx(1.0), cplx(1.0), 1}}, true);
  } catch (const Error& e) {
    CHECK(e.kind() == Err::PoleOnPositiveAxis);
  }

  // corner-system kernel: conjugate poles on the unit circle
  const double alpha = std::numbers::pi / 3.0;
  CHECK_NOTHROW(validate_admissible_kernel(
      {{cplx(1.0), std::polar(1.0, alpha), 1}, {cplx(1.0), std::polar(1.0, -alpha), 1}}, true));

  try {
    validate_admissible_kernel({{cplx(1.0), cplx(0.0, 1.0), 1}, {cplx(2.0), cplx(0.0, 1.0), 2}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == Err::DuplicatePole);
  }
  try {
    validate_admissible_kernel({{cplx(1.0), cplx(0.0, 1.0), 0}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == Err::NonpositiveMultiplicity);
  }
  // multiplicity >= 2 on the positive axis is inadmissible even without lifting
  try {
    validate_admissible_kernel({{cplx(1.0), cplx(2.0), 2}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == Err::PoleOnPositiveAxis);
  }
}

TEST_CASE("partial fractions: cover-up values") {
  const auto d1 = partial_fraction_reduce({cplx(0.0, 1.0), cplx(0.0, -1.0)});
  CHECK(std::abs(d1[0] - cplx(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(d1[1] - cplx(0.0, 0.5)) < 1e-15);

  const auto d2 = partial_fraction_reduce({cplx(1.0), cplx(2.0), cplx(3.0)});
  CHECK(std::abs(d2[0] - cplx(0.5)) < 1e-15);
  CHECK(std::abs(d2[1] - cplx(-1.0)) < 1e-15);
  CHECK(std::abs(d2[2] - cplx(0.5)) < 1e-15);

  CHECK_THROWS_AS(partial_fraction_reduce({cplx(1.0), cplx(1.0)}), Error);
}

TEST_CASE("partial fractions: reconstruction and decay matching") {
  std::mt19937 rng(20240311);
  std::uniform_real_distribution<double> unit(-2.0, 2.0);
  for (int n = 2; n <= 6; ++n) {
    std::vector<cplx> poles;
    for (int j = 0; j < n; ++j) poles.emplace_back(unit(rng), unit(rng) + 2.5);
    const auto d = partial_fraction_reduce(poles);

    cplx sum = 0.0;
    for (const cplx& v : d) sum += v;
    CHECK(std::abs(sum) < (n == 2 ? 1e-15 : 1e-12));

    for (int k = 0; k < 20; ++k) {
      const cplx t(unit(rng) * 3.0, unit(rng) - 6.0);
      const cplx lhs = eval_product_inverse(poles, t);
      const cplx rhs = eval_partial_fraction(poles, d, t);
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("rectangle path: shape, orientation, closure") {
  const auto path = rectangle_path(16);
  REQUIRE(path.size() == 64);

  // four segments in traversal order, 16 samples each
  for (int si = 0; si < 4; ++si) {
    const Segment expect[] = {Segment::Gamma1, Segment::Gamma2Plus, Segment::Gamma3,
                              Segment::Gamma2Minus};
    for (int j = 0; j < 16; ++j) CHECK(path[si * 16 + j].seg == expect[si]);
  }

  // strictly increasing global parameter; closure by wrap-around
  for (size_t k = 1; k < path.size(); ++k) CHECK(path[k].u > path[k - 1].u);
  CHECK(path.front().seg == Segment::Gamma1);
  CHECK(path.front().coord == -std::numeric_limits<double>::infinity());
  CHECK(path.back().seg == Segment::Gamma2Minus);

  // G1 ascends, G3 descends, eta >= 0 on both G2 sides
  CHECK(path[1].coord < path[15].coord);
  CHECK(path[33].coord > path[47].coord);
  for (size_t k = 16; k < 32; ++k) CHECK(path[k].coord >= 0.0);
  for (size_t k = 48; k < 64; ++k) CHECK(path[k].coord >= 0.0);

  // refinement keeps the segment-initial samples (the corners) fixed
  const auto fine = rectangle_path(32);
  for (int si = 0; si < 4; ++si) {
    const RectanglePoint& a = path[si * 16];
    const RectanglePoint& b = fine[si * 32];
    CHECK(a.seg == b.seg);
    CHECK(((a.coord == b.coord) || (std::isinf(a.coord) && std::isinf(b.coord) &&
                                    std::signbit(a.coord) == std::signbit(b.coord))));
  }

  CHECK_THROWS_AS(rectangle_path(8), Error);
}

TEST_CASE("operator specs: JSON round trip and hashing") {
  const std::string scalar = R"({
    "space": {"p": 2.0, "s": 0.5, "gamma": [0.0, 1.0]},
    "operator": {"terms": [
      {"kind": "identity", "coef": [1.0, 0.0]},
      {"kind": "mellinK", "m": 1, "c": [-1.0, 0.0], "coef": [0.5, 0.0]},
      {"kind": "fourier", "symbol": {"family": "g_ratio", "s": 1.0,
                                     "num_shift": [0.0, -1.0], "den_shift": [0.0, 1.0]}},
      {"kind": "sandwich", "a": {"family": "constant", "value": [1.0, 0.0]},
                           "k": {"m": 2, "c": [-0.5, 0.5], "coef": [1.0, 0.0]},
                           "b": {"family": "piecewise_constant",
                                 "left": [1.0, 0.0], "right": [1.0, 0.0]}}
    ]}
  })";
  const OperatorSpec spec = parse_operator_spec(scalar);
  CHECK(spec.has_params);
  CHECK(spec.params.s == 0.5);
  CHECK(spec.expr.n == 1);
  REQUIRE(spec.expr.entries[0].size() == 4);
  CHECK(spec.expr.entries[0][1].k.m == 1);
  CHECK(spec.expr.entries[0][3].k.m == 2);

  // canonical encoding is a fixed point: parse(canonical(e)) hashes equally
  const std::string canon = canonical_spec_json(spec.expr);
  const OperatorSpec again = parse_operator_spec(canon);
  CHECK(expr_hash(again.expr) == expr_hash(spec.expr));
  CHECK(canonical_spec_json(again.expr) == canon);

  // matrix form nests term arrays
  const std::string matrix = R"({
    "operator": {"terms": [
      [[{"kind": "identity", "coef": [1.0, 0.0]}], []],
      [[], [{"kind": "identity", "coef": [2.0, 0.0]}]]
    ]}
  })";
  const OperatorSpec mspec = parse_operator_spec(matrix);
  CHECK(mspec.expr.n == 2);
  CHECK(mspec.expr.at(0, 1).empty());
  CHECK(expr_hash(mspec.expr) != expr_hash(spec.expr));

  // parse errors carry the SpecParse kind
  for (const char* bad : {
           "{nope",
           R"({"operator": {"terms": []}})",
           R"({"operator": {"terms": [{"kind": "mystery"}]}})",
           R"({"operator": {"terms": [{"kind": "mellinK", "m": 3, "c": [0.0, 1.0]}]}})",
           R"({"space": {"p": 0.5}, "operator": {"terms": [{"kind": "identity", "coef": [1.0, 0.0]}]}})",
       }) {
    CHECK_THROWS_AS(parse_operator_spec(bad), Error);
  }
}

TEST_CASE("analysis parameter bounds") {
  CHECK_NOTHROW(make_params(2.0, 0.5));
  CHECK_NOTHROW(make_params(1.5, -0.5, 0.3));

  CHECK_THROWS_AS(make_params(1.0, 0.0), Error);
  CHECK_THROWS_AS(make_params(2.0, 0.0, 1.2), Error);   // weight_exp >= p-1
  CHECK_THROWS_AS(make_params(2.0, 0.0, -1.0), Error);  // weight_exp <= -1
  CHECK_THROWS_AS(make_params(2.0, 0.0, 0.0, cplx(1.0, 0.0)), Error);   // arg gamma = 0
  CHECK_THROWS_AS(make_params(2.0, 0.0, 0.0, cplx(0.0, -1.0)), Error);  // arg gamma < 0

  const AnalysisParams pr = make_params(2.0, 0.25, 0.5);
  CHECK(pr.beta() == doctest::Approx(0.75));
  CHECK(pr.s_in_coincidence_band());
}

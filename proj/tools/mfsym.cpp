// mfsym — symbol curves, Fredholm indices, and identity verification for
// operators built from Mellin and Fourier convolutions on the half-line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mellin/io.hpp"
#include "mellin/verify.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

// exit codes: 0 ok, 1 parse, 2 hypothesis, 3 numerical, 4 not elliptic
int exit_code_for(mellin::Err kind) {
  using mellin::Err;
  switch (kind) {
    case Err::SpecParse:
      return 1;
    case Err::HypothesisViolated:
    case Err::BadGammaArg:
    case Err::BadParams:
    case Err::MissingAnalyticityFlags:
    case Err::ArgCOnAxis:
    case Err::AlphaOnAxis:
    case Err::SOutOfRange:
    case Err::NoAnalyticitySide:
    case Err::PoleOnPositiveAxis:
    case Err::PVNotRequested:
    case Err::UnsupportedExprShape:
    case Err::DuplicatePole:
    case Err::NonpositiveMultiplicity:
      return 2;
    case Err::NotElliptic:
      return 4;
    default:
      return 3;
  }
}

mellin::cplx parse_pair(const std::string& text, const char* what) {
  double re = 0.0, im = 0.0;
  if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) != 2)
    mellin::fail(mellin::Err::SpecParse, std::string(what) + " expects 're,im'");
  return {re, im};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) mellin::fail(mellin::Err::SpecParse, "cannot open spec file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) mellin::fail(mellin::Err::SpecParse, "cannot write " + path);
  out << data;
}

struct SpaceFlags {
  double p = -1.0, s = 0.0, weight_exp = 0.0;
  bool has_s = false, has_weight = false;
  std::string gamma, gamma0;
};

mellin::AnalysisParams resolve_params(const mellin::OperatorSpec& spec, const SpaceFlags& fl) {
  mellin::AnalysisParams params;
  if (spec.has_params) params = spec.params;
  if (fl.p > 0.0) params.p = fl.p;
  if (fl.has_s) params.s = fl.s;
  if (fl.has_weight) params.weight_exp = fl.weight_exp;
  if (!fl.gamma.empty()) params.gamma = parse_pair(fl.gamma, "--gamma");
  if (!fl.gamma0.empty()) params.gamma0 = parse_pair(fl.gamma0, "--gamma0");
  params.validate();
  return params;
}

void add_space_flags(CLI::App* cmd, SpaceFlags* fl) {
  cmd->add_option("--p", fl->p, "Lebesgue exponent (1 < p < inf)");
  cmd->add_option("--s", fl->s, "smoothness order")->each([fl](const std::string&) {
    fl->has_s = true;
  });
  cmd->add_option("--weight-exp", fl->weight_exp, "weight exponent (-1 < w < p-1)")
      ->each([fl](const std::string&) { fl->has_weight = true; });
  cmd->add_option("--gamma", fl->gamma, "lifting parameter as 're,im'");
  cmd->add_option("--gamma0", fl->gamma0, "auxiliary lifting parameter as 're,im'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fredholm symbol calculus for Mellin/Fourier convolutions on R+"};
  app.require_subcommand(1);

  // --- symbol ---------------------------------------------------------
  auto* sym = app.add_subcommand("symbol", "sample det of the operator symbol on the rectangle");
  std::string sym_spec, sym_out, sym_format = "csv";
  int sym_res = 256;
  SpaceFlags sym_fl;
  sym->add_option("--spec", sym_spec, "operator spec (JSON)")->required();
  sym->add_option("--resolution", sym_res, "samples per rectangle segment");
  sym->add_option("--out", sym_out, "output path (default stdout)");
  sym->add_option("--format", sym_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  add_space_flags(sym, &sym_fl);

  // --- index ----------------------------------------------------------
  auto* idx = app.add_subcommand("index", "ellipticity, winding number, Fredholm index");
  std::string idx_spec, idx_out;
  int idx_res = 256;
  SpaceFlags idx_fl;
  idx->add_option("--spec", idx_spec, "operator spec (JSON)")->required();
  idx->add_option("--resolution", idx_res, "starting resolution (doubled until stable)");
  idx->add_option("--out", idx_out, "output path (default stdout)");
  add_space_flags(idx, &idx_fl);

  // --- verify ---------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "run the operator-identity verification suite");
  std::string ver_out;
  double ver_half_width = 64.0;
  int ver_log2n = 13;
  ver->add_option("--out", ver_out, "output path (default stdout)");
  ver->add_option("--half-width", ver_half_width, "grid half width L");
  ver->add_option("--log2n", ver_log2n, "log2 of the grid size");

  // --- corner-sweep ----------------------------------------------------
  auto* sweep = app.add_subcommand("corner-sweep",
                                   "index table for the corner boundary system over (alpha,p,s)");
  std::string sweep_out, sweep_ps = "1.5,2,3", sweep_ss = "-0.5,0,0.5";
  double alpha_min = 0.1, alpha_max = kPi - 0.1;
  int alpha_count = 8, sweep_res = 256;
  sweep->add_option("--alpha-min", alpha_min, "smallest corner angle (0 < alpha < pi)");
  sweep->add_option("--alpha-max", alpha_max, "largest corner angle");
  sweep->add_option("--alpha-count", alpha_count, "number of alpha samples");
  sweep->add_option("--p", sweep_ps, "comma list of Lebesgue exponents");
  sweep->add_option("--s", sweep_ss, "comma list of smoothness orders");
  sweep->add_option("--resolution", sweep_res, "starting resolution per index run");
  sweep->add_option("--out", sweep_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sym) {
      const mellin::OperatorSpec spec = mellin::parse_operator_spec(slurp(sym_spec));
      const mellin::AnalysisParams params = resolve_params(spec, sym_fl);
      const mellin::SymbolCurve curve = mellin::symbol_curve(spec.expr, params, sym_res);
      if (sym_format == "json") {
        std::string meta = mellin::curve_meta_json(curve);
        std::string csv = mellin::curve_csv(curve);
        std::string payload = "{\"meta\":" + meta + ",\"csv\":" +
                              nlohmann::json(csv).dump() + "}\n";
        if (sym_out.empty())
          std::cout << payload;
        else
          write_file(sym_out, payload);
      } else if (sym_out.empty()) {
        std::cout << mellin::curve_csv(curve);
      } else {
        write_file(sym_out, mellin::curve_csv(curve));
        write_file(sym_out + ".meta.json", mellin::curve_meta_json(curve) + "\n");
      }
      return 0;
    }
    if (*idx) {
      const mellin::OperatorSpec spec = mellin::parse_operator_spec(slurp(idx_spec));
      const mellin::AnalysisParams params = resolve_params(spec, idx_fl);
      const mellin::IndexReport rep = mellin::fredholm_index(spec.expr, params, idx_res);
      const std::string payload =
          mellin::index_report_json(rep, params, mellin::expr_hash(spec.expr)) + "\n";
      if (idx_out.empty())
        std::cout << payload;
      else
        write_file(idx_out, payload);
      return rep.elliptic ? 0 : 4;
    }
    if (*ver) {
      mellin::GridOptions grid;
      grid.half_width = ver_half_width;
      grid.n = 1ull << ver_log2n;
      const std::vector<mellin::CheckResult> results = mellin::run_verification_suite(grid);
      const std::string payload = mellin::verification_matrix_json(results) + "\n";
      if (ver_out.empty())
        std::cout << payload;
      else
        write_file(ver_out, payload);
      for (const mellin::CheckResult& r : results)
        if (r.status == "fail") return 3;
      return 0;
    }
    if (*sweep) {
      if (!(alpha_min > 0.0 && alpha_max < kPi && alpha_min <= alpha_max))
        mellin::fail(mellin::Err::AlphaOnAxis, "require 0 < alpha-min <= alpha-max < pi");
      mellin::SweepSpec sp;
      sp.ps = parse_list(sweep_ps);
      sp.ss = parse_list(sweep_ss);
      sp.resolution = sweep_res;
      if (alpha_count < 1) alpha_count = 1;
      for (int k = 0; k < alpha_count; ++k) {
        const double t = alpha_count == 1 ? 0.0
                                          : static_cast<double>(k) / (alpha_count - 1);
        sp.alphas.push_back(alpha_min + t * (alpha_max - alpha_min));
      }
      const std::string payload = mellin::corner_sweep_csv(sp);
      if (sweep_out.empty())
        std::cout << payload;
      else
        write_file(sweep_out, payload);
      return 0;
    }
  } catch (const mellin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

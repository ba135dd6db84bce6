// Command-line front end: construct discrete priors with prescribed posterior
// medians, verify serialized constructions, and emit figure data as CSV.
//
// Exit codes: 0 success, 2 usage or malformed input, 3 numeric failure,
// 4 verification failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "medprior/errors.hpp"
#include "medprior/estimator.hpp"
#include "medprior/figures.hpp"
#include "medprior/moment_solver.hpp"
#include "medprior/precision.hpp"
#include "medprior/prior_file.hpp"

namespace {

using namespace medprior;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerification = 4;

// --bits wins over MEDIAN_PRIOR_BITS, which wins over the built-in default.
unsigned resolve_bits(unsigned flag_bits, bool flag_given) {
  if (flag_given) {
    return flag_bits;
  }
  if (const char* env = std::getenv("MEDIAN_PRIOR_BITS")) {
    const std::string text(env);
    try {
      std::size_t used = 0;
      const unsigned long value = std::stoul(text, &used);
      if (used != text.size() || value == 0) {
        throw std::invalid_argument(text);
      }
      return static_cast<unsigned>(value);
    } catch (const std::exception&) {
      throw DomainError("MEDIAN_PRIOR_BITS must be a positive integer, got \"" +
                        text + "\"");
    }
  }
  return BigFloat::default_bits();
}

// All file output lands atomically: write a sibling temp file, then rename.
void write_output(const std::string& path, const std::string& payload) {
  if (path == "-") {
    std::cout << payload;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw DomainError("cannot open " + tmp + " for writing");
    }
    out << payload;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw DomainError("failed while writing " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw DomainError("cannot move output into place at " + path);
  }
}

struct ConstructOptions {
  std::string a;
  std::string b;
  unsigned long c0 = 0;
  bool has_c0 = false;
  unsigned long M = 1;
  std::string backend = "rational";
  unsigned bits = 0;
  bool bits_given = false;
  std::string out = "-";
};

int cmd_construct(const ConstructOptions& opt) {
  const Rational a = rational_from_string(opt.a);
  const Rational b = rational_from_string(opt.b);
  const PrescribedEstimator f =
      opt.has_c0 ? PrescribedEstimator::saturating_affine(a, b, opt.c0)
                 : PrescribedEstimator::affine(a, b);

  const unsigned bits = resolve_bits(opt.bits, opt.bits_given);
  BigFloat::set_default_bits(bits);

  const AdmissibilityReport adm = check_summability(f);
  if (!adm.admissible) {
    std::cerr << "warning: summability check failed: a >= 1/e; "
                 "finite-M construction only\n";
  }

  // The two constructions are independent; disagreement means a bug or a
  // precision failure, never a usage error.
  std::string payload;
  if (opt.backend == "rational") {
    const MomentSolution<Rational> direct = solve_direct<Rational>(f, opt.M);
    const MomentSolution<Rational> recursive = solve_recursive<Rational>(f, opt.M);
    if (direct.weights != recursive.weights) {
      throw InternalError("direct and recursive solutions disagree");
    }
    const DiscretePrior<BigFloat> tilted = tilt_to_prior(direct, bits);
    payload = serialize_prior_file(make_prior_file(f, direct, tilted, bits));
  } else {
    const SolverConfig cfg{PrecisionConfig(bits)};
    const MomentSolution<BigFloat> direct = solve_direct<BigFloat>(f, opt.M, cfg);
    const MomentSolution<BigFloat> recursive =
        solve_recursive<BigFloat>(f, opt.M, cfg);
    for (std::size_t i = 0; i < direct.weights.size(); ++i) {
      if (abs_val(direct.weights[i] - recursive.weights[i]) >
          cfg.precision.tolerance) {
        throw InternalError(
            "direct and recursive solutions disagree beyond tolerance");
      }
    }
    const DiscretePrior<BigFloat> tilted = tilt_to_prior(direct, bits);
    payload = serialize_prior_file(make_prior_file(f, direct, tilted, bits));
  }

  write_output(opt.out, payload);
  return kExitOk;
}

struct VerifyOptions {
  std::string input;
  unsigned long y_max = 0;
  bool y_max_given = false;
  unsigned bits = 0;
  bool bits_given = false;
};

int cmd_verify(const VerifyOptions& opt) {
  BigFloat::set_default_bits(resolve_bits(opt.bits, opt.bits_given));

  std::ifstream in(opt.input, std::ios::binary);
  if (!in) {
    throw DomainError("cannot read " + opt.input);
  }
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};

  const PriorFile file = parse_prior_file(text);
  const unsigned long y_max = opt.y_max_given ? opt.y_max : file.M - 1;
  const VerificationReport report = verify_prior_file(file, y_max);
  std::cout << report.text;
  if (!report.pass) {
    if (report.first_failure_y >= 0) {
      std::cout << "first failing y: " << report.first_failure_y << "\n";
    }
    return kExitVerification;
  }
  return kExitOk;
}

struct FigureOptions {
  std::string which;
  std::string a;
  bool a_given = false;
  std::string b;
  bool b_given = false;
  std::vector<unsigned long> M_list;
  unsigned long y_max = 0;
  bool y_max_given = false;
  unsigned bits = 0;
  bool bits_given = false;
  std::string out = "-";
};

int cmd_figure(const FigureOptions& opt) {
  const unsigned bits = resolve_bits(opt.bits, opt.bits_given);
  BigFloat::set_default_bits(bits);

  FigureTable table;
  if (opt.which == "gap") {
    const Rational a = rational_from_string(opt.a_given ? opt.a : "1/2");
    const Rational b = rational_from_string(opt.b_given ? opt.b : "1/2");
    table = gap_table(a, b, opt.y_max_given ? opt.y_max : 50, bits);
  } else if (opt.which == "medians") {
    const Rational a = rational_from_string(opt.a_given ? opt.a : "0.3");
    const Rational b = rational_from_string(opt.b_given ? opt.b : "0.3");
    const std::vector<unsigned long> Ms =
        opt.M_list.empty() ? std::vector<unsigned long>{2, 4, 8} : opt.M_list;
    table = medians_table(Ms, a, b, opt.y_max_given ? opt.y_max : 7);
  } else if (opt.which == "cdf") {
    const Rational a = rational_from_string(opt.a_given ? opt.a : "0.3");
    const Rational b = rational_from_string(opt.b_given ? opt.b : "0.3");
    const std::vector<unsigned long> Ms =
        opt.M_list.empty() ? std::vector<unsigned long>{8} : opt.M_list;
    table = cdf_table(Ms, a, b, bits);
  } else {
    throw DomainError("unknown figure: " + opt.which +
                      " (expected gap, medians, or cdf)");
  }

  write_output(opt.out, write_csv(table));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Discrete priors whose Poisson posterior median equals a prescribed "
      "increasing function"};
  app.set_version_flag("--version", "1.0.0");
  app.require_subcommand(1);

  ConstructOptions construct_opt;
  CLI::App* construct = app.add_subcommand(
      "construct", "Construct a prior and write it as a JSON document");
  construct->add_option("--a", construct_opt.a, "Slope of f(y) = a*y + b")
      ->required();
  construct->add_option("--b", construct_opt.b, "Intercept of f(y) = a*y + b")
      ->required();
  CLI::Option* c0_opt = construct->add_option(
      "--c0", construct_opt.c0, "Saturation point: f constant beyond c0");
  construct->add_option("--M", construct_opt.M, "Number of moment conditions")
      ->required()
      ->check(CLI::PositiveNumber);
  construct->add_option("--backend", construct_opt.backend, "Arithmetic backend")
      ->check(CLI::IsMember({"rational", "bigfloat"}))
      ->capture_default_str();
  CLI::Option* construct_bits =
      construct->add_option("--bits", construct_opt.bits,
                            "Float precision in bits (default 256, or "
                            "MEDIAN_PRIOR_BITS)");
  construct->add_option("-o,--output", construct_opt.out,
                        "Output path ('-' for stdout)")
      ->capture_default_str();

  VerifyOptions verify_opt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Re-check a serialized prior against its construction");
  verify->add_option("input", verify_opt.input, "PriorFile path")->required();
  CLI::Option* verify_ymax = verify->add_option(
      "--ymax", verify_opt.y_max, "Largest observed count to report (default M-1)");
  CLI::Option* verify_bits =
      verify->add_option("--bits", verify_opt.bits, "Float precision in bits");

  FigureOptions figure_opt;
  CLI::App* figure =
      app.add_subcommand("figure", "Emit figure data as CSV (gap, medians, cdf)");
  figure->add_option("which", figure_opt.which, "Figure name")->required();
  CLI::Option* fig_a = figure->add_option("--a", figure_opt.a, "Slope a");
  CLI::Option* fig_b = figure->add_option("--b", figure_opt.b, "Intercept b");
  figure->add_option("--M", figure_opt.M_list, "Truncation levels")
      ->delimiter(',');
  CLI::Option* fig_ymax =
      figure->add_option("--ymax", figure_opt.y_max, "Largest observed count");
  CLI::Option* fig_bits =
      figure->add_option("--bits", figure_opt.bits, "Float precision in bits");
  figure->add_option("-o,--output", figure_opt.out,
                     "Output path ('-' for stdout)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  construct_opt.has_c0 = c0_opt->count() > 0;
  construct_opt.bits_given = construct_bits->count() > 0;
  verify_opt.y_max_given = verify_ymax->count() > 0;
  verify_opt.bits_given = verify_bits->count() > 0;
  figure_opt.a_given = fig_a->count() > 0;
  figure_opt.b_given = fig_b->count() > 0;
  figure_opt.y_max_given = fig_ymax->count() > 0;
  figure_opt.bits_given = fig_bits->count() > 0;

  try {
    if (construct->parsed()) {
      return cmd_construct(construct_opt);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_opt);
    }
    return cmd_figure(figure_opt);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

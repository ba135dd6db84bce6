#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "medprior/prior_file.hpp"
#include "medprior/rational.hpp"

namespace fs = std::filesystem;

namespace {

const std::string& cli_path() {
  static const std::string path = [] {
    if (const char* env = std::getenv("MEDPRIOR_CLI")) {
      return std::string(env);
    }
    return std::string(MEDPRIOR_CLI_PATH);
  }();
  return path;
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("medprior_cli_tests_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string{std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>()};
}

void spill(const fs::path& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << payload;
}

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_path = work_dir() / ("stdout." + std::to_string(counter));
  const fs::path err_path = work_dir() / ("stderr." + std::to_string(counter));
  ++counter;

  const std::string command = "\"" + cli_path() + "\" " + args + " > " +
                              out_path.string() + " 2> " + err_path.string();
  const int raw = std::system(command.c_str());
  RunResult result;
  if (raw != -1 && WIFEXITED(raw)) {
    result.status = WEXITSTATUS(raw);
  }
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

constexpr const char* kWarning =
    "warning: summability check failed: a >= 1/e; finite-M construction only";

}  // namespace

TEST_CASE("construct writes a parseable document to stdout", "[cli]") {
  const auto r = run_cli("construct --a 0.3 --b 0.3 --M 1");
  REQUIRE(r.status == 0);
  CHECK(r.err.empty());

  const auto file = medprior::parse_prior_file(r.out);
  CHECK(file.M == 1);
  CHECK(file.backend.kind == "rational");
  CHECK(file.backend.bits == 256);
  CHECK(file.weights_pw_exact == std::vector<std::string>{"1/2", "1/2"});
  CHECK(file.estimator.a == medprior::Rational(3, 10));
}

TEST_CASE("construct then verify round-trips through a file", "[cli]") {
  const fs::path out = work_dir() / "m2.json";
  const auto c =
      run_cli("construct --a 0.3 --b 0.3 --M 2 -o " + out.string());
  REQUIRE(c.status == 0);
  CHECK(c.out.empty());
  REQUIRE(fs::exists(out));
  CHECK_FALSE(fs::exists(out.string() + ".tmp"));

  const auto v = run_cli("verify " + out.string() + " --ymax 4");
  REQUIRE(v.status == 0);
  CHECK(v.out.find("estimator: affine(a=3/10, b=3/10)") != std::string::npos);
  CHECK(v.out.find("y=0: median 0.3 target 0.3") != std::string::npos);
  CHECK(v.out.find("[info:") != std::string::npos);
  CHECK(v.out.find("PASS") != std::string::npos);
}

TEST_CASE("construct warns when the full prior cannot be summable", "[cli]") {
  const auto r = run_cli("construct --a 0.5 --b 0.5 --M 2");
  REQUIRE(r.status == 0);
  CHECK(r.err.find(kWarning) != std::string::npos);

  const auto quiet = run_cli("construct --a 0.3 --b 0.3 --M 2");
  CHECK(quiet.err.find("warning") == std::string::npos);
}

TEST_CASE("verify fails loudly on tampered files", "[cli]") {
  const fs::path out = work_dir() / "tampered.json";
  REQUIRE(run_cli("construct --a 0.3 --b 0.3 --M 2 -o " + out.string()).status ==
          0);

  auto file = medprior::parse_prior_file(slurp(out));
  SECTION("broken normalization") {
    file.weights_pw_exact[1] = "1/10";
    spill(out, medprior::serialize_prior_file(file));
    const auto v = run_cli("verify " + out.string());
    CHECK(v.status == 4);
    CHECK(v.out.find("weights do not normalize") != std::string::npos);
  }
  SECTION("misplaced mass") {
    file.weights_pw_exact[0] = "1/5";
    file.weights_pw_exact[1] = "1/2";
    spill(out, medprior::serialize_prior_file(file));
    const auto v = run_cli("verify " + out.string());
    CHECK(v.status == 4);
    CHECK(v.out.find("[FAIL]") != std::string::npos);
    CHECK(v.out.find("first failing y: 0") != std::string::npos);
  }
  SECTION("unreadable path") {
    const auto v = run_cli("verify " + (work_dir() / "absent.json").string());
    CHECK(v.status == 2);
    CHECK(v.err.find("error: cannot read") != std::string::npos);
  }
}

TEST_CASE("bigfloat backend constructs and verifies", "[cli]") {
  const fs::path out = work_dir() / "m4_float.json";
  const auto c = run_cli("construct --a 0.3 --b 0.3 --M 4 --backend bigfloat -o " +
                         out.string());
  REQUIRE(c.status == 0);
  const auto file = medprior::parse_prior_file(slurp(out));
  CHECK(file.backend.kind == "bigfloat");
  CHECK(file.weights_pw_exact.empty());

  const auto v = run_cli("verify " + out.string());
  CHECK(v.status == 0);
}

TEST_CASE("the bits environment variable feeds the default", "[cli]") {
  REQUIRE(::setenv("MEDIAN_PRIOR_BITS", "128", 1) == 0);
  const auto r = run_cli("construct --a 0.3 --b 0.3 --M 1");
  const auto flagged = run_cli("construct --a 0.3 --b 0.3 --M 1 --bits 320");
  REQUIRE(::setenv("MEDIAN_PRIOR_BITS", "junk", 1) == 0);
  const auto bad = run_cli("construct --a 0.3 --b 0.3 --M 1");
  REQUIRE(::unsetenv("MEDIAN_PRIOR_BITS") == 0);

  REQUIRE(r.status == 0);
  CHECK(medprior::parse_prior_file(r.out).backend.bits == 128);
  // An explicit flag outranks the environment.
  REQUIRE(flagged.status == 0);
  CHECK(medprior::parse_prior_file(flagged.out).backend.bits == 320);
  CHECK(bad.status == 2);
  CHECK(bad.err.find("MEDIAN_PRIOR_BITS") != std::string::npos);
}

TEST_CASE("figure output is byte-stable", "[cli]") {
  const auto gap = run_cli("figure gap --ymax 1");
  REQUIRE(gap.status == 0);
  CHECK(gap.out == "y,gap\n0,-0.153426409720027\n1,-0.16082650499167\n");
  CHECK(run_cli("figure gap --ymax 1").out == gap.out);

  const auto med = run_cli("figure medians --ymax 0");
  REQUIRE(med.status == 0);
  CHECK(med.out == "y,med_M2,med_M4,med_M8\n0,0.3,0.3,0.3\n");

  const auto custom = run_cli("figure medians --M 2,4 --ymax 1 --a 0.3 --b 0.3");
  REQUIRE(custom.status == 0);
  CHECK(custom.out == "y,med_M2,med_M4\n0,0.3,0.3\n1,0.6,0.6\n");

  const auto cdf = run_cli("figure cdf --M 2");
  REQUIRE(cdf.status == 0);
  CHECK(cdf.out.rfind("series,x,cdf\n", 0) == 0);
  CHECK(cdf.out.find("tilted_M2,") != std::string::npos);
  CHECK(cdf.out.find("gamma,") != std::string::npos);
  CHECK(run_cli("figure cdf --M 2").out == cdf.out);
}

TEST_CASE("construct output is byte-stable", "[cli]") {
  const auto first = run_cli("construct --a 0.3 --b 0.3 --M 4");
  const auto second = run_cli("construct --a 0.3 --b 0.3 --M 4");
  REQUIRE(first.status == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
  CHECK(run_cli("").status == 2);                    // no subcommand
  CHECK(run_cli("construct --a 0.3 --M 1").status == 2);  // missing --b
  CHECK(run_cli("construct --a 0.3 --b 0.3 --M 0").status == 2);
  CHECK(run_cli("construct --a 0.3 --b 0.3 --M 1 --frobnicate").status == 2);
  CHECK(run_cli("construct --a 0 --b 0.3 --M 1").status == 2);
  CHECK(run_cli("construct --a 0.3 --b 0.3 --M 1 --backend ternary").status == 2);

  const auto fig = run_cli("figure waterfall");
  CHECK(fig.status == 2);
  CHECK(fig.err.find("unknown figure: waterfall (expected gap, medians, or cdf)") !=
        std::string::npos);

  const auto sink = run_cli("construct --a 0.3 --b 0.3 --M 1 -o " +
                            (work_dir() / "no_such_dir" / "x.json").string());
  CHECK(sink.status == 2);
  CHECK(sink.err.find("error: cannot open") != std::string::npos);
}

TEST_CASE("version flag reports and exits clean", "[cli]") {
  const auto r = run_cli("--version");
  CHECK(r.status == 0);
  CHECK(r.out == "1.0.0\n");
}

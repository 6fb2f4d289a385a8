// End-to-end checks of the command-line tool: exit codes, output content,
// input validation, and byte-level determinism. Each case shells out to the
// real binary.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  std::string path = "cli_out_" + std::to_string(counter++) + ".txt";
  std::string cmd = std::string(ETWIST_CLI_PATH) + " " + args + " > " + path +
                    " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(path, std::ios::binary);
  std::ostringstream buf;
  buf << is.rdbuf();
  r.output = buf.str();
  std::remove(path.c_str());
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("euler tables") {
  SECTION("classical numbers as json") {
    auto r = run_cli("euler --nmax 5");
    CHECK(r.exit_code == 0);
    // E_0..E_5 = 1, -1/2, 0, 1/4, 0, -1/2
    CHECK(contains(r.output, "\"1/1\""));
    CHECK(contains(r.output, "\"-1/2\""));
    CHECK(contains(r.output, "\"1/4\""));
    CHECK(contains(r.output, "\"modulus\": 1"));
  }

  SECTION("table format") {
    auto r = run_cli("--format table euler --nmax 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "-1/2"));
    CHECK(contains(r.output, "1/4"));
  }

  SECTION("evaluation point") {
    auto r = run_cli("--format table euler --nmax 2 --x 1/2");
    CHECK(r.exit_code == 0);
    // E_1(1/2) = 0, E_2(1/2) = -1/4
    CHECK(contains(r.output, "0/1"));
    CHECK(contains(r.output, "-1/4"));
  }

  SECTION("coefficient listing") {
    auto r = run_cli("euler --nmax 2 --coeffs");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "polynomials"));
  }

  SECTION("even d is invalid input") {
    auto r = run_cli("euler --d 2");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "odd"));
  }

  SECTION("character index out of range") {
    auto r = run_cli("euler --d 3 --char 5");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "out of range"));
  }

  SECTION("even p is invalid") {
    auto r = run_cli("euler --p 4");
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("power sums") {
  SECTION("classical T_k(2) table") {
    auto r = run_cli("--format table powersum --kmax 3 --limit 2");
    CHECK(r.exit_code == 0);
    // 1, 1, 3, 7
    CHECK(contains(r.output, "3/1"));
    CHECK(contains(r.output, "7/1"));
  }

  SECTION("quadratic character") {
    auto r = run_cli("--format table powersum --d 3 --char 1 --kmax 1 --limit 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "-3/1"));  // T_1(2) = -3
  }
}

TEST_CASE("verification") {
  SECTION("single identity grid proof passes") {
    auto r = run_cli("verify --theorem 8 --w 1,1,1 --n 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"pass\": true"));
  }

  SECTION("parity hypothesis violation is invalid input") {
    auto r = run_cli("verify --theorem 2 --w 1,2,3");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "odd"));
  }

  SECTION("mixed weights are accepted where allowed") {
    auto r = run_cli("verify --theorem 1 --w 1,2,3 --n 1");
    CHECK(r.exit_code == 0);
  }

  SECTION("explicit y instance with twisted context") {
    auto r = run_cli(
        "verify --theorem 4 --p 3 --s 1 --d 3 --char 1 --xi 1 --w 1,3,5 "
        "--n 2 --y 1/2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"pass\": true"));
  }

  SECTION("strict fifth-identity display diverges on the witness") {
    auto r = run_cli(
        "verify --theorem 5 --theorem5-literal --p 3 --s 1 --d 1 --xi 1 "
        "--w 1,3,5 --n 0 --y 0");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.output, "\"pass\": false"));
  }

  SECTION("dedup comparisons") {
    auto r = run_cli("verify --theorem 4 --dedup --w 1,3,5 --n 1");
    CHECK(r.exit_code == 0);
  }

  SECTION("random instance mode is seeded") {
    auto a = run_cli("verify --theorem 7 --w 1,2,3 --n 2 --random 3 --seed 9");
    auto b = run_cli("verify --theorem 7 --w 1,2,3 --n 2 --random 3 --seed 9");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
  }

  SECTION("unknown battery preset") {
    auto r = run_cli("verify --battery fast");
    CHECK(r.exit_code == 2);
  }

  SECTION("bad theorem id") {
    auto r = run_cli("verify --theorem 9");
    CHECK(r.exit_code == 2);
  }

  SECTION("lambda series check") {
    auto r = run_cli("verify --lambda --order 3 --format table");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "PASS"));
  }
}

TEST_CASE("convergence diagnostic") {
  SECTION("classical monomial gains one digit per level") {
    auto r = run_cli("--format table converge --n 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "N=1  v = 1/1"));
    CHECK(contains(r.output, "N=4  v = 4/1"));
  }

  SECTION("json rows") {
    auto r = run_cli("converge --n 0 --levels 1,2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "\"inf\""));
  }

  SECTION("non-p-power character order is invalid input") {
    auto r = run_cli("converge --d 3 --char 1 --n 1");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "p-power"));
  }
}

TEST_CASE("output plumbing") {
  SECTION("identical runs are byte-identical") {
    auto a = run_cli("euler --nmax 8 --p 5 --s 1 --xi 1");
    auto b = run_cli("euler --nmax 8 --p 5 --s 1 --xi 1");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK_FALSE(a.output.empty());
  }

  SECTION("--out writes the same bytes to a file") {
    std::string path = "cli_file_out.json";
    auto direct = run_cli("powersum --kmax 2");
    auto filed = run_cli("--out " + path + " powersum --kmax 2");
    CHECK(filed.exit_code == 0);
    std::ifstream is(path, std::ios::binary);
    std::ostringstream buf;
    buf << is.rdbuf();
    CHECK(buf.str() == direct.output);
    std::remove(path.c_str());
  }

  SECTION("missing subcommand is a usage error") {
    auto r = run_cli("");
    CHECK(r.exit_code == 2);
  }

  SECTION("help exits cleanly") {
    auto r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "euler"));
  }
}

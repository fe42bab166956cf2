// End-to-end tests of the command-line tool: spawns the built binary and
// checks output text, JSON, exit codes, and determinism.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "coleman/padic.hpp"

namespace {

std::string g_binary;
std::string g_data;

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = g_binary + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  int rc = pclose(pipe);
  r.status = WEXITSTATUS(rc);
  return r;
}

}  // namespace

TEST_CASE("validate") {
  RunResult ok = run("validate --curve " + g_data + "/example1.json");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("genus 2") != std::string::npos);

  RunResult bad = run("validate --curve " + g_data + "/bad_reduction.json");
  CHECK(bad.status != 0);
  CHECK(bad.out.find("error: BAD_REDUCTION") == 0);
  CHECK(bad.out.find('\n') == bad.out.size() - 1);  // single line
}

TEST_CASE("integrate-basis golden output") {
  std::string cmd = "integrate-basis --curve " + g_data +
                    "/example1.json --from \"(-1,1)\" --to \"(0,1/4)\"";
  RunResult r = run(cmd);
  CHECK(r.status == 0);
  CHECK(r.out.find("w0: O(11^6)\n") != std::string::npos);
  CHECK(r.out.find("w1: O(11^6)\n") != std::string::npos);
  CHECK(r.out.find("w2: 7*11 + 6*11^2 + 3*11^3 + 11^4 + 5*11^5 + O(11^6)\n") !=
        std::string::npos);

  // Deterministic pipeline: identical invocations are bit-identical.
  RunResult again = run(cmd);
  CHECK(again.out == r.out);

  // The Teichmuller variant agrees.
  RunResult teich = run(cmd + " --teichmuller");
  CHECK(teich.status == 0);
  CHECK(teich.out.find("w2: 7*11 + 6*11^2 + 3*11^3 + 11^4 + 5*11^5 + O(11^6)") !=
        std::string::npos);
}

TEST_CASE("json output carries the same numbers") {
  std::string base = "integrate-basis --curve " + g_data +
                     "/example1.json --from \"(-1,1)\" --to \"(0,1/4)\"";
  RunResult text = run(base);
  RunResult js = run(base + " --json");
  CHECK(js.status == 0);
  auto doc = nlohmann::json::parse(js.out);
  REQUIRE(doc.contains("values"));
  REQUIRE(doc["values"].size() == 4);
  for (const auto& v : doc["values"]) {
    std::string s = v.get<std::string>();
    CHECK(text.out.find(s) != std::string::npos);
    // Every emitted number round-trips through the parser.
    coleman::Padic parsed = coleman::Padic::parse(s, 11);
    CHECK(parsed.str() == s);
  }
  CHECK(doc["audited_prec"].get<long>() >= 6);
}

TEST_CASE("integrate from infinity") {
  RunResult r = run("integrate --curve " + g_data +
                    "/example2.json --from inf --to \"(3,6)\" --coeffs "
                    "\"1,0,0,0\"");
  CHECK(r.status == 0);
  CHECK(r.out.find("integral: 6*7 + 6*7^2 + 3*7^3 + 3*7^4 + 2*7^5 + O(7^6)") !=
        std::string::npos);

  RunResult rb = run("integrate --curve " + g_data +
                     "/example2.json --from inf --to \"(3,6)\" --coeffs "
                     "\"0,1,0,0\"");
  CHECK(rb.out.find("integral: 4*7 + 2*7^2 + 6*7^3 + 4*7^5 + O(7^6)") !=
        std::string::npos);

  // w2 has a pole at infinity.
  RunResult bad = run("integrate --curve " + g_data +
                      "/example2.json --from inf --to \"(3,6)\" --coeffs "
                      "\"0,0,1,0\"");
  CHECK(bad.status != 0);
  CHECK(bad.out.find("error: POLE_AT_ENDPOINT") == 0);
}

TEST_CASE("tiny subcommand") {
  // (3, 6) and its Frobenius transport land in one disc; use a nearby point.
  RunResult r = run("tiny --curve " + g_data +
                    "/example2.json --from \"(3,6)\" --to \"(10,120)\"");
  // x = 10 = 3 (mod 7) but y = 120 = 1 (mod 7) vs 6: different disc, error.
  CHECK(r.status != 0);
  CHECK(r.out.find("error: DISC_MISMATCH") == 0);

  RunResult ok = run("tiny --curve " + g_data +
                     "/example2.json --from \"(3,-6)\" --to \"(10,120)\"");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("w0:") != std::string::npos);

  RunResult combo = run("tiny --curve " + g_data +
                        "/example2.json --from \"(3,-6)\" --to \"(10,120)\" "
                        "--coeffs \"1,2,0,0\"");
  CHECK(combo.status == 0);
  CHECK(combo.out.find("integral:") != std::string::npos);
}

TEST_CASE("teichmuller subcommand") {
  RunResult r = run("teichmuller --curve " + g_data +
                    "/example2.json --point \"(3,6)\"");
  CHECK(r.status == 0);
  // Teichmuller x over residue 3 at p=7 starts 3 + 4*7 + 6*7^2.
  CHECK(r.out.find("x: 3 + 4*7 + 6*7^2") != std::string::npos);

  RunResult off = run("teichmuller --curve " + g_data +
                      "/example2.json --point \"(3,5)\"");
  CHECK(off.status != 0);
  CHECK(off.out.find("error: NOT_ON_CURVE") == 0);
}

TEST_CASE("frobenius and zeta-numerator") {
  RunResult fr = run("frobenius --curve " + g_data + "/example2.json --json");
  CHECK(fr.status == 0);
  auto doc = nlohmann::json::parse(fr.out);
  CHECK(doc["matrix"].size() == 4);
  CHECK(doc["certified_prec"].get<long>() >= 8);
  for (const auto& row : doc["matrix"])
    for (const auto& entry : row) {
      std::string s = entry.get<std::string>();
      CHECK(coleman::Padic::parse(s, 7).str() == s);
    }

  RunResult z = run("zeta-numerator --curve " + g_data + "/example2.json");
  CHECK(z.status == 0);
  CHECK(z.out.find("T^0: 1 + O(") != std::string::npos);
  // Trace of Frobenius is 0 here, so the T^1 hint is 0.
  CHECK(z.out.find("T^1: O(") != std::string::npos);
}

TEST_CASE("digit-expansion point coordinates") {
  // y = 120 = 1 + 3*7 + 2*7^2: a coordinate given to only 3 digits bounds
  // the audited precision; with --digits 2 the run succeeds.
  std::string pt = "\"(10, 1 + 3*7 + 2*7^2 + O(7^3))\"";
  RunResult lo = run("integrate-basis --curve " + g_data +
                     "/example2.json --digits 2 --from \"(3,-6)\" --to " + pt);
  CHECK(lo.status == 0);
  CHECK(lo.out.find("w0:") != std::string::npos);

  // At the default 6 digits the same endpoint cannot be audited that far.
  RunResult hi = run("integrate-basis --curve " + g_data +
                     "/example2.json --from \"(3,-6)\" --to " + pt);
  CHECK(hi.status != 0);
  CHECK(hi.out.find("error: INSUFFICIENT_PRECISION") == 0);
  CHECK(hi.out.find("--digits") != std::string::npos);
}

TEST_CASE("malformed inputs") {
  RunResult r = run("validate --curve /nonexistent.json");
  CHECK(r.status != 0);
  CHECK(r.out.find("error: MALFORMED_FILE") == 0);

  RunResult bp = run("integrate-basis --curve " + g_data +
                     "/example1.json --from \"(-1\" --to \"(0,1/4)\"");
  CHECK(bp.status != 0);
  CHECK(bp.out.find("error: PARSE_ERROR") == 0);
}

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: test_cli <coleman-binary> <data-dir>\n");
    return 2;
  }
  g_binary = argv[1];
  g_data = argv[2];
  doctest::Context ctx;
  return ctx.run();
}

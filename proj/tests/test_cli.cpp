#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <cdlevel/serialize.hpp>

using namespace cdlevel;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(CDLEVEL_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const char* kGoldenTable =
    "*   1   f2     f3     f4      f5    f6       f7      f8\n"
    "1   1   f2     f3     f4      f5    f6       f7      f8\n"
    "f2  f2  a      f4     a*f3    f6    a*f5     -f8     -a*f7\n"
    "f3  f3  -f4    b      -b*f2   f7    f8       b*f5    b*f6\n"
    "f4  f4  -a*f3  b*f2   -a*b    f8    a*f7     -b*f6   -a*b*f5\n"
    "f5  f5  -f6    -f7    -f8     g     -g*f2    -g*f3   -g*f4\n"
    "f6  f6  -a*f5  -f8    -a*f7   g*f2  -a*g     g*f4    a*g*f3\n"
    "f7  f7  f8     -b*f5  b*f6    g*f3  -g*f4    -b*g    -b*g*f2\n"
    "f8  f8  a*f7   -b*f6  a*b*f5  g*f4  -a*g*f3  b*g*f2  a*b*g\n";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("table text reproduces the golden layout") {
  auto r = run_cli("table --field \"ratfunc(q;a,b,g)\" --alphas \"a,b,g\" --format text");
  CHECK(r.exit_code == 0);
  CHECK(r.out == kGoldenTable);
}

TEST_CASE("table json carries all entries") {
  auto r = run_cli("table --field fp:7 --alphas \"1,1\"");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("dim") == 4);
  CHECK(j.at("entries").size() == 4);
  CHECK(j.at("entries")[1][2].at("k") == 4);  // f2 f3 = f4
  CHECK(j.at("entries")[1][2].at("coeff") == "1");
}

TEST_CASE("forms output round-trips through the documented schema") {
  auto r = run_cli("forms norm --field \"ratfunc(q;a,b,g)\" --alphas \"a,b,g\"");
  REQUIRE(r.exit_code == 0);
  DiagonalForm f = form_from_json(Json::parse(r.out));
  CHECK(f.rank() == 8);
  auto pf = run_cli("pfister --field \"ratfunc(q;a,b,g)\" --gens \"-a,-b,-g\"");
  REQUIRE(pf.exit_code == 0);
  DiagonalForm g = form_from_json(Json::parse(pf.out));
  CHECK(f.coeffs == g.coeffs);
}

TEST_CASE("isotropy verdict and exit codes") {
  auto r = run_cli("isotropy --field fp:7 --coeffs \"1,4\"");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("verdict") == "anisotropic");
  CHECK(j.at("certificate") == "exhaustive");

  auto r2 = run_cli("isotropy --field q --coeffs \"1,-1\"");
  REQUIRE(r2.exit_code == 0);
  Json j2 = Json::parse(r2.out);
  CHECK(j2.at("verdict") == "isotropic");
  // Witness coordinates parse back and really annihilate the form.
  DiagonalForm f = form_from_json(j2.at("form"));
  std::vector<Element> w;
  for (const auto& c : j2.at("witness")) w.push_back(f.ctx->parse(c.get<std::string>()));
  CHECK(f.ctx->is_zero(evaluate(f, w)));

  // Budget-limited unknown exits with 2 and echoes the budget, which
  // round-trips through its schema.
  auto r3 = run_cli("isotropy --field q --coeffs \"1,1,-7\" --trials 100");
  CHECK(r3.exit_code == 2);
  Json j3 = Json::parse(r3.out);
  CHECK(j3.at("verdict") == "unknown");
  SearchBudget echoed = budget_from_json(j3.at("budget"));
  CHECK(echoed.trials == 100);
  CHECK(budget_json(echoed) == j3.at("budget"));
}

TEST_CASE("levels through the CLI") {
  auto r = run_cli("level algebra --field fp:7 --alphas \"4\"");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("level") == 2);

  auto rf = run_cli("level field --field fp:13");
  REQUIRE(rf.exit_code == 0);
  CHECK(Json::parse(rf.out).at("level") == 1);

  auto ri = run_cli("level field --field q");
  REQUIRE(ri.exit_code == 0);
  CHECK(Json::parse(ri.out).at("kind") == "infinite");

  auto rs = run_cli("sublevel algebra --field fp:7 --alphas \"1,1\"");
  REQUIRE(rs.exit_code == 0);
  CHECK(Json::parse(rs.out).at("level") == 1);
}

TEST_CASE("verify props reports no violations on a small sweep") {
  auto r = run_cli("verify props --primes 3,7 --tmax 1");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j.at("violations") == 0);
  CHECK(j.at("checks").size() > 0);

  // Output is independent of the worker count.
  auto r4 = run_cli("verify props --primes 3,7 --tmax 1 --jobs 4");
  CHECK(r4.out == r.out);
}

TEST_CASE("brown subcommands") {
  auto rb = run_cli("brown build --base fp:7 --levels 2");
  REQUIRE(rb.exit_code == 0);
  Json jb = Json::parse(rb.out);
  CHECK(jb.at("dim") == 4);
  CHECK(jb.at("field") == "ratfunc(fp:7;X1,X2)");

  auto rz = run_cli("brown zdsearch --base fp:7 --levels 1 --trials 300");
  CHECK(rz.exit_code == 2);
  CHECK(Json::parse(rz.out).at("outcome") == "none-within-budget");

  auto rz2 = run_cli("brown zdsearch --field fp:7 --alphas \"4\" --trials 300");
  REQUIRE(rz2.exit_code == 0);
  CHECK(Json::parse(rz2.out).at("outcome") == "found");

  auto rp = run_cli("brown parity --base fp:7 --levels 1 "
                    "--a3 \"3\" --b3 \"5\" --c3 \"2\" --d3 \"6\"");
  REQUIRE(rp.exit_code == 0);
  Json jp = Json::parse(rp.out);
  CHECK(jp.at("contradiction") == true);
  CHECK(jp.at("valuations").at("m") == 0);
  CHECK(jp.at("leading-checks").size() == 4);

  auto rr = run_cli("brown parity --base fp:7 --levels 2 --random 20");
  REQUIRE(rr.exit_code == 0);
  Json jr = Json::parse(rr.out);
  CHECK(jr.at("contradictions") == 20);
  CHECK(jr.at("all-leading-checks-nonzero") == true);

  auto rpres = run_cli("brown prescribed --base fp:7 --levels 2");
  REQUIRE(rpres.exit_code == 0);
  CHECK(Json::parse(rpres.out).at("level").at("level") == 2);
}

TEST_CASE("usage and domain errors exit with 1") {
  CHECK(run_cli("nonsense").exit_code == 1);
  CHECK(run_cli("isotropy --field fp:7").exit_code == 1);       // missing --coeffs
  CHECK(run_cli("isotropy --field fp:6 --coeffs 1").exit_code == 1);
  CHECK(run_cli("level algebra --field fp:7 --alphas \"0\"").exit_code == 1);
  CHECK(run_cli("table --field \"ratfunc(q;X1,X1)\" --alphas X1").exit_code == 1);
}

TEST_CASE("byte-identical output across repeated runs") {
  const char* cmds[] = {
      "table --field \"ratfunc(q;a,b,g)\" --alphas \"a,b,g\" --format text",
      "isotropy --field fp:7 --coeffs \"1,4\"",
      "level algebra --field fp:7 --alphas \"4\"",
      "verify props --primes 3 --tmax 1",
      "brown zdsearch --base fp:7 --levels 1 --trials 200",
      "brown parity --base fp:7 --levels 2 --random 10",
  };
  for (const char* cmd : cmds) {
    auto r1 = run_cli(cmd);
    auto r2 = run_cli(cmd);
    CHECK(r1.exit_code == r2.exit_code);
    CHECK(r1.out == r2.out);
  }
}

TEST_SUITE_END();

// End-to-end tests of the powsum2 binary: exact output records, exit codes,
// stream separation, environment handling, and determinism.  Every run goes
// through /bin/sh with stdout and stderr captured separately.
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using nlohmann::json;

extern std::string g_cli_path;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// env_prefix is a shell fragment like "POWERSUM_ORACLE_BUDGET=50 ".
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::string tag = std::to_string(::getpid()) + "." + std::to_string(counter++);
  const std::string out_path = "/tmp/powsum2_test_out." + tag;
  const std::string err_path = "/tmp/powsum2_test_err." + tag;

  const std::string cmd = env_prefix + g_cli_path + " " + args + " >" + out_path +
                          " 2>" + err_path;
  const int raw = std::system(cmd.c_str());

  RunResult r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

json parse_record(const std::string& out) {
  REQUIRE(!out.empty());
  REQUIRE(out.back() == '\n');
  const std::string line = out.substr(0, out.size() - 1);
  REQUIRE(line.find('\n') == std::string::npos);  // exactly one line
  return json::parse(line);
}

}  // namespace

TEST_CASE("cli: v2 emits a complete JSON record") {
  const RunResult r = run_cli("--json v2 40");
  CHECK(r.exit_code == 0);
  CHECK(r.err.empty());
  const json rec = parse_record(r.out);
  CHECK(rec["command"] == "v2");
  CHECK(rec["inputs"]["k"] == "40");
  CHECK(rec["result"]["finite"] == 3);
  CHECK(rec["status"] == "ok");
  CHECK(!rec.contains("error_detail"));
}

TEST_CASE("cli: v2 of zero reports the infinite valuation") {
  const json rec = parse_record(run_cli("--json v2 0").out);
  CHECK(rec["result"]["infinite"] == true);
}

TEST_CASE("cli: human rendering is stable key/value lines") {
  const RunResult r = run_cli("v2 40");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "command: v2\nk: 40\nresult: 3\nstatus: ok\n");
}

TEST_CASE("cli: sum picks the oracle for small m and doubling for huge m") {
  const json small = parse_record(run_cli("--json sum 100 1").out);
  CHECK(small["inputs"]["method"] == "oracle");
  CHECK(small["result"] == "5050");

  const std::string huge = "123456789123456789123456789";
  const json big = parse_record(run_cli("--json sum " + huge + " 2").out);
  CHECK(big["inputs"]["method"] == "doubling");
  // S_2(m) = m(m+1)(2m+1)/6, computed independently for the check.
  CHECK(big["result"] ==
        "627225459144727995851530616486746316735691360606036255314010096547562515970415");
}

TEST_CASE("cli: explicit methods agree with each other") {
  const json a = parse_record(run_cli("--json sum 2000 7 --method oracle").out);
  const json b = parse_record(run_cli("--json sum 2000 7 --method doubling").out);
  CHECK(a["result"] == b["result"]);
}

TEST_CASE("cli: v2sum all reports per-method values and agreement") {
  const json rec = parse_record(run_cli("--json v2sum 40 3").out);
  CHECK(rec["result"]["valuation"]["finite"] == 4);
  CHECK(rec["result"]["methods"]["formula"]["finite"] == 4);
  CHECK(rec["result"]["methods"]["modular"]["finite"] == 4);
  CHECK(rec["result"]["methods"]["oracle"]["finite"] == 4);
  CHECK(rec["result"]["agree"] == true);
}

TEST_CASE("cli: v2sum all omits the oracle beyond its budget") {
  const json rec = parse_record(run_cli("--json v2sum 12345678901234567890 4").out);
  CHECK(rec["status"] == "ok");
  CHECK(rec["result"]["methods"].contains("formula"));
  CHECK(rec["result"]["methods"].contains("modular"));
  CHECK(!rec["result"]["methods"].contains("oracle"));
  CHECK(rec["result"]["agree"] == true);
}

TEST_CASE("cli: moser check spot values") {
  const json yes = parse_record(run_cli("--json moser check 3 1 1").out);
  CHECK(yes["result"] == true);
  const json no = parse_record(run_cli("--json moser check 4 2 1").out);
  CHECK(no["result"] == false);
}

TEST_CASE("cli: moser search lists the trivial family in order") {
  const json rec = parse_record(run_cli("--json moser search 10 1").out);
  const json& cands = rec["result"]["candidates"];
  REQUIRE(cands.size() == 4);
  CHECK(cands[0] == json({{"m", "3"}, {"n", 1}, {"a", "1"}}));
  CHECK(cands[3] == json({{"m", "9"}, {"n", 1}, {"a", "4"}}));
  CHECK(rec["result"]["count"] == 4);
  CHECK(rec["result"]["all_m_odd"] == true);
}

TEST_CASE("cli: moser obstruction report") {
  const json rec = parse_record(run_cli("--json moser obstruction 8 3").out);
  CHECK(rec["result"]["d"] == 3);
  CHECK(rec["result"]["needed"] == 9);
  CHECK(rec["result"]["available"] == 4);
  CHECK(rec["result"]["blocked"] == true);
}

TEST_CASE("cli: sweep-verify clean run") {
  const RunResult r = run_cli("--json sweep-verify 32 6");
  CHECK(r.exit_code == 0);
  const json rec = parse_record(r.out);
  CHECK(rec["result"]["checked"] == 192);
  CHECK(rec["result"]["discrepancies"] == 0);
}

TEST_CASE("cli: exit 2 on malformed and out-of-domain input") {
  CHECK(run_cli("--json v2 abc").exit_code == 2);
  CHECK(run_cli("--json v2 -- -5").exit_code == 2);
  CHECK(run_cli("--json sum 10 0").exit_code == 2);
  CHECK(run_cli("--json moser check 1 1 1").exit_code == 2);
  CHECK(run_cli("--json moser obstruction 7 2").exit_code == 2);
  CHECK(run_cli("--json nonsense 1 2").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);

  const RunResult r = run_cli("--json v2 abc");
  const json rec = parse_record(r.out);
  CHECK(rec["status"] == "error");
  CHECK(rec["error_detail"].get<std::string>().find("k") != std::string::npos);
  CHECK(!r.err.empty());
}

TEST_CASE("cli: exit 3 when the oracle budget is exceeded") {
  const RunResult r =
      run_cli("--json sum 2000000 3 --method oracle --oracle-budget 1000");
  CHECK(r.exit_code == 3);
  const json rec = parse_record(r.out);
  CHECK(rec["status"] == "error");
}

TEST_CASE("cli: exit 4 at the modular precision ceiling") {
  const RunResult r =
      run_cli("--json v2sum 1024 3 --method modular --max-precision-bits 16");
  CHECK(r.exit_code == 4);
  const json rec = parse_record(r.out);
  CHECK(rec["status"] == "error");
}

TEST_CASE("cli: exit 5 when the sweep detects a corrupted formula") {
  const RunResult r = run_cli("--json sweep-verify 8 3 --formula-bias 1");
  CHECK(r.exit_code == 5);
  const json rec = parse_record(r.out);
  CHECK(rec["status"] == "error");
  CHECK(rec["result"]["discrepancies"] == 24);
  CHECK(rec["result"]["first"]["m"] == 1);
  CHECK(rec["result"]["first"]["n"] == 1);
}

TEST_CASE("cli: environment variables configure the budget and ceiling") {
  CHECK(run_cli("--json sum 100 1 --method oracle",
                "POWERSUM_ORACLE_BUDGET=50 ").exit_code == 3);
  // An explicit flag wins over the environment.
  CHECK(run_cli("--json sum 100 1 --method oracle --oracle-budget 200",
                "POWERSUM_ORACLE_BUDGET=50 ").exit_code == 0);
  CHECK(run_cli("--json v2sum 1024 3 --method modular",
                "POWERSUM_MAX_PRECISION_BITS=16 ").exit_code == 4);
  // Malformed environment values are a configuration error, not a crash.
  CHECK(run_cli("--json sum 100 1", "POWERSUM_ORACLE_BUDGET=banana ").exit_code == 2);
}

TEST_CASE("cli: repeated and threaded runs are byte-identical") {
  const std::string invocations[] = {
      "--json v2sum 94837 13",
      "--json moser search 64 4",
      "--json sweep-verify 24 5",
  };
  for (const std::string& args : invocations) {
    const RunResult first = run_cli(args);
    const RunResult again = run_cli(args);
    CHECK(first.out == again.out);
    CHECK(first.exit_code == again.exit_code);
  }
  CHECK(run_cli("--json moser search 64 4 --jobs 3").out ==
        run_cli("--json moser search 64 4").out);
  CHECK(run_cli("--json sweep-verify 24 5 --jobs 4").out ==
        run_cli("--json sweep-verify 24 5").out);
}

TEST_CASE("cli: success keeps stderr silent, failure writes a diagnostic") {
  const RunResult ok = run_cli("--json sum 10 2");
  CHECK(ok.err.empty());
  CHECK(ok.exit_code == 0);
  const RunResult bad = run_cli("--json v2 zzz");
  CHECK(!bad.err.empty());
}

// powsum2: exact 2-adic valuations of power sums, and a bounded search over
// the generalized Erdos-Moser equation 1^n + ... + (m-1)^n = a * m^n.
//
// One invocation performs one computation and writes exactly one output
// record to stdout (single-line JSON with --json, key/value lines otherwise).
// Diagnostics go to stderr.  Exit codes are part of the contract:
//   0  success
//   2  malformed input (unparsable numbers, out-of-domain arguments)
//   3  oracle budget exceeded
//   4  modular precision ceiling reached
//   5  mathematical discrepancy between methods that must agree
#include <CLI11.hpp>
#include <json.hpp>

#include "powsum2/errors.hpp"
#include "powsum2/moser.hpp"
#include "powsum2/nat.hpp"
#include "powsum2/powersum.hpp"
#include "powsum2/sweep.hpp"
#include "powsum2/valuation.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::ordered_json;
using namespace powsum2;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitPrecision = 4;
constexpr int kExitDiscrepancy = 5;

// Oracle use above this size is never automatic; explicit method=oracle may
// still go further, up to the configured budget.
constexpr std::uint64_t kAutoOracleCutoff = 65536;

// The output record accumulates both renderings as the command runs, so the
// error path can still report whatever inputs were already bound.
struct Record {
  std::string command;
  ordered_json inputs = ordered_json::object();
  ordered_json result;
  bool has_result = false;
  std::vector<std::string> lines;  // human rendering of the result
  std::string status = "ok";
  std::string error_detail;
};

struct Config {
  bool json = false;
  unsigned jobs = 1;
  std::optional<std::uint64_t> budget_flag;
  std::optional<std::uint64_t> max_bits_flag;
};

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  const auto parsed = Nat::parse(raw);
  if (!parsed || !parsed->fits_u64()) {
    throw std::invalid_argument(std::string(name) +
                                ": expected a nonnegative 64-bit integer, got \"" + raw + "\"");
  }
  return parsed->to_u64();
}

// Flag beats environment beats compiled default.
std::uint64_t effective_budget(const Config& cfg) {
  if (cfg.budget_flag) return *cfg.budget_flag;
  return env_u64("POWERSUM_ORACLE_BUDGET", kDefaultOracleBudget);
}

std::uint64_t effective_max_bits(const Config& cfg) {
  if (cfg.max_bits_flag) return *cfg.max_bits_flag;
  return env_u64("POWERSUM_MAX_PRECISION_BITS", kDefaultMaxPrecisionBits);
}

Nat parse_nat_arg(const std::string& text, const std::string& name) {
  const auto parsed = Nat::parse(text);
  if (!parsed) {
    throw std::invalid_argument(name + ": expected a nonnegative decimal integer, got \"" +
                                text + "\"");
  }
  return *parsed;
}

void add_input(Record& rec, const std::string& name, const std::string& value) {
  rec.inputs[name] = value;
  rec.lines.push_back(name + ": " + value);
}

void add_input(Record& rec, const std::string& name, std::uint64_t value) {
  add_input(rec, name, std::to_string(value));
}

ordered_json valuation_json(const Valuation& v) {
  if (v.is_finite()) return ordered_json{{"finite", v.value()}};
  return ordered_json{{"infinite", true}};
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

void emit(const Record& rec, bool as_json) {
  if (as_json) {
    ordered_json out;
    out["command"] = rec.command;
    out["inputs"] = rec.inputs;
    if (rec.has_result) out["result"] = rec.result;
    out["status"] = rec.status;
    if (rec.status != "ok") out["error_detail"] = rec.error_detail;
    std::cout << out.dump() << "\n";
    return;
  }
  std::cout << "command: " << rec.command << "\n";
  for (const auto& line : rec.lines) std::cout << line << "\n";
  std::cout << "status: " << rec.status << "\n";
  if (rec.status != "ok") std::cout << "error: " << rec.error_detail << "\n";
}

// ---- command handlers ----------------------------------------------------
// Each handler binds its inputs into the record before computing, then fills
// result + human lines.  It returns the exit code so data-driven failures
// (disagreements found without an exception) can map to exit 5.

struct V2Args {
  std::string k;
};

int run_v2(const V2Args& args, const Config&, Record& rec) {
  rec.command = "v2";
  add_input(rec, "k", args.k);
  const Nat k = parse_nat_arg(args.k, "k");
  const Valuation v = v2(k);
  rec.result = valuation_json(v);
  rec.has_result = true;
  rec.lines.push_back("result: " + v.str());
  return kExitOk;
}

struct SumArgs {
  std::string m;
  std::uint64_t n = 1;
  std::string method = "auto";
};

int run_sum(const SumArgs& args, const Config& cfg, Record& rec) {
  rec.command = "sum";
  add_input(rec, "m", args.m);
  add_input(rec, "n", args.n);
  const Nat m = parse_nat_arg(args.m, "m");
  const std::uint64_t budget = effective_budget(cfg);

  std::string method = args.method;
  if (method == "auto") {
    const bool small = m.fits_u64() && m.to_u64() <= kAutoOracleCutoff && m.to_u64() <= budget;
    method = small ? "oracle" : "doubling";
  }
  add_input(rec, "method", method);

  const Nat total = method == "oracle" ? oracle_sum(m, args.n, budget) : doubling_sum(m, args.n);
  rec.result = total.str();
  rec.has_result = true;
  rec.lines.push_back("result: " + total.str());
  return kExitOk;
}

struct V2SumArgs {
  std::string m;
  std::uint64_t n = 1;
  std::string method = "all";
};

int run_v2sum(const V2SumArgs& args, const Config& cfg, Record& rec) {
  rec.command = "v2sum";
  add_input(rec, "m", args.m);
  add_input(rec, "n", args.n);
  add_input(rec, "method", args.method);
  const Nat m = parse_nat_arg(args.m, "m");
  const std::uint64_t budget = effective_budget(cfg);
  const std::uint64_t max_bits = effective_max_bits(cfg);

  if (args.method == "formula") {
    const Valuation v = v2_closed_form(m, args.n);
    rec.result = valuation_json(v);
    rec.has_result = true;
    rec.lines.push_back("result: " + v.str());
    return kExitOk;
  }
  if (args.method == "modular") {
    const Valuation v = v2_modular(m, args.n, max_bits);
    rec.result = valuation_json(v);
    rec.has_result = true;
    rec.lines.push_back("result: " + v.str());
    return kExitOk;
  }
  if (args.method == "oracle") {
    const Valuation v = v2(oracle_sum(m, args.n, budget));
    rec.result = valuation_json(v);
    rec.has_result = true;
    rec.lines.push_back("result: " + v.str());
    return kExitOk;
  }

  // method == "all": run every method applicable to these inputs and demand
  // full agreement.  The oracle only participates when m is inside budget.
  std::vector<std::pair<std::string, Valuation>> answers;
  answers.emplace_back("formula", v2_closed_form(m, args.n));
  answers.emplace_back("modular", v2_modular(m, args.n, max_bits));
  if (m.fits_u64() && m.to_u64() <= budget) {
    answers.emplace_back("oracle", v2(oracle_sum(m, args.n, budget)));
  }

  bool agree = true;
  for (const auto& [name, v] : answers) {
    if (!(v == answers.front().second)) agree = false;
  }

  ordered_json methods = ordered_json::object();
  std::string methods_line = "methods:";
  for (const auto& [name, v] : answers) {
    methods[name] = valuation_json(v);
    methods_line += " " + name + "=" + v.str();
  }

  ordered_json result;
  if (agree) result["valuation"] = valuation_json(answers.front().second);
  result["methods"] = methods;
  result["agree"] = agree;
  rec.result = result;
  rec.has_result = true;
  if (agree) rec.lines.push_back("result: " + answers.front().second.str());
  rec.lines.push_back(methods_line);
  rec.lines.push_back("agree: " + bool_str(agree));

  if (!agree) {
    rec.status = "error";
    rec.error_detail = "methods disagree at m=" + m.str() + " n=" + std::to_string(args.n) +
                       " (" + methods_line + ")";
    return kExitDiscrepancy;
  }
  return kExitOk;
}

struct SweepArgs {
  std::uint64_t m_max = 1;
  std::uint64_t n_max = 1;
  std::int64_t formula_bias = 0;
};

int run_sweep(const SweepArgs& args, const Config& cfg, Record& rec) {
  rec.command = "sweep-verify";
  add_input(rec, "m_max", args.m_max);
  add_input(rec, "n_max", args.n_max);
  if (args.m_max < 1 || args.n_max < 1) {
    throw std::invalid_argument("sweep-verify: m_max and n_max must be >= 1");
  }

  SweepOptions opts;
  opts.jobs = cfg.jobs;
  opts.budget = effective_budget(cfg);
  opts.max_precision_bits = effective_max_bits(cfg);
  opts.formula_bias = args.formula_bias;
  const SweepReport report = sweep_verify(args.m_max, args.n_max, opts);

  ordered_json result;
  result["checked"] = report.checked;
  result["discrepancies"] = report.discrepancies;
  rec.lines.push_back("checked: " + std::to_string(report.checked));
  rec.lines.push_back("discrepancies: " + std::to_string(report.discrepancies));
  if (report.first) {
    ordered_json first;
    first["m"] = report.first->m;
    first["n"] = report.first->n;
    first["detail"] = report.first->detail;
    result["first"] = first;
    rec.lines.push_back("first: m=" + std::to_string(report.first->m) +
                        " n=" + std::to_string(report.first->n) + " " + report.first->detail);
  }
  rec.result = result;
  rec.has_result = true;

  if (report.discrepancies != 0) {
    rec.status = "error";
    rec.error_detail = "sweep found " + std::to_string(report.discrepancies) +
                       " discrepancies; first at m=" + std::to_string(report.first->m) +
                       " n=" + std::to_string(report.first->n) + ": " + report.first->detail;
    return kExitDiscrepancy;
  }
  return kExitOk;
}

struct MoserCheckArgs {
  std::string m;
  std::uint64_t n = 1;
  std::string a;
};

int run_moser_check(const MoserCheckArgs& args, const Config& cfg, Record& rec) {
  rec.command = "moser check";
  add_input(rec, "m", args.m);
  add_input(rec, "n", args.n);
  add_input(rec, "a", args.a);
  MoserCandidate cand;
  cand.m = parse_nat_arg(args.m, "m");
  cand.n = args.n;
  cand.a = parse_nat_arg(args.a, "a");
  const bool ok = check_candidate(cand, effective_budget(cfg));
  rec.result = ok;
  rec.has_result = true;
  rec.lines.push_back("result: " + bool_str(ok));
  return kExitOk;
}

struct MoserSearchArgs {
  std::string m_max;
  std::uint64_t n_max = 1;
  bool verify_pruning = false;
};

int run_moser_search(const MoserSearchArgs& args, const Config& cfg, Record& rec) {
  rec.command = "moser search";
  add_input(rec, "m_max", args.m_max);
  add_input(rec, "n_max", args.n_max);
  const Nat m_max = parse_nat_arg(args.m_max, "m_max");

  SearchOptions opts;
  opts.budget = effective_budget(cfg);
  opts.verify_pruning = args.verify_pruning;
  opts.jobs = cfg.jobs;
  const std::vector<MoserCandidate> found = search(m_max, args.n_max, opts);

  bool all_m_odd = true;
  ordered_json list = ordered_json::array();
  for (const auto& cand : found) {
    ordered_json item;
    item["m"] = cand.m.str();
    item["n"] = cand.n;
    item["a"] = cand.a.str();
    list.push_back(item);
    if (cand.m.even()) all_m_odd = false;
  }
  ordered_json result;
  result["candidates"] = list;
  result["count"] = found.size();
  result["all_m_odd"] = all_m_odd;
  rec.result = result;
  rec.has_result = true;

  rec.lines.push_back("count: " + std::to_string(found.size()));
  for (const auto& cand : found) {
    rec.lines.push_back("m=" + cand.m.str() + " n=" + std::to_string(cand.n) +
                        " a=" + cand.a.str());
  }
  rec.lines.push_back("all_m_odd: " + bool_str(all_m_odd));
  return kExitOk;
}

struct MoserObstructionArgs {
  std::string m;
  std::uint64_t n = 2;
};

int run_moser_obstruction(const MoserObstructionArgs& args, const Config&, Record& rec) {
  rec.command = "moser obstruction";
  add_input(rec, "m", args.m);
  add_input(rec, "n", args.n);
  const Nat m = parse_nat_arg(args.m, "m");
  const ObstructionReport report = parity_obstruction(m, args.n);

  ordered_json result;
  result["d"] = report.d;
  result["needed"] = report.needed;
  result["available"] = report.available;
  result["blocked"] = report.blocked;
  rec.result = result;
  rec.has_result = true;
  rec.lines.push_back("d: " + std::to_string(report.d));
  rec.lines.push_back("needed: " + std::to_string(report.needed));
  rec.lines.push_back("available: " + std::to_string(report.available));
  rec.lines.push_back("blocked: " + bool_str(report.blocked));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact 2-adic valuations of power sums S_n(m) = 1^n + 2^n + ... + m^n"};
  app.footer("Environment:\n"
             "  POWERSUM_ORACLE_BUDGET      largest m the brute-force oracle accepts\n"
             "                              (default 10000000; --oracle-budget wins)\n"
             "  POWERSUM_MAX_PRECISION_BITS modular precision ceiling in bits\n"
             "                              (default 4096; --max-precision-bits wins)");
  app.set_version_flag("--version", "powsum2 1.0.0");
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  app.add_flag("--json", cfg.json, "Emit the output record as single-line JSON");
  app.add_option("--jobs", cfg.jobs, "Worker threads for sweeps and searches")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--oracle-budget", cfg.budget_flag,
                 "Largest m the brute-force oracle accepts");
  app.add_option("--max-precision-bits", cfg.max_bits_flag,
                 "Ceiling for adaptive modular precision, in bits");

  V2Args v2_args;
  auto* cmd_v2 = app.add_subcommand("v2", "2-adic valuation of a single integer");
  cmd_v2->fallthrough();
  cmd_v2->add_option("k", v2_args.k, "Nonnegative integer")->required();

  SumArgs sum_args;
  auto* cmd_sum = app.add_subcommand("sum", "Exact value of S_n(m)");
  cmd_sum->fallthrough();
  cmd_sum->add_option("m", sum_args.m, "Upper summation limit")->required();
  cmd_sum->add_option("n", sum_args.n, "Exponent (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_sum->add_option("--method", sum_args.method, "oracle | doubling | auto")
      ->check(CLI::IsMember({"oracle", "doubling", "auto"}))
      ->capture_default_str();

  V2SumArgs v2sum_args;
  auto* cmd_v2sum = app.add_subcommand("v2sum", "2-adic valuation of S_n(m)");
  cmd_v2sum->fallthrough();
  cmd_v2sum->add_option("m", v2sum_args.m, "Upper summation limit")->required();
  cmd_v2sum->add_option("n", v2sum_args.n, "Exponent (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_v2sum->add_option("--method", v2sum_args.method, "formula | modular | oracle | all")
      ->check(CLI::IsMember({"formula", "modular", "oracle", "all"}))
      ->capture_default_str();

  SweepArgs sweep_args;
  auto* cmd_sweep = app.add_subcommand(
      "sweep-verify", "Check all four methods against each other over a rectangle");
  cmd_sweep->fallthrough();
  cmd_sweep->add_option("m_max", sweep_args.m_max, "Check every m in [1, m_max]")->required();
  cmd_sweep->add_option("n_max", sweep_args.n_max, "Check every n in [1, n_max]")->required();
  cmd_sweep
      ->add_option("--formula-bias", sweep_args.formula_bias,
                   "Fault injection: offset added to the closed-form valuation")
      ->group("");  // hidden; exists so tests can prove the sweep detects corruption

  auto* cmd_moser = app.add_subcommand("moser", "Generalized Erdos-Moser tools");
  cmd_moser->fallthrough();
  cmd_moser->require_subcommand(1);

  MoserCheckArgs mc_args;
  auto* cmd_mc = cmd_moser->add_subcommand("check", "Test 1^n + ... + (m-1)^n == a * m^n");
  cmd_mc->fallthrough();
  cmd_mc->add_option("m", mc_args.m, "Modulus side, m >= 2")->required();
  cmd_mc->add_option("n", mc_args.n, "Exponent (>= 1)")->required()->check(CLI::PositiveNumber);
  cmd_mc->add_option("a", mc_args.a, "Multiplier, a >= 1")->required();

  MoserSearchArgs ms_args;
  auto* cmd_ms = cmd_moser->add_subcommand("search", "Enumerate solutions with m <= m_max");
  cmd_ms->fallthrough();
  cmd_ms->add_option("m_max", ms_args.m_max, "Largest m to test")->required();
  cmd_ms->add_option("n_max", ms_args.n_max, "Largest exponent to test")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_ms->add_flag("--verify-pruning", ms_args.verify_pruning,
                   "Re-check every pruned (m, n) cell by direct division");

  MoserObstructionArgs mo_args;
  auto* cmd_mo =
      cmd_moser->add_subcommand("obstruction", "Parity obstruction report for even m, n >= 2");
  cmd_mo->fallthrough();
  cmd_mo->add_option("m", mo_args.m, "Even m >= 2")->required();
  cmd_mo->add_option("n", mo_args.n, "Exponent (>= 2)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);  // prints the diagnostic to stderr
    return kExitParse;
  }

  Record rec;
  int code = kExitOk;
  try {
    if (app.got_subcommand(cmd_v2)) {
      code = run_v2(v2_args, cfg, rec);
    } else if (app.got_subcommand(cmd_sum)) {
      code = run_sum(sum_args, cfg, rec);
    } else if (app.got_subcommand(cmd_v2sum)) {
      code = run_v2sum(v2sum_args, cfg, rec);
    } else if (app.got_subcommand(cmd_sweep)) {
      code = run_sweep(sweep_args, cfg, rec);
    } else if (cmd_moser->got_subcommand(cmd_mc)) {
      code = run_moser_check(mc_args, cfg, rec);
    } else if (cmd_moser->got_subcommand(cmd_ms)) {
      code = run_moser_search(ms_args, cfg, rec);
    } else {
      code = run_moser_obstruction(mo_args, cfg, rec);
    }
  } catch (const BudgetExceededError& e) {
    rec.status = "error";
    rec.error_detail = e.what();
    code = kExitBudget;
  } catch (const PrecisionCeilingError& e) {
    rec.status = "error";
    rec.error_detail = e.what();
    code = kExitPrecision;
  } catch (const DiscrepancyError& e) {
    rec.status = "error";
    rec.error_detail = e.what();
    code = kExitDiscrepancy;
  } catch (const std::invalid_argument& e) {
    rec.status = "error";
    rec.error_detail = e.what();
    code = kExitParse;
  } catch (const std::domain_error& e) {
    rec.status = "error";
    rec.error_detail = e.what();
    code = kExitParse;
  } catch (const std::exception& e) {
    rec.status = "error";
    rec.error_detail = e.what();
    code = kExitInternal;
  }

  emit(rec, cfg.json);
  if (code != kExitOk) std::cerr << "powsum2: " << rec.error_detail << "\n";
  return code;
}

#include "mf/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mf/identities.hpp"
#include "mf/monte_carlo.hpp"
#include "mf/report.hpp"

namespace mf::cli {

namespace {

using report::Json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string format = "plain";
  std::optional<unsigned> threads;
  std::string command_echo;
};

std::optional<std::uint64_t> env_uint(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string(name) + " must be a non-negative integer, got '" + raw + "'");
  }
}

unsigned thread_count(const Common& common) {
  if (common.threads) return *common.threads;
  if (auto env = env_uint("MF_THREADS")) return static_cast<unsigned>(*env);
  return 0;
}

Rational parse_rational_flag(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw UsageError("unsupported --format '" + format + "'");
}

// --- table ---------------------------------------------------------------

struct TableArgs {
  std::string family;
  int n_max = 0;
  std::optional<int> k_max;
  std::optional<std::string> lambda;
  std::string x = "0";
};

int cmd_table(const TableArgs& args, const Common& common, std::ostream& out) {
  require_format(common.format, {"plain", "json", "csv"});
  if (args.n_max < 0) throw UsageError("--n-max must be >= 0");
  const int k_max = args.k_max.value_or(args.n_max);
  if (k_max < 0) throw UsageError("--k-max must be >= 0");

  TableStore tables;
  std::optional<Rational> lambda;
  if (args.lambda) lambda = parse_rational_flag("--lambda", *args.lambda);

  bool triangle = false;
  std::function<ExactValue(int, int)> value;
  const std::string& f = args.family;
  auto lambda_value = [&](const Poly& p) -> ExactValue {
    if (lambda) return p.eval(*lambda);
    return p;
  };
  if (f == "s1") {
    triangle = true;
    value = [&](int n, int k) { return ExactValue(tables.stirling1(n, k)); };
  } else if (f == "s2") {
    triangle = true;
    value = [&](int n, int k) { return ExactValue(tables.stirling2(n, k)); };
  } else if (f == "s1deg") {
    triangle = true;
    value = [&](int n, int k) { return lambda_value(tables.stirling1_deg(n, k)); };
  } else if (f == "s2deg") {
    triangle = true;
    value = [&](int n, int k) { return lambda_value(tables.stirling2_deg(n, k)); };
  } else if (f == "bern2") {
    value = [&](int n, int) { return ExactValue(tables.bernoulli_second_kind(n)); };
  } else if (f == "derange") {
    value = [&](int n, int) { return ExactValue(Rational(tables.derangement(n))); };
  } else if (f.rfind("bern-higher:", 0) == 0) {
    int r = 0;
    try {
      std::size_t used = 0;
      const std::string digits = f.substr(std::string("bern-higher:").size());
      r = std::stoi(digits, &used);
      if (used != digits.size()) throw std::invalid_argument(digits);
    } catch (const std::exception&) {
      throw UsageError("bern-higher needs an integer order, e.g. bern-higher:2");
    }
    const Rational x = parse_rational_flag("--x", args.x);
    value = [&tables, r, x](int n, int) { return ExactValue(tables.bernoulli_higher(n, r, x)); };
  } else {
    throw UsageError("unknown family '" + f + "' (s1, s2, s1deg, s2deg, bern2, bern-higher:r, derange)");
  }

  struct Cell {
    int n;
    int k;
    ExactValue v;
  };
  std::vector<std::vector<Cell>> rows;
  for (int n = 0; n <= args.n_max; ++n) {
    std::vector<Cell> row;
    if (triangle) {
      for (int k = 0; k <= std::min(n, k_max); ++k) row.push_back({n, k, value(n, k)});
    } else {
      row.push_back({n, -1, value(n, 0)});
    }
    rows.push_back(std::move(row));
  }

  if (common.format == "json") {
    Json results = Json::array();
    for (const auto& row : rows) {
      for (const auto& c : row) {
        Json item{{"n", c.n}, {"value", report::to_json(c.v)}};
        if (c.k >= 0) item["k"] = c.k;
        results.push_back(std::move(item));
      }
    }
    Json meta{{"family", f}};
    if (lambda) meta["lambda"] = lambda->str();
    out << report::dump(report::document(common.command_echo, std::move(results), "N/A", std::move(meta)));
  } else if (common.format == "csv") {
    out << (triangle ? "n,k,value\n" : "n,value\n");
    for (const auto& row : rows) {
      for (const auto& c : row) {
        out << c.n << ',';
        if (c.k >= 0) out << c.k << ',';
        out << report::csv_cell(exact_value_str(c.v)) << '\n';
      }
    }
  } else if (triangle) {
    for (const auto& row : rows) {
      std::string line;
      for (const auto& c : row) line += (line.empty() ? "" : ", ") + exact_value_str(c.v);
      out << line << '\n';
    }
  } else {
    std::string line;
    for (const auto& row : rows) line += (line.empty() ? "" : ", ") + exact_value_str(row.front().v);
    out << line << '\n';
  }
  return kExitOk;
}

// --- moment --------------------------------------------------------------

struct MomentArgs {
  std::string expr;
  int n = 1;
};

int cmd_moment(const MomentArgs& args, const Common& common, std::ostream& out) {
  require_format(common.format, {"plain", "json"});
  if (args.n < 0) throw UsageError("--n must be >= 0");
  const RVExpression e = parse_expression(args.expr);
  TableStore tables;
  const Rational value = MomentEngine(tables).moment(e, args.n);
  if (common.format == "json") {
    Json results = Json::array({Json{{"expression", e.str()}, {"n", args.n}, {"value", report::to_json(value)}}});
    out << report::dump(report::document(common.command_echo, std::move(results), "N/A"));
  } else {
    out << value.str() << '\n';
  }
  return kExitOk;
}

// --- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string identity = "all";
  int n_max = 6;
  int k_max = 3;
  std::string lambda_mode = "symbolic";
  std::string lambda = "1/2";
  std::string report_path;
};

int cmd_verify(const VerifyArgs& args, const Common& common, std::ostream& out, std::ostream& err) {
  require_format(common.format, {"plain", "json"});
  SuiteOptions options;
  options.n_max = args.n_max;
  options.k_max = args.k_max;
  if (args.n_max < 0 || args.k_max < 0) throw UsageError("--n-max and --k-max must be >= 0");
  options.threads = thread_count(common);
  if (args.lambda_mode == "symbolic") {
    options.mode = LambdaMode::symbolic();
  } else if (args.lambda_mode == "sampled") {
    options.mode = LambdaMode::sampled(parse_rational_flag("--lambda", args.lambda));
  } else {
    throw UsageError("--lambda-mode must be 'symbolic' or 'sampled'");
  }
  if (args.identity != "all") {
    std::stringstream ss(args.identity);
    for (std::string id; std::getline(ss, id, ',');) {
      const auto& known = identity_ids();
      if (std::find(known.begin(), known.end(), id) == known.end()) {
        throw UsageError("unknown identity '" + id + "'");
      }
      options.identities.push_back(id);
    }
  }

  TableStore tables;
  const auto reports = IdentitySuite(tables).run(options);
  const bool ok = all_passed(reports);

  Json results = Json::array();
  for (const auto& r : reports) results.push_back(report::to_json(r));
  const Json meta{{"n_max", args.n_max}, {"k_max", args.k_max}, {"lambda_mode", options.mode.str()}};
  const Json doc = report::document(common.command_echo, std::move(results), ok ? "PASS" : "FAIL", meta);

  if (!args.report_path.empty()) {
    std::ofstream file(args.report_path);
    if (!file) throw UsageError("cannot write report to '" + args.report_path + "'");
    file << report::dump(doc);
  }

  if (common.format == "json") {
    out << report::dump(doc);
  } else {
    std::size_t failed = 0;
    for (const auto& r : reports) {
      out << verdict_str(r.verdict) << ' ' << r.label();
      if (!r.passed()) {
        ++failed;
        out << "  lhs=" << exact_value_str(r.lhs) << "  rhs=" << exact_value_str(r.rhs);
      }
      out << '\n';
    }
    out << (ok ? "PASS" : "FAIL") << ": " << reports.size() << " checks, " << failed << " failed\n";
  }
  if (!ok) err << "verification failed\n";
  return ok ? kExitOk : kExitFail;
}

// --- mc ------------------------------------------------------------------

struct McArgs {
  std::string expr;
  int n = 1;
  std::uint64_t samples = 1000000;
  std::optional<std::uint64_t> seed;
};

int cmd_mc(const McArgs& args, const Common& common, std::ostream& out, std::ostream& err) {
  require_format(common.format, {"plain", "json"});
  if (args.n < 0) throw UsageError("--n must be >= 0");
  if (args.samples < mc::kMinSamples) {
    throw UsageError("--samples must be at least " + std::to_string(mc::kMinSamples));
  }
  const RVExpression e = parse_expression(args.expr);
  const std::uint64_t seed = args.seed ? *args.seed : env_uint("MF_SEED").value_or(mc::kDefaultSeed);
  if (args.n > mc::kMaxRecommendedMoment) {
    err << "warning: moment order " << args.n << " exceeds " << mc::kMaxRecommendedMoment
        << "; the standard error of heavy-tailed sums grows quickly and the z-test loses power\n";
  }
  TableStore tables;
  const mc::McResult r = mc::mc_moment(e, args.n, args.samples, seed, MomentEngine(tables), thread_count(common));

  if (common.format == "json") {
    const Json meta{{"generator", r.generator}};
    out << report::dump(report::document(common.command_echo, Json::array({report::to_json(r)}),
                                         r.within_tolerance() ? "PASS" : "FAIL", meta));
  } else {
    out << "expression " << r.expression << '\n'
        << "n          " << r.n << '\n'
        << "estimate   " << r.estimate << '\n'
        << "exact      " << r.exact.str() << " (" << r.exact.to_double() << ")\n"
        << "std_error  " << r.std_error << '\n'
        << "z_score    " << r.z_score << '\n'
        << "samples    " << r.samples << '\n'
        << "seed       " << r.seed << '\n'
        << (r.within_tolerance() ? "PASS" : "FAIL") << '\n';
  }
  return r.within_tolerance() ? kExitOk : kExitFail;
}

std::string join_args(int argc, const char* const* argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact special numbers, moments of random variables, and identity verification"};
  app.require_subcommand(1);
  Common common;
  common.command_echo = join_args(argc, argv);
  unsigned threads = 0;

  auto add_common = [&](CLI::App* sub, bool with_threads) {
    sub->add_option("--format", common.format, "Output format");
    if (with_threads) sub->add_option("--threads", threads, "Worker threads (0 = auto)");
  };

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "Print a special-number table");
  table->add_option("--family", table_args.family, "s1, s2, s1deg, s2deg, bern2, bern-higher:r, derange")
      ->required();
  table->add_option("--n-max", table_args.n_max, "Largest n")->required();
  table->add_option("--k-max", table_args.k_max, "Largest k for triangles (default n-max)");
  table->add_option("--lambda", table_args.lambda, "Evaluate degenerate families at this rational");
  table->add_option("--x", table_args.x, "Argument x for bern-higher (default 0)");
  add_common(table, false);

  MomentArgs moment_args;
  auto* moment = app.add_subcommand("moment", "Exact moment E[expr^n]");
  moment->add_option("--expr", moment_args.expr, "Expression, e.g. \"U1 + 2*X2 - 1\"")->required();
  moment->add_option("--n", moment_args.n, "Moment order")->required();
  add_common(moment, false);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Verify identities by exact comparison");
  verify->add_option("--identity", verify_args.identity, "Identity id, comma list, or 'all'");
  verify->add_option("--n-max", verify_args.n_max, "Largest n");
  verify->add_option("--k-max", verify_args.k_max, "Largest k");
  verify->add_option("--lambda-mode", verify_args.lambda_mode, "symbolic or sampled");
  verify->add_option("--lambda", verify_args.lambda, "Lambda value for sampled mode (default 1/2)");
  verify->add_option("--report", verify_args.report_path, "Write the JSON report here");
  add_common(verify, true);

  McArgs mc_args;
  auto* mc = app.add_subcommand("mc", "Monte Carlo cross-check of an exact moment");
  mc->add_option("--expr", mc_args.expr, "Expression")->required();
  mc->add_option("--n", mc_args.n, "Moment order");
  mc->add_option("--samples", mc_args.samples, "Sample count (>= 1000)");
  mc->add_option("--seed", mc_args.seed, "64-bit seed (default MF_SEED or built-in)");
  add_common(mc, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool threads_given = (verify->parsed() && verify->count("--threads") > 0) ||
                             (mc->parsed() && mc->count("--threads") > 0);
  if (threads_given) common.threads = threads;

  try {
    if (table->parsed()) return cmd_table(table_args, common, out);
    if (moment->parsed()) return cmd_moment(moment_args, common, out);
    if (verify->parsed()) return cmd_verify(verify_args, common, out, err);
    if (mc->parsed()) return cmd_mc(mc_args, common, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

}  // namespace mf::cli

// Copyright 2026 The optfolio Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "optfolio/cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "optfolio/error.hpp"
#include "optfolio/market_data.hpp"
#include "optfolio/optimizer.hpp"
#include "optfolio/serialization.hpp"

namespace optfolio::cli {
namespace {

enum class OutputFormat { kJson, kTable, kCsv };

struct CliConfig {
  std::string chain_path;
  std::string chain_format = "auto";
  std::string spec_path;
  std::string solution_path;
  std::string output_path;
  std::string format;
  std::string threads = "auto";
  std::uint64_t node_limit = 10'000'000;
  std::string axis;
  std::string values;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::kIo, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

OptionChain LoadChain(const CliConfig& cfg) {
  ChainFormat format = ChainFormat::kCsv;
  if (cfg.chain_format == "json" ||
      (cfg.chain_format == "auto" && std::filesystem::path(cfg.chain_path).extension() == ".json")) {
    format = ChainFormat::kJson;
  }
  return ParseChain(ReadFile(cfg.chain_path), format);
}

OutputFormat ParseFormat(const std::string& s, OutputFormat fallback) {
  if (s.empty()) return fallback;
  if (s == "json") return OutputFormat::kJson;
  if (s == "table") return OutputFormat::kTable;
  if (s == "csv") return OutputFormat::kCsv;
  throw Error(ErrorCategory::kSpec, "unknown-format:" + s);
}

unsigned ParseThreads(const std::string& s) {
  if (s == "auto") return 0;
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size() && v > 0) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCategory::kSpec, "threads must be a positive integer or auto");
}

struct Inputs {
  OptionChain chain;
  StrategyFile strategy;
  std::shared_ptr<const SeriesSelection> series;
};

Inputs LoadInputs(const CliConfig& cfg) {
  OptionChain chain = LoadChain(cfg);
  StrategyFile strategy = ParseStrategyFile(ReadFile(cfg.spec_path));
  auto series = std::make_shared<const SeriesSelection>(
      SelectSeries(chain, strategy.n, strategy.call_anchor, strategy.put_anchor));
  return Inputs{std::move(chain), std::move(strategy), std::move(series)};
}

std::string DescribeModel(const StrategySpec& spec) {
  std::string rows = "tail-sum, slope (inflection " + std::to_string(spec.inflection) + ")";
  if (spec.balance_left_tail || spec.balance_right_tail) {
    rows += ", tail-loss " + spec.max_loss.ToString();
  }
  rows += ", positivity, bounds [" + std::to_string(spec.lower) + ", " + std::to_string(spec.upper) + "]";
  if (spec.cost_target) {
    rows += ", cost " + std::string(RelationSymbol(spec.cost_target->relation)) + " " +
            spec.cost_target->value.ToString();
  }
  return rows;
}

std::string SolutionCsv(const PortfolioSolution& s) {
  std::ostringstream out;
  out << "right,strike,quantity,side,price\n";
  const SeriesSelection& series = s.portfolio.series();
  const ComboPrices prices = PricesFor(series, s.combo);
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << "call," << series.call_strikes[i] << "," << s.portfolio.calls()[i] << ","
        << (prices.calls[i].side == Side::kAsk ? "ask" : "bid") << "," << prices.calls[i].price << "\n";
  }
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << "put," << series.put_strikes[i] << "," << s.portfolio.puts()[i] << ","
        << (prices.puts[i].side == Side::kAsk ? "ask" : "bid") << "," << prices.puts[i].price << "\n";
  }
  return out.str();
}

void Emit(const CliConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output_path, std::ios::binary);
  if (!file) throw Error(ErrorCategory::kIo, "cannot write " + cfg.output_path);
  file << text;
}

int RunOptimize(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  Inputs in = LoadInputs(cfg);
  OptimizeOptions options;
  options.threads = ParseThreads(cfg.threads);
  options.node_limit = cfg.node_limit;
  OptimizeResult r = Optimize(in.strategy.spec, in.series, options);
  if (!r.solution) {
    err << "error:infeasible:no feasible portfolio in " << r.combos_infeasible
        << " combinations under " << DescribeModel(in.strategy.spec) << "\n";
    return kExitInfeasible;
  }
  switch (ParseFormat(cfg.format, OutputFormat::kJson)) {
    case OutputFormat::kJson:
      Emit(cfg, SolutionToJson(*r.solution), out);
      break;
    case OutputFormat::kTable:
      Emit(cfg, FormatTable(*in.series, {{"optimal", r.solution}}), out);
      break;
    case OutputFormat::kCsv:
      Emit(cfg, SolutionCsv(*r.solution), out);
      break;
  }
  return kExitOk;
}

template <typename T, typename Parse>
std::vector<T> SplitValues(const std::string& text, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse(item));
  if (out.empty()) throw Error(ErrorCategory::kSpec, "empty-sweep");
  return out;
}

int RunSweep(const CliConfig& cfg, std::ostream& out) {
  Inputs in = LoadInputs(cfg);
  OptimizeOptions options;
  options.threads = ParseThreads(cfg.threads);
  options.node_limit = cfg.node_limit;
  SweepReport report;
  if (cfg.axis == "cost") {
    auto values = SplitValues<Money>(cfg.values, [](const std::string& s) {
      auto m = Money::Parse(s);
      if (!m) throw Error(ErrorCategory::kSpec, "bad-sweep-value:" + s);
      return *m;
    });
    report = SweepCost(in.strategy.spec, in.series, values, options);
  } else if (cfg.axis == "liquidity") {
    auto values = SplitValues<std::int64_t>(cfg.values, [](const std::string& s) {
      try {
        std::size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used == s.size()) return static_cast<std::int64_t>(v);
      } catch (const std::exception&) {
      }
      throw Error(ErrorCategory::kSpec, "bad-sweep-value:" + s);
    });
    report = SweepLiquidity(in.strategy.spec, in.series, values, options);
  } else {
    throw Error(ErrorCategory::kSpec, "unknown-axis:" + cfg.axis);
  }
  switch (ParseFormat(cfg.format, OutputFormat::kJson)) {
    case OutputFormat::kJson:
      Emit(cfg, SweepToJson(report), out);
      break;
    case OutputFormat::kTable:
      Emit(cfg, SweepToTable(*in.series, report), out);
      break;
    case OutputFormat::kCsv:
      Emit(cfg, SweepToCsv(report), out);
      break;
  }
  for (const SweepPoint& p : report.points) {
    if (!p.error.empty()) return kExitResource;
  }
  return kExitOk;
}

int RunPayoff(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  Inputs in = LoadInputs(cfg);
  Portfolio portfolio(in.series);
  if (!cfg.solution_path.empty()) {
    portfolio = SolutionFromJson(ReadFile(cfg.solution_path), in.series).portfolio;
  } else {
    OptimizeOptions options;
    options.threads = ParseThreads(cfg.threads);
  options.node_limit = cfg.node_limit;
    OptimizeResult r = Optimize(in.strategy.spec, in.series, options);
    if (!r.solution) {
      err << "error:infeasible:no feasible portfolio in " << r.combos_infeasible
          << " combinations under " << DescribeModel(in.strategy.spec) << "\n";
      return kExitInfeasible;
    }
    portfolio = r.solution->portfolio;
  }
  PayoffCurve curve = ComputePayoffCurve(portfolio);
  if (ParseFormat(cfg.format, OutputFormat::kCsv) == OutputFormat::kJson) {
    nlohmann::json doc = {{"breakpoints", curve.breakpoints},
                          {"left_tail_slope", curve.left_tail_slope},
                          {"right_tail_slope", curve.right_tail_slope},
                          {"interval_slopes", curve.interval_slopes}};
    for (Money v : curve.values) doc["values"].push_back(v.ToString());
    Emit(cfg, doc.dump(2) + "\n", out);
  } else {
    Emit(cfg, curve.ToCsv(), out);
  }
  return kExitOk;
}

int RunValidate(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  OptionChain chain = LoadChain(cfg);
  std::ostringstream text;
  ValidationReport report = ValidateChain(chain);
  for (const ChainViolation& v : report) text << "warning:chain:" << v.message << "\n";
  if (report.empty()) text << "chain: ok (" << chain.quotes().size() << " quotes)\n";

  int code = kExitOk;
  if (!cfg.solution_path.empty()) {
    if (cfg.spec_path.empty()) throw Error(ErrorCategory::kSpec, "solution check needs --spec");
    StrategyFile strategy = ParseStrategyFile(ReadFile(cfg.spec_path));
    auto series = std::make_shared<const SeriesSelection>(
        SelectSeries(chain, strategy.n, strategy.call_anchor, strategy.put_anchor));
    LoadedSolution loaded = SolutionFromJson(ReadFile(cfg.solution_path), series);
    IlpProblem problem = BuildSubproblem(strategy.spec, *series, loaded.combo);
    std::vector<RowViolation> violations = CheckFeasible(loaded.portfolio, problem);
    for (const RowViolation& v : violations) {
      text << "violation:" << v.row_id << ":" << v.residual << "\n";
    }
    if (violations.empty()) {
      text << "solution: feasible\n";
    } else {
      err << "error:feasibility:" << violations.size() << " violated rows\n";
      code = kExitInput;
    }
  }
  Emit(cfg, text.str(), out);
  return code;
}

int ExitCodeFor(ErrorCategory category) {
  return category == ErrorCategory::kResource || category == ErrorCategory::kSolver ? kExitResource
                                                                                      : kExitInput;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build option portfolios with a prescribed piecewise-linear payoff", "optfolio"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    sub->add_option("--chain", cfg.chain_path, "Option chain file (CSV or JSON)")->required();
    sub->add_option("--chain-format", cfg.chain_format, "csv, json or auto (by extension)")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
    auto* spec = sub->add_option("--spec", cfg.spec_path, "Strategy JSON file");
    if (needs_spec) spec->required();
    sub->add_option("--output,-o", cfg.output_path, "Write results here instead of stdout");
    sub->add_option("--format", cfg.format, "json, table or csv");
    sub->add_option("--threads", cfg.threads, "Worker threads or auto");
    sub->add_option("--node-limit", cfg.node_limit, "Branch-and-bound nodes per subproblem")
        ->check(CLI::PositiveNumber);
  };
  CLI::App* optimize = app.add_subcommand("optimize", "Find the most profitable portfolio");
  add_common(optimize, true);
  CLI::App* sweep = app.add_subcommand("sweep", "Re-optimize across cost targets or liquidity bounds");
  add_common(sweep, true);
  sweep->add_option("--axis", cfg.axis, "cost or liquidity")->required();
  sweep->add_option("--values", cfg.values, "Comma-separated parameter values")->required();
  CLI::App* payoff = app.add_subcommand("payoff", "Emit payoff curve samples for plotting");
  add_common(payoff, true);
  payoff->add_option("--solution", cfg.solution_path, "Solution JSON; optimizes when omitted");
  CLI::App* validate = app.add_subcommand("validate", "Check a chain and optionally a solution");
  add_common(validate, false);
  validate->add_option("--solution", cfg.solution_path, "Solution JSON to check against --spec");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error:usage:" << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*optimize) return RunOptimize(cfg, out, err);
    if (*sweep) return RunSweep(cfg, out);
    if (*payoff) return RunPayoff(cfg, out, err);
    return RunValidate(cfg, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return ExitCodeFor(e.category());
  }
}

}  // namespace optfolio::cli

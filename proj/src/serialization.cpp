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

#include "optfolio/serialization.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "optfolio/error.hpp"

namespace optfolio {
namespace {

using nlohmann::json;

json MoneyJson(Money m) {
  if (m.cents() % Money::kScale == 0) return m.cents() / Money::kScale;
  return m.ToDouble();
}

[[noreturn]] void SchemaError(const std::string& what) {
  throw Error(ErrorCategory::kSchema, what);
}

json ParseObject(std::string_view text, const char* what) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCategory::kParse, std::string(what) + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) SchemaError(std::string(what) + " must be a JSON object");
  return doc;
}

const json& Require(const json& doc, const char* key) {
  if (!doc.contains(key)) SchemaError(std::string("missing key ") + key);
  return doc.at(key);
}

Money ReadMoney(const json& v, const char* key) {
  if (v.is_number_integer()) return Money::FromUnits(v.get<std::int64_t>());
  if (v.is_number()) return Money::FromDouble(v.get<double>());
  if (v.is_string()) {
    if (auto m = Money::Parse(v.get<std::string>())) return *m;
  }
  SchemaError(std::string("key ") + key + " must be a decimal amount");
}

std::int64_t ReadInt(const json& v, const char* key) {
  if (!v.is_number_integer()) SchemaError(std::string("key ") + key + " must be an integer");
  return v.get<std::int64_t>();
}

bool ReadBool(const json& doc, const char* key, bool fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_boolean()) SchemaError(std::string("key ") + key + " must be a boolean");
  return doc[key].get<bool>();
}

std::optional<Relation> ParseRelation(std::string_view s) {
  if (s == "=" || s == "==" || s == "eq") return Relation::kEq;
  if (s == "<=" || s == "le") return Relation::kLe;
  if (s == ">=" || s == "ge") return Relation::kGe;
  return std::nullopt;
}

json CurveJson(const PayoffCurve& curve) {
  json values = json::array();
  for (Money v : curve.values) values.push_back(MoneyJson(v));
  return {{"breakpoints", curve.breakpoints},
          {"values", std::move(values)},
          {"left_tail_slope", curve.left_tail_slope},
          {"right_tail_slope", curve.right_tail_slope},
          {"interval_slopes", curve.interval_slopes}};
}

json SolutionJsonValue(const PortfolioSolution& s) {
  const SeriesSelection& series = s.portfolio.series();
  json calls = json::array();
  json puts = json::array();
  for (std::size_t i = 0; i < series.size(); ++i) {
    calls.push_back({{"strike", series.call_strikes[i]}, {"quantity", s.portfolio.calls()[i]}});
    puts.push_back({{"strike", series.put_strikes[i]}, {"quantity", s.portfolio.puts()[i]}});
  }
  return {{"objective", MoneyJson(s.objective)},
          {"initial_cost", MoneyJson(s.initial_cost)},
          {"total_contracts", s.total_contracts},
          {"combo", s.combo.BitString()},
          {"combo_index", s.combo.index},
          {"calls", std::move(calls)},
          {"puts", std::move(puts)},
          {"combos_solved", s.combos_solved},
          {"combos_infeasible", s.combos_infeasible},
          {"payoff_curve", CurveJson(s.payoff_curve)}};
}

std::string Cell(const std::string& text, int width) {
  std::ostringstream out;
  out << std::setw(width) << text;
  return out.str();
}

}  // namespace

StrategyFile ParseStrategyFile(std::string_view json_text) {
  json doc = ParseObject(json_text, "strategy file");
  StrategyFile f;
  StrategySpec& s = f.spec;
  s.expected_price = ReadMoney(Require(doc, "expected_price"), "expected_price");
  s.inflection = ReadInt(Require(doc, "inflection"), "inflection");
  s.max_loss = ReadMoney(Require(doc, "max_loss"), "max_loss");
  s.lower = ReadInt(Require(doc, "lower"), "lower");
  s.upper = ReadInt(Require(doc, "upper"), "upper");
  f.call_anchor = ReadInt(Require(doc, "call_anchor"), "call_anchor");
  f.put_anchor = ReadInt(Require(doc, "put_anchor"), "put_anchor");
  std::int64_t n = ReadInt(Require(doc, "n"), "n");
  if (n <= 0) throw Error(ErrorCategory::kSpec, "series-length-not-positive");
  f.n = static_cast<std::size_t>(n);

  if (doc.contains("cost_target") && !doc["cost_target"].is_null()) {
    const json& ct = doc["cost_target"];
    if (!ct.is_object()) SchemaError("cost_target must be an object");
    CostTarget target;
    if (ct.contains("cmp")) {
      auto rel = ct["cmp"].is_string() ? ParseRelation(ct["cmp"].get<std::string>()) : std::nullopt;
      if (!rel) SchemaError("cost_target.cmp must be one of =, <=, >=");
      target.relation = *rel;
    }
    const bool has_value = ct.contains("value");
    const bool has_credit = ct.contains("credit");
    if (has_value == has_credit) SchemaError("cost_target needs exactly one of value, credit");
    if (has_value) {
      target.value = ReadMoney(ct["value"], "cost_target.value");
    } else {
      // Receiving a credit of C is an entry cost of -C; bounds flip with it.
      target.value = -ReadMoney(ct["credit"], "cost_target.credit");
      if (target.relation == Relation::kLe) {
        target.relation = Relation::kGe;
      } else if (target.relation == Relation::kGe) {
        target.relation = Relation::kLe;
      }
    }
    s.cost_target = target;
  }
  if (doc.contains("epsilon")) s.epsilon = ReadMoney(doc["epsilon"], "epsilon");
  if (doc.contains("tail_loss_mode")) {
    const json& mode = doc["tail_loss_mode"];
    std::string m = mode.is_string() ? mode.get<std::string>() : "";
    if (m == "pnl") {
      s.tail_loss_mode = TailLossMode::kPnl;
    } else if (m == "payoff_only") {
      s.tail_loss_mode = TailLossMode::kPayoffOnly;
    } else {
      SchemaError("tail_loss_mode must be pnl or payoff_only");
    }
  }
  s.balance_left_tail = ReadBool(doc, "balance_left_tail", true);
  s.balance_right_tail = ReadBool(doc, "balance_right_tail", true);
  s.Validate();
  return f;
}

std::string SerializeStrategyFile(const StrategyFile& f) {
  const StrategySpec& s = f.spec;
  json doc = {{"expected_price", MoneyJson(s.expected_price)},
              {"inflection", s.inflection},
              {"max_loss", MoneyJson(s.max_loss)},
              {"lower", s.lower},
              {"upper", s.upper},
              {"epsilon", MoneyJson(s.epsilon)},
              {"tail_loss_mode", s.tail_loss_mode == TailLossMode::kPnl ? "pnl" : "payoff_only"},
              {"balance_left_tail", s.balance_left_tail},
              {"balance_right_tail", s.balance_right_tail},
              {"call_anchor", f.call_anchor},
              {"put_anchor", f.put_anchor},
              {"n", f.n}};
  if (s.cost_target) {
    doc["cost_target"] = {{"cmp", RelationSymbol(s.cost_target->relation)},
                          {"value", MoneyJson(s.cost_target->value)}};
  }
  return doc.dump(2) + "\n";
}

std::string SolutionToJson(const PortfolioSolution& solution) {
  return SolutionJsonValue(solution).dump(2) + "\n";
}

LoadedSolution SolutionFromJson(std::string_view json_text,
                                std::shared_ptr<const SeriesSelection> series) {
  json doc = ParseObject(json_text, "solution");
  const std::size_t n = series->size();
  auto read_side = [&](const char* key, const std::vector<Strike>& strikes) {
    std::vector<std::int64_t> q(n, 0);
    const json& arr = Require(doc, key);
    if (!arr.is_array()) SchemaError(std::string(key) + " must be an array");
    for (const json& item : arr) {
      if (!item.is_object()) SchemaError(std::string(key) + " entries must be objects");
      Strike k = ReadInt(Require(item, "strike"), "strike");
      auto it = std::find(strikes.begin(), strikes.end(), k);
      if (it == strikes.end()) {
        SchemaError(std::string(key) + " strike " + std::to_string(k) + " is not in the series");
      }
      q[static_cast<std::size_t>(it - strikes.begin())] = ReadInt(Require(item, "quantity"), "quantity");
    }
    return q;
  };
  std::vector<std::int64_t> calls = read_side("calls", series->call_strikes);
  std::vector<std::int64_t> puts = read_side("puts", series->put_strikes);

  const json& bits = Require(doc, "combo");
  if (!bits.is_string() || bits.get<std::string>().size() != 2 * n) {
    SchemaError("combo must be a bit string of length " + std::to_string(2 * n));
  }
  std::uint64_t index = 0;
  for (char c : bits.get<std::string>()) {
    if (c != '0' && c != '1') SchemaError("combo must contain only 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return LoadedSolution{Portfolio(series, std::move(calls), std::move(puts)),
                        PriceCombination::FromIndex(n, index)};
}

std::string FormatTable(const SeriesSelection& series, const std::vector<TableColumn>& columns) {
  constexpr int kFirst = 26;
  constexpr int kCell = 8;
  const std::vector<Strike> strikes = UniqueStrikes(series);
  std::ostringstream out;

  out << std::left << std::setw(kFirst) << "Strike" << std::right;
  for (const TableColumn& c : columns) out << Cell(c.label, 2 * kCell);
  out << "\n" << std::setw(kFirst) << "";
  for (std::size_t i = 0; i < columns.size(); ++i) out << Cell("Call", kCell) << Cell("Put", kCell);
  out << "\n";

  for (Strike k : strikes) {
    out << std::left << std::setw(kFirst) << k << std::right;
    auto ci = std::find(series.call_strikes.begin(), series.call_strikes.end(), k);
    auto pi = std::find(series.put_strikes.begin(), series.put_strikes.end(), k);
    for (const TableColumn& c : columns) {
      std::string call_text, put_text;
      if (c.solution) {
        if (ci != series.call_strikes.end()) {
          call_text = std::to_string(c.solution->portfolio.calls()[static_cast<std::size_t>(ci - series.call_strikes.begin())]);
        }
        if (pi != series.put_strikes.end()) {
          put_text = std::to_string(c.solution->portfolio.puts()[static_cast<std::size_t>(pi - series.put_strikes.begin())]);
        }
      }
      out << Cell(call_text, kCell) << Cell(put_text, kCell);
    }
    out << "\n";
  }

  out << std::left << std::setw(kFirst) << "max F" << std::right;
  for (const TableColumn& c : columns) {
    out << Cell(c.solution ? c.solution->objective.ToString() : "infeasible", 2 * kCell);
  }
  out << "\n" << std::left << std::setw(kFirst) << "Total number of contracts" << std::right;
  for (const TableColumn& c : columns) {
    out << Cell(c.solution ? std::to_string(c.solution->total_contracts) : "-", 2 * kCell);
  }
  out << "\n";
  return out.str();
}

std::string SweepToJson(const SweepReport& report) {
  json points = json::array();
  for (const SweepPoint& p : report.points) {
    json point;
    if (report.axis == SweepAxis::kCostTarget) {
      point["cost_target"] = MoneyJson(p.cost);
    } else {
      point["bound"] = p.bound;
    }
    point["combos_solved"] = p.combos_solved;
    point["combos_infeasible"] = p.combos_infeasible;
    if (!p.error.empty()) {
      point["status"] = "error";
      point["error"] = p.error;
    } else if (p.solution) {
      point["status"] = "optimal";
      point["solution"] = SolutionJsonValue(*p.solution);
    } else {
      point["status"] = "infeasible";
    }
    points.push_back(std::move(point));
  }
  json doc = {{"axis", report.axis == SweepAxis::kCostTarget ? "cost_target" : "liquidity_bound"},
              {"points", std::move(points)}};
  return doc.dump(2) + "\n";
}

std::string SweepToTable(const SeriesSelection& series, const SweepReport& report) {
  std::vector<TableColumn> columns;
  for (const SweepPoint& p : report.points) columns.push_back({p.Label(report.axis), p.solution});
  return FormatTable(series, columns);
}

std::string SweepToCsv(const SweepReport& report) {
  std::ostringstream out;
  out << "parameter,status,objective,initial_cost,total_contracts\n";
  for (const SweepPoint& p : report.points) {
    out << (report.axis == SweepAxis::kCostTarget ? p.cost.ToString() : std::to_string(p.bound))
        << ",";
    if (!p.error.empty()) {
      out << "error,,,\n";
    } else if (p.solution) {
      out << "optimal," << p.solution->objective << "," << p.solution->initial_cost << ","
          << p.solution->total_contracts << "\n";
    } else {
      out << "infeasible,,,\n";
    }
  }
  return out.str();
}

}  // namespace optfolio

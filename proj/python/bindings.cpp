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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>
#include <vector>

#include "optfolio/error.hpp"
#include "optfolio/ilp_solver.hpp"
#include "optfolio/market_data.hpp"
#include "optfolio/model_builder.hpp"
#include "optfolio/optimizer.hpp"
#include "optfolio/payoff.hpp"
#include "optfolio/serialization.hpp"

namespace py = pybind11;
using namespace optfolio;

namespace {

// Money crosses the boundary as decimal.Decimal; inputs may also be int,
// str or float.
py::object ToDecimal(Money m) {
  return py::module_::import("decimal").attr("Decimal")(m.ToString());
}

Money FromPy(const py::handle& value) {
  if (py::isinstance<py::float_>(value)) return Money::FromDouble(value.cast<double>());
  std::string text = py::str(value);
  auto m = Money::Parse(text);
  if (!m) throw Error(ErrorCategory::kParse, "not a money amount: " + text);
  return *m;
}

py::list DecimalList(const std::vector<Money>& values) {
  py::list out;
  for (Money m : values) out.append(ToDecimal(m));
  return out;
}

ChainFormat FormatFrom(const std::string& name) {
  if (name == "csv") return ChainFormat::kCsv;
  if (name == "json") return ChainFormat::kJson;
  throw Error(ErrorCategory::kSchema, "format must be csv or json");
}

using SeriesPtr = std::shared_ptr<SeriesSelection>;

py::dict CurveDict(const PayoffCurve& c) {
  py::dict d;
  d["breakpoints"] = c.breakpoints;
  d["values"] = DecimalList(c.values);
  d["left_tail_slope"] = c.left_tail_slope;
  d["right_tail_slope"] = c.right_tail_slope;
  d["interval_slopes"] = c.interval_slopes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Option portfolios with a prescribed payoff shape";

  // Instances carry `category` and `detail` next to the message.
  static py::handle error_type = py::exception<Error>(m, "OptfolioError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("category") = std::string(CategoryName(e.category()));
      exc.attr("detail") = e.detail();
      py::set_error(error_type, exc);
    }
  });

  py::class_<OptionChain>(m, "OptionChain")
      .def_property_readonly("underlying_price",
                             [](const OptionChain& c) { return ToDecimal(c.underlying_price()); })
      .def_property_readonly("valuation_date",
                             [](const OptionChain& c) { return c.valuation_date().ToString(); })
      .def_property_readonly("expiry_date",
                             [](const OptionChain& c) { return c.expiry_date().ToString(); })
      .def_property_readonly("quotes",
                             [](const OptionChain& c) {
                               py::list out;
                               for (const auto& [key, q] : c.quotes()) {
                                 py::dict d;
                                 d["strike"] = q.strike;
                                 d["right"] = std::string(RightName(q.right));
                                 d["bid"] = q.bid ? ToDecimal(*q.bid) : py::none();
                                 d["ask"] = q.ask ? ToDecimal(*q.ask) : py::none();
                                 d["volume"] = q.volume;
                                 out.append(d);
                               }
                               return out;
                             })
      .def("serialize", [](const OptionChain& c, const std::string& format) {
        return SerializeChain(c, FormatFrom(format));
      }, py::arg("format") = "csv");

  m.def("parse_chain", [](const std::string& source, const std::string& format) {
    return ParseChain(source, FormatFrom(format));
  }, py::arg("source"), py::arg("format") = "csv");

  m.def("validate_chain", [](const OptionChain& chain) {
    std::vector<std::string> out;
    for (const ChainViolation& v : ValidateChain(chain)) out.push_back(v.message);
    return out;
  });

  py::class_<SeriesSelection, SeriesPtr>(m, "SeriesSelection")
      .def_property_readonly("n", &SeriesSelection::size)
      .def_readonly("call_strikes", &SeriesSelection::call_strikes)
      .def_readonly("put_strikes", &SeriesSelection::put_strikes)
      .def_property_readonly("call_asks", [](const SeriesSelection& s) { return DecimalList(s.call_asks); })
      .def_property_readonly("call_bids", [](const SeriesSelection& s) { return DecimalList(s.call_bids); })
      .def_property_readonly("put_asks", [](const SeriesSelection& s) { return DecimalList(s.put_asks); })
      .def_property_readonly("put_bids", [](const SeriesSelection& s) { return DecimalList(s.put_bids); })
      .def("unique_strikes", [](const SeriesSelection& s) { return UniqueStrikes(s); });

  m.def("select_series", [](const OptionChain& chain, std::size_t n, Strike call_anchor,
                            Strike put_anchor) -> SeriesPtr {
    return std::make_shared<SeriesSelection>(SelectSeries(chain, n, call_anchor, put_anchor));
  }, py::arg("chain"), py::arg("n"), py::arg("call_anchor"), py::arg("put_anchor"));

  py::class_<StrategySpec>(m, "StrategySpec")
      .def(py::init([](py::object expected_price, Strike inflection, py::object max_loss,
                       std::int64_t lower, std::int64_t upper, py::object cost_target,
                       std::string cost_cmp, py::object epsilon, std::string tail_loss_mode,
                       bool balance_left_tail, bool balance_right_tail) {
             StrategySpec s;
             s.expected_price = FromPy(expected_price);
             s.inflection = inflection;
             s.max_loss = FromPy(max_loss);
             s.lower = lower;
             s.upper = upper;
             if (!cost_target.is_none()) {
               Relation rel = cost_cmp == "<=" ? Relation::kLe
                              : cost_cmp == ">=" ? Relation::kGe
                              : cost_cmp == "="  ? Relation::kEq
                                                 : throw Error(ErrorCategory::kSpec,
                                                               "cost_cmp must be =, <= or >=");
               s.cost_target = CostTarget{rel, FromPy(cost_target)};
             }
             s.epsilon = FromPy(epsilon);
             if (tail_loss_mode == "pnl") {
               s.tail_loss_mode = TailLossMode::kPnl;
             } else if (tail_loss_mode == "payoff_only") {
               s.tail_loss_mode = TailLossMode::kPayoffOnly;
             } else {
               throw Error(ErrorCategory::kSpec, "tail_loss_mode must be pnl or payoff_only");
             }
             s.balance_left_tail = balance_left_tail;
             s.balance_right_tail = balance_right_tail;
             s.Validate();
             return s;
           }),
           py::kw_only(), py::arg("expected_price"), py::arg("inflection"), py::arg("max_loss"),
           py::arg("lower") = -10, py::arg("upper") = 10, py::arg("cost_target") = py::none(),
           py::arg("cost_cmp") = "=", py::arg("epsilon") = "0.01",
           py::arg("tail_loss_mode") = "pnl", py::arg("balance_left_tail") = true,
           py::arg("balance_right_tail") = true)
      .def_readonly("inflection", &StrategySpec::inflection)
      .def_readonly("lower", &StrategySpec::lower)
      .def_readonly("upper", &StrategySpec::upper)
      .def_property_readonly("expected_price", [](const StrategySpec& s) { return ToDecimal(s.expected_price); })
      .def_property_readonly("max_loss", [](const StrategySpec& s) { return ToDecimal(s.max_loss); })
      .def_property_readonly("cost_target", [](const StrategySpec& s) -> py::object {
        if (!s.cost_target) return py::none();
        return py::make_tuple(std::string(RelationSymbol(s.cost_target->relation)),
                              ToDecimal(s.cost_target->value));
      });

  m.def("load_strategy", [](const std::string& json_text) {
    StrategyFile f = ParseStrategyFile(json_text);
    py::dict d;
    d["spec"] = f.spec;
    d["n"] = f.n;
    d["call_anchor"] = f.call_anchor;
    d["put_anchor"] = f.put_anchor;
    return d;
  }, py::arg("json_text"), "Parses a strategy file into {spec, n, call_anchor, put_anchor}.");

  py::class_<PortfolioSolution>(m, "PortfolioSolution")
      .def_property_readonly("calls", [](const PortfolioSolution& s) { return s.portfolio.calls(); })
      .def_property_readonly("puts", [](const PortfolioSolution& s) { return s.portfolio.puts(); })
      .def_property_readonly("objective", [](const PortfolioSolution& s) { return ToDecimal(s.objective); })
      .def_property_readonly("initial_cost", [](const PortfolioSolution& s) { return ToDecimal(s.initial_cost); })
      .def_readonly("total_contracts", &PortfolioSolution::total_contracts)
      .def_property_readonly("combo", [](const PortfolioSolution& s) { return s.combo.BitString(); })
      .def_property_readonly("combo_index", [](const PortfolioSolution& s) { return s.combo.index; })
      .def_readonly("combos_solved", &PortfolioSolution::combos_solved)
      .def_readonly("combos_infeasible", &PortfolioSolution::combos_infeasible)
      .def_property_readonly("payoff_curve", [](const PortfolioSolution& s) { return CurveDict(s.payoff_curve); })
      .def("to_json", &SolutionToJson);

  m.def("optimize", [](const StrategySpec& spec, SeriesPtr series, unsigned threads,
                       std::uint64_t node_limit) -> py::object {
    OptimizeOptions options{threads, node_limit};
    OptimizeResult r;
    {
      py::gil_scoped_release release;
      r = Optimize(spec, std::move(series), options);
    }
    if (!r.solution) return py::none();
    return py::cast(*r.solution);
  }, py::arg("spec"), py::arg("series"), py::arg("threads") = 1,
     py::arg("node_limit") = 10'000'000,
     "Best portfolio over all price combinations, or None if none is feasible.");

  auto sweep_rows = [](const SweepReport& report) {
    py::list out;
    for (const SweepPoint& p : report.points) {
      py::dict d;
      d["label"] = p.Label(report.axis);
      d["value"] = report.axis == SweepAxis::kCostTarget ? ToDecimal(p.cost) : py::int_(p.bound);
      d["solution"] = p.solution ? py::cast(*p.solution) : py::none();
      d["error"] = p.error;
      out.append(d);
    }
    return out;
  };
  m.def("sweep_cost", [sweep_rows](const StrategySpec& spec, SeriesPtr series, py::list values,
                                   unsigned threads) {
    std::vector<Money> costs;
    for (py::handle v : values) costs.push_back(FromPy(v));
    SweepReport r;
    {
      py::gil_scoped_release release;
      r = SweepCost(spec, std::move(series), costs, OptimizeOptions{threads});
    }
    return sweep_rows(r);
  }, py::arg("spec"), py::arg("series"), py::arg("values"), py::arg("threads") = 1);
  m.def("sweep_liquidity", [sweep_rows](const StrategySpec& spec, SeriesPtr series,
                                        std::vector<std::int64_t> bounds, unsigned threads) {
    SweepReport r;
    {
      py::gil_scoped_release release;
      r = SweepLiquidity(spec, std::move(series), bounds, OptimizeOptions{threads});
    }
    return sweep_rows(r);
  }, py::arg("spec"), py::arg("series"), py::arg("bounds"), py::arg("threads") = 1);

  m.def("payoff", [](SeriesPtr series, std::vector<std::int64_t> calls,
                     std::vector<std::int64_t> puts, py::object price) {
    return ToDecimal(Payoff(Portfolio(std::move(series), std::move(calls), std::move(puts)),
                            FromPy(price)));
  }, py::arg("series"), py::arg("calls"), py::arg("puts"), py::arg("price"));
  m.def("payoff_curve", [](SeriesPtr series, std::vector<std::int64_t> calls,
                           std::vector<std::int64_t> puts) {
    return CurveDict(
        ComputePayoffCurve(Portfolio(std::move(series), std::move(calls), std::move(puts))));
  }, py::arg("series"), py::arg("calls"), py::arg("puts"));
  m.def("combination_count", &CombinationCount, py::arg("n"));
}

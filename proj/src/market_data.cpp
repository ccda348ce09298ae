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

#include "optfolio/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "json.hpp"
#include "optfolio/error.hpp"

namespace optfolio {
namespace {

using nlohmann::json;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(Trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::optional<std::int64_t> ParseInt(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

[[noreturn]] void FailField(std::string_view where, std::string_view field,
                            std::string_view why) {
  throw Error(ErrorCategory::kParse,
              std::string(where) + " field " + std::string(field) + ": " +
                  std::string(why));
}

void CheckQuoteDomain(const OptionQuote& q, std::string_view where) {
  if (q.strike <= 0) FailField(where, "strike", "must be positive");
  if (q.bid && *q.bid < Money()) FailField(where, "bid", "must be non-negative");
  if (q.ask && *q.ask <= Money()) FailField(where, "ask", "must be positive");
  if (q.volume < 0) FailField(where, "volume", "must be non-negative");
}

Money RequireMoney(std::string_view text, std::string_view where,
                   std::string_view field) {
  auto m = Money::Parse(text);
  if (!m) FailField(where, field, "not a decimal amount '" + std::string(text) + "'");
  return *m;
}

OptionChain ParseCsv(std::string_view source) {
  std::optional<Money> underlying;
  std::optional<Date> valuation, expiry;
  std::vector<OptionQuote> quotes;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= source.size()) {
    std::size_t eol = source.find('\n', pos);
    if (eol == std::string_view::npos) eol = source.size();
    std::string_view line = Trim(source.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::string where = "row " + std::to_string(line_no);
    if (auto eq = line.find('='); eq != std::string_view::npos &&
                                  line.find(',') == std::string_view::npos) {
      std::string_view key = Trim(line.substr(0, eq));
      std::string_view value = Trim(line.substr(eq + 1));
      if (key == "underlying") {
        underlying = RequireMoney(value, where, "underlying");
      } else if (key == "valuation" || key == "expiry") {
        auto d = Date::Parse(value);
        if (!d) FailField(where, key, "expected YYYY-MM-DD");
        (key == "valuation" ? valuation : expiry) = *d;
      } else {
        FailField(where, key, "unknown header field");
      }
      continue;
    }
    if (line.rfind("strike", 0) == 0) continue;  // column header

    auto f = SplitCsv(line);
    if (f.size() != 5) {
      throw Error(ErrorCategory::kParse,
                  where + ": expected 5 fields, got " + std::to_string(f.size()));
    }
    OptionQuote q;
    auto strike = ParseInt(f[0]);
    if (!strike) FailField(where, "strike", "not an integer");
    q.strike = *strike;
    auto right = ParseRight(f[1]);
    if (!right) FailField(where, "right", "expected call or put");
    q.right = *right;
    if (!f[2].empty()) q.bid = RequireMoney(f[2], where, "bid");
    if (!f[3].empty()) q.ask = RequireMoney(f[3], where, "ask");
    if (!f[4].empty()) {
      auto vol = ParseInt(f[4]);
      if (!vol) FailField(where, "volume", "not an integer");
      q.volume = *vol;
    }
    CheckQuoteDomain(q, where);
    quotes.push_back(q);
  }
  if (!underlying) throw Error(ErrorCategory::kSchema, "missing header field underlying");
  if (!valuation) throw Error(ErrorCategory::kSchema, "missing header field valuation");
  if (!expiry) throw Error(ErrorCategory::kSchema, "missing header field expiry");
  return OptionChain(*underlying, *valuation, *expiry, std::move(quotes));
}

Money JsonMoney(const json& v, std::string_view where, std::string_view field) {
  if (v.is_number_integer()) return Money::FromUnits(v.get<std::int64_t>());
  if (v.is_number()) return Money::FromDouble(v.get<double>());
  if (v.is_string()) return RequireMoney(v.get<std::string>(), where, field);
  FailField(where, field, "expected a number");
}

json MoneyJson(Money m) {
  if (m.cents() % Money::kScale == 0) return m.cents() / Money::kScale;
  return m.ToDouble();
}

OptionChain ParseJson(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCategory::kParse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCategory::kSchema, "chain must be a JSON object");
  for (const char* key : {"underlying", "valuation", "expiry", "quotes"}) {
    if (!doc.contains(key)) {
      throw Error(ErrorCategory::kSchema, std::string("missing header field ") + key);
    }
  }
  Money underlying = JsonMoney(doc["underlying"], "header", "underlying");
  auto date = [&](const char* key) {
    const json& v = doc[key];
    std::optional<Date> d;
    if (v.is_string()) d = Date::Parse(v.get<std::string>());
    if (!d) FailField("header", key, "expected YYYY-MM-DD");
    return *d;
  };
  Date valuation = date("valuation");
  Date expiry = date("expiry");
  if (!doc["quotes"].is_array()) throw Error(ErrorCategory::kSchema, "quotes must be an array");

  std::vector<OptionQuote> quotes;
  std::size_t index = 0;
  for (const json& item : doc["quotes"]) {
    std::string where = "quote " + std::to_string(index++);
    if (!item.is_object()) throw Error(ErrorCategory::kParse, where + ": expected an object");
    OptionQuote q;
    if (!item.contains("strike") || !item["strike"].is_number_integer()) {
      FailField(where, "strike", "expected an integer");
    }
    q.strike = item["strike"].get<std::int64_t>();
    std::optional<Right> right;
    if (item.contains("right") && item["right"].is_string()) {
      right = ParseRight(item["right"].get<std::string>());
    }
    if (!right) FailField(where, "right", "expected call or put");
    q.right = *right;
    if (item.contains("bid") && !item["bid"].is_null()) q.bid = JsonMoney(item["bid"], where, "bid");
    if (item.contains("ask") && !item["ask"].is_null()) q.ask = JsonMoney(item["ask"], where, "ask");
    if (item.contains("volume") && !item["volume"].is_null()) {
      if (!item["volume"].is_number_integer()) FailField(where, "volume", "expected an integer");
      q.volume = item["volume"].get<std::int64_t>();
    }
    CheckQuoteDomain(q, where);
    quotes.push_back(q);
  }
  return OptionChain(underlying, valuation, expiry, std::move(quotes));
}

// Walks quotes of one right in strike order, comparing each quoted side
// against the previous quoted value of the same side.
void CheckLadder(const OptionChain& chain, Right right, bool decreasing,
                 ValidationReport& report) {
  std::optional<std::pair<Strike, Money>> last_ask, last_bid;
  auto check = [&](std::optional<std::pair<Strike, Money>>& last, Strike strike,
                   Money value, ViolationKind kind, std::string_view side) {
    if (last) {
      bool ok = decreasing ? value < last->second : value > last->second;
      if (!ok) {
        std::ostringstream msg;
        msg << RightName(right) << " " << side << " not "
            << (decreasing ? "decreasing" : "increasing") << " at strike " << strike
            << " (" << last->second << " at " << last->first << ", " << value << ")";
        report.push_back({kind, right, strike, msg.str()});
      }
    }
    last = std::make_pair(strike, value);
  };
  for (Strike strike : chain.Strikes(right)) {
    const OptionQuote& q = *chain.Find(strike, right);
    if (q.ask) {
      check(last_ask, strike, *q.ask,
            right == Right::kCall ? ViolationKind::kCallAskNotDecreasing
                                  : ViolationKind::kPutAskNotIncreasing,
            "ask");
    }
    if (q.bid) {
      check(last_bid, strike, *q.bid,
            right == Right::kCall ? ViolationKind::kCallBidNotDecreasing
                                  : ViolationKind::kPutBidNotIncreasing,
            "bid");
    }
  }
}

}  // namespace

std::string_view RightName(Right right) {
  return right == Right::kCall ? "call" : "put";
}

std::optional<Right> ParseRight(std::string_view text) {
  if (text == "call" || text == "CALL" || text == "Call") return Right::kCall;
  if (text == "put" || text == "PUT" || text == "Put") return Right::kPut;
  return std::nullopt;
}

OptionChain::OptionChain(Money underlying_price, Date valuation_date,
                         Date expiry_date, std::vector<OptionQuote> quotes)
    : underlying_price_(underlying_price),
      valuation_date_(valuation_date),
      expiry_date_(expiry_date) {
  if (underlying_price <= Money()) {
    throw Error(ErrorCategory::kSchema, "underlying price must be positive");
  }
  if (expiry_date < valuation_date) {
    throw Error(ErrorCategory::kSchema, "expiry " + expiry_date.ToString() +
                                            " precedes valuation " +
                                            valuation_date.ToString());
  }
  if (quotes.empty()) throw Error(ErrorCategory::kSchema, "no quotes");
  for (const OptionQuote& q : quotes) {
    CheckQuoteDomain(q, "strike " + std::to_string(q.strike));
    auto [it, inserted] = quotes_.emplace(Key{q.right, q.strike}, q);
    if (!inserted) {
      throw Error(ErrorCategory::kDuplicateQuote,
                  "duplicate " + std::string(RightName(q.right)) + " quote at strike " +
                      std::to_string(q.strike));
    }
  }
}

const OptionQuote* OptionChain::Find(Strike strike, Right right) const {
  auto it = quotes_.find(Key{right, strike});
  return it == quotes_.end() ? nullptr : &it->second;
}

std::vector<Strike> OptionChain::Strikes(Right right) const {
  std::vector<Strike> out;
  for (const auto& [key, q] : quotes_) {
    if (key.first == right) out.push_back(key.second);
  }
  return out;
}

OptionChain ParseChain(std::string_view source, ChainFormat format) {
  return format == ChainFormat::kCsv ? ParseCsv(source) : ParseJson(source);
}

std::string SerializeChain(const OptionChain& chain, ChainFormat format) {
  if (format == ChainFormat::kJson) {
    json doc;
    doc["underlying"] = MoneyJson(chain.underlying_price());
    doc["valuation"] = chain.valuation_date().ToString();
    doc["expiry"] = chain.expiry_date().ToString();
    json quotes = json::array();
    for (const auto& [key, q] : chain.quotes()) {
      quotes.push_back({{"strike", q.strike},
                        {"right", RightName(q.right)},
                        {"bid", q.bid ? MoneyJson(*q.bid) : json(nullptr)},
                        {"ask", q.ask ? MoneyJson(*q.ask) : json(nullptr)},
                        {"volume", q.volume}});
    }
    doc["quotes"] = std::move(quotes);
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "underlying=" << chain.underlying_price() << "\n"
      << "valuation=" << chain.valuation_date().ToString() << "\n"
      << "expiry=" << chain.expiry_date().ToString() << "\n"
      << "strike,right,bid,ask,volume\n";
  for (const auto& [key, q] : chain.quotes()) {
    out << q.strike << "," << RightName(q.right) << ","
        << (q.bid ? q.bid->ToString() : "") << "," << (q.ask ? q.ask->ToString() : "")
        << "," << q.volume << "\n";
  }
  return out.str();
}

ValidationReport ValidateChain(const OptionChain& chain) {
  ValidationReport report;
  for (const auto& [key, q] : chain.quotes()) {
    if (q.bid && q.ask && *q.bid >= *q.ask) {
      std::ostringstream msg;
      msg << "bid >= ask at strike " << q.strike << " (" << RightName(q.right)
          << " bid " << *q.bid << ", ask " << *q.ask << ")";
      report.push_back({ViolationKind::kBidNotBelowAsk, q.right, q.strike, msg.str()});
    }
  }
  CheckLadder(chain, Right::kCall, /*decreasing=*/true, report);
  CheckLadder(chain, Right::kPut, /*decreasing=*/false, report);
  return report;
}

void SeriesSelection::Validate() const {
  const std::size_t n = call_strikes.size();
  auto fail = [](const std::string& why) { throw Error(ErrorCategory::kSelection, why); };
  if (n == 0) fail("empty series");
  if (call_asks.size() != n || call_bids.size() != n || put_strikes.size() != n ||
      put_asks.size() != n || put_bids.size() != n) {
    fail("series vectors differ in length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (call_strikes[i] <= 0 || put_strikes[i] <= 0) fail("strikes must be positive");
    if (i + 1 < n && (call_strikes[i] >= call_strikes[i + 1] ||
                      put_strikes[i] >= put_strikes[i + 1])) {
      fail("strikes must ascend strictly");
    }
    if (call_bids[i] >= call_asks[i]) {
      fail("call bid >= ask at strike " + std::to_string(call_strikes[i]));
    }
    if (put_bids[i] >= put_asks[i]) {
      fail("put bid >= ask at strike " + std::to_string(put_strikes[i]));
    }
  }
}

SeriesSelection SelectSeries(const OptionChain& chain, std::size_t n,
                             Strike call_anchor, Strike put_anchor) {
  if (n == 0) throw Error(ErrorCategory::kSelection, "series length must be positive");
  SeriesSelection out;
  auto take = [&](Right right, Strike anchor, std::vector<Strike>& strikes,
                  std::vector<Money>& asks, std::vector<Money>& bids) {
    std::vector<Strike> listed = chain.Strikes(right);
    auto it = std::find(listed.begin(), listed.end(), anchor);
    std::string name(RightName(right));
    if (it == listed.end()) {
      throw Error(ErrorCategory::kSelection,
                  name + " anchor " + std::to_string(anchor) + " is not listed");
    }
    auto available = static_cast<std::size_t>(listed.end() - it);
    if (available < n) {
      throw Error(ErrorCategory::kSelection,
                  "only " + std::to_string(available) + " " + name + " strikes from " +
                      std::to_string(anchor) + ", need " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i, ++it) {
      const OptionQuote& q = *chain.Find(*it, right);
      if (!q.ask || !q.bid) {
        throw Error(ErrorCategory::kSelection,
                    "missing " + name + " " + (q.ask ? "bid" : "ask") + " at strike " +
                        std::to_string(q.strike));
      }
      strikes.push_back(q.strike);
      asks.push_back(*q.ask);
      bids.push_back(*q.bid);
    }
  };
  take(Right::kCall, call_anchor, out.call_strikes, out.call_asks, out.call_bids);
  take(Right::kPut, put_anchor, out.put_strikes, out.put_asks, out.put_bids);
  out.Validate();
  return out;
}

}  // namespace optfolio

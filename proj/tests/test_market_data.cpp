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

#include <random>
#include <string>

#include "doctest.h"
#include "optfolio/error.hpp"
#include "optfolio/market_data.hpp"
#include "support/test_support.hpp"

using namespace optfolio;
using optfolio::testing::ThrownCategory;

namespace {

const char* kHeader = "underlying=8067.6\nvaluation=2016-05-16\nexpiry=2016-05-25\n";

OptionChain Csv(const std::string& body) {
  return ParseChain(std::string(kHeader) + body, ChainFormat::kCsv);
}

std::string ErrorDetail(const std::string& source, ChainFormat format) {
  try {
    ParseChain(source, format);
  } catch (const Error& e) {
    return std::string(CategoryName(e.category())) + ":" + e.detail();
  }
  return "";
}

// Unordered prices by default; `ordered` draws prices that pass validation.
OptionChain RandomChain(std::mt19937_64& rng, bool ordered = false) {
  std::uniform_int_distribution<std::int64_t> cents(1, 50000);
  std::uniform_int_distribution<int> coin(0, 5);
  std::uniform_int_distribution<std::int64_t> vol(0, 100000);
  std::vector<OptionQuote> quotes;
  for (Right right : {Right::kCall, Right::kPut}) {
    Strike k = 7000;
    const int count = 1 + coin(rng) * 2;
    std::int64_t level = right == Right::kCall ? 60000 : 100;
    for (int i = 0; i < count; ++i) {
      k += 25 * (1 + coin(rng));
      OptionQuote q;
      q.strike = k;
      q.right = right;
      if (ordered) {
        level += (right == Right::kCall ? -1 : 1) * (1 + cents(rng) % 3000);
        if (coin(rng) != 0) q.bid = Money::FromCents(level - 1);
        if (coin(rng) != 0) q.ask = Money::FromCents(level);
      } else {
        if (coin(rng) != 0) q.bid = Money::FromCents(cents(rng) - 1);
        if (coin(rng) != 0) q.ask = Money::FromCents(cents(rng));
      }
      q.volume = vol(rng);
      quotes.push_back(q);
    }
  }
  return OptionChain(Money::FromCents(cents(rng) * 20), Date{2016, 5, 16}, Date{2016, 5, 25},
                     quotes);
}

}  // namespace

TEST_CASE("csv record maps field by field") {
  OptionChain chain = Csv("8050,call,174,178,5274\n");
  const OptionQuote* q = chain.Find(8050, Right::kCall);
  REQUIRE(q);
  CHECK(q->strike == 8050);
  CHECK(q->right == Right::kCall);
  CHECK(q->bid == Money::FromUnits(174));
  CHECK(q->ask == Money::FromUnits(178));
  CHECK(q->volume == 5274);
  CHECK(chain.underlying_price() == Money::FromCents(806760));
  CHECK(chain.valuation_date() == Date{2016, 5, 16});
  CHECK(chain.expiry_date() == Date{2016, 5, 25});
  CHECK(chain.Find(8050, Right::kPut) == nullptr);
}

TEST_CASE("csv accepts column header, comments, blank lines and absent sides") {
  OptionChain chain = Csv(
      "strike,right,bid,ask,volume\n"
      "# comment\n"
      "\n"
      "8050,put,,78,0\n"
      "8150,PUT,130,,12\n");
  CHECK_FALSE(chain.Find(8050, Right::kPut)->bid);
  CHECK(chain.Find(8050, Right::kPut)->ask == Money::FromUnits(78));
  CHECK_FALSE(chain.Find(8150, Right::kPut)->ask);
  CHECK(chain.Strikes(Right::kPut) == std::vector<Strike>{8050, 8150});
  CHECK(chain.Strikes(Right::kCall).empty());
}

TEST_CASE("empty quote section is a schema error") {
  CHECK(ErrorDetail(kHeader, ChainFormat::kCsv) == "schema:no quotes");
  CHECK(ErrorDetail(R"({"underlying":1,"valuation":"2016-05-16","expiry":"2016-05-25","quotes":[]})",
                    ChainFormat::kJson) == "schema:no quotes");
}

TEST_CASE("duplicate strike and right") {
  CHECK(ThrownCategory([] { Csv("8050,call,174,178,1\n8050,call,170,175,2\n"); }) ==
        ErrorCategory::kDuplicateQuote);
  // Same strike on the other right is fine.
  CHECK_NOTHROW(Csv("8050,call,174,178,1\n8050,put,70,75,2\n"));
}

TEST_CASE("missing header field is a schema error") {
  CHECK(ErrorDetail("valuation=2016-05-16\nexpiry=2016-05-25\n8050,call,1,2,3\n",
                    ChainFormat::kCsv) == "schema:missing header field underlying");
  CHECK(ThrownCategory([] {
          ParseChain(R"({"underlying":1,"valuation":"2016-05-16","quotes":[]})",
                     ChainFormat::kJson);
        }) == ErrorCategory::kSchema);
  CHECK(ThrownCategory([] {
          ParseChain("underlying=1\nvaluation=2016-05-26\nexpiry=2016-05-25\n8050,call,1,2,3\n",
                     ChainFormat::kCsv);
        }) == ErrorCategory::kSchema);
}

TEST_CASE("malformed records name the row and field") {
  std::string d = ErrorDetail(std::string(kHeader) + "8050,call,174,178,1\n8150,call,1x,2,3\n",
                              ChainFormat::kCsv);
  CHECK(d.rfind("parse:", 0) == 0);
  CHECK(d.find("row 5") != std::string::npos);  // source line number
  CHECK(d.find("field bid") != std::string::npos);

  d = ErrorDetail(std::string(kHeader) + "8050,straddle,1,2,3\n", ChainFormat::kCsv);
  CHECK(d.find("field right") != std::string::npos);
  d = ErrorDetail(std::string(kHeader) + "8050,call,1,2\n", ChainFormat::kCsv);
  CHECK(d.rfind("parse:", 0) == 0);
  d = ErrorDetail(std::string(kHeader) + "-5,call,1,2,3\n", ChainFormat::kCsv);
  CHECK(d.find("field strike") != std::string::npos);
  d = ErrorDetail(std::string(kHeader) + "8050,call,1,0,3\n", ChainFormat::kCsv);
  CHECK(d.find("field ask") != std::string::npos);
  d = ErrorDetail(std::string(kHeader) + "8050,call,1,2.001,3\n", ChainFormat::kCsv);
  CHECK(d.find("field ask") != std::string::npos);
  d = ErrorDetail(R"({"underlying":1,"valuation":"2016-05-16","expiry":"2016-05-25",
                      "quotes":[{"strike":"x","right":"call"}]})",
                  ChainFormat::kJson);
  CHECK(d.find("field strike") != std::string::npos);
  CHECK(ThrownCategory([] { ParseChain("{not json", ChainFormat::kJson); }) ==
        ErrorCategory::kParse);
}

TEST_CASE("serialization round trips every field") {
  std::mt19937_64 rng(20160516);
  for (int trial = 0; trial < 200; ++trial) {
    OptionChain chain = RandomChain(rng);
    for (ChainFormat f : {ChainFormat::kCsv, ChainFormat::kJson}) {
      std::string text = SerializeChain(chain, f);
      OptionChain back = ParseChain(text, f);
      REQUIRE(back == chain);
      CHECK(SerializeChain(back, f) == text);
    }
  }
}

TEST_CASE("fixture csv and json describe the same chain") {
  using optfolio::testing::FixturePath;
  using optfolio::testing::ReadText;
  OptionChain csv = ParseChain(ReadText(FixturePath("chain.csv")), ChainFormat::kCsv);
  OptionChain json = ParseChain(ReadText(FixturePath("chain.json")), ChainFormat::kJson);
  CHECK(csv == json);
  CHECK(ValidateChain(csv).empty());
}

TEST_CASE("validate_chain") {
  SUBCASE("decreasing call asks are valid") {
    OptionChain c = Csv("8000,call,290,300,1\n8100,call,210,220,1\n8200,call,140,150,1\n");
    CHECK(ValidateChain(c).empty());
  }
  SUBCASE("bid above ask") {
    OptionChain c = Csv("8050,call,178,174,1\n");
    ValidationReport r = ValidateChain(c);
    REQUIRE(r.size() == 1);
    CHECK(r[0].kind == ViolationKind::kBidNotBelowAsk);
    CHECK(r[0].strike == 8050);
    CHECK(r[0].message.find("bid >= ask at strike 8050") != std::string::npos);
  }
  SUBCASE("bid equal to ask") {
    ValidationReport r = ValidateChain(Csv("8050,put,10,10,1\n"));
    REQUIRE(r.size() == 1);
    CHECK(r[0].kind == ViolationKind::kBidNotBelowAsk);
  }
  SUBCASE("put asks falling") {
    OptionChain c = Csv("8000,put,100,120,1\n8100,put,105,110,1\n");
    ValidationReport r = ValidateChain(c);
    REQUIRE(r.size() == 1);
    CHECK(r[0].kind == ViolationKind::kPutAskNotIncreasing);
    CHECK(r[0].right == Right::kPut);
    CHECK(r[0].strike == 8100);
    CHECK(r[0].message.find("put ask not increasing") != std::string::npos);
  }
  SUBCASE("every violation is reported") {
    OptionChain c = Csv(
        "8000,call,100,120,1\n8100,call,100,130,1\n"  // ask rises, bid flat
        "8000,put,50,40,1\n");                        // bid above ask
    ValidationReport r = ValidateChain(c);
    CHECK(r.size() == 3);
  }
  SUBCASE("absent sides are skipped") {
    OptionChain c = Csv("8000,call,,120,1\n8100,call,100,,1\n8200,call,90,100,1\n");
    CHECK(ValidateChain(c).empty());
  }
}

TEST_CASE("select_series") {
  using optfolio::testing::FixturePath;
  using optfolio::testing::ReadText;
  OptionChain chain = ParseChain(ReadText(FixturePath("chain.csv")), ChainFormat::kCsv);

  SUBCASE("reference ladders") {
    SeriesSelection s = SelectSeries(chain, 6, 8050, 7850);
    CHECK(s.call_strikes == std::vector<Strike>{8050, 8150, 8250, 8350, 8400, 8500});
    CHECK(s.put_strikes == std::vector<Strike>{7850, 7950, 8050, 8150, 8250, 8350});
    CHECK(s.size() == 6);
    CHECK(s.call_asks[0] == *chain.Find(8050, Right::kCall)->ask);
    CHECK(s.put_bids[5] == *chain.Find(8350, Right::kPut)->bid);
    CHECK_NOTHROW(s.Validate());
  }
  SUBCASE("single strike") {
    SeriesSelection s = SelectSeries(chain, 1, 8150, 8150);
    CHECK(s.call_strikes == std::vector<Strike>{8150});
    CHECK(s.put_strikes == std::vector<Strike>{8150});
  }
  SUBCASE("deterministic") {
    CHECK(SelectSeries(chain, 4, 7950, 7750) == SelectSeries(chain, 4, 7950, 7750));
  }
  SUBCASE("gaps are selection errors") {
    CHECK(ThrownCategory([&] { SelectSeries(chain, 6, 8500, 7850); }) ==
          ErrorCategory::kSelection);
    CHECK(ThrownCategory([&] { SelectSeries(chain, 2, 8075, 7850); }) ==
          ErrorCategory::kSelection);
    CHECK(ThrownCategory([&] { SelectSeries(chain, 0, 8050, 7850); }) ==
          ErrorCategory::kSelection);
  }
  SUBCASE("missing put bid") {
    OptionChain c = Csv("7850,put,16,18,1\n7950,put,,39,1\n8050,call,94,98,1\n8150,call,51,53,1\n");
    try {
      SelectSeries(c, 2, 8050, 7850);
      FAIL("expected a selection error");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::kSelection);
      CHECK(e.detail() == "missing put bid at strike 7950");
    }
  }
}

TEST_CASE("selection from a valid chain satisfies the series invariants") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    OptionChain chain = RandomChain(rng, true);
    REQUIRE(ValidateChain(chain).empty());
    auto calls = chain.Strikes(Right::kCall);
    auto puts = chain.Strikes(Right::kPut);
    const std::size_t n = std::min(calls.size(), puts.size());
    try {
      SeriesSelection s = SelectSeries(chain, n, calls.front(), puts.front());
      CHECK_NOTHROW(s.Validate());
      ++checked;
    } catch (const Error& e) {
      // Only a missing side may stop a valid chain.
      CHECK(e.detail().rfind("missing", 0) == 0);
    }
  }
  CHECK(checked > 0);
}

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

#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "optfolio/error.hpp"
#include "optfolio/payoff.hpp"
#include "support/test_support.hpp"

using namespace optfolio;
using optfolio::testing::ThrownCategory;

namespace {

std::shared_ptr<const SeriesSelection> TwoStrikes() {
  auto s = std::make_shared<SeriesSelection>();
  s->call_strikes = {8050, 8150};
  s->call_asks = {Money::FromUnits(100), Money::FromUnits(60)};
  s->call_bids = {Money::FromUnits(95), Money::FromUnits(55)};
  s->put_strikes = {8050, 8150};
  s->put_asks = {Money::FromUnits(55), Money::FromUnits(110)};
  s->put_bids = {Money::FromUnits(50), Money::FromUnits(105)};
  return s;
}

Portfolio ReferencePortfolio() {
  auto col = optfolio::testing::ReferenceColumns()[0];
  return Portfolio(optfolio::testing::ReferenceSeries(), col.calls, col.puts);
}

Portfolio RandomPortfolio(std::mt19937_64& rng, std::shared_ptr<const SeriesSelection> s) {
  std::uniform_int_distribution<std::int64_t> q(-12, 12);
  std::vector<std::int64_t> c(s->size()), p(s->size());
  for (auto& v : c) v = q(rng);
  for (auto& v : p) v = q(rng);
  return Portfolio(std::move(s), c, p);
}

ComboPrices Sides(const SeriesSelection& s, Side call_side, Side put_side) {
  ComboPrices out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.calls.push_back({call_side, call_side == Side::kAsk ? s.call_asks[i] : s.call_bids[i]});
    out.puts.push_back({put_side, put_side == Side::kAsk ? s.put_asks[i] : s.put_bids[i]});
  }
  return out;
}

}  // namespace

TEST_CASE("payoff examples") {
  auto s = TwoStrikes();
  CHECK(Payoff(Portfolio(s), Money::FromUnits(8100)).is_zero());
  CHECK(Payoff(Portfolio(s, {1, 0}, {0, 0}), Money::FromUnits(8400)) == Money::FromUnits(350));
  CHECK(Payoff(Portfolio(s, {1, 0}, {0, 0}), Money::FromUnits(8000)).is_zero());
  CHECK(Payoff(Portfolio(s, {0, 0}, {0, -2}), Money::FromCents(810050)) ==
        Money::FromCents(-2 * 4950));
  // Hand evaluation: 4*350 - 8*250 + 10*150 - 8*50 - 5*0 + 7*0 on calls, puts all out.
  CHECK(Payoff(ReferencePortfolio(), Money::FromUnits(8400)) == Money::FromUnits(500));
}

TEST_CASE("portfolio shape") {
  auto s = TwoStrikes();
  CHECK(ThrownCategory([&] { Portfolio(s, {1}, {0, 0}); }) == ErrorCategory::kBuilder);
  Portfolio p(s, {1, -2}, {3, 0});
  CHECK(p.Slots() == std::vector<std::int64_t>{1, -2, 3, 0});
  CHECK(p.TotalContracts() == 6);
  Portfolio sum = p + Portfolio(s, {-1, 2}, {0, 4});
  CHECK(sum.calls() == std::vector<std::int64_t>{0, 0});
  CHECK(sum.puts() == std::vector<std::int64_t>{3, 4});
  for (const auto& col : optfolio::testing::ReferenceColumns()) {
    Portfolio ref(optfolio::testing::ReferenceSeries(), col.calls, col.puts);
    CHECK_MESSAGE(ref.TotalContracts() == col.total_contracts, col.name);
  }
}

TEST_CASE("initial cost and pnl") {
  auto s = TwoStrikes();
  CHECK(InitialCost(Portfolio(s), Sides(*s, Side::kBid, Side::kBid)).is_zero());
  // Long two calls at ask 100.
  Portfolio two_calls(s, {2, 0}, {0, 0});
  ComboPrices ask_calls = Sides(*s, Side::kBid, Side::kBid);
  ask_calls.calls[0] = {Side::kAsk, Money::FromUnits(100)};
  CHECK(InitialCost(two_calls, ask_calls) == Money::FromUnits(200));
  // Short three puts at bid 50 is a credit.
  Portfolio short_puts(s, {0, 0}, {-3, 0});
  CHECK(InitialCost(short_puts, Sides(*s, Side::kBid, Side::kBid)) == Money::FromUnits(-150));

  Portfolio one_call(s, {1, 0}, {0, 0});
  CHECK(Pnl(one_call, ask_calls, Money::FromUnits(8400)) == Money::FromUnits(250));
  Portfolio one_short_put(s, {0, 0}, {-1, 0});
  CHECK(Pnl(one_short_put, Sides(*s, Side::kBid, Side::kBid), Money::FromUnits(8400)) ==
        Money::FromUnits(50));
  for (int price : {7000, 8050, 8100, 9000}) {
    CHECK(Pnl(Portfolio(s), Sides(*s, Side::kBid, Side::kBid), Money::FromUnits(price)).is_zero());
  }
}

TEST_CASE("price side must match the position sign") {
  auto s = TwoStrikes();
  CHECK(ThrownCategory([&] {
          InitialCost(Portfolio(s, {1, 0}, {0, 0}), Sides(*s, Side::kBid, Side::kBid));
        }) == ErrorCategory::kConsistency);
  CHECK(ThrownCategory([&] {
          InitialCost(Portfolio(s, {0, 0}, {0, -1}), Sides(*s, Side::kAsk, Side::kAsk));
        }) == ErrorCategory::kConsistency);
  // Zero quantities cost nothing on either side.
  CHECK(InitialCost(Portfolio(s), Sides(*s, Side::kAsk, Side::kAsk)).is_zero());
  Portfolio p(s, {1, -1}, {0, 2});
  ComboPrices m = MarketPrices(p);
  CHECK(m.calls[0].side == Side::kAsk);
  CHECK(m.calls[1].side == Side::kBid);
  CHECK(m.puts[0].side == Side::kBid);
  CHECK(m.puts[1].side == Side::kAsk);
  CHECK(InitialCost(p, m) == Money::FromUnits(100 - 55 + 2 * 110));
}

TEST_CASE("payoff curve examples") {
  auto s = TwoStrikes();
  PayoffCurve zero = ComputePayoffCurve(Portfolio(s));
  CHECK(zero.breakpoints == std::vector<Strike>{8050, 8150});
  CHECK(zero.values == std::vector<Money>{Money(), Money()});
  CHECK(zero.left_tail_slope == 0);
  CHECK(zero.right_tail_slope == 0);
  CHECK(zero.interval_slopes == std::vector<std::int64_t>{0});

  PayoffCurve call = ComputePayoffCurve(Portfolio(s, {1, 0}, {0, 0}));
  CHECK(call.left_tail_slope == 0);
  CHECK(call.interval_slopes == std::vector<std::int64_t>{1});
  CHECK(call.right_tail_slope == 1);
  CHECK(call.values == std::vector<Money>{Money(), Money::FromUnits(100)});
  CHECK(call.ValueAt(Money::FromUnits(8300)) == Money::FromUnits(250));
  CHECK(call.ValueAt(Money::FromUnits(7000)).is_zero());

  PayoffCurve ref = ComputePayoffCurve(ReferencePortfolio());
  CHECK(ref.left_tail_slope == 0);
  CHECK(ref.right_tail_slope == 0);
  CHECK(ref.values.front() == Money::FromUnits(-200));
  CHECK(ref.ValueAt(Money::FromUnits(7000)) == Money::FromUnits(-200));
  CHECK(ref.breakpoints ==
        std::vector<Strike>{7850, 7950, 8050, 8150, 8250, 8350, 8400, 8500});
  CHECK(ref.interval_slopes == std::vector<std::int64_t>{0, 0, 1, 1, 6, -2, -7});
}

TEST_CASE("payoff curve csv") {
  auto s = TwoStrikes();
  PayoffCurve call = ComputePayoffCurve(Portfolio(s, {1, 0}, {0, 0}));
  CHECK(call.ToCsv() == "price,value\n7950,0\n8050,0\n8150,100\n8250,200\n");
}

TEST_CASE("interval slopes") {
  Portfolio ref = ReferencePortfolio();
  const std::size_t m = UniqueStrikes(ref.series()).size();
  CHECK(m == 8);
  CHECK(IntervalSlope(ref, 0) == 0);
  CHECK(IntervalSlope(ref, m) == 0);
  auto s = TwoStrikes();
  for (std::size_t q = 0; q <= 2; ++q) CHECK(IntervalSlope(Portfolio(s), q) == 0);
  CHECK(IntervalSlope(Portfolio(s, {0, 0}, {2, 1}), 0) == -3);
  CHECK(IntervalSlope(Portfolio(s, {2, 1}, {0, 0}), 2) == 3);
  CHECK(ThrownCategory([&] { IntervalSlope(ref, m + 1); }) == ErrorCategory::kBuilder);
}

TEST_CASE("unique strikes") {
  CHECK(UniqueStrikes(*TwoStrikes()).size() == 2);
  auto disjoint = std::make_shared<SeriesSelection>(*TwoStrikes());
  disjoint->put_strikes = {7000, 7100};
  CHECK(UniqueStrikes(*disjoint) == std::vector<Strike>{7000, 7100, 8050, 8150});
}

TEST_CASE("payoff properties on random portfolios") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> n_dist(1, 7);
    auto s = std::shared_ptr<const SeriesSelection>(optfolio::testing::RandomSeries(rng, n_dist(rng)));
    Portfolio a = RandomPortfolio(rng, s);
    Portfolio b = RandomPortfolio(rng, s);
    PayoffCurve curve = ComputePayoffCurve(a);
    const auto& k = curve.breakpoints;
    REQUIRE(k == UniqueStrikes(*s));
    REQUIRE(curve.values.size() == k.size());
    REQUIRE(curve.interval_slopes.size() + 1 == k.size());

    for (std::size_t q = 0; q < k.size(); ++q) {
      // Breakpoint values against the direct sum.
      CHECK(curve.values[q].cents() ==
            optfolio::testing::DirectPayoff(*s, a.calls(), a.puts(), k[q] * 100));
    }
    for (std::size_t q = 0; q + 1 < k.size(); ++q) {
      Money rise = Payoff(a, Money::FromUnits(k[q + 1])) - Payoff(a, Money::FromUnits(k[q]));
      CHECK(rise == curve.interval_slopes[q] * Money::FromUnits(k[q + 1] - k[q]));
      CHECK(curve.interval_slopes[q] == IntervalSlope(a, q + 1));
    }
    CHECK(curve.left_tail_slope == IntervalSlope(a, 0));
    CHECK(curve.right_tail_slope == IntervalSlope(a, k.size()));

    std::uniform_int_distribution<std::int64_t> cents(k.front() * 100 - 50000, k.back() * 100 + 50000);
    for (int i = 0; i < 20; ++i) {
      Money price = Money::FromCents(cents(rng));
      CHECK(Payoff(a + b, price) == Payoff(a, price) + Payoff(b, price));
      CHECK(curve.ValueAt(price) == Payoff(a, price));
    }

    // Zero-sum tails are flat beyond the outer strikes.
    std::vector<std::int64_t> calls = a.calls(), puts = a.puts();
    calls.back() -= IntervalSlope(a, k.size());
    puts.back() += IntervalSlope(a, 0);
    Portfolio flat(s, calls, puts);
    REQUIRE(IntervalSlope(flat, 0) == 0);
    REQUIRE(IntervalSlope(flat, k.size()) == 0);
    const Money left = Payoff(flat, Money::FromUnits(k.front()));
    const Money right = Payoff(flat, Money::FromUnits(k.back()));
    for (std::int64_t d : {1, 7, 100, 1000}) {
      CHECK(Payoff(flat, Money::FromCents(k.front() * 100 - d)) == left);
      CHECK(Payoff(flat, Money::FromCents(k.back() * 100 + d)) == right);
    }
  }
}

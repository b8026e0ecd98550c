#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fftrade/insights.hpp"
#include "fftrade/synthetic.hpp"
#include "fftrade/trade_engine.hpp"
#include "support.hpp"

using namespace fftrade;
using namespace testkit;
using Catch::Matchers::WithinAbs;

namespace {

TradePackage trade(std::vector<std::string> a_receives, std::vector<std::string> b_receives,
                   ComputeMode mode = ComputeMode::sme) {
    TradePackage t;
    t.team_a = "T1";
    t.team_b = "T2";
    t.a_receives = std::move(a_receives);
    t.b_receives = std::move(b_receives);
    t.compute_mode = mode;
    t.pairing_angle = 60.0;
    return t;
}

std::optional<FilterRule> verdict(const TradePackage& t, const TradeContext& ctx) {
    auto scored = t;
    scored.insights = compute_insights(t, ctx, logistic_upside({}));
    FilterConfig cfg;
    for (auto rule : {FilterRule::T_parity, FilterRule::T_pain, FilterRule::T_upside}) cfg.set_enabled(rule, false);
    return first_failing_rule(scored, ctx, {}, cfg);
}

// A receives b (value 60), B receives a (value 100); costs mirror each other.
struct Mirror {
    League league = testkit::league(rules({{"QB", {Position::QB}, 1}, {"RB", {Position::RB}, 1}}),
                                    {{"T1", {player("a", Position::QB, 300), player("c", Position::RB, 200)}},
                                     {"T2", {player("b", Position::QB, 300), player("d", Position::RB, 200)}}});
    ValuationSheet values = sheet({{"a", 10}, {"b", 6}, {"c", 10}, {"d", 10}}, 10);
};

}  // namespace

TEST_CASE("parity examples") {
    const Mirror m;
    const TradeContext ctx(m.league, m.values);
    REQUIRE(ctx.cost("a") == ctx.cost("b"));
    CHECK_THAT(parity(trade({"b"}, {"a"}), ctx), WithinAbs(0.2, 1e-12));
    CHECK_THAT(parity(trade({"d"}, {"c"}), ctx), WithinAbs(0.0, 1e-15));
}

TEST_CASE("parity is symmetric in the two teams") {
    const Mirror m;
    const TradeContext ctx(m.league, m.values);
    for (const auto& t : {trade({"b"}, {"a"}), trade({"b", "d"}, {"c"}), trade({"d"}, {"a", "c"})}) {
        auto swapped = t;
        std::swap(swapped.team_a, swapped.team_b);
        std::swap(swapped.a_receives, swapped.b_receives);
        CHECK(parity(t, ctx) == parity(swapped, ctx));
    }
}

TEST_CASE("impact is incoming value over outgoing cost") {
    // T1's two equal QBs: a ranks below e so a costs 0.5.
    const auto l = league(rules({{"QB", {Position::QB}, 1}}),
                          {{"T1", {player("a", Position::QB, 200), player("e", Position::QB, 200)}},
                           {"T2", {player("b", Position::QB, 250)}}});
    const auto s = sheet({{"a", 8}, {"b", 10}, {"e", 9}}, 10);
    const TradeContext ctx(l, s);
    REQUIRE(ctx.value("b") == 100);
    REQUIRE(ctx.cost("a") == 50);
    const auto t = trade({"b"}, {"a"});
    CHECK(impact(t, "T1", ctx) == 2.0);
    CHECK(impact(t, "T2", ctx) == 80.0 / 100.0);
    CHECK_THROWS_AS(impact(t, "T3", ctx), std::invalid_argument);
}

TEST_CASE("pain compares outgoing cost with outgoing value") {
    const auto l = league(rules({{"QB", {Position::QB}, 1}, {"RB", {Position::RB}, 1}}),
                          {{"T1", {player("a", Position::QB, 300), player("e", Position::RB, 10)}},
                           {"T2", {player("b", Position::QB, 250)}}});
    const auto s = sheet({{"a", 2}, {"b", 5}, {"e", 10}}, 10);
    const TradeContext ctx(l, s);

    // T2 gives its only player: cost 1.0 against normalized value 1.0.
    CHECK(pain(trade({"b"}, {"a"}), "T2", ctx) == 1.0);

    const double low_value = pain(trade({"b"}, {"a"}), "T1", ctx);
    CHECK(low_value > 1.0);
    CHECK_THAT(low_value, WithinAbs((ctx.cost("a") / 100.0) / (20.0 / 100.0), 1e-12));

    const double high_value = pain(trade({"b"}, {"e"}), "T1", ctx);
    CHECK(high_value < 1.0);
    CHECK_THAT(high_value, WithinAbs(ctx.cost("e") / 100.0, 1e-12));
}

TEST_CASE("upside is a logistic score") {
    const UpsideWeights zero{0, 0, 0, 0, 0};
    CHECK(upside({0.3, 1.2, 0.4, 2.0}, zero) == 0.5);
    CHECK(upside({0.9, 9, 1, 0}, zero) == 0.5);

    const UpsideWeights strict{0, -10, 0, 0, 0};
    CHECK(upside({0, 1, 0.5, 1}, strict) > upside({1, 1, 0.5, 1}, strict));

    // 1 - 0.4 - 0.8 - 0.5 + 1.2 = 0.5
    CHECK_THAT(upside({0.1, 0.8, 0.5, 1.2}, UpsideWeights{}), WithinAbs(1.0 / (1.0 + std::exp(-0.5)), 1e-12));

    const auto f = upside_features({0.2, 1.5, 0.7, 0.8, 1.2, 0.0}, 45.0);
    CHECK(f.parity == 0.2);
    CHECK(f.mean_pain == 1.0);
    CHECK(f.dissimilarity == 0.5);
    CHECK(f.min_impact == 0.7);
}

TEST_CASE("upside follows the sign of each coefficient") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const UpsideWeights w{uniform(rng, -2, 2), uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, -5, 5),
                              uniform(rng, -5, 5)};
        UpsideFeatures f{uniform(rng, 0, 1), uniform(rng, 0, 3), uniform(rng, 0, 1), uniform(rng, 0, 3)};
        const double base = upside(f, w);
        const double d = uniform(rng, 0.01, 0.5);
        auto g = f;
        g.parity += d;
        REQUIRE((w.parity >= 0 ? upside(g, w) >= base : upside(g, w) <= base));
        g = f;
        g.min_impact += d;
        REQUIRE((w.min_impact >= 0 ? upside(g, w) >= base : upside(g, w) <= base));
    }
}

TEST_CASE("QB-for-QB swap is rejected by R3") {
    const auto l = league(rules({{"QB", {Position::QB}, 1}, {"RB", {Position::RB}, 1}}),
                          {{"T1", {player("a", Position::QB), player("a2", Position::QB), player("c", Position::RB)}},
                           {"T2", {player("b", Position::QB), player("b2", Position::QB), player("d", Position::RB)}}});
    const auto s = sheet({{"a", 10}, {"a2", 8}, {"b", 9}, {"b2", 7}, {"c", 5}, {"d", 5}}, 10);
    const TradeContext ctx(l, s);
    CHECK(verdict(trade({"b"}, {"a"}), ctx) == FilterRule::R3_quarterback_swap);
}

TEST_CASE("trade that strands a starter slot is rejected by R1") {
    const auto l = league(rules({{"QB", {Position::QB}, 1}, {"TE", {Position::TE}, 1}}),
                          {{"T1", {player("t", Position::TE), player("q", Position::QB), player("q1", Position::QB)}},
                           {"T2", {player("x", Position::QB), player("y", Position::TE), player("y2", Position::TE)}}});
    const auto s = sheet({{"t", 5}, {"q", 6}, {"q1", 4}, {"x", 5}, {"y", 5}, {"y2", 4}}, 6);
    const TradeContext ctx(l, s);
    CHECK(verdict(trade({"x"}, {"t"}), ctx) == FilterRule::R1_starters_fillable);
}

TEST_CASE("solo kicker for a bench running back is rejected by R6") {
    const auto l = league(rules({{"RB", {Position::RB}, 1}, {"K", {Position::K}, 1}}),
                          {{"T1", {player("k", Position::K), player("k2", Position::K), player("r", Position::RB)}},
                           {"T2", {player("s", Position::RB), player("s2", Position::RB), player("k3", Position::K)}}});
    const auto s = sheet({{"k", 5}, {"k2", 4}, {"r", 6}, {"s", 6}, {"s2", 5}, {"k3", 4}}, 6);
    const TradeContext ctx(l, s);
    CHECK(verdict(trade({"s2"}, {"k"}), ctx) == FilterRule::R6_kicker_defense_paired);
}

TEST_CASE("rule names round-trip and rules can be disabled") {
    for (std::size_t i = 0; i < kFilterRuleCount; ++i) {
        const auto rule = static_cast<FilterRule>(i);
        CHECK(parse_filter_rule(to_string(rule)) == rule);
    }
    CHECK_THROWS_AS(parse_filter_rule("R42"), std::invalid_argument);

    const auto l = league(rules({{"QB", {Position::QB}, 1}, {"RB", {Position::RB}, 1}}),
                          {{"T1", {player("a", Position::QB), player("a2", Position::QB), player("c", Position::RB)}},
                           {"T2", {player("b", Position::QB), player("b2", Position::QB), player("d", Position::RB)}}});
    const auto s = sheet({{"a", 10}, {"a2", 8}, {"b", 9}, {"b2", 7}, {"c", 5}, {"d", 5}}, 10);
    const TradeContext ctx(l, s);
    FilterConfig cfg;
    for (auto rule : {FilterRule::R3_quarterback_swap, FilterRule::T_parity, FilterRule::T_pain, FilterRule::T_upside}) {
        cfg.set_enabled(rule, false);
    }
    auto t = trade({"b"}, {"a"});
    t.insights = compute_insights(t, ctx, logistic_upside({}));
    CHECK(first_failing_rule(t, ctx, {}, cfg) == FilterRule::R9_positional_swap);
    PersonalizationRequest personal;
    personal.watchlist = {"b"};
    CHECK_FALSE(first_failing_rule(t, ctx, personal, cfg).has_value());
}

TEST_CASE("rejection log line format") {
    auto t = trade({"b"}, {"a"});
    t.insights = {0.25, 2.0, 0.125, 1.0, 0.5, 0.6224593};
    const Rejection r{t, FilterRule::R3_quarterback_swap};
    CHECK(r.log_line() ==
          "a,b R3 parity=0.250000 pain_a=1.000000 pain_b=0.500000 impact_a=2.000000 impact_b=0.125000 upside=0.622459");
}

TEST_CASE("filtering is sound and idempotent on generated trades") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const League l = synthetic_league({8, 300, 6, seed});
        BatchInputs in;
        in.players = l.players;
        in.league = l;
        in.week = 6;
        const auto sheets = batch_valuate(in).sheets;
        TradeContexts contexts;
        contexts.emplace(ComputeMode::sme, TradeContext(l, sheets.at(0)));
        FilterConfig loose;
        loose.min_upside = 0.0;

        for (const auto& team : l.teams) {
            EngineConfig cfg;
            cfg.filters.enabled.fill(false);
            const auto all = generate_trades(l, team.team_id, {}, sheets, cfg);
            REQUIRE(all.rejections.empty());
            const auto first = filter_trades(all.trades, contexts, {}, loose);
            for (const auto& t : first.survivors) REQUIRE_FALSE(first_failing_rule(t, contexts.at(ComputeMode::sme), {}, loose));
            for (const auto& r : first.rejections) REQUIRE(first_failing_rule(r.trade, contexts.at(ComputeMode::sme), {}, loose) == r.rule);
            const auto second = filter_trades(first.survivors, contexts, {}, loose);
            REQUIRE(second.rejections.empty());
            REQUIRE(second.survivors.size() == first.survivors.size());
        }
    }
}

TEST_CASE("impact times outgoing cost recovers incoming value") {
    const auto& l = synthetic_league({});
    BatchInputs in;
    in.players = l.players;
    in.league = l;
    const auto sheets = batch_valuate(in).sheets;
    const TradeContext ctx(l, sheets.at(0));
    EngineConfig cfg;
    cfg.filters.enabled.fill(false);
    const auto r = generate_trades(l, "T3", {}, sheets, cfg);
    REQUIRE_FALSE(r.trades.empty());
    for (const auto& t : r.trades) {
        int incoming = 0, outgoing = 0;
        for (const auto& id : t.a_receives) incoming += ctx.value(id);
        for (const auto& id : t.b_receives) outgoing += ctx.cost(id);
        REQUIRE(t.insights.impact_a * outgoing == static_cast<double>(incoming));
    }
}

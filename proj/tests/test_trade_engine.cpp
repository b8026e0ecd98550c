#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "fftrade/synthetic.hpp"
#include "fftrade/trade_engine.hpp"
#include "support.hpp"

using namespace fftrade;
using namespace testkit;

namespace {

struct Fixture {
    League league;
    std::vector<ValuationSheet> sheets;
};

const Fixture& synthetic() {
    static const Fixture f = [] {
        Fixture out;
        out.league = synthetic_league({});
        BatchInputs in;
        in.players = out.league.players;
        in.league = out.league;
        in.profiles = synthetic_profiles(7);
        in.week = 8;
        out.sheets = batch_valuate(in).sheets;
        return out;
    }();
    return f;
}

// Best subset under the knapsack contract, by exhaustive enumeration.
std::vector<std::string> brute_side(const std::vector<KnapsackItem>& items, int capacity, int max_items) {
    std::vector<std::string> best;
    int best_value = 0;
    const unsigned n = static_cast<unsigned>(items.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::string> ids;
        int v = 0, w = 0;
        for (unsigned i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                ids.push_back(items[i].player_id);
                v += items[i].value;
                w += items[i].weight;
            }
        }
        if (w > capacity || static_cast<int>(ids.size()) > max_items) continue;
        std::sort(ids.begin(), ids.end());
        const bool better = v > best_value || (v == best_value && (ids.size() < best.size() ||
                                                                   (ids.size() == best.size() && ids < best)));
        if (better) {
            best = ids;
            best_value = v;
        }
    }
    return best;
}

int max_cost(const TradeContext& ctx, const std::string& team) {
    int m = 0;
    for (const auto& p : ctx.roster(team)) m = std::max(m, ctx.cost(p.player_id));
    return m;
}

std::vector<std::string> ids_in(const TradePackage& t) {
    auto ids = t.a_receives;
    ids.insert(ids.end(), t.b_receives.begin(), t.b_receives.end());
    return ids;
}

const LeagueRules kSmallRules = rules({{"QB", {Position::QB}, 1}, {"RB", {Position::RB}, 1},
                                        {"FLEX", {Position::RB, Position::WR}, 1}});

}  // namespace

TEST_CASE("personalization adjusts values and costs") {
    const PlayerTable players{{"x", player("x", Position::WR)}, {"y", player("y", Position::RB)},
                              {"z", player("z", Position::QB)}};
    const std::vector<KnapsackItem> items{{"x", 40, 10}, {"y", 40, 10}, {"z", 40, 10}};
    const PersonalizationWeights w;

    const auto identity = apply_personalization(items, TradeRole::incoming, {}, w, players);
    CHECK(identity.forced.empty());
    REQUIRE(identity.pool.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(identity.pool[i].value == items[i].value);
        CHECK(identity.pool[i].weight == items[i].weight);
    }

    PersonalizationRequest req;
    req.watchlist = {"x"};
    req.untradables = {"z"};
    req.target_positions = {Position::RB};
    req.prefer_release = {"y"};
    req.must_acquire = {"y"};
    const auto in = apply_personalization(items, TradeRole::incoming, req, w, players);
    REQUIRE(in.pool.size() == 1);
    CHECK(in.pool[0].player_id == "x");
    CHECK(in.pool[0].value == 50);
    REQUIRE(in.forced.size() == 1);
    CHECK(in.forced[0].value == 48);
    CHECK(in.forced[0].weight == 10);

    req.must_acquire.clear();
    req.must_release = {"y"};
    const auto out = apply_personalization(items, TradeRole::outgoing, req, w, players);
    REQUIRE(out.forced.size() == 1);
    CHECK(out.forced[0].weight == 8);
    CHECK(out.forced[0].value == 40);
}

TEST_CASE("request validation") {
    PersonalizationRequest req;
    req.risk = 0.0;
    CHECK_THROWS_AS(req.validate(), std::invalid_argument);
    req.risk = 1.5;
    CHECK_THROWS_AS(req.validate(), std::invalid_argument);
    req.risk = 1.0;
    req.must_acquire = {"a"};
    req.untradables = {"a"};
    CHECK_THROWS_AS(req.validate(), std::invalid_argument);
}

TEST_CASE("two one-player teams swap their only players") {
    const auto l = league(rules({{"QB", {Position::QB}, 1}}),
                          {{"T1", {player("a", Position::QB, 300)}}, {"T2", {player("b", Position::QB, 250)}}});
    const auto s = sheet({{"a", 9}, {"b", 8}}, 9);
    const TradeContext ctx(l, s);
    const auto t = build_trade(ctx, "T1", "T2", 0.0, {}, 1.0, EngineConfig{});
    REQUIRE(t);
    CHECK(t->a_receives == std::vector<std::string>{"b"});
    CHECK(t->b_receives == std::vector<std::string>{"a"});
    CHECK(t->fingerprint() == "a,b");
}

TEST_CASE("tiny risk leaves no capacity") {
    const auto l = league(rules({{"QB", {Position::QB}, 1}}),
                          {{"T1", {player("a", Position::QB, 300)}}, {"T2", {player("b", Position::QB, 250)}}});
    const auto s = sheet({{"a", 9}, {"b", 8}}, 9);
    const TradeContext ctx(l, s);
    REQUIRE(ctx.cost("a") > 1);
    CHECK_FALSE(build_trade(ctx, "T1", "T2", 0.0, {}, 0.01, EngineConfig{}));
}

TEST_CASE("three-versus-three trades match exhaustive subset search") {
    std::mt19937_64 rng(303);
    const std::array<Position, 3> pos{Position::QB, Position::RB, Position::WR};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<TeamSpec> teams{{"T1", {}}, {"T2", {}}};
        std::map<std::string, double> vals;
        for (int t = 0; t < 2; ++t) {
            for (int i = 0; i < 3; ++i) {
                const std::string id = std::string(1, static_cast<char>('a' + 3 * t + i));
                teams[static_cast<std::size_t>(t)].roster.push_back(player(id, pos[static_cast<std::size_t>(uniform_int(rng, 0, 2))],
                                                                          uniform(rng, 20, 300)));
                vals[id] = uniform(rng, 0.5, 20);
            }
        }
        const auto l = league(kSmallRules, teams);
        const auto s = sheet(vals, std::max_element(vals.begin(), vals.end(), [](auto& x, auto& y) {
                                       return x.second < y.second;
                                   })->second);
        const TradeContext ctx(l, s);
        const double risk = uniform(rng, 0.3, 1.0);

        std::vector<KnapsackItem> incoming, outgoing;
        for (const auto& p : ctx.roster("T2")) incoming.push_back({p.player_id, ctx.acquisition_value(p.player_id, "T1"), ctx.cost(p.player_id)});
        for (const auto& p : ctx.roster("T1")) outgoing.push_back({p.player_id, ctx.acquisition_value(p.player_id, "T2"), ctx.cost(p.player_id)});
        const auto want_a = brute_side(incoming, static_cast<int>(std::floor(risk * max_cost(ctx, "T2") + 1e-9)), 3);
        const auto want_b = brute_side(outgoing, static_cast<int>(std::floor(risk * max_cost(ctx, "T1") + 1e-9)), 3);

        const auto got = build_trade(ctx, "T1", "T2", 45.0, {}, risk, EngineConfig{});
        INFO("trial " << trial);
        if (want_a.empty() || want_b.empty()) {
            REQUIRE_FALSE(got);
        } else {
            REQUIRE(got);
            REQUIRE(got->a_receives == want_a);
            REQUIRE(got->b_receives == want_b);
        }
    }
}

TEST_CASE("synthetic league yields distinct trades") {
    const auto& f = synthetic();
    REQUIRE(f.sheets.size() == 3);
    const auto r = generate_trades(f.league, "T1", {}, f.sheets, EngineConfig{}, Execution::parallel);
    REQUIRE_FALSE(r.trades.empty());
    CHECK(r.trades.size() <= 10);
    std::set<std::string> fps;
    for (const auto& t : r.trades) {
        CHECK(fps.insert(t.fingerprint()).second);
        CHECK(t.team_a == "T1");
    }
    CHECK(r.candidates == r.trades.size() + r.rejections.size());
    for (std::size_t i = 1; i < r.trades.size(); ++i) CHECK(r.trades[i - 1].insights.upside >= r.trades[i].insights.upside);
}

TEST_CASE("identical risk levels collapse to one candidate") {
    const auto& f = synthetic();
    EngineConfig cfg;
    cfg.pairings_per_mode = 1;
    cfg.risk_scales = {1.0, 1.0, 1.0};
    const auto r = generate_trades(f.league, "T1", {}, std::span(f.sheets).first(1), cfg);
    CHECK(r.candidates <= 1);
}

TEST_CASE("serial and parallel generation agree") {
    const auto& f = synthetic();
    for (const char* team : {"T1", "T4", "T9"}) {
        const auto a = generate_trades(f.league, team, {}, f.sheets, EngineConfig{}, Execution::serial);
        const auto b = generate_trades(f.league, team, {}, f.sheets, EngineConfig{}, Execution::parallel);
        REQUIRE(a.trades.size() == b.trades.size());
        REQUIRE(a.candidates == b.candidates);
        for (std::size_t i = 0; i < a.trades.size(); ++i) {
            CHECK(a.trades[i].fingerprint() == b.trades[i].fingerprint());
            CHECK(a.trades[i].insights.upside == b.trades[i].insights.upside);
        }
    }
}

TEST_CASE("personalized requests honour untradables and forced players") {
    const auto& f = synthetic();
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const std::string me = "T" + std::to_string(uniform_int(rng, 1, 10));
        const std::string them = me == "T1" ? "T2" : "T1";
        const auto& mine = f.league.team(me).roster;
        const auto& theirs = f.league.team(them).roster;

        PersonalizationRequest req;
        req.untradables = {theirs[0], mine[1]};
        req.must_acquire = {theirs[static_cast<std::size_t>(uniform_int(rng, 2, 15))]};
        req.must_release = {mine[static_cast<std::size_t>(uniform_int(rng, 2, 15))]};
        const auto r = generate_trades(f.league, me, req, f.sheets, EngineConfig{});
        REQUIRE(r.candidates > 0);

        std::vector<TradePackage> all = r.trades;
        for (const auto& rej : r.rejections) all.push_back(rej.trade);
        for (const auto& t : all) {
            const auto ids = ids_in(t);
            for (const auto& u : req.untradables) REQUIRE(std::find(ids.begin(), ids.end(), u) == ids.end());
            REQUIRE(t.team_b == them);
            REQUIRE(std::count(t.a_receives.begin(), t.a_receives.end(), *req.must_acquire.begin()) == 1);
            REQUIRE(std::count(t.b_receives.begin(), t.b_receives.end(), *req.must_release.begin()) == 1);
        }
    }
}

TEST_CASE("generation rejects invalid requests") {
    const auto& f = synthetic();
    PersonalizationRequest bad_risk;
    bad_risk.risk = 0.0;
    CHECK_THROWS_AS(generate_trades(f.league, "T1", bad_risk, f.sheets, EngineConfig{}), std::invalid_argument);
    CHECK_THROWS_AS(generate_trades(f.league, "T99", {}, f.sheets, EngineConfig{}), NotFound);
    PersonalizationRequest foreign;
    foreign.must_release = {f.league.team("T2").roster[0]};
    CHECK_THROWS_AS(generate_trades(f.league, "T1", foreign, f.sheets, EngineConfig{}), std::invalid_argument);
}

TEST_CASE("a league where every trade is filtered returns nothing") {
    const auto& f = synthetic();
    EngineConfig cfg;
    cfg.filters.min_upside = 1.1;
    const auto r = generate_trades(f.league, "T1", {}, f.sheets, cfg);
    CHECK(r.trades.empty());
    CHECK(r.rejections.size() == r.candidates);
}

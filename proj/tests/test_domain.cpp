#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "fftrade/domain.hpp"
#include "support.hpp"

using namespace fftrade;
using namespace testkit;

namespace {

using Kind = ValidationFinding::Kind;

bool has_kind(const std::vector<ValidationFinding>& findings, Kind kind) {
    return std::any_of(findings.begin(), findings.end(), [kind](const auto& f) { return f.kind == kind; });
}

// Tries every assignment of expanded slots to distinct players.
bool assign(const std::vector<std::vector<Position>>& slots, std::size_t s, const std::vector<Position>& roster,
            std::vector<bool>& used) {
    if (s == slots.size()) return true;
    for (std::size_t p = 0; p < roster.size(); ++p) {
        if (used[p]) continue;
        if (std::find(slots[s].begin(), slots[s].end(), roster[p]) == slots[s].end()) continue;
        used[p] = true;
        if (assign(slots, s + 1, roster, used)) return true;
        used[p] = false;
    }
    return false;
}

bool brute_force_fillable(const LeagueRules& r, const std::vector<Position>& roster) {
    std::vector<std::vector<Position>> slots;
    for (const auto& rule : r.slot_rules) {
        for (int i = 0; i < rule.count; ++i) slots.push_back(rule.eligible_positions);
    }
    std::vector<bool> used(roster.size(), false);
    return assign(slots, 0, roster, used);
}

LeagueRules random_rules(std::mt19937_64& rng) {
    LeagueRules r;
    const int rules = uniform_int(rng, 1, 5);
    int total = 0;
    for (int i = 0; i < rules && total < 8; ++i) {
        SlotRule rule;
        rule.slot_id = "S" + std::to_string(i);
        std::vector<Position> all(kAllPositions.begin(), kAllPositions.end());
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(static_cast<std::size_t>(uniform_int(rng, 1, 3)));
        rule.eligible_positions = all;
        rule.count = std::min(uniform_int(rng, 1, 3), 8 - total);
        total += rule.count;
        r.slot_rules.push_back(rule);
    }
    return r;
}

}  // namespace

TEST_CASE("well-formed two-team league validates cleanly") {
    const auto l = league(rules({{"QB", {Position::QB}, 1}}),
                          {{"T1", {player("a", Position::QB)}}, {"T2", {player("b", Position::QB)}}});
    CHECK(validate_league(l).empty());
}

TEST_CASE("player rostered twice is reported") {
    auto l = league(rules({{"QB", {Position::QB}, 1}}),
                    {{"T1", {player("a", Position::QB)}}, {"T2", {player("b", Position::QB)}}});
    l.teams[1].roster.push_back("a");
    const auto findings = validate_league(l);
    REQUIRE(has_kind(findings, Kind::duplicate_player));
    CHECK(findings.front().player_id == "a");
}

TEST_CASE("roster entry with an unknown id is reported") {
    auto l = league(rules({{"QB", {Position::QB}, 1}}),
                    {{"T1", {player("a", Position::QB)}}, {"T2", {player("b", Position::QB)}}});
    l.teams[0].roster.push_back("ghost");
    CHECK(has_kind(validate_league(l), Kind::unknown_player));
    CHECK_THROWS_AS(l.roster_of(l.teams[0]), NotFound);
}

TEST_CASE("invalid rules are reported") {
    LeagueRules r = rules({{"QB", {Position::QB}, 1}, {"QB", {}, 0}});
    r.team_count = 1;
    const auto findings = validate_league(r, {}, {});
    CHECK(std::count_if(findings.begin(), findings.end(), [](const auto& f) { return f.kind == Kind::invalid_rules; }) == 3);
}

TEST_CASE("lookups raise NotFound for unknown ids") {
    const auto l = league(rules({}), {{"T1", {player("a", Position::QB)}}, {"T2", {player("b", Position::RB)}}});
    CHECK_THROWS_AS(l.team("T9"), NotFound);
    CHECK_THROWS_AS(l.player("zz"), NotFound);
    CHECK(l.owner_of("b") == "T2");
    CHECK(l.owner_of("zz").empty());
}

TEST_CASE("slot counting includes flex slots") {
    const auto r = rules({{"RB", {Position::RB}, 2}, {"FLEX", {Position::RB, Position::WR}, 1}});
    CHECK(r.slots_for(Position::RB) == 3);
    CHECK(r.slots_for(Position::WR) == 1);
    CHECK(r.slots_for(Position::QB) == 0);
    CHECK(r.starter_count() == 3);
}

TEST_CASE("position and status names round-trip") {
    for (Position p : kAllPositions) CHECK(parse_position(to_string(p)) == p);
    CHECK(parse_position("D/ST") == Position::DST);
    CHECK_THROWS_AS(parse_position("LB"), std::invalid_argument);
    CHECK(parse_status("injured_reserve") == PlayerStatus::injured_reserve);
    CHECK_THROWS_AS(parse_status("healthy"), std::invalid_argument);
    for (ComputeMode m : kAllModes) CHECK(parse_mode(to_string(m)) == m);
}

TEST_CASE("starter feasibility examples") {
    using P = Position;
    std::vector<P> one_qb{P::QB};
    CHECK(starters_fillable(rules({{"QB", {P::QB}, 1}}), one_qb));

    std::vector<P> one_rb{P::RB};
    CHECK_FALSE(starters_fillable(rules({{"QB", {P::QB}, 1}, {"FLEX", {P::RB, P::WR}, 1}}), one_rb));

    std::vector<P> mixed{P::RB, P::WR, P::TE};
    CHECK(starters_fillable(rules({{"FLEX", {P::RB, P::WR}, 2}}), mixed));
}

TEST_CASE("greedy-hostile flex layout still fills") {
    using P = Position;
    // Greedy would put the RB into FLEX first and strand the RB slot.
    std::vector<P> roster{P::RB, P::WR};
    CHECK(starters_fillable(rules({{"FLEX", {P::RB, P::WR}, 1}, {"RB", {P::RB}, 1}}), roster));
}

TEST_CASE("starter feasibility agrees with exhaustive assignment") {
    std::mt19937_64 rng(20240101);
    for (int trial = 0; trial < 2000; ++trial) {
        const LeagueRules r = random_rules(rng);
        std::vector<Position> roster(static_cast<std::size_t>(uniform_int(rng, 0, 10)));
        for (auto& p : roster) p = any_position(rng);
        INFO("trial " << trial);
        REQUIRE(starters_fillable(r, roster) == brute_force_fillable(r, roster));
    }
}

TEST_CASE("adding a player never makes a fillable roster unfillable") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const LeagueRules r = random_rules(rng);
        std::vector<Position> roster(static_cast<std::size_t>(uniform_int(rng, 0, 9)));
        for (auto& p : roster) p = any_position(rng);
        const bool before = starters_fillable(r, roster);
        roster.push_back(any_position(rng));
        if (before) REQUIRE(starters_fillable(r, roster));
    }
}

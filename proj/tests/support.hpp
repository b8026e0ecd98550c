// Small builders shared by the unit tests.

#pragma once

#include <initializer_list>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fftrade/domain.hpp"
#include "fftrade/sheet.hpp"

namespace testkit {

using namespace fftrade;

inline PlayerRecord player(const std::string& id, Position pos, double projection = 100.0) {
    PlayerRecord p;
    p.player_id = id;
    p.name = id;
    p.position = pos;
    p.season_projection = projection;
    return p;
}

inline LeagueRules rules(std::initializer_list<SlotRule> slots, int team_count = 2) {
    LeagueRules r;
    r.slot_rules = slots;
    r.team_count = team_count;
    return r;
}

struct TeamSpec {
    std::string team_id;
    std::vector<PlayerRecord> roster;
};

inline League league(LeagueRules r, const std::vector<TeamSpec>& teams) {
    League l;
    l.rules = std::move(r);
    l.rules.team_count = static_cast<int>(teams.size());
    for (const auto& t : teams) {
        Team team{t.team_id, {}};
        for (const auto& p : t.roster) {
            team.roster.push_back(p.player_id);
            l.players.emplace(p.player_id, p);
        }
        l.teams.push_back(std::move(team));
    }
    return l;
}

inline ValuationSheet sheet(const std::map<std::string, double>& valuations, double sme_high,
                            ComputeMode mode = ComputeMode::sme) {
    ValuationSheet s;
    s.compute_mode = mode;
    s.sme_low = 0.0;
    s.sme_high = sme_high;
    std::vector<SheetEntry> entries;
    for (const auto& [id, v] : valuations) {
        SheetEntry e;
        e.player_id = id;
        e.valuation = v;
        entries.push_back(e);
    }
    s.set_entries(std::move(entries));
    return s;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Position any_position(std::mt19937_64& rng) {
    return kAllPositions[static_cast<std::size_t>(uniform_int(rng, 0, 5))];
}

}  // namespace testkit

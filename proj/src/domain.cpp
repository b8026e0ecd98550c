#include "fftrade/domain.hpp"

#include <algorithm>
#include <set>

namespace fftrade {

namespace {

constexpr std::array<std::string_view, 6> kPositionNames{"QB", "RB", "WR", "TE", "K", "DST"};
constexpr std::array<std::string_view, 8> kStatusNames{
    "active", "probable", "questionable", "doubtful",
    "out", "injured_reserve", "covid_list", "suspended"};
constexpr std::array<std::string_view, 3> kModeNames{"sme", "classical", "quantum"};

// Kuhn's augmenting path search over slot -> player edges.
bool augment(std::size_t slot,
             const std::vector<std::vector<std::size_t>>& candidates,
             std::vector<int>& player_slot,
             std::vector<char>& visited) {
    for (std::size_t p : candidates[slot]) {
        if (visited[p]) continue;
        visited[p] = 1;
        if (player_slot[p] < 0 ||
            augment(static_cast<std::size_t>(player_slot[p]), candidates, player_slot, visited)) {
            player_slot[p] = static_cast<int>(slot);
            return true;
        }
    }
    return false;
}

}  // namespace

std::string_view to_string(Position pos) { return kPositionNames[position_index(pos)]; }

Position parse_position(std::string_view text) {
    for (std::size_t i = 0; i < kPositionNames.size(); ++i) {
        if (kPositionNames[i] == text) return kAllPositions[i];
    }
    if (text == "D/ST" || text == "DEF") return Position::DST;
    throw std::invalid_argument("unknown position '" + std::string(text) + "'");
}

std::string_view to_string(PlayerStatus status) {
    return kStatusNames[static_cast<std::size_t>(status)];
}

PlayerStatus parse_status(std::string_view text) {
    for (std::size_t i = 0; i < kStatusNames.size(); ++i) {
        if (kStatusNames[i] == text) return static_cast<PlayerStatus>(i);
    }
    throw std::invalid_argument("unknown player status '" + std::string(text) + "'");
}

std::string_view to_string(ComputeMode mode) {
    return kModeNames[static_cast<std::size_t>(mode)];
}

ComputeMode parse_mode(std::string_view text) {
    for (std::size_t i = 0; i < kModeNames.size(); ++i) {
        if (kModeNames[i] == text) return kAllModes[i];
    }
    throw std::invalid_argument("unknown compute mode '" + std::string(text) + "'");
}

bool SlotRule::accepts(Position pos) const {
    return std::find(eligible_positions.begin(), eligible_positions.end(), pos) !=
           eligible_positions.end();
}

int LeagueRules::slots_for(Position pos) const {
    int total = 0;
    for (const auto& rule : slot_rules) {
        if (rule.accepts(pos)) total += rule.count;
    }
    return total;
}

int LeagueRules::starter_count() const {
    int total = 0;
    for (const auto& rule : slot_rules) total += rule.count;
    return total;
}

const Team* League::find_team(std::string_view team_id) const {
    auto it = std::find_if(teams.begin(), teams.end(),
                           [&](const Team& t) { return t.team_id == team_id; });
    return it == teams.end() ? nullptr : &*it;
}

const Team& League::team(std::string_view team_id) const {
    if (const Team* t = find_team(team_id)) return *t;
    throw NotFound("unknown team '" + std::string(team_id) + "'");
}

const PlayerRecord& League::player(std::string_view player_id) const {
    auto it = players.find(std::string(player_id));
    if (it == players.end()) throw NotFound("unknown player '" + std::string(player_id) + "'");
    return it->second;
}

Roster League::roster_of(const Team& team) const {
    Roster out;
    out.reserve(team.roster.size());
    for (const auto& id : team.roster) out.push_back(player(id));
    return out;
}

std::string League::owner_of(std::string_view player_id) const {
    for (const auto& t : teams) {
        if (std::find(t.roster.begin(), t.roster.end(), player_id) != t.roster.end()) {
            return t.team_id;
        }
    }
    return {};
}

std::string_view to_string(ValidationFinding::Kind kind) {
    switch (kind) {
        case ValidationFinding::Kind::duplicate_player: return "duplicate_player";
        case ValidationFinding::Kind::unknown_player: return "unknown_player";
        case ValidationFinding::Kind::empty_roster: return "empty_roster";
        case ValidationFinding::Kind::invalid_rules: return "invalid_rules";
    }
    return "unknown";
}

std::vector<ValidationFinding> validate_league(const LeagueRules& rules,
                                               std::span<const Team> teams,
                                               const PlayerTable& players) {
    using Kind = ValidationFinding::Kind;
    std::vector<ValidationFinding> findings;

    if (rules.team_count < 2) {
        findings.push_back({Kind::invalid_rules, {}, {}, "team_count must be at least 2"});
    }
    std::set<std::string> slot_ids;
    for (const auto& rule : rules.slot_rules) {
        if (!slot_ids.insert(rule.slot_id).second) {
            findings.push_back({Kind::invalid_rules, {}, {}, "duplicate slot_id '" + rule.slot_id + "'"});
        }
        if (rule.eligible_positions.empty() || rule.count < 1) {
            findings.push_back({Kind::invalid_rules, {}, {},
                                "slot '" + rule.slot_id + "' needs positions and a positive count"});
        }
    }

    std::map<std::string, std::string> seen;  // player -> first team
    for (const auto& team : teams) {
        if (team.roster.empty()) {
            findings.push_back({Kind::empty_roster, team.team_id, {}, "roster is empty"});
        }
        for (const auto& id : team.roster) {
            if (!players.contains(id)) {
                findings.push_back({Kind::unknown_player, team.team_id, id,
                                    "roster references unknown player"});
            }
            auto [it, inserted] = seen.emplace(id, team.team_id);
            if (!inserted) {
                findings.push_back({Kind::duplicate_player, team.team_id, id,
                                    "player already rostered by " + it->second});
            }
        }
    }
    return findings;
}

std::vector<ValidationFinding> validate_league(const League& league) {
    return validate_league(league.rules, league.teams, league.players);
}

bool starters_fillable(const LeagueRules& rules, std::span<const Position> roster) {
    std::vector<const SlotRule*> slots;
    for (const auto& rule : rules.slot_rules) {
        for (int i = 0; i < rule.count; ++i) slots.push_back(&rule);
    }
    if (slots.empty()) return true;
    if (roster.size() < slots.size()) return false;

    std::vector<std::vector<std::size_t>> candidates(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
        for (std::size_t p = 0; p < roster.size(); ++p) {
            if (slots[s]->accepts(roster[p])) candidates[s].push_back(p);
        }
        if (candidates[s].empty()) return false;
    }

    std::vector<int> player_slot(roster.size(), -1);
    for (std::size_t s = 0; s < slots.size(); ++s) {
        std::vector<char> visited(roster.size(), 0);
        if (!augment(s, candidates, player_slot, visited)) return false;
    }
    return true;
}

bool starters_fillable(const LeagueRules& rules, std::span<const PlayerRecord> roster) {
    std::vector<Position> positions;
    positions.reserve(roster.size());
    for (const auto& p : roster) positions.push_back(p.position);
    return starters_fillable(rules, positions);
}

}  // namespace fftrade

/// @file domain.hpp
/// @brief League, roster and player data model plus starter-slot feasibility.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fftrade {

/// Raised when a request references a team or player that does not exist.
class NotFound : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Position : std::uint8_t { QB, RB, WR, TE, K, DST };

inline constexpr std::array<Position, 6> kAllPositions{
    Position::QB, Position::RB, Position::WR, Position::TE, Position::K, Position::DST};

std::string_view to_string(Position pos);
Position parse_position(std::string_view text);

inline constexpr std::size_t position_index(Position pos) {
    return static_cast<std::size_t>(pos);
}

enum class PlayerStatus : std::uint8_t {
    active,
    probable,
    questionable,
    doubtful,
    out,
    injured_reserve,
    covid_list,
    suspended,
};

std::string_view to_string(PlayerStatus status);
PlayerStatus parse_status(std::string_view text);

enum class ComputeMode : std::uint8_t { sme, classical, quantum };

inline constexpr std::array<ComputeMode, 3> kAllModes{
    ComputeMode::sme, ComputeMode::classical, ComputeMode::quantum};

std::string_view to_string(ComputeMode mode);
ComputeMode parse_mode(std::string_view text);

struct SlotRule {
    std::string slot_id;
    std::vector<Position> eligible_positions;
    int count = 1;

    bool accepts(Position pos) const;
    bool is_flex() const { return eligible_positions.size() > 1; }
};

struct LeagueRules {
    std::vector<SlotRule> slot_rules;
    int team_count = 2;
    int current_week = 0;

    /// Starter slots a player of `pos` is eligible to fill, flex included.
    int slots_for(Position pos) const;
    int starter_count() const;
};

struct PlayerRecord {
    std::string player_id;
    std::string name;
    Position position = Position::QB;
    double season_projection = 0.0;
    double next_game_projection = 0.0;
    double preseason_projection = 0.0;
    double season_actual = 0.0;
    double avg_points_prev = 0.0;
    std::vector<double> game_log;
    double percent_owned = 0.0;
    double percent_started = 0.0;
    double adp = 0.0;
    PlayerStatus status = PlayerStatus::active;
    double sentiment = 0.0;
    int opponent_rank = 0;
    int games_left = 0;
};

struct Team {
    std::string team_id;
    std::vector<std::string> roster;
};

using PlayerTable = std::map<std::string, PlayerRecord>;
using Roster = std::vector<PlayerRecord>;

struct League {
    LeagueRules rules;
    std::vector<Team> teams;
    PlayerTable players;

    const Team* find_team(std::string_view team_id) const;
    const Team& team(std::string_view team_id) const;  // throws NotFound
    const PlayerRecord& player(std::string_view player_id) const;  // throws NotFound

    /// Resolved roster; unknown ids throw NotFound.
    Roster roster_of(const Team& team) const;
    /// team_id owning `player_id`, or empty when unrostered.
    std::string owner_of(std::string_view player_id) const;
};

struct ValidationFinding {
    enum class Kind { duplicate_player, unknown_player, empty_roster, invalid_rules };
    Kind kind;
    std::string team_id;
    std::string player_id;
    std::string message;
};

std::string_view to_string(ValidationFinding::Kind kind);

/// Structural problems are reported, never thrown.
std::vector<ValidationFinding> validate_league(const LeagueRules& rules,
                                               std::span<const Team> teams,
                                               const PlayerTable& players);
std::vector<ValidationFinding> validate_league(const League& league);

/// True iff a maximum bipartite matching of players to expanded starter
/// slots saturates every slot.
bool starters_fillable(const LeagueRules& rules, std::span<const Position> roster);
bool starters_fillable(const LeagueRules& rules, std::span<const PlayerRecord> roster);

}  // namespace fftrade

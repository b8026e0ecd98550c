#include "fftrade/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "fftrade/sheet.hpp"

namespace fftrade {

namespace {

struct PositionShape {
    Position position;
    int per_team;
    double share;  // of the whole player table
    double ppg;    // league-average points per game for a starter
};

constexpr std::array<PositionShape, 6> kShapes{{
    {Position::QB, 2, 0.12, 20.0},
    {Position::RB, 5, 0.28, 14.0},
    {Position::WR, 5, 0.30, 13.0},
    {Position::TE, 2, 0.12, 9.0},
    {Position::K, 1, 0.09, 8.0},
    {Position::DST, 1, 0.09, 7.0},
}};

constexpr std::array<PlayerStatus, 7> kInjured{
    PlayerStatus::probable, PlayerStatus::questionable, PlayerStatus::doubtful, PlayerStatus::out,
    PlayerStatus::injured_reserve, PlayerStatus::covid_list, PlayerStatus::suspended};

std::string player_id(int n) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "P%04d", n);
    return buf;
}

}  // namespace

LeagueRules standard_rules() {
    LeagueRules rules;
    rules.slot_rules = {
        {"QB", {Position::QB}, 1},
        {"RB", {Position::RB}, 2},
        {"WR", {Position::WR}, 2},
        {"TE", {Position::TE}, 1},
        {"FLEX", {Position::RB, Position::WR, Position::TE}, 1},
        {"K", {Position::K}, 1},
        {"DST", {Position::DST}, 1},
    };
    return rules;
}

League synthetic_league(const SyntheticOptions& options) {
    if (options.teams < 2) throw std::invalid_argument("a league needs at least two teams");
    int per_team = 0;
    for (const auto& s : kShapes) per_team += s.per_team;
    if (options.players < options.teams * per_team) {
        throw std::invalid_argument("not enough players to fill every roster");
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 1.0);

    League league;
    league.rules = standard_rules();
    league.rules.team_count = options.teams;
    league.rules.current_week = options.week;
    for (int t = 1; t <= options.teams; ++t) league.teams.push_back({"T" + std::to_string(t), {}});

    int next_id = 1;
    int remaining = options.players;
    for (std::size_t s = 0; s < kShapes.size(); ++s) {
        const auto& shape = kShapes[s];
        const int rostered = shape.per_team * options.teams;
        int count = s + 1 == kShapes.size() ? remaining
                                             : std::max(rostered, static_cast<int>(std::lround(shape.share * options.players)));
        count = std::min(count, remaining);
        if (count < rostered) throw std::invalid_argument("not enough players to fill every roster");
        remaining -= count;

        std::vector<std::pair<double, PlayerRecord>> pool;
        for (int i = 0; i < count; ++i) {
            const double talent = unit(rng);
            const double ppg = shape.ppg * (0.4 + talent);
            PlayerRecord p;
            p.player_id = player_id(next_id++);
            p.name = std::string(to_string(shape.position)) + " " + p.player_id;
            p.position = shape.position;
            p.season_projection = std::max(0.0, 17.0 * ppg * (1.0 + 0.08 * noise(rng)));
            p.next_game_projection = std::max(0.0, ppg * (1.0 + 0.15 * noise(rng)));
            p.preseason_projection = std::max(0.0, 17.0 * ppg * (1.0 + 0.15 * noise(rng)));
            for (int w = 0; w < options.week; ++w) p.game_log.push_back(std::max(0.0, ppg * (1.0 + 0.4 * noise(rng))));
            for (double g : p.game_log) p.season_actual += g;
            p.avg_points_prev = unit(rng) < 0.75 ? std::max(0.0, ppg * (1.0 + 0.2 * noise(rng))) : 0.0;
            p.percent_owned = std::clamp(std::pow(talent, 0.7) + 0.05 * noise(rng), 0.0, 1.0);
            p.percent_started = std::clamp(p.percent_owned * talent, 0.0, 1.0);
            p.adp = talent > 0.3 ? std::max(1.0, 250.0 * (1.0 - talent) + 10.0 * noise(rng)) : 0.0;
            p.status = unit(rng) < 0.85 ? PlayerStatus::active
                                        : kInjured[static_cast<std::size_t>(unit(rng) * kInjured.size()) % kInjured.size()];
            p.sentiment = std::clamp(0.6 * (talent - 0.5) + 0.3 * noise(rng), -1.0, 1.0);
            p.opponent_rank = 1 + static_cast<int>(unit(rng) * 32.0) % 32;
            p.games_left = std::max(0, 17 - options.week);
            pool.emplace_back(talent, std::move(p));
        }

        // Best players are drafted round by round, in a fresh random team order each round.
        std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        std::vector<std::size_t> order(static_cast<std::size_t>(options.teams));
        for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
        std::size_t pick = 0;
        for (int round = 0; round < shape.per_team; ++round) {
            std::shuffle(order.begin(), order.end(), rng);
            for (std::size_t t : order) league.teams[t].roster.push_back(pool[pick++].second.player_id);
        }
        for (auto& [talent, p] : pool) league.players.emplace(p.player_id, std::move(p));
    }
    for (auto& team : league.teams) std::sort(team.roster.begin(), team.roster.end());
    return league;
}

std::vector<ModelImportanceProfile> synthetic_profiles(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::gamma_distribution<double> gamma(1.0, 1.0);
    const auto& names = feature_registry();

    struct Spec {
        const char* id;
        ComputeMode mode;
        double accuracy;
    };
    const std::array<Spec, 4> specs{{
        {"sme-expert", ComputeMode::sme, 0.900},
        {"classical-gbt", ComputeMode::classical, 0.957},
        {"quantum-qsvc", ComputeMode::quantum, 0.943},
        {"quantum-vqc", ComputeMode::quantum, 0.921},
    }};

    std::vector<ModelImportanceProfile> out;
    for (const auto& spec : specs) {
        ModelImportanceProfile p;
        p.model_id = spec.id;
        p.compute_mode = spec.mode;
        p.accuracy = spec.accuracy;
        double total = 0.0;
        std::vector<double> raw;
        for (std::size_t i = 0; i < names.size(); ++i) {
            raw.push_back(gamma(rng));
            total += raw.back();
        }
        for (std::size_t i = 0; i < names.size(); ++i) p.importances[names[i]] = raw[i] / total;
        p.rank_order = names;
        std::stable_sort(p.rank_order.begin(), p.rank_order.end(), [&](const std::string& a, const std::string& b) {
            return p.importances.at(a) > p.importances.at(b);
        });
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace fftrade

#include "fftrade/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace fftrade {

namespace {

double norm(const std::vector<double>& v) {
    double ss = 0.0;
    for (double x : v) ss += x * x;
    return std::sqrt(ss);
}

}  // namespace

TeamVector team_vector(const Team& team, const League& league, const ValuationSheet& sheet) {
    if (team.roster.empty()) throw std::invalid_argument("team " + team.team_id + " has an empty roster");
    const Roster roster = league.roster_of(team);

    std::map<Position, int> position_pool;
    for (const auto& [id, p] : league.players) ++position_pool[p.position];
    const PositionRanks ranks = positional_ranks(league.players, sheet);

    TeamVector out;
    out.values.assign(kTeamVectorSize, 0.0);
    for (Position pos : kAllPositions) {
        double* block = out.values.data() + position_index(pos) * kTeamBlockSize;
        block[position_index(pos)] = 1.0;

        std::set<Position> eligible;
        for (const auto& rule : league.rules.slot_rules) {
            if (rule.accepts(pos)) eligible.insert(rule.eligible_positions.begin(), rule.eligible_positions.end());
        }
        double* importance = block + kAllPositions.size();
        importance[0] = league.rules.slots_for(pos);
        importance[1] = static_cast<double>(std::count_if(
            roster.begin(), roster.end(), [&](const PlayerRecord& p) { return eligible.contains(p.position); }));

        double* strength = importance + 2;
        int n = 0;
        double val = 0.0, rank = 0.0, proj = 0.0, owned = 0.0;
        double lo = 0.0, hi = 0.0;
        for (const auto& p : roster) {
            if (p.position != pos) continue;
            val += sheet.valuation_of(p.player_id);
            rank += rank_to_score(ranks.at(p.player_id), position_pool[pos]);
            proj += p.season_projection;
            owned += p.percent_owned;
            lo = n == 0 ? p.season_projection : std::min(lo, p.season_projection);
            hi = n == 0 ? p.season_projection : std::max(hi, p.season_projection);
            ++n;
        }
        if (n > 0) {
            // Entries stay nonnegative so every angle lies in [0, 90].
            strength[0] = std::max(val / n, 0.0);
            strength[1] = rank / n;
            strength[2] = std::max(proj / n, 0.0);
            strength[3] = std::max(lo, 0.0);
            strength[4] = std::max(hi, 0.0);
            strength[5] = owned / n;
        }
    }
    return out;
}

double dissimilarity_angle(const TeamVector& a, const TeamVector& b) {
    if (a.values.size() != b.values.size()) throw std::invalid_argument("team vectors differ in size");
    const double na = norm(a.values);
    const double nb = norm(b.values);
    if (!(na > 0.0) || !(nb > 0.0)) throw std::invalid_argument("zero team vector");

    // Kahan's form 2*atan2(|u-v|, |u+v|) stays exact near 0 and 90 degrees.
    double diff = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double u = a.values[i] / na;
        const double v = b.values[i] / nb;
        diff += (u - v) * (u - v);
        sum += (u + v) * (u + v);
    }
    return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum)) * 180.0 / std::numbers::pi;
}

std::vector<Pairing> rank_pairings(const std::string& requesting_team,
                                   const std::map<std::string, TeamVector>& vectors) {
    auto self = vectors.find(requesting_team);
    if (self == vectors.end()) throw NotFound("unknown team '" + requesting_team + "'");

    std::vector<Pairing> out;
    for (const auto& [id, v] : vectors) {
        if (id == requesting_team) continue;
        out.push_back({id, dissimilarity_angle(self->second, v)});
    }
    std::sort(out.begin(), out.end(), [](const Pairing& x, const Pairing& y) {
        if (x.angle != y.angle) return x.angle > y.angle;
        return x.team_id < y.team_id;
    });
    return out;
}

std::map<std::string, TeamVector> team_vectors(const League& league, const ValuationSheet& sheet) {
    std::map<std::string, TeamVector> out;
    for (const auto& team : league.teams) out.emplace(team.team_id, team_vector(team, league, sheet));
    return out;
}

}  // namespace fftrade

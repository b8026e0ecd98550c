#include "fftrade/sheet.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "fftrade/importance.hpp"
#include "fftrade/io.hpp"

namespace fftrade {

namespace {

using IdList = std::vector<const PlayerRecord*>;

std::map<Position, IdList> by_position(const PlayerTable& players) {
    std::map<Position, IdList> out;
    for (const auto& [id, p] : players) out[p.position].push_back(&p);
    return out;
}

/// Ordinal rank within the group by metric, 1 = best, ties broken by id.
template <typename Metric>
std::map<std::string, int> ranks_of(const IdList& group, Metric metric) {
    IdList sorted = group;
    std::stable_sort(sorted.begin(), sorted.end(), [&](const PlayerRecord* a, const PlayerRecord* b) {
        const double ma = metric(*a), mb = metric(*b);
        if (ma != mb) return ma > mb;
        return a->player_id < b->player_id;
    });
    std::map<std::string, int> out;
    for (std::size_t r = 0; r < sorted.size(); ++r) out[sorted[r]->player_id] = static_cast<int>(r + 1);
    return out;
}

template <typename Metric>
std::map<std::string, double> rank_scores(const IdList& group, Metric metric) {
    std::map<std::string, double> out;
    const int n = static_cast<int>(group.size());
    for (const auto& [id, r] : ranks_of(group, metric)) out[id] = rank_to_score(r, n);
    return out;
}

struct PositionStats {
    std::vector<double> game_pool;
    double mu = 0.0;
    double sigma = 0.0;
};

std::map<Position, PositionStats> position_stats(const std::map<Position, IdList>& groups) {
    std::map<Position, PositionStats> out;
    for (const auto& [pos, group] : groups) {
        PositionStats s;
        for (const auto* p : group) s.game_pool.insert(s.game_pool.end(), p->game_log.begin(), p->game_log.end());
        double sum = 0.0;
        for (const auto* p : group) sum += p->season_projection;
        s.mu = sum / static_cast<double>(group.size());
        double sq = 0.0;
        for (const auto* p : group) sq += (p->season_projection - s.mu) * (p->season_projection - s.mu);
        s.sigma = std::sqrt(sq / static_cast<double>(group.size()));
        out.emplace(pos, std::move(s));
    }
    return out;
}

double pv_of(const PlayerRecord& p, const PositionStats& s) {
    return s.sigma > 0.0 ? projection_valuation(p.season_projection, s.mu, s.sigma) : 0.5;
}

double adp_metric(const PlayerRecord& p) {
    return p.adp > 0.0 ? -p.adp : -std::numeric_limits<double>::infinity();
}

BoomBust boom_bust_of(const PlayerRecord& p, const PositionStats& s) {
    BoomBust b;
    if (s.game_pool.empty()) return b;
    b.boom = boom_ratio(p.game_log, s.game_pool);
    b.bust = bust_ratio(p.game_log, s.game_pool);
    if (!p.game_log.empty()) {
        const double last = p.game_log.back();
        b.current_week_boom = boom_ratio(std::span<const double>(&last, 1), s.game_pool);
    }
    return b;
}

/// Runs `body(i)` over [0, n), rethrowing the first captured exception.
template <typename Body>
void parallel_for(std::size_t n, Execution exec, Body body) {
    std::vector<std::exception_ptr> errors(n);
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
    for (long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::vector<const PlayerRecord*> flat(const PlayerTable& players) {
    std::vector<const PlayerRecord*> out;
    out.reserve(players.size());
    for (const auto& [id, p] : players) out.push_back(&p);
    return out;
}

std::map<std::string, BoomBust> boom_bust_impl(const PlayerTable& players,
                                                const std::map<Position, PositionStats>& stats,
                                                Execution exec) {
    const auto list = flat(players);
    std::vector<BoomBust> values(list.size());
    parallel_for(list.size(), exec,
                 [&](std::size_t i) { values[i] = boom_bust_of(*list[i], stats.at(list[i]->position)); });
    std::map<std::string, BoomBust> out;
    for (std::size_t i = 0; i < list.size(); ++i) out.emplace(list[i]->player_id, values[i]);
    return out;
}

ValuationSheet make_sheet(ComputeMode mode, const std::map<std::string, double>& valuations,
                          const BatchInputs& inputs, double sme_low, double sme_high,
                          const std::map<std::string, BoomBust>& boom_bust) {
    ValuationSheet sheet;
    sheet.compute_mode = mode;
    sheet.generated_at = inputs.generated_at;
    sheet.sme_low = sme_low;
    sheet.sme_high = sme_high;

    std::vector<SheetEntry> entries;
    for (const auto& [id, v] : valuations) {
        const PlayerRecord& p = inputs.players.at(id);
        SheetEntry e;
        e.player_id = id;
        e.valuation = v;
        const BoomBust& bb = boom_bust.at(id);
        e.boom = bb.boom;
        e.bust = bb.bust;
        e.percent_owned = p.percent_owned;
        e.opponent_rank = p.opponent_rank;
        e.games_left = p.games_left;
        e.season_actual = p.season_actual;
        e.season_projection = p.season_projection;
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const SheetEntry& a, const SheetEntry& b) {
        if (a.valuation != b.valuation) return a.valuation > b.valuation;
        return a.player_id < b.player_id;
    });
    sheet.set_entries(entries);

    // Costs use ranks over the full table, before truncation.
    if (inputs.league) {
        const League& league = *inputs.league;
        const PositionRanks ranks = positional_ranks(league.players, sheet);
        std::map<std::string, CostBreakdown> costs;
        for (const auto& team : league.teams) {
            const Roster roster = league.roster_of(team);
            for (const auto& p : roster) costs[p.player_id] = player_cost(p, roster, league.rules, ranks);
        }
        for (auto& e : entries) {
            if (auto it = costs.find(e.player_id); it != costs.end()) e.cost = it->second;
        }
    }
    if (entries.size() > static_cast<std::size_t>(inputs.top_n)) entries.resize(static_cast<std::size_t>(inputs.top_n));
    sheet.set_entries(std::move(entries));
    return sheet;
}

/// Importances for a compute mode: the lone profile, or the ensemble of several.
std::map<std::string, double> mode_importances(std::span<const ModelImportanceProfile> all, ComputeMode mode) {
    std::vector<ModelImportanceProfile> own;
    for (const auto& p : all) {
        if (p.compute_mode == mode) own.push_back(p);
    }
    if (own.size() == 1) return own.front().importances;

    const auto rows = diversity_report(all);
    std::vector<ModelDiversity> stats;
    for (const auto& p : own) {
        auto it = std::find_if(rows.begin(), rows.end(), [&](const DiversityRow& r) { return r.model_id == p.model_id; });
        stats.push_back({it->triple.accuracy, it->triple.avg_rank_diff, it->triple.importance_variance});
    }
    return ensemble_weights(own, stats);
}

}  // namespace

void ValuationSheet::set_entries(std::vector<SheetEntry> entries) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!index.emplace(entries[i].player_id, i).second) {
            throw std::invalid_argument("sheet lists player " + entries[i].player_id + " twice");
        }
    }
    entries_ = std::move(entries);
    index_ = std::move(index);
}

const SheetEntry* ValuationSheet::find(const std::string& player_id) const {
    auto it = index_.find(player_id);
    return it == index_.end() ? nullptr : &entries_[it->second];
}

double ValuationSheet::valuation_of(const std::string& player_id) const {
    const SheetEntry* e = find(player_id);
    return e ? e->valuation : 0.0;
}

PositionRanks positional_ranks(const PlayerTable& players, const ValuationSheet& sheet) {
    PositionRanks out;
    for (const auto& [pos, group] : by_position(players)) {
        IdList sorted = group;
        std::sort(sorted.begin(), sorted.end(), [&](const PlayerRecord* a, const PlayerRecord* b) {
            const SheetEntry* ea = sheet.find(a->player_id);
            const SheetEntry* eb = sheet.find(b->player_id);
            if ((ea != nullptr) != (eb != nullptr)) return ea != nullptr;
            if (ea && ea->valuation != eb->valuation) return ea->valuation > eb->valuation;
            return a->player_id < b->player_id;
        });
        for (std::size_t r = 0; r < sorted.size(); ++r) out[sorted[r]->player_id] = static_cast<int>(r + 1);
    }
    return out;
}

const std::vector<std::string>& feature_registry() {
    static const std::vector<std::string> names{
        "projection_valuation", "next_game_score", "preseason_score", "season_actual_score",
        "prev_ppg_score",       "boom_ratio",      "bust_avoidance",  "percent_owned",
        "percent_started",      "sentiment",       "adp_score",       "matchup_score",
        "games_left_frac",      "is_healthy",
    };
    return names;
}

std::map<std::string, FeatureVector> extract_features(const PlayerTable& players, Execution exec) {
    const auto groups = by_position(players);
    const auto stats = position_stats(groups);
    const auto boom_bust = boom_bust_impl(players, stats, exec);

    std::map<std::string, double> next_game, preseason, actual, prev, adp;
    for (const auto& [pos, group] : groups) {
        next_game.merge(rank_scores(group, [](const PlayerRecord& p) { return p.next_game_projection; }));
        preseason.merge(rank_scores(group, [](const PlayerRecord& p) { return p.preseason_projection; }));
        actual.merge(rank_scores(group, [](const PlayerRecord& p) { return p.season_actual; }));
        prev.merge(rank_scores(group, [](const PlayerRecord& p) { return p.avg_points_prev; }));
        adp.merge(rank_scores(group, adp_metric));
    }
    int max_games = 0;
    for (const auto& [id, p] : players) max_games = std::max(max_games, p.games_left);

    const auto list = flat(players);
    std::vector<FeatureVector> rows(list.size());
    parallel_for(list.size(), exec, [&](std::size_t i) {
        const PlayerRecord& p = *list[i];
        const BoomBust& bb = boom_bust.at(p.player_id);
        rows[i] = {
            {"projection_valuation", pv_of(p, stats.at(p.position))},
            {"next_game_score", next_game.at(p.player_id)},
            {"preseason_score", preseason.at(p.player_id)},
            {"season_actual_score", actual.at(p.player_id)},
            {"prev_ppg_score", prev.at(p.player_id)},
            {"boom_ratio", bb.boom},
            {"bust_avoidance", 1.0 - bb.bust},
            {"percent_owned", p.percent_owned},
            {"percent_started", p.percent_started},
            {"sentiment", p.sentiment},
            {"adp_score", adp.at(p.player_id)},
            {"matchup_score", std::clamp(p.opponent_rank / 32.0, 0.0, 1.0)},
            {"games_left_frac", max_games > 0 ? static_cast<double>(p.games_left) / max_games : 0.0},
            {"is_healthy", p.status == PlayerStatus::active ? 1.0 : 0.0},
        };
    });
    std::map<std::string, FeatureVector> out;
    for (std::size_t i = 0; i < list.size(); ++i) out.emplace(list[i]->player_id, std::move(rows[i]));
    return out;
}

std::map<std::string, BoomBust> boom_bust_table(const PlayerTable& players) {
    return boom_bust_impl(players, position_stats(by_position(players)), Execution::serial);
}

std::map<std::string, double> sme_valuations(const PlayerTable& players, const SmeWeights& weights, int week,
                                             Execution exec) {
    weights.validate();
    if (week < 0) throw std::invalid_argument("week must be nonnegative");
    const auto groups = by_position(players);
    const auto stats = position_stats(groups);
    const auto boom_bust = boom_bust_impl(players, stats, exec);

    std::map<std::string, double> out;
    for (const auto& [pos, group] : groups) {
        const PositionStats& s = stats.at(pos);
        auto bb = [&](const PlayerRecord& p) -> const BoomBust& { return boom_bust.at(p.player_id); };

        const auto season = rank_scores(group, [](const PlayerRecord& p) { return p.season_projection; });
        const auto boom = rank_scores(group, [&](const PlayerRecord& p) { return bb(p).boom; });
        const auto bust = rank_scores(group, [&](const PlayerRecord& p) { return -bb(p).bust; });
        const auto next = rank_scores(group, [](const PlayerRecord& p) { return p.next_game_projection; });
        const auto week_boom = rank_scores(group, [&](const PlayerRecord& p) { return bb(p).current_week_boom; });
        const auto started = rank_scores(group, [](const PlayerRecord& p) { return p.percent_started; });
        const auto preseason = rank_scores(group, [](const PlayerRecord& p) { return p.preseason_projection; });
        const auto pv = rank_scores(group, [&](const PlayerRecord& p) { return pv_of(p, s); });
        const auto adp = rank_scores(group, adp_metric);

        const auto tier2 = rank_scores(group, [&](const PlayerRecord& p) {
            const auto& id = p.player_id;
            return (boom.at(id) + bust.at(id) + next.at(id)) / 3.0;
        });
        const auto tier3 = rank_scores(group, [&](const PlayerRecord& p) {
            const auto& id = p.player_id;
            return (week_boom.at(id) + started.at(id) + preseason.at(id) + pv.at(id)) / 4.0;
        });

        std::map<std::string, double> raw;
        for (const auto* p : group) {
            const auto& id = p->player_id;
            raw[id] = sme_raw_valuation({season.at(id), tier2.at(id), tier3.at(id), adp.at(id)}, week, weights);
        }
        // Rank bands come from the raw order within the position.
        const auto raw_rank = ranks_of(group, [&](const PlayerRecord& p) { return raw.at(p.player_id); });
        std::map<std::string, double> adjusted;
        double top = 0.0;
        for (const auto* p : group) {
            const auto& id = p->player_id;
            const int band = (raw_rank.at(id) - 1) / weights.band_size;
            const double v = apply_state_and_equivalence(raw.at(id), *p, band, weights);
            adjusted[id] = v;
            top = std::max(top, v);
        }

        const auto prev = rank_scores(group, [](const PlayerRecord& p) { return p.avg_points_prev; });
        for (const auto* p : group) {
            const auto& id = p->player_id;
            const double prior = p->avg_points_prev > 0.0 ? prev.at(id) * top : adjusted.at(id);
            out[id] = momentum_blend(adjusted.at(id), prior, week);
        }
    }
    return out;
}

BatchResult batch_valuate(const BatchInputs& inputs, Execution exec) {
    if (inputs.top_n < 1) throw std::invalid_argument("top_n must be positive");
    if (inputs.players.empty()) throw std::invalid_argument("player table is empty");
    for (const auto& p : inputs.profiles) p.validate();

    BatchResult result;
    const auto sme = sme_valuations(inputs.players, inputs.weights, inputs.week, exec);
    double sme_low = std::numeric_limits<double>::infinity();
    double sme_high = -std::numeric_limits<double>::infinity();
    for (const auto& [id, v] : sme) {
        sme_low = std::min(sme_low, v);
        sme_high = std::max(sme_high, v);
    }
    const auto boom_bust = boom_bust_table(inputs.players);
    result.sheets.push_back(make_sheet(ComputeMode::sme, sme, inputs, sme_low, sme_high, boom_bust));

    std::map<std::string, FeatureVector> features;
    for (ComputeMode mode : {ComputeMode::classical, ComputeMode::quantum}) {
        const bool present = std::any_of(inputs.profiles.begin(), inputs.profiles.end(),
                                         [mode](const ModelImportanceProfile& p) { return p.compute_mode == mode; });
        if (!present) {
            result.warnings.push_back("no importance profile for mode " + std::string(to_string(mode)) + "; skipped");
            continue;
        }
        if (features.empty()) features = extract_features(inputs.players, exec);

        ModelImportanceProfile combined;
        combined.model_id = std::string(to_string(mode));
        combined.compute_mode = mode;
        combined.importances = mode_importances(inputs.profiles, mode);

        std::map<std::string, double> raw;
        for (const auto& [id, p] : inputs.players) {
            raw[id] = model_raw_valuation(features.at(id), combined, p, inputs.weights.status_penalties);
        }
        ValuationRange range{sme_low, sme_high, std::numeric_limits<double>::infinity(),
                             -std::numeric_limits<double>::infinity()};
        for (const auto& [id, v] : raw) {
            range.mode_low = std::min(range.mode_low, v);
            range.mode_high = std::max(range.mode_high, v);
        }
        std::map<std::string, double> valuations;
        for (const auto& [id, v] : raw) valuations[id] = normalize_to_sme_range(v, range);
        result.sheets.push_back(make_sheet(mode, valuations, inputs, sme_low, sme_high, boom_bust));
    }
    return result;
}

std::vector<std::filesystem::path> write_sheets(const std::vector<ValuationSheet>& sheets,
                                                const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& sheet : sheets) {
        const auto path = dir / ("sheet_" + std::string(to_string(sheet.compute_mode)) + ".json");
        write_json_file(path, to_json_value(sheet));
        written.push_back(path);
    }
    return written;
}

ValuationSheet load_sheet(const std::filesystem::path& path) {
    try {
        return sheet_from_json(read_json_file(path));
    } catch (const Json::exception& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

std::vector<ValuationSheet> load_sheets(const std::filesystem::path& dir) {
    std::vector<ValuationSheet> out;
    for (ComputeMode mode : kAllModes) {
        const auto path = dir / ("sheet_" + std::string(to_string(mode)) + ".json");
        if (std::filesystem::exists(path)) out.push_back(load_sheet(path));
    }
    if (out.empty()) throw std::runtime_error("no sheet_<mode>.json files in " + dir.string());
    return out;
}

}  // namespace fftrade

#include "fftrade/io.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace fftrade {

namespace {

template <typename T>
T field(const Json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return fallback;
    return it->get<T>();
}

const Json& required(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw std::invalid_argument(std::string("missing field '") + key + "'");
    return *it;
}

std::set<std::string> id_set(const Json& j, const char* key) {
    std::set<std::string> out;
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return out;
    if (!it->is_array()) throw std::invalid_argument(std::string("field '") + key + "' must be an array");
    for (const auto& v : *it) out.insert(v.get<std::string>());
    return out;
}

EquivalenceTable table_from_json(const Json& j) {
    EquivalenceTable out;
    for (const auto& row : j) {
        out[{row.at("band").get<int>(), parse_position(row.at("position").get<std::string>())}] =
            row.at("value").get<double>();
    }
    return out;
}

Json table_to_json(const EquivalenceTable& table) {
    Json out = Json::array();
    for (const auto& [key, value] : table) {
        out.push_back({{"band", key.first}, {"position", to_string(key.second)}, {"value", value}});
    }
    return out;
}

}  // namespace

double round6(double v) {
    const double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;  // no "-0.0"
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

PlayerRecord player_from_json(const Json& j) {
    PlayerRecord p;
    p.player_id = required(j, "player_id").get<std::string>();
    p.name = field<std::string>(j, "name", p.player_id);
    p.position = parse_position(required(j, "position").get<std::string>());
    p.season_projection = field(j, "season_projection", 0.0);
    p.next_game_projection = field(j, "next_game_projection", 0.0);
    p.preseason_projection = field(j, "preseason_projection", 0.0);
    p.season_actual = field(j, "season_actual", 0.0);
    p.avg_points_prev = field(j, "avg_points_prev", 0.0);
    p.game_log = field(j, "game_log", std::vector<double>{});
    p.percent_owned = field(j, "percent_owned", 0.0);
    p.percent_started = field(j, "percent_started", 0.0);
    p.adp = field(j, "adp", 0.0);
    p.status = parse_status(field<std::string>(j, "status", "active"));
    p.sentiment = field(j, "sentiment", 0.0);
    p.opponent_rank = field(j, "opponent_rank", 0);
    p.games_left = field(j, "games_left", 0);

    auto finite = [&](double v, const char* name) {
        if (!std::isfinite(v)) throw std::invalid_argument("player " + p.player_id + ": " + name + " must be finite");
    };
    finite(p.season_projection, "season_projection");
    finite(p.next_game_projection, "next_game_projection");
    finite(p.preseason_projection, "preseason_projection");
    finite(p.season_actual, "season_actual");
    finite(p.avg_points_prev, "avg_points_prev");
    for (double g : p.game_log) finite(g, "game_log");
    for (auto [v, name] : {std::pair{p.percent_owned, "percent_owned"}, std::pair{p.percent_started, "percent_started"}}) {
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("player " + p.player_id + ": " + name + " must be in [0,1]");
    }
    if (!(p.sentiment >= -1.0 && p.sentiment <= 1.0)) {
        throw std::invalid_argument("player " + p.player_id + ": sentiment must be in [-1,1]");
    }
    if (p.games_left < 0) throw std::invalid_argument("player " + p.player_id + ": games_left must be nonnegative");
    return p;
}

Json to_json_value(const PlayerRecord& p) {
    Json log = Json::array();
    for (double g : p.game_log) log.push_back(round6(g));
    return {{"player_id", p.player_id},
            {"name", p.name},
            {"position", to_string(p.position)},
            {"season_projection", round6(p.season_projection)},
            {"next_game_projection", round6(p.next_game_projection)},
            {"preseason_projection", round6(p.preseason_projection)},
            {"season_actual", round6(p.season_actual)},
            {"avg_points_prev", round6(p.avg_points_prev)},
            {"game_log", log},
            {"percent_owned", round6(p.percent_owned)},
            {"percent_started", round6(p.percent_started)},
            {"adp", round6(p.adp)},
            {"status", to_string(p.status)},
            {"sentiment", round6(p.sentiment)},
            {"opponent_rank", p.opponent_rank},
            {"games_left", p.games_left}};
}

LeagueRules rules_from_json(const Json& j) {
    LeagueRules rules;
    for (const auto& s : required(j, "slot_rules")) {
        SlotRule rule;
        rule.slot_id = required(s, "slot_id").get<std::string>();
        for (const auto& pos : required(s, "eligible_positions")) {
            rule.eligible_positions.push_back(parse_position(pos.get<std::string>()));
        }
        rule.count = field(s, "count", 1);
        rules.slot_rules.push_back(std::move(rule));
    }
    rules.team_count = field(j, "team_count", 2);
    rules.current_week = field(j, "current_week", 0);
    if (rules.current_week < 0) throw std::invalid_argument("current_week must be nonnegative");
    return rules;
}

Json to_json_value(const LeagueRules& rules) {
    Json slots = Json::array();
    for (const auto& s : rules.slot_rules) {
        Json positions = Json::array();
        for (Position p : s.eligible_positions) positions.push_back(to_string(p));
        slots.push_back({{"slot_id", s.slot_id}, {"eligible_positions", positions}, {"count", s.count}});
    }
    return {{"slot_rules", slots}, {"team_count", rules.team_count}, {"current_week", rules.current_week}};
}

PlayerTable players_from_json(const Json& j) {
    const Json& list = j.is_array() ? j : required(j, "players");
    PlayerTable table;
    for (const auto& pj : list) {
        PlayerRecord p = player_from_json(pj);
        const std::string id = p.player_id;
        if (!table.emplace(id, std::move(p)).second) throw std::invalid_argument("duplicate player_id " + id);
    }
    return table;
}

League league_from_json(const Json& j) {
    League league;
    league.rules = rules_from_json(required(j, "rules"));
    for (const auto& tj : required(j, "teams")) {
        league.teams.push_back({required(tj, "team_id").get<std::string>(),
                                field(tj, "roster", std::vector<std::string>{})});
    }
    league.players = players_from_json(j);
    return league;
}

Json to_json_value(const League& league) {
    Json teams = Json::array();
    for (const auto& t : league.teams) teams.push_back({{"team_id", t.team_id}, {"roster", t.roster}});
    Json players = Json::array();
    for (const auto& [id, p] : league.players) players.push_back(to_json_value(p));
    return {{"rules", to_json_value(league.rules)}, {"teams", teams}, {"players", players}};
}

SmeWeights sme_weights_from_json(const Json& j) {
    SmeWeights w;
    w.alpha1 = field(j, "alpha1", w.alpha1);
    w.alpha2 = field(j, "alpha2", w.alpha2);
    w.alpha3 = field(j, "alpha3", w.alpha3);
    w.decay_divisor = field(j, "decay_divisor", w.decay_divisor);
    w.band_size = field(j, "band_size", w.band_size);
    if (auto it = j.find("status_penalties"); it != j.end()) {
        for (const auto& [status, m] : it->items()) {
            w.status_penalties.multipliers[parse_status(status)] = m.get<double>();
        }
    }
    if (auto it = j.find("equivalence_boost"); it != j.end()) w.equivalence_boost = table_from_json(*it);
    if (auto it = j.find("equivalence_expert"); it != j.end()) w.equivalence_expert = table_from_json(*it);
    w.validate();
    return w;
}

Json to_json_value(const SmeWeights& w) {
    Json penalties = Json::object();
    for (const auto& [status, m] : w.status_penalties.multipliers) penalties[std::string(to_string(status))] = m;
    return {{"alpha1", w.alpha1},
            {"alpha2", w.alpha2},
            {"alpha3", w.alpha3},
            {"decay_divisor", w.decay_divisor},
            {"band_size", w.band_size},
            {"status_penalties", penalties},
            {"equivalence_boost", table_to_json(w.equivalence_boost)},
            {"equivalence_expert", table_to_json(w.equivalence_expert)}};
}

ModelImportanceProfile profile_from_json(const Json& j) {
    ModelImportanceProfile p;
    p.model_id = required(j, "model_id").get<std::string>();
    p.compute_mode = parse_mode(required(j, "compute_mode").get<std::string>());
    p.accuracy = required(j, "accuracy").get<double>();
    if (auto it = j.find("importances"); it != j.end()) {
        p.importances = it->get<std::map<std::string, double>>();
    } else if (auto tiers = j.find("tiers"); tiers != j.end()) {
        std::vector<TierImportance> parsed;
        for (const auto& t : *tiers) {
            parsed.push_back({required(t, "accuracy").get<double>(),
                              required(t, "importances").get<std::map<std::string, double>>()});
        }
        p.importances = combine_tiers(parsed);
    } else {
        throw std::invalid_argument("profile " + p.model_id + " needs importances or tiers");
    }
    p.rank_order = field(j, "rank_order", std::vector<std::string>{});
    p.validate();
    return p;
}

Json to_json_value(const ModelImportanceProfile& p) {
    return {{"model_id", p.model_id},
            {"compute_mode", to_string(p.compute_mode)},
            {"accuracy", p.accuracy},
            {"importances", p.importances},
            {"rank_order", p.rank_order}};
}

Json to_json_value(const CostBreakdown& c) {
    return {{"position_importance_term", round6(c.position_importance_term)},
            {"all_roster_projection_term", round6(c.all_roster_projection_term)},
            {"position_projection_term", round6(c.position_projection_term)},
            {"rank_term", round6(c.rank_term)},
            {"pre_pc", round6(c.pre_pc)},
            {"norm_pcost", round6(c.norm_pcost)}};
}

CostBreakdown cost_from_json(const Json& j) {
    return {j.at("position_importance_term").get<double>(), j.at("all_roster_projection_term").get<double>(),
            j.at("position_projection_term").get<double>(),  j.at("rank_term").get<double>(),
            j.at("pre_pc").get<double>(),                    j.at("norm_pcost").get<double>()};
}

Json to_json_value(const ValuationSheet& sheet) {
    Json entries = Json::array();
    for (const auto& e : sheet.entries()) {
        entries.push_back({{"player_id", e.player_id},
                           {"valuation", round6(e.valuation)},
                           {"cost", e.cost ? to_json_value(*e.cost) : Json(nullptr)},
                           {"boom", round6(e.boom)},
                           {"bust", round6(e.bust)},
                           {"percent_owned", round6(e.percent_owned)},
                           {"opponent_rank", e.opponent_rank},
                           {"games_left", e.games_left},
                           {"season_actual", round6(e.season_actual)},
                           {"season_projection", round6(e.season_projection)}});
    }
    return {{"compute_mode", to_string(sheet.compute_mode)},
            {"generated_at", sheet.generated_at},
            {"sme_low", round6(sheet.sme_low)},
            {"sme_high", round6(sheet.sme_high)},
            {"entries", entries}};
}

ValuationSheet sheet_from_json(const Json& j) {
    ValuationSheet sheet;
    sheet.compute_mode = parse_mode(required(j, "compute_mode").get<std::string>());
    sheet.generated_at = field<std::string>(j, "generated_at", "");
    sheet.sme_low = required(j, "sme_low").get<double>();
    sheet.sme_high = required(j, "sme_high").get<double>();
    std::vector<SheetEntry> entries;
    for (const auto& ej : required(j, "entries")) {
        SheetEntry e;
        e.player_id = required(ej, "player_id").get<std::string>();
        e.valuation = required(ej, "valuation").get<double>();
        if (auto c = ej.find("cost"); c != ej.end() && !c->is_null()) e.cost = cost_from_json(*c);
        e.boom = field(ej, "boom", 0.0);
        e.bust = field(ej, "bust", 0.0);
        e.percent_owned = field(ej, "percent_owned", 0.0);
        e.opponent_rank = field(ej, "opponent_rank", 0);
        e.games_left = field(ej, "games_left", 0);
        e.season_actual = field(ej, "season_actual", 0.0);
        e.season_projection = field(ej, "season_projection", 0.0);
        entries.push_back(std::move(e));
    }
    sheet.set_entries(std::move(entries));
    return sheet;
}

PersonalizationRequest personalization_from_json(const Json& j) {
    PersonalizationRequest r;
    if (j.is_null()) return r;
    if (!j.is_object()) throw std::invalid_argument("personalization must be an object");
    r.watchlist = id_set(j, "watchlist");
    r.prefer_release = id_set(j, "prefer_release");
    r.untradables = id_set(j, "untradables");
    for (const auto& pos : id_set(j, "target_positions")) r.target_positions.insert(parse_position(pos));
    r.must_acquire = id_set(j, "must_acquire");
    r.must_release = id_set(j, "must_release");
    r.risk = field(j, "risk", 1.0);
    r.validate();
    return r;
}

Json to_json_value(const PersonalizationRequest& r) {
    Json positions = Json::array();
    for (Position p : r.target_positions) positions.push_back(to_string(p));
    return {{"watchlist", r.watchlist},       {"prefer_release", r.prefer_release},
            {"untradables", r.untradables},   {"target_positions", positions},
            {"must_acquire", r.must_acquire}, {"must_release", r.must_release},
            {"risk", r.risk}};
}

Json to_json_value(const TradePackage& t) {
    return {{"fingerprint", t.fingerprint()},
            {"team_a", t.team_a},
            {"team_b", t.team_b},
            {"a_receives", t.a_receives},
            {"b_receives", t.b_receives},
            {"compute_mode", to_string(t.compute_mode)},
            {"pairing_angle", round6(t.pairing_angle)},
            {"risk", round6(t.risk)},
            {"insights",
             {{"parity", round6(t.insights.parity)},
              {"impact_a", round6(t.insights.impact_a)},
              {"impact_b", round6(t.insights.impact_b)},
              {"pain_a", round6(t.insights.pain_a)},
              {"pain_b", round6(t.insights.pain_b)},
              {"upside", round6(t.insights.upside)}}}};
}

TradePackage trade_from_json(const Json& j) {
    TradePackage t;
    t.team_a = required(j, "team_a").get<std::string>();
    t.team_b = required(j, "team_b").get<std::string>();
    t.a_receives = required(j, "a_receives").get<std::vector<std::string>>();
    t.b_receives = required(j, "b_receives").get<std::vector<std::string>>();
    t.compute_mode = parse_mode(required(j, "compute_mode").get<std::string>());
    t.pairing_angle = field(j, "pairing_angle", 0.0);
    t.risk = field(j, "risk", 1.0);
    if (auto it = j.find("insights"); it != j.end()) {
        t.insights = {field(*it, "parity", 0.0), field(*it, "impact_a", 0.0), field(*it, "impact_b", 0.0),
                      field(*it, "pain_a", 0.0), field(*it, "pain_b", 0.0),   field(*it, "upside", 0.0)};
    }
    return t;
}

EngineConfig engine_config_from_json(const Json& j) {
    EngineConfig c;
    c.max_results = field(j, "max_results", c.max_results);
    c.pairings_per_mode = field(j, "pairings_per_mode", c.pairings_per_mode);
    c.max_items_per_side = field(j, "max_items_per_side", c.max_items_per_side);
    c.risk_scales = field(j, "risk_scales", c.risk_scales);
    if (auto it = j.find("personalization"); it != j.end()) {
        c.personalization.watchlist = field(*it, "watchlist", c.personalization.watchlist);
        c.personalization.prefer_release = field(*it, "prefer_release", c.personalization.prefer_release);
        c.personalization.target_position = field(*it, "target_position", c.personalization.target_position);
    }
    if (auto it = j.find("filters"); it != j.end()) {
        auto& f = c.filters;
        f.max_parity = field(*it, "max_parity", f.max_parity);
        f.max_pain = field(*it, "max_pain", f.max_pain);
        f.max_count_diff = field(*it, "max_count_diff", f.max_count_diff);
        f.min_upside = field(*it, "min_upside", f.min_upside);
        f.best_player_gap = field(*it, "best_player_gap", f.best_player_gap);
        f.max_side_players = field(*it, "max_side_players", f.max_side_players);
        f.r3_all_positions = field(*it, "r3_all_positions", f.r3_all_positions);
        for (const auto& rule : field(*it, "disabled_rules", std::vector<std::string>{})) {
            f.set_enabled(parse_filter_rule(rule), false);
        }
    }
    if (auto it = j.find("upside"); it != j.end()) {
        auto& u = c.upside;
        u.bias = field(*it, "bias", u.bias);
        u.parity = field(*it, "parity", u.parity);
        u.mean_pain = field(*it, "mean_pain", u.mean_pain);
        u.dissimilarity = field(*it, "dissimilarity", u.dissimilarity);
        u.min_impact = field(*it, "min_impact", u.min_impact);
    }
    c.validate();
    return c;
}

TradeRating rating_from_json(const Json& j) {
    TradeRating r;
    r.fingerprint = required(j, "fingerprint").get<std::string>();
    r.rater_id = required(j, "rater_id").get<std::string>();
    const std::string side = required(j, "side").get<std::string>();
    if (side == "A") {
        r.side = TradeSide::A;
    } else if (side == "B") {
        r.side = TradeSide::B;
    } else {
        throw std::invalid_argument("side must be A or B");
    }
    r.rating = required(j, "rating").get<int>();
    r.blinded_mode_label = field<std::string>(j, "blinded_mode_label", "");
    r.validate();
    return r;
}

Json to_json_value(const TradeRating& r) {
    return {{"fingerprint", r.fingerprint},
            {"rater_id", r.rater_id},
            {"side", r.side == TradeSide::A ? "A" : "B"},
            {"rating", r.rating},
            {"blinded_mode_label", r.blinded_mode_label}};
}

Json diversity_report_json(std::span<const DiversityRow> rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        out.push_back({{"model_id", row.model_id},
                       {"compute_mode", to_string(row.compute_mode)},
                       {"accuracy", round6(row.triple.accuracy)},
                       {"avg_rank_diff", round6(row.triple.avg_rank_diff)},
                       {"variance", round6(row.triple.importance_variance)},
                       {"rendered_triple", row.triple.render()}});
    }
    return out;
}

Json evaluation_report_json(std::span<const TradeRating> ratings) {
    const auto completed = completed_ratings(ratings);
    std::vector<double> overall;
    std::map<std::string, std::vector<std::string>> by_label;
    std::map<std::string, std::vector<double>> overall_by_label;
    for (const auto& c : completed) {
        overall.push_back(c.overall);
        if (!c.blinded_mode_label.empty()) {
            by_label[c.blinded_mode_label].push_back(c.fingerprint);
            overall_by_label[c.blinded_mode_label].push_back(c.overall);
        }
    }

    Json report;
    report["ratings"] = ratings.size();
    report["completed"] = completed.size();
    const auto accuracy = good_trade_accuracy(overall);
    report["good_trade_accuracy"] = accuracy ? Json(round6(*accuracy)) : Json(nullptr);
    report["mean_rating"] = overall.empty()
                                ? Json(nullptr)
                                : Json(round6(std::accumulate(overall.begin(), overall.end(), 0.0) /
                                              static_cast<double>(overall.size())));
    Json dist = Json::object();
    const auto bins = rating_distribution(overall);
    for (std::size_t i = 0; i < bins.size(); ++i) dist[std::to_string(i + 1)] = round6(bins[i]);
    report["rating_distribution"] = dist;

    Json kappas = Json::array();
    for (const auto& k : pairwise_kappa(completed)) {
        kappas.push_back({{"rater_x", k.rater_x}, {"rater_y", k.rater_y}, {"shared", k.shared},
                          {"kappa", round6(k.kappa)}});
    }
    report["kappa"] = kappas;

    report["uniqueness"] = by_label.size() >= 2 ? Json(round6(uniqueness(by_label))) : Json(nullptr);
    Json labels = Json::object();
    for (const auto& [label, values] : overall_by_label) {
        labels[label] = {{"completed", values.size()},
                         {"good_trade_accuracy", round6(*good_trade_accuracy(values))},
                         {"mean_rating", round6(std::accumulate(values.begin(), values.end(), 0.0) /
                                                static_cast<double>(values.size()))}};
    }
    report["by_label"] = labels;
    return report;
}

}  // namespace fftrade

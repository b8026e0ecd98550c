// fftrade: batch valuation, trade generation, pairing, reports and the HTTP service.

#include <algorithm>
#include <csignal>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fftrade/io.hpp"
#include "fftrade/pairing.hpp"
#include "fftrade/service.hpp"
#include "fftrade/sheet.hpp"
#include "fftrade/synthetic.hpp"
#include "fftrade/trade_engine.hpp"

using namespace fftrade;

namespace {

std::vector<ModelImportanceProfile> load_profiles(const std::string& path) {
    if (path.empty()) return {};
    const Json doc = read_json_file(path);
    const Json& list = doc.is_array() ? doc : doc.at("profiles");
    std::vector<ModelImportanceProfile> out;
    for (const auto& p : list) out.push_back(profile_from_json(p));
    return out;
}

EngineConfig load_config(const std::string& path) {
    if (path.empty()) return {};
    return engine_config_from_json(read_json_file(path));
}

Execution execution(bool serial) { return serial ? Execution::serial : Execution::parallel; }

/// Sheets from a directory, or computed on the fly from the league.
std::vector<ValuationSheet> sheets_for(const League& league, const std::string& sheets_dir,
                                       const std::string& profiles, Execution exec) {
    if (!sheets_dir.empty()) return load_sheets(sheets_dir);
    BatchInputs inputs;
    inputs.players = league.players;
    inputs.league = league;
    inputs.profiles = load_profiles(profiles);
    inputs.week = league.rules.current_week;
    return batch_valuate(inputs, exec).sheets;
}

std::vector<ValuationSheet> select_modes(std::vector<ValuationSheet> sheets, const std::vector<std::string>& modes) {
    if (modes.empty()) return sheets;
    std::vector<ValuationSheet> out;
    for (const auto& name : modes) {
        const ComputeMode mode = parse_mode(name);
        auto it = std::find_if(sheets.begin(), sheets.end(), [mode](const ValuationSheet& s) { return s.compute_mode == mode; });
        if (it == sheets.end()) throw std::invalid_argument("no sheet for mode '" + name + "'");
        out.push_back(*it);
    }
    return out;
}

HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fantasy-football trade recommendations"};
    app.require_subcommand(1);

    bool serial = false;
    app.add_flag("--serial", serial, "Run kernels on one thread");

    // valuate
    auto* valuate = app.add_subcommand("valuate", "Compute per-mode valuation sheets");
    std::string players_path, out_dir, profiles_path, weights_path, generated_at = "1970-01-01T00:00:00Z";
    int top_n = 400, week = -1;
    valuate->add_option("--players", players_path, "Player table or league JSON")->required()->check(CLI::ExistingFile);
    valuate->add_option("--out", out_dir, "Output directory")->required();
    valuate->add_option("--profiles", profiles_path, "Model importance profiles JSON")->check(CLI::ExistingFile);
    valuate->add_option("--weights", weights_path, "SME weights JSON")->check(CLI::ExistingFile);
    valuate->add_option("--top-n", top_n, "Entries kept per sheet")->check(CLI::PositiveNumber);
    valuate->add_option("--week", week, "Season week (defaults to the league's current week)");
    valuate->add_option("--generated-at", generated_at, "Timestamp written into each sheet");

    // trade
    auto* trade = app.add_subcommand("trade", "Generate trades for one team");
    std::string league_path, team, sheets_dir, personalization_path, config_path;
    std::vector<std::string> modes;
    int max_results = -1;
    double risk = 0.0;
    trade->add_option("--league", league_path, "League JSON")->required()->check(CLI::ExistingFile);
    trade->add_option("--team", team, "Requesting team id")->required();
    trade->add_option("--sheets", sheets_dir, "Directory of sheet_<mode>.json files")->check(CLI::ExistingDirectory);
    trade->add_option("--profiles", profiles_path, "Profiles used when sheets are computed on the fly")
        ->check(CLI::ExistingFile);
    trade->add_option("--personalization", personalization_path, "Personalization JSON")->check(CLI::ExistingFile);
    trade->add_option("--config", config_path, "Engine config JSON")->check(CLI::ExistingFile);
    trade->add_option("--modes", modes, "Compute modes to use")->delimiter(',');
    trade->add_option("--max-results", max_results, "Trades returned");
    trade->add_option("--risk", risk, "Risk alpha in (0, 1]; overrides the personalization file");

    // pair
    auto* pair = app.add_subcommand("pair", "Rank trade partners by roster dissimilarity");
    std::string mode_name = "sme";
    pair->add_option("--league", league_path, "League JSON")->required()->check(CLI::ExistingFile);
    pair->add_option("--team", team, "Requesting team id")->required();
    pair->add_option("--sheets", sheets_dir, "Directory of sheet_<mode>.json files")->check(CLI::ExistingDirectory);
    pair->add_option("--profiles", profiles_path, "Profiles used when sheets are computed on the fly")
        ->check(CLI::ExistingFile);
    pair->add_option("--mode", mode_name, "Compute mode");

    // report
    auto* report = app.add_subcommand("report", "Evaluation metrics and the diversity report");
    std::string ratings_path;
    report->add_option("--ratings", ratings_path, "Rating log (JSON lines)")->check(CLI::ExistingFile);
    report->add_option("--profiles", profiles_path, "Model importance profiles JSON")->check(CLI::ExistingFile);

    // serve
    auto* serve = app.add_subcommand("serve", "Run the HTTP trade service");
    std::string host = "127.0.0.1";
    int port = 8080, refresh_seconds = 900;
    serve->add_option("--sheets", sheets_dir, "Directory of sheet_<mode>.json files")->required()->check(CLI::ExistingDirectory);
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
    serve->add_option("--config", config_path, "Engine config JSON")->check(CLI::ExistingFile);
    serve->add_option("--league", league_path, "League used when a request omits one")->check(CLI::ExistingFile);
    serve->add_option("--ratings", ratings_path, "Rating log (JSON lines), created if missing");
    serve->add_option("--refresh-seconds", refresh_seconds, "Sheet reload interval; 0 disables")->check(CLI::NonNegativeNumber);

    // synth
    auto* synth = app.add_subcommand("synth", "Write a seeded synthetic league and profiles");
    SyntheticOptions synth_options;
    synth->add_option("--out", out_dir, "Output directory")->required();
    synth->add_option("--teams", synth_options.teams, "Teams");
    synth->add_option("--players", synth_options.players, "Players in the table");
    synth->add_option("--week", synth_options.week, "Current week");
    synth->add_option("--seed", synth_options.seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Execution exec = execution(serial);
        if (*valuate) {
            const Json doc = read_json_file(players_path);
            BatchInputs inputs;
            inputs.players = players_from_json(doc);
            if (doc.is_object() && doc.contains("teams")) inputs.league = league_from_json(doc);
            inputs.profiles = load_profiles(profiles_path);
            if (!weights_path.empty()) inputs.weights = sme_weights_from_json(read_json_file(weights_path));
            inputs.top_n = top_n;
            inputs.week = week >= 0 ? week : (inputs.league ? inputs.league->rules.current_week : 0);
            inputs.generated_at = generated_at;
            const auto result = batch_valuate(inputs, exec);
            for (const auto& w : result.warnings) std::cerr << "fftrade: warning: " << w << '\n';
            for (const auto& path : write_sheets(result.sheets, out_dir)) std::cout << path.string() << '\n';
        } else if (*trade) {
            const League league = league_from_json(read_json_file(league_path));
            const auto sheets = select_modes(sheets_for(league, sheets_dir, profiles_path, exec), modes);
            EngineConfig config = load_config(config_path);
            if (max_results >= 0) config.max_results = max_results;
            PersonalizationRequest request =
                personalization_path.empty() ? PersonalizationRequest{}
                                             : personalization_from_json(read_json_file(personalization_path));
            if (trade->count("--risk") > 0) request.risk = risk;
            const auto result = generate_trades(league, team, request, sheets, config, exec);
            Json trades = Json::array();
            for (const auto& t : result.trades) trades.push_back(to_json_value(t));
            std::cout << Json{{"trades", trades}, {"candidates", result.candidates},
                              {"rejected", result.rejections.size()}}.dump(2)
                      << '\n';
            for (const auto& r : result.rejections) std::cerr << "rejected " << r.log_line() << '\n';
        } else if (*pair) {
            const League league = league_from_json(read_json_file(league_path));
            const auto sheets = select_modes(sheets_for(league, sheets_dir, profiles_path, exec), {mode_name});
            Json out = Json::array();
            for (const auto& p : rank_pairings(team, team_vectors(league, sheets.front()))) {
                out.push_back({{"team_id", p.team_id}, {"angle", round6(p.angle)}});
            }
            std::cout << out.dump(2) << '\n';
        } else if (*report) {
            Json out;
            const auto ratings = ratings_path.empty() ? std::vector<TradeRating>{} : load_ratings(ratings_path);
            out["evaluation"] = evaluation_report_json(ratings);
            const auto profiles = load_profiles(profiles_path);
            out["diversity"] = diversity_report_json(diversity_report(profiles));
            std::cout << out.dump(2) << '\n';
        } else if (*serve) {
            ServiceOptions options;
            options.engine = load_config(config_path);
            options.sheets_dir = sheets_dir;
            options.ratings_log = ratings_path;
            if (!league_path.empty()) options.default_league = league_from_json(read_json_file(league_path));
            options.exec = exec;
            TradeService service(std::move(options));
            HttpServer server(service);
            const int bound = server.bind(host, port);
            std::optional<RefreshTimer> timer;
            if (refresh_seconds > 0) {
                timer.emplace(std::chrono::seconds(refresh_seconds), [&service] {
                    try {
                        service.reload();
                    } catch (const std::exception& e) {
                        std::cerr << "fftrade: reload failed, keeping previous sheets: " << e.what() << '\n';
                    }
                });
            }
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "fftrade: listening on " << host << ':' << bound << std::endl;
            server.listen();
            g_server = nullptr;
        } else if (*synth) {
            const League league = synthetic_league(synth_options);
            std::filesystem::create_directories(out_dir);
            const std::filesystem::path dir = out_dir;
            write_json_file(dir / "league.json", to_json_value(league));
            Json profiles = Json::array();
            for (const auto& p : synthetic_profiles(synth_options.seed)) profiles.push_back(to_json_value(p));
            write_json_file(dir / "profiles.json", profiles);
            std::cout << (dir / "league.json").string() << '\n' << (dir / "profiles.json").string() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "fftrade: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

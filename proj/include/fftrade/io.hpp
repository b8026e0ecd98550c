/// @file io.hpp
/// @brief JSON (de)serialization for every file format and wire body.
///
/// Field names follow the domain types in snake_case. Doubles written by
/// the service and the batch job are rounded to 6 decimal places so
/// outputs are byte-stable.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "fftrade/domain.hpp"
#include "fftrade/evaluation.hpp"
#include "fftrade/importance.hpp"
#include "fftrade/sheet.hpp"
#include "fftrade/trade_engine.hpp"
#include "fftrade/valuation.hpp"

namespace fftrade {

using Json = nlohmann::json;

double round6(double v);

Json read_json_file(const std::filesystem::path& path);
/// Writes `doc.dump(2)` plus a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& doc);

// League documents: {rules, teams, players}.
PlayerRecord player_from_json(const Json& j);
Json to_json_value(const PlayerRecord& p);
LeagueRules rules_from_json(const Json& j);
Json to_json_value(const LeagueRules& rules);
League league_from_json(const Json& j);
Json to_json_value(const League& league);
/// Accepts either a league document or {players: [...]}.
PlayerTable players_from_json(const Json& j);

SmeWeights sme_weights_from_json(const Json& j);
Json to_json_value(const SmeWeights& w);

/// Accepts {model_id, compute_mode, accuracy, importances, rank_order} and,
/// optionally, "tiers": [{accuracy, importances}] which are combined into
/// the importances when "importances" is absent.
ModelImportanceProfile profile_from_json(const Json& j);
Json to_json_value(const ModelImportanceProfile& p);

Json to_json_value(const CostBreakdown& c);
CostBreakdown cost_from_json(const Json& j);
Json to_json_value(const ValuationSheet& sheet);
ValuationSheet sheet_from_json(const Json& j);

PersonalizationRequest personalization_from_json(const Json& j);
Json to_json_value(const PersonalizationRequest& r);
Json to_json_value(const TradePackage& t);
TradePackage trade_from_json(const Json& j);

EngineConfig engine_config_from_json(const Json& j);

TradeRating rating_from_json(const Json& j);
Json to_json_value(const TradeRating& r);

/// [{model_id, compute_mode, accuracy, avg_rank_diff, variance, rendered_triple}]
Json diversity_report_json(std::span<const DiversityRow> rows);

/// Accuracy, distribution, pairwise kappa and per-label uniqueness.
Json evaluation_report_json(std::span<const TradeRating> ratings);

}  // namespace fftrade

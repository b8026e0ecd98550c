#include "fftrade/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "fftrade/io.hpp"

namespace fftrade {

void TradeRating::validate() const {
    if (fingerprint.empty()) throw std::invalid_argument("rating needs a trade fingerprint");
    if (rater_id.empty()) throw std::invalid_argument("rating needs a rater_id");
    if (rating < 1 || rating > 10) throw std::invalid_argument("rating must be between 1 and 10");
    if (!blinded_mode_label.empty() && blinded_mode_label != "A" && blinded_mode_label != "B" &&
        blinded_mode_label != "C") {
        throw std::invalid_argument("blinded_mode_label must be A, B or C");
    }
}

double overall_rating(int side_a, int side_b) { return 0.5 * (side_a + side_b); }

std::vector<CompletedRating> completed_ratings(std::span<const TradeRating> ratings) {
    // (fingerprint, rater) -> latest rating per side
    std::map<std::pair<std::string, std::string>, std::array<const TradeRating*, 2>> latest;
    for (const auto& r : ratings) {
        latest[{r.fingerprint, r.rater_id}][static_cast<std::size_t>(r.side)] = &r;
    }
    std::vector<CompletedRating> out;
    for (const auto& [key, sides] : latest) {
        if (sides[0] == nullptr || sides[1] == nullptr) continue;  // pending
        const std::string& label =
            sides[0]->blinded_mode_label.empty() ? sides[1]->blinded_mode_label : sides[0]->blinded_mode_label;
        out.push_back({key.first, key.second, label, overall_rating(sides[0]->rating, sides[1]->rating)});
    }
    return out;
}

std::optional<double> good_trade_accuracy(std::span<const double> overall) {
    if (overall.empty()) return std::nullopt;
    const auto good = std::count_if(overall.begin(), overall.end(),
                                    [](double r) { return r >= kGoodTradeThreshold; });
    return static_cast<double>(good) / static_cast<double>(overall.size());
}

std::array<double, 10> rating_distribution(std::span<const double> overall) {
    std::array<double, 10> bins{};
    if (overall.empty()) return bins;
    for (double r : overall) {
        const int bin = std::clamp(static_cast<int>(std::floor(r)), 1, 10);
        bins[static_cast<std::size_t>(bin - 1)] += 1.0;
    }
    for (double& b : bins) b = 100.0 * b / static_cast<double>(overall.size());
    return bins;
}

double cohen_kappa(std::span<const bool> rater_x, std::span<const bool> rater_y) {
    if (rater_x.size() != rater_y.size()) throw std::invalid_argument("raters judged different trade counts");
    if (rater_x.empty()) throw std::invalid_argument("kappa needs at least one shared trade");
    const double n = static_cast<double>(rater_x.size());
    double agree = 0.0, x_good = 0.0, y_good = 0.0;
    for (std::size_t i = 0; i < rater_x.size(); ++i) {
        agree += rater_x[i] == rater_y[i] ? 1.0 : 0.0;
        x_good += rater_x[i] ? 1.0 : 0.0;
        y_good += rater_y[i] ? 1.0 : 0.0;
    }
    const double p_o = agree / n;
    const double p_e = (x_good / n) * (y_good / n) + (1.0 - x_good / n) * (1.0 - y_good / n);
    if (p_e == 1.0) {
        if (p_o == 1.0) return 1.0;
        throw std::invalid_argument("kappa undefined: chance agreement is 1");
    }
    return (p_o - p_e) / (1.0 - p_e);
}

std::vector<KappaPair> pairwise_kappa(std::span<const CompletedRating> completed) {
    std::map<std::string, std::map<std::string, bool>> by_rater;  // rater -> fingerprint -> good
    for (const auto& c : completed) by_rater[c.rater_id][c.fingerprint] = c.overall >= kGoodTradeThreshold;

    std::vector<KappaPair> out;
    for (auto x = by_rater.begin(); x != by_rater.end(); ++x) {
        for (auto y = std::next(x); y != by_rater.end(); ++y) {
            std::vector<bool> jx, jy;
            for (const auto& [fp, good] : x->second) {
                auto it = y->second.find(fp);
                if (it == y->second.end()) continue;
                jx.push_back(good);
                jy.push_back(it->second);
            }
            if (jx.empty()) continue;
            // std::vector<bool> has no contiguous storage; copy into arrays of bool.
            std::unique_ptr<bool[]> ax(new bool[jx.size()]), ay(new bool[jy.size()]);
            std::copy(jx.begin(), jx.end(), ax.get());
            std::copy(jy.begin(), jy.end(), ay.get());
            out.push_back({x->first, y->first, jx.size(),
                           cohen_kappa({ax.get(), jx.size()}, {ay.get(), jy.size()})});
        }
    }
    return out;
}

double uniqueness(const std::map<std::string, std::vector<std::string>>& trades_by_mode) {
    if (trades_by_mode.size() < 2) throw std::invalid_argument("uniqueness needs at least two compute modes");
    std::map<std::string, int> modes_per_trade;
    std::size_t instances = 0;
    for (const auto& [mode, trades] : trades_by_mode) {
        const std::set<std::string> distinct(trades.begin(), trades.end());
        instances += distinct.size();
        for (const auto& fp : distinct) ++modes_per_trade[fp];
    }
    if (instances == 0) return 0.0;
    std::size_t unique = 0;
    for (const auto& [fp, modes] : modes_per_trade) {
        if (modes == 1) ++unique;
    }
    return static_cast<double>(unique) / static_cast<double>(instances);
}

std::map<std::string, ComputeMode> make_blinding(std::uint64_t session_seed) {
    std::array<ComputeMode, 3> modes = kAllModes;
    std::mt19937_64 rng(session_seed);
    std::shuffle(modes.begin(), modes.end(), rng);
    return {{"A", modes[0]}, {"B", modes[1]}, {"C", modes[2]}};
}

RatingStore::RatingStore(std::filesystem::path path) : path_(std::move(path)) {
    if (!path_.empty() && std::filesystem::exists(path_)) ratings_ = load_ratings(path_);
}

void RatingStore::append(const TradeRating& rating) {
    rating.validate();
    std::lock_guard lock(mutex_);
    if (path_.empty()) {
        ratings_.push_back(rating);
        return;
    }
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("cannot open rating log " + path_.string());
    out << to_json_value(rating).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("failed to append to rating log " + path_.string());
    ratings_.push_back(rating);
}

std::vector<TradeRating> RatingStore::snapshot() const {
    std::lock_guard lock(mutex_);
    return ratings_;
}

std::vector<TradeRating> load_ratings(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read rating log " + path.string());
    std::vector<TradeRating> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(rating_from_json(Json::parse(line)));
        } catch (const std::exception& e) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace fftrade

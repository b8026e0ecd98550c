#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fftrade/pairing.hpp"
#include "support.hpp"

using namespace fftrade;
using namespace testkit;
using Catch::Matchers::WithinAbs;

namespace {

TeamVector vec(std::vector<double> v) { return TeamVector{std::move(v)}; }

PlayerRecord owned(const std::string& id, Position pos, double projection, double percent_owned) {
    auto p = player(id, pos, projection);
    p.percent_owned = percent_owned;
    return p;
}

// Plain arccos of the cosine, clamped for rounding.
double oracle_angle(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return std::acos(std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0)) * 180.0 / std::numbers::pi;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform_int(rng, 0, 3) == 0 ? 0.0 : uniform(rng, 0, 10);
    v[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1))] += 0.5;
    return v;
}

}  // namespace

TEST_CASE("angle examples") {
    CHECK(dissimilarity_angle(vec({1, 2, 3}), vec({1, 2, 3})) == 0.0);
    CHECK_THAT(dissimilarity_angle(vec({1, 0, 0}), vec({0, 4, 2})), WithinAbs(90.0, 1e-12));
    CHECK_THAT(dissimilarity_angle(vec({1, 0, 1}), vec({1, 1, 0})), WithinAbs(60.0, 1e-12));
    CHECK_THROWS_AS(dissimilarity_angle(vec({0, 0}), vec({1, 0})), std::invalid_argument);
    CHECK_THROWS_AS(dissimilarity_angle(vec({1}), vec({1, 0})), std::invalid_argument);
}

TEST_CASE("angles are symmetric, scale invariant and within [0, 90]") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto a = random_vector(rng, 12);
        const auto b = random_vector(rng, 12);
        const double ab = dissimilarity_angle(vec(a), vec(b));
        REQUIRE(ab >= 0.0);
        REQUIRE(ab <= 90.0);
        REQUIRE_THAT(dissimilarity_angle(vec(b), vec(a)), WithinAbs(ab, 1e-9));
        REQUIRE_THAT(ab, WithinAbs(oracle_angle(a, b), 1e-6));
        REQUIRE_THAT(dissimilarity_angle(vec(a), vec(a)), WithinAbs(0.0, 1e-9));
        auto scaled = a;
        const double k = uniform(rng, 1e-3, 1e3);
        for (auto& x : scaled) x *= k;
        REQUIRE_THAT(dissimilarity_angle(vec(scaled), vec(b)), WithinAbs(ab, 1e-9));
    }
}

TEST_CASE("pairings sort by angle, most dissimilar first, ties by id") {
    const std::map<std::string, TeamVector> vs{
        {"A", vec({1, 0, 0})}, {"B", vec({1, std::sqrt(3.0), 0})}, {"C", vec({0, 1, 0})}, {"D", vec({0, 0, 5})}};
    const auto order = rank_pairings("A", vs);
    REQUIRE(order.size() == 3);
    CHECK(order[0].team_id == "C");
    CHECK(order[1].team_id == "D");
    CHECK(order[2].team_id == "B");
    CHECK_THAT(order[2].angle, WithinAbs(60.0, 1e-12));

    const std::map<std::string, TeamVector> same{{"A", vec({1, 1})}, {"C", vec({2, 2})}, {"B", vec({3, 3})}};
    const auto tied = rank_pairings("A", same);
    CHECK(tied[0].team_id == "B");
    CHECK(tied[1].team_id == "C");
    CHECK_THROWS_AS(rank_pairings("Z", same), NotFound);
}

TEST_CASE("pairing order matches brute-force angles") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 200; ++trial) {
        std::map<std::string, TeamVector> vs;
        for (const char* id : {"T1", "T2", "T3", "T4"}) vs.emplace(id, vec(random_vector(rng, 8)));
        std::vector<std::pair<double, std::string>> expected;
        for (const auto& [id, v] : vs) {
            if (id != "T1") expected.emplace_back(oracle_angle(vs.at("T1").values, v.values), id);
        }
        std::sort(expected.begin(), expected.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
        const auto got = rank_pairings("T1", vs);
        for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i].team_id == expected[i].second);
    }
}

TEST_CASE("team vector blocks match hand-computed averages") {
    const auto l = league(rules({{"QB", {Position::QB}, 1}, {"RB", {Position::RB}, 1}, {"FLEX", {Position::RB, Position::WR}, 1}}),
                          {{"T1", {owned("a", Position::QB, 300, 0.9), owned("b", Position::RB, 200, 0.5),
                                   owned("c", Position::RB, 100, 0.3)}},
                           {"T2", {owned("d", Position::QB, 280, 0.8), owned("e", Position::RB, 150, 0.6)}}});
    const auto s = sheet({{"a", 10}, {"b", 8}, {"c", 4}, {"d", 12}, {"e", 6}}, 12);
    const auto v = team_vector(l.team("T1"), l, s).values;
    REQUIRE(v.size() == kTeamVectorSize);
    REQUIRE(kTeamBlockSize == 14);

    auto block = [&](std::size_t b) { return std::vector<double>(v.begin() + b * 14, v.begin() + (b + 1) * 14); };
    // QB ranks: d 1, a 2 of 2. RB ranks: b 1, e 2, c 3 of 3.
    const std::vector<double> qb{1, 0, 0, 0, 0, 0, 1, 1, 10, 0.5, 300, 300, 300, 0.9};
    const std::vector<double> rb{0, 1, 0, 0, 0, 0, 2, 2, 6, (1.0 + 1.0 / 3) / 2, 150, 100, 200, 0.4};
    const std::vector<double> wr{0, 0, 1, 0, 0, 0, 1, 2, 0, 0, 0, 0, 0, 0};
    const std::vector<double> te{0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < 14; ++i) {
        INFO("entry " << i);
        CHECK_THAT(block(0)[i], WithinAbs(qb[i], 1e-12));
        CHECK_THAT(block(1)[i], WithinAbs(rb[i], 1e-12));
        CHECK(block(2)[i] == wr[i]);
        CHECK(block(3)[i] == te[i]);
    }
    CHECK(team_vector(l.team("T1"), l, s).values == v);
    CHECK(team_vectors(l, s).size() == 2);
}

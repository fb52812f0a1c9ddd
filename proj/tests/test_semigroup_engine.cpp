#include <doctest.h>

#include <numeric>
#include <random>

#include "psl2genus/semigroup_engine.hpp"
#include "support/sieve_oracle.hpp"

using namespace psl2genus;
using psl2genus::testing::SieveOracle;

TEST_CASE("apery table for {6,9,20}") {
    auto table = apery_set({6, 9, 20});
    CHECK(table.modulus == 6);
    CHECK(table.least_member ==
          std::vector<int64_t>{0, 49, 20, 9, 40, 29});
    CHECK(frobenius_number(table) == 43);
}

TEST_CASE("apery edge cases") {
    auto unit = apery_set({1});
    CHECK(unit.least_member == std::vector<int64_t>{0});
    CHECK(frobenius_number(unit) == -1);

    CHECK(frobenius_number({2, 3}) == 1);
    CHECK(frobenius_number({20, 9, 6, 9}) == 43);  // order and dupes ignored

    auto coeffs7 = apery_set({42, 56, 63, 72});
    CHECK(*std::max_element(coeffs7.least_member.begin(),
                            coeffs7.least_member.end()) == 607);
    CHECK(frobenius_number(coeffs7) == 565);
}

TEST_CASE("apery input validation") {
    CHECK_THROWS_AS(apery_set({}), Error);
    CHECK_THROWS_AS(apery_set({0, 3}), Error);
    CHECK_THROWS_AS(apery_set({-6, 9}), Error);
    try {
        apery_set({6, 9});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::no_finite_frobenius);
    }
    try {
        apery_set({60'000'000, 60'000'001});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::resource_cap);
    }
}

TEST_CASE("membership against the table") {
    auto table = apery_set({6, 9, 20});
    CHECK(is_member(table, 0));
    CHECK_FALSE(is_member(table, -1));
    CHECK_FALSE(is_member(table, 43));
    CHECK(is_member(table, 44));
    CHECK(is_member(table, 49));
    CHECK_FALSE(is_member(table, 37));
    for (int64_t v = 44; v < 44 + 40; ++v) CHECK(is_member(table, v));
}

TEST_CASE("decompose satisfies the sum contract") {
    auto table = apery_set({6, 9, 20});
    auto parts = decompose(table, 44);
    REQUIRE(parts.has_value());
    int64_t total = 0;
    for (const auto& [g, count] : *parts) {
        CHECK(count > 0);
        total += g * count;
    }
    CHECK(total == 44);
    CHECK_FALSE(decompose(table, 43).has_value());
    CHECK(decompose(table, 0)->empty());

    auto coeffs7 = apery_set({42, 56, 63, 72});
    CHECK(decompose(coeffs7, 210) ==
          std::map<int64_t, int64_t>{{42, 5}});
    CHECK(decompose(coeffs7, 170) ==
          std::map<int64_t, int64_t>{{42, 1}, {56, 1}, {72, 1}});
}

namespace {

std::vector<int64_t> random_generator_set(std::mt19937_64& rng) {
    std::uniform_int_distribution<int64_t> count_dist(3, 8);
    std::uniform_int_distribution<int64_t> value_dist(2, 200);
    for (;;) {
        std::vector<int64_t> gens;
        int64_t n = count_dist(rng);
        for (int64_t i = 0; i < n; ++i) gens.push_back(value_dist(rng));
        int64_t d = 0;
        for (int64_t g : gens) d = std::gcd(d, g);
        if (d == 1) return gens;
    }
}

}  // namespace

TEST_CASE("randomized agreement with the exhaustive sieve") {
    std::mt19937_64 rng(0xC0FFEE);
    for (int trial = 0; trial < 40; ++trial) {
        auto gens = random_generator_set(rng);
        CAPTURE(trial);
        SieveOracle sieve(gens);
        auto table = apery_set(gens);
        CHECK(table.generators == sieve.generators());
        CHECK(table.least_member == sieve.least_member());
        CHECK(frobenius_number(table) == sieve.frobenius());
    }
}

TEST_CASE("Bellman optimality and back-pointer consistency") {
    std::mt19937_64 rng(0xBEEF);
    for (int trial = 0; trial < 20; ++trial) {
        auto table = apery_set(random_generator_set(rng));
        int64_t n0 = table.modulus;
        for (int64_t r = 0; r < n0; ++r) {
            int64_t v = table.least_member[static_cast<size_t>(r)];
            CHECK(v % n0 == r);
            for (int64_t g : table.generators)
                CHECK(table.least_member[static_cast<size_t>((r + g) % n0)] <=
                      v + g);
            if (r != 0) {
                int64_t g = table.back_pointer[static_cast<size_t>(r)];
                CHECK(std::find(table.generators.begin(),
                                table.generators.end(),
                                g) != table.generators.end());
                CHECK(table.least_member[static_cast<size_t>(
                          ((r - g) % n0 + n0) % n0)] == v - g);
            }
        }
    }
}

TEST_CASE("decompose sum contract on random members") {
    std::mt19937_64 rng(0xFEED);
    for (int trial = 0; trial < 15; ++trial) {
        auto gens = random_generator_set(rng);
        auto table = apery_set(gens);
        int64_t frob = frobenius_number(table);
        std::uniform_int_distribution<int64_t> value_dist(0, frob + 400);
        for (int i = 0; i < 50; ++i) {
            int64_t m = value_dist(rng);
            auto parts = decompose(table, m);
            if (!is_member(table, m)) {
                CHECK_FALSE(parts.has_value());
                continue;
            }
            REQUIRE(parts.has_value());
            int64_t total = 0;
            for (const auto& [g, count] : *parts) {
                CHECK(std::find(gens.begin(), gens.end(), g) != gens.end());
                CHECK(count >= 0);
                total += g * count;
            }
            CHECK(total == m);
        }
    }
}

TEST_CASE("adding a generator never removes members") {
    std::mt19937_64 rng(0xACE);
    for (int trial = 0; trial < 15; ++trial) {
        auto gens = random_generator_set(rng);
        auto base = apery_set(gens);
        auto extended = gens;
        extended.push_back(
            std::uniform_int_distribution<int64_t>(2, 200)(rng));
        auto bigger = apery_set(extended);
        int64_t frob = frobenius_number(base);
        for (int64_t v = 0; v <= frob + base.modulus; ++v)
            if (is_member(base, v)) CHECK(is_member(bigger, v));
    }
}

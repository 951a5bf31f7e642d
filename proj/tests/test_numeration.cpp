#include "doctest.h"
#include "npx/gamma.hpp"
#include "npx/numeration.hpp"
#include "oracles.hpp"

using namespace npx;

namespace {

std::set<std::vector<int>> as_digit_sets(std::vector<NumerationRep> const& reps) {
    std::set<std::vector<int>> out;
    for (auto const& r : reps) out.insert(r.digits);
    return out;
}

}  // namespace

TEST_SUITE("numeration") {
    TEST_CASE("worked (2,2) example") {
        auto const reps = all_representations(BigInt(7), 2, 2);
        REQUIRE(reps.size() == 2);
        CHECK(to_string(reps[0], 2) == "100");
        CHECK(to_string(reps[1], 2) == "21");
        CHECK(to_string(greedy_representation(BigInt(7), 2, 2), 2) == "100");
    }

    TEST_CASE("exhaustive search agrees with brute force") {
        for (auto [n, p] : {std::pair{2, 2}, {2, 3}, {3, 2}, {2, 1}, {4, 1}}) {
            for (std::uint64_t value = 1; value <= 60; ++value) {
                auto const reps = all_representations(BigInt(value), n, p);
                CHECK(as_digit_sets(reps) == oracle::brute_representations(value, n, p));
                CHECK(std::is_sorted(reps.rbegin(), reps.rend()));
            }
        }
    }

    TEST_CASE("greedy representation") {
        for (auto [n, p] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 1}, {5, 12}}) {
            auto const base = lengths(n, p, 40);
            for (std::uint64_t value = 1; value <= 500; ++value) {
                auto const rep = greedy_representation(BigInt(value), n, p);
                CHECK(rep.value(base) == value);
                CHECK(rep.digits.front() > 0);
                for (int d : rep.digits) CHECK((d >= 0 && d <= p));
            }
        }
    }

    TEST_CASE("digit retention") {
        for (auto [n, p] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
            auto const report = check_digit_retention(n, p, 200);
            CHECK(report.passed);
            CHECK(report.checked > 0);
        }
    }

    TEST_CASE("length law on random realisations") {
        for (auto [n, p] : {std::pair{2, 2}, {3, 2}, {3, 1}}) {
            for (auto const& rep : all_representations(BigInt(30), n, p)) {
                auto const report = verify_length_law(n, p, rep, 5, 3);
                CHECK(report.passed);
                CHECK(report.expected_length == 30);
            }
        }
        CHECK_THROWS_AS((void)verify_length_law(2, 2, parse_representation("31", 2), 1), DomainError);
    }

    TEST_CASE("text form") {
        CHECK(to_string(parse_representation("1,10,0", 12), 12) == "1,10,0");
        CHECK(parse_representation("1,10,0", 12).digits == std::vector<int>{1, 10, 0});
        CHECK(parse_representation("201", 2).digits == std::vector<int>{2, 0, 1});
        CHECK(parse_representation("201", 2).shifted().digits == std::vector<int>{2, 0, 1, 0});
    }
}

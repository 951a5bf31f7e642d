#include <algorithm>

#include "doctest.h"
#include "npx/gamma.hpp"
#include "npx/mixing.hpp"
#include "oracles.hpp"

using namespace npx;

TEST_SUITE("mixing") {
    TEST_CASE("embedding of bba in psi_{2,2}") {
        auto const s = noble_pisa(2, 2);
        LegalityOracle oracle(s);
        auto const e = find_embedding(oracle, w("bba"));
        CHECK(e.q == 0);
        CHECK(e.inflation_word == w("aabbaaa"));
        CHECK(e.h + w("bba") + e.y == e.inflation_word);
        CHECK(s.power_set(2, 1).contains(e.inflation_word));
    }

    TEST_CASE("witnesses certify and re-check independently") {
        for (auto [n, p, t] : {std::tuple{2, 2, "bba"}, {3, 2, "cab"}, {2, 3, "aaab"}, {3, 1, "bac"}}) {
            auto const s = noble_pisa(n, p);
            LegalityOracle oracle(s);
            oracle::TopDownLegality reference(s);
            Word const word = parse_word(t, n);
            auto const e = find_embedding(oracle, word);
            auto const window = mixing_window(n, p);
            std::size_t const threshold = e.y.size() + static_cast<std::size_t>(oracle::length_sequence(n, p, e.q + 1)[e.q]);
            for (std::size_t m = threshold; m <= threshold + 20; ++m) {
                auto const wit = semi_mixing_witness(oracle, word, m, &e);
                CHECK(wit.threshold == threshold);
                CHECK(wit.certified);
                CHECK(wit.v.size() == m);
                CHECK(std::find(window.begin(), window.end(), wit.w) != window.end());
                CHECK_MESSAGE(reference.legal(word + wit.v + wit.w), t << " m=" << m);
            }
            if (threshold > 0) CHECK_THROWS_AS((void)semi_mixing_witness(oracle, word, threshold - 1, &e), DomainError);
        }
    }

    TEST_CASE("alternative m = 4 answer for bba") {
        oracle::TopDownLegality reference(noble_pisa(2, 2));
        CHECK(reference.legal(w("bba") + w("aaaa") + w("baa")));
    }

    TEST_CASE("gap spectrum agrees with language filtering") {
        for (auto [n, p] : {std::pair{2, 2}, {3, 1}}) {
            auto const s = noble_pisa(n, p);
            LegalityOracle oracle(s);
            auto const sets = legal_words_upto(s, 10);
            auto const two = legal_words(s, 2).words;
            for (auto const& left : two)
                for (auto const& right : two) {
                    auto const spectrum = gap_spectrum(oracle, left, right, 6);
                    for (std::size_t m = 0; m <= 6; ++m) {
                        bool found = false;
                        for (auto const& x : sets[left.size() + m + right.size() - 1])
                            found = found || (x.starts_with(left) && x.ends_with(right));
                        bool const listed = std::count(spectrum.present.begin(), spectrum.present.end(), m) == 1;
                        CHECK(found == listed);
                        CHECK(listed != (std::count(spectrum.absent.begin(), spectrum.absent.end(), m) == 1));
                    }
                }
        }
    }

    TEST_CASE("non-mixing shows as absent gaps") {
        LegalityOracle oracle(noble_pisa(2, 2));
        auto const spectrum = gap_spectrum(oracle, w("bb"), w("bb"), 6);
        CHECK_FALSE(spectrum.absent.empty());
    }
}

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "npx/decomposition.hpp"
#include "npx/gamma.hpp"
#include "oracles.hpp"

using namespace npx;

namespace {

Decomposition dec(std::vector<char const*> pieces, char const* root) {
    Decomposition d;
    for (auto const* piece : pieces) d.cutting.push_back(w(piece));
    d.root = w(root);
    return d;
}

// Every word over the alphabet of length l, in length-lexicographic order.
std::vector<Word> all_words(int n, std::size_t l) {
    std::vector<Word> out;
    std::vector<Letter> letters(l, 1);
    while (true) {
        out.emplace_back(letters);
        std::size_t i = l;
        while (i > 0 && ++letters[i - 1] > n) letters[--i] = 1;
        if (i == 0) break;
    }
    return out;
}

}  // namespace

TEST_SUITE("decomposition") {
    TEST_CASE("legality oracle equals language generation on all short words") {
        for (auto [n, p] : {std::pair{2, 2}, {3, 1}, {2, 1}, {3, 2}}) {
            auto const s = noble_pisa(n, p);
            LegalityOracle oracle(s);
            auto const sets = legal_words_upto(s, 9);
            for (std::size_t l = 1; l <= 9; ++l) {
                if (std::pow(n, l) > 30000) break;
                for (auto const& u : all_words(n, l)) CHECK(oracle.is_legal(u) == sets[l - 1].contains(u));
            }
        }
    }

    TEST_CASE("legality oracle agrees with the top-down checker on longer words") {
        std::mt19937_64 rng(7);
        for (auto [n, p] : {std::pair{2, 2}, {3, 1}, {3, 3}}) {
            auto const s = noble_pisa(n, p);
            LegalityOracle oracle(s);
            oracle::TopDownLegality reference(s);
            for (int trial = 0; trial < 150; ++trial) {
                std::size_t const l = 10 + rng() % 25;
                Word u = oracle::random_legal_word(s, l, rng);
                if (trial % 2) {
                    // perturb one letter; the result may or may not be legal
                    std::vector<Letter> letters(u.codes().begin(), u.codes().end());
                    letters[rng() % l] = static_cast<Letter>(1 + rng() % n);
                    u = Word(letters);
                }
                CHECK_MESSAGE(oracle.is_legal(u) == reference.legal(u), to_string(u, n));
            }
        }
    }

    TEST_CASE("psi_{3,1} level-2 examples") {
        LegalityOracle oracle(noble_pisa(3, 1));
        Decomposer d(oracle, 2);

        auto const single = d.enumerate(w("abaccaba"));
        CHECK(single.items == std::vector<Decomposition>{dec({"abac", "caba"}, "aa")});
        CHECK(d.is_recognisable(w("abaccaba")).recognisable);

        // bb: unique cutting [b,b]; b ends realisations of all three letters and starts
        // realisations of all three, and all nine two-letter roots are legal.
        auto const bb = d.enumerate(w("bb"));
        CHECK(bb.cuttings() == std::vector<std::vector<Word>>{{w("b"), w("b")}});
        CHECK(bb.items.size() == 9);
        CHECK(bb.roots() == std::vector<Word>{w("aa"), w("ab"), w("ac"), w("ba"), w("bb"), w("bc"), w("ca"), w("cb"), w("cc")});
        auto const roots = bb.roots();
        for (char const* root : {"bb", "cc", "ba", "ca"}) CHECK(std::count(roots.begin(), roots.end(), w(root)) == 1);

        auto const cac = d.enumerate(w("cac"));
        CHECK(cac.cuttings().size() == 2);
        CHECK(cac.roots() == std::vector<Word>{w("aa")});

        auto const long_word = d.enumerate(w("babaccabaa"));
        CHECK(long_word.items.size() == 9);
        CHECK(long_word.cuttings().size() == 1);
        CHECK(long_word.central_roots() == std::vector<Word>{w("aa")});
        CHECK(d.is_recognisable(w("babaccabaa")).recognisable);
        CHECK_FALSE(d.is_recognisable(w("bb")).recognisable);
    }

    TEST_CASE("psi_{2,2} worked recognisable words") {
        LegalityOracle oracle(noble_pisa(2, 2));
        Decomposer level1(oracle, 1);
        CHECK(level1.enumerate(w("aabbaa")).items == std::vector<Decomposition>{dec({"aab", "baa"}, "aa")});
        Decomposer level2(oracle, 2);
        CHECK(level2.enumerate(w("aabbaaaaaabbaa")).items == std::vector<Decomposition>{dec({"aabbaaa", "aaabbaa"}, "aa")});
    }

    TEST_CASE("illegal and empty words are rejected") {
        LegalityOracle oracle(noble_pisa(2, 2));
        Decomposer d(oracle, 1);
        CHECK_THROWS_AS((void)d.enumerate(w("bbb")), DomainError);
        CHECK_THROWS_AS((void)d.enumerate(Word{}), DomainError);
    }

    TEST_CASE("enumeration matches the naive oracle") {
        std::mt19937_64 rng(20240611);
        for (auto [n, p] : {std::pair{2, 2}, {3, 1}, {2, 3}}) {
            auto const s = noble_pisa(n, p);
            LegalityOracle oracle(s);
            oracle::TopDownLegality reference(s);
            for (std::size_t k = 1; k <= 2; ++k) {
                Decomposer d(oracle, k);
                for (int trial = 0; trial < 40; ++trial) {
                    Word const u = oracle::random_legal_word(s, 1 + rng() % 10, rng);
                    auto const expected = oracle::naive_decompositions(s, k, u, reference);
                    CHECK_MESSAGE(d.enumerate(u).items == expected, to_string(u, n) << " at level " << k);
                }
            }
        }
    }

    TEST_CASE("recognisability theorem on small parameters") {
        for (auto [n, p] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
            auto const report = verify_recognisability_theorem(n, p, 2);
            CHECK_FALSE(report.skipped);
            CHECK(report.all_passed());
            REQUIRE(report.levels.size() == 2);
            for (auto const& level : report.levels) CHECK(level.decompositions == 1);
            for (std::size_t k = 1; k <= 2; ++k) {
                auto const pre_suf = verify_not_pre_suf(n, p, k);
                CHECK(pre_suf.detail.find("clause 2 pass") != std::string::npos);
                // for n >= 3 every image of a middle letter has length p + 1 = L_1
                CHECK(pre_suf.passed == (n == 2 || k > 1));
                CHECK(verify_no_straddling(n, p, k).passed);
            }
        }
        CHECK(verify_not_pre_suf(3, 2, 1).detail.starts_with("clause 1 fail: L_k = 3 <= longest other inflation word 3"));
        auto const skipped = verify_recognisability_theorem(2, 1, 2);
        CHECK(skipped.skipped);
        CHECK(skipped.skip_reason == "requires p ≥ 2");
    }

    TEST_CASE("verdict reasons") {
        DecompositionSet none{w("ab"), 1, {}};
        CHECK(Decomposer::judge(none).reason == "no level-1 decomposition");
        DecompositionSet two_cuts{w("aa"), 1, {dec({"a", "a"}, "aa"), dec({"aa"}, "a")}};
        CHECK_FALSE(Decomposer::judge(two_cuts).recognisable);
        CHECK(Decomposer::judge(two_cuts).reason == "cutting not unique (2 cuttings)");
        CHECK(to_string(dec({"abac", "caba"}, "aa"), 3) == "([abac,caba], aa)");
    }
}

#include <cmath>

#include "doctest.h"
#include "npx/spectral.hpp"
#include "npx/substitution.hpp"

using namespace npx;

namespace {

// Independent root: plain long double bisection on x^n - p(x + ... + x^{n-1}) - 1.
long double bisect_lambda(int n, int p) {
    auto chi = [&](long double x) {
        long double sum = 0, power = x;
        for (int r = 1; r < n; ++r, power *= x) sum += power;
        return power - p * sum - 1;
    };
    long double lo = p, hi = p + 1;
    for (int i = 0; i < 200; ++i) {
        long double const mid = (lo + hi) / 2;
        (chi(mid) < 0 ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

TEST_SUITE("spectral") {
    TEST_CASE("characteristic polynomial") {
        auto const chi = char_poly(3, 2);
        CHECK(chi.coefficients == std::vector<BigInt>{-1, -2, -2, 1});
        CHECK(char_poly_of(noble_pisa(3, 2).substitution_matrix()).coefficients == chi.coefficients);
        for (int n = 2; n <= 6; ++n)
            for (int p = 1; p <= 5; ++p)
                CHECK(char_poly_of(noble_pisa(n, p).substitution_matrix()).coefficients == char_poly(n, p).coefficients);
        CHECK(char_poly(2, 2).to_string() == "x^2 - 2x - 1");
    }

    TEST_CASE("golden ratio and silver mean") {
        CHECK(pf_eigenvalue(2, 1).lambda == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-13));
        CHECK(std::abs(pf_eigenvalue(2, 1).lambda - (1 + std::sqrt(5.0)) / 2) < 1e-12);
        CHECK(std::abs(pf_eigenvalue(2, 2).lambda - (1 + std::sqrt(2.0))) < 1e-12);
    }

    TEST_CASE("eigenvalue bracket, enclosure and independent bisection") {
        for (int n = 2; n <= 5; ++n) {
            double previous = 0;
            for (int p = 1; p <= 50; ++p) {
                auto const r = pf_eigenvalue(n, p);
                CHECK(r.lambda > p);
                CHECK(r.lambda < p + 1);
                CHECK(r.enclosure.lower <= r.lambda);
                CHECK(r.lambda <= r.enclosure.upper);
                CHECK(r.enclosure.upper - r.enclosure.lower < 1e-11);
                CHECK(std::abs(r.lambda - static_cast<double>(bisect_lambda(n, p))) < 1e-10 * (p + 1));
                CHECK(r.lambda > previous);
                previous = r.lambda;
            }
        }
    }

    TEST_CASE("right eigenvector") {
        for (auto [n, p] : {std::pair{2, 2}, {3, 1}, {4, 7}}) {
            double const lambda = pf_eigenvalue(n, p).lambda;
            auto const r = pf_eigenvector(n, p, lambda);
            auto const m = noble_pisa(n, p).substitution_matrix();
            double sum = 0;
            for (int i = 0; i < n; ++i) {
                CHECK(r[i] > 0);
                sum += r[i];
                double row = 0;
                for (int j = 0; j < n; ++j) row += static_cast<double>(m[i][j]) * r[j];
                CHECK(std::abs(row - lambda * r[i]) < 1e-10 * lambda);
            }
            CHECK(std::abs(sum - 1) < 1e-12);
        }
    }

    TEST_CASE("Pisot, unimodular and Brauer on the grid") {
        for (int n = 2; n <= 5; ++n)
            for (int p = 1; p <= 50; ++p) {
                auto const pisot = is_pisot(n, p);
                CHECK(pisot.status == PisotStatus::pisot);
                CHECK(pisot.other_roots.size() == static_cast<std::size_t>(n - 1));
                CHECK(std::abs(pisot.modulus_product - 1) < 1e-8);
                CHECK(is_unimodular(n, p));
                CHECK(brauer_irreducible(n, p));
            }
    }

    TEST_CASE("Brauer hypothesis and determinants") {
        CHECK(brauer_hypothesis({2, 2, 1}));
        CHECK(brauer_hypothesis({1, 1, 1}));
        CHECK_FALSE(brauer_hypothesis({1, 2, 1}));
        CHECK_FALSE(brauer_hypothesis({2, 1, 0}));
        CHECK(determinant(IntMatrix{{2, 1}, {1, 0}}) == -1);
        CHECK(determinant(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}}) == -3);
        CHECK_FALSE(is_unimodular(IntMatrix{{2, 0}, {0, 1}}));
    }

    TEST_CASE("power iteration matches the certified value") {
        auto const general = pf_general(noble_pisa(3, 2).substitution_matrix());
        CHECK_FALSE(general.certified);
        CHECK(std::abs(general.lambda - pf_eigenvalue(3, 2).lambda) < 1e-9);
    }

    TEST_CASE("spectral bundle") {
        auto const d = spectral_data(2, 2);
        CHECK(d.unimodular);
        CHECK(d.brauer);
        CHECK(d.pisot.status == PisotStatus::pisot);
        CHECK(d.right_eigenvector.size() == 2);
    }
}

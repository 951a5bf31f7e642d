#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>
#include <vector>

#include "npx/substitution.hpp"

namespace npx {

using BigInt = boost::multiprecision::cpp_int;

/// Monic integer polynomial, constant coefficient first.
struct CharPoly {
    std::vector<BigInt> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
    BigInt at(BigInt const& x) const;
    /// Value at num / 2^shift, scaled by 2^(shift*degree) so it stays integral.
    BigInt scaled_at_dyadic(BigInt const& num, unsigned shift) const;
    std::complex<long double> at(std::complex<long double> z) const;
    std::string to_string() const;
};

/// x^n - p(x + ... + x^{n-1}) - 1.
CharPoly char_poly(int n, int p);

/// Faddeev-LeVerrier over the integers (every division is exact).
CharPoly char_poly_of(IntMatrix const& m);

/// Fraction-free Bareiss elimination.
BigInt determinant(IntMatrix const& m);

struct Enclosure {
    double lower = 0;
    double upper = 0;
};

struct EigenvalueResult {
    double lambda = 0;
    Enclosure enclosure;
    double residual = 0;  ///< |chi(lambda)|
};

/// Unique root of chi_{n,p} in (p, p+1), by bisection with exact signs at
/// dyadic midpoints. Throws ConstructionError if the bracket signs are wrong.
EigenvalueResult pf_eigenvalue(int n, int p, double tol = 1e-12);

/// R_i = lambda^{n-i} / sum_r lambda^r, checked against M R = lambda R.
std::vector<double> pf_eigenvector(int n, int p, double lambda, double tol = 1e-12);

bool is_unimodular(IntMatrix const& m);
bool is_unimodular(int n, int p);

/// Brauer's sufficient condition on x^n - a_1 x^{n-1} - ... - a_n:
/// a_1 >= a_2 >= ... >= a_n >= 1. Only the hypothesis is checked.
bool brauer_hypothesis(std::vector<std::int64_t> const& a);
bool brauer_irreducible(int n, int p);

enum class PisotStatus { pisot, not_pisot, indeterminate };
std::string to_string(PisotStatus status);

struct RootReport {
    std::complex<double> value;
    double modulus = 0;
    double residual = 0;
};

struct PisotResult {
    PisotStatus status = PisotStatus::indeterminate;
    std::vector<RootReport> other_roots;
    double modulus_product = 0;  ///< lambda * prod |z_i|, compare with |chi(0)|
};

/// Deflates chi by (x - lambda) and locates the remaining roots with
/// Durand-Kerner (radius 0.9 start, 10^4 iteration cap).
PisotResult is_pisot(int n, int p, double tol = 1e-12);

struct SpectralData {
    int n = 0;
    int p = 0;
    EigenvalueResult eigenvalue;
    std::vector<double> right_eigenvector;
    PisotResult pisot;
    bool unimodular = false;
    bool brauer = false;
};

SpectralData spectral_data(int n, int p, double tol = 1e-12);

struct GeneralPerron {
    double lambda = 0;
    std::vector<double> right_eigenvector;
    bool certified = false;  ///< always false: power iteration carries no enclosure
    int iterations = 0;
};

/// Power iteration with Rayleigh-quotient stopping, for arbitrary
/// primitive nonnegative matrices (user-supplied substitutions).
GeneralPerron pf_general(IntMatrix const& m, double tol = 1e-12, int max_iterations = 100000);

}  // namespace npx

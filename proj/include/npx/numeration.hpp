#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "npx/spectral.hpp"
#include "npx/substitution.hpp"

namespace npx {

/// Digits eps_d ... eps_0 over the base L_0, L_1, ... of psi_{n,p} inflation
/// lengths, most significant first. eps_d >= 1 for nonzero values.
struct NumerationRep {
    std::vector<int> digits;

    std::size_t top_index() const { return digits.size() - 1; }
    /// Digit attached to L_q.
    int digit(std::size_t q) const { return digits[digits.size() - 1 - q]; }
    BigInt value(std::vector<BigInt> const& base) const;
    /// Representation of psi(u) lengths: every digit moves up one place.
    NumerationRep shifted() const;

    friend bool operator==(NumerationRep const&, NumerationRep const&) = default;
    friend auto operator<=>(NumerationRep const& a, NumerationRep const& b) {
        if (a.digits.size() != b.digits.size()) return a.digits.size() <=> b.digits.size();
        return a.digits <=> b.digits;
    }
};

/// "21" style for p <= 9, "12,0,3" style when digits can exceed 9.
std::string to_string(NumerationRep const& rep, int p);
NumerationRep parse_representation(std::string const& text, int p);

/// Every representation of N with digits in [0, p] and at most d_max + 1
/// digits, greatest first.
std::vector<NumerationRep> all_representations(BigInt const& n_value, int n, int p, std::size_t d_max);
std::vector<NumerationRep> all_representations(BigInt const& n_value, int n, int p);

/// Largest L_d <= N gets digit floor(N / L_d), then recurse on the remainder.
NumerationRep greedy_representation(BigInt const& n_value, int n, int p);

struct RetentionReport {
    bool passed = true;
    std::uint64_t checked = 0;
    std::string counterexample;
};

/// For every m <= N_max and q with m > L_q, some representation of m has at
/// least q + 1 digits.
RetentionReport check_digit_retention(int n, int p, std::uint64_t n_max);

struct LengthLawReport {
    bool passed = true;
    std::size_t samples = 0;
    BigInt expected_length = 0;
    BigInt expected_shifted_length = 0;
    std::string counterexample;
};

/// Samples u from (psi^d(a))^{eps_d} ... (psi^0(a))^{eps_0}, checks |u| equals
/// the represented value and that every sampled image in psi(u) has the length
/// of the shifted representation.
LengthLawReport verify_length_law(int n, int p, NumerationRep const& rep, std::size_t samples,
                                  std::uint64_t seed = 1);

}  // namespace npx

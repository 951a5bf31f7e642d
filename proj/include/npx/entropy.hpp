#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "npx/spectral.hpp"
#include "npx/substitution.hpp"

namespace npx {

struct Bounds {
    double lower = 0;
    double upper = 0;
};

/// (q_m)_i = ln |psi^m(alpha_i)|, from exact cardinalities.
std::vector<double> q_vector(RandomSubstitution const& s, std::size_t m, Limits const& limits = {});

struct PerronData {
    double lambda = 0;
    std::vector<double> right_eigenvector;
    bool certified = false;
};

/// Certified data for noble Pisa substitutions, power iteration otherwise.
PerronData perron_data(RandomSubstitution const& s, double tol = 1e-12);

/// q_m^T R / lambda^m <= h_top <= q_m^T R / (lambda^m - 1). Requires m >= 1.
Bounds bounds_general(RandomSubstitution const& s, std::size_t m, Limits const& limits = {});
Bounds bounds_general(std::vector<double> const& q, PerronData const& perron, std::size_t m);

/// Closed forms in lambda_{n,p}: ln(p+1)(lambda^{n-1}-1)/(lambda^n-1) and that
/// times lambda/(lambda-1).
Bounds bounds_lambda(int n, int p, double tol = 1e-12);
Bounds bounds_lambda(int n, int p, double lambda, double /*unused*/);

/// Closed forms in n and p only; needs p > 1.
Bounds bounds_np(int n, int p);

struct ComplexityRow {
    std::size_t length = 0;
    std::uint64_t count = 0;
    double log_ratio = 0;  ///< ln p(l) / l
};

std::vector<ComplexityRow> complexity(RandomSubstitution const& s, std::size_t max_length, Limits const& limits = {});

struct SetConditionReport {
    Word u, v;              ///< identical-set witnesses, psi(u) != psi(v)
    bool identical_violated = false;
    Word separating_image;  ///< in psi(v) but not psi(u)
    Word u_prime, v_prime;  ///< disjoint-set witnesses
    bool disjoint_violated = false;
    Word common_image;      ///< smallest element of psi(u') and psi(v')
};

SetConditionReport verify_set_conditions(int n, int p, Limits const& limits = {});

struct Figure2Row {
    int p = 0;
    double lower_eq9 = 0, upper_eq9 = 0;
    double lower_eq8 = 0, upper_eq8 = 0;
};

std::vector<Figure2Row> figure2_rows(int n, int p_min, int p_max);
/// RFC 4180, header "p,lower_eq9,upper_eq9,lower_eq8,upper_eq8".
std::string figure2_csv(std::vector<Figure2Row> const& rows);
/// 800x500 line chart of the four series.
std::string figure2_svg(std::vector<Figure2Row> const& rows, int n);

struct EntropyRow {
    std::size_t m = 0;
    std::vector<double> q;
    Bounds bounds;
};

struct EntropyReport {
    int n = 0, p = 0;
    PerronData perron;
    std::vector<EntropyRow> rows;
    Bounds closed_lambda;
    bool has_closed_np = false;
    Bounds closed_np;
};

EntropyReport entropy_report(int n, int p, std::size_t m_max, Limits const& limits = {});

}  // namespace npx

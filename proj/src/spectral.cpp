#include "npx/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace npx {

namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

BigMatrix to_big(IntMatrix const& m) {
    BigMatrix out(m.size(), std::vector<BigInt>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = m[i][j];
    return out;
}

double to_double_dyadic(BigInt const& num, unsigned shift) {
    return std::ldexp(num.convert_to<double>(), -static_cast<int>(shift));
}

}  // namespace

BigInt CharPoly::at(BigInt const& x) const {
    BigInt acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

BigInt CharPoly::scaled_at_dyadic(BigInt const& num, unsigned shift) const {
    // sum c_i num^i 2^{shift (d - i)} via Horner with the denominator folded in.
    BigInt acc = 0;
    BigInt scale = 1;
    int const d = degree();
    for (int i = d; i >= 0; --i) {
        acc = acc * num + coefficients[static_cast<std::size_t>(i)] * scale;
        scale <<= shift;
    }
    return acc;
}

std::complex<long double> CharPoly::at(std::complex<long double> z) const {
    std::complex<long double> acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
        acc = acc * z + static_cast<long double>(it->convert_to<long double>());
    return acc;
}

std::string CharPoly::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        BigInt c = coefficients[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        bool negative = c < 0;
        if (negative) c = -c;
        out << (first ? (negative ? "-" : "") : (negative ? " - " : " + "));
        if (c != 1 || i == 0) out << c;
        if (i >= 1) out << 'x';
        if (i >= 2) out << '^' << i;
        first = false;
    }
    return out.str();
}

CharPoly char_poly(int n, int p) {
    if (n < 2 || p < 1) throw DomainError("char_poly needs n >= 2 and p >= 1");
    CharPoly chi;
    chi.coefficients.assign(static_cast<std::size_t>(n) + 1, BigInt(-p));
    chi.coefficients.front() = -1;
    chi.coefficients.back() = 1;
    return chi;
}

CharPoly char_poly_of(IntMatrix const& m) {
    std::size_t const n = m.size();
    BigMatrix const a = to_big(m);
    CharPoly chi;
    chi.coefficients.assign(n + 1, 0);
    chi.coefficients[n] = 1;
    BigMatrix mk(n, std::vector<BigInt>(n, 0));
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I
        BigMatrix next(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (a[i][l] != 0)
                    for (std::size_t j = 0; j < n; ++j) next[i][j] += a[i][l] * mk[l][j];
        for (std::size_t i = 0; i < n; ++i) next[i][i] += chi.coefficients[n - k + 1];
        mk = std::move(next);
        BigInt trace = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * mk[l][i];
        chi.coefficients[n - k] = -trace / static_cast<long>(k);
    }
    return chi;
}

BigInt determinant(IntMatrix const& m) {
    std::size_t const n = m.size();
    if (n == 0) return 1;
    BigMatrix a = to_big(m);
    BigInt previous = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / previous;
        }
        previous = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

EigenvalueResult pf_eigenvalue(int n, int p, double tol) {
    if (!(tol > 0)) throw DomainError("tolerance must be positive");
    CharPoly const chi = char_poly(n, p);
    if (chi.at(BigInt(p)) >= 0 || chi.at(BigInt(p + 1)) != p) {
        throw ConstructionError("bracket sanity failure: chi(p) must be negative and chi(p+1) = p");
    }
    // Endpoints are lo/2^shift and (lo+1)/2^shift.
    BigInt lo = p;
    unsigned shift = 0;
    while (std::ldexp(1.0, -static_cast<int>(shift)) > tol) {
        lo <<= 1;
        ++shift;
        BigInt const mid = lo + 1;
        if (chi.scaled_at_dyadic(mid, shift) < 0) lo = mid;
    }
    EigenvalueResult result;
    result.enclosure = {to_double_dyadic(lo, shift), to_double_dyadic(lo + 1, shift)};
    result.lambda = 0.5 * (result.enclosure.lower + result.enclosure.upper);
    result.residual = static_cast<double>(std::abs(chi.at(std::complex<long double>(result.lambda))));
    return result;
}

std::vector<double> pf_eigenvector(int n, int p, double lambda, double tol) {
    std::vector<double> r(static_cast<std::size_t>(n));
    double total = 0;
    for (int i = 0; i < n; ++i) {
        r[static_cast<std::size_t>(i)] = std::pow(lambda, n - 1 - i);
        total += r[static_cast<std::size_t>(i)];
    }
    for (auto& x : r) x /= total;
    auto const m = deterministic_noble_pisa(n, p).substitution_matrix();
    double worst = 0;
    for (int i = 0; i < n; ++i) {
        double row = 0;
        for (int j = 0; j < n; ++j) row += static_cast<double>(m[i][j]) * r[static_cast<std::size_t>(j)];
        worst = std::max(worst, std::abs(row - lambda * r[static_cast<std::size_t>(i)]));
    }
    // Residual scales with the matrix entries (row sums up to (n-1)p + 1).
    double const allowed = 10 * tol * std::max(1.0, lambda);
    if (worst > allowed) {
        std::ostringstream msg;
        msg << "eigenvector residual " << worst << " exceeds " << allowed;
        throw ConstructionError(msg.str());
    }
    return r;
}

bool is_unimodular(IntMatrix const& m) {
    BigInt const det = determinant(m);
    return det == 1 || det == -1;
}

bool is_unimodular(int n, int p) { return is_unimodular(deterministic_noble_pisa(n, p).substitution_matrix()); }

bool brauer_hypothesis(std::vector<std::int64_t> const& a) {
    if (a.empty()) return false;
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] < a[i + 1]) return false;
    return a.back() >= 1;
}

bool brauer_irreducible(int n, int p) {
    CharPoly const chi = char_poly(n, p);
    std::vector<std::int64_t> a;
    for (int i = n - 1; i >= 0; --i) a.push_back(-chi.coefficients[static_cast<std::size_t>(i)].convert_to<std::int64_t>());
    return brauer_hypothesis(a);
}

std::string to_string(PisotStatus status) {
    switch (status) {
        case PisotStatus::pisot: return "pisot";
        case PisotStatus::not_pisot: return "not_pisot";
        case PisotStatus::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

namespace {

using Complex = std::complex<long double>;

std::vector<Complex> durand_kerner(std::vector<long double> const& monic_low_first, int max_iterations) {
    int const degree = static_cast<int>(monic_low_first.size()) - 1;
    auto eval = [&](Complex z) {
        Complex acc = 0;
        for (auto it = monic_low_first.rbegin(); it != monic_low_first.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    std::vector<Complex> roots(static_cast<std::size_t>(degree));
    for (int k = 0; k < degree; ++k) {
        long double const angle = 2 * std::numbers::pi_v<long double> * k / degree + 0.4L;
        roots[static_cast<std::size_t>(k)] = std::polar(0.9L, angle);
    }
    for (int iter = 0; iter < max_iterations; ++iter) {
        long double biggest = 0;
        for (int k = 0; k < degree; ++k) {
            Complex denom = 1;
            for (int j = 0; j < degree; ++j)
                if (j != k) denom *= roots[static_cast<std::size_t>(k)] - roots[static_cast<std::size_t>(j)];
            Complex const step = eval(roots[static_cast<std::size_t>(k)]) / denom;
            roots[static_cast<std::size_t>(k)] -= step;
            biggest = std::max(biggest, std::abs(step));
        }
        if (biggest < 1e-17L) return roots;
    }
    throw ConstructionError("Durand-Kerner did not converge within the iteration cap");
}

}  // namespace

PisotResult is_pisot(int n, int p, double tol) {
    CharPoly const chi = char_poly(n, p);
    EigenvalueResult const eig = pf_eigenvalue(n, p, tol);
    // Newton polish of lambda in long double before deflating.
    Complex lambda = eig.lambda;
    for (int i = 0; i < 5; ++i) {
        Complex deriv = 0;
        for (int k = n; k >= 1; --k)
            deriv = deriv * lambda + static_cast<long double>(k) * chi.coefficients[static_cast<std::size_t>(k)].convert_to<long double>();
        lambda -= chi.at(lambda) / deriv;
    }
    long double const lam = lambda.real();
    // Synthetic division by (x - lambda).
    std::vector<long double> quotient(static_cast<std::size_t>(n));
    long double carry = 0;
    for (int k = n; k >= 1; --k) {
        carry = carry * lam + chi.coefficients[static_cast<std::size_t>(k)].convert_to<long double>();
        quotient[static_cast<std::size_t>(k - 1)] = carry;
    }
    std::vector<Complex> roots;
    if (n - 1 == 1) {
        roots.push_back(-quotient[0] / quotient[1]);
    } else {
        roots = durand_kerner(quotient, 10000);
    }
    PisotResult result;
    long double product = lam;
    bool all_inside = true;
    bool any_outside = false;
    bool residuals_ok = true;
    for (auto z : roots) {
        // Polish on the undeflated polynomial.
        for (int i = 0; i < 3; ++i) {
            Complex deriv = 0;
            for (int k = n; k >= 1; --k)
                deriv = deriv * z + static_cast<long double>(k) * chi.coefficients[static_cast<std::size_t>(k)].convert_to<long double>();
            if (std::abs(deriv) > 0) z -= chi.at(z) / deriv;
        }
        RootReport report;
        report.value = std::complex<double>(static_cast<double>(z.real()), static_cast<double>(z.imag()));
        report.modulus = static_cast<double>(std::abs(z));
        report.residual = static_cast<double>(std::abs(chi.at(z)));
        product *= std::abs(z);
        all_inside = all_inside && report.modulus < 1 - 1e-9;
        any_outside = any_outside || report.modulus > 1 + 1e-9;
        residuals_ok = residuals_ok && report.residual < 1e-10;
        result.other_roots.push_back(report);
    }
    std::sort(result.other_roots.begin(), result.other_roots.end(), [](RootReport const& a, RootReport const& b) {
        if (a.modulus != b.modulus) return a.modulus > b.modulus;
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    result.modulus_product = static_cast<double>(product);
    if (residuals_ok && all_inside) {
        result.status = PisotStatus::pisot;
    } else if (residuals_ok && any_outside) {
        result.status = PisotStatus::not_pisot;
    } else {
        result.status = PisotStatus::indeterminate;
    }
    return result;
}

SpectralData spectral_data(int n, int p, double tol) {
    SpectralData data;
    data.n = n;
    data.p = p;
    data.eigenvalue = pf_eigenvalue(n, p, tol);
    data.right_eigenvector = pf_eigenvector(n, p, data.eigenvalue.lambda, tol);
    data.pisot = is_pisot(n, p, tol);
    data.unimodular = is_unimodular(n, p);
    data.brauer = brauer_irreducible(n, p);
    return data;
}

GeneralPerron pf_general(IntMatrix const& m, double tol, int max_iterations) {
    std::size_t const n = m.size();
    GeneralPerron out;
    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    double previous = 0;
    for (int iter = 1; iter <= max_iterations; ++iter) {
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) next[i] += static_cast<double>(m[i][j]) * v[j];
        double dot_vv = 0, dot_vn = 0, total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            dot_vv += v[i] * v[i];
            dot_vn += v[i] * next[i];
            total += next[i];
        }
        double const rayleigh = dot_vn / dot_vv;
        if (total <= 0) throw DomainError("power iteration collapsed: matrix is not primitive");
        for (auto& x : next) x /= total;
        v = std::move(next);
        out.iterations = iter;
        if (iter > 1 && std::abs(rayleigh - previous) <= tol * std::max(1.0, std::abs(rayleigh))) {
            out.lambda = rayleigh;
            break;
        }
        previous = rayleigh;
        out.lambda = rayleigh;
    }
    out.right_eigenvector = v;
    return out;
}

}  // namespace npx

#include "npx/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace npx {

std::vector<double> q_vector(RandomSubstitution const& s, std::size_t m, Limits const& limits) {
    std::vector<double> q;
    for (int a = 1; a <= s.alphabet_size(); ++a) {
        q.push_back(std::log(static_cast<double>(image_count(s, m, static_cast<Letter>(a), limits))));
    }
    return q;
}

PerronData perron_data(RandomSubstitution const& s, double tol) {
    int const n = s.alphabet_size();
    int const p = static_cast<int>(s.images(1).size()) - 1;
    if (n >= 2 && p >= 1 && s == noble_pisa(n, p)) {
        auto const eig = pf_eigenvalue(n, p, tol);
        return {eig.lambda, pf_eigenvector(n, p, eig.lambda, tol), true};
    }
    if (!is_primitive(s).primitive) throw DomainError("entropy bounds need a primitive substitution");
    auto const general = pf_general(s.substitution_matrix(), tol);
    return {general.lambda, general.right_eigenvector, false};
}

Bounds bounds_general(std::vector<double> const& q, PerronData const& perron, std::size_t m) {
    if (m < 1) throw DomainError("entropy bounds need m >= 1");
    double dot = 0;
    for (std::size_t i = 0; i < q.size(); ++i) dot += q[i] * perron.right_eigenvector[i];
    double const scale = std::pow(perron.lambda, static_cast<double>(m));
    return {dot / scale, dot / (scale - 1)};
}

Bounds bounds_general(RandomSubstitution const& s, std::size_t m, Limits const& limits) {
    if (!s.is_semi_compatible()) throw DomainError("entropy bounds need a semi-compatible substitution");
    return bounds_general(q_vector(s, m, limits), perron_data(s), m);
}

Bounds bounds_lambda(int n, int p, double lambda, double) {
    double const lower = std::log(p + 1.0) * (std::pow(lambda, n - 1) - 1) / (std::pow(lambda, n) - 1);
    return {lower, lower * lambda / (lambda - 1)};
}

Bounds bounds_lambda(int n, int p, double tol) { return bounds_lambda(n, p, pf_eigenvalue(n, p, tol).lambda, tol); }

Bounds bounds_np(int n, int p) {
    if (p <= 1) throw DomainError("the (n,p) closed-form bounds need p > 1");
    if (n < 2) throw DomainError("the (n,p) closed-form bounds need n >= 2");
    double const pp = p;
    double const lp = std::log(pp + 1);
    double const lower = lp * (std::pow(pp, n - 1) - 1) / (std::pow(pp + 1, n) - 1);
    double const upper = lp * ((pp + 1) / (pp - 1)) * (std::pow(pp + 1, n - 1) - 1) / (std::pow(pp, n) - 1);
    return {lower, upper};
}

std::vector<ComplexityRow> complexity(RandomSubstitution const& s, std::size_t max_length, Limits const& limits) {
    auto const sets = legal_words_upto(s, max_length, limits);
    std::vector<ComplexityRow> rows;
    for (std::size_t l = 1; l <= max_length; ++l) {
        auto const count = static_cast<std::uint64_t>(sets[l - 1].size());
        rows.push_back({l, count, std::log(static_cast<double>(count)) / static_cast<double>(l)});
    }
    return rows;
}

SetConditionReport verify_set_conditions(int n, int p, Limits const& limits) {
    auto const s = noble_pisa(n, p);
    auto const last = static_cast<Letter>(n);
    auto const ap = Word::power(1, static_cast<std::size_t>(p));
    SetConditionReport r;
    r.u = ap + Word::letter(last);
    r.v = Word::letter(last) + ap;
    auto const image_u = s.apply(r.u, limits);
    auto const image_v = s.apply(r.v, limits);
    for (auto const& x : sorted(image_v)) {
        if (!image_u.contains(x)) {
            r.identical_violated = true;
            r.separating_image = x;
            break;
        }
    }
    r.u_prime = Word::letter(1) + Word::letter(last) + Word::power(1, static_cast<std::size_t>(p - 1));
    r.v_prime = r.v;
    auto const image_u_prime = s.apply(r.u_prime, limits);
    for (auto const& x : sorted(image_u_prime)) {
        if (image_v.contains(x)) {
            r.disjoint_violated = true;
            r.common_image = x;
            break;
        }
    }
    return r;
}

std::vector<Figure2Row> figure2_rows(int n, int p_min, int p_max) {
    if (p_min < 2) throw DomainError("figure rows need p_min >= 2");
    if (p_max < p_min) throw DomainError("figure rows need p_max >= p_min");
    std::vector<Figure2Row> rows;
    for (int p = p_min; p <= p_max; ++p) {
        auto const b9 = bounds_np(n, p);
        auto const b8 = bounds_lambda(n, p);
        rows.push_back({p, b9.lower, b9.upper, b8.lower, b8.upper});
    }
    return rows;
}

std::string figure2_csv(std::vector<Figure2Row> const& rows) {
    std::ostringstream out;
    out << "p,lower_eq9,upper_eq9,lower_eq8,upper_eq8\r\n";
    out << std::setprecision(12);
    for (auto const& r : rows) {
        out << r.p << ',' << r.lower_eq9 << ',' << r.upper_eq9 << ',' << r.lower_eq8 << ',' << r.upper_eq8 << "\r\n";
    }
    return out.str();
}

std::string figure2_svg(std::vector<Figure2Row> const& rows, int n) {
    constexpr double width = 800, height = 500;
    constexpr double left = 70, right = 20, top = 40, bottom = 50;
    double const plot_w = width - left - right;
    double const plot_h = height - top - bottom;
    double x_min = rows.empty() ? 0 : rows.front().p;
    double x_max = rows.empty() ? 1 : rows.back().p;
    if (x_max == x_min) x_max = x_min + 1;
    double y_max = 0;
    for (auto const& r : rows) y_max = std::max({y_max, r.upper_eq9, r.upper_eq8, r.lower_eq9, r.lower_eq8});
    if (y_max <= 0) y_max = 1;
    auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) { return top + plot_h - y / y_max * plot_h; };

    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    out << "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    out << "<text x=\"400\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << "Entropy bounds, n = " << n << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\"" << top + plot_h
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double const yv = y_max * i / 5.0;
        double const xv = x_min + (x_max - x_min) * i / 5.0;
        out << "<text x=\"" << left - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << std::setprecision(3) << yv << std::setprecision(2) << "</text>\n";
        out << "<text x=\"" << sx(xv) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"11\">" << std::setprecision(0) << xv << std::setprecision(2)
            << "</text>\n";
    }
    struct Series {
        char const* name;
        char const* colour;
        char const* dash;
        double Figure2Row::*field;
    };
    Series const series[] = {
        {"upper (n,p)", "blue", "", &Figure2Row::upper_eq9},
        {"lower (n,p)", "red", "", &Figure2Row::lower_eq9},
        {"upper (lambda)", "blue", "6,4", &Figure2Row::upper_eq8},
        {"lower (lambda)", "red", "6,4", &Figure2Row::lower_eq8},
    };
    int legend = 0;
    for (auto const& s : series) {
        out << "<polyline fill=\"none\" stroke=\"" << s.colour << "\" stroke-width=\"1.5\"";
        if (*s.dash) out << " stroke-dasharray=\"" << s.dash << "\"";
        out << " points=\"";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            out << (i ? " " : "") << sx(rows[i].p) << ',' << sy(rows[i].*(s.field));
        }
        out << "\"/>\n";
        double const ly = top + 10 + 16 * legend++;
        out << "<line x1=\"" << width - 190 << "\" y1=\"" << ly << "\" x2=\"" << width - 160 << "\" y2=\"" << ly
            << "\" stroke=\"" << s.colour << "\"" << (*s.dash ? std::string(" stroke-dasharray=\"") + s.dash + "\"" : "")
            << "/>\n";
        out << "<text x=\"" << width - 154 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"11\">"
            << s.name << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">p</text>\n";
    out << "</svg>\n";
    return out.str();
}

EntropyReport entropy_report(int n, int p, std::size_t m_max, Limits const& limits) {
    EntropyReport report;
    report.n = n;
    report.p = p;
    auto const s = noble_pisa(n, p);
    report.perron = perron_data(s);
    for (std::size_t m = 1; m <= m_max; ++m) {
        EntropyRow row;
        row.m = m;
        row.q = q_vector(s, m, limits);
        row.bounds = bounds_general(row.q, report.perron, m);
        report.rows.push_back(std::move(row));
    }
    report.closed_lambda = bounds_lambda(n, p, report.perron.lambda, 0.0);
    if (p > 1) {
        report.has_closed_np = true;
        report.closed_np = bounds_np(n, p);
    }
    return report;
}

}  // namespace npx

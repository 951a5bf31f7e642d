#include "npx/numeration.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "npx/gamma.hpp"

namespace npx {

namespace {

/// Base lengths L_0..L_d with L_d the last one not exceeding `bound`.
std::vector<BigInt> base_upto(int n, int p, BigInt const& bound) {
    std::size_t d = 8;
    for (;;) {
        auto l = lengths(n, p, d);
        if (l.back() > bound) {
            while (l.size() > 1 && l.back() > bound) l.pop_back();
            return l;
        }
        d *= 2;
    }
}

Word random_realisation(RandomSubstitution const& s, std::size_t level, Letter a, std::mt19937_64& rng) {
    Word current = Word::letter(a);
    for (std::size_t k = 0; k < level; ++k) {
        Word next;
        for (std::size_t i = 0; i < current.size(); ++i) {
            auto const& imgs = s.images(current[i]);
            std::uniform_int_distribution<std::size_t> pick(0, imgs.size() - 1);
            next += imgs[pick(rng)];
        }
        current = std::move(next);
    }
    return current;
}

}  // namespace

BigInt NumerationRep::value(std::vector<BigInt> const& base) const {
    BigInt total = 0;
    for (std::size_t q = 0; q < digits.size(); ++q) total += digit(q) * base.at(q);
    return total;
}

NumerationRep NumerationRep::shifted() const {
    NumerationRep out = *this;
    out.digits.push_back(0);
    return out;
}

std::string to_string(NumerationRep const& rep, int p) {
    std::ostringstream out;
    for (std::size_t i = 0; i < rep.digits.size(); ++i) {
        if (p >= 10 && i) out << ',';
        out << rep.digits[i];
    }
    return out.str();
}

NumerationRep parse_representation(std::string const& text, int p) {
    NumerationRep rep;
    if (text.find(',') != std::string::npos || p >= 10) {
        std::stringstream in(text);
        std::string part;
        while (std::getline(in, part, ',')) rep.digits.push_back(std::stoi(part));
    } else {
        for (char c : text) {
            if (c < '0' || c > '9') throw DomainError("bad digit in representation '" + text + "'");
            rep.digits.push_back(c - '0');
        }
    }
    if (rep.digits.empty() || rep.digits.front() < 1) throw DomainError("representation needs a leading digit >= 1");
    for (int d : rep.digits)
        if (d < 0 || d > p) throw DomainError("digit outside [0, p] in '" + text + "'");
    return rep;
}

std::vector<NumerationRep> all_representations(BigInt const& n_value, int n, int p, std::size_t d_max) {
    if (n_value < 1) throw DomainError("numeration needs N >= 1");
    auto base = base_upto(n, p, n_value);
    if (base.size() > d_max + 1) base.resize(d_max + 1);
    std::size_t const top = base.size() - 1;
    // reach[q] = p * (L_0 + ... + L_q): the most that digits q..0 can still add.
    std::vector<BigInt> reach(base.size());
    for (std::size_t q = 0; q < base.size(); ++q) reach[q] = p * base[q] + (q ? reach[q - 1] : BigInt(0));

    std::vector<NumerationRep> out;
    std::vector<int> digits;  // digit for L_top, L_{top-1}, ...
    std::function<void(std::size_t, BigInt const&)> dfs = [&](std::size_t remaining, BigInt const& residual) {
        // `remaining` digits still to place, for indices remaining-1 .. 0.
        if (remaining == 0) {
            if (residual == 0) {
                auto first = std::find_if(digits.begin(), digits.end(), [](int d) { return d != 0; });
                if (first != digits.end()) out.push_back(NumerationRep{std::vector<int>(first, digits.end())});
            }
            return;
        }
        std::size_t const q = remaining - 1;
        if (residual > reach[q]) return;
        for (int d = p; d >= 0; --d) {
            BigInt const next = residual - d * base[q];
            if (next < 0) continue;
            digits.push_back(d);
            dfs(q, next);
            digits.pop_back();
        }
    };
    dfs(top + 1, n_value);
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return b < a; });
    return out;
}

std::vector<NumerationRep> all_representations(BigInt const& n_value, int n, int p) {
    auto const base = base_upto(n, p, n_value);
    return all_representations(n_value, n, p, base.size() - 1);
}

NumerationRep greedy_representation(BigInt const& n_value, int n, int p) {
    if (n_value < 1) throw DomainError("numeration needs N >= 1");
    auto const base = base_upto(n, p, n_value);
    NumerationRep rep;
    BigInt residual = n_value;
    for (std::size_t q = base.size(); q-- > 0;) {
        BigInt const digit = residual / base[q];
        rep.digits.push_back(digit.convert_to<int>());
        residual -= digit * base[q];
    }
    return rep;
}

RetentionReport check_digit_retention(int n, int p, std::uint64_t n_max) {
    RetentionReport report;
    auto const base = base_upto(n, p, BigInt(n_max));
    for (std::uint64_t m = 1; m <= n_max; ++m) {
        auto const reps = all_representations(BigInt(m), n, p);
        std::size_t longest = 0;
        for (auto const& r : reps) longest = std::max(longest, r.digits.size());
        for (std::size_t q = 0; q < base.size() && base[q] < m; ++q) {
            ++report.checked;
            if (longest < q + 1) {
                report.passed = false;
                report.counterexample = "m = " + std::to_string(m) + " > L_" + std::to_string(q) +
                                        " but no representation has " + std::to_string(q + 1) + " digits";
                return report;
            }
        }
    }
    return report;
}

LengthLawReport verify_length_law(int n, int p, NumerationRep const& rep, std::size_t samples, std::uint64_t seed) {
    for (int d : rep.digits)
        if (d < 0 || d > p) throw DomainError("digit outside [0, p]");
    auto const s = noble_pisa(n, p);
    auto const base = lengths(n, p, rep.digits.size());
    LengthLawReport report;
    report.expected_length = rep.value(base);
    report.expected_shifted_length = rep.shifted().value(base);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        Word u;
        for (std::size_t q = rep.top_index() + 1; q-- > 0;) {
            for (int copy = 0; copy < rep.digit(q); ++copy) u += random_realisation(s, q, 1, rng);
        }
        ++report.samples;
        if (BigInt(u.size()) != report.expected_length) {
            report.passed = false;
            report.counterexample = "sample " + to_string(u, n) + " has length " + std::to_string(u.size());
            return report;
        }
        Word image;
        for (std::size_t j = 0; j < u.size(); ++j) {
            auto const& imgs = s.images(u[j]);
            image += imgs[static_cast<std::size_t>(rng() % imgs.size())];
        }
        if (BigInt(image.size()) != report.expected_shifted_length) {
            report.passed = false;
            report.counterexample = "image " + to_string(image, n) + " of " + to_string(u, n) + " has length " +
                                    std::to_string(image.size());
            return report;
        }
    }
    return report;
}

}  // namespace npx

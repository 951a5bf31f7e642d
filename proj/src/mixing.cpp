#include "npx/mixing.hpp"

#include <algorithm>
#include <set>

#include "npx/gamma.hpp"

namespace npx {

namespace {

void require_noble_pisa_shape(RandomSubstitution const& s, int& n, int& p) {
    n = s.alphabet_size();
    p = static_cast<int>(s.images(1).size()) - 1;
    if (n < 2 || p < 1 || !(s == noble_pisa(n, p))) {
        throw DomainError("semi-mixing construction is defined for random noble Pisa substitutions only");
    }
}

}  // namespace

std::vector<Word> mixing_window(int n, int p) {
    auto const s = noble_pisa(n, p);
    std::set<Word> window;
    for (int i = 1; i < n; ++i)
        for (auto const& img : s.images(static_cast<Letter>(i))) window.insert(img);
    return {window.begin(), window.end()};
}

Embedding find_embedding(LegalityOracle& oracle, Word const& t, std::size_t q_max) {
    auto const& s = oracle.substitution();
    int const n = s.alphabet_size();
    if (t.empty() || !oracle.is_legal(t)) throw DomainError("word " + to_string(t, n) + " is not legal");
    for (std::size_t q = 0; q <= q_max; ++q) {
        auto const words = sorted(s.power_set(q + 2, 1, oracle.limits()));
        std::optional<Embedding> best;
        for (auto const& z : words) {
            auto const hits = factor_occurrences(t, z);
            if (hits.empty()) continue;
            std::size_t const start = hits.front() - 1;
            if (!best || start < best->h.size()) {
                best = Embedding{q, z.slice(0, start), z.slice(start + t.size()), z};
            }
        }
        if (best) return *best;
    }
    throw ResourceCapError("no embedding of " + to_string(t, n) + " found up to q = " + std::to_string(q_max));
}

SemiMixWitness semi_mixing_witness(LegalityOracle& oracle, Word const& t, std::size_t m, Embedding const* embedding) {
    auto const& s = oracle.substitution();
    int n = 0, p = 0;
    require_noble_pisa_shape(s, n, p);

    SemiMixWitness out;
    out.t = t;
    out.m = m;
    out.embedding = embedding ? *embedding : find_embedding(oracle, t);
    std::size_t const q = out.embedding.q;
    Word const& y = out.embedding.y;
    auto const base = lengths(n, p, q + 1);
    out.threshold = y.size() + base[q].convert_to<std::size_t>();
    if (m < out.threshold) {
        throw DomainError("gap " + std::to_string(m) + " is below the threshold N(t) = " + std::to_string(out.threshold));
    }

    out.representation = greedy_representation(BigInt(m - y.size()), n, p);
    auto const& rep = out.representation;
    std::size_t const top = rep.top_index();  // >= q because m - |y| >= L_q

    // Top q+1 digits become the exponents of Gamma^j(alpha_1), j = q..0.
    Word u;
    for (std::size_t j = q + 1; j-- > 0;) {
        int const exponent = rep.digit(top - q + j);
        Word const block = gamma_power(n, p, j, Word::letter(1), oracle.limits());
        for (int c = 0; c < exponent; ++c) u += block;
    }
    out.u = u;

    auto const window = mixing_window(n, p);
    InflationIndex const level_index(s, q + 2, oracle.limits());
    std::optional<Word> w;
    for (auto const& candidate : window) {
        if (level_index.prefix_of(u + candidate) & mask_of(1)) {
            w = candidate;
            break;
        }
    }
    if (!w) throw ConstructionError("prefix search failed: no w in W with u w a prefix of psi^{q+2}(a) for u = " + to_string(u, n));

    Word const anchor = out.embedding.inflation_word;  // h t y
    Word current = u;
    if (top == q) {
        out.construction_case = 1;
    } else {
        out.construction_case = 2;
        for (std::size_t stage = 1; stage <= top - q; ++stage) {
            int const j = rep.digit(top - q - stage);
            current = gamma_apply(n, p, current) + Word::power(1, static_cast<std::size_t>(j));
            w.reset();
            for (auto const& candidate : window) {
                if (oracle.is_legal(anchor + current + candidate)) {
                    w = candidate;
                    break;
                }
            }
            if (!w) {
                throw ConstructionError("inflation step " + std::to_string(stage) + " found no w in W keeping " +
                                        to_string(anchor + current, n) + " w legal");
            }
            out.stage_windows.push_back(*w);
        }
    }
    out.v = y + current;
    out.w = *w;
    if (out.v.size() != m) {
        throw ConstructionError("constructed v has length " + std::to_string(out.v.size()) + ", expected " + std::to_string(m));
    }
    out.certified = oracle.is_legal(t + out.v + out.w);
    if (!out.certified) {
        throw ConstructionError("certificate failed: " + to_string(t + out.v + out.w, n) + " is not legal");
    }
    return out;
}

GapSpectrum gap_spectrum(LegalityOracle& oracle, Word const& left, Word const& right, std::size_t m_max) {
    int const n = oracle.substitution().alphabet_size();
    if (!oracle.is_legal(left)) throw DomainError("left word " + to_string(left, n) + " is not legal");
    if (!oracle.is_legal(right)) throw DomainError("right word " + to_string(right, n) + " is not legal");
    GapSpectrum out{left, right, m_max, {}, {}};

    std::size_t const target = left.size() + m_max + right.size();
    std::vector<Word> frontier{left};
    for (std::size_t len = left.size(); len <= target; ++len) {
        if (len >= left.size() + right.size()) {
            std::size_t const m = len - left.size() - right.size();
            bool found = std::any_of(frontier.begin(), frontier.end(), [&](Word const& x) { return x.ends_with(right); });
            (found ? out.present : out.absent).push_back(m);
        }
        if (len == target) break;
        std::vector<Word> next;
        for (auto const& x : frontier) {
            for (int a = 1; a <= n; ++a) {
                Word extended = x;
                extended.push_back(static_cast<Letter>(a));
                if (oracle.is_legal(extended)) next.push_back(std::move(extended));
            }
        }
        if (next.size() > oracle.limits().max_set) throw ResourceCapError("gap spectrum frontier exceeds cap");
        frontier = std::move(next);
    }
    return out;
}

}  // namespace npx

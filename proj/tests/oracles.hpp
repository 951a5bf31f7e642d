#pragma once

// Reference implementations used only by the tests. They share no search code with
// the library: everything here works on plain std::string letter codes and scans.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "npx/decomposition.hpp"
#include "npx/substitution.hpp"

namespace oracle {

using npx::Letter;
using npx::RandomSubstitution;
using npx::Word;

// Lengths |psi^m(a)| for a semi-compatible substitution, straight from the images.
inline std::vector<std::vector<std::uint64_t>> image_lengths(RandomSubstitution const& s, int m_max) {
    int const n = s.alphabet_size();
    std::vector<std::vector<std::uint64_t>> len(m_max + 1, std::vector<std::uint64_t>(n + 1, 0));
    for (int a = 1; a <= n; ++a) len[0][a] = 1;
    for (int m = 1; m <= m_max; ++m) {
        for (int a = 1; a <= n; ++a) {
            std::uint64_t total = 0;
            for (char b : s.images(static_cast<Letter>(a)).front().codes()) total += len[m - 1][static_cast<unsigned char>(b)];
            len[m][a] = std::min<std::uint64_t>(total, std::uint64_t{1} << 60);  // saturate, only compared with short words
        }
    }
    return len;
}

// Top-down membership: is x (a range of w) an exact/suffix/prefix/factor piece of
// some element of psi^m(a)? Block boundaries are forced because lengths are fixed.
class TopDownLegality {
public:
    explicit TopDownLegality(RandomSubstitution s) : s_(std::move(s)) {}

    bool legal(Word const& word) {
        w_ = word.codes();
        memo_.clear();
        std::size_t const l = w_.size();
        if (l == 0) return true;
        int const n = s_.alphabet_size();
        int m0 = 0;
        auto len = image_lengths(s_, 64);
        while (true) {
            std::uint64_t shortest = UINT64_MAX;
            for (int a = 1; a <= n; ++a) shortest = std::min(shortest, len[m0][a]);
            if (shortest >= l || m0 >= 60) break;
            ++m0;
        }
        len_ = image_lengths(s_, m0 + 2 * n + 2);
        for (int m = 0; m <= m0 + 2 * n + 2; ++m)
            for (int a = 1; a <= n; ++a)
                if (factor(0, l, a, m)) return true;
        return false;
    }

private:
    enum Kind { kExact, kSuffix, kPrefix, kFactor };

    bool factor(std::size_t st, std::size_t l, int a, int m) { return query(kFactor, st, l, a, m); }

    bool query(Kind kind, std::size_t st, std::size_t l, int a, int m) {
        auto const key = std::make_tuple(int(kind), st, l, a, m);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        bool const r = compute(kind, st, l, a, m);
        memo_[key] = r;
        return r;
    }

    bool compute(Kind kind, std::size_t st, std::size_t l, int a, int m) {
        std::uint64_t const full = len_[m][a];
        if (l == 0 || l > full) return false;
        if (kind == kExact && l != full) return false;
        if (m == 0) return static_cast<unsigned char>(w_[st]) == a;
        for (auto const& z : s_.images(static_cast<Letter>(a))) {
            std::vector<int> blocks;
            for (char b : z.codes()) blocks.push_back(static_cast<unsigned char>(b));
            std::size_t const k = blocks.size();
            auto block_len = [&](std::size_t i) { return len_[m - 1][blocks[i]]; };
            if (kind == kExact) {
                std::size_t pos = st;
                bool ok = true;
                for (std::size_t i = 0; i < k && ok; ++i) {
                    ok = query(kExact, pos, block_len(i), blocks[i], m - 1);
                    pos += block_len(i);
                }
                if (ok) return true;
                continue;
            }
            if (kind == kSuffix) {
                // x = suffix(block i) block_{i+1} ... block_k
                std::uint64_t tail = 0;
                for (std::size_t i = k; i-- > 0;) {
                    if (l > tail && l - tail <= block_len(i)) {
                        std::size_t const head = l - tail;
                        bool ok = query(kSuffix, st, head, blocks[i], m - 1);
                        std::size_t pos = st + head;
                        for (std::size_t j = i + 1; j < k && ok; ++j) {
                            ok = query(kExact, pos, block_len(j), blocks[j], m - 1);
                            pos += block_len(j);
                        }
                        if (ok) return true;
                    }
                    tail += block_len(i);
                    if (tail >= l) break;
                }
                continue;
            }
            if (kind == kPrefix) {
                std::uint64_t lead = 0;
                for (std::size_t i = 0; i < k; ++i) {
                    if (l > lead && l - lead <= block_len(i)) {
                        bool ok = true;
                        std::size_t pos = st;
                        for (std::size_t j = 0; j < i && ok; ++j) {
                            ok = query(kExact, pos, block_len(j), blocks[j], m - 1);
                            pos += block_len(j);
                        }
                        if (ok && query(kPrefix, pos, l - lead, blocks[i], m - 1)) return true;
                    }
                    lead += block_len(i);
                    if (lead >= l) break;
                }
                continue;
            }
            // Factor: inside one block, or suffix of block i, whole blocks, prefix of block j.
            for (std::size_t i = 0; i < k; ++i)
                if (query(kFactor, st, l, blocks[i], m - 1)) return true;
            for (std::size_t i = 0; i + 1 < k; ++i) {
                for (std::size_t head = 1; head <= std::min<std::uint64_t>(l - 1, block_len(i)); ++head) {
                    if (!query(kSuffix, st, head, blocks[i], m - 1)) continue;
                    std::size_t pos = st + head;
                    std::size_t rest = l - head;
                    for (std::size_t j = i + 1; j < k && rest > 0; ++j) {
                        if (rest <= block_len(j)) {
                            if (query(kPrefix, pos, rest, blocks[j], m - 1)) return true;
                            break;
                        }
                        if (!query(kExact, pos, block_len(j), blocks[j], m - 1)) break;
                        pos += block_len(j);
                        rest -= block_len(j);
                    }
                }
            }
        }
        return false;
    }

    RandomSubstitution s_;
    std::string w_;
    std::vector<std::vector<std::uint64_t>> len_;
    std::map<std::tuple<int, std::size_t, std::size_t, int, int>, bool> memo_;
};

// Every level-k inflation word decomposition of u, by trying all 2^{|u|-1} cuttings and
// checking each piece by scanning the explicit sets psi^k(a).
inline std::vector<npx::Decomposition> naive_decompositions(RandomSubstitution const& s, std::size_t k,
                                                            Word const& u, TopDownLegality& legality) {
    int const n = s.alphabet_size();
    std::vector<std::vector<std::string>> inflation(n + 1);
    for (int a = 1; a <= n; ++a)
        for (auto const& x : s.power_set(k, static_cast<Letter>(a))) inflation[a].push_back(x.codes());

    auto letters_where = [&](auto&& pred) {
        std::vector<int> out;
        for (int a = 1; a <= n; ++a)
            for (auto const& x : inflation[a])
                if (pred(x)) {
                    out.push_back(a);
                    break;
                }
        return out;
    };

    std::string const codes = u.codes();
    std::size_t const len = codes.size();
    std::set<npx::Decomposition> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (len - 1)); ++mask) {
        std::vector<std::string> pieces;
        std::size_t start = 0;
        for (std::size_t i = 1; i <= len; ++i) {
            if (i == len || (mask >> (i - 1)) & 1) {
                pieces.push_back(codes.substr(start, i - start));
                start = i;
            }
        }
        std::size_t const r = pieces.size();
        std::vector<std::vector<int>> options(r);
        for (std::size_t i = 0; i < r; ++i) {
            auto const& piece = pieces[i];
            if (r == 1) {
                options[i] = letters_where([&](std::string const& x) { return x.find(piece) != std::string::npos; });
            } else if (i == 0) {
                options[i] = letters_where([&](std::string const& x) { return x.ends_with(piece); });
            } else if (i + 1 == r) {
                options[i] = letters_where([&](std::string const& x) { return x.starts_with(piece); });
            } else {
                options[i] = letters_where([&](std::string const& x) { return x == piece; });
            }
            if (options[i].empty()) break;
        }
        bool viable = true;
        for (auto const& o : options) viable = viable && !o.empty();
        if (!viable) continue;
        std::vector<std::size_t> pick(r, 0);
        while (true) {
            std::string root;
            for (std::size_t i = 0; i < r; ++i) root.push_back(static_cast<char>(options[i][pick[i]]));
            Word const v = Word::from_codes(root);
            if (legality.legal(v)) {
                npx::Decomposition d;
                for (auto const& piece : pieces) d.cutting.push_back(Word::from_codes(piece));
                d.root = v;
                found.insert(d);
            }
            std::size_t i = 0;
            while (i < r && ++pick[i] == options[i].size()) pick[i++] = 0;
            if (i == r) break;
        }
    }
    return {found.begin(), found.end()};
}

// L_m by the defining recursion on plain integers.
inline std::vector<std::uint64_t> length_sequence(int n, int p, std::size_t count) {
    std::vector<std::uint64_t> l;
    for (std::size_t m = 0; m < count; ++m) {
        if (m < static_cast<std::size_t>(n)) {
            std::uint64_t v = 1;
            for (std::size_t i = 0; i < m; ++i) v *= static_cast<std::uint64_t>(p + 1);
            l.push_back(v);
        } else {
            std::uint64_t v = l[m - n];
            for (int r = 1; r < n; ++r) v += static_cast<std::uint64_t>(p) * l[m - r];
            l.push_back(v);
        }
    }
    return l;
}

// All digit strings (most significant first, no leading zero) with digits in [0,p]
// and value N, by exhaustive enumeration.
inline std::set<std::vector<int>> brute_representations(std::uint64_t value, int n, int p) {
    std::set<std::vector<int>> out;
    if (value == 0) {
        out.insert({0});
        return out;
    }
    auto const l = length_sequence(n, p, 64);
    std::size_t d = 0;
    while (l[d] <= value) ++d;
    for (std::size_t width = 1; width <= d; ++width) {
        std::vector<int> digits(width, 0);
        while (true) {
            if (digits[0] != 0) {
                std::uint64_t total = 0;
                for (std::size_t i = 0; i < width; ++i) total += static_cast<std::uint64_t>(digits[i]) * l[width - 1 - i];
                if (total == value) out.insert(digits);
            }
            std::size_t i = width;
            while (i > 0 && ++digits[i - 1] > p) digits[--i] = 0;
            if (i == 0) break;
        }
    }
    return out;
}

// A uniformly chosen factor of a random realisation of psi^m(a) long enough to hold it.
inline Word random_legal_word(RandomSubstitution const& s, std::size_t length, std::mt19937_64& rng) {
    int const n = s.alphabet_size();
    std::string current(1, static_cast<char>(1 + rng() % static_cast<unsigned>(n)));
    while (current.size() < length + 8) {
        std::string next;
        for (char c : current) {
            auto const& images = s.images(static_cast<Letter>(c));
            next += images[rng() % images.size()].codes();
        }
        current = std::move(next);
    }
    std::size_t const start = rng() % (current.size() - length + 1);
    return Word::from_codes(current.substr(start, length));
}

}  // namespace oracle

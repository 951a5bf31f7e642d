#include "npx/gamma.hpp"

namespace npx {

namespace {

void check_params(int n, int p) {
    if (n < 2 || n > kMaxAlphabet || p < 1) throw DomainError("Gamma needs 2 <= n <= 64 and p >= 1");
}

Word block(int n, int p, Letter previous, Letter current) {
    if (current < 1 || current > n) throw DomainError("letter outside alphabet");
    if (current == n) return Word::letter(1);
    Word const next = Word::letter(static_cast<Letter>(current + 1));
    if (previous == n) return Word::power(1, static_cast<std::size_t>(p)) + next;
    return next + Word::power(1, static_cast<std::size_t>(p));
}

}  // namespace

std::vector<Word> gamma_blocks(int n, int p, Word const& w) {
    check_params(n, p);
    std::vector<Word> blocks;
    blocks.reserve(w.size());
    Letter previous = 0;  // empty left neighbour
    for (std::size_t i = 0; i < w.size(); ++i) {
        blocks.push_back(block(n, p, previous, w[i]));
        previous = w[i];
    }
    return blocks;
}

Word gamma_apply(int n, int p, Word const& w) {
    check_params(n, p);
    std::string codes;
    codes.reserve(w.size() * static_cast<std::size_t>(p + 1));
    Letter previous = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        codes += block(n, p, previous, w[i]).codes();
        previous = w[i];
    }
    return Word::from_codes(std::move(codes));
}

Word gamma_power(int n, int p, std::size_t k, Word const& w, Limits const& limits) {
    Word current = w;
    for (std::size_t i = 0; i < k; ++i) {
        if (current.size() * static_cast<std::size_t>(p + 1) > limits.max_word_length) {
            throw ResourceCapError("Gamma^" + std::to_string(i + 1) + " would exceed the word length cap " +
                                   std::to_string(limits.max_word_length));
        }
        current = gamma_apply(n, p, current);
    }
    return current;
}

std::vector<BigInt> lengths(int n, int p, std::size_t d) {
    check_params(n, p);
    std::vector<BigInt> l;
    l.reserve(d + 1);
    for (std::size_t m = 0; m <= d; ++m) {
        if (m < static_cast<std::size_t>(n)) {
            l.push_back(m == 0 ? BigInt(1) : l.back() * (p + 1));
            continue;
        }
        BigInt next = l[m - static_cast<std::size_t>(n)];
        for (std::size_t r = 1; r < static_cast<std::size_t>(n); ++r) next += p * l[m - r];
        l.push_back(std::move(next));
    }
    return l;
}

Word recognisable_candidate(int n, int p, std::size_t k, Limits const& limits) {
    if (k < 1) throw DomainError("recognisable candidate needs level k >= 1");
    if (p < 2) {
        throw DomainError("the recognisable-word construction requires p >= 2");
    }
    Word const g = gamma_power(n, p, k, Word::letter(1), limits);
    return reflect(g) + g;
}

}  // namespace npx

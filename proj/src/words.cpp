#include "npx/words.hpp"

#include <algorithm>

#include "npx/errors.hpp"

namespace npx {

Word::Word(std::initializer_list<Letter> letters) {
    codes_.reserve(letters.size());
    for (Letter a : letters) codes_.push_back(static_cast<char>(a));
}

Word::Word(std::vector<Letter> const& letters) {
    codes_.reserve(letters.size());
    for (Letter a : letters) codes_.push_back(static_cast<char>(a));
}

std::strong_ordering operator<=>(Word const& a, Word const& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    // Compare as unsigned bytes; std::string::compare uses char_traits<char>,
    // which is also unsigned, but make it explicit.
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] <=> b[i];
    }
    return std::strong_ordering::equal;
}

Word operator+(Word a, Word const& b) {
    a += b;
    return a;
}

std::vector<Word> sorted(WordSet const& set) {
    std::vector<Word> out(set.begin(), set.end());
    std::sort(out.begin(), out.end());
    return out;
}

Word concat(Word const& u, Word const& v) { return u + v; }

Word reflect(Word const& w) {
    std::string codes(w.codes().rbegin(), w.codes().rend());
    return Word::from_codes(std::move(codes));
}

AbelianVector abelianise(Word const& u, int n) {
    AbelianVector counts(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        int a = u[i];
        if (a < 1 || a > n) {
            throw DomainError("letter index " + std::to_string(a) + " outside alphabet of size " +
                              std::to_string(n));
        }
        ++counts[static_cast<std::size_t>(a - 1)];
    }
    return counts;
}

std::vector<std::size_t> factor_occurrences(Word const& u, Word const& v) {
    std::vector<std::size_t> hits;
    if (u.size() > v.size()) return hits;
    if (u.empty()) {
        for (std::size_t i = 0; i <= v.size(); ++i) hits.push_back(i + 1);
        return hits;
    }
    for (auto pos = v.codes().find(u.codes()); pos != std::string::npos;
         pos = v.codes().find(u.codes(), pos + 1)) {
        hits.push_back(pos + 1);
    }
    return hits;
}

bool is_factor(Word const& u, Word const& v) {
    return u.size() <= v.size() && v.codes().find(u.codes()) != std::string::npos;
}

std::string to_string(Word const& w, int n) {
    if (w.empty()) return "ε";
    std::string out;
    if (n <= 26) {
        out.reserve(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out.push_back(static_cast<char>('a' + w[i] - 1));
        return out;
    }
    for (std::size_t i = 0; i < w.size(); ++i) out += "α" + std::to_string(int{w[i]});
    return out;
}

namespace {

Letter checked(long value, int n, std::string_view text) {
    if (value < 1 || value > n) {
        throw DomainError("letter " + std::to_string(value) + " in '" + std::string(text) +
                          "' outside alphabet of size " + std::to_string(n));
    }
    return static_cast<Letter>(value);
}

}  // namespace

Word parse_word(std::string_view text, int n) {
    if (text.empty() || text == "ε" || text == "eps") return Word{};
    constexpr std::string_view alpha = "α";
    std::string codes;
    std::size_t i = 0;
    auto read_number = [&](std::size_t& pos) {
        std::size_t start = pos;
        long value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + (text[pos] - '0');
            if (value > 1'000'000) break;
            ++pos;
        }
        if (pos == start) throw DomainError("expected letter index in '" + std::string(text) + "'");
        return value;
    };
    while (i < text.size()) {
        if (text.substr(i).starts_with(alpha)) {
            i += alpha.size();
            codes.push_back(static_cast<char>(checked(read_number(i), n, text)));
        } else if (text[i] == 'a' && i + 1 < text.size() && text[i + 1] >= '0' && text[i + 1] <= '9' &&
                   n > 26) {
            ++i;
            codes.push_back(static_cast<char>(checked(read_number(i), n, text)));
        } else if (text[i] >= 'a' && text[i] <= 'z') {
            codes.push_back(static_cast<char>(checked(text[i] - 'a' + 1, n, text)));
            ++i;
        } else {
            throw DomainError("unexpected symbol in word '" + std::string(text) + "'");
        }
    }
    return Word::from_codes(std::move(codes));
}

}  // namespace npx

#include "npx/substitution.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace npx {

RandomSubstitution::RandomSubstitution(int n, std::vector<std::vector<Word>> images) : n_(n) {
    if (n < 1 || n > kMaxAlphabet) {
        throw DomainError("alphabet size must lie in [1, " + std::to_string(kMaxAlphabet) + "]");
    }
    if (static_cast<int>(images.size()) != n) {
        throw DomainError("expected " + std::to_string(n) + " image sets, got " + std::to_string(images.size()));
    }
    for (std::size_t i = 0; i < images.size(); ++i) {
        auto& set = images[i];
        if (set.empty()) throw DomainError("letter " + std::to_string(i + 1) + " has an empty image set");
        for (auto const& img : set) {
            if (img.empty()) throw DomainError("letter " + std::to_string(i + 1) + " has an empty image word");
            abelianise(img, n);  // range check
        }
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
    }
    images_ = std::move(images);
}

void RandomSubstitution::check_cardinality(std::size_t size, Limits const& limits, std::string_view what) const {
    if (size > limits.max_set) {
        throw ResourceCapError(std::string(what) + ": set size " + std::to_string(size) + " exceeds cap " +
                               std::to_string(limits.max_set));
    }
}

WordSet RandomSubstitution::apply(Word const& u, Limits const& limits) const {
    if (u.empty()) throw DomainError("cannot substitute the empty word");
    std::vector<Word> partial{Word{}};
    for (std::size_t i = 0; i < u.size(); ++i) {
        Letter a = u[i];
        if (a < 1 || a > n_) throw DomainError("letter outside alphabet in " + to_string(u, n_));
        auto const& imgs = images_[a - 1];
        check_cardinality(partial.size() * imgs.size(), limits, "apply");
        std::vector<Word> next;
        next.reserve(partial.size() * imgs.size());
        for (auto const& prefix : partial) {
            for (auto const& img : imgs) next.push_back(prefix + img);
        }
        // Deduplicate as we go: distinct choices can concatenate to one word.
        WordSet unique(next.begin(), next.end());
        partial.assign(unique.begin(), unique.end());
        if (!partial.empty() && partial.front().size() * partial.size() > limits.max_total_letters) {
            throw ResourceCapError("apply: total stored letters exceed cap");
        }
    }
    return WordSet(partial.begin(), partial.end());
}

WordSet RandomSubstitution::apply(WordSet const& words, Limits const& limits) const {
    WordSet out;
    std::size_t letters = 0;
    for (auto const& u : words) {
        for (auto& img : apply(u, limits)) {
            letters += img.size();
            out.insert(std::move(img));
        }
        check_cardinality(out.size(), limits, "apply");
        if (letters > limits.max_total_letters) throw ResourceCapError("apply: total stored letters exceed cap");
    }
    return out;
}

WordSet RandomSubstitution::power_set(std::size_t k, Letter a, Limits const& limits) const {
    if (a < 1 || a > n_) throw DomainError("letter outside alphabet");
    WordSet current{Word::letter(a)};
    for (std::size_t level = 0; level < k; ++level) {
        try {
            current = apply(current, limits);
        } catch (ResourceCapError const& e) {
            throw ResourceCapError("psi^" + std::to_string(level + 1) + "(" + to_string(Word::letter(a), n_) +
                                   "): " + e.what());
        }
    }
    return current;
}

bool RandomSubstitution::is_semi_compatible() const {
    for (auto const& set : images_) {
        auto const first = abelianise(set.front(), n_);
        for (auto const& img : set) {
            if (abelianise(img, n_) != first) return false;
        }
    }
    return true;
}

IntMatrix RandomSubstitution::substitution_matrix() const {
    if (!is_semi_compatible()) throw DomainError("substitution matrix requires a semi-compatible substitution");
    IntMatrix m(n_, std::vector<std::int64_t>(n_, 0));
    for (int j = 0; j < n_; ++j) {
        auto const col = abelianise(images_[j].front(), n_);
        for (int i = 0; i < n_; ++i) m[i][j] = static_cast<std::int64_t>(col[i]);
    }
    return m;
}

std::string RandomSubstitution::to_rules() const {
    std::ostringstream out;
    for (int i = 0; i < n_; ++i) {
        out << to_string(Word::letter(static_cast<Letter>(i + 1)), n_) << " ->";
        for (std::size_t j = 0; j < images_[i].size(); ++j) {
            out << (j == 0 ? " " : " | ") << to_string(images_[i][j], n_);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

std::string trim(std::string const& s) {
    auto const begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    auto const end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

RandomSubstitution RandomSubstitution::from_rules(std::istream& in) {
    std::vector<std::pair<Word, std::vector<std::string>>> rules;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto const hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto const arrow = line.find("->");
        if (arrow == std::string::npos) {
            throw DomainError("rules line " + std::to_string(line_no) + ": missing '->'");
        }
        Word lhs = parse_word(trim(line.substr(0, arrow)), kMaxAlphabet);
        if (lhs.size() != 1) throw DomainError("rules line " + std::to_string(line_no) + ": left side must be one letter");
        std::vector<std::string> rhs;
        std::string const body = line.substr(arrow + 2);
        for (std::size_t start = 0;;) {
            auto const bar = body.find('|', start);
            std::string const part = trim(body.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
            if (part.empty()) throw DomainError("rules line " + std::to_string(line_no) + ": empty image");
            rhs.push_back(part);
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
        if (rhs.empty()) throw DomainError("rules line " + std::to_string(line_no) + ": no images");
        rules.emplace_back(std::move(lhs), std::move(rhs));
    }
    int n = static_cast<int>(rules.size());
    if (n == 0) throw DomainError("rules: no letters defined");
    std::vector<std::vector<Word>> images(n);
    std::vector<bool> seen(n, false);
    for (auto const& [lhs, rhs] : rules) {
        int a = lhs.front();
        if (a > n) throw DomainError("rules: letter index " + std::to_string(a) + " without a full alphabet");
        if (seen[a - 1]) throw DomainError("rules: letter defined twice");
        seen[a - 1] = true;
        for (auto const& text : rhs) images[a - 1].push_back(parse_word(text, n));
    }
    return RandomSubstitution(n, std::move(images));
}

RandomSubstitution RandomSubstitution::from_rules(std::string const& text) {
    std::istringstream in(text);
    return from_rules(in);
}

RandomSubstitution noble_pisa(int n, int p) {
    if (n < 2 || n > kMaxAlphabet) throw DomainError("noble Pisa substitution needs 2 <= n <= 64");
    if (p < 1) throw DomainError("noble Pisa substitution needs p >= 1");
    std::vector<std::vector<Word>> images(n);
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j <= p; ++j) {
            images[i - 1].push_back(Word::power(1, p - j) + Word::letter(static_cast<Letter>(i + 1)) +
                                    Word::power(1, j));
        }
    }
    images[n - 1].push_back(Word::letter(1));
    return RandomSubstitution(n, std::move(images));
}

RandomSubstitution deterministic_noble_pisa(int n, int p) {
    if (n < 2 || n > kMaxAlphabet) throw DomainError("noble Pisa substitution needs 2 <= n <= 64");
    if (p < 1) throw DomainError("noble Pisa substitution needs p >= 1");
    std::vector<std::vector<Word>> images(n);
    for (int i = 1; i < n; ++i) images[i - 1].push_back(Word::power(1, p) + Word::letter(static_cast<Letter>(i + 1)));
    images[n - 1].push_back(Word::letter(1));
    return RandomSubstitution(n, std::move(images));
}

PrimitivityResult is_primitive(RandomSubstitution const& s) {
    auto const m = s.substitution_matrix();
    std::size_t const n = m.size();
    using Pattern = std::vector<std::vector<bool>>;
    Pattern base(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) base[i][j] = m[i][j] > 0;
    Pattern power = base;
    std::size_t const bound = (n - 1) * n + 1;
    for (std::size_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (auto const& row : power)
            for (bool b : row) positive = positive && b;
        if (positive) return {true, static_cast<int>(k)};
        Pattern next(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (power[i][l])
                    for (std::size_t j = 0; j < n; ++j) next[i][j] = next[i][j] || base[l][j];
        power = std::move(next);
    }
    return {false, 0};
}

std::uint64_t image_count(RandomSubstitution const& s, std::size_t m, Letter a, Limits const& limits) {
    return s.power_set(m, a, limits).size();
}

namespace {

// Factors of length <= max_len of elements of psi(u) that start inside the image of
// u's first letter. Later starting points are covered by the suffixes of u, which
// belong to the same factor-closed set.
void collect_image_factors(RandomSubstitution const& s, Word const& u, std::size_t max_len, WordSet& out) {
    std::string buffer;
    std::function<void(std::size_t)> extend = [&](std::size_t next) {
        if (buffer.size() >= max_len || next == u.size()) return;
        for (auto const& img : s.images(u[next])) {
            std::size_t const before = buffer.size();
            buffer += img.codes();
            std::size_t const upto = std::min(buffer.size(), max_len);
            for (std::size_t len = before + 1; len <= upto; ++len) out.insert(Word::from_codes(buffer.substr(0, len)));
            extend(next + 1);
            buffer.resize(before);
        }
    };
    for (auto const& img : s.images(u[0])) {
        for (std::size_t offset = 0; offset < img.size(); ++offset) {
            buffer.assign(img.codes(), offset, std::string::npos);
            std::size_t const upto = std::min(buffer.size(), max_len);
            for (std::size_t len = 1; len <= upto; ++len) out.insert(Word::from_codes(buffer.substr(0, len)));
            extend(1);
        }
    }
}

}  // namespace

std::vector<WordSet> legal_words_upto(RandomSubstitution const& s, std::size_t max_length, Limits const& limits,
                                      std::size_t* depth_out) {
    if (max_length == 0) throw DomainError("legal word length must be >= 1");
    WordSet factors;
    for (int a = 1; a <= s.alphabet_size(); ++a) factors.insert(Word::letter(static_cast<Letter>(a)));
    // Only words added in the previous round can contribute anything new.
    std::vector<Word> fresh(factors.begin(), factors.end());
    for (std::size_t depth = 1; depth <= limits.max_depth; ++depth) {
        WordSet next = factors;
        for (auto const& u : fresh) {
            // A word that extends to the right inside the set contributes nothing new.
            if (u.size() < max_length) {
                bool extendable = false;
                for (int a = 1; a <= s.alphabet_size() && !extendable; ++a) {
                    Word ext = u;
                    ext.push_back(static_cast<Letter>(a));
                    extendable = factors.contains(ext);
                }
                if (extendable) continue;
            }
            collect_image_factors(s, u, max_length, next);
            if (next.size() > limits.max_set) {
                throw ResourceCapError("language generation: factor set exceeds cap " + std::to_string(limits.max_set));
            }
        }
        if (next.size() == factors.size()) {
            if (depth_out) *depth_out = depth;
            std::vector<WordSet> by_length(max_length);
            for (auto const& u : factors) by_length[u.size() - 1].insert(u);
            return by_length;
        }
        fresh.clear();
        for (auto const& u : next)
            if (!factors.contains(u)) fresh.push_back(u);
        factors = std::move(next);
    }
    throw ResourceCapError("language generation did not stabilise within depth " + std::to_string(limits.max_depth));
}

LanguageFragment legal_words(RandomSubstitution const& s, std::size_t length, Limits const& limits) {
    LanguageFragment fragment;
    fragment.length = length;
    auto const all = legal_words_upto(s, length, limits, &fragment.depth);
    fragment.words = sorted(all[length - 1]);
    return fragment;
}

std::string matrix_to_string(IntMatrix const& m) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m[i].size(); ++j) out << (j ? "," : "") << m[i][j];
        out << ']';
    }
    out << ']';
    return out.str();
}

}  // namespace npx

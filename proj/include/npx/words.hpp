#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace npx {

/// 1-based letter index: alpha_1 is Letter{1}.
using Letter = std::uint8_t;

inline constexpr int kMaxAlphabet = 64;

/// Finite word over {1..n}. Letters are stored as raw byte codes in a
/// std::string so that hashing, factor search and slicing stay cheap.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> letters);
    explicit Word(std::vector<Letter> const& letters);

    static Word from_codes(std::string codes) {
        Word w;
        w.codes_ = std::move(codes);
        return w;
    }
    static Word letter(Letter a) { return Word::from_codes(std::string(1, static_cast<char>(a))); }
    static Word power(Letter a, std::size_t times) {
        return Word::from_codes(std::string(times, static_cast<char>(a)));
    }

    std::size_t size() const noexcept { return codes_.size(); }
    bool empty() const noexcept { return codes_.empty(); }
    Letter operator[](std::size_t i) const { return static_cast<Letter>(codes_[i]); }
    Letter front() const { return (*this)[0]; }
    Letter back() const { return (*this)[size() - 1]; }

    Word slice(std::size_t pos, std::size_t len = std::string::npos) const {
        return Word::from_codes(codes_.substr(pos, len));
    }
    bool starts_with(Word const& prefix) const { return codes_.starts_with(prefix.codes_); }
    bool ends_with(Word const& suffix) const { return codes_.ends_with(suffix.codes_); }

    Word& operator+=(Word const& other) {
        codes_ += other.codes_;
        return *this;
    }
    void push_back(Letter a) { codes_.push_back(static_cast<char>(a)); }

    std::string const& codes() const noexcept { return codes_; }
    std::string_view view() const noexcept { return codes_; }

    friend bool operator==(Word const&, Word const&) = default;
    /// Length-lexicographic order: shorter words first, then by letter index.
    friend std::strong_ordering operator<=>(Word const& a, Word const& b);

private:
    std::string codes_;
};

Word operator+(Word a, Word const& b);

struct WordHash {
    std::size_t operator()(Word const& w) const noexcept { return std::hash<std::string>{}(w.codes()); }
};

using WordSet = std::unordered_set<Word, WordHash>;

/// Sorted copy of a set in the canonical (length-lexicographic) order.
std::vector<Word> sorted(WordSet const& set);

using AbelianVector = std::vector<std::uint64_t>;

Word concat(Word const& u, Word const& v);
Word reflect(Word const& w);

/// Letter counts; throws DomainError when a letter exceeds n.
AbelianVector abelianise(Word const& u, int n);

/// 1-based start positions of u inside v (all of them, overlapping).
std::vector<std::size_t> factor_occurrences(Word const& u, Word const& v);
bool is_factor(Word const& u, Word const& v);

/// "aab" style rendering for n <= 26, "α1α2" style beyond.
std::string to_string(Word const& w, int n = 26);

/// Accepts "aab", "α1α1α2" (also "a1a1a2" as an ASCII fallback) and "ε"/"" for
/// the empty word. Throws DomainError on unknown symbols or letters above n.
Word parse_word(std::string_view text, int n = 26);

/// Shorthand for literals in code and tests: w("aabbaa").
inline Word w(std::string_view text) { return parse_word(text, kMaxAlphabet); }

}  // namespace npx

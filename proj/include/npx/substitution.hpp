#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "npx/errors.hpp"
#include "npx/words.hpp"

namespace npx {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Set-valued morphism: every letter maps to a nonempty finite set of
/// nonempty words. Immutable after construction.
class RandomSubstitution {
public:
    /// images[i] holds the image set of letter i+1. Duplicates are removed and
    /// each set is stored in canonical order.
    RandomSubstitution(int n, std::vector<std::vector<Word>> images);

    int alphabet_size() const noexcept { return n_; }
    std::vector<Word> const& images(Letter a) const { return images_.at(a - 1); }
    std::vector<std::vector<Word>> const& all_images() const noexcept { return images_; }

    /// Every concatenation of one image per letter of u (deduplicated).
    WordSet apply(Word const& u, Limits const& limits = {}) const;

    /// Image of a whole set of words, as the union of per-word images.
    WordSet apply(WordSet const& words, Limits const& limits = {}) const;

    /// psi^k(a); psi^0(a) = {a}.
    WordSet power_set(std::size_t k, Letter a, Limits const& limits = {}) const;

    bool is_semi_compatible() const;

    /// M_ij = |psi(alpha_j)|_{alpha_i}. Throws DomainError unless semi-compatible.
    IntMatrix substitution_matrix() const;

    /// Plain-text rules, one line per letter: "a -> aab | aba | baa".
    std::string to_rules() const;
    static RandomSubstitution from_rules(std::istream& in);
    static RandomSubstitution from_rules(std::string const& text);

    friend bool operator==(RandomSubstitution const&, RandomSubstitution const&) = default;

private:
    void check_cardinality(std::size_t size, Limits const& limits, std::string_view what) const;

    int n_;
    std::vector<std::vector<Word>> images_;
};

/// psi_{n,p}: alpha_i -> { alpha_1^{p-j} alpha_{i+1} alpha_1^j : 0 <= j <= p } for i < n,
/// alpha_n -> { alpha_1 }.
RandomSubstitution noble_pisa(int n, int p);

/// xi_{n,p}: alpha_i -> alpha_1^p alpha_{i+1} for i < n, alpha_n -> alpha_1.
RandomSubstitution deterministic_noble_pisa(int n, int p);

struct PrimitivityResult {
    bool primitive = false;
    int exponent = 0;  ///< least k with M^k > 0, or 0 when not primitive
};

/// Least k <= (n-1)n + 1 with M^k entrywise positive (Wielandt bound).
PrimitivityResult is_primitive(RandomSubstitution const& s);

/// |psi^m(a)| as an exact integer.
std::uint64_t image_count(RandomSubstitution const& s, std::size_t m, Letter a, Limits const& limits = {});

struct LanguageFragment {
    std::size_t length = 0;
    std::vector<Word> words;       ///< canonical order
    std::size_t depth = 0;         ///< iteration at which the factor set stopped growing
};

/// Legal words of one length, by fixed-point iteration over factor sets.
/// Throws ResourceCapError when the set does not stabilise within
/// limits.max_depth iterations.
LanguageFragment legal_words(RandomSubstitution const& s, std::size_t length, Limits const& limits = {});

/// All legal words of length 1..max_length, computed by a single fixed-point
/// run. Index i of the result is the set of length i+1.
std::vector<WordSet> legal_words_upto(RandomSubstitution const& s, std::size_t max_length,
                                      Limits const& limits = {}, std::size_t* depth_out = nullptr);

std::string matrix_to_string(IntMatrix const& m);

}  // namespace npx

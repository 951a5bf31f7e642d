#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "npx/substitution.hpp"

namespace npx {

using LetterMask = std::uint64_t;

inline LetterMask mask_of(Letter a) { return LetterMask{1} << (a - 1); }

/// Every way to cut a word into level-k pieces, before any root is chosen.
/// Position i of `first` is the letter set for which u[0,i) is a suffix of an
/// inflation word; `last[j]` the set for which u[j,|u|) is a prefix; `interior[i]`
/// lists exact pieces u[i,j) with their letter sets.
struct ParseGraph {
    std::size_t length = 0;
    LetterMask single = 0;  ///< letters alpha with u a factor of some element of psi^k(alpha)
    std::vector<LetterMask> first;
    std::vector<LetterMask> last;
    std::vector<std::vector<std::pair<std::size_t, LetterMask>>> interior;
    std::vector<bool> can_finish;  ///< a cut at i can be completed to the end
};

/// psi^k(alpha) for every letter, indexed for exact, prefix and suffix lookup.
/// Immutable once built.
class InflationIndex {
public:
    InflationIndex(RandomSubstitution const& s, std::size_t level, Limits const& limits = {});

    std::size_t level() const noexcept { return level_; }
    int alphabet_size() const noexcept { return n_; }
    std::vector<Word> const& words(Letter a) const { return words_.at(a - 1); }
    std::size_t min_length() const noexcept { return min_length_; }
    std::size_t max_length() const noexcept { return max_length_; }

    LetterMask exact(Word const& u) const;
    LetterMask prefix_of(Word const& u) const;
    LetterMask suffix_of(Word const& u) const;
    LetterMask factor_of(Word const& u) const;

    ParseGraph parse(Word const& u) const;

private:
    struct Trie {
        int width = 0;
        std::vector<std::int32_t> children;  // width entries per node, -1 when absent
        std::vector<LetterMask> through;     // letters with a word passing through the node
        std::vector<LetterMask> ending;      // letters with a word ending exactly at the node
        Trie() = default;
        explicit Trie(int w) : width(w) { add_node(); }
        std::int32_t add_node();
        void insert(std::string_view codes, LetterMask tag);
        std::int32_t child(std::int32_t node, Letter a) const {
            return children[static_cast<std::size_t>(node) * width + (a - 1)];
        }
    };

    int n_;
    std::size_t level_;
    std::size_t min_length_ = 0;
    std::size_t max_length_ = 0;
    std::vector<std::vector<Word>> words_;
    Trie forward_;
    Trie backward_;
};

/// Decides legality. Short words come from a fixed-point language table;
/// longer words are desubstituted one level-K step (K chosen so that every
/// inflation word has length >= 2) and their roots checked recursively, which
/// is exact because a legal word is always covered by psi^K of a shorter legal
/// word. Results are memoised; not safe for concurrent use.
class LegalityOracle {
public:
    explicit LegalityOracle(RandomSubstitution s, Limits limits = {}, std::size_t table_length = 6);

    bool is_legal(Word const& u);
    RandomSubstitution const& substitution() const noexcept { return s_; }
    Limits const& limits() const noexcept { return limits_; }
    std::size_t table_length() const noexcept { return table_.size(); }
    std::size_t desubstitution_level() const noexcept { return index_ ? index_->level() : 0; }

private:
    bool search_root(ParseGraph const& graph, std::size_t position, Word& root);

    RandomSubstitution s_;
    Limits limits_;
    std::vector<WordSet> table_;
    std::unique_ptr<InflationIndex> index_;
    std::unordered_map<Word, bool, WordHash> cache_;
};

struct Decomposition {
    std::vector<Word> cutting;
    Word root;

    friend bool operator==(Decomposition const&, Decomposition const&) = default;
    friend std::strong_ordering operator<=>(Decomposition const& a, Decomposition const& b);
};

struct DecompositionSet {
    Word word;
    std::size_t level = 0;
    std::vector<Decomposition> items;  ///< sorted, no duplicates

    std::vector<std::vector<Word>> cuttings() const;
    std::vector<Word> roots() const;
    /// v_2..v_{|v|-1} for roots longer than two letters, the full root otherwise.
    std::vector<Word> central_roots() const;
};

struct RecognisabilityVerdict {
    bool recognisable = false;
    std::string reason;
};

/// Level-k inflation word decompositions. The single-piece case (|v| = 1)
/// accepts u when it is a factor of some element of psi^k(v_1).
class Decomposer {
public:
    Decomposer(LegalityOracle& oracle, std::size_t level);

    std::size_t level() const noexcept { return index_.level(); }
    InflationIndex const& index() const noexcept { return index_; }

    /// Throws DomainError when u is empty or not legal.
    DecompositionSet enumerate(Word const& u);
    RecognisabilityVerdict is_recognisable(Word const& u);
    static RecognisabilityVerdict judge(DecompositionSet const& set);

private:
    LegalityOracle& oracle_;
    InflationIndex index_;
};

struct CheckOutcome {
    bool passed = true;
    std::string detail;  ///< counterexample on failure, summary on success
};

/// L_k exceeds every inflation word of the other letters, and none of those
/// words is a prefix of Gamma^k(alpha_1) or a suffix of its reflection.
CheckOutcome verify_not_pre_suf(int n, int p, std::size_t k, Limits const& limits = {});

/// No inflation word splits as (nonempty suffix of reflect(Gamma^k(alpha_1)))
/// . (nonempty prefix of Gamma^k(alpha_1)).
CheckOutcome verify_no_straddling(int n, int p, std::size_t k, Limits const& limits = {});

struct TheoremLevel {
    std::size_t level = 0;
    enum class Status { pass, fail, cap } status = Status::fail;
    std::string detail;
    std::size_t decompositions = 0;
};

struct TheoremReport {
    bool skipped = false;
    std::string skip_reason;
    std::vector<TheoremLevel> levels;
    bool all_passed() const;
};

/// reflect(Gamma^k(alpha_1)) Gamma^k(alpha_1) has exactly one decomposition
/// ([reflect(Gamma^k(alpha_1)), Gamma^k(alpha_1)], alpha_1 alpha_1), k = 1..k_max.
TheoremReport verify_recognisability_theorem(int n, int p, std::size_t k_max, Limits const& limits = {});

std::string to_string(Decomposition const& d, int n);
std::string to_string(TheoremLevel::Status status);

}  // namespace npx

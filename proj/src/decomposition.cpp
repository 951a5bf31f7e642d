#include "npx/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <sstream>

#include "npx/gamma.hpp"

namespace npx {

namespace {

template <typename F>
void for_each_letter(LetterMask mask, F&& f) {
    while (mask) {
        int const bit = std::countr_zero(mask);
        f(static_cast<Letter>(bit + 1));
        mask &= mask - 1;
    }
}

}  // namespace

std::int32_t InflationIndex::Trie::add_node() {
    children.insert(children.end(), static_cast<std::size_t>(width), -1);
    through.push_back(0);
    ending.push_back(0);
    return static_cast<std::int32_t>(through.size() - 1);
}

void InflationIndex::Trie::insert(std::string_view codes, LetterMask tag) {
    std::int32_t node = 0;
    through[0] |= tag;
    for (char c : codes) {
        auto const slot = static_cast<std::size_t>(node) * width + (static_cast<Letter>(c) - 1);
        if (children[slot] < 0) {
            std::int32_t const fresh = add_node();
            children[slot] = fresh;
        }
        node = children[slot];
        through[static_cast<std::size_t>(node)] |= tag;
    }
    ending[static_cast<std::size_t>(node)] |= tag;
}

InflationIndex::InflationIndex(RandomSubstitution const& s, std::size_t level, Limits const& limits)
    : n_(s.alphabet_size()), level_(level), forward_(s.alphabet_size()), backward_(s.alphabet_size()) {
    words_.resize(static_cast<std::size_t>(n_));
    min_length_ = static_cast<std::size_t>(-1);
    for (int a = 1; a <= n_; ++a) {
        words_[a - 1] = sorted(s.power_set(level, static_cast<Letter>(a), limits));
        for (auto const& w : words_[a - 1]) {
            forward_.insert(w.codes(), mask_of(static_cast<Letter>(a)));
            std::string reversed(w.codes().rbegin(), w.codes().rend());
            backward_.insert(reversed, mask_of(static_cast<Letter>(a)));
            min_length_ = std::min(min_length_, w.size());
            max_length_ = std::max(max_length_, w.size());
        }
    }
}

LetterMask InflationIndex::exact(Word const& u) const {
    std::int32_t node = 0;
    for (std::size_t i = 0; i < u.size() && node >= 0; ++i) node = forward_.child(node, u[i]);
    return node < 0 ? 0 : forward_.ending[static_cast<std::size_t>(node)];
}

LetterMask InflationIndex::prefix_of(Word const& u) const {
    std::int32_t node = 0;
    for (std::size_t i = 0; i < u.size() && node >= 0; ++i) node = forward_.child(node, u[i]);
    return node < 0 ? 0 : forward_.through[static_cast<std::size_t>(node)];
}

LetterMask InflationIndex::suffix_of(Word const& u) const {
    std::int32_t node = 0;
    for (std::size_t i = u.size(); i-- > 0 && node >= 0;) node = backward_.child(node, u[i]);
    return node < 0 ? 0 : backward_.through[static_cast<std::size_t>(node)];
}

LetterMask InflationIndex::factor_of(Word const& u) const {
    LetterMask mask = 0;
    for (int a = 1; a <= n_; ++a) {
        for (auto const& w : words_[a - 1]) {
            if (is_factor(u, w)) {
                mask |= mask_of(static_cast<Letter>(a));
                break;
            }
        }
    }
    return mask;
}

ParseGraph InflationIndex::parse(Word const& u) const {
    ParseGraph g;
    std::size_t const len = u.size();
    g.length = len;
    g.first.assign(len + 1, 0);
    g.last.assign(len + 1, 0);
    g.interior.assign(len + 1, {});
    g.can_finish.assign(len + 1, false);
    if (len == 0) return g;
    g.single = factor_of(u);

    // First piece u[0,i): walk the reversed-word trie from i-1 down to 0.
    for (std::size_t i = 1; i < len; ++i) {
        if (i > max_length_) break;
        std::int32_t node = 0;
        for (std::size_t pos = i; pos-- > 0 && node >= 0;) node = backward_.child(node, u[pos]);
        if (node >= 0) g.first[i] = backward_.through[static_cast<std::size_t>(node)];
    }
    for (std::size_t i = 1; i < len; ++i) {
        std::int32_t node = 0;
        for (std::size_t j = i; j < len; ++j) {
            node = forward_.child(node, u[j]);
            if (node < 0) break;
            // Interior pieces stop before the end so the last piece stays nonempty.
            if (j + 1 < len && forward_.ending[static_cast<std::size_t>(node)]) {
                g.interior[i].emplace_back(j + 1, forward_.ending[static_cast<std::size_t>(node)]);
            }
            if (j + 1 == len) g.last[i] = forward_.through[static_cast<std::size_t>(node)];
        }
    }
    for (std::size_t i = len - 1; i >= 1; --i) {
        bool ok = g.last[i] != 0;
        for (auto const& [next, mask] : g.interior[i]) ok = ok || g.can_finish[next];
        g.can_finish[i] = ok;
    }
    return g;
}

LegalityOracle::LegalityOracle(RandomSubstitution s, Limits limits, std::size_t table_length)
    : s_(std::move(s)), limits_(limits) {
    if (table_length == 0) table_length = 1;
    table_ = legal_words_upto(s_, table_length, limits_);
}

bool LegalityOracle::is_legal(Word const& u) {
    if (u.empty()) return true;
    if (u.size() <= table_.size()) return table_[u.size() - 1].contains(u);
    if (auto it = cache_.find(u); it != cache_.end()) return it->second;

    if (!index_) {
        // Smallest level whose inflation words all have length >= 2, so that
        // roots are strictly shorter than the words they cover.
        int const n = s_.alphabet_size();
        std::vector<std::size_t> shortest(static_cast<std::size_t>(n), 1);
        std::size_t level = 0;
        for (std::size_t k = 1; k <= 8 && level == 0; ++k) {
            std::vector<std::size_t> next(static_cast<std::size_t>(n));
            for (int a = 1; a <= n; ++a) {
                std::size_t best = static_cast<std::size_t>(-1);
                for (auto const& img : s_.images(static_cast<Letter>(a))) {
                    std::size_t total = 0;
                    for (std::size_t i = 0; i < img.size(); ++i) total += shortest[img[i] - 1];
                    best = std::min(best, total);
                }
                next[a - 1] = best;
            }
            shortest = next;
            if (*std::min_element(shortest.begin(), shortest.end()) >= 2) level = k;
        }
        if (level == 0) {
            throw ResourceCapError("legality of words longer than " + std::to_string(table_.size()) +
                                   " letters needs a growing substitution");
        }
        index_ = std::make_unique<InflationIndex>(s_, level, limits_);
    }

    ParseGraph const graph = index_->parse(u);
    bool legal = false;
    for_each_letter(graph.single, [&](Letter a) { legal = legal || table_[0].contains(Word::letter(a)); });
    if (!legal) {
        Word root;
        legal = search_root(graph, 0, root);
    }
    cache_.emplace(u, legal);
    return legal;
}

bool LegalityOracle::search_root(ParseGraph const& graph, std::size_t position, Word& root) {
    auto try_letter = [&](Letter a, std::size_t next, bool final) {
        root.push_back(a);
        bool ok = is_legal(root) && (final || search_root(graph, next, root));
        root = root.slice(0, root.size() - 1);
        return ok;
    };
    bool found = false;
    if (position == 0) {
        for (std::size_t i = 1; i < graph.length && !found; ++i) {
            if (!graph.first[i] || !graph.can_finish[i]) continue;
            for_each_letter(graph.first[i], [&](Letter a) { found = found || try_letter(a, i, false); });
        }
        return found;
    }
    for_each_letter(graph.last[position], [&](Letter a) { found = found || try_letter(a, graph.length, true); });
    for (auto const& [next, mask] : graph.interior[position]) {
        if (found) break;
        if (!graph.can_finish[next]) continue;
        for_each_letter(mask, [&](Letter a) { found = found || try_letter(a, next, false); });
    }
    return found;
}

std::strong_ordering operator<=>(Decomposition const& a, Decomposition const& b) {
    if (auto c = std::lexicographical_compare_three_way(a.cutting.begin(), a.cutting.end(), b.cutting.begin(),
                                                        b.cutting.end());
        c != 0) {
        return c;
    }
    return a.root <=> b.root;
}

std::vector<std::vector<Word>> DecompositionSet::cuttings() const {
    std::set<std::vector<Word>> unique;
    for (auto const& d : items) unique.insert(d.cutting);
    return {unique.begin(), unique.end()};
}

std::vector<Word> DecompositionSet::roots() const {
    std::set<Word> unique;
    for (auto const& d : items) unique.insert(d.root);
    return {unique.begin(), unique.end()};
}

std::vector<Word> DecompositionSet::central_roots() const {
    std::set<Word> unique;
    for (auto const& d : items) unique.insert(d.root.size() > 2 ? d.root.slice(1, d.root.size() - 2) : d.root);
    return {unique.begin(), unique.end()};
}

Decomposer::Decomposer(LegalityOracle& oracle, std::size_t level)
    : oracle_(oracle), index_(oracle.substitution(), level, oracle.limits()) {
    if (level < 1) throw DomainError("decomposition level must be >= 1");
}

DecompositionSet Decomposer::enumerate(Word const& u) {
    if (u.empty()) throw DomainError("cannot decompose the empty word");
    int const n = oracle_.substitution().alphabet_size();
    if (!oracle_.is_legal(u)) throw DomainError("word " + to_string(u, n) + " is not legal");

    DecompositionSet result;
    result.word = u;
    result.level = index_.level();
    ParseGraph const graph = index_.parse(u);
    std::size_t const cap = oracle_.limits().max_set;

    for_each_letter(graph.single, [&](Letter a) {
        if (oracle_.is_legal(Word::letter(a))) result.items.push_back({{u}, Word::letter(a)});
    });

    std::vector<std::size_t> cuts{0};
    Word root;
    std::function<void(std::size_t)> walk = [&](std::size_t position) {
        auto emit_piece = [&](Letter a, std::size_t next, bool final) {
            root.push_back(a);
            if (oracle_.is_legal(root)) {
                cuts.push_back(next);
                if (final) {
                    Decomposition d;
                    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) d.cutting.push_back(u.slice(cuts[i], cuts[i + 1] - cuts[i]));
                    d.root = root;
                    result.items.push_back(std::move(d));
                    if (result.items.size() > cap) throw ResourceCapError("decomposition count exceeds cap");
                } else {
                    walk(next);
                }
                cuts.pop_back();
            }
            root = root.slice(0, root.size() - 1);
        };
        if (position == 0) {
            for (std::size_t i = 1; i < graph.length; ++i) {
                if (!graph.first[i] || !graph.can_finish[i]) continue;
                for_each_letter(graph.first[i], [&](Letter a) { emit_piece(a, i, false); });
            }
            return;
        }
        for_each_letter(graph.last[position], [&](Letter a) { emit_piece(a, graph.length, true); });
        for (auto const& [next, mask] : graph.interior[position]) {
            if (!graph.can_finish[next]) continue;
            for_each_letter(mask, [&](Letter a) { emit_piece(a, next, false); });
        }
    };
    walk(0);

    std::sort(result.items.begin(), result.items.end());
    result.items.erase(std::unique(result.items.begin(), result.items.end()), result.items.end());
    return result;
}

RecognisabilityVerdict Decomposer::judge(DecompositionSet const& set) {
    if (set.items.empty()) return {false, "no level-" + std::to_string(set.level) + " decomposition"};
    auto const cuttings = set.cuttings();
    if (cuttings.size() != 1) {
        return {false, "cutting not unique (" + std::to_string(cuttings.size()) + " cuttings)"};
    }
    if (cuttings.front().size() > 2) {
        auto const central = set.central_roots();
        if (central.size() != 1) return {false, "central root not unique (" + std::to_string(central.size()) + " central roots)"};
        return {true, "unique cutting and unique central root"};
    }
    auto const roots = set.roots();
    if (roots.size() != 1) return {false, "root not unique (" + std::to_string(roots.size()) + " roots)"};
    return {true, "unique cutting and unique root"};
}

RecognisabilityVerdict Decomposer::is_recognisable(Word const& u) { return judge(enumerate(u)); }

CheckOutcome verify_not_pre_suf(int n, int p, std::size_t k, Limits const& limits) {
    auto const s = noble_pisa(n, p);
    Word const g = gamma_power(n, p, k, Word::letter(1), limits);
    Word const g_reflected = reflect(g);
    std::size_t longest = 0;
    std::string collision;
    for (int i = 2; i <= n && collision.empty(); ++i) {
        for (auto const& y : sorted(s.power_set(k, static_cast<Letter>(i), limits))) {
            longest = std::max(longest, y.size());
            if (g.starts_with(y)) {
                collision = to_string(y, n) + " in psi^" + std::to_string(k) + "(" + to_string(Word::letter(static_cast<Letter>(i)), n) +
                            ") is a prefix of Gamma^k(a) = " + to_string(g, n);
                break;
            }
            if (g_reflected.ends_with(y)) {
                collision = to_string(y, n) + " in psi^" + std::to_string(k) + "(" + to_string(Word::letter(static_cast<Letter>(i)), n) +
                            ") is a suffix of reflect(Gamma^k(a)) = " + to_string(g_reflected, n);
                break;
            }
        }
    }
    bool const longer = g.size() > longest;
    std::string detail = "clause 1 " + std::string(longer ? "pass" : "fail") + ": L_k = " + std::to_string(g.size()) +
                         (longer ? " > " : " <= ") + "longest other inflation word " + std::to_string(longest) + "; clause 2 " +
                         (collision.empty() ? "pass: no prefix/suffix collisions" : "fail: " + collision);
    return {longer && collision.empty(), detail};
}

CheckOutcome verify_no_straddling(int n, int p, std::size_t k, Limits const& limits) {
    auto const s = noble_pisa(n, p);
    Word const g = gamma_power(n, p, k, Word::letter(1), limits);
    Word const g_reflected = reflect(g);
    std::size_t checked = 0;
    for (int i = 1; i <= n; ++i) {
        for (auto const& w : sorted(s.power_set(k, static_cast<Letter>(i), limits))) {
            ++checked;
            for (std::size_t cut = 1; cut < w.size(); ++cut) {
                Word const left = w.slice(0, cut);
                Word const right = w.slice(cut);
                if (g_reflected.ends_with(left) && g.starts_with(right)) {
                    return {false, to_string(w, n) + " = " + to_string(left, n) + "|" + to_string(right, n) + " straddles the centre"};
                }
            }
        }
    }
    return {true, std::to_string(checked) + " inflation words checked"};
}

bool TheoremReport::all_passed() const {
    if (skipped) return false;
    return std::all_of(levels.begin(), levels.end(), [](TheoremLevel const& l) { return l.status == TheoremLevel::Status::pass; });
}

TheoremReport verify_recognisability_theorem(int n, int p, std::size_t k_max, Limits const& limits) {
    TheoremReport report;
    if (n < 2 || p < 2) {
        report.skipped = true;
        report.skip_reason = "requires p ≥ 2";
        if (n < 2) report.skip_reason = "requires n >= 2";
        return report;
    }
    LegalityOracle oracle(noble_pisa(n, p), limits);
    Word const aa = Word::power(1, 2);
    for (std::size_t k = 1; k <= k_max; ++k) {
        TheoremLevel level;
        level.level = k;
        try {
            Word const g = gamma_power(n, p, k, Word::letter(1), limits);
            Decomposer decomposer(oracle, k);
            auto const set = decomposer.enumerate(reflect(g) + g);
            level.decompositions = set.items.size();
            Decomposition const expected{{reflect(g), g}, aa};
            if (set.items.size() == 1 && set.items.front() == expected) {
                level.status = TheoremLevel::Status::pass;
                level.detail = to_string(expected, n);
            } else {
                level.status = TheoremLevel::Status::fail;
                std::ostringstream detail;
                detail << set.items.size() << " decompositions";
                if (!set.items.empty()) detail << ", first " << to_string(set.items.front(), n);
                level.detail = detail.str();
            }
        } catch (ResourceCapError const& e) {
            level.status = TheoremLevel::Status::cap;
            level.detail = e.what();
            report.levels.push_back(level);
            break;
        }
        report.levels.push_back(level);
    }
    return report;
}

std::string to_string(Decomposition const& d, int n) {
    std::string out = "([";
    for (std::size_t i = 0; i < d.cutting.size(); ++i) out += (i ? "," : "") + to_string(d.cutting[i], n);
    return out + "], " + to_string(d.root, n) + ")";
}

std::string to_string(TheoremLevel::Status status) {
    switch (status) {
        case TheoremLevel::Status::pass: return "pass";
        case TheoremLevel::Status::fail: return "fail";
        case TheoremLevel::Status::cap: return "cap";
    }
    return "fail";
}

}  // namespace npx

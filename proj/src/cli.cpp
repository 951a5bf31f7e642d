#include "npx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "npx/decomposition.hpp"
#include "npx/entropy.hpp"
#include "npx/gamma.hpp"
#include "npx/mixing.hpp"
#include "npx/numeration.hpp"
#include "npx/spectral.hpp"
#include "npx/substitution.hpp"

namespace npx::cli {

using nlohmann::json;

namespace {

constexpr int kMaxP = 100000;

void check_np(int n, int p) {
    if (n < 2 || n > kMaxAlphabet) throw DomainError("n must lie in [2, " + std::to_string(kMaxAlphabet) + "]");
    if (p < 1 || p > kMaxP) throw DomainError("p must lie in [1, " + std::to_string(kMaxP) + "]");
}

std::size_t env_size(char const* name, std::size_t fallback) {
    char const* raw = std::getenv(name);
    if (!raw || !*raw) return fallback;
    char* end = nullptr;
    unsigned long long const value = std::strtoull(raw, &end, 10);
    if (*end != '\0' || value == 0 || raw[0] == '-') {
        throw DomainError(std::string(name) + " must be a positive integer, got '" + raw + "'");
    }
    return static_cast<std::size_t>(value);
}

std::string fixed(double x, int digits) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << x;
    return out.str();
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

void write_file(std::string const& path, std::string const& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DomainError("cannot open " + path + " for writing");
    file << content;
    if (!file) throw DomainError("failed writing " + path);
}

// Where the substitution comes from: positional n p, --noble-pisa n p, or --rules FILE.
struct Source {
    std::vector<int> positional;
    std::vector<int> noble;
    std::string rules_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("n_p", positional, "alphabet size n and multiplicity p")->expected(0, 2);
        cmd->add_option("--noble-pisa", noble, "use psi_{n,p}")->expected(2);
        cmd->add_option("--rules", rules_file, "read the substitution from a rules file");
    }

    std::optional<std::pair<int, int>> np() const {
        auto const& v = noble.empty() ? positional : noble;
        if (!noble.empty() && !positional.empty()) throw DomainError("give n p either positionally or via --noble-pisa");
        if (v.empty()) return std::nullopt;
        if (v.size() != 2) throw DomainError("expected both n and p");
        check_np(v[0], v[1]);
        return std::pair{v[0], v[1]};
    }

    RandomSubstitution load() const {
        auto const pair = np();
        if (!rules_file.empty()) {
            if (pair) throw DomainError("give either n p or --rules, not both");
            std::ifstream in(rules_file);
            if (!in) throw DomainError("cannot read rules file " + rules_file);
            return RandomSubstitution::from_rules(in);
        }
        if (!pair) throw DomainError("a substitution is required: n p, --noble-pisa n p or --rules FILE");
        return noble_pisa(pair->first, pair->second);
    }
};

std::string rep_text(NumerationRep const& rep, int p) { return to_string(rep, p); }

json word_list(std::vector<Word> const& words, int n) {
    json out = json::array();
    for (auto const& x : words) out.push_back(to_string(x, n));
    return out;
}

json decomposition_json(DecompositionSet const& set, RecognisabilityVerdict const& verdict, int n, int p) {
    json items = json::array();
    for (auto const& d : set.items) items.push_back({{"cutting", word_list(d.cutting, n)}, {"root", to_string(d.root, n)}});
    json cuttings = json::array();
    for (auto const& c : set.cuttings()) cuttings.push_back(word_list(c, n));
    return {{"command", "decompose"},
            {"n", n},
            {"p", p},
            {"level", set.level},
            {"word", to_string(set.word, n)},
            {"decompositions", items},
            {"cuttings", cuttings},
            {"roots", word_list(set.roots(), n)},
            {"central_roots", word_list(set.central_roots(), n)},
            {"recognisable", verdict.recognisable},
            {"reason", verdict.reason}};
}

json embedding_json(Embedding const& e, int n) {
    return {{"q", e.q},
            {"h", to_string(e.h, n)},
            {"y", to_string(e.y, n)},
            {"inflation_word", to_string(e.inflation_word, n)}};
}

// Rough count of words visited by the right-extension search: the number of legal
// words of length l grows like exp(h l), bounded above by the closed-form bound.
double gap_cost_estimate(int n, int p, std::size_t total_length) {
    double const h = bounds_lambda(n, p).upper;
    double sum = 0;
    for (std::size_t l = 1; l <= total_length; ++l) sum += std::exp(std::min(700.0, h * static_cast<double>(l)));
    return sum;
}

struct Check {
    json& list;

    void add(std::string const& name, std::string const& status, std::string const& detail, json witness = nullptr) {
        json entry = {{"name", name}, {"status", status}, {"detail", detail}};
        if (!witness.is_null()) entry["witness"] = std::move(witness);
        list.push_back(std::move(entry));
    }

    void guarded(std::string const& name, std::function<void()> const& body) {
        try {
            body();
        } catch (ResourceCapError const& e) {
            add(name, "cap", e.what());
        } catch (std::bad_alloc const&) {
            add(name, "cap", "memory exhausted");
        } catch (std::exception const& e) {
            add(name, "fail", e.what());
        }
    }
};

}  // namespace

Limits limits_from_environment() {
    Limits limits;
    limits.max_set = env_size("NPX_MAX_SET", limits.max_set);
    limits.max_depth = env_size("NPX_MAX_DEPTH", limits.max_depth);
    limits.max_word_length = env_size("NPX_MAX_WORD_LENGTH", limits.max_word_length);
    return limits;
}

json verify_all(int n, int p, int budget, Limits const& limits) {
    check_np(n, p);
    if (budget < 1) throw DomainError("budget must be positive");
    auto const s = noble_pisa(n, p);
    std::size_t const k_max = 1 + static_cast<std::size_t>(budget);
    json checks = json::array();
    Check c{checks};

    c.guarded("semi_compatible", [&] {
        bool const ok = s.is_semi_compatible();
        c.add("semi_compatible", ok ? "pass" : "fail", ok ? "all images of each letter share one abelianisation" : "images differ");
    });
    c.guarded("primitive", [&] {
        auto const r = is_primitive(s);
        c.add("primitive", r.primitive ? "pass" : "fail",
              r.primitive ? "M^" + std::to_string(r.exponent) + " is strictly positive" : "no strictly positive power",
              json{{"exponent", r.exponent}});
    });
    c.guarded("brauer", [&] {
        bool const ok = brauer_irreducible(n, p);
        c.add("brauer", ok ? "pass" : "fail", "characteristic polynomial " + char_poly(n, p).to_string());
    });
    c.guarded("pisot", [&] {
        auto const r = is_pisot(n, p);
        double max_modulus = 0;
        for (auto const& root : r.other_roots) max_modulus = std::max(max_modulus, root.modulus);
        c.add("pisot", r.status == PisotStatus::pisot ? "pass" : "fail", "status " + to_string(r.status),
              json{{"max_conjugate_modulus", max_modulus}, {"modulus_product", r.modulus_product}});
    });
    c.guarded("unimodular", [&] {
        bool const ok = is_unimodular(n, p);
        c.add("unimodular", ok ? "pass" : "fail", "det M = " + determinant(s.substitution_matrix()).str());
    });
    for (std::size_t k = 1; k <= k_max; ++k) {
        std::string const name = "not_pre_suf_k" + std::to_string(k);
        c.guarded(name, [&] {
            auto const r = verify_not_pre_suf(n, p, k, limits);
            c.add(name, r.passed ? "pass" : "fail", r.detail);
        });
    }
    for (std::size_t k = 1; k <= k_max; ++k) {
        std::string const name = "no_straddling_k" + std::to_string(k);
        c.guarded(name, [&] {
            auto const r = verify_no_straddling(n, p, k, limits);
            c.add(name, r.passed ? "pass" : "fail", r.detail);
        });
    }
    c.guarded("recognisability_theorem", [&] {
        auto const r = verify_recognisability_theorem(n, p, k_max, limits);
        if (r.skipped) {
            c.add("recognisability_theorem", "skipped", r.skip_reason);
            return;
        }
        json levels = json::array();
        bool capped = false;
        for (auto const& level : r.levels) {
            levels.push_back({{"level", level.level}, {"status", to_string(level.status)}, {"detail", level.detail}});
            capped = capped || level.status == TheoremLevel::Status::cap;
        }
        std::string const status = r.all_passed() ? "pass" : capped ? "cap" : "fail";
        c.add("recognisability_theorem", status, "levels 1.." + std::to_string(k_max), levels);
    });
    c.guarded("digit_retention", [&] {
        std::uint64_t const n_max = 200 * static_cast<std::uint64_t>(budget);
        auto const r = check_digit_retention(n, p, n_max);
        c.add("digit_retention", r.passed ? "pass" : "fail",
              r.passed ? "checked " + std::to_string(r.checked) + " values up to " + std::to_string(n_max) : r.counterexample);
    });
    c.guarded("length_law", [&] {
        std::size_t const samples = 10 * static_cast<std::size_t>(budget);
        std::size_t reps = 0;
        for (int value : {7, 20, 50}) {
            for (auto const& rep : all_representations(BigInt(value), n, p)) {
                auto const r = verify_length_law(n, p, rep, samples, 1);
                ++reps;
                if (!r.passed) {
                    c.add("length_law", "fail", r.counterexample, json{{"representation", rep_text(rep, p)}});
                    return;
                }
            }
        }
        c.add("length_law", "pass",
              std::to_string(reps) + " representations, " + std::to_string(samples) + " samples each");
    });
    c.guarded("set_conditions", [&] {
        auto const r = verify_set_conditions(n, p, limits);
        bool const ok = r.identical_violated && r.disjoint_violated;
        c.add("set_conditions", ok ? "pass" : "fail",
              "identical-set condition " + std::string(r.identical_violated ? "violated" : "holds") +
                  ", disjoint-set condition " + (r.disjoint_violated ? "violated" : "holds"),
              json{{"u", to_string(r.u, n)},
                   {"v", to_string(r.v, n)},
                   {"separating_image", to_string(r.separating_image, n)},
                   {"u_prime", to_string(r.u_prime, n)},
                   {"v_prime", to_string(r.v_prime, n)},
                   {"common_image", to_string(r.common_image, n)}});
    });
    c.guarded("semi_mixing_scan", [&] {
        LegalityOracle oracle(s, limits);
        Word const t = Word::power(1, static_cast<std::size_t>(p)) + Word::letter(static_cast<Letter>(n));
        auto const embedding = find_embedding(oracle, t);
        auto const threshold = embedding.y.size() + lengths(n, p, embedding.q + 1)[embedding.q].convert_to<std::size_t>();
        std::size_t const width = 10 * static_cast<std::size_t>(budget);
        json witnesses = json::array();
        for (std::size_t m = threshold; m <= threshold + width; ++m) {
            auto const wit = semi_mixing_witness(oracle, t, m, &embedding);
            witnesses.push_back({{"m", m}, {"v", to_string(wit.v, n)}, {"w", to_string(wit.w, n)}});
        }
        c.add("semi_mixing_scan", "pass",
              "t = " + to_string(t, n) + ", every m in [" + std::to_string(threshold) + ", " +
                  std::to_string(threshold + width) + "] certified",
              witnesses);
    });

    json summary = {{"pass", 0}, {"fail", 0}, {"skipped", 0}, {"cap", 0}};
    for (auto const& entry : checks) summary[entry["status"].get<std::string>()] = summary[entry["status"].get<std::string>()].get<int>() + 1;
    summary["all_passed"] = summary["fail"] == 0 && summary["cap"] == 0;
    return {{"command", "verify"}, {"n", n}, {"p", p}, {"budget", budget}, {"checks", checks}, {"summary", summary}};
}

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random noble Pisa substitutions: languages, recognisability, numeration, mixing and entropy", "npx"};
    app.require_subcommand(1, 1);
    bool debug = false;
    std::size_t max_set = 0, max_depth = 0, max_word_length = 0;
    std::uint64_t seed = 0;
    app.add_flag("--debug", debug, "rethrow errors instead of mapping them to exit codes");
    app.add_option("--max-set", max_set, "maximum set cardinality")->check(CLI::PositiveNumber);
    app.add_option("--max-depth", max_depth, "maximum language iteration depth")->check(CLI::PositiveNumber);
    app.add_option("--max-word-length", max_word_length, "maximum word length")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "random seed (reserved)");

    std::function<int()> action;
    auto limits = [&] {
        Limits l = limits_from_environment();
        if (max_set) l.max_set = max_set;
        if (max_depth) l.max_depth = max_depth;
        if (max_word_length) l.max_word_length = max_word_length;
        return l;
    };

    // info
    Source info_src;
    auto* info = app.add_subcommand("info", "rules, matrix and spectral summary");
    info_src.attach(info);
    info->callback([&] {
        action = [&] {
            auto const s = info_src.load();
            int const n = s.alphabet_size();
            out << "rules:\n" << s.to_rules();
            bool const semi = s.is_semi_compatible();
            out << "semi-compatible: " << bool_text(semi) << "\n";
            if (!semi) return 0;
            auto const matrix = s.substitution_matrix();
            out << "matrix: " << matrix_to_string(matrix) << "\n";
            auto const prim = is_primitive(s);
            out << "primitive: " << bool_text(prim.primitive);
            if (prim.primitive) out << " (exponent " << prim.exponent << ")";
            out << "\n";
            out << "characteristic polynomial: " << char_poly_of(matrix).to_string() << "\n";
            auto const np = info_src.np();
            if (np) {
                auto const data = spectral_data(np->first, np->second);
                out << "lambda: " << fixed(data.eigenvalue.lambda, 6) << "\n";
                out << "Pisot: " << (data.pisot.status == PisotStatus::indeterminate ? "indeterminate"
                                                                                     : bool_text(data.pisot.status == PisotStatus::pisot))
                    << "\n";
                out << "unimodular: " << bool_text(data.unimodular) << "\n";
                out << "Brauer irreducible: " << bool_text(data.brauer) << "\n";
            } else {
                out << "unimodular: " << bool_text(is_unimodular(matrix)) << "\n";
                if (prim.primitive) {
                    auto const g = pf_general(matrix);
                    out << "lambda: " << fixed(g.lambda, 6) << " (power iteration, uncertified)\n";
                }
            }
            (void)n;
            return 0;
        };
    });

    // rules
    Source rules_src;
    auto* rules = app.add_subcommand("rules", "print the substitution in rules format");
    rules_src.attach(rules);
    rules->callback([&] {
        action = [&] {
            out << rules_src.load().to_rules();
            return 0;
        };
    });

    // language
    Source lang_src;
    std::size_t lang_length = 0;
    bool lang_json = false;
    auto* language = app.add_subcommand("language", "legal words of a given length");
    lang_src.attach(language);
    language->add_option("--length", lang_length, "word length")->required()->check(CLI::PositiveNumber);
    language->add_flag("--json", lang_json, "JSON output");
    language->callback([&] {
        action = [&] {
            auto const s = lang_src.load();
            int const n = s.alphabet_size();
            auto const fragment = legal_words(s, lang_length, limits());
            if (lang_json) {
                out << json{{"command", "language"},
                            {"length", fragment.length},
                            {"count", fragment.words.size()},
                            {"depth", fragment.depth},
                            {"words", word_list(fragment.words, n)}}
                           .dump(2)
                    << "\n";
            } else {
                out << "# length " << fragment.length << ": " << fragment.words.size() << " words, stable from depth "
                    << fragment.depth << "\n";
                for (auto const& x : fragment.words) out << to_string(x, n) << "\n";
            }
            return 0;
        };
    });

    // gamma
    int g_n = 0, g_p = 0;
    std::size_t g_k = 0;
    std::string g_word = "a";
    bool g_cuts = false;
    auto* gamma = app.add_subcommand("gamma", "iterate the sliding-block map");
    gamma->add_option("n", g_n)->required();
    gamma->add_option("p", g_p)->required();
    gamma->add_option("k", g_k)->required();
    gamma->add_option("--word", g_word, "starting word (default a)");
    gamma->add_flag("--show-cuts", g_cuts, "separate the blocks produced by the last step");
    gamma->callback([&] {
        action = [&] {
            check_np(g_n, g_p);
            auto const l = limits();
            Word const start = parse_word(g_word, g_n);
            if (start.empty()) throw DomainError("the starting word must be nonempty");
            if (g_cuts && g_k > 0) {
                auto const blocks = gamma_blocks(g_n, g_p, gamma_power(g_n, g_p, g_k - 1, start, l));
                for (std::size_t i = 0; i < blocks.size(); ++i) out << (i ? "|" : "") << to_string(blocks[i], g_n);
                out << "\n";
            } else {
                out << to_string(gamma_power(g_n, g_p, g_k, start, l), g_n) << "\n";
            }
            return 0;
        };
    });

    // decompose
    int d_n = 0, d_p = 0;
    std::size_t d_k = 0;
    std::string d_word;
    bool d_json = false;
    auto* decompose = app.add_subcommand("decompose", "all level-k inflation word decompositions");
    decompose->add_option("n", d_n)->required();
    decompose->add_option("p", d_p)->required();
    decompose->add_option("k", d_k)->required()->check(CLI::PositiveNumber);
    decompose->add_option("word", d_word)->required();
    decompose->add_flag("--json", d_json, "JSON output");
    decompose->callback([&] {
        action = [&] {
            check_np(d_n, d_p);
            LegalityOracle oracle(noble_pisa(d_n, d_p), limits());
            Decomposer decomposer(oracle, d_k);
            auto const set = decomposer.enumerate(parse_word(d_word, d_n));
            auto const verdict = Decomposer::judge(set);
            if (d_json) {
                out << decomposition_json(set, verdict, d_n, d_p).dump(2) << "\n";
                return 0;
            }
            out << "word: " << to_string(set.word, d_n) << "\n";
            out << "level: " << set.level << "\n";
            out << "decompositions: " << set.items.size() << "\n";
            for (auto const& d : set.items) out << "  " << to_string(d, d_n) << "\n";
            out << "recognisable: " << bool_text(verdict.recognisable);
            if (!verdict.reason.empty()) out << " (" << verdict.reason << ")";
            out << "\n";
            return 0;
        };
    });

    // recognise
    int r_n = 0, r_p = 0;
    std::size_t r_level = 1;
    std::string r_word;
    auto* recognise = app.add_subcommand("recognise", "decide level-k recognisability");
    recognise->add_option("n", r_n)->required();
    recognise->add_option("p", r_p)->required();
    recognise->add_option("--level", r_level, "level k")->check(CLI::PositiveNumber);
    recognise->add_option("--word", r_word, "word (default: the constructed candidate for this level)");
    recognise->callback([&] {
        action = [&] {
            check_np(r_n, r_p);
            auto const l = limits();
            Word const u = r_word.empty() ? recognisable_candidate(r_n, r_p, r_level, l) : parse_word(r_word, r_n);
            LegalityOracle oracle(noble_pisa(r_n, r_p), l);
            Decomposer decomposer(oracle, r_level);
            auto const set = decomposer.enumerate(u);
            auto const verdict = Decomposer::judge(set);
            out << "recognisable: " << bool_text(verdict.recognisable) << "; ";
            if (verdict.recognisable) {
                out << (set.items.size() == 1 ? "decomposition " : "decompositions ");
                for (std::size_t i = 0; i < set.items.size(); ++i) out << (i ? " " : "") << to_string(set.items[i], r_n);
            } else {
                out << verdict.reason;
            }
            out << "\n";
            return 0;
        };
    });

    // numeration
    int num_n = 0, num_p = 0;
    std::string num_value;
    bool num_all = false, num_greedy = false, num_json = false;
    auto* numeration = app.add_subcommand("numeration", "(n,p)-representations of N");
    numeration->add_option("n", num_n)->required();
    numeration->add_option("p", num_p)->required();
    numeration->add_option("N", num_value)->required();
    auto* all_flag = numeration->add_flag("--all", num_all, "every representation (default)");
    numeration->add_flag("--greedy", num_greedy, "the greedy representation only")->excludes(all_flag);
    numeration->add_flag("--json", num_json, "JSON output");
    numeration->callback([&] {
        action = [&] {
            check_np(num_n, num_p);
            if (num_value.empty() || !std::all_of(num_value.begin(), num_value.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
                throw DomainError("N must be a nonnegative integer");
            }
            BigInt const value(num_value);
            std::vector<NumerationRep> reps;
            if (num_greedy) {
                reps.push_back(greedy_representation(value, num_n, num_p));
            } else {
                reps = all_representations(value, num_n, num_p);
            }
            if (num_json) {
                json list = json::array();
                for (auto const& r : reps) list.push_back(rep_text(r, num_p));
                out << json{{"command", "numeration"}, {"n", num_n}, {"p", num_p}, {"N", num_value}, {"representations", list}}.dump(2)
                    << "\n";
            } else {
                for (auto const& r : reps) out << rep_text(r, num_p) << "\n";
            }
            return 0;
        };
    });

    // semimix
    int sm_n = 0, sm_p = 0;
    std::string sm_word;
    std::size_t sm_gap = 0;
    std::vector<std::size_t> sm_scan;
    bool sm_json = false;
    auto* semimix = app.add_subcommand("semimix", "constructive semi-mixing witnesses");
    semimix->add_option("n", sm_n)->required();
    semimix->add_option("p", sm_p)->required();
    semimix->add_option("--word", sm_word, "legal word t")->required();
    auto* gap_opt = semimix->add_option("--gap", sm_gap, "gap length m");
    semimix->add_option("--scan", sm_scan, "scan gaps A..B")->expected(2)->excludes(gap_opt);
    semimix->add_flag("--json", sm_json, "JSON output");
    semimix->callback([&] {
        action = [&] {
            check_np(sm_n, sm_p);
            if (sm_scan.empty() && !*gap_opt) throw DomainError("semimix needs --gap M or --scan A B");
            std::size_t const lo = sm_scan.empty() ? sm_gap : sm_scan[0];
            std::size_t const hi = sm_scan.empty() ? sm_gap : sm_scan[1];
            if (hi < lo) throw DomainError("--scan needs A <= B");
            int const n = sm_n;
            LegalityOracle oracle(noble_pisa(sm_n, sm_p), limits());
            Word const t = parse_word(sm_word, n);
            auto const embedding = find_embedding(oracle, t);
            std::size_t const threshold =
                embedding.y.size() + lengths(sm_n, sm_p, embedding.q + 1)[embedding.q].convert_to<std::size_t>();
            json witnesses = json::array();
            int status = 0;
            if (!sm_json) {
                out << "t = " << to_string(t, n) << "\n";
                out << "embedding: q = " << embedding.q << ", h = " << to_string(embedding.h, n) << ", y = "
                    << to_string(embedding.y, n) << ", hty = " << to_string(embedding.inflation_word, n) << "\n";
                out << "threshold N = " << threshold << "\n";
            }
            for (std::size_t m = lo; m <= hi; ++m) {
                if (m < threshold) {
                    if (sm_scan.empty()) {
                        throw DomainError("gap " + std::to_string(m) + " is below the threshold N(t) = " + std::to_string(threshold));
                    }
                    witnesses.push_back({{"m", m}, {"status", "below_threshold"}});
                    if (!sm_json) out << "m = " << m << ": below threshold\n";
                    continue;
                }
                try {
                    auto const wit = semi_mixing_witness(oracle, t, m, &embedding);
                    json windows = json::array();
                    for (auto const& x : wit.stage_windows) windows.push_back(to_string(x, n));
                    witnesses.push_back({{"m", m},
                                         {"status", "certified"},
                                         {"v", to_string(wit.v, n)},
                                         {"w", to_string(wit.w, n)},
                                         {"case", wit.construction_case},
                                         {"representation", rep_text(wit.representation, sm_p)},
                                         {"u", to_string(wit.u, n)},
                                         {"stage_windows", windows}});
                    if (!sm_json) {
                        out << "m = " << m << ": v = " << to_string(wit.v, n) << ", w = " << to_string(wit.w, n)
                            << " (case " << wit.construction_case << ", representation "
                            << rep_text(wit.representation, sm_p) << ", certified)\n";
                    }
                } catch (ConstructionError const& e) {
                    if (sm_scan.empty()) throw;
                    status = 1;
                    witnesses.push_back({{"m", m}, {"status", "failed"}, {"detail", e.what()}});
                    if (!sm_json) out << "m = " << m << ": construction failed: " << e.what() << "\n";
                }
            }
            if (sm_json) {
                out << json{{"command", "semimix"},
                            {"n", sm_n},
                            {"p", sm_p},
                            {"t", to_string(t, n)},
                            {"embedding", embedding_json(embedding, n)},
                            {"threshold", threshold},
                            {"witnesses", witnesses}}
                           .dump(2)
                    << "\n";
            }
            return status;
        };
    });

    // gaps
    int gp_n = 0, gp_p = 0;
    std::string gp_left, gp_right;
    std::size_t gp_max = 0;
    double gp_budget = 2e7;
    bool gp_force = false;
    auto* gaps = app.add_subcommand("gaps", "gap lengths m for which left x right is legal with |x| = m");
    gaps->add_option("n", gp_n)->required();
    gaps->add_option("p", gp_p)->required();
    gaps->add_option("--left", gp_left, "left word u")->required();
    gaps->add_option("--right", gp_right, "right word v")->required();
    gaps->add_option("--max", gp_max, "largest gap")->required();
    gaps->add_option("--budget", gp_budget, "cost budget before --force is needed")->check(CLI::PositiveNumber);
    gaps->add_flag("--force", gp_force, "run even when the estimate exceeds the budget");
    gaps->callback([&] {
        action = [&] {
            check_np(gp_n, gp_p);
            int const n = gp_n;
            Word const left = parse_word(gp_left, n);
            Word const right = parse_word(gp_right, n);
            if (left.empty() || right.empty()) throw DomainError("left and right words must be nonempty");
            double const cost = gap_cost_estimate(gp_n, gp_p, left.size() + gp_max + right.size());
            std::ostringstream estimate;
            estimate << std::setprecision(3) << cost;
            err << "estimated cost: " << estimate.str() << " word extensions\n";
            if (cost > gp_budget && !gp_force) {
                throw ResourceCapError("estimated cost " + estimate.str() + " exceeds the budget; rerun with --force");
            }
            LegalityOracle oracle(noble_pisa(gp_n, gp_p), limits());
            auto const spectrum = gap_spectrum(oracle, left, right, gp_max);
            out << json{{"command", "gaps"},
                        {"n", gp_n},
                        {"p", gp_p},
                        {"left", to_string(left, n)},
                        {"right", to_string(right, n)},
                        {"m_max", gp_max},
                        {"present", spectrum.present},
                        {"absent", spectrum.absent}}
                       .dump(2)
                << "\n";
            return 0;
        };
    });

    // spectral
    int sp_n = 0, sp_p = 0;
    double sp_tol = 1e-12;
    auto* spectral = app.add_subcommand("spectral", "Perron-Frobenius data and Pisot checks (JSON)");
    spectral->add_option("n", sp_n)->required();
    spectral->add_option("p", sp_p)->required();
    spectral->add_option("--tol", sp_tol, "eigenvalue tolerance")->check(CLI::Range(1e-15, 1e-3));
    spectral->callback([&] {
        action = [&] {
            check_np(sp_n, sp_p);
            auto const data = spectral_data(sp_n, sp_p, sp_tol);
            json roots = json::array();
            for (auto const& r : data.pisot.other_roots) {
                roots.push_back({{"re", r.value.real()}, {"im", r.value.imag()}, {"modulus", r.modulus}, {"residual", r.residual}});
            }
            out << json{{"command", "spectral"},
                        {"n", sp_n},
                        {"p", sp_p},
                        {"characteristic_polynomial", char_poly(sp_n, sp_p).to_string()},
                        {"lambda", data.eigenvalue.lambda},
                        {"enclosure", {data.eigenvalue.enclosure.lower, data.eigenvalue.enclosure.upper}},
                        {"residual", data.eigenvalue.residual},
                        {"R", data.right_eigenvector},
                        {"other_roots", roots},
                        {"modulus_product", data.pisot.modulus_product},
                        {"pisot", data.pisot.status == PisotStatus::pisot},
                        {"pisot_status", to_string(data.pisot.status)},
                        {"unimodular", data.unimodular},
                        {"brauer", data.brauer}}
                       .dump(2)
                << "\n";
            return 0;
        };
    });

    // entropy
    std::vector<int> e_np;
    std::size_t e_m = 3;
    std::vector<int> e_table;
    std::string e_csv, e_svg;
    bool e_json = false;
    auto* entropy = app.add_subcommand("entropy", "topological entropy bounds");
    entropy->add_option("n_p", e_np, "n, and p unless --table is given")->expected(1, 2)->required();
    entropy->add_option("--m", e_m, "largest inflation level for the general bound")->check(CLI::PositiveNumber);
    entropy->add_option("--table", e_table, "closed-form bounds for p in [p_min, p_max]")->expected(2);
    entropy->add_option("--csv", e_csv, "write the table as CSV");
    entropy->add_option("--svg", e_svg, "write the table as an SVG chart");
    entropy->add_flag("--json", e_json, "JSON output");
    entropy->callback([&] {
        action = [&] {
            int const n = e_np[0];
            if (!e_table.empty()) {
                check_np(n, std::max(1, e_table[0]));
                auto const rows = figure2_rows(n, e_table[0], e_table[1]);
                if (!e_csv.empty()) write_file(e_csv, figure2_csv(rows));
                if (!e_svg.empty()) write_file(e_svg, figure2_svg(rows, n));
                if (e_json) {
                    json list = json::array();
                    for (auto const& r : rows) {
                        list.push_back({{"p", r.p},
                                        {"lower_eq9", r.lower_eq9},
                                        {"upper_eq9", r.upper_eq9},
                                        {"lower_eq8", r.lower_eq8},
                                        {"upper_eq8", r.upper_eq8}});
                    }
                    out << json{{"command", "entropy_table"}, {"n", n}, {"rows", list}}.dump(2) << "\n";
                } else {
                    out << "p lower_eq9 upper_eq9 lower_eq8 upper_eq8\n";
                    for (auto const& r : rows) {
                        out << r.p << ' ' << fixed(r.lower_eq9, 6) << ' ' << fixed(r.upper_eq9, 6) << ' '
                            << fixed(r.lower_eq8, 6) << ' ' << fixed(r.upper_eq8, 6) << "\n";
                    }
                }
                return 0;
            }
            if (e_np.size() != 2) throw DomainError("entropy needs n p, or n with --table p_min p_max");
            if (!e_csv.empty() || !e_svg.empty()) throw DomainError("--csv and --svg need --table");
            int const p = e_np[1];
            check_np(n, p);
            auto const report = entropy_report(n, p, e_m, limits());
            if (e_json) {
                json rows = json::array();
                for (auto const& r : report.rows) {
                    rows.push_back({{"m", r.m}, {"q", r.q}, {"lower", r.bounds.lower}, {"upper", r.bounds.upper}});
                }
                json doc = {{"command", "entropy"},
                            {"n", n},
                            {"p", p},
                            {"lambda", report.perron.lambda},
                            {"R", report.perron.right_eigenvector},
                            {"rows", rows},
                            {"closed_lambda", {{"lower", report.closed_lambda.lower}, {"upper", report.closed_lambda.upper}}}};
                if (report.has_closed_np) doc["closed_np"] = {{"lower", report.closed_np.lower}, {"upper", report.closed_np.upper}};
                out << doc.dump(2) << "\n";
                return 0;
            }
            out << "lambda: " << fixed(report.perron.lambda, 12) << "\n";
            for (auto const& r : report.rows) {
                out << "m = " << r.m << ": " << fixed(r.bounds.lower, 9) << " <= h_top <= " << fixed(r.bounds.upper, 9) << "\n";
            }
            out << "closed form in lambda: " << fixed(report.closed_lambda.lower, 9) << " <= h_top <= "
                << fixed(report.closed_lambda.upper, 9) << "\n";
            if (report.has_closed_np) {
                out << "closed form in (n,p): " << fixed(report.closed_np.lower, 9) << " <= h_top <= "
                    << fixed(report.closed_np.upper, 9) << "\n";
            }
            return 0;
        };
    });

    // verify
    int v_n = 0, v_p = 0, v_budget = 1;
    auto* verify = app.add_subcommand("verify", "run every verifier (JSON)");
    verify->add_option("n", v_n)->required();
    verify->add_option("p", v_p)->required();
    verify->add_option("--budget", v_budget, "scales levels, ranges and sample counts")->check(CLI::PositiveNumber);
    verify->callback([&] {
        action = [&] {
            out << verify_all(v_n, v_p, v_budget, limits()).dump(2) << "\n";
            return 0;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 0;
    } catch (DomainError const& e) {
        if (debug) throw;
        err << "npx: " << e.what() << "\n";
        return 2;
    } catch (ResourceCapError const& e) {
        if (debug) throw;
        err << "npx: resource cap: " << e.what() << "\n";
        return 3;
    } catch (std::bad_alloc const&) {
        if (debug) throw;
        err << "npx: resource cap: memory exhausted\n";
        return 3;
    } catch (ConstructionError const& e) {
        if (debug) throw;
        err << "npx: construction failed: " << e.what() << "\n";
        return 1;
    } catch (std::exception const& e) {
        if (debug) throw;
        err << "npx: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace npx::cli

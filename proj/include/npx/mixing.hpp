#pragma once

#include <string>
#include <vector>

#include "npx/decomposition.hpp"
#include "npx/numeration.hpp"

namespace npx {

/// W: union of psi(alpha_i) over the non-final letters, canonical order.
std::vector<Word> mixing_window(int n, int p);

struct Embedding {
    std::size_t q = 0;
    Word h;
    Word y;
    Word inflation_word;  ///< h t y, an element of psi^{q+2}(alpha_1)
};

/// Least q with t a factor of some element of psi^{q+2}(alpha_1). Among the
/// occurrences at that level the leftmost one (shortest h) wins, ties broken
/// by the canonical order of the inflation word.
Embedding find_embedding(LegalityOracle& oracle, Word const& t, std::size_t q_max = 6);

struct SemiMixWitness {
    Word t;
    std::size_t m = 0;
    Word v;
    Word w;
    Embedding embedding;
    std::size_t threshold = 0;       ///< N(t) = |y| + L_q
    NumerationRep representation;    ///< representation of m - |y| that drove the construction
    int construction_case = 1;       ///< 1: exactly q+1 digits, 2: more digits
    Word u;                          ///< initial block product, u w a prefix of psi^{q+2}(alpha_1)
    std::vector<Word> stage_windows; ///< w^(r) found at each inflation step (case 2)
    bool certified = false;          ///< t v w passed the legality oracle
};

/// Builds v with |v| = m and w in W such that t v w is legal, following the
/// inductive construction: block product for the top q+1 digits, a prefix
/// search in psi^{q+2}(alpha_1), then one inflation step per remaining digit.
/// Throws DomainError when m < N(t), ConstructionError if a guaranteed search
/// comes back empty.
SemiMixWitness semi_mixing_witness(LegalityOracle& oracle, Word const& t, std::size_t m,
                                   Embedding const* embedding = nullptr);

struct GapSpectrum {
    Word left;
    Word right;
    std::size_t m_max = 0;
    std::vector<std::size_t> present;
    std::vector<std::size_t> absent;
};

/// m is present when some legal word of length |u| + m + |v| starts with u and
/// ends with v. Built by extending the legal right-continuations of u one
/// letter at a time.
GapSpectrum gap_spectrum(LegalityOracle& oracle, Word const& left, Word const& right, std::size_t m_max);

}  // namespace npx

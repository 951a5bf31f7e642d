#pragma once

#include <vector>

#include "npx/errors.hpp"
#include "npx/spectral.hpp"
#include "npx/words.hpp"

namespace npx {

/// Left-radius-1 sliding block realisation for psi_{n,p}:
///   alpha_n                         -> alpha_1
///   alpha_i (left neighbour != a_n) -> alpha_{i+1} alpha_1^p
///   alpha_i (left neighbour == a_n) -> alpha_1^p alpha_{i+1}
/// The first letter has no left neighbour and uses the middle rule.
Word gamma_apply(int n, int p, Word const& w);

/// Same as gamma_apply, but returns one block per input letter.
std::vector<Word> gamma_blocks(int n, int p, Word const& w);

/// k-fold composition; k = 0 is the identity.
Word gamma_power(int n, int p, std::size_t k, Word const& w, Limits const& limits = {});

/// L_0..L_d with L_m = (p+1)^m for m < n and
/// L_m = p(L_{m-1} + ... + L_{m-n+1}) + L_{m-n} afterwards.
std::vector<BigInt> lengths(int n, int p, std::size_t d);

/// reflect(Gamma^k(alpha_1)) . Gamma^k(alpha_1). Requires k >= 1, p >= 2.
Word recognisable_candidate(int n, int p, std::size_t k, Limits const& limits = {});

}  // namespace npx

#pragma once

#include <stdexcept>
#include <string>

namespace npx {

/// A precondition on the mathematical input failed (illegal word, p out of
/// range, letter outside the alphabet, ...). Maps to CLI exit status 2.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured resource cap (set cardinality, depth, word length) was hit.
/// Maps to CLI exit status 3.
class ResourceCapError : public std::runtime_error {
public:
    explicit ResourceCapError(const std::string& what) : std::runtime_error(what) {}
};

/// An existential step that is guaranteed to succeed did not. Always a bug or
/// an exhausted search budget; never swallowed.
class ConstructionError : public std::runtime_error {
public:
    explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

struct Limits {
    std::size_t max_set = 10'000'000;
    std::size_t max_depth = 12;
    std::size_t max_word_length = 1'000'000;
    std::size_t max_total_letters = 400'000'000;
};

}  // namespace npx

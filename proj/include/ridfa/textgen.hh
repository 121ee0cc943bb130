#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "ridfa/dfa.hh"
#include "ridfa/nfa.hh"
#include "ridfa/types.hh"

namespace ridfa {

enum class GenMode {
    /// Independent symbols drawn uniformly from the alphabet.
    Uniform,
    /// Random walk over the minimal DFA of the language.
    Walk,
};

std::string_view to_string(GenMode mode);
std::optional<GenMode> parse_gen_mode(std::string_view name);

/// Uniform text over `symbol_count` symbols. Reproducible for a given seed.
Word gen_uniform(std::size_t length, std::size_t symbol_count, std::uint64_t seed);

/// Walk over `dfa` from its initial state, picking uniformly among the
/// defined transitions. `dfa` should be trimmed (as minimize_dfa returns it)
/// so every prefix of the output stays extendable to an accepted word. A state
/// without successors restarts the walk at the initial state. Throws
/// ValidationError if the language is empty.
Word gen_walk(const Dfa& dfa, std::size_t length, std::uint64_t seed);

/// Dispatch over the mode; walk mode minimizes the NFA first.
Word gen_text(GenMode mode, std::size_t length, std::uint64_t seed, const Nfa& nfa);

} // namespace ridfa

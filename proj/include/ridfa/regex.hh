#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ridfa/alphabet.hh"
#include "ridfa/nfa.hh"

namespace ridfa {

struct RegexNode {
    enum class Kind { Literal, Class, AnyChar, Concat, Alt, Star, Plus, Opt, Epsilon };

    Kind kind = Kind::Epsilon;
    /// Literal: exactly one symbol. Class: sorted distinct symbols.
    std::vector<SymbolId> symbols;
    /// Concat/Alt: two or more. Star/Plus/Opt: exactly one.
    std::vector<RegexNode> children;
};

/// A parsed pattern together with the alphabet its symbols refer to.
struct Regex {
    RegexNode root;
    Alphabet alphabet;
};

struct RegexOptions {
    /// Byte alphabet to parse against. When unset the alphabet is implied:
    /// every byte used as a literal or class member, in ascending order.
    std::optional<Alphabet> alphabet;
};

/// Parses the supported syntax: literals, `\x` escapes, `.`, `|`, `*`, `+`,
/// `?`, groups and `[...]` classes with ranges. Unsupported constructs are
/// errors; ParseError::position() is the byte offset.
Regex parse_regex(std::string_view pattern, const RegexOptions& options = {});

/// Position automaton: one state per symbol position plus the initial state 0.
Nfa glushkov_nfa(const Regex& regex);

/// Position automaton with bisimilar states merged.
Nfa regex_to_nfa(const Regex& regex);

/// The pattern `(a|b)*a(a|b)...(a|b)` with `k` trailing groups.
std::string regexp_family_pattern(unsigned k);

/// Number of symbol positions in the tree.
std::size_t position_count(const RegexNode& node);

} // namespace ridfa

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ridfa {

/// Dense index of a state inside one automaton.
using StateId = std::uint32_t;
/// Dense index of a symbol inside an Alphabet.
using SymbolId = std::uint32_t;

/// A set of states, always kept sorted ascending and without duplicates.
using StateSet = std::vector<StateId>;
/// A text already mapped onto an alphabet.
using Word = std::vector<SymbolId>;

inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

// Errors. Everything user-facing derives from Error; InternalError marks
// broken invariants that no input should be able to trigger.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}
    /// Byte offset for regex errors, line number for document errors.
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnsupportedFormatError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class ForeignSymbolError : public Error {
public:
    ForeignSymbolError(const std::string& what, std::size_t offset)
        : Error(what), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class LimitExceededError : public Error {
public:
    using Error::Error;
};

class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Inserts `value` into a sorted set, keeping it sorted. Returns false if present.
bool insert_sorted(StateSet& set, StateId value);
/// True if `value` is in the sorted set.
bool contains(const StateSet& set, StateId value);
/// True if two sorted sets share an element.
bool intersects(const StateSet& lhs, const StateSet& rhs);

/// Hash for StateSet keys in subset constructions.
struct StateSetHash {
    std::size_t operator()(const StateSet& set) const noexcept;
};

} // namespace ridfa

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ridfa/dfa.hh"
#include "ridfa/nfa.hh"
#include "ridfa/recognizer.hh"
#include "ridfa/ri_dfa.hh"

namespace ridfa {

using Machine = std::variant<Nfa, Dfa, RiDfa>;

// --- Timbuk word automata ---------------------------------------------------

struct TimbukAutomaton {
    std::string name;
    Nfa nfa;
    /// Non-fatal findings, e.g. a machine without initial states.
    std::vector<std::string> warnings;
};

/// Reads the word-automaton subset of the Timbuk format (`Ops`, `Automaton`,
/// `States`, `Final States`, `Transitions`). Nullary rules `x -> q` make q
/// initial; unary rules `a(q) -> r` become edges q -a-> r. Unary operators
/// form the alphabet in declaration order.
///
/// Throws UnsupportedFormatError for operators of arity two or more and
/// ParseError (position() = line number) for malformed input.
TimbukAutomaton parse_timbuk(std::string_view source);
TimbukAutomaton load_timbuk(const std::filesystem::path& path);

// --- Automaton documents ----------------------------------------------------

inline constexpr int kDocumentFormatVersion = 1;

/// JSON document with a `format_version` field and a `kind` tag.
std::string save_automaton(const Machine& machine);
/// Inverse of save_automaton; validates every machine invariant.
Machine load_automaton(std::string_view document);

void write_automaton(const std::filesystem::path& path, const Machine& machine);
Machine read_automaton(const std::filesystem::path& path);

std::string_view kind_name(const Machine& machine);

// --- Texts ------------------------------------------------------------------

enum class ForeignBytePolicy {
    /// Throw ForeignSymbolError at the first byte outside the alphabet.
    Strict,
    /// Map such bytes to a sink symbol (id = alphabet size) that no machine
    /// has a transition for, so every run through it dies.
    Sink,
};

Word map_text(std::string_view bytes, const Alphabet& alphabet,
              ForeignBytePolicy policy = ForeignBytePolicy::Strict);
Word load_text(const std::filesystem::path& path, const Alphabet& alphabet,
               ForeignBytePolicy policy = ForeignBytePolicy::Strict);

std::string read_file(const std::filesystem::path& path);

// --- Reports ----------------------------------------------------------------

/// Structured (JSON) rendering of a report. Timings are included unless
/// `with_timings` is false.
std::string report_to_json(const RecognitionReport& report, bool with_timings = true);

} // namespace ridfa

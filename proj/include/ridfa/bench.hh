#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ridfa/dfa.hh"
#include "ridfa/nfa.hh"
#include "ridfa/recognizer.hh"
#include "ridfa/ri_dfa.hh"
#include "ridfa/textgen.hh"

namespace ridfa {

/// The three chunk automata of one source language.
struct BenchMachines {
    Nfa nfa;
    Dfa dfa;
    RiDfa ridfa;
};

/// Minimal DFA and RI-DFA (optionally interface-reduced) for `nfa`.
BenchMachines prepare_machines(const Nfa& nfa, bool reduce = false, std::size_t max_states = 0);

struct BenchText {
    std::string label;
    Word text;
};

struct BenchConfig {
    std::string benchmark = "bench";
    std::vector<Variant> variants{Variant::Dfa, Variant::Nfa, Variant::RiDfa};
    std::vector<std::size_t> chunk_counts = default_chunk_counts();
    std::vector<BenchText> texts;
    std::size_t reps = 5;
    Execution execution = Execution::Parallel;

    /// 2, 10, 18, ..., 66.
    static std::vector<std::size_t> default_chunk_counts();
    /// Throws ValidationError unless there is at least one variant, one
    /// positive chunk count, one text and one repetition.
    void validate() const;
};

struct BenchRow {
    std::string benchmark;
    std::string text;
    Variant variant = Variant::Dfa;
    std::size_t chunks = 0;
    std::size_t text_length = 0;
    std::uint64_t transitions_total = 0;
    std::vector<std::uint64_t> transitions_per_chunk;
    bool accepted = false;
    /// Medians over the repetitions.
    double reach_ms = 0.0;
    double join_ms = 0.0;
    /// Other-variant total over the RI-DFA total of the same (text, chunks)
    /// cell; empty when the RI-DFA was not run or made no transitions.
    std::optional<double> ratio_dfa_rid;
    std::optional<double> ratio_nfa_rid;
    /// Set when the cell failed; the counters are then meaningless.
    std::string error;
};

/// Runs every (text, variant, chunk count) cell in sequence. Transition
/// counts and verdicts must agree across repetitions (InternalError
/// otherwise); any other failure is recorded in the row and the sweep goes on.
std::vector<BenchRow> run_bench(const BenchMachines& machines, const BenchConfig& config);

/// CSV with a header row. Timing columns are omitted if `with_timings` is
/// false, which makes the output reproducible byte for byte.
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool with_timings = true);

} // namespace ridfa

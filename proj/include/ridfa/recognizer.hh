#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ridfa/dfa.hh"
#include "ridfa/nfa.hh"
#include "ridfa/ri_dfa.hh"
#include "ridfa/types.hh"

namespace ridfa {

/// Which kind of chunk automaton drives the recognition.
enum class Variant { Dfa, Nfa, RiDfa };

std::string_view to_string(Variant variant);
std::optional<Variant> parse_variant(std::string_view name);

struct Chunk {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t size() const { return end - begin; }
};

/// Contiguous non-empty chunks covering the text.
struct ChunkPlan {
    std::size_t text_length = 0;
    std::vector<Chunk> chunks;
};

/// Near-equal split: sizes differ by at most one, longer chunks first.
/// `chunks` is clamped to `text_length`. Throws ValidationError on empty
/// text or zero chunks.
ChunkPlan split_chunks(std::size_t text_length, std::size_t chunks);

/// Partial map from the possible initial states of a chunk to the states its
/// runs end in, plus the work spent. Deterministic variants have exactly one
/// image per start.
class ChunkMapping {
public:
    /// Records a surviving run. Starts must be added in ascending order.
    void add(StateId start, std::span<const StateId> ends);
    void add(StateId start, StateId end) { add(start, std::span<const StateId>(&end, 1)); }

    /// PIS: starts whose run survived the chunk, ascending.
    const StateSet& domain() const { return domain_; }
    /// Image of `start`, empty if the start is not in the domain.
    std::span<const StateId> image_of(StateId start) const;
    std::size_t size() const { return domain_.size(); }

    /// Successful moves over all runs.
    std::uint64_t transitions = 0;
    /// Runs started, including those that die at once.
    std::size_t runs = 0;

    bool operator==(const ChunkMapping& other) const = default;

private:
    StateSet domain_;
    std::vector<std::uint32_t> offsets_{0};
    std::vector<StateId> targets_;
};

/// Runs the table from every start over `chunk`. A run stops at the first
/// missing transition and then contributes no entry.
ChunkMapping reach_deterministic(const TableView& table, const StateSet& starts,
                                 std::span<const SymbolId> chunk);

/// Frontier simulation per start. Transitions count every (state, symbol,
/// successor) edge explored; the image is the final frontier if non-empty.
ChunkMapping reach_nondeterministic(const Nfa& nfa, const StateSet& starts,
                                    std::span<const SymbolId> chunk);

/// One fold of the join recurrence.
struct JoinStep {
    /// States handed over from the previous chunk (mapped through the
    /// interface function for RI-DFA); for the first chunk, its starts.
    StateSet carried;
    /// Possible initial states of this chunk.
    StateSet pis;
    /// Possible last active states of this chunk.
    StateSet plas;
};

struct JoinResult {
    bool accepted = false;
    std::vector<JoinStep> steps;
};

/// PLAS_i = lambda_i(PLAS_{i-1} & PIS_i); accept iff PLAS_c meets `finals`.
/// The first mapping must have been computed from `first_starts`.
JoinResult join_classic(std::span<const ChunkMapping> mappings, const StateSet& first_starts,
                        const StateSet& finals, std::size_t state_count);

/// Same recurrence with the interface function applied to PLAS_{i-1}
/// (interface_map_min, which covers reduced and unreduced machines).
JoinResult join_rid(std::span<const ChunkMapping> mappings, const RiDfa& ridfa);

struct RecognitionReport {
    bool accepted = false;
    Variant variant = Variant::Dfa;
    std::size_t text_length = 0;
    std::size_t chunk_count = 0;
    std::vector<std::uint64_t> per_chunk_transitions;
    std::vector<std::size_t> per_chunk_runs;
    std::uint64_t total_transitions = 0;
    /// Wall-clock, informational only.
    double reach_ms = 0.0;
    double join_ms = 0.0;
    std::vector<JoinStep> join_trace;
};

enum class Execution { Parallel, Serial };

/// Start states of chunk `index`: the designated initials for the first
/// chunk, the full speculative start set otherwise.
StateSet chunk_starts(const Dfa& dfa, std::size_t index);
StateSet chunk_starts(const Nfa& nfa, std::size_t index);
StateSet chunk_starts(const RiDfa& ridfa, std::size_t index);

/// Reach phase over every chunk of `plan`. Parallel runs one OpenMP task per
/// chunk; Serial is the reference loop. Both return identical mappings.
std::vector<ChunkMapping> reach_phase(const Dfa& dfa, std::span<const SymbolId> text,
                                      const ChunkPlan& plan, Execution execution);
std::vector<ChunkMapping> reach_phase(const Nfa& nfa, std::span<const SymbolId> text,
                                      const ChunkPlan& plan, Execution execution);
std::vector<ChunkMapping> reach_phase(const RiDfa& ridfa, std::span<const SymbolId> text,
                                      const ChunkPlan& plan, Execution execution);

/// Speculative chunked recognition: split, reach, serial join.
RecognitionReport recognize_parallel(const Dfa& dfa, std::span<const SymbolId> text,
                                     std::size_t chunks, Execution execution = Execution::Parallel);
RecognitionReport recognize_parallel(const Nfa& nfa, std::span<const SymbolId> text,
                                     std::size_t chunks, Execution execution = Execution::Parallel);
RecognitionReport recognize_parallel(const RiDfa& ridfa, std::span<const SymbolId> text,
                                     std::size_t chunks, Execution execution = Execution::Parallel);

/// Plain left-to-right run over the whole text from the designated initials.
RecognitionReport recognize_serial(const Dfa& dfa, std::span<const SymbolId> text);
RecognitionReport recognize_serial(const Nfa& nfa, std::span<const SymbolId> text);
RecognitionReport recognize_serial(const RiDfa& ridfa, std::span<const SymbolId> text);

} // namespace ridfa

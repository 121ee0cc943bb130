#include "ridfa/recognizer.hh"

#include <algorithm>
#include <chrono>
#include <exception>
#include <string>

namespace ridfa {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

StateSet all_states(std::size_t n) {
    StateSet out(n);
    for (StateId q = 0; q < n; ++q) { out[q] = q; }
    return out;
}

StateSet intersection(const StateSet& lhs, const StateSet& rhs) {
    StateSet out;
    std::set_intersection(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), std::back_inserter(out));
    return out;
}

// Applies a mapping to a set of starts and returns the sorted union of images.
StateSet apply_mapping(const ChunkMapping& mapping, const StateSet& starts) {
    StateSet out;
    for (StateId q : starts) {
        auto image = mapping.image_of(q);
        out.insert(out.end(), image.begin(), image.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Runs `work(i)` for every chunk. Exceptions are collected per chunk and the
// first one is rethrown after the barrier, so callers never see a partially
// filled result.
template <typename Work>
std::vector<ChunkMapping> for_each_chunk(const ChunkPlan& plan, Execution execution, Work&& work) {
    const auto count = static_cast<std::ptrdiff_t>(plan.chunks.size());
    std::vector<ChunkMapping> out(plan.chunks.size());
    if (execution == Execution::Serial) {
        for (std::ptrdiff_t i = 0; i < count; ++i) { out[i] = work(static_cast<std::size_t>(i)); }
        return out;
    }
    std::vector<std::exception_ptr> errors(plan.chunks.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            out[i] = work(static_cast<std::size_t>(i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) { std::rethrow_exception(e); }
    }
    return out;
}

std::span<const SymbolId> slice(std::span<const SymbolId> text, const Chunk& chunk) {
    return text.subspan(chunk.begin, chunk.size());
}

template <typename Machine, typename JoinFn>
RecognitionReport run_parallel(const Machine& machine, Variant variant,
                               std::span<const SymbolId> text, std::size_t chunks,
                               Execution execution, bool empty_accepts, JoinFn&& join) {
    RecognitionReport report;
    report.variant = variant;
    report.text_length = text.size();
    if (chunks == 0) { throw ValidationError("chunk count must be at least 1"); }
    if (text.empty()) {
        report.accepted = empty_accepts;
        return report;
    }
    ChunkPlan plan = split_chunks(text.size(), chunks);
    report.chunk_count = plan.chunks.size();

    auto reach_start = Clock::now();
    std::vector<ChunkMapping> mappings = reach_phase(machine, text, plan, execution);
    report.reach_ms = elapsed_ms(reach_start);

    for (const auto& m : mappings) {
        report.per_chunk_transitions.push_back(m.transitions);
        report.per_chunk_runs.push_back(m.runs);
        report.total_transitions += m.transitions;
    }
    auto join_start = Clock::now();
    JoinResult joined = join(mappings);
    report.join_ms = elapsed_ms(join_start);
    report.accepted = joined.accepted;
    report.join_trace = std::move(joined.steps);
    return report;
}

RecognitionReport serial_report(Variant variant, std::size_t n, bool accepted,
                                std::uint64_t transitions, std::size_t runs, double ms) {
    RecognitionReport report;
    report.variant = variant;
    report.text_length = n;
    report.accepted = accepted;
    if (n != 0) {
        report.chunk_count = 1;
        report.per_chunk_transitions = {transitions};
        report.per_chunk_runs = {runs};
    }
    report.total_transitions = transitions;
    report.reach_ms = ms;
    return report;
}

} // namespace

std::string_view to_string(Variant variant) {
    switch (variant) {
        case Variant::Dfa: return "dfa";
        case Variant::Nfa: return "nfa";
        case Variant::RiDfa: return "ridfa";
    }
    return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
    if (name == "dfa") { return Variant::Dfa; }
    if (name == "nfa") { return Variant::Nfa; }
    if (name == "ridfa") { return Variant::RiDfa; }
    return std::nullopt;
}

ChunkPlan split_chunks(std::size_t text_length, std::size_t chunks) {
    if (text_length == 0) { throw ValidationError("cannot split an empty text"); }
    if (chunks == 0) { throw ValidationError("chunk count must be at least 1"); }
    chunks = std::min(chunks, text_length);
    ChunkPlan plan;
    plan.text_length = text_length;
    const std::size_t base = text_length / chunks;
    const std::size_t extra = text_length % chunks;
    std::size_t offset = 0;
    for (std::size_t i = 0; i < chunks; ++i) {
        std::size_t size = base + (i < extra ? 1 : 0);
        plan.chunks.push_back({offset, offset + size});
        offset += size;
    }
    return plan;
}

void ChunkMapping::add(StateId start, std::span<const StateId> ends) {
    if (!domain_.empty() && domain_.back() >= start) {
        throw InternalError("chunk mapping starts must be added in ascending order");
    }
    domain_.push_back(start);
    targets_.insert(targets_.end(), ends.begin(), ends.end());
    offsets_.push_back(static_cast<std::uint32_t>(targets_.size()));
}

std::span<const StateId> ChunkMapping::image_of(StateId start) const {
    auto it = std::lower_bound(domain_.begin(), domain_.end(), start);
    if (it == domain_.end() || *it != start) { return {}; }
    auto i = static_cast<std::size_t>(it - domain_.begin());
    return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

ChunkMapping reach_deterministic(const TableView& table, const StateSet& starts,
                                 std::span<const SymbolId> chunk) {
    ChunkMapping mapping;
    const std::size_t width = table.width;
    const StateId* delta = table.delta.data();
    for (StateId start : starts) {
        ++mapping.runs;
        StateId q = start;
        std::size_t steps = 0;
        for (SymbolId a : chunk) {
            if (a >= width) {
                q = kNoState;
                break;
            }
            q = delta[static_cast<std::size_t>(q) * width + a];
            if (q == kNoState) { break; }
            ++steps;
        }
        mapping.transitions += steps;
        if (q != kNoState) { mapping.add(start, q); }
    }
    return mapping;
}

ChunkMapping reach_nondeterministic(const Nfa& nfa, const StateSet& starts,
                                    std::span<const SymbolId> chunk) {
    ChunkMapping mapping;
    std::vector<std::uint8_t> seen(nfa.state_count(), 0);
    StateSet frontier;
    StateSet next;
    for (StateId start : starts) {
        ++mapping.runs;
        frontier.assign(1, start);
        for (SymbolId a : chunk) {
            next.clear();
            if (a < nfa.symbol_count()) {
                for (StateId q : frontier) {
                    auto succ = nfa.successors(q, a);
                    mapping.transitions += succ.size();
                    for (StateId r : succ) {
                        if (!seen[r]) {
                            seen[r] = 1;
                            next.push_back(r);
                        }
                    }
                }
            }
            for (StateId r : next) { seen[r] = 0; }
            frontier.swap(next);
            if (frontier.empty()) { break; }
        }
        if (!frontier.empty()) {
            std::sort(frontier.begin(), frontier.end());
            mapping.add(start, frontier);
        }
    }
    return mapping;
}

JoinResult join_classic(std::span<const ChunkMapping> mappings, const StateSet& first_starts,
                        const StateSet& finals, std::size_t state_count) {
    JoinResult result;
    if (mappings.empty()) { throw InternalError("join needs at least one chunk mapping"); }
    for (StateId q : mappings.front().domain()) {
        if (!contains(first_starts, q)) {
            throw InternalError("first chunk mapping was not computed from the designated initials");
        }
    }
    StateSet plas;
    for (std::size_t i = 0; i < mappings.size(); ++i) {
        JoinStep step;
        step.carried = i == 0 ? first_starts : plas;
        step.pis = mappings[i].domain();
        plas = apply_mapping(mappings[i], intersection(step.carried, step.pis));
        for (StateId q : plas) {
            if (q >= state_count) {
                throw InternalError("PLAS state " + std::to_string(q) + " is not an automaton state");
            }
        }
        step.plas = plas;
        result.steps.push_back(std::move(step));
    }
    result.accepted = intersects(plas, finals);
    return result;
}

JoinResult join_rid(std::span<const ChunkMapping> mappings, const RiDfa& ridfa) {
    JoinResult result;
    if (mappings.empty()) { throw InternalError("join needs at least one chunk mapping"); }
    const StateSet& first = ridfa.designated_initials();
    for (StateId q : mappings.front().domain()) {
        if (!contains(first, q)) {
            throw InternalError("first chunk mapping was not computed from the designated initials");
        }
    }
    StateSet plas;
    for (std::size_t i = 0; i < mappings.size(); ++i) {
        JoinStep step;
        step.carried = i == 0 ? first : interface_map_min(ridfa, plas);
        step.pis = mappings[i].domain();
        plas = apply_mapping(mappings[i], intersection(step.carried, step.pis));
        step.plas = plas;
        result.steps.push_back(std::move(step));
    }
    result.accepted = std::any_of(plas.begin(), plas.end(), [&](StateId p) {
        if (p >= ridfa.state_count()) {
            throw InternalError("PLAS state " + std::to_string(p) + " is not an RI-DFA state");
        }
        return ridfa.is_final(p);
    });
    return result;
}

StateSet chunk_starts(const Dfa& dfa, std::size_t index) {
    if (index == 0) { return StateSet{dfa.initial()}; }
    return all_states(dfa.state_count());
}

StateSet chunk_starts(const Nfa& nfa, std::size_t index) {
    if (index == 0) { return nfa.initials(); }
    return all_states(nfa.state_count());
}

StateSet chunk_starts(const RiDfa& ridfa, std::size_t index) {
    if (index == 0) { return ridfa.designated_initials(); }
    return ridfa.interface();
}

std::vector<ChunkMapping> reach_phase(const Dfa& dfa, std::span<const SymbolId> text,
                                      const ChunkPlan& plan, Execution execution) {
    const StateSet rest = chunk_starts(dfa, 1);
    const StateSet first = chunk_starts(dfa, 0);
    const TableView table = dfa.table();
    return for_each_chunk(plan, execution, [&](std::size_t i) {
        return reach_deterministic(table, i == 0 ? first : rest, slice(text, plan.chunks[i]));
    });
}

std::vector<ChunkMapping> reach_phase(const Nfa& nfa, std::span<const SymbolId> text,
                                      const ChunkPlan& plan, Execution execution) {
    const StateSet rest = chunk_starts(nfa, 1);
    return for_each_chunk(plan, execution, [&](std::size_t i) {
        return reach_nondeterministic(nfa, i == 0 ? nfa.initials() : rest,
                                      slice(text, plan.chunks[i]));
    });
}

std::vector<ChunkMapping> reach_phase(const RiDfa& ridfa, std::span<const SymbolId> text,
                                      const ChunkPlan& plan, Execution execution) {
    const TableView table = ridfa.table();
    return for_each_chunk(plan, execution, [&](std::size_t i) {
        return reach_deterministic(table, i == 0 ? ridfa.designated_initials() : ridfa.interface(),
                                   slice(text, plan.chunks[i]));
    });
}

RecognitionReport recognize_parallel(const Dfa& dfa, std::span<const SymbolId> text,
                                     std::size_t chunks, Execution execution) {
    if (dfa.state_count() == 0) { throw ValidationError("DFA has no states"); }
    const StateSet finals = dfa.finals();
    return run_parallel(dfa, Variant::Dfa, text, chunks, execution, dfa.is_final(dfa.initial()),
                        [&](const std::vector<ChunkMapping>& m) {
                            return join_classic(m, chunk_starts(dfa, 0), finals, dfa.state_count());
                        });
}

RecognitionReport recognize_parallel(const Nfa& nfa, std::span<const SymbolId> text,
                                     std::size_t chunks, Execution execution) {
    return run_parallel(nfa, Variant::Nfa, text, chunks, execution,
                        intersects(nfa.initials(), nfa.finals()),
                        [&](const std::vector<ChunkMapping>& m) {
                            return join_classic(m, nfa.initials(), nfa.finals(), nfa.state_count());
                        });
}

RecognitionReport recognize_parallel(const RiDfa& ridfa, std::span<const SymbolId> text,
                                     std::size_t chunks, Execution execution) {
    const auto& initials = ridfa.designated_initials();
    bool empty_accepts = std::any_of(initials.begin(), initials.end(),
                                     [&](StateId p) { return ridfa.is_final(p); });
    return run_parallel(ridfa, Variant::RiDfa, text, chunks, execution, empty_accepts,
                        [&](const std::vector<ChunkMapping>& m) { return join_rid(m, ridfa); });
}

RecognitionReport recognize_serial(const Dfa& dfa, std::span<const SymbolId> text) {
    if (dfa.state_count() == 0) { throw ValidationError("DFA has no states"); }
    auto start = Clock::now();
    StateId q = dfa.initial();
    std::uint64_t moves = 0;
    for (SymbolId a : text) {
        q = dfa.next(q, a);
        if (q == kNoState) { break; }
        ++moves;
    }
    bool accepted = q != kNoState && dfa.is_final(q);
    return serial_report(Variant::Dfa, text.size(), accepted, moves, 1, elapsed_ms(start));
}

RecognitionReport recognize_serial(const Nfa& nfa, std::span<const SymbolId> text) {
    auto start = Clock::now();
    std::uint64_t moves = 0;
    bool accepted = false;
    // One frontier per initial state, matching the per-start runs of a chunk.
    std::vector<std::uint8_t> seen(nfa.state_count(), 0);
    StateSet frontier;
    StateSet next;
    for (StateId initial : nfa.initials()) {
        frontier.assign(1, initial);
        for (SymbolId a : text) {
            next.clear();
            if (a < nfa.symbol_count()) {
                for (StateId q : frontier) {
                    auto succ = nfa.successors(q, a);
                    moves += succ.size();
                    for (StateId r : succ) {
                        if (!seen[r]) {
                            seen[r] = 1;
                            next.push_back(r);
                        }
                    }
                }
            }
            for (StateId r : next) { seen[r] = 0; }
            frontier.swap(next);
            if (frontier.empty()) { break; }
        }
        accepted = accepted || std::any_of(frontier.begin(), frontier.end(),
                                           [&](StateId q) { return nfa.is_final(q); });
    }
    return serial_report(Variant::Nfa, text.size(), accepted, moves, nfa.initials().size(),
                         elapsed_ms(start));
}

RecognitionReport recognize_serial(const RiDfa& ridfa, std::span<const SymbolId> text) {
    auto start = Clock::now();
    std::uint64_t moves = 0;
    bool accepted = false;
    for (StateId initial : ridfa.designated_initials()) {
        StateId p = initial;
        for (SymbolId a : text) {
            p = ridfa.next(p, a);
            if (p == kNoState) { break; }
            ++moves;
        }
        accepted = accepted || (p != kNoState && ridfa.is_final(p));
    }
    return serial_report(Variant::RiDfa, text.size(), accepted, moves,
                         ridfa.designated_initials().size(), elapsed_ms(start));
}

} // namespace ridfa

#pragma once

#include <optional>
#include <vector>

#include "ridfa/alphabet.hh"
#include "ridfa/dfa.hh"
#include "ridfa/nfa.hh"
#include "ridfa/types.hh"

namespace ridfa {

struct RiDfaBuildTrace;

/// Reduced-interface DFA: a multi-entry deterministic machine whose entry
/// (interface) states are the singleton subsets {q} of the source NFA.
///
/// Numbering: state q < nfa_state_count() is the singleton {q}; aggregate
/// subsets follow in discovery order. The interface function therefore maps
/// an NFA state id directly to a machine state id.
///
/// After reduce_interface() some singletons are no longer interface states;
/// each of them delegates to a language-equivalent interface state whose
/// content absorbs the delegated NFA state. The transition table never
/// changes.
class RiDfa {
public:
    RiDfa() = default;

    std::size_t state_count() const { return subsets_.size(); }
    std::size_t nfa_state_count() const { return nfa_state_count_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t symbol_count() const { return alphabet_.size(); }

    StateId next(StateId state, SymbolId symbol) const {
        if (symbol >= symbol_count()) { return kNoState; }
        return delta_[static_cast<std::size_t>(state) * symbol_count() + symbol];
    }
    bool is_final(StateId state) const { return final_[state] != 0; }
    StateSet finals() const;

    /// NFA subset the state was built from (never changed by reduction).
    const StateSet& subset(StateId state) const { return subsets_[state]; }
    /// Subset plus the NFA states delegated to this state.
    const StateSet& content(StateId state) const { return contents_[state]; }
    const StateSet& interface() const { return interface_; }
    /// Start states of the first chunk: the singletons of the NFA initials.
    const StateSet& designated_initials() const { return designated_initials_; }
    /// Interface state standing in for singleton `state`, or kNoState.
    StateId delegate_of(StateId state) const { return delegates_[state]; }
    bool is_reduced() const { return interface_.size() < nfa_state_count_; }
    /// (downgraded singleton, delegate) pairs ordered by the first element.
    std::vector<std::pair<StateId, StateId>> delegations() const;

    std::size_t transition_count() const;
    TableView table() const { return {state_count(), symbol_count(), delta_, final_}; }

    /// Assembles a machine from raw parts and checks every invariant; used
    /// by the document loader. Throws ValidationError.
    static RiDfa from_parts(Alphabet alphabet, std::size_t nfa_state_count,
                            std::vector<StateSet> subsets, std::vector<StateId> delta,
                            StateSet finals, StateSet designated_initials,
                            std::vector<std::pair<StateId, StateId>> delegations);

    bool operator==(const RiDfa& other) const = default;

private:
    friend RiDfa build_ridfa(const Nfa&, RiDfaBuildTrace&, std::size_t);
    friend RiDfa reduce_interface(const RiDfa&);

    Alphabet alphabet_;
    std::size_t nfa_state_count_ = 0;
    std::vector<StateId> delta_;
    std::vector<std::uint8_t> final_;
    std::vector<StateSet> subsets_;
    std::vector<StateSet> contents_;
    StateSet interface_;
    StateSet designated_initials_;
    std::vector<StateId> delegates_;
};

/// Per-seed bookkeeping of the incremental construction.
struct RiDfaBuildTrace {
    /// States expanded while seeding from singleton {q}, indexed by q.
    std::vector<StateSet> new_states;
    /// Number of transitions added by each seed.
    std::vector<std::size_t> new_transitions;
};

/// Incremental powerset: one subset construction per NFA state, seeded with
/// {q} and reusing everything found by earlier seeds.
/// `max_states` of 0 means unlimited; otherwise LimitExceededError.
RiDfa build_ridfa(const Nfa& nfa, std::size_t max_states = 0);
RiDfa build_ridfa(const Nfa& nfa, RiDfaBuildTrace& trace, std::size_t max_states = 0);

/// Interface function: the singletons of every NFA state in the (original)
/// subsets of `plas`. `plas` must be sorted.
StateSet interface_map(const RiDfa& ridfa, const StateSet& plas);

/// Interface function of a reduced machine: each singleton of interface_map
/// replaced by itself if still an interface state, else by its delegate.
/// Equals interface_map on an unreduced machine.
StateSet interface_map_min(const RiDfa& ridfa, const StateSet& plas);

/// Downgrades language-equivalent interface states: per Nerode class, the
/// lowest interface state stays and the others delegate to it.
RiDfa reduce_interface(const RiDfa& ridfa);

/// Serial run from each designated initial state; true if any run ends in a
/// final state.
bool ridfa_accepts(const RiDfa& ridfa, std::span<const SymbolId> text);

} // namespace ridfa

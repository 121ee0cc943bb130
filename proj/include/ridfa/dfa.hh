#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ridfa/alphabet.hh"
#include "ridfa/nfa.hh"
#include "ridfa/types.hh"

namespace ridfa {

/// Read-only view of a deterministic transition table: row-major
/// `state * width + symbol`, kNoState marks a missing transition.
struct TableView {
    std::size_t state_count = 0;
    std::size_t width = 0;
    std::span<const StateId> delta;
    std::span<const std::uint8_t> final;

    StateId next(StateId state, SymbolId symbol) const {
        if (symbol >= width) { return kNoState; }
        return delta[static_cast<std::size_t>(state) * width + symbol];
    }
};

/// Deterministic automaton with a partial transition function.
class Dfa {
public:
    Dfa() = default;
    Dfa(std::size_t state_count, Alphabet alphabet);

    std::size_t state_count() const { return state_count_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t symbol_count() const { return alphabet_.size(); }

    /// Adds a state and returns its id.
    StateId add_state();
    /// Sets delta(from, symbol) = to. Throws ValidationError if a different
    /// successor is already present.
    void set_transition(StateId from, SymbolId symbol, StateId to);
    void set_initial(StateId state);
    void set_final(StateId state, bool final = true);

    StateId next(StateId state, SymbolId symbol) const {
        if (symbol >= symbol_count()) { return kNoState; }
        return delta_[static_cast<std::size_t>(state) * symbol_count() + symbol];
    }
    StateId initial() const { return initial_; }
    bool is_final(StateId state) const { return final_[state] != 0; }
    StateSet finals() const;

    /// Subset of NFA states each state stands for, when built by powerset.
    const std::optional<std::vector<StateSet>>& origin() const { return origin_; }
    void set_origin(std::vector<StateSet> origin);

    std::size_t transition_count() const;
    TableView table() const { return {state_count_, symbol_count(), delta_, final_}; }

    /// Structural equality: same alphabet, table, initial and finals.
    bool operator==(const Dfa& other) const;

private:
    void check_state(StateId state) const;

    std::size_t state_count_ = 0;
    Alphabet alphabet_;
    std::vector<StateId> delta_;
    StateId initial_ = 0;
    std::vector<std::uint8_t> final_;
    std::optional<std::vector<StateSet>> origin_;
};

/// Accessible subset construction seeded with `start`. States are numbered in
/// discovery order (breadth first, symbols ascending); no dead state is added.
/// An empty `start` yields a single rejecting state without transitions.
/// `max_states` of 0 means unlimited; otherwise LimitExceededError is thrown.
Dfa powerset_from(const Nfa& nfa, const StateSet& start, std::size_t max_states = 0);

/// Minimal DFA for the language of `dfa`. The result is trimmed (states with
/// an empty future are dropped, so the partial table stays partial) and
/// numbered breadth first from the initial state, which makes it canonical.
Dfa minimize_dfa(const Dfa& dfa);

/// Runs the DFA from its initial state; true if it ends in a final state.
bool dfa_accepts(const Dfa& dfa, std::span<const SymbolId> text);

} // namespace ridfa

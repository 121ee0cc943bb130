#pragma once

#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "ridfa/alphabet.hh"
#include "ridfa/types.hh"

namespace ridfa {

/// Epsilon-free nondeterministic automaton with a set of initial states.
///
/// Successor lists are stored per (state, symbol) cell, sorted and unique.
class Nfa {
public:
    Nfa() = default;
    Nfa(std::size_t state_count, Alphabet alphabet);

    std::size_t state_count() const { return state_count_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t symbol_count() const { return alphabet_.size(); }

    void add_transition(StateId from, SymbolId symbol, StateId to);
    void add_initial(StateId state);
    void add_final(StateId state);

    std::span<const StateId> successors(StateId state, SymbolId symbol) const {
        const auto& cell = cells_[static_cast<std::size_t>(state) * symbol_count() + symbol];
        return {cell.data(), cell.size()};
    }

    const StateSet& initials() const { return initials_; }
    const StateSet& finals() const { return finals_; }
    bool is_final(StateId state) const { return final_flags_[state] != 0; }

    std::size_t transition_count() const;
    /// (from, symbol, to) triples in lexicographic order.
    std::vector<std::tuple<StateId, SymbolId, StateId>> transitions() const;

private:
    void check_state(StateId state) const;

    std::size_t state_count_ = 0;
    Alphabet alphabet_;
    std::vector<StateSet> cells_;
    StateSet initials_;
    StateSet finals_;
    std::vector<std::uint8_t> final_flags_;
};

/// Builder accepting epsilon edges. build() removes them by closure: a state
/// gets the symbol moves of everything in its epsilon closure and becomes
/// final if its closure meets a final state.
class NfaBuilder {
public:
    NfaBuilder(std::size_t state_count, Alphabet alphabet)
        : nfa_(state_count, std::move(alphabet)), epsilon_(state_count) {}

    NfaBuilder& transition(StateId from, SymbolId symbol, StateId to) {
        nfa_.add_transition(from, symbol, to);
        return *this;
    }
    NfaBuilder& epsilon(StateId from, StateId to);
    NfaBuilder& initial(StateId state) {
        nfa_.add_initial(state);
        return *this;
    }
    NfaBuilder& final(StateId state) {
        nfa_.add_final(state);
        return *this;
    }

    Nfa build() const;

private:
    Nfa nfa_;
    std::vector<StateSet> epsilon_;
};

/// States reached from `from` after reading `text`; empty if every run dies.
StateSet nfa_reach(const Nfa& nfa, const StateSet& from, std::span<const SymbolId> text);

/// Membership oracle: the run from the initial states ends in a final state.
bool nfa_accepts(const Nfa& nfa, std::span<const SymbolId> text);

/// Quotient by the coarsest forward bisimulation. Bisimilar states have the
/// same right language, so the result accepts the same language.
Nfa merge_bisimilar_states(const Nfa& nfa);

} // namespace ridfa

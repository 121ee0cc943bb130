#pragma once

// Hand-entered machines for the golden cases.

#include <string_view>

#include "ridfa/dfa.hh"
#include "ridfa/formats.hh"
#include "ridfa/nfa.hh"

namespace fixtures {

using namespace ridfa;

/// Three-state NFA over {a,b,c}: 0 -a,c-> 1, 1 -a-> 1, 1 -b-> 2, 2 -b-> 1,
/// 1 -a,b,c-> 0. Initial {0}, final {2}.
inline Nfa three_state_nfa() {
    Nfa nfa(3, Alphabet::from_bytes("abc"));
    const SymbolId a = 0, b = 1, c = 2;
    nfa.add_transition(0, a, 1);
    nfa.add_transition(0, c, 1);
    nfa.add_transition(1, a, 1);
    nfa.add_transition(1, b, 2);
    nfa.add_transition(2, b, 1);
    nfa.add_transition(1, a, 0);
    nfa.add_transition(1, b, 0);
    nfa.add_transition(1, c, 0);
    nfa.add_initial(0);
    nfa.add_final(2);
    return nfa;
}

/// Two-state DFA over {a,b}: q0 -b-> q0, q0 -a-> q1, q1 -a,b-> q0; F = {q1}.
inline Dfa two_state_dfa() {
    Dfa dfa(2, Alphabet::from_bytes("ab"));
    dfa.set_transition(0, 1, 0);
    dfa.set_transition(0, 0, 1);
    dfa.set_transition(1, 0, 0);
    dfa.set_transition(1, 1, 0);
    dfa.set_initial(0);
    dfa.set_final(1);
    return dfa;
}

/// Four-state NFA over {a,b,c} whose RI-DFA has two equivalent singletons.
inline Nfa four_state_nfa() {
    Nfa nfa(4, Alphabet::from_bytes("abc"));
    const SymbolId a = 0, b = 1, c = 2;
    nfa.add_transition(0, a, 1);
    nfa.add_transition(0, c, 3);
    for (SymbolId s : {a, b, c}) {
        nfa.add_transition(1, s, 0);
        nfa.add_transition(3, s, 0);
    }
    nfa.add_transition(1, b, 2);
    nfa.add_transition(1, a, 3);
    nfa.add_transition(2, b, 1);
    nfa.add_transition(3, a, 1);
    nfa.add_transition(3, b, 2);
    nfa.add_initial(0);
    nfa.add_final(2);
    return nfa;
}

inline Word word(const Alphabet& alphabet, std::string_view text) { return map_text(text, alphabet); }

/// Id of the RI-DFA state built from `subset`, or kNoState.
inline StateId state_of(const RiDfa& rid, const StateSet& subset) {
    for (StateId p = 0; p < rid.state_count(); ++p) {
        if (rid.subset(p) == subset) { return p; }
    }
    return kNoState;
}

/// Id of the DFA state whose origin is `subset`, or kNoState.
inline StateId state_of(const Dfa& dfa, const StateSet& subset) {
    const auto& origin = *dfa.origin();
    for (StateId p = 0; p < dfa.state_count(); ++p) {
        if (origin[p] == subset) { return p; }
    }
    return kNoState;
}

} // namespace fixtures

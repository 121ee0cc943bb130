#include "ridfa/nfa.hh"

#include <algorithm>
#include <map>
#include <string>

namespace ridfa {

Nfa::Nfa(std::size_t state_count, Alphabet alphabet)
    : state_count_(state_count),
      alphabet_(std::move(alphabet)),
      cells_(state_count * alphabet_.size()),
      final_flags_(state_count, 0) {}

void Nfa::check_state(StateId state) const {
    if (state >= state_count_) {
        throw ValidationError("state " + std::to_string(state) + " out of range (" +
                              std::to_string(state_count_) + " states)");
    }
}

void Nfa::add_transition(StateId from, SymbolId symbol, StateId to) {
    check_state(from);
    check_state(to);
    if (symbol >= symbol_count()) {
        throw ValidationError("symbol " + std::to_string(symbol) + " out of range");
    }
    insert_sorted(cells_[static_cast<std::size_t>(from) * symbol_count() + symbol], to);
}

void Nfa::add_initial(StateId state) {
    check_state(state);
    insert_sorted(initials_, state);
}

void Nfa::add_final(StateId state) {
    check_state(state);
    insert_sorted(finals_, state);
    final_flags_[state] = 1;
}

std::size_t Nfa::transition_count() const {
    std::size_t total = 0;
    for (const auto& cell : cells_) { total += cell.size(); }
    return total;
}

std::vector<std::tuple<StateId, SymbolId, StateId>> Nfa::transitions() const {
    std::vector<std::tuple<StateId, SymbolId, StateId>> out;
    out.reserve(transition_count());
    for (StateId q = 0; q < state_count_; ++q) {
        for (SymbolId a = 0; a < symbol_count(); ++a) {
            for (StateId r : successors(q, a)) { out.emplace_back(q, a, r); }
        }
    }
    return out;
}

NfaBuilder& NfaBuilder::epsilon(StateId from, StateId to) {
    if (from >= epsilon_.size() || to >= epsilon_.size()) {
        throw ValidationError("epsilon edge references an unknown state");
    }
    insert_sorted(epsilon_[from], to);
    return *this;
}

Nfa NfaBuilder::build() const {
    const std::size_t n = nfa_.state_count();
    Nfa out(n, nfa_.alphabet());
    for (StateId q = 0; q < n; ++q) {
        // Epsilon closure of q by depth-first search.
        StateSet closure{q};
        std::vector<StateId> stack{q};
        while (!stack.empty()) {
            StateId s = stack.back();
            stack.pop_back();
            for (StateId t : epsilon_[s]) {
                if (insert_sorted(closure, t)) { stack.push_back(t); }
            }
        }
        for (StateId r : closure) {
            if (nfa_.is_final(r)) { out.add_final(q); }
            for (SymbolId a = 0; a < nfa_.symbol_count(); ++a) {
                for (StateId t : nfa_.successors(r, a)) { out.add_transition(q, a, t); }
            }
        }
    }
    for (StateId q : nfa_.initials()) { out.add_initial(q); }
    return out;
}

StateSet nfa_reach(const Nfa& nfa, const StateSet& from, std::span<const SymbolId> text) {
    StateSet current = from;
    std::vector<std::uint8_t> seen(nfa.state_count(), 0);
    StateSet next;
    for (SymbolId a : text) {
        if (current.empty()) { break; }
        next.clear();
        if (a >= nfa.symbol_count()) {
            current.clear();
            break;
        }
        for (StateId q : current) {
            for (StateId r : nfa.successors(q, a)) {
                if (!seen[r]) {
                    seen[r] = 1;
                    next.push_back(r);
                }
            }
        }
        for (StateId r : next) { seen[r] = 0; }
        std::sort(next.begin(), next.end());
        current.swap(next);
    }
    return current;
}

bool nfa_accepts(const Nfa& nfa, std::span<const SymbolId> text) {
    return intersects(nfa_reach(nfa, nfa.initials(), text), nfa.finals());
}

Nfa merge_bisimilar_states(const Nfa& nfa) {
    const std::size_t n = nfa.state_count();
    const std::size_t k = nfa.symbol_count();
    std::vector<std::uint32_t> block(n);
    std::size_t block_count = 0;
    {
        bool any_final = !nfa.finals().empty();
        bool any_plain = nfa.finals().size() < n;
        for (StateId q = 0; q < n; ++q) {
            block[q] = (any_final && any_plain && nfa.is_final(q)) ? 1 : 0;
        }
        block_count = (any_final && any_plain) ? 2 : (n == 0 ? 0 : 1);
    }

    std::vector<std::uint32_t> signature;
    std::vector<std::uint32_t> classes;
    while (true) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
        std::vector<std::uint32_t> next(n);
        for (StateId q = 0; q < n; ++q) {
            signature.assign(1, block[q]);
            for (SymbolId a = 0; a < k; ++a) {
                classes.clear();
                for (StateId r : nfa.successors(q, a)) { classes.push_back(block[r]); }
                std::sort(classes.begin(), classes.end());
                classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
                signature.push_back(static_cast<std::uint32_t>(classes.size()));
                signature.insert(signature.end(), classes.begin(), classes.end());
            }
            auto [it, fresh] = ids.emplace(signature, static_cast<std::uint32_t>(ids.size()));
            next[q] = it->second;
        }
        block.swap(next);
        if (ids.size() == block_count) { break; }
        block_count = ids.size();
    }

    // Renumber blocks by their lowest member.
    std::vector<StateId> renumber(block_count, kNoState);
    StateId fresh = 0;
    for (StateId q = 0; q < n; ++q) {
        if (renumber[block[q]] == kNoState) { renumber[block[q]] = fresh++; }
    }
    Nfa out(fresh, nfa.alphabet());
    for (StateId q = 0; q < n; ++q) {
        StateId nq = renumber[block[q]];
        if (nfa.is_final(q)) { out.add_final(nq); }
        for (SymbolId a = 0; a < k; ++a) {
            for (StateId r : nfa.successors(q, a)) { out.add_transition(nq, a, renumber[block[r]]); }
        }
    }
    for (StateId q : nfa.initials()) { out.add_initial(renumber[block[q]]); }
    return out;
}

} // namespace ridfa

#include "ridfa/dfa.hh"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

#include "ridfa/partition.hh"

namespace ridfa {

Dfa::Dfa(std::size_t state_count, Alphabet alphabet)
    : state_count_(state_count),
      alphabet_(std::move(alphabet)),
      delta_(state_count * alphabet_.size(), kNoState),
      final_(state_count, 0) {}

void Dfa::check_state(StateId state) const {
    if (state >= state_count_) {
        throw ValidationError("state " + std::to_string(state) + " out of range (" +
                              std::to_string(state_count_) + " states)");
    }
}

StateId Dfa::add_state() {
    delta_.resize(delta_.size() + symbol_count(), kNoState);
    final_.push_back(0);
    if (origin_) { origin_->emplace_back(); }
    return static_cast<StateId>(state_count_++);
}

void Dfa::set_transition(StateId from, SymbolId symbol, StateId to) {
    check_state(from);
    check_state(to);
    if (symbol >= symbol_count()) {
        throw ValidationError("symbol " + std::to_string(symbol) + " out of range");
    }
    StateId& cell = delta_[static_cast<std::size_t>(from) * symbol_count() + symbol];
    if (cell != kNoState && cell != to) {
        throw ValidationError("nondeterministic transition from state " + std::to_string(from) +
                              " on symbol '" + alphabet_.name(symbol) + "'");
    }
    cell = to;
}

void Dfa::set_initial(StateId state) {
    check_state(state);
    initial_ = state;
}

void Dfa::set_final(StateId state, bool final) {
    check_state(state);
    final_[state] = final ? 1 : 0;
}

StateSet Dfa::finals() const {
    StateSet out;
    for (StateId q = 0; q < state_count_; ++q) {
        if (final_[q]) { out.push_back(q); }
    }
    return out;
}

void Dfa::set_origin(std::vector<StateSet> origin) {
    if (origin.size() != state_count_) {
        throw ValidationError("origin must list one subset per state");
    }
    origin_ = std::move(origin);
}

std::size_t Dfa::transition_count() const {
    return static_cast<std::size_t>(
        std::count_if(delta_.begin(), delta_.end(), [](StateId t) { return t != kNoState; }));
}

bool Dfa::operator==(const Dfa& other) const {
    return state_count_ == other.state_count_ && alphabet_ == other.alphabet_ &&
           delta_ == other.delta_ && final_ == other.final_ &&
           (state_count_ == 0 || initial_ == other.initial_);
}

Dfa powerset_from(const Nfa& nfa, const StateSet& start, std::size_t max_states) {
    for (StateId q : start) {
        if (q >= nfa.state_count()) { throw ValidationError("powerset start state out of range"); }
    }
    const std::size_t k = nfa.symbol_count();
    Dfa dfa(0, nfa.alphabet());
    std::vector<StateSet> subsets;
    std::unordered_map<StateSet, StateId, StateSetHash> index;
    std::deque<StateId> queue;

    auto intern = [&](StateSet&& subset) -> StateId {
        if (auto it = index.find(subset); it != index.end()) { return it->second; }
        if (max_states != 0 && subsets.size() >= max_states) {
            throw LimitExceededError("subset construction exceeded " + std::to_string(max_states) +
                                     " states");
        }
        StateId id = dfa.add_state();
        if (intersects(subset, nfa.finals())) { dfa.set_final(id); }
        index.emplace(subset, id);
        subsets.push_back(std::move(subset));
        queue.push_back(id);
        return id;
    };

    StateSet seed = start;
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());
    dfa.set_initial(intern(std::move(seed)));

    std::vector<std::uint8_t> seen(nfa.state_count(), 0);
    StateSet next;
    while (!queue.empty()) {
        StateId p = queue.front();
        queue.pop_front();
        for (SymbolId a = 0; a < k; ++a) {
            next.clear();
            for (StateId q : subsets[p]) {
                for (StateId r : nfa.successors(q, a)) {
                    if (!seen[r]) {
                        seen[r] = 1;
                        next.push_back(r);
                    }
                }
            }
            if (next.empty()) { continue; }
            for (StateId r : next) { seen[r] = 0; }
            std::sort(next.begin(), next.end());
            StateId target = intern(StateSet(next));
            dfa.set_transition(p, a, target);
        }
    }
    dfa.set_origin(std::move(subsets));
    return dfa;
}

Dfa minimize_dfa(const Dfa& dfa) {
    const std::size_t k = dfa.symbol_count();
    if (dfa.state_count() == 0) { return dfa; }

    // Restrict to the accessible part first.
    std::vector<StateId> local(dfa.state_count(), kNoState);
    std::vector<StateId> reachable{dfa.initial()};
    local[dfa.initial()] = 0;
    for (std::size_t i = 0; i < reachable.size(); ++i) {
        for (SymbolId a = 0; a < k; ++a) {
            StateId t = dfa.next(reachable[i], a);
            if (t != kNoState && local[t] == kNoState) {
                local[t] = static_cast<StateId>(reachable.size());
                reachable.push_back(t);
            }
        }
    }
    std::vector<StateId> delta(reachable.size() * k, kNoState);
    std::vector<std::uint8_t> final(reachable.size(), 0);
    for (std::size_t i = 0; i < reachable.size(); ++i) {
        final[i] = dfa.is_final(reachable[i]) ? 1 : 0;
        for (SymbolId a = 0; a < k; ++a) {
            StateId t = dfa.next(reachable[i], a);
            delta[i * k + a] = t == kNoState ? kNoState : local[t];
        }
    }
    Partition part = nerode_partition({reachable.size(), k, delta, final});

    Dfa out(0, dfa.alphabet());
    const std::uint32_t initial_class = part.class_of[0];
    if (part.dead_class == initial_class) {
        out.add_state();  // empty language
        return out;
    }
    std::vector<StateId> renumber(part.classes.size(), kNoState);
    std::vector<std::uint32_t> order{initial_class};
    renumber[initial_class] = out.add_state();
    for (std::size_t i = 0; i < order.size(); ++i) {
        StateId rep = part.classes[order[i]].front();
        StateId from = renumber[order[i]];
        if (final[rep]) { out.set_final(from); }
        for (SymbolId a = 0; a < k; ++a) {
            StateId t = delta[static_cast<std::size_t>(rep) * k + a];
            if (t == kNoState) { continue; }
            std::uint32_t c = part.class_of[t];
            if (part.dead_class == c) { continue; }
            if (renumber[c] == kNoState) {
                renumber[c] = out.add_state();
                order.push_back(c);
            }
            out.set_transition(from, a, renumber[c]);
        }
    }
    out.set_initial(0);
    return out;
}

bool dfa_accepts(const Dfa& dfa, std::span<const SymbolId> text) {
    if (dfa.state_count() == 0) { return false; }
    StateId q = dfa.initial();
    for (SymbolId a : text) {
        q = dfa.next(q, a);
        if (q == kNoState) { return false; }
    }
    return dfa.is_final(q);
}

} // namespace ridfa

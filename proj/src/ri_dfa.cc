#include "ridfa/ri_dfa.hh"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>

#include "ridfa/partition.hh"

namespace ridfa {

StateSet RiDfa::finals() const {
    StateSet out;
    for (StateId p = 0; p < state_count(); ++p) {
        if (final_[p]) { out.push_back(p); }
    }
    return out;
}

std::vector<std::pair<StateId, StateId>> RiDfa::delegations() const {
    std::vector<std::pair<StateId, StateId>> out;
    for (StateId q = 0; q < delegates_.size(); ++q) {
        if (delegates_[q] != kNoState) { out.emplace_back(q, delegates_[q]); }
    }
    return out;
}

std::size_t RiDfa::transition_count() const {
    return static_cast<std::size_t>(
        std::count_if(delta_.begin(), delta_.end(), [](StateId t) { return t != kNoState; }));
}

RiDfa RiDfa::from_parts(Alphabet alphabet, std::size_t nfa_state_count,
                        std::vector<StateSet> subsets, std::vector<StateId> delta,
                        StateSet finals, StateSet designated_initials,
                        std::vector<std::pair<StateId, StateId>> delegations) {
    const std::size_t n = subsets.size();
    const std::size_t k = alphabet.size();
    if (n < nfa_state_count) { throw ValidationError("RI-DFA has fewer states than singletons"); }
    std::unordered_map<StateSet, StateId, StateSetHash> seen;
    for (StateId p = 0; p < n; ++p) {
        const StateSet& s = subsets[p];
        if (s.empty() || !std::is_sorted(s.begin(), s.end()) ||
            std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw ValidationError("state " + std::to_string(p) + " has a malformed subset");
        }
        if (s.back() >= nfa_state_count) {
            throw ValidationError("state " + std::to_string(p) + " names an unknown NFA state");
        }
        if (p < nfa_state_count && (s.size() != 1 || s.front() != p)) {
            throw ValidationError("state " + std::to_string(p) + " must be the singleton {" +
                                  std::to_string(p) + "}");
        }
        if (!seen.emplace(s, p).second) {
            throw ValidationError("state " + std::to_string(p) + " duplicates another subset");
        }
    }
    if (delta.size() != n * k) { throw ValidationError("transition table has the wrong size"); }
    for (StateId t : delta) {
        if (t != kNoState && t >= n) { throw ValidationError("transition target out of range"); }
    }

    RiDfa out;
    out.alphabet_ = std::move(alphabet);
    out.nfa_state_count_ = nfa_state_count;
    out.delta_ = std::move(delta);
    out.final_.assign(n, 0);
    for (StateId f : finals) {
        if (f >= n) { throw ValidationError("final state out of range"); }
        out.final_[f] = 1;
    }
    for (StateId q : designated_initials) {
        if (q >= nfa_state_count) { throw ValidationError("designated initial is not a singleton"); }
        insert_sorted(out.designated_initials_, q);
    }
    out.delegates_.assign(nfa_state_count, kNoState);
    for (auto [source, target] : delegations) {
        if (source >= nfa_state_count || target >= nfa_state_count || source == target) {
            throw ValidationError("delegation must pair two distinct singletons");
        }
        if (out.delegates_[source] != kNoState) {
            throw ValidationError("singleton " + std::to_string(source) + " delegates twice");
        }
        out.delegates_[source] = target;
    }
    for (auto [source, target] : delegations) {
        if (out.delegates_[target] != kNoState) {
            throw ValidationError("delegate " + std::to_string(target) + " is itself downgraded");
        }
    }
    out.subsets_ = std::move(subsets);
    out.contents_ = out.subsets_;
    for (StateId q = 0; q < nfa_state_count; ++q) {
        if (out.delegates_[q] == kNoState) {
            out.interface_.push_back(q);
        } else {
            insert_sorted(out.contents_[out.delegates_[q]], q);
        }
    }
    return out;
}

RiDfa build_ridfa(const Nfa& nfa, std::size_t max_states) {
    RiDfaBuildTrace trace;
    return build_ridfa(nfa, trace, max_states);
}

RiDfa build_ridfa(const Nfa& nfa, RiDfaBuildTrace& trace, std::size_t max_states) {
    const std::size_t ell = nfa.state_count();
    const std::size_t k = nfa.symbol_count();
    RiDfa out;
    out.alphabet_ = nfa.alphabet();
    out.nfa_state_count_ = ell;

    std::unordered_map<StateSet, StateId, StateSetHash> index;
    std::vector<std::uint8_t> queued;
    auto intern = [&](StateSet&& subset) -> StateId {
        if (auto it = index.find(subset); it != index.end()) { return it->second; }
        if (max_states != 0 && out.subsets_.size() >= max_states) {
            throw LimitExceededError("RI-DFA construction exceeded " + std::to_string(max_states) +
                                     " states");
        }
        auto id = static_cast<StateId>(out.subsets_.size());
        out.final_.push_back(intersects(subset, nfa.finals()) ? 1 : 0);
        out.delta_.resize(out.delta_.size() + k, kNoState);
        index.emplace(subset, id);
        out.subsets_.push_back(std::move(subset));
        queued.push_back(0);
        return id;
    };
    for (StateId q = 0; q < ell; ++q) { intern(StateSet{q}); }

    trace.new_states.assign(ell, {});
    trace.new_transitions.assign(ell, 0);
    std::vector<std::uint8_t> seen(ell, 0);
    StateSet next;
    std::deque<StateId> queue;
    for (StateId seed = 0; seed < ell; ++seed) {
        if (queued[seed]) { continue; }
        queued[seed] = 1;
        queue.push_back(seed);
        while (!queue.empty()) {
            StateId p = queue.front();
            queue.pop_front();
            trace.new_states[seed].push_back(p);
            for (SymbolId a = 0; a < k; ++a) {
                next.clear();
                for (StateId q : out.subsets_[p]) {
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
                out.delta_[static_cast<std::size_t>(p) * k + a] = target;
                ++trace.new_transitions[seed];
                if (!queued[target]) {
                    queued[target] = 1;
                    queue.push_back(target);
                }
            }
        }
        std::sort(trace.new_states[seed].begin(), trace.new_states[seed].end());
    }

    out.contents_ = out.subsets_;
    out.interface_.resize(ell);
    for (StateId q = 0; q < ell; ++q) { out.interface_[q] = q; }
    out.designated_initials_ = nfa.initials();
    out.delegates_.assign(ell, kNoState);
    return out;
}

StateSet interface_map(const RiDfa& ridfa, const StateSet& plas) {
    StateSet out;
    for (StateId p : plas) {
        if (p >= ridfa.state_count()) {
            throw InternalError("PLAS state " + std::to_string(p) + " is not an RI-DFA state");
        }
        for (StateId q : ridfa.subset(p)) {
            if (q >= ridfa.nfa_state_count()) {
                throw InternalError("subset names NFA state " + std::to_string(q) +
                                    " which has no singleton");
            }
            out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

StateSet interface_map_min(const RiDfa& ridfa, const StateSet& plas) {
    StateSet singletons = interface_map(ridfa, plas);
    if (!ridfa.is_reduced()) { return singletons; }
    StateSet out;
    out.reserve(singletons.size());
    for (StateId q : singletons) {
        StateId d = ridfa.delegate_of(q);
        out.push_back(d == kNoState ? q : d);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RiDfa reduce_interface(const RiDfa& ridfa) {
    Partition part = nerode_partition(ridfa.table());
    RiDfa out = ridfa;
    std::vector<StateId> keeper(part.classes.size(), kNoState);
    StateSet remaining;
    for (StateId p : ridfa.interface()) {
        StateId& k = keeper[part.class_of[p]];
        if (k == kNoState) {
            k = p;  // interface is sorted, so the first hit is the lowest id
            remaining.push_back(p);
            continue;
        }
        out.delegates_[p] = k;
        for (StateId q : ridfa.content(p)) { insert_sorted(out.contents_[k], q); }
        // Singletons that already delegated to p follow it to k.
        for (StateId q = 0; q < out.delegates_.size(); ++q) {
            if (out.delegates_[q] == p) { out.delegates_[q] = k; }
        }
    }
    out.interface_ = std::move(remaining);
    return out;
}

bool ridfa_accepts(const RiDfa& ridfa, std::span<const SymbolId> text) {
    for (StateId start : ridfa.designated_initials()) {
        StateId p = start;
        for (SymbolId a : text) {
            p = ridfa.next(p, a);
            if (p == kNoState) { break; }
        }
        if (p != kNoState && ridfa.is_final(p)) { return true; }
    }
    return false;
}

} // namespace ridfa

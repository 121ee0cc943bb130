#include "ridfa/textgen.hh"

#include <random>

namespace ridfa {

namespace {

// Modulo reduction instead of std::uniform_int_distribution: the latter is
// implementation-defined, and generated texts must match across toolchains.
std::size_t draw(std::mt19937_64& rng, std::size_t bound) { return rng() % bound; }

} // namespace

std::string_view to_string(GenMode mode) { return mode == GenMode::Uniform ? "uniform" : "walk"; }

std::optional<GenMode> parse_gen_mode(std::string_view name) {
    if (name == "uniform") { return GenMode::Uniform; }
    if (name == "walk") { return GenMode::Walk; }
    return std::nullopt;
}

Word gen_uniform(std::size_t length, std::size_t symbol_count, std::uint64_t seed) {
    if (length > 0 && symbol_count == 0) { throw ValidationError("cannot draw text over an empty alphabet"); }
    std::mt19937_64 rng(seed);
    Word out(length);
    for (auto& a : out) { a = static_cast<SymbolId>(draw(rng, symbol_count)); }
    return out;
}

Word gen_walk(const Dfa& dfa, std::size_t length, std::uint64_t seed) {
    if (dfa.state_count() == 0 || dfa.finals().empty()) {
        throw ValidationError("walk generation needs a machine with a non-empty language");
    }
    const std::size_t k = dfa.symbol_count();
    std::vector<std::vector<SymbolId>> moves(dfa.state_count());
    for (StateId p = 0; p < dfa.state_count(); ++p) {
        for (SymbolId a = 0; a < k; ++a) {
            if (dfa.next(p, a) != kNoState) { moves[p].push_back(a); }
        }
    }
    if (length > 0 && moves[dfa.initial()].empty()) {
        throw ValidationError("walk generation needs a language with a non-empty word");
    }
    std::mt19937_64 rng(seed);
    Word out;
    out.reserve(length);
    StateId p = dfa.initial();
    while (out.size() < length) {
        if (moves[p].empty()) { p = dfa.initial(); }
        SymbolId a = moves[p][draw(rng, moves[p].size())];
        out.push_back(a);
        p = dfa.next(p, a);
    }
    return out;
}

Word gen_text(GenMode mode, std::size_t length, std::uint64_t seed, const Nfa& nfa) {
    if (mode == GenMode::Uniform) { return gen_uniform(length, nfa.symbol_count(), seed); }
    return gen_walk(minimize_dfa(powerset_from(nfa, nfa.initials())), length, seed);
}

} // namespace ridfa

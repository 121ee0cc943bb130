#include <catch_amalgamated.hpp>

#include "fixtures.hh"
#include "oracles.hh"
#include "ridfa/partition.hh"

using namespace ridfa;

TEST_CASE("set_transition rejects a second successor") {
    Dfa dfa(2, Alphabet::from_bytes("a"));
    dfa.set_transition(0, 0, 1);
    dfa.set_transition(0, 0, 1);
    CHECK_THROWS_AS(dfa.set_transition(0, 0, 0), ValidationError);
    CHECK_THROWS_AS(dfa.set_transition(0, 1, 0), ValidationError);
    CHECK_THROWS_AS(dfa.set_initial(2), ValidationError);
}

TEST_CASE("powerset of the three-state example") {
    Nfa nfa = fixtures::three_state_nfa();
    Dfa dfa = powerset_from(nfa, {0});
    REQUIRE(dfa.origin());
    CHECK(*dfa.origin() == std::vector<StateSet>{{0}, {1}, {0, 1}, {0, 2}});
    CHECK(dfa.finals() == StateSet{3});
    CHECK(dfa.next(0, 1) == kNoState);
    CHECK(dfa_accepts(dfa, fixtures::word(nfa.alphabet(), "aabcab")));
}

TEST_CASE("powerset from an empty start rejects everything") {
    Dfa dfa = powerset_from(fixtures::three_state_nfa(), {});
    CHECK(dfa.state_count() == 1);
    CHECK(dfa.finals().empty());
    CHECK(dfa.transition_count() == 0);
}

TEST_CASE("state limits are enforced") {
    Nfa nfa = fixtures::three_state_nfa();
    CHECK_THROWS_AS(powerset_from(nfa, {0}, 3), LimitExceededError);
    CHECK_NOTHROW(powerset_from(nfa, {0}, 4));
}

TEST_CASE("minimization matches the Moore-refinement oracle") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 500; ++i) {
        auto raw = oracle::random_nfa(rng, 6, 3, 0.3);
        Nfa nfa = oracle::to_nfa(raw);
        Dfa min = minimize_dfa(powerset_from(nfa, nfa.initials()));
        std::size_t expected = oracle::min_dfa_size(raw);
        REQUIRE(min.state_count() == std::max<std::size_t>(expected, 1));
        REQUIRE(minimize_dfa(min) == min);
        for (int t = 0; t < 20; ++t) {
            auto w = oracle::random_text(rng, raw.symbols, 8);
            REQUIRE(dfa_accepts(min, Word(w.begin(), w.end())) == oracle::accepts(raw, w));
        }
    }
}

TEST_CASE("minimization is canonical under renumbering") {
    // Same language (words over {a,b} ending in a) written with redundant states.
    Dfa one(2, Alphabet::from_bytes("ab"));
    one.set_transition(0, 0, 1);
    one.set_transition(0, 1, 0);
    one.set_transition(1, 0, 1);
    one.set_transition(1, 1, 0);
    one.set_final(1);
    Dfa two(4, Alphabet::from_bytes("ab"));
    two.set_initial(3);
    two.set_transition(3, 0, 2);
    two.set_transition(3, 1, 0);
    two.set_transition(0, 0, 1);
    two.set_transition(0, 1, 3);
    two.set_transition(2, 0, 1);
    two.set_transition(2, 1, 0);
    two.set_transition(1, 0, 2);
    two.set_transition(1, 1, 3);
    two.set_final(1);
    two.set_final(2);
    CHECK(minimize_dfa(one) == minimize_dfa(two));
    CHECK(minimize_dfa(two).state_count() == 2);
}

TEST_CASE("Nerode partition agrees with pairwise distinguishability") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
        auto raw = oracle::random_nfa(rng, 5, 2, 0.35);
        Nfa nfa = oracle::to_nfa(raw);
        Dfa dfa = powerset_from(nfa, nfa.initials());
        Partition part = nerode_partition(dfa.table());
        auto next = [&](StateId p, SymbolId a) { return dfa.next(p, a); };
        auto fin = [&](StateId p) { return dfa.is_final(p); };
        for (StateId p = 0; p < dfa.state_count(); ++p) {
            for (StateId q = p + 1; q < dfa.state_count(); ++q) {
                REQUIRE(part.equivalent(p, q) == !oracle::distinguishable(p, q, dfa.symbol_count(), next, fin));
            }
            bool dead = !oracle::distinguishable(p, kNoState, dfa.symbol_count(), next, fin);
            REQUIRE(dead == (part.dead_class == part.class_of[p]));
        }
    }
}

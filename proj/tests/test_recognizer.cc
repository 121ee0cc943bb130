#include <catch_amalgamated.hpp>

#include "fixtures.hh"
#include "oracles.hh"

using namespace ridfa;
using fixtures::word;

TEST_CASE("split_chunks") {
    auto sizes = [](const ChunkPlan& p) {
        std::vector<std::size_t> out;
        for (const auto& c : p.chunks) { out.push_back(c.size()); }
        return out;
    };
    CHECK(sizes(split_chunks(6, 2)) == std::vector<std::size_t>{3, 3});
    CHECK(sizes(split_chunks(7, 3)) == std::vector<std::size_t>{3, 2, 2});
    CHECK(sizes(split_chunks(3, 8)) == std::vector<std::size_t>{1, 1, 1});
    CHECK(split_chunks(7, 3).chunks.back().end == 7);
    CHECK_THROWS_AS(split_chunks(0, 2), ValidationError);
    CHECK_THROWS_AS(split_chunks(5, 0), ValidationError);
}

TEST_CASE("per-chunk counts on the three-state example") {
    Nfa nfa = fixtures::three_state_nfa();
    Word text = word(nfa.alphabet(), "aabcab");
    auto d = recognize_parallel(powerset_from(nfa, {0}), text, 2);
    auto n = recognize_parallel(nfa, text, 2);
    auto r = recognize_parallel(build_ridfa(nfa), text, 2);
    CHECK(d.per_chunk_transitions == std::vector<std::uint64_t>{3, 12});
    CHECK(n.per_chunk_transitions == std::vector<std::uint64_t>{5, 9});
    CHECK(r.per_chunk_transitions == std::vector<std::uint64_t>{3, 6});
    CHECK(d.per_chunk_runs == std::vector<std::size_t>{1, 4});
    CHECK(n.per_chunk_runs == std::vector<std::size_t>{1, 3});
    CHECK(r.per_chunk_runs == std::vector<std::size_t>{1, 3});

    // NFA chunk 2 ("cab"): 5 moves from state 0, 4 from state 1, none from 2.
    ChunkMapping from0 = reach_nondeterministic(nfa, {0}, std::span<const SymbolId>(text).subspan(3));
    ChunkMapping from1 = reach_nondeterministic(nfa, {1}, std::span<const SymbolId>(text).subspan(3));
    ChunkMapping from2 = reach_nondeterministic(nfa, {2}, std::span<const SymbolId>(text).subspan(3));
    CHECK(from0.transitions == 5);
    CHECK(from1.transitions == 4);
    CHECK(from2.transitions == 0);
    CHECK(from2.domain().empty());
}

TEST_CASE("serial run and the c = 1 case") {
    Nfa nfa = fixtures::three_state_nfa();
    RiDfa rid = build_ridfa(nfa);
    Word text = word(nfa.alphabet(), "aabcab");
    auto s = recognize_serial(rid, text);
    CHECK(s.accepted);
    CHECK(s.total_transitions == 6);
    auto p = recognize_parallel(rid, text, 1);
    CHECK(p.total_transitions == 6);
    CHECK(p.accepted);
    Dfa dfa = powerset_from(nfa, {0});
    CHECK(recognize_parallel(dfa, text, 1).total_transitions == recognize_serial(dfa, text).total_transitions);
    CHECK(recognize_parallel(nfa, text, 1).total_transitions == recognize_serial(nfa, text).total_transitions);
}

TEST_CASE("the two-state DFA maps chunk two as a permutation") {
    Dfa dfa = fixtures::two_state_dfa();
    Word text = word(dfa.alphabet(), "babaaa");
    ChunkPlan plan = split_chunks(text.size(), 2);
    auto maps = reach_phase(dfa, text, plan, Execution::Serial);
    REQUIRE(maps.size() == 2);
    CHECK(maps[0].domain() == StateSet{0});
    CHECK(maps[1].image_of(0)[0] == 1);
    CHECK(maps[1].image_of(1)[0] == 0);
    auto r = recognize_parallel(dfa, text, 2);
    CHECK(r.total_transitions == 9);
    CHECK(r.accepted);
}

TEST_CASE("empty text accepts iff an initial state is final") {
    Nfa nfa = fixtures::three_state_nfa();
    auto r = recognize_parallel(build_ridfa(nfa), Word{}, 4);
    CHECK_FALSE(r.accepted);
    CHECK(r.chunk_count == 0);
    CHECK(r.total_transitions == 0);
    Nfa eps(1, Alphabet::from_bytes("a"));
    eps.add_initial(0);
    eps.add_final(0);
    CHECK(recognize_parallel(eps, Word{}, 3).accepted);
    CHECK(recognize_parallel(build_ridfa(eps), Word{}, 3).accepted);
    CHECK(recognize_parallel(powerset_from(eps, {0}), Word{}, 3).accepted);
}

TEST_CASE("sink symbols kill every run") {
    Nfa nfa = fixtures::three_state_nfa();
    Word text = map_text("aaxab", nfa.alphabet(), ForeignBytePolicy::Sink);
    CHECK(text[2] == 3u);
    for (std::size_t c = 1; c <= 5; ++c) {
        CHECK_FALSE(recognize_parallel(nfa, text, c).accepted);
        CHECK_FALSE(recognize_parallel(powerset_from(nfa, {0}), text, c).accepted);
        CHECK_FALSE(recognize_parallel(build_ridfa(nfa), text, c).accepted);
    }
}

TEST_CASE("verdicts are independent of the chunk count and execution mode") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
        auto raw = oracle::random_nfa(rng, 6, 3, 0.3);
        Nfa nfa = oracle::to_nfa(raw);
        Dfa dfa = minimize_dfa(powerset_from(nfa, nfa.initials()));
        RiDfa rid = build_ridfa(nfa);
        RiDfa red = reduce_interface(rid);
        auto w32 = oracle::random_text(rng, raw.symbols, 30);
        Word text(w32.begin(), w32.end());
        const bool expected = oracle::accepts(raw, w32);
        for (std::size_t c = 1; c <= 9; c += 2) {
            REQUIRE(recognize_parallel(dfa, text, c).accepted == expected);
            REQUIRE(recognize_parallel(nfa, text, c).accepted == expected);
            REQUIRE(recognize_parallel(rid, text, c).accepted == expected);
            REQUIRE(recognize_parallel(red, text, c).accepted == expected);
            if (text.empty()) { continue; }
            ChunkPlan plan = split_chunks(text.size(), c);
            REQUIRE(reach_phase(rid, text, plan, Execution::Parallel) ==
                    reach_phase(rid, text, plan, Execution::Serial));
            REQUIRE(reach_phase(nfa, text, plan, Execution::Parallel) ==
                    reach_phase(nfa, text, plan, Execution::Serial));
        }
        REQUIRE(recognize_serial(rid, text).accepted == expected);
        REQUIRE(recognize_serial(nfa, text).accepted == expected);
        REQUIRE(recognize_serial(dfa, text).accepted == expected);
    }
}

TEST_CASE("RID join tracks the NFA state sets") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        auto raw = oracle::random_nfa(rng, 5, 2, 0.35);
        Nfa nfa = oracle::to_nfa(raw);
        RiDfa rid = build_ridfa(nfa);
        auto w32 = oracle::random_text(rng, raw.symbols, 16);
        if (w32.empty()) { continue; }
        Word text(w32.begin(), w32.end());
        auto r = recognize_parallel(rid, text, 4);
        ChunkPlan plan = split_chunks(text.size(), 4);
        for (std::size_t k = 0; k < plan.chunks.size(); ++k) {
            std::uint32_t nst = 0;
            for (StateId p : r.join_trace[k].plas) { nst |= oracle::mask_of(rid.subset(p)); }
            REQUIRE(nst == oracle::reach(raw, raw.initials, w32, 0, plan.chunks[k].end));
        }
    }
}

TEST_CASE("join rejects a first mapping from the wrong starts") {
    Nfa nfa = fixtures::three_state_nfa();
    Word text = word(nfa.alphabet(), "ab");
    std::vector<ChunkMapping> maps{reach_nondeterministic(nfa, {0, 1}, text)};
    CHECK_THROWS_AS(join_classic(maps, {0}, nfa.finals(), nfa.state_count()), InternalError);
}

TEST_CASE("variant names round-trip") {
    for (Variant v : {Variant::Dfa, Variant::Nfa, Variant::RiDfa}) { CHECK(parse_variant(to_string(v)) == v); }
    CHECK_FALSE(parse_variant("pda"));
}

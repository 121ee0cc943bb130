#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fixtures.hh"
#include "oracles.hh"

using namespace ridfa;

namespace {

const char* kTwoState = R"(
Ops x:0 a:1

Automaton single
States q0 q1
Final States q1
Transitions
x -> q0
a(q0) -> q1
)";

std::vector<Word> words_upto(std::size_t symbols, std::size_t max_len) {
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_len) { continue; }
        for (SymbolId a = 0; a < symbols; ++a) {
            Word w = out[i];
            w.push_back(a);
            out.push_back(w);
        }
    }
    return out;
}

template <typename T>
T round_trip(const T& machine) {
    return std::get<T>(load_automaton(save_automaton(machine)));
}

bool same_nfa(const Nfa& x, const Nfa& y) {
    return x.alphabet() == y.alphabet() && x.state_count() == y.state_count() &&
           x.initials() == y.initials() && x.finals() == y.finals() && x.transitions() == y.transitions();
}

} // namespace

TEST_CASE("Timbuk: two-state document accepts exactly {a}") {
    TimbukAutomaton t = parse_timbuk(kTwoState);
    CHECK(t.name == "single");
    CHECK(t.warnings.empty());
    CHECK(t.nfa.alphabet().symbols() == std::vector<std::string>{"a"});
    for (const Word& w : words_upto(1, 2)) { CHECK(nfa_accepts(t.nfa, w) == (w.size() == 1)); }
}

TEST_CASE("Timbuk: membership table of a commented document") {
    const char* doc = R"(
# words over {a,b} with an odd number of b
Ops
  start:0 a:1 b:1   // two letters
Automaton parity
States even:0 odd:0
Final States odd
Transitions
/* initial */ start -> even
a(even) -> even  a(odd) -> odd
b(even) -> odd   b(odd) -> even
)";
    TimbukAutomaton t = parse_timbuk(doc);
    REQUIRE(t.nfa.alphabet().symbols() == std::vector<std::string>{"a", "b"});
    for (const Word& w : words_upto(2, 4)) {
        auto odd = std::count(w.begin(), w.end(), 1u) % 2 == 1;
        CHECK(nfa_accepts(t.nfa, w) == odd);
    }
}

TEST_CASE("Timbuk: error reporting") {
    CHECK_THROWS_AS(parse_timbuk("Ops f:2 a:1\nAutomaton t\nStates q\nFinal States q\nTransitions\n"),
                    UnsupportedFormatError);
    try {
        parse_timbuk("Ops a:1 x:0\nAutomaton t\nStates q\nFinal States q\nTransitions\nx -> q\na(r) -> q\n");
        FAIL("undeclared state accepted");
    } catch (const ParseError& e) {
        CHECK(e.position() == 7);
        CHECK(std::string(e.what()).find("'r'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_timbuk("Ops a:1\nAutomaton t\nStates q\nFinal States q\nTransitions\nb(q) -> q\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_timbuk("Ops a:1\nAutomaton t\nStates q p\nFinal States q\nTransitions\nq -> p\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_timbuk("Ops a:1\nAutomaton t\nStates q\nFinal States q\n"), ParseError);
    CHECK_THROWS_AS(parse_timbuk("Ops a:1 /* open"), ParseError);
}

TEST_CASE("Timbuk: no finals rejects everything, no initials warns") {
    TimbukAutomaton nofinal = parse_timbuk("Ops x:0 a:1\nAutomaton t\nStates q\nFinal States\nTransitions\n"
                                           "x -> q\na(q) -> q\n");
    for (const Word& w : words_upto(1, 3)) { CHECK_FALSE(nfa_accepts(nofinal.nfa, w)); }
    TimbukAutomaton noinit = parse_timbuk("Ops a:1\nAutomaton t\nStates q\nFinal States q\nTransitions\n"
                                          "a(q) -> q\n");
    CHECK(noinit.warnings.size() == 1);
    CHECK_FALSE(nfa_accepts(noinit.nfa, Word{}));
}

TEST_CASE("documents: the three-state RI-DFA round-trips") {
    RiDfa rid = build_ridfa(fixtures::three_state_nfa());
    RiDfa back = round_trip(rid);
    CHECK(back == rid);
    CHECK(back.delegations().empty());
}

TEST_CASE("documents: reduced RI-DFA keeps delegation and content") {
    RiDfa red = reduce_interface(build_ridfa(fixtures::four_state_nfa()));
    RiDfa back = round_trip(red);
    CHECK(back == red);
    CHECK(back.delegations() == std::vector<std::pair<StateId, StateId>>{{3, 1}});
    CHECK(back.content(1) == StateSet{1, 3});
}

TEST_CASE("documents: random machines of every kind round-trip") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 100; ++i) {
        auto raw = oracle::random_nfa(rng, 6, 3, 0.3);
        Nfa nfa = oracle::to_nfa(raw);
        Dfa dfa = powerset_from(nfa, nfa.initials());
        RiDfa rid = build_ridfa(nfa);
        if (i % 2 == 0) { rid = reduce_interface(rid); }
        REQUIRE(same_nfa(round_trip(nfa), nfa));
        Dfa dback = round_trip(dfa);
        REQUIRE(dback == dfa);
        REQUIRE(dback.origin() == dfa.origin());
        REQUIRE(round_trip(rid) == rid);
        REQUIRE(round_trip(minimize_dfa(dfa)) == minimize_dfa(dfa));
    }
}

TEST_CASE("documents: validation") {
    using nlohmann::json;
    json doc = json::parse(save_automaton(fixtures::two_state_dfa()));
    CHECK(doc["format_version"] == kDocumentFormatVersion);
    CHECK(doc["kind"] == "dfa");

    json dup = doc;
    dup["transitions"].push_back({0, 0, 0});
    CHECK_THROWS_AS(load_automaton(dup.dump()), ValidationError);

    json version = doc;
    version["format_version"] = 99;
    CHECK_THROWS_AS(load_automaton(version.dump()), ValidationError);

    json kind = doc;
    kind["kind"] = "pda";
    CHECK_THROWS_AS(load_automaton(kind.dump()), ValidationError);

    json range = doc;
    range["initial"] = 7;
    CHECK_THROWS_AS(load_automaton(range.dump()), ValidationError);

    json rid = json::parse(save_automaton(reduce_interface(build_ridfa(fixtures::four_state_nfa()))));
    rid["contents"][1] = {1};
    CHECK_THROWS_AS(load_automaton(rid.dump()), ValidationError);

    CHECK_THROWS_AS(load_automaton("{ not json"), ParseError);
    CHECK_THROWS_AS(load_automaton("[1,2]"), ValidationError);
}

TEST_CASE("documents: files") {
    auto path = std::filesystem::temp_directory_path() / "ridfa_doc_test.json";
    write_automaton(path, fixtures::three_state_nfa());
    Machine m = read_automaton(path);
    CHECK(kind_name(m) == "nfa");
    CHECK(same_nfa(std::get<Nfa>(m), fixtures::three_state_nfa()));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_automaton(path), Error);
}

TEST_CASE("texts: mapping and foreign bytes") {
    Alphabet abc = Alphabet::from_bytes("abc");
    CHECK(map_text("aabcab", abc) == Word{0, 0, 1, 2, 0, 1});
    CHECK(map_text("", abc).empty());
    try {
        map_text("axb", Alphabet::from_bytes("ab"));
        FAIL("foreign byte accepted");
    } catch (const ForeignSymbolError& e) {
        CHECK(e.offset() == 1);
    }
    CHECK(map_text("axb", Alphabet::from_bytes("ab"), ForeignBytePolicy::Sink) == Word{0, 2, 1});

    auto path = std::filesystem::temp_directory_path() / "ridfa_text_test.txt";
    {
        std::ofstream(path) << "aabcab";
    }
    CHECK(load_text(path, abc).size() == 6);
    {
        std::ofstream(path, std::ios::trunc);
    }
    CHECK(load_text(path, abc).empty());
    std::filesystem::remove(path);
}

TEST_CASE("reports render as JSON") {
    Nfa nfa = fixtures::three_state_nfa();
    auto report = recognize_parallel(build_ridfa(nfa), fixtures::word(nfa.alphabet(), "aabcab"), 2);
    auto doc = nlohmann::json::parse(report_to_json(report));
    CHECK(doc["accepted"] == true);
    CHECK(doc["total_transitions"] == 9);
    CHECK(doc["variant"] == "ridfa");
    CHECK(doc["join_trace"].size() == 2);
    CHECK(doc.contains("reach_ms"));
    CHECK_FALSE(nlohmann::json::parse(report_to_json(report, false)).contains("reach_ms"));
}

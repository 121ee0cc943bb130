#include <catch_amalgamated.hpp>

#include <functional>
#include <set>

#include "oracles.hh"
#include "ridfa/formats.hh"
#include "ridfa/regex.hh"

using namespace ridfa;

namespace {

// Backtracking matcher over the syntax tree: the set of end offsets a node
// can reach from `begin`.
std::set<std::size_t> ends(const RegexNode& n, const Word& w, std::size_t begin) {
    using K = RegexNode::Kind;
    switch (n.kind) {
        case K::Epsilon: return {begin};
        case K::Literal:
        case K::Class:
            if (begin < w.size() && std::find(n.symbols.begin(), n.symbols.end(), w[begin]) != n.symbols.end()) {
                return {begin + 1};
            }
            return {};
        case K::AnyChar: return begin < w.size() ? std::set<std::size_t>{begin + 1} : std::set<std::size_t>{};
        case K::Concat: {
            std::set<std::size_t> cur{begin};
            for (const auto& child : n.children) {
                std::set<std::size_t> next;
                for (auto b : cur) {
                    auto e = ends(child, w, b);
                    next.insert(e.begin(), e.end());
                }
                cur = std::move(next);
            }
            return cur;
        }
        case K::Alt: {
            std::set<std::size_t> out;
            for (const auto& child : n.children) {
                auto e = ends(child, w, begin);
                out.insert(e.begin(), e.end());
            }
            return out;
        }
        case K::Opt: {
            auto out = ends(n.children[0], w, begin);
            out.insert(begin);
            return out;
        }
        case K::Star:
        case K::Plus: {
            std::set<std::size_t> out;
            if (n.kind == K::Star) { out.insert(begin); }
            std::vector<std::size_t> todo{begin};
            std::set<std::size_t> seen{begin};
            while (!todo.empty()) {
                auto b = todo.back();
                todo.pop_back();
                for (auto e : ends(n.children[0], w, b)) {
                    out.insert(e);
                    if (seen.insert(e).second) { todo.push_back(e); }
                }
            }
            return out;
        }
    }
    return {};
}

bool brute_match(const Regex& re, const Word& w) { return ends(re.root, w, 0).count(w.size()) != 0; }

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

} // namespace

TEST_CASE("implied alphabet is the used bytes in ascending order") {
    Regex re = parse_regex("c(b|a)*");
    CHECK(re.alphabet.symbols() == std::vector<std::string>{"a", "b", "c"});
    Regex cls = parse_regex("[a-c]x");
    CHECK(cls.alphabet.symbols() == std::vector<std::string>{"a", "b", "c", "x"});
}

TEST_CASE("malformed patterns report a byte offset") {
    auto offset = [](std::string_view p) -> std::size_t {
        try {
            parse_regex(p);
        } catch (const ParseError& e) {
            return e.position();
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(offset("") == 0);
    CHECK(offset("a(") == 1);
    CHECK(offset("*a") == 0);
    CHECK(offset("ab)") == 2);
    CHECK_THROWS_AS(parse_regex("a{2}"), ParseError);
    CHECK_THROWS_AS(parse_regex("[^a]"), ParseError);
    CHECK_THROWS_AS(parse_regex("^a"), ParseError);
}

TEST_CASE("Glushkov automaton has one state per position plus one") {
    for (std::string p : {"a", "ab|c", "(a|b)*a(a|b)", "a*b*c*", "x?y+z"}) {
        Regex re = parse_regex(p);
        CHECK(glushkov_nfa(re).state_count() == position_count(re.root) + 1);
    }
}

TEST_CASE("regexp family: k + 2 states after merging") {
    for (unsigned k = 0; k <= 10; ++k) {
        Regex re = parse_regex(regexp_family_pattern(k));
        CHECK(position_count(re.root) == 2 * k + 3);
        CHECK(regex_to_nfa(re).state_count() == k + 2);
    }
}

TEST_CASE("regexp family minimal DFA has 2^(k+1) states") {
    for (unsigned k = 0; k <= 6; ++k) {
        Regex re = parse_regex(regexp_family_pattern(k));
        Nfa nfa = glushkov_nfa(re);
        oracle::RawNfa raw{static_cast<unsigned>(nfa.state_count()), 2, {}, 0, 0};
        for (auto [q, a, r] : nfa.transitions()) { raw.edges.push_back({q, a, r}); }
        raw.initials = oracle::mask_of(nfa.initials());
        raw.finals = oracle::mask_of(nfa.finals());
        CHECK(oracle::min_dfa_size(raw) == (std::size_t{1} << (k + 1)));
        CHECK(minimize_dfa(powerset_from(nfa, nfa.initials())).state_count() == (std::size_t{1} << (k + 1)));
    }
}

TEST_CASE("automata agree with a backtracking matcher") {
    const char* patterns[] = {"a",        "ab|ba",      "(a|b)*abb",  "a*b*",          "(ab)+c?",
                              "[ab]c*a",  "(a|b)*a(a|b)(a|b)", "((a|b)c)*", "a?b?c?", ".a.",
                              "(a*|b)*c", "\\.a|b"};
    for (const char* p : patterns) {
        Regex re = parse_regex(p);
        Nfa g = glushkov_nfa(re);
        Nfa m = regex_to_nfa(re);
        for (const Word& w : words_upto(re.alphabet.size(), 6)) {
            bool expected = brute_match(re, w);
            INFO(p << " on " << to_string(re.alphabet, w));
            REQUIRE(nfa_accepts(g, w) == expected);
            REQUIRE(nfa_accepts(m, w) == expected);
        }
    }
}

TEST_CASE("explicit alphabet is respected") {
    RegexOptions options;
    options.alphabet = Alphabet::from_bytes("abc");
    Regex re = parse_regex("a.", options);
    Nfa nfa = regex_to_nfa(re);
    CHECK(nfa.alphabet().size() == 3);
    CHECK(nfa_accepts(nfa, map_text("ac", nfa.alphabet())));
    CHECK_THROWS_AS(parse_regex("d", options), ParseError);
}

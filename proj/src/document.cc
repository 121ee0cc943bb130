#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ridfa/formats.hh"

namespace ridfa {

using nlohmann::json;

namespace {

json alphabet_json(const Alphabet& alphabet) { return alphabet.symbols(); }

json transitions_json(const TableView& table) {
    json out = json::array();
    for (StateId p = 0; p < table.state_count; ++p) {
        for (SymbolId a = 0; a < table.width; ++a) {
            StateId t = table.next(p, a);
            if (t != kNoState) { out.push_back({p, a, t}); }
        }
    }
    return out;
}

json save_nfa(const Nfa& nfa) {
    json edges = json::array();
    for (auto [q, a, r] : nfa.transitions()) { edges.push_back({q, a, r}); }
    return {{"alphabet", alphabet_json(nfa.alphabet())},
            {"state_count", nfa.state_count()},
            {"initials", nfa.initials()},
            {"finals", nfa.finals()},
            {"transitions", std::move(edges)}};
}

json save_dfa(const Dfa& dfa) {
    json doc = {{"alphabet", alphabet_json(dfa.alphabet())},
                {"state_count", dfa.state_count()},
                {"initial", dfa.initial()},
                {"finals", dfa.finals()},
                {"transitions", transitions_json(dfa.table())}};
    if (dfa.origin()) { doc["origin"] = *dfa.origin(); }
    return doc;
}

json save_ridfa(const RiDfa& m) {
    json subsets = json::array();
    json contents = json::array();
    for (StateId p = 0; p < m.state_count(); ++p) {
        subsets.push_back(m.subset(p));
        contents.push_back(m.content(p));
    }
    json delegations = json::array();
    for (auto [from, to] : m.delegations()) { delegations.push_back({from, to}); }
    return {{"alphabet", alphabet_json(m.alphabet())},
            {"nfa_state_count", m.nfa_state_count()},
            {"state_count", m.state_count()},
            {"subsets", std::move(subsets)},
            {"contents", std::move(contents)},
            {"interface", m.interface()},
            {"designated_initials", m.designated_initials()},
            {"delegations", std::move(delegations)},
            {"finals", m.finals()},
            {"transitions", transitions_json(m.table())}};
}

const json& field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) { throw ValidationError(std::string("document lacks field '") + name + "'"); }
    return *it;
}

template <typename T>
T get(const json& doc, const char* name) {
    try {
        return field(doc, name).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("field '") + name + "' has the wrong type: " + e.what());
    }
}

Alphabet load_alphabet(const json& doc) {
    return Alphabet(get<std::vector<std::string>>(doc, "alphabet"));
}

StateSet load_set(const json& doc, const char* name, std::size_t bound) {
    auto values = get<std::vector<StateId>>(doc, name);
    StateSet out;
    for (StateId v : values) {
        if (v >= bound) {
            throw ValidationError(std::string("field '") + name + "' names state " + std::to_string(v) +
                                  " out of range");
        }
        if (!insert_sorted(out, v)) {
            throw ValidationError(std::string("field '") + name + "' repeats state " + std::to_string(v));
        }
    }
    return out;
}

using Edge = std::array<std::uint32_t, 3>;

std::vector<Edge> load_edges(const json& doc, std::size_t states, std::size_t symbols) {
    auto edges = get<std::vector<Edge>>(doc, "transitions");
    for (const auto& [q, a, r] : edges) {
        if (q >= states || r >= states) { throw ValidationError("transition names a state out of range"); }
        if (a >= symbols) { throw ValidationError("transition names a symbol out of range"); }
    }
    return edges;
}

Nfa load_nfa(const json& doc) {
    Alphabet alphabet = load_alphabet(doc);
    auto n = get<std::size_t>(doc, "state_count");
    Nfa nfa(n, alphabet);
    for (auto [q, a, r] : load_edges(doc, n, alphabet.size())) { nfa.add_transition(q, a, r); }
    for (StateId q : load_set(doc, "initials", n)) { nfa.add_initial(q); }
    for (StateId q : load_set(doc, "finals", n)) { nfa.add_final(q); }
    return nfa;
}

std::vector<StateId> load_table(const json& doc, std::size_t states, std::size_t symbols) {
    std::vector<StateId> delta(states * symbols, kNoState);
    for (auto [q, a, r] : load_edges(doc, states, symbols)) {
        StateId& cell = delta[static_cast<std::size_t>(q) * symbols + a];
        if (cell != kNoState) {
            throw ValidationError("state " + std::to_string(q) + " has two transitions on symbol " +
                                  std::to_string(a));
        }
        cell = r;
    }
    return delta;
}

Dfa load_dfa(const json& doc) {
    Alphabet alphabet = load_alphabet(doc);
    auto n = get<std::size_t>(doc, "state_count");
    if (n == 0) { throw ValidationError("a DFA needs at least one state"); }
    const std::size_t k = alphabet.size();
    std::vector<StateId> delta = load_table(doc, n, k);
    Dfa dfa(n, std::move(alphabet));
    for (StateId p = 0; p < n; ++p) {
        for (SymbolId a = 0; a < k; ++a) {
            if (StateId t = delta[p * k + a]; t != kNoState) { dfa.set_transition(p, a, t); }
        }
    }
    auto initial = get<StateId>(doc, "initial");
    if (initial >= n) { throw ValidationError("initial state out of range"); }
    dfa.set_initial(initial);
    for (StateId q : load_set(doc, "finals", n)) { dfa.set_final(q); }
    if (doc.contains("origin")) {
        auto origin = get<std::vector<StateSet>>(doc, "origin");
        if (origin.size() != n) { throw ValidationError("origin must list one subset per state"); }
        dfa.set_origin(std::move(origin));
    }
    return dfa;
}

RiDfa load_ridfa(const json& doc) {
    Alphabet alphabet = load_alphabet(doc);
    auto ell = get<std::size_t>(doc, "nfa_state_count");
    auto subsets = get<std::vector<StateSet>>(doc, "subsets");
    const std::size_t n = subsets.size();
    if (doc.contains("state_count") && get<std::size_t>(doc, "state_count") != n) {
        throw ValidationError("state_count disagrees with the subset list");
    }
    std::vector<StateId> delta = load_table(doc, n, alphabet.size());
    StateSet finals = load_set(doc, "finals", n);
    StateSet initials = load_set(doc, "designated_initials", n);
    auto pairs = get<std::vector<std::array<StateId, 2>>>(doc, "delegations");
    std::vector<std::pair<StateId, StateId>> delegations;
    for (auto [from, to] : pairs) { delegations.emplace_back(from, to); }

    RiDfa m = RiDfa::from_parts(std::move(alphabet), ell, std::move(subsets), std::move(delta),
                                std::move(finals), std::move(initials), std::move(delegations));

    // Derived fields are stored for readers; they must agree with the parts.
    if (doc.contains("interface") && get<StateSet>(doc, "interface") != m.interface()) {
        throw ValidationError("interface disagrees with the delegations");
    }
    if (doc.contains("contents")) {
        auto contents = get<std::vector<StateSet>>(doc, "contents");
        if (contents.size() != n) { throw ValidationError("contents must list one set per state"); }
        for (StateId p = 0; p < n; ++p) {
            if (contents[p] != m.content(p)) {
                throw ValidationError("content of state " + std::to_string(p) +
                                      " disagrees with the delegations");
            }
        }
    }
    return m;
}

} // namespace

std::string_view kind_name(const Machine& machine) {
    switch (machine.index()) {
        case 0: return "nfa";
        case 1: return "dfa";
        default: return "ridfa";
    }
}

std::string save_automaton(const Machine& machine) {
    json doc = std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Nfa>) {
                return save_nfa(m);
            } else if constexpr (std::is_same_v<T, Dfa>) {
                return save_dfa(m);
            } else {
                return save_ridfa(m);
            }
        },
        machine);
    json out = {{"format_version", kDocumentFormatVersion}, {"kind", kind_name(machine)}};
    out.update(doc);
    return out.dump(1) + "\n";
}

Machine load_automaton(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed automaton document: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) { throw ValidationError("automaton document must be an object"); }
    auto version = get<int>(doc, "format_version");
    if (version != kDocumentFormatVersion) {
        throw ValidationError("unsupported format_version " + std::to_string(version) + " (expected " +
                              std::to_string(kDocumentFormatVersion) + ")");
    }
    auto kind = get<std::string>(doc, "kind");
    if (kind == "nfa") { return load_nfa(doc); }
    if (kind == "dfa") { return load_dfa(doc); }
    if (kind == "ridfa") { return load_ridfa(doc); }
    throw ValidationError("unknown automaton kind '" + kind + "'");
}

void write_automaton(const std::filesystem::path& path, const Machine& machine) {
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw Error("cannot open " + path.string() + " for writing"); }
    out << save_automaton(machine);
    if (!out) { throw Error("failed writing " + path.string()); }
}

Machine read_automaton(const std::filesystem::path& path) { return load_automaton(read_file(path)); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) { throw Error("cannot open " + path.string()); }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Word map_text(std::string_view bytes, const Alphabet& alphabet, ForeignBytePolicy policy) {
    const auto sink = static_cast<SymbolId>(alphabet.size());
    Word out;
    out.reserve(bytes.size());
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        auto byte = static_cast<unsigned char>(bytes[i]);
        if (auto id = alphabet.find_byte(byte)) {
            out.push_back(*id);
        } else if (policy == ForeignBytePolicy::Sink) {
            out.push_back(sink);
        } else {
            std::ostringstream msg;
            msg << "byte 0x" << std::hex << static_cast<unsigned>(byte) << std::dec << " at offset " << i
                << " is not in the alphabet";
            throw ForeignSymbolError(msg.str(), i);
        }
    }
    return out;
}

Word load_text(const std::filesystem::path& path, const Alphabet& alphabet, ForeignBytePolicy policy) {
    return map_text(read_file(path), alphabet, policy);
}

std::string report_to_json(const RecognitionReport& report, bool with_timings) {
    json trace = json::array();
    for (const auto& step : report.join_trace) {
        trace.push_back({{"carried", step.carried}, {"pis", step.pis}, {"plas", step.plas}});
    }
    json out = {{"accepted", report.accepted},
                {"variant", to_string(report.variant)},
                {"text_length", report.text_length},
                {"chunk_count", report.chunk_count},
                {"total_transitions", report.total_transitions},
                {"per_chunk_transitions", report.per_chunk_transitions},
                {"per_chunk_runs", report.per_chunk_runs},
                {"join_trace", std::move(trace)}};
    if (with_timings) {
        out["reach_ms"] = report.reach_ms;
        out["join_ms"] = report.join_ms;
    }
    return out.dump(1) + "\n";
}

} // namespace ridfa

// Command-line driver: build automata, recognize texts, run benchmark sweeps
// and print construction statistics.
//
// Exit codes: 0 accept/success, 1 reject, 2 usage/input error, 3 internal error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ridfa/bench.hh"
#include "ridfa/formats.hh"
#include "ridfa/regex.hh"
#include "ridfa/textgen.hh"

using namespace ridfa;

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

using Clock = std::chrono::steady_clock;

double since_ms(Clock::time_point t) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct SourceOptions {
    std::string re;
    std::string timbuk;
    std::string automaton;
    int regexp_k = -1;
    std::size_t max_states = 0;

    void attach(CLI::App& cmd, bool with_document) {
        auto* re_opt = cmd.add_option("--re", re, "regular expression over bytes");
        auto* tb_opt = cmd.add_option("--timbuk", timbuk, "Timbuk word automaton file")->check(CLI::ExistingFile);
        auto* k_opt = cmd.add_option("--regexp-k", regexp_k, "synthetic (a|b)*a(a|b)^k family member")
                          ->check(CLI::Range(0, 64));
        re_opt->excludes(tb_opt)->excludes(k_opt);
        tb_opt->excludes(k_opt);
        if (with_document) {
            auto* doc = cmd.add_option("--automaton", automaton, "saved automaton document")
                            ->check(CLI::ExistingFile);
            doc->excludes(re_opt)->excludes(tb_opt)->excludes(k_opt);
        }
        cmd.add_option("--max-states", max_states, "abort constructions beyond this many states (0: no limit)");
    }

    std::string label() const {
        if (!re.empty()) { return re; }
        if (!timbuk.empty()) { return std::filesystem::path(timbuk).filename().string(); }
        if (regexp_k >= 0) { return "regexp" + std::to_string(regexp_k); }
        return std::filesystem::path(automaton).filename().string();
    }

    Nfa load_nfa() const {
        if (!re.empty()) { return regex_to_nfa(parse_regex(re)); }
        if (regexp_k >= 0) { return regex_to_nfa(parse_regex(regexp_family_pattern(regexp_k))); }
        if (!timbuk.empty()) {
            TimbukAutomaton t = load_timbuk(timbuk);
            for (const auto& w : t.warnings) { std::cerr << "warning: " << w << "\n"; }
            return std::move(t.nfa);
        }
        throw ValidationError("no automaton source: use --re, --timbuk or --regexp-k");
    }
};

std::string alphabet_text(const Alphabet& alphabet) {
    std::string out;
    for (const auto& s : alphabet.symbols()) {
        if (!out.empty() && s.size() != 1) { out += ' '; }
        out += s;
    }
    return out;
}

// --- build ------------------------------------------------------------------

struct BuildOptions {
    SourceOptions source;
    std::string out;
    bool reduce = false;
};

int cmd_build(const BuildOptions& opt) {
    auto t0 = Clock::now();
    Nfa nfa = opt.source.load_nfa();
    double nfa_ms = since_ms(t0);

    t0 = Clock::now();
    Dfa dfa = minimize_dfa(powerset_from(nfa, nfa.initials(), opt.source.max_states));
    double dfa_ms = since_ms(t0);

    t0 = Clock::now();
    RiDfa rid = build_ridfa(nfa, opt.source.max_states);
    double rid_ms = since_ms(t0);
    const std::size_t interface_before = rid.interface().size();

    t0 = Clock::now();
    RiDfa reduced = reduce_interface(rid);
    double reduce_ms = since_ms(t0);

    std::printf("alphabet=%s nfa_states=%zu min_dfa_states=%zu ridfa_states=%zu interface=%zu "
                "interface_reduced=%zu nfa_ms=%.3f dfa_ms=%.3f ridfa_ms=%.3f reduce_ms=%.3f\n",
                alphabet_text(nfa.alphabet()).c_str(), nfa.state_count(), dfa.state_count(),
                rid.state_count(), interface_before, reduced.interface().size(), nfa_ms, dfa_ms, rid_ms,
                reduce_ms);

    if (!opt.out.empty()) {
        std::filesystem::path dir(opt.out);
        std::filesystem::create_directories(dir);
        write_automaton(dir / "nfa.json", nfa);
        write_automaton(dir / "dfa.json", dfa);
        write_automaton(dir / "ridfa.json", opt.reduce ? reduced : rid);
    }
    return kExitAccept;
}

// --- recognize --------------------------------------------------------------

struct TextOptions {
    std::string text;
    std::string gen;
    std::vector<std::size_t> lengths;
    std::uint64_t seed = 1;
    bool sink = false;

    void attach(CLI::App& cmd, bool many) {
        auto* text_opt = cmd.add_option("--text", text, "text file (raw bytes)")->check(CLI::ExistingFile);
        auto* gen_opt = cmd.add_option("--gen", gen, "generate text instead: uniform or walk")
                            ->check(CLI::IsMember({"uniform", "walk"}));
        text_opt->excludes(gen_opt);
        auto* len = cmd.add_option("--len", lengths, many ? "generated text lengths" : "generated text length");
        if (!many) { len->expected(1); }
        cmd.add_option("--seed", seed, "generator seed");
        cmd.add_flag("--sink", sink, "map bytes outside the alphabet to a dead symbol instead of failing");
    }

    using Generator = std::function<Word(GenMode, std::size_t, std::uint64_t)>;

    std::vector<BenchText> load(const Alphabet& alphabet, const Generator& generate) const {
        if (!text.empty()) {
            auto policy = sink ? ForeignBytePolicy::Sink : ForeignBytePolicy::Strict;
            return {{std::filesystem::path(text).filename().string(), load_text(text, alphabet, policy)}};
        }
        if (gen.empty()) { throw ValidationError("no text: use --text or --gen with --len"); }
        if (lengths.empty()) { throw ValidationError("--gen needs --len"); }
        GenMode mode = *parse_gen_mode(gen);
        std::vector<BenchText> out;
        for (std::size_t n : lengths) {
            out.push_back({gen + std::to_string(n) + "s" + std::to_string(seed), generate(mode, n, seed)});
        }
        return out;
    }

    std::vector<BenchText> load(const Nfa& nfa) const {
        return load(nfa.alphabet(), [&](GenMode mode, std::size_t n, std::uint64_t s) {
            return gen_text(mode, n, s, nfa);
        });
    }

    std::vector<BenchText> load(const Dfa& dfa) const {
        return load(dfa.alphabet(), [&](GenMode mode, std::size_t n, std::uint64_t s) {
            if (mode == GenMode::Uniform) { return gen_uniform(n, dfa.symbol_count(), s); }
            return gen_walk(minimize_dfa(dfa), n, s);
        });
    }

    std::vector<BenchText> load(const RiDfa& rid) const {
        return load(rid.alphabet(), [&](GenMode mode, std::size_t n, std::uint64_t s) {
            if (mode == GenMode::Walk) { throw ValidationError("walk generation needs an NFA or DFA document"); }
            return gen_uniform(n, rid.symbol_count(), s);
        });
    }
};

struct RecognizeOptions {
    SourceOptions source;
    TextOptions text;
    std::string variant = "ridfa";
    std::size_t chunks = 1;
    bool reduce = false;
    bool serial = false;
    bool json = false;
};

template <typename M>
RecognitionReport run(const M& machine, const Word& text, const RecognizeOptions& opt) {
    return recognize_parallel(machine, text, opt.chunks,
                              opt.serial ? Execution::Serial : Execution::Parallel);
}

void print_report(const RecognitionReport& r) {
    std::printf("verdict: %s\n", r.accepted ? "accept" : "reject");
    std::printf("variant: %s\n", std::string(to_string(r.variant)).c_str());
    std::printf("text_length: %zu\n", r.text_length);
    std::printf("chunks: %zu\n", r.chunk_count);
    std::printf("transitions: %llu\n", static_cast<unsigned long long>(r.total_transitions));
    std::printf("per_chunk:");
    for (auto t : r.per_chunk_transitions) { std::printf(" %llu", static_cast<unsigned long long>(t)); }
    std::printf("\nruns:");
    for (auto n : r.per_chunk_runs) { std::printf(" %zu", n); }
    std::printf("\nreach_ms: %.3f\njoin_ms: %.3f\n", r.reach_ms, r.join_ms);
}

int cmd_recognize(const RecognizeOptions& opt) {
    Variant variant = *parse_variant(opt.variant);
    RecognitionReport report;
    if (!opt.source.automaton.empty()) {
        Machine machine = read_automaton(opt.source.automaton);
        if (kind_name(machine) != to_string(variant)) {
            throw ValidationError("variant " + std::string(to_string(variant)) + " needs a " +
                                  std::string(to_string(variant)) + " document, got " +
                                  std::string(kind_name(machine)));
        }
        std::visit(
            [&](const auto& m) {
                Word text = opt.text.load(m).front().text;
                if constexpr (std::is_same_v<std::decay_t<decltype(m)>, RiDfa>) {
                    report = run(opt.reduce ? reduce_interface(m) : m, text, opt);
                } else {
                    report = run(m, text, opt);
                }
            },
            machine);
    } else {
        Nfa nfa = opt.source.load_nfa();
        Word text = opt.text.load(nfa).front().text;
        switch (variant) {
            case Variant::Dfa:
                report = run(minimize_dfa(powerset_from(nfa, nfa.initials(), opt.source.max_states)), text, opt);
                break;
            case Variant::Nfa: report = run(nfa, text, opt); break;
            case Variant::RiDfa: {
                RiDfa rid = build_ridfa(nfa, opt.source.max_states);
                report = run(opt.reduce ? reduce_interface(rid) : rid, text, opt);
                break;
            }
        }
    }
    if (opt.json) {
        std::cout << report_to_json(report);
    } else {
        print_report(report);
    }
    return report.accepted ? kExitAccept : kExitReject;
}

// --- bench ------------------------------------------------------------------

struct BenchOptions {
    SourceOptions source;
    TextOptions text;
    std::vector<std::string> variants;
    std::vector<std::size_t> chunks;
    std::size_t reps = 5;
    std::string csv;
    std::string name;
    bool reduce = false;
    bool serial = false;
    bool no_timings = false;
};

int cmd_bench(const BenchOptions& opt) {
    Nfa nfa = opt.source.load_nfa();
    BenchConfig config;
    config.benchmark = opt.name.empty() ? opt.source.label() : opt.name;
    if (!opt.variants.empty()) {
        config.variants.clear();
        for (const auto& v : opt.variants) { config.variants.push_back(*parse_variant(v)); }
    }
    if (!opt.chunks.empty()) { config.chunk_counts = opt.chunks; }
    config.reps = opt.reps;
    config.execution = opt.serial ? Execution::Serial : Execution::Parallel;
    if (!opt.text.text.empty() || !opt.text.gen.empty()) { config.texts = opt.text.load(nfa); }
    config.validate();

    BenchMachines machines = prepare_machines(nfa, opt.reduce, opt.source.max_states);
    std::vector<BenchRow> rows = run_bench(machines, config);

    if (opt.csv.empty() || opt.csv == "-") {
        write_csv(std::cout, rows, !opt.no_timings);
    } else {
        std::ofstream out(opt.csv);
        if (!out) { throw Error("cannot open " + opt.csv + " for writing"); }
        write_csv(out, rows, !opt.no_timings);
    }
    std::size_t failed = 0;
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            ++failed;
            std::cerr << "cell " << to_string(row.variant) << " c=" << row.chunks << " " << row.text
                      << " failed: " << row.error << "\n";
        }
    }
    return failed == 0 ? kExitAccept : kExitUsage;
}

// --- stats ------------------------------------------------------------------

struct StatsOptions {
    std::vector<std::string> timbuk;
    std::vector<std::string> re;
    std::vector<int> regexp_k;
    std::size_t max_states = 0;
    std::string csv;
};

int cmd_stats(const StatsOptions& opt) {
    std::ostringstream out;
    out << "automaton,nfa_states,nfa_transitions,min_dfa_states,ridfa_states,interface,interface_reduced,"
           "ridfa_ms,error\n";
    std::vector<std::pair<std::string, std::function<Nfa()>>> sources;
    for (const auto& path : opt.timbuk) {
        sources.emplace_back(path, [path] { return load_timbuk(path).nfa; });
    }
    for (const auto& pattern : opt.re) {
        sources.emplace_back(pattern, [pattern] { return regex_to_nfa(parse_regex(pattern)); });
    }
    for (int k : opt.regexp_k) {
        sources.emplace_back("regexp" + std::to_string(k),
                             [k] { return regex_to_nfa(parse_regex(regexp_family_pattern(k))); });
    }
    if (sources.empty()) { throw ValidationError("stats needs at least one --timbuk, --re or --regexp-k"); }
    std::size_t failed = 0;
    for (const auto& [name, make] : sources) {
        std::string field = name;
        if (field.find_first_of(",\"") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : field) {
                if (c == '"') { quoted += '"'; }
                quoted += c;
            }
            field = quoted + "\"";
        }
        try {
            Nfa nfa = make();
            Dfa dfa = minimize_dfa(powerset_from(nfa, nfa.initials(), opt.max_states));
            auto t0 = Clock::now();
            RiDfa rid = build_ridfa(nfa, opt.max_states);
            double ms = since_ms(t0);
            RiDfa reduced = reduce_interface(rid);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3f", ms);
            out << field << ',' << nfa.state_count() << ',' << nfa.transition_count() << ','
                << dfa.state_count() << ',' << rid.state_count() << ',' << rid.interface().size() << ','
                << reduced.interface().size() << ',' << buf << ",\n";
        } catch (const Error& e) {
            ++failed;
            std::string msg = e.what();
            for (char& c : msg) {
                if (c == ',' || c == '\n') { c = ' '; }
            }
            out << field << ",,,,,,,," << msg << "\n";
        }
    }
    if (opt.csv.empty() || opt.csv == "-") {
        std::cout << out.str();
    } else {
        std::ofstream file(opt.csv);
        if (!file) { throw Error("cannot open " + opt.csv + " for writing"); }
        file << out.str();
    }
    return failed == 0 ? kExitAccept : kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ridfa: RI-DFA construction and speculative chunked recognition"};
    app.require_subcommand(1);

    BuildOptions build;
    auto* build_cmd = app.add_subcommand("build", "build NFA, minimal DFA and RI-DFA, print a stats line");
    build.source.attach(*build_cmd, false);
    build_cmd->add_option("--out", build.out, "directory for nfa.json, dfa.json and ridfa.json");
    build_cmd->add_flag("--reduce-interface", build.reduce, "save the RI-DFA with a reduced interface");

    RecognizeOptions rec;
    auto* rec_cmd = app.add_subcommand("recognize", "run the chunked recognizer on one text");
    rec.source.attach(*rec_cmd, true);
    rec.text.attach(*rec_cmd, false);
    rec_cmd->add_option("--variant", rec.variant, "chunk automaton")
        ->check(CLI::IsMember({"dfa", "nfa", "ridfa"}))
        ->capture_default_str();
    rec_cmd->add_option("--chunks", rec.chunks, "number of chunks")->check(CLI::PositiveNumber)->capture_default_str();
    rec_cmd->add_flag("--reduce-interface", rec.reduce, "reduce the RI-DFA interface first");
    rec_cmd->add_flag("--serial", rec.serial, "run the reach phase with the serial reference loop");
    rec_cmd->add_flag("--json", rec.json, "print the report as JSON");

    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "sweep variants x chunk counts x texts, write CSV");
    bench.source.attach(*bench_cmd, false);
    bench.text.attach(*bench_cmd, true);
    bench_cmd->add_option("--variant", bench.variants, "variants to run (default: all)")
        ->delimiter(',')
        ->check(CLI::IsMember({"dfa", "nfa", "ridfa"}));
    bench_cmd->add_option("--chunks", bench.chunks, "chunk counts (default: 2,10,...,66)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--reps", bench.reps, "repetitions per cell")->check(CLI::PositiveNumber)->capture_default_str();
    bench_cmd->add_option("--csv", bench.csv, "output file (default: stdout)");
    bench_cmd->add_option("--name", bench.name, "benchmark label (default: derived from the source)");
    bench_cmd->add_flag("--reduce-interface", bench.reduce, "reduce the RI-DFA interface first");
    bench_cmd->add_flag("--serial", bench.serial, "use the serial reach loop");
    bench_cmd->add_flag("--no-timings", bench.no_timings, "omit timing columns");

    StatsOptions stats;
    auto* stats_cmd = app.add_subcommand("stats", "one CSV line of construction sizes per automaton");
    stats_cmd->add_option("--timbuk", stats.timbuk, "Timbuk files")->check(CLI::ExistingFile);
    stats_cmd->add_option("--re", stats.re, "regular expressions");
    stats_cmd->add_option("--regexp-k", stats.regexp_k, "regexp family members")->delimiter(',')->check(CLI::Range(0, 64));
    stats_cmd->add_option("--max-states", stats.max_states, "per-construction state limit (0: no limit)");
    stats_cmd->add_option("--csv", stats.csv, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*build_cmd) { return cmd_build(build); }
        if (*rec_cmd) { return cmd_recognize(rec); }
        if (*bench_cmd) { return cmd_bench(bench); }
        if (*stats_cmd) { return cmd_stats(stats); }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << " (at " << e.position() << ")\n";
        return kExitUsage;
    } catch (const ForeignSymbolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}

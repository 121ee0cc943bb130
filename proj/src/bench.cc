#include "ridfa/bench.hh"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>

namespace ridfa {

namespace {

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

RecognitionReport run_variant(const BenchMachines& m, Variant variant, const Word& text,
                              std::size_t chunks, Execution execution) {
    switch (variant) {
        case Variant::Dfa: return recognize_parallel(m.dfa, text, chunks, execution);
        case Variant::Nfa: return recognize_parallel(m.nfa, text, chunks, execution);
        case Variant::RiDfa: return recognize_parallel(m.ridfa, text, chunks, execution);
    }
    throw InternalError("unknown variant");
}

BenchRow run_cell(const BenchMachines& m, const BenchConfig& config, const BenchText& text,
                  Variant variant, std::size_t chunks) {
    BenchRow row;
    row.benchmark = config.benchmark;
    row.text = text.label;
    row.variant = variant;
    row.chunks = chunks;
    row.text_length = text.text.size();
    std::vector<double> reach;
    std::vector<double> join;
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
        RecognitionReport report = run_variant(m, variant, text.text, chunks, config.execution);
        if (rep == 0) {
            row.transitions_total = report.total_transitions;
            row.transitions_per_chunk = report.per_chunk_transitions;
            row.accepted = report.accepted;
        } else if (report.total_transitions != row.transitions_total ||
                   report.per_chunk_transitions != row.transitions_per_chunk ||
                   report.accepted != row.accepted) {
            throw InternalError("repetitions of one cell disagree on counts or verdict");
        }
        reach.push_back(report.reach_ms);
        join.push_back(report.join_ms);
    }
    row.reach_ms = median(reach);
    row.join_ms = median(join);
    return row;
}

std::string format_ratio(const std::optional<double>& ratio) {
    if (!ratio) { return ""; }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", *ratio);
    return buf;
}

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", ms);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) { return s; }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') { out += '"'; }
        out += c;
    }
    return out + "\"";
}

} // namespace

BenchMachines prepare_machines(const Nfa& nfa, bool reduce, std::size_t max_states) {
    BenchMachines m{nfa, minimize_dfa(powerset_from(nfa, nfa.initials(), max_states)),
                    build_ridfa(nfa, max_states)};
    if (reduce) { m.ridfa = reduce_interface(m.ridfa); }
    return m;
}

std::vector<std::size_t> BenchConfig::default_chunk_counts() {
    std::vector<std::size_t> out;
    for (std::size_t c = 2; c <= 66; c += 8) { out.push_back(c); }
    return out;
}

void BenchConfig::validate() const {
    if (variants.empty()) { throw ValidationError("bench needs at least one variant"); }
    if (chunk_counts.empty()) { throw ValidationError("bench needs at least one chunk count"); }
    if (std::find(chunk_counts.begin(), chunk_counts.end(), 0) != chunk_counts.end()) {
        throw ValidationError("chunk counts must be positive");
    }
    if (texts.empty()) { throw ValidationError("bench needs at least one text"); }
    if (reps == 0) { throw ValidationError("bench needs at least one repetition"); }
}

std::vector<BenchRow> run_bench(const BenchMachines& machines, const BenchConfig& config) {
    config.validate();
    std::vector<BenchRow> rows;
    for (const auto& text : config.texts) {
        for (std::size_t chunks : config.chunk_counts) {
            const std::size_t first = rows.size();
            std::map<Variant, std::uint64_t> totals;
            for (Variant variant : config.variants) {
                try {
                    rows.push_back(run_cell(machines, config, text, variant, chunks));
                    totals[variant] = rows.back().transitions_total;
                } catch (const InternalError&) {
                    throw;
                } catch (const std::exception& e) {
                    BenchRow row;
                    row.benchmark = config.benchmark;
                    row.text = text.label;
                    row.variant = variant;
                    row.chunks = chunks;
                    row.text_length = text.text.size();
                    row.error = e.what();
                    rows.push_back(std::move(row));
                }
            }
            auto rid = totals.find(Variant::RiDfa);
            if (rid == totals.end() || rid->second == 0) { continue; }
            auto ratio = [&](Variant v) -> std::optional<double> {
                auto it = totals.find(v);
                if (it == totals.end()) { return std::nullopt; }
                return static_cast<double>(it->second) / static_cast<double>(rid->second);
            };
            for (std::size_t i = first; i < rows.size(); ++i) {
                rows[i].ratio_dfa_rid = ratio(Variant::Dfa);
                rows[i].ratio_nfa_rid = ratio(Variant::Nfa);
            }
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, bool with_timings) {
    out << "benchmark,text,variant,chunks,text_length,transitions_total,transitions_per_chunk,accepted";
    if (with_timings) { out << ",reach_ms,join_ms"; }
    out << ",ratio_dfa_rid,ratio_nfa_rid,error\n";
    for (const auto& row : rows) {
        std::string per_chunk;
        for (std::size_t i = 0; i < row.transitions_per_chunk.size(); ++i) {
            if (i != 0) { per_chunk += ';'; }
            per_chunk += std::to_string(row.transitions_per_chunk[i]);
        }
        out << csv_field(row.benchmark) << ',' << csv_field(row.text) << ',' << to_string(row.variant)
            << ',' << row.chunks << ',' << row.text_length << ',' << row.transitions_total << ','
            << per_chunk << ',' << (row.accepted ? 1 : 0);
        if (with_timings) { out << ',' << format_ms(row.reach_ms) << ',' << format_ms(row.join_ms); }
        out << ',' << format_ratio(row.ratio_dfa_rid) << ',' << format_ratio(row.ratio_nfa_rid) << ','
            << csv_field(row.error) << '\n';
    }
}

} // namespace ridfa

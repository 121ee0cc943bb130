#include "ridfa/partition.hh"

#include <algorithm>

namespace ridfa {

namespace {

// Refinable partition over 0..n-1. Elements of a block are contiguous in
// `elems_`; marked elements are swapped to the front of their block.
class RefinablePartition {
public:
    explicit RefinablePartition(std::size_t n)
        : elems_(n), loc_(n), block_(n, 0) {
        for (std::size_t i = 0; i < n; ++i) {
            elems_[i] = static_cast<std::uint32_t>(i);
            loc_[i] = static_cast<std::uint32_t>(i);
        }
        if (n != 0) {
            first_.push_back(0);
            end_.push_back(static_cast<std::uint32_t>(n));
            mid_.push_back(0);
        }
    }

    std::size_t block_count() const { return first_.size(); }
    std::uint32_t block_of(std::uint32_t e) const { return block_[e]; }
    std::uint32_t size(std::uint32_t b) const { return end_[b] - first_[b]; }
    std::span<const std::uint32_t> members(std::uint32_t b) const {
        return {elems_.data() + first_[b], size(b)};
    }

    void mark(std::uint32_t e) {
        std::uint32_t b = block_[e];
        std::uint32_t i = loc_[e];
        std::uint32_t j = mid_[b];
        if (i < j) { return; }
        std::swap(elems_[i], elems_[j]);
        loc_[elems_[i]] = i;
        loc_[elems_[j]] = j;
        if (mid_[b]++ == first_[b]) { touched_.push_back(b); }
    }

    /// Splits every touched block into marked and unmarked parts. Calls
    /// on_split(old_block, new_block) for each proper split; the new block
    /// holds the marked part.
    template <typename F>
    void split_touched(F&& on_split) {
        for (std::uint32_t b : touched_) {
            if (mid_[b] == end_[b]) {
                mid_[b] = first_[b];
                continue;
            }
            auto nb = static_cast<std::uint32_t>(first_.size());
            first_.push_back(first_[b]);
            end_.push_back(mid_[b]);
            mid_.push_back(first_[b]);
            first_[b] = mid_[b];
            for (std::uint32_t i = first_[nb]; i < end_[nb]; ++i) { block_[elems_[i]] = nb; }
            on_split(b, nb);
        }
        touched_.clear();
    }

private:
    std::vector<std::uint32_t> elems_, loc_, block_;
    std::vector<std::uint32_t> first_, end_, mid_;
    std::vector<std::uint32_t> touched_;
};

} // namespace

Partition nerode_partition(const TableView& table) {
    const std::size_t n = table.state_count;
    const std::size_t k = table.width;
    const auto dead = static_cast<std::uint32_t>(n);
    const std::size_t total = n + 1;

    // Inverse transitions per symbol in CSR form, dead state included.
    std::vector<std::vector<std::uint32_t>> inv_start(k, std::vector<std::uint32_t>(total + 1, 0));
    std::vector<std::vector<std::uint32_t>> inv_src(k, std::vector<std::uint32_t>(total));
    auto target = [&](std::uint32_t q, SymbolId a) -> std::uint32_t {
        if (q == dead) { return dead; }
        StateId t = table.delta[static_cast<std::size_t>(q) * k + a];
        return t == kNoState ? dead : t;
    };
    for (SymbolId a = 0; a < k; ++a) {
        auto& start = inv_start[a];
        for (std::uint32_t q = 0; q < total; ++q) { ++start[target(q, a) + 1]; }
        for (std::size_t t = 0; t < total; ++t) { start[t + 1] += start[t]; }
        std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
        for (std::uint32_t q = 0; q < total; ++q) { inv_src[a][fill[target(q, a)]++] = q; }
    }

    RefinablePartition part(total);
    for (std::uint32_t q = 0; q < n; ++q) {
        if (table.final[q]) { part.mark(q); }
    }
    std::vector<std::pair<std::uint32_t, SymbolId>> worklist;
    std::vector<std::vector<std::uint8_t>> queued;  // queued[block][symbol]
    auto enqueue = [&](std::uint32_t b, SymbolId a) {
        if (queued.size() <= b) { queued.resize(b + 1, std::vector<std::uint8_t>(k, 0)); }
        if (!queued[b][a]) {
            queued[b][a] = 1;
            worklist.emplace_back(b, a);
        }
    };
    auto on_split = [&](std::uint32_t b, std::uint32_t nb) {
        if (queued.size() <= nb) { queued.resize(nb + 1, std::vector<std::uint8_t>(k, 0)); }
        for (SymbolId a = 0; a < k; ++a) {
            if (queued[b][a]) {
                enqueue(nb, a);
            } else {
                enqueue(part.size(nb) <= part.size(b) ? nb : b, a);
            }
        }
    };
    part.split_touched([&](std::uint32_t b, std::uint32_t nb) {
        // Initial final/non-final split: one side suffices as splitter.
        if (queued.size() <= nb) { queued.resize(nb + 1, std::vector<std::uint8_t>(k, 0)); }
        std::uint32_t smaller = part.size(nb) <= part.size(b) ? nb : b;
        for (SymbolId a = 0; a < k; ++a) { enqueue(smaller, a); }
    });

    std::vector<std::uint32_t> splitter;
    while (!worklist.empty()) {
        auto [b, a] = worklist.back();
        worklist.pop_back();
        queued[b][a] = 0;
        auto members = part.members(b);
        splitter.assign(members.begin(), members.end());
        for (std::uint32_t t : splitter) {
            const auto& start = inv_start[a];
            for (std::uint32_t i = start[t]; i < start[t + 1]; ++i) { part.mark(inv_src[a][i]); }
        }
        part.split_touched(on_split);
    }

    // Collect classes ordered by lowest member; the dead state is last in
    // index order so it never decides the order of live classes.
    Partition result;
    result.class_of.assign(n, 0);
    std::vector<std::uint32_t> renumber(part.block_count(), UINT32_MAX);
    for (std::uint32_t q = 0; q < total; ++q) {
        std::uint32_t b = part.block_of(q);
        if (renumber[b] == UINT32_MAX) {
            if (q == dead) {
                continue;
            }
            renumber[b] = static_cast<std::uint32_t>(result.classes.size());
            result.classes.emplace_back();
        }
        if (q != dead) {
            result.class_of[q] = renumber[b];
            result.classes[renumber[b]].push_back(q);
        }
    }
    if (std::uint32_t db = part.block_of(dead); renumber[db] != UINT32_MAX) {
        result.dead_class = renumber[db];
    }
    return result;
}

} // namespace ridfa

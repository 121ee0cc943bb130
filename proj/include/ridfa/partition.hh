#pragma once

#include <optional>
#include <vector>

#include "ridfa/dfa.hh"
#include "ridfa/types.hh"

namespace ridfa {

/// Language-equivalence classes of a deterministic table.
struct Partition {
    /// Class index of every state.
    std::vector<std::uint32_t> class_of;
    /// Members of each class, sorted; classes ordered by their lowest member.
    std::vector<StateSet> classes;
    /// Class of the conceptual dead state (states with an empty future land
    /// here too), or nullopt if no state is equivalent to it.
    std::optional<std::uint32_t> dead_class;

    bool equivalent(StateId a, StateId b) const { return class_of[a] == class_of[b]; }
};

/// Nerode partition by Hopcroft's partition refinement. Missing transitions
/// go to an implicit dead state, which starts in the non-final block.
/// Works on any deterministic table, including a multi-entry one, since
/// initial states play no role in the relation.
Partition nerode_partition(const TableView& table);

} // namespace ridfa

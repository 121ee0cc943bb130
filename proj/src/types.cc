#include "ridfa/types.hh"

#include <algorithm>

namespace ridfa {

bool insert_sorted(StateSet& set, StateId value) {
    auto it = std::lower_bound(set.begin(), set.end(), value);
    if (it != set.end() && *it == value) { return false; }
    set.insert(it, value);
    return true;
}

bool contains(const StateSet& set, StateId value) {
    return std::binary_search(set.begin(), set.end(), value);
}

bool intersects(const StateSet& lhs, const StateSet& rhs) {
    auto a = lhs.begin();
    auto b = rhs.begin();
    while (a != lhs.end() && b != rhs.end()) {
        if (*a == *b) { return true; }
        if (*a < *b) { ++a; } else { ++b; }
    }
    return false;
}

std::size_t StateSetHash::operator()(const StateSet& set) const noexcept {
    // FNV-1a over the ids.
    std::size_t h = 1469598103934665603ULL;
    for (StateId s : set) {
        h ^= s;
        h *= 1099511628211ULL;
    }
    return h ^ set.size();
}

} // namespace ridfa

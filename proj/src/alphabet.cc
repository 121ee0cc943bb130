#include "ridfa/alphabet.hh"

#include <algorithm>

namespace ridfa {

Alphabet::Alphabet(std::vector<std::string> symbols) {
    for (auto& s : symbols) {
        if (lookup_.count(s) != 0) {
            throw ValidationError("duplicate alphabet symbol '" + s + "'");
        }
        add(s);
    }
}

Alphabet Alphabet::from_bytes(std::string_view chars) {
    Alphabet alphabet;
    for (char c : chars) { alphabet.add(std::string(1, c)); }
    return alphabet;
}

SymbolId Alphabet::add(const std::string& symbol) {
    if (auto it = lookup_.find(symbol); it != lookup_.end()) { return it->second; }
    auto id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(symbol);
    lookup_.emplace(symbol, id);
    if (symbol.size() == 1) { byte_map_[static_cast<unsigned char>(symbol[0])] = id; }
    return id;
}

std::optional<SymbolId> Alphabet::find(std::string_view symbol) const {
    auto it = lookup_.find(std::string(symbol));
    if (it == lookup_.end()) { return std::nullopt; }
    return it->second;
}

std::string to_string(const Alphabet& alphabet, const Word& word) {
    std::string out;
    bool multi = std::any_of(alphabet.symbols().begin(), alphabet.symbols().end(),
                             [](const std::string& s) { return s.size() != 1; });
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (multi && i != 0) { out += ' '; }
        out += word[i] < alphabet.size() ? alphabet.name(word[i]) : std::string("?");
    }
    return out;
}

} // namespace ridfa

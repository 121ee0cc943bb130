#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ridfa/types.hh"

namespace ridfa {

/// Ordered list of distinct symbols. A symbol is either a single byte
/// (regex and text input) or a named token (Timbuk operators).
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    /// One single-byte symbol per character of `chars`, in the given order.
    static Alphabet from_bytes(std::string_view chars);

    /// Appends a symbol if missing and returns its id.
    SymbolId add(const std::string& symbol);

    std::optional<SymbolId> find(std::string_view symbol) const;
    /// Lookup by byte; only single-byte symbols match.
    std::optional<SymbolId> find_byte(unsigned char byte) const {
        SymbolId id = byte_map_[byte];
        if (id == kNoSymbol) { return std::nullopt; }
        return id;
    }

    const std::string& name(SymbolId id) const { return symbols_.at(id); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

private:
    static constexpr SymbolId kNoSymbol = std::numeric_limits<SymbolId>::max();

    std::vector<std::string> symbols_;
    std::unordered_map<std::string, SymbolId> lookup_;
    std::vector<SymbolId> byte_map_ = std::vector<SymbolId>(256, kNoSymbol);
};

/// Renders a word with the alphabet names, for messages and tests.
std::string to_string(const Alphabet& alphabet, const Word& word);

} // namespace ridfa

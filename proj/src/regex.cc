#include "ridfa/regex.hh"

#include <algorithm>
#include <bitset>
#include <string>

namespace ridfa {

namespace {

// Recursive descent over the pattern. Symbol fields hold raw byte values
// until the alphabet is known; resolve() remaps them afterwards.
class Parser {
public:
    Parser(std::string_view pattern, const Alphabet* alphabet)
        : pattern_(pattern), alphabet_(alphabet) {}

    RegexNode parse() {
        RegexNode node = alternation();
        if (pos_ < pattern_.size()) {
            if (pattern_[pos_] == ')') { fail("unmatched ')'", pos_); }
            fail("unexpected character", pos_);
        }
        return node;
    }

    const std::bitset<256>& used() const { return used_; }

private:
    [[noreturn]] void fail(const std::string& message, std::size_t at) const {
        throw ParseError("regex syntax error at offset " + std::to_string(at) + ": " + message, at);
    }

    bool done() const { return pos_ >= pattern_.size(); }
    char peek() const { return pattern_[pos_]; }

    RegexNode alternation() {
        std::vector<RegexNode> branches;
        branches.push_back(concatenation());
        while (!done() && peek() == '|') {
            ++pos_;
            branches.push_back(concatenation());
        }
        if (branches.size() == 1) { return std::move(branches.front()); }
        return {RegexNode::Kind::Alt, {}, std::move(branches)};
    }

    RegexNode concatenation() {
        std::vector<RegexNode> items;
        while (!done() && peek() != '|' && peek() != ')') { items.push_back(repetition()); }
        if (items.empty()) { return {}; }
        if (items.size() == 1) { return std::move(items.front()); }
        return {RegexNode::Kind::Concat, {}, std::move(items)};
    }

    RegexNode repetition() {
        RegexNode node = atom();
        while (!done()) {
            RegexNode::Kind kind;
            switch (peek()) {
                case '*': kind = RegexNode::Kind::Star; break;
                case '+': kind = RegexNode::Kind::Plus; break;
                case '?': kind = RegexNode::Kind::Opt; break;
                default: return node;
            }
            ++pos_;
            RegexNode wrapped{kind, {}, {}};
            wrapped.children.push_back(std::move(node));
            node = std::move(wrapped);
        }
        return node;
    }

    RegexNode atom() {
        const std::size_t at = pos_;
        char c = peek();
        switch (c) {
            case '(': {
                ++pos_;
                RegexNode inner = alternation();
                if (done() || peek() != ')') { fail("unbalanced '('", at); }
                ++pos_;
                return inner;
            }
            case '[': return char_class();
            case '.': ++pos_; return {RegexNode::Kind::AnyChar, {}, {}};
            case '\\': {
                if (pos_ + 1 >= pattern_.size()) { fail("dangling escape", at); }
                pos_ += 2;
                return literal(static_cast<unsigned char>(pattern_[at + 1]), at);
            }
            case '*': case '+': case '?': fail("nothing to repeat", at);
            case '{': case '}': fail("counted repetition is not supported", at);
            case '^': case '$': fail("anchors are not supported", at);
            case ']': fail("unmatched ']'", at);
            default: ++pos_; return literal(static_cast<unsigned char>(c), at);
        }
    }

    RegexNode literal(unsigned char byte, std::size_t at) {
        check_byte(byte, at);
        return {RegexNode::Kind::Literal, {byte}, {}};
    }

    void check_byte(unsigned char byte, std::size_t at) {
        if (alphabet_ != nullptr && !alphabet_->find_byte(byte)) {
            fail(std::string("symbol '") + static_cast<char>(byte) + "' is not in the alphabet", at);
        }
        used_.set(byte);
    }

    unsigned char class_char() {
        std::size_t at = pos_;
        char c = peek();
        if (c == '\\') {
            if (pos_ + 1 >= pattern_.size()) { fail("dangling escape", at); }
            pos_ += 2;
            return static_cast<unsigned char>(pattern_[at + 1]);
        }
        if (c == '[') { fail("nested '[' in class", at); }
        ++pos_;
        return static_cast<unsigned char>(c);
    }

    RegexNode char_class() {
        const std::size_t open = pos_++;
        if (!done() && peek() == '^') { fail("negated classes are not supported", pos_); }
        std::bitset<256> members;
        while (true) {
            if (done()) { fail("unterminated class", open); }
            if (peek() == ']') { break; }
            std::size_t at = pos_;
            unsigned char lo = class_char();
            unsigned char hi = lo;
            if (!done() && peek() == '-' && pos_ + 1 < pattern_.size() && pattern_[pos_ + 1] != ']') {
                ++pos_;
                hi = class_char();
                if (hi < lo) { fail("reversed range", at); }
            }
            for (unsigned v = lo; v <= hi; ++v) {
                check_byte(static_cast<unsigned char>(v), at);
                members.set(v);
            }
        }
        ++pos_;
        if (members.none()) { fail("empty class", open); }
        RegexNode node{RegexNode::Kind::Class, {}, {}};
        for (unsigned v = 0; v < 256; ++v) {
            if (members.test(v)) { node.symbols.push_back(v); }
        }
        if (node.symbols.size() == 1) { node.kind = RegexNode::Kind::Literal; }
        return node;
    }

    std::string_view pattern_;
    const Alphabet* alphabet_;
    std::size_t pos_ = 0;
    std::bitset<256> used_;
};

void resolve(RegexNode& node, const Alphabet& alphabet) {
    for (auto& s : node.symbols) { s = *alphabet.find_byte(static_cast<unsigned char>(s)); }
    if (node.kind == RegexNode::Kind::Class) { std::sort(node.symbols.begin(), node.symbols.end()); }
    for (auto& child : node.children) { resolve(child, alphabet); }
}

bool uses_any_char(const RegexNode& node) {
    if (node.kind == RegexNode::Kind::AnyChar) { return true; }
    return std::any_of(node.children.begin(), node.children.end(), uses_any_char);
}

struct PositionInfo {
    bool nullable = false;
    StateSet first;
    StateSet last;
};

class Glushkov {
public:
    explicit Glushkov(std::size_t symbol_count) : symbol_count_(symbol_count) {
        labels_.emplace_back();  // state 0 carries no label
        follow_.emplace_back();
    }

    PositionInfo visit(const RegexNode& node) {
        using Kind = RegexNode::Kind;
        switch (node.kind) {
            case Kind::Epsilon: return {true, {}, {}};
            case Kind::Literal:
            case Kind::Class: return position(node.symbols);
            case Kind::AnyChar: {
                std::vector<SymbolId> all(symbol_count_);
                for (SymbolId a = 0; a < symbol_count_; ++a) { all[a] = a; }
                return position(all);
            }
            case Kind::Concat: {
                PositionInfo acc = visit(node.children.front());
                for (std::size_t i = 1; i < node.children.size(); ++i) {
                    PositionInfo next = visit(node.children[i]);
                    link(acc.last, next.first);
                    if (acc.nullable) { merge(acc.first, next.first); }
                    if (next.nullable) {
                        merge(next.last, acc.last);
                    }
                    acc.last = std::move(next.last);
                    acc.nullable = acc.nullable && next.nullable;
                }
                return acc;
            }
            case Kind::Alt: {
                PositionInfo acc{false, {}, {}};
                for (const auto& child : node.children) {
                    PositionInfo c = visit(child);
                    acc.nullable = acc.nullable || c.nullable;
                    merge(acc.first, c.first);
                    merge(acc.last, c.last);
                }
                return acc;
            }
            case Kind::Star:
            case Kind::Plus:
            case Kind::Opt: {
                PositionInfo inner = visit(node.children.front());
                if (node.kind != Kind::Opt) { link(inner.last, inner.first); }
                if (node.kind != Kind::Plus) { inner.nullable = true; }
                return inner;
            }
        }
        throw InternalError("unknown regex node");
    }

    Nfa build(const Regex& regex) {
        PositionInfo root = visit(regex.root);
        Nfa nfa(labels_.size(), regex.alphabet);
        nfa.add_initial(0);
        if (root.nullable) { nfa.add_final(0); }
        for (StateId p : root.last) { nfa.add_final(p); }
        auto connect = [&](StateId from, const StateSet& targets) {
            for (StateId p : targets) {
                for (SymbolId a : labels_[p]) { nfa.add_transition(from, a, p); }
            }
        };
        connect(0, root.first);
        for (StateId p = 1; p < labels_.size(); ++p) { connect(p, follow_[p]); }
        return nfa;
    }

private:
    PositionInfo position(const std::vector<SymbolId>& label) {
        auto p = static_cast<StateId>(labels_.size());
        labels_.push_back(label);
        follow_.emplace_back();
        return {false, {p}, {p}};
    }

    static void merge(StateSet& into, const StateSet& from) {
        StateSet out;
        std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
        into.swap(out);
    }

    void link(const StateSet& from, const StateSet& to) {
        for (StateId p : from) { merge(follow_[p], to); }
    }

    std::size_t symbol_count_;
    std::vector<std::vector<SymbolId>> labels_;
    std::vector<StateSet> follow_;
};

} // namespace

Regex parse_regex(std::string_view pattern, const RegexOptions& options) {
    if (pattern.empty()) { throw ParseError("regex syntax error at offset 0: empty pattern", 0); }
    const Alphabet* given = options.alphabet ? &*options.alphabet : nullptr;
    Parser parser(pattern, given);
    Regex regex;
    regex.root = parser.parse();
    if (given != nullptr) {
        regex.alphabet = *given;
    } else {
        for (unsigned v = 0; v < 256; ++v) {
            if (parser.used().test(v)) { regex.alphabet.add(std::string(1, static_cast<char>(v))); }
        }
    }
    if (regex.alphabet.empty() && uses_any_char(regex.root)) {
        throw ParseError("regex syntax error at offset 0: '.' needs a non-empty alphabet", 0);
    }
    resolve(regex.root, regex.alphabet);
    return regex;
}

Nfa glushkov_nfa(const Regex& regex) {
    Glushkov builder(regex.alphabet.size());
    return builder.build(regex);
}

Nfa regex_to_nfa(const Regex& regex) { return merge_bisimilar_states(glushkov_nfa(regex)); }

std::string regexp_family_pattern(unsigned k) {
    std::string pattern = "(a|b)*a";
    for (unsigned i = 0; i < k; ++i) { pattern += "(a|b)"; }
    return pattern;
}

std::size_t position_count(const RegexNode& node) {
    switch (node.kind) {
        case RegexNode::Kind::Literal:
        case RegexNode::Kind::Class:
        case RegexNode::Kind::AnyChar: return 1;
        default: break;
    }
    std::size_t total = 0;
    for (const auto& child : node.children) { total += position_count(child); }
    return total;
}

} // namespace ridfa

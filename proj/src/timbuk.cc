#include <cctype>
#include <charconv>
#include <string>
#include <unordered_map>

#include "ridfa/formats.hh"

namespace ridfa {

namespace {

struct Token {
    std::string text;
    std::size_t line = 0;
    bool punct = false;
};

bool is_punct(char c) { return c == '(' || c == ')' || c == ',' || c == ':'; }

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> tokens;
    std::size_t line = 1;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
            while (i < src.size() && src[i] != '\n') { ++i; }
        } else if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            std::size_t open_line = line;
            i += 2;
            while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) {
                if (src[i] == '\n') { ++line; }
                ++i;
            }
            if (i + 1 >= src.size()) { throw ParseError("unterminated comment", open_line); }
            i += 2;
        } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
            tokens.push_back({"->", line, true});
            i += 2;
        } else if (is_punct(c)) {
            tokens.push_back({std::string(1, c), line, true});
            ++i;
        } else {
            std::size_t start = i;
            while (i < src.size() && !std::isspace(static_cast<unsigned char>(src[i])) &&
                   !is_punct(src[i]) && !(src[i] == '-' && i + 1 < src.size() && src[i + 1] == '>')) {
                ++i;
            }
            tokens.push_back({std::string(src.substr(start, i - start)), line, false});
        }
    }
    return tokens;
}

class TimbukParser {
public:
    explicit TimbukParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    TimbukAutomaton parse() {
        expect_word("Ops");
        while (!at_word("Automaton")) { op_declaration(); }
        expect_word("Automaton");
        std::string name = identifier("automaton name");
        expect_word("States");
        while (!at_word("Final")) { state_declaration(); }
        expect_word("Final");
        expect_word("States");
        std::vector<std::pair<std::string, std::size_t>> final_names;
        while (!at_word("Transitions")) {
            std::size_t line = tokens_[pos_].line;
            final_names.emplace_back(identifier("final state"), line);
        }
        expect_word("Transitions");

        Alphabet alphabet;
        for (const auto& op : op_order_) {
            if (ops_.at(op) == 1) { alphabet.add(op); }
        }
        TimbukAutomaton result{std::move(name), Nfa(state_order_.size(), std::move(alphabet)), {}};
        for (const auto& [f, line] : final_names) { result.nfa.add_final(lookup_state(f, line)); }
        while (pos_ < tokens_.size()) { rule(result.nfa); }
        if (result.nfa.initials().empty()) {
            result.warnings.push_back("automaton '" + result.name +
                                      "' has no initial states and rejects every word");
        }
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& message, std::size_t line) const {
        throw ParseError("timbuk line " + std::to_string(line) + ": " + message, line);
    }

    std::size_t last_line() const {
        if (tokens_.empty()) { return 1; }
        return tokens_[std::min(pos_, tokens_.size() - 1)].line;
    }

    bool at_word(std::string_view word) const {
        if (pos_ >= tokens_.size()) { fail("unexpected end of input, expected '" + std::string(word) + "'", last_line()); }
        return !tokens_[pos_].punct && tokens_[pos_].text == word;
    }

    const Token& take() {
        if (pos_ >= tokens_.size()) { fail("unexpected end of input", last_line()); }
        return tokens_[pos_++];
    }

    void expect_word(std::string_view word) {
        const Token& t = take();
        if (t.punct || t.text != word) {
            fail("expected '" + std::string(word) + "', found '" + t.text + "'", t.line);
        }
    }

    void expect_punct(std::string_view p) {
        const Token& t = take();
        if (!t.punct || t.text != p) { fail("expected '" + std::string(p) + "', found '" + t.text + "'", t.line); }
    }

    std::string identifier(const char* what) {
        const Token& t = take();
        if (t.punct) { fail(std::string("expected ") + what + ", found '" + t.text + "'", t.line); }
        return t.text;
    }

    bool peek_punct(std::string_view p) const {
        return pos_ < tokens_.size() && tokens_[pos_].punct && tokens_[pos_].text == p;
    }

    void op_declaration() {
        const std::size_t line = tokens_[pos_].line;
        std::string op = identifier("operator");
        expect_punct(":");
        std::string arity_text = identifier("arity");
        unsigned arity = 0;
        auto [ptr, ec] = std::from_chars(arity_text.data(), arity_text.data() + arity_text.size(), arity);
        if (ec != std::errc() || ptr != arity_text.data() + arity_text.size()) {
            fail("bad arity '" + arity_text + "' for operator '" + op + "'", line);
        }
        if (arity >= 2) {
            throw UnsupportedFormatError("operator '" + op + "' has arity " + std::to_string(arity) +
                                         "; only word automata (arity 0 and 1) are supported");
        }
        if (!ops_.emplace(op, arity).second) { fail("operator '" + op + "' declared twice", line); }
        op_order_.push_back(op);
    }

    void state_declaration() {
        const std::size_t line = tokens_[pos_].line;
        std::string state = identifier("state");
        if (peek_punct(":")) {  // optional sort annotation, e.g. q0:0
            ++pos_;
            identifier("state sort");
        }
        auto id = static_cast<StateId>(state_order_.size());
        if (!states_.emplace(state, id).second) { fail("state '" + state + "' declared twice", line); }
        state_order_.push_back(state);
    }

    StateId lookup_state(const std::string& name, std::size_t line) const {
        auto it = states_.find(name);
        if (it == states_.end()) { fail("undeclared state '" + name + "'", line); }
        return it->second;
    }

    void rule(Nfa& nfa) {
        const std::size_t line = tokens_[pos_].line;
        std::string head = identifier("operator");
        auto op = ops_.find(head);
        if (op == ops_.end()) {
            if (states_.count(head) != 0) { fail("epsilon rules between states are not supported", line); }
            fail("undeclared operator '" + head + "'", line);
        }
        std::vector<std::string> args;
        if (peek_punct("(")) {
            ++pos_;
            if (!peek_punct(")")) {
                args.push_back(identifier("state"));
                while (peek_punct(",")) {
                    ++pos_;
                    args.push_back(identifier("state"));
                }
            }
            expect_punct(")");
        }
        expect_punct("->");
        std::string target_name = identifier("target state");
        if (args.size() != op->second) {
            fail("operator '" + head + "' expects " + std::to_string(op->second) + " argument(s)", line);
        }
        StateId target = lookup_state(target_name, line);
        if (op->second == 0) {
            nfa.add_initial(target);
        } else {
            StateId source = lookup_state(args.front(), line);
            nfa.add_transition(source, *nfa.alphabet().find(head), target);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::unordered_map<std::string, unsigned> ops_;
    std::vector<std::string> op_order_;
    std::unordered_map<std::string, StateId> states_;
    std::vector<std::string> state_order_;
};

} // namespace

TimbukAutomaton parse_timbuk(std::string_view source) {
    return TimbukParser(tokenize(source)).parse();
}

TimbukAutomaton load_timbuk(const std::filesystem::path& path) {
    return parse_timbuk(read_file(path));
}

} // namespace ridfa

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mns {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

inline constexpr std::size_t default_language_budget = 10'000'000;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(Symbol s) const { return names_.at(s); }
    // Throws ConfigError for unknown names.
    Symbol index_of(std::string_view name) const;
    bool has(std::string_view name) const;

    // Greedy longest-match tokenization; a trailing combining macron reads as '-'.
    Word parse(std::string_view text) const;
    // Names joined without separators; with `unicode`, a trailing '-' becomes a combining macron.
    std::string format(const Word& w, bool unicode = false) const;
    std::string display(Symbol s, bool unicode = false) const;

private:
    std::vector<std::string> names_;
};

// Deterministic automaton accepting the words with no forbidden factor.
class FollowerAutomaton {
public:
    static constexpr int reject = -1;

    FollowerAutomaton() = default;
    FollowerAutomaton(std::size_t states, std::size_t symbols, std::vector<int> next)
        : states_(states), symbols_(symbols), next_(std::move(next)) {}

    std::size_t state_count() const { return states_; }
    std::size_t symbol_count() const { return symbols_; }
    int initial() const { return 0; }
    int step(int state, Symbol a) const { return next_[static_cast<std::size_t>(state) * symbols_ + a]; }
    bool accepts(const Word& w) const;

private:
    std::size_t states_ = 0;
    std::size_t symbols_ = 0;
    std::vector<int> next_;
};

class Subshift {
public:
    Subshift() = default;
    Subshift(Alphabet alphabet, std::vector<Word> forbidden);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Word>& forbidden() const { return forbidden_; }
    const FollowerAutomaton& automaton() const { return automaton_; }

    bool in_language(const Word& v) const { return automaton_.accepts(v); }
    // Length-n words with no forbidden factor, in lexicographic order of symbol index.
    std::vector<Word> language(std::size_t n, std::size_t budget = default_language_budget) const;

private:
    Alphabet alphabet_;
    std::vector<Word> forbidden_;
    FollowerAutomaton automaton_;
};

inline bool in_language(const Subshift& s, const Word& v) { return s.in_language(v); }
inline std::vector<Word> language(const Subshift& s, std::size_t n) { return s.language(n); }
// Aho-Corasick automaton over the forbidden words with dead states removed.
FollowerAutomaton follower_automaton(const Alphabet& alphabet, const std::vector<Word>& forbidden);
inline const FollowerAutomaton& follower_automaton(const Subshift& s) { return s.automaton(); }

} // namespace mns

#include "mns/shift.hpp"

#include "mns/errors.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace mns {

namespace {

constexpr std::string_view macron = "\xCC\x84"; // U+0304

} // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty())
        throw ConfigError("alphabet is empty");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty())
            throw ConfigError("empty symbol name");
        if (!seen.insert(n).second)
            throw ConfigError("duplicate symbol name '" + n + "'");
    }
}

Symbol Alphabet::index_of(std::string_view name) const {
    std::string key(name);
    if (key.size() > macron.size() && key.ends_with(macron))
        key = key.substr(0, key.size() - macron.size()) + "-";
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == key)
            return static_cast<Symbol>(i);
    throw ConfigError("unknown symbol '" + std::string(name) + "'");
}

bool Alphabet::has(std::string_view name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Word Alphabet::parse(std::string_view text) const {
    std::string ascii;
    for (std::size_t i = 0; i < text.size();) {
        if (text.substr(i, macron.size()) == macron) {
            ascii += '-';
            i += macron.size();
        } else {
            ascii += text[i++];
        }
    }
    Word w;
    std::size_t pos = 0;
    while (pos < ascii.size()) {
        std::size_t best_len = 0;
        Symbol best = 0;
        for (std::size_t i = 0; i < names_.size(); ++i) {
            const auto& n = names_[i];
            if (n.size() > best_len && ascii.compare(pos, n.size(), n) == 0) {
                best_len = n.size();
                best = static_cast<Symbol>(i);
            }
        }
        if (best_len == 0)
            throw ConfigError("cannot read word '" + std::string(text) + "' at offset " + std::to_string(pos));
        w.push_back(best);
        pos += best_len;
    }
    return w;
}

std::string Alphabet::display(Symbol s, bool unicode) const {
    const std::string& n = name(s);
    if (unicode && n.size() > 1 && n.back() == '-')
        return n.substr(0, n.size() - 1) + std::string(macron);
    return n;
}

std::string Alphabet::format(const Word& w, bool unicode) const {
    std::string out;
    for (Symbol s : w)
        out += display(s, unicode);
    return out;
}

bool FollowerAutomaton::accepts(const Word& w) const {
    int state = initial();
    for (Symbol a : w) {
        state = step(state, a);
        if (state == reject)
            return false;
    }
    return true;
}

FollowerAutomaton follower_automaton(const Alphabet& alphabet, const std::vector<Word>& forbidden) {
    const std::size_t k = alphabet.size();
    // Trie over forbidden words; node 0 is the root.
    std::vector<std::vector<int>> child(1, std::vector<int>(k, -1));
    std::vector<bool> dead(1, false);
    for (const auto& w : forbidden) {
        int node = 0;
        for (Symbol a : w) {
            if (child[node][a] < 0) {
                child[node][a] = static_cast<int>(child.size());
                child.emplace_back(k, -1);
                dead.push_back(false);
            }
            node = child[node][a];
        }
        dead[node] = true;
    }
    std::vector<int> fail(child.size(), 0);
    std::vector<std::vector<int>> go(child.size(), std::vector<int>(k, 0));
    std::queue<int> queue;
    for (std::size_t a = 0; a < k; ++a) {
        const int c = child[0][a];
        if (c >= 0) {
            go[0][a] = c;
            fail[c] = 0;
            queue.push(c);
        }
    }
    while (!queue.empty()) {
        const int node = queue.front();
        queue.pop();
        if (dead[fail[node]])
            dead[node] = true;
        for (std::size_t a = 0; a < k; ++a) {
            const int c = child[node][a];
            if (c >= 0) {
                fail[c] = go[fail[node]][a];
                go[node][a] = c;
                queue.push(c);
            } else {
                go[node][a] = go[fail[node]][a];
            }
        }
    }
    std::vector<int> index(child.size(), -1);
    int live = 0;
    for (std::size_t n = 0; n < child.size(); ++n)
        if (!dead[n])
            index[n] = live++;
    std::vector<int> next(static_cast<std::size_t>(live) * k, FollowerAutomaton::reject);
    for (std::size_t n = 0; n < child.size(); ++n) {
        if (dead[n])
            continue;
        for (std::size_t a = 0; a < k; ++a)
            next[static_cast<std::size_t>(index[n]) * k + a] = index[go[n][a]];
    }
    if (live == 0)
        return FollowerAutomaton(0, k, {});
    return FollowerAutomaton(static_cast<std::size_t>(live), k, std::move(next));
}

Subshift::Subshift(Alphabet alphabet, std::vector<Word> forbidden)
    : alphabet_(std::move(alphabet)), forbidden_(std::move(forbidden)) {
    for (const auto& w : forbidden_) {
        if (w.empty())
            throw ConfigError("forbidden words must be nonempty");
        for (Symbol a : w)
            if (a >= alphabet_.size())
                throw ConfigError("forbidden word uses a symbol outside the alphabet");
    }
    automaton_ = follower_automaton(alphabet_, forbidden_);
}

std::vector<Word> Subshift::language(std::size_t n, std::size_t budget) const {
    std::vector<Word> out;
    const std::size_t k = alphabet_.size();
    if (automaton_.state_count() == 0)
        return out;
    std::size_t visited = 0;
    Word prefix;
    std::vector<int> states{automaton_.initial()};
    // Iterative DFS keeps lexicographic order without recursion depth limits.
    std::vector<Symbol> cursor{0};
    if (n == 0)
        return {Word{}};
    while (!cursor.empty()) {
        const std::size_t depth = cursor.size() - 1;
        Symbol& a = cursor.back();
        if (a >= k) {
            cursor.pop_back();
            states.pop_back();
            if (!prefix.empty())
                prefix.pop_back();
            continue;
        }
        const Symbol sym = a++;
        if (++visited > budget)
            throw BudgetExceeded("language enumeration exceeded " + std::to_string(budget) + " candidates");
        const int next = automaton_.step(states.back(), sym);
        if (next == FollowerAutomaton::reject)
            continue;
        prefix.push_back(sym);
        if (depth + 1 == n) {
            out.push_back(prefix);
            prefix.pop_back();
            continue;
        }
        states.push_back(next);
        cursor.push_back(0);
    }
    return out;
}

} // namespace mns

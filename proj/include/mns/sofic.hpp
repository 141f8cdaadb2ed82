#pragma once

#include "mns/interval_system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mns {

// States Z_v = F_v^-1(W_v), merged when within eps_state; Z_lambda is the full circle.
struct ZAutomaton {
    static constexpr long missing = -1;

    std::vector<ArcSet> states;
    std::size_t initial = 0;
    std::size_t symbols = 0;
    std::vector<long> transitions;     // state * symbols + a; missing when unexplored
    bool saturated = false;
    std::vector<std::size_t> growth;   // states known after each BFS depth
    double eps_state = tol::state;
    double residual = 0.0;             // worst transition-law deviation over stored edges

    long next(std::size_t state, Symbol a) const { return transitions[state * symbols + a]; }
    bool accepting(std::size_t state) const { return !states[state].empty(); }
    // Nothing when the word runs into an unexplored transition.
    std::optional<bool> accepts(const Word& w) const;
};

ZAutomaton build_automaton(const IntervalSystem& system, std::size_t state_cap = 10'000,
                           double eps_state = tol::state);

// Pairs (Z state, follower state) reachable through nonempty states; every state accepts.
struct ProductAutomaton {
    std::vector<std::pair<std::size_t, int>> states;
    std::size_t symbols = 0;
    std::vector<long> transitions;

    bool accepts(const Word& w) const;
};

struct SoficReport {
    bool sofic = false;
    std::string verdict;
    std::size_t state_count = 0;
    std::vector<std::size_t> growth;
    double residual = 0.0;
    std::optional<ProductAutomaton> product;
};

SoficReport sofic_verdict(const IntervalSystem& system, const ZAutomaton& automaton);

std::string transition_table(const ZAutomaton& automaton, const Alphabet& alphabet, bool unicode = false);
std::string to_dot(const ZAutomaton& automaton, const Alphabet& alphabet, bool unicode = false);

} // namespace mns

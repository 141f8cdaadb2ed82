#pragma once

#include "mns/circle.hpp"
#include "mns/moebius.hpp"
#include "mns/shift.hpp"

#include <functional>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace mns {

struct NumberSystemSpec {
    std::string name;
    Alphabet alphabet;
    std::vector<DiscMoebius> transforms; // indexed by symbol
    std::vector<ArcSet> cover;           // W_a, indexed by symbol
    Subshift subshift;

    // Throws ConfigError on size mismatches or when the closures of the cover miss part of the circle.
    void validate() const;
};

struct IntervalOptions {
    std::size_t depth_cap = 32;
    std::size_t cache_capacity = 1'000'000;
    std::size_t budget = default_language_budget;
};

struct CompatibilityViolation {
    Word word;
    ArcSet gaps; // part of W_v not covered by the closures of its legal extensions
};

struct CompatibilityReport {
    bool passed = true;
    std::size_t checked = 0;
    std::vector<CompatibilityViolation> violations;
};

struct QEstimate {
    double lower_bound = 0.0;
    std::size_t n_achieving = 0;
    std::vector<double> table; // Q_0 .. Q_nmax
    std::vector<std::string> warnings;
};

struct PrefixSetVerdict {
    bool passed = true;
    std::vector<Word> missing_prefix; // legal words with no prefix in B
    std::vector<std::pair<Word, ArcSet>> excess; // W_b minus V_b, when nonempty
    std::vector<Word> rotations;      // b with F_b a rotation and W_b nonempty
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

class IntervalSystem {
public:
    struct Entry {
        ArcSet set;            // W_v
        DiscMoebius transform; // F_v
    };

    explicit IntervalSystem(NumberSystemSpec spec, IntervalOptions options = {});
    IntervalSystem(const IntervalSystem&) = delete;
    IntervalSystem& operator=(const IntervalSystem&) = delete;

    const NumberSystemSpec& spec() const { return spec_; }
    const IntervalOptions& options() const { return options_; }
    const Alphabet& alphabet() const { return spec_.alphabet; }
    std::size_t symbol_count() const { return spec_.alphabet.size(); }
    const FollowerAutomaton& follower() const { return spec_.subshift.automaton(); }
    const DiscMoebius& transform(Symbol a) const { return spec_.transforms[a]; }
    const DiscMoebius& inverse_transform(Symbol a) const { return inverses_[a]; }
    const ArcSet& cover(Symbol a) const { return spec_.cover[a]; }

    DiscMoebius transform(const Word& v) const;
    ArcSet refined_set(const Word& v) const;
    Entry entry(const Word& v) const;

    std::vector<Word> interval_shift_language(std::size_t n) const;
    CompatibilityReport compatibility_check(std::size_t depth) const;
    double q_of_word(const Word& v) const;
    double Q_n(std::size_t n) const;
    QEstimate Q_estimate(std::size_t n_max) const;
    PrefixSetVerdict check_prefix_set(const std::vector<Word>& prefixes) const;

    // Z_{va} = F_a^-1(Z_v ∩ W_a), with Z_lambda the full circle.
    ArcSet next_state(const ArcSet& z, Symbol a) const;

    // Depth-first walk over words of the interval shift up to max_len, lexicographic.
    // The visitor returns false to skip the subtree below a word.
    using Visitor = std::function<bool(const Word&, const Entry&, int follower_state)>;
    void walk(std::size_t max_len, const Visitor& visit) const;

    std::size_t cache_size() const;

private:
    Entry compute(const Word& v) const;

    NumberSystemSpec spec_;
    IntervalOptions options_;
    std::vector<DiscMoebius> inverses_;

    using LruList = std::list<std::pair<Word, Entry>>;
    mutable std::mutex mutex_;
    mutable LruList lru_;
    mutable std::unordered_map<Word, LruList::iterator, WordHash> index_;
};

inline ArcSet refined_set(const IntervalSystem& s, const Word& v) { return s.refined_set(v); }
inline double q_of_word(const IntervalSystem& s, const Word& v) { return s.q_of_word(v); }
inline double Q_n(const IntervalSystem& s, std::size_t n) { return s.Q_n(n); }

} // namespace mns

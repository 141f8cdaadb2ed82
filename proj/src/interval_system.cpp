#include "mns/interval_system.hpp"

#include "mns/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mns {

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Symbol s : w) {
        h ^= s + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return h;
}

void NumberSystemSpec::validate() const {
    const std::size_t k = alphabet.size();
    if (k == 0)
        throw ConfigError("alphabet is empty");
    if (transforms.size() != k)
        throw ConfigError("expected one transformation per symbol");
    if (cover.size() != k)
        throw ConfigError("expected one cover set per symbol");
    if (subshift.alphabet().names() != alphabet.names())
        throw ConfigError("subshift alphabet differs from the system alphabet");
    if (!covers_circle(cover))
        throw ConfigError("closures of the cover sets do not cover the circle");
}

IntervalSystem::IntervalSystem(NumberSystemSpec spec, IntervalOptions options)
    : spec_(std::move(spec)), options_(options) {
    spec_.validate();
    for (const auto& f : spec_.transforms)
        inverses_.push_back(f.inverse());
}

DiscMoebius IntervalSystem::transform(const Word& v) const {
    DiscMoebius f;
    for (Symbol a : v)
        f = f * spec_.transforms.at(a);
    return f;
}

IntervalSystem::Entry IntervalSystem::compute(const Word& v) const {
    const Symbol last = v.back();
    const Word prefix(v.begin(), v.end() - 1);
    const Entry p = entry(prefix);
    Entry e{ArcSet{}, p.transform * spec_.transforms[last]};
    if (!p.set.empty())
        e.set = p.set.intersect(spec_.cover[last].image(p.transform));
    return e;
}

IntervalSystem::Entry IntervalSystem::entry(const Word& v) const {
    if (v.size() > options_.depth_cap)
        throw DepthCapExceeded("word length " + std::to_string(v.size()) + " exceeds depth cap " +
                               std::to_string(options_.depth_cap));
    for (Symbol a : v)
        if (a >= symbol_count())
            throw ConfigError("symbol index outside the alphabet");
    if (v.empty())
        return {ArcSet::full(), DiscMoebius::identity()};
    if (v.size() == 1)
        return {spec_.cover[v[0]], spec_.transforms[v[0]]};
    {
        std::lock_guard lock(mutex_);
        auto it = index_.find(v);
        if (it != index_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second);
            return it->second->second;
        }
    }
    Entry e = compute(v);
    if (options_.cache_capacity == 0)
        return e;
    std::lock_guard lock(mutex_);
    if (index_.find(v) == index_.end()) {
        lru_.emplace_front(v, e);
        index_[v] = lru_.begin();
        while (lru_.size() > options_.cache_capacity) {
            index_.erase(lru_.back().first);
            lru_.pop_back();
        }
    }
    return e;
}

ArcSet IntervalSystem::refined_set(const Word& v) const {
    return entry(v).set;
}

std::size_t IntervalSystem::cache_size() const {
    std::lock_guard lock(mutex_);
    return lru_.size();
}

ArcSet IntervalSystem::next_state(const ArcSet& z, Symbol a) const {
    const ArcSet s = z.intersect(spec_.cover[a]);
    if (s.empty())
        return s;
    return s.image(inverses_[a]);
}

void IntervalSystem::walk(std::size_t max_len, const Visitor& visit) const {
    if (max_len > options_.depth_cap)
        throw DepthCapExceeded("walk depth exceeds depth cap");
    const FollowerAutomaton& aut = follower();
    if (aut.state_count() == 0)
        return;
    const std::size_t k = symbol_count();
    std::size_t visited = 0;

    struct Frame {
        Entry entry;
        int state;
        Symbol next;
    };
    Word word;
    std::vector<Frame> stack;
    Entry root{ArcSet::full(), DiscMoebius::identity()};
    if (!visit(word, root, aut.initial()))
        return;
    stack.push_back({root, aut.initial(), 0});
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next >= k || word.size() >= max_len) {
            stack.pop_back();
            if (!word.empty())
                word.pop_back();
            continue;
        }
        const Symbol a = top.next++;
        if (++visited > options_.budget)
            throw BudgetExceeded("interval shift enumeration exceeded " + std::to_string(options_.budget) +
                                 " candidates");
        const int state = aut.step(top.state, a);
        if (state == FollowerAutomaton::reject)
            continue;
        ArcSet set = top.entry.set.intersect(spec_.cover[a].image(top.entry.transform));
        if (set.empty())
            continue;
        Entry child{std::move(set), top.entry.transform * spec_.transforms[a]};
        word.push_back(a);
        if (!visit(word, child, state)) {
            word.pop_back();
            continue;
        }
        stack.push_back({std::move(child), state, 0});
    }
}

std::vector<Word> IntervalSystem::interval_shift_language(std::size_t n) const {
    std::vector<Word> out;
    walk(n, [&](const Word& v, const Entry&, int) {
        if (v.size() == n)
            out.push_back(v);
        return true;
    });
    return out;
}

CompatibilityReport IntervalSystem::compatibility_check(std::size_t depth) const {
    CompatibilityReport report;
    const FollowerAutomaton& aut = follower();
    walk(depth, [&](const Word& v, const Entry& e, int state) {
        ++report.checked;
        ArcSet extensions;
        for (Symbol a = 0; a < symbol_count(); ++a) {
            if (aut.step(state, a) == FollowerAutomaton::reject)
                continue;
            extensions = extensions.unite(e.set.intersect(spec_.cover[a].image(e.transform)));
        }
        // Closed union with the compatibility tolerance, back to its interior.
        const ClosedArcSet joined = extensions.closure(tol::compat);
        std::vector<Arc> closed;
        for (const auto& p : joined.pieces())
            if (p.length > 0.0)
                closed.emplace_back(p.start, p.length);
        const ArcSet covered = joined.is_full() ? ArcSet::full() : ArcSet::from_arcs(closed);
        const ArcSet gaps = ArcSet::from_arcs(e.set.intersect(covered.complement()).arcs(), tol::compat);
        if (!gaps.empty()) {
            report.passed = false;
            report.violations.push_back({v, gaps});
        }
        return true;
    });
    return report;
}

double IntervalSystem::q_of_word(const Word& v) const {
    const Entry e = entry(v);
    if (e.set.empty())
        throw EmptyRefinedSet("refined set of '" + alphabet().format(v) + "' is empty");
    return min_inverse_derivative(e.transform, e.set.closure());
}

double IntervalSystem::Q_n(std::size_t n) const {
    double best = std::numeric_limits<double>::infinity();
    walk(n, [&](const Word& v, const Entry& e, int) {
        if (v.size() == n)
            best = std::min(best, min_inverse_derivative(e.transform, e.set.closure()));
        return true;
    });
    return best;
}

QEstimate IntervalSystem::Q_estimate(std::size_t n_max) const {
    QEstimate est;
    est.table.push_back(Q_n(0));
    est.lower_bound = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double q = Q_n(n);
        est.table.push_back(q);
        const double root = std::pow(q, 1.0 / static_cast<double>(n));
        if (root > est.lower_bound) {
            est.lower_bound = root;
            est.n_achieving = n;
        }
    }
    if (n_max == 0) {
        est.lower_bound = est.table[0];
        est.n_achieving = 0;
    }
    if (est.lower_bound < 1.0)
        est.warnings.push_back("Q lower bound " + std::to_string(est.lower_bound) +
                               " is below 1; if Q(W,Sigma) < 1 the refined sets of a number system on this cover "
                               "cannot shrink to points");
    return est;
}

PrefixSetVerdict IntervalSystem::check_prefix_set(const std::vector<Word>& prefixes) const {
    if (prefixes.empty())
        throw ConfigError("prefix set is empty");
    PrefixSetVerdict verdict;
    std::size_t longest = 0;
    for (const auto& b : prefixes)
        longest = std::max(longest, b.size());
    for (const auto& w : interval_shift_language(longest)) {
        const bool found = std::any_of(prefixes.begin(), prefixes.end(), [&](const Word& b) {
            return b.size() <= w.size() && std::equal(b.begin(), b.end(), w.begin());
        });
        if (!found)
            verdict.missing_prefix.push_back(w);
    }
    for (const auto& b : prefixes) {
        const Entry e = entry(b);
        if (e.set.empty())
            continue;
        if (e.transform.is_rotation()) {
            verdict.rotations.push_back(b);
            continue;
        }
        const ArcSet outside = e.set.intersect(expansion_interval(e.transform).complement());
        if (!outside.empty())
            verdict.excess.emplace_back(b, outside);
    }
    verdict.passed = verdict.missing_prefix.empty() && verdict.excess.empty() && verdict.rotations.empty();
    return verdict;
}

} // namespace mns

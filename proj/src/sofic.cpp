#include "mns/sofic.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace mns {

std::optional<bool> ZAutomaton::accepts(const Word& w) const {
    std::size_t s = initial;
    for (Symbol a : w) {
        const long t = next(s, a);
        if (t == missing)
            return std::nullopt;
        s = static_cast<std::size_t>(t);
    }
    return accepting(s);
}

namespace {

// Buckets states by arc count and coarse total length so lookups stay near-constant.
class StateIndex {
public:
    explicit StateIndex(double eps) : eps_(eps) {}

    std::optional<std::size_t> find(const std::vector<ArcSet>& states, const ArcSet& z) const {
        const auto [count, bucket] = key(z);
        for (long b = bucket - 1; b <= bucket + 1; ++b) {
            auto it = buckets_.find({count, b});
            if (it == buckets_.end())
                continue;
            for (std::size_t s : it->second)
                if (states[s].distance(z) <= eps_)
                    return s;
        }
        return std::nullopt;
    }

    void add(const ArcSet& z, std::size_t s) { buckets_[key(z)].push_back(s); }

private:
    std::pair<std::size_t, long> key(const ArcSet& z) const {
        return {z.arcs().size(), static_cast<long>(std::floor(z.length() / bucket_width))};
    }

    static constexpr double bucket_width = 1e-4;
    double eps_;
    std::map<std::pair<std::size_t, long>, std::vector<std::size_t>> buckets_;
};

} // namespace

ZAutomaton build_automaton(const IntervalSystem& system, std::size_t state_cap, double eps_state) {
    ZAutomaton aut;
    aut.symbols = system.symbol_count();
    aut.eps_state = eps_state;
    StateIndex index(eps_state);
    auto add_state = [&](ArcSet z) {
        aut.states.push_back(std::move(z));
        aut.transitions.resize(aut.states.size() * aut.symbols, ZAutomaton::missing);
        index.add(aut.states.back(), aut.states.size() - 1);
        return aut.states.size() - 1;
    };
    if (state_cap == 0)
        return aut;
    aut.initial = add_state(ArcSet::full());
    aut.growth.push_back(1);
    std::vector<std::size_t> frontier{aut.initial};
    bool capped = false;
    while (!frontier.empty() && !capped) {
        std::vector<std::size_t> next_frontier;
        for (std::size_t s : frontier) {
            for (Symbol a = 0; a < aut.symbols; ++a) {
                ArcSet z = system.next_state(aut.states[s], a);
                std::optional<std::size_t> t = index.find(aut.states, z);
                if (!t) {
                    if (aut.states.size() >= state_cap) {
                        capped = true;
                        break;
                    }
                    t = add_state(std::move(z));
                    next_frontier.push_back(*t);
                }
                aut.transitions[s * aut.symbols + a] = static_cast<long>(*t);
            }
            if (capped)
                break;
        }
        if (!capped)
            aut.growth.push_back(aut.states.size());
        frontier = std::move(next_frontier);
    }
    aut.saturated = !capped;
    if (capped)
        aut.growth.push_back(aut.states.size());

    for (std::size_t s = 0; s < aut.states.size(); ++s) {
        for (Symbol a = 0; a < aut.symbols; ++a) {
            const long t = aut.next(s, a);
            if (t == ZAutomaton::missing)
                continue;
            const double d = system.next_state(aut.states[s], a).distance(aut.states[static_cast<std::size_t>(t)]);
            aut.residual = std::max(aut.residual, d);
        }
    }
    return aut;
}

bool ProductAutomaton::accepts(const Word& w) const {
    if (states.empty())
        return false;
    std::size_t s = 0;
    for (Symbol a : w) {
        const long t = transitions[s * symbols + a];
        if (t < 0)
            return false;
        s = static_cast<std::size_t>(t);
    }
    return true;
}

SoficReport sofic_verdict(const IntervalSystem& system, const ZAutomaton& aut) {
    SoficReport report;
    report.state_count = aut.states.size();
    report.growth = aut.growth;
    report.residual = aut.residual;
    if (!aut.saturated) {
        report.verdict = "not shown sofic within cap";
        return report;
    }
    std::ostringstream verdict;
    verdict << "sofic (numerically, eps_state=" << aut.eps_state << ")";
    report.verdict = verdict.str();
    report.sofic = true;

    const FollowerAutomaton& follower = system.follower();
    ProductAutomaton product;
    product.symbols = aut.symbols;
    std::map<std::pair<std::size_t, int>, std::size_t> seen;
    if (follower.state_count() > 0 && aut.accepting(aut.initial)) {
        product.states.emplace_back(aut.initial, follower.initial());
        seen[product.states.back()] = 0;
        product.transitions.assign(product.symbols, -1);
        for (std::size_t i = 0; i < product.states.size(); ++i) {
            const auto [z, f] = product.states[i];
            for (Symbol a = 0; a < product.symbols; ++a) {
                const long zt = aut.next(z, a);
                const int ft = follower.step(f, a);
                if (zt == ZAutomaton::missing || ft == FollowerAutomaton::reject ||
                    !aut.accepting(static_cast<std::size_t>(zt)))
                    continue;
                const std::pair<std::size_t, int> key{static_cast<std::size_t>(zt), ft};
                auto it = seen.find(key);
                std::size_t target;
                if (it == seen.end()) {
                    target = product.states.size();
                    seen[key] = target;
                    product.states.push_back(key);
                    product.transitions.resize(product.states.size() * product.symbols, -1);
                } else {
                    target = it->second;
                }
                product.transitions[i * product.symbols + a] = static_cast<long>(target);
            }
        }
    }
    report.product = std::move(product);
    return report;
}

namespace {

std::string describe(const ArcSet& z) {
    if (z.empty())
        return "empty";
    if (z.is_full())
        return "full";
    std::ostringstream out;
    out << std::setprecision(10);
    bool first = true;
    for (const auto& a : z.arcs()) {
        out << (first ? "" : " u ") << "(" << a.start() << ", " << wrap_angle(a.end()) << ")";
        first = false;
    }
    return out.str();
}

} // namespace

std::string transition_table(const ZAutomaton& aut, const Alphabet& alphabet, bool unicode) {
    std::ostringstream out;
    out << "state";
    for (Symbol a = 0; a < aut.symbols; ++a)
        out << '\t' << alphabet.display(a, unicode);
    out << "\tset\n";
    for (std::size_t s = 0; s < aut.states.size(); ++s) {
        out << s << (s == aut.initial ? "*" : "") << (aut.accepting(s) ? "" : "!");
        for (Symbol a = 0; a < aut.symbols; ++a) {
            const long t = aut.next(s, a);
            out << '\t';
            if (t == ZAutomaton::missing)
                out << '?';
            else
                out << t;
        }
        out << '\t' << describe(aut.states[s]) << '\n';
    }
    return out.str();
}

std::string to_dot(const ZAutomaton& aut, const Alphabet& alphabet, bool unicode) {
    std::ostringstream out;
    out << "digraph Z {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < aut.states.size(); ++s) {
        out << "  s" << s << " [label=\"" << s << "\\n" << describe(aut.states[s]) << "\"";
        if (!aut.accepting(s))
            out << ", style=dashed";
        else
            out << ", shape=doublecircle";
        out << "];\n";
    }
    for (std::size_t s = 0; s < aut.states.size(); ++s)
        for (Symbol a = 0; a < aut.symbols; ++a) {
            const long t = aut.next(s, a);
            if (t != ZAutomaton::missing)
                out << "  s" << s << " -> s" << t << " [label=\"" << alphabet.display(a, unicode) << "\"];\n";
        }
    out << "}\n";
    return out.str();
}

} // namespace mns

#include "mns/number_system.hpp"

#include "mns/errors.hpp"

#include <cmath>
#include <sstream>

namespace mns {

PrefixTracker::PrefixTracker(const IntervalSystem& system)
    : system_(system), follower_(system.follower().initial()), z_(ArcSet::full()) {
    if (system.follower().state_count() == 0)
        follower_ = FollowerAutomaton::reject;
}

void PrefixTracker::advance(Symbol a) {
    if (a >= system_.symbol_count())
        throw IllegalPrefix("symbol index outside the alphabet");
    const int next = follower_ == FollowerAutomaton::reject ? FollowerAutomaton::reject
                                                            : system_.follower().step(follower_, a);
    if (next == FollowerAutomaton::reject)
        throw IllegalPrefix("prefix of length " + std::to_string(length_ + 1) + " contains a forbidden word");
    if (!(settled_ && last_ == a)) {
        ArcSet z = system_.next_state(z_, a);
        if (z.empty())
            throw IllegalPrefix("prefix of length " + std::to_string(length_ + 1) + " has an empty refined set");
        settled_ = last_ == a && z.approx_equal(z_);
        z_ = std::move(z);
        last_ = a;
    }
    follower_ = next;
    ++length_;
}

namespace {

EncodeResult finish(const DiscMoebius& f, std::size_t n, double tol) {
    EncodeResult r;
    r.digits_consumed = n;
    if (f.is_rotation()) {
        r.error_radius = std::numeric_limits<double>::infinity();
        r.point = CirclePoint(0.0);
    } else {
        r.error_radius = 1.0 / std::abs(f.beta());
        r.point = CirclePoint::from_complex(f.expansion_center());
    }
    r.converged = r.error_radius <= tol;
    return r;
}

} // namespace

EncodeResult encode(const IntervalSystem& system, const DigitSource& next, double tol, std::size_t max_digits) {
    if (!(tol > 0.0))
        throw ParamOutOfRange("tolerance must be positive");
    PrefixTracker tracker(system);
    DiscMoebius f;
    std::size_t n = 0;
    double radius = std::numeric_limits<double>::infinity();
    while (n < max_digits && !(radius <= tol)) {
        const auto a = next();
        if (!a)
            break;
        tracker.advance(*a);
        f = f * system.transform(*a);
        ++n;
        if (!f.is_rotation())
            radius = 1.0 / std::abs(f.beta());
    }
    return finish(f, n, tol);
}

EncodeResult encode(const IntervalSystem& system, const Word& w, double tol, std::size_t max_digits) {
    std::size_t i = 0;
    return encode(
        system, [&]() -> std::optional<Symbol> { return i < w.size() ? std::optional<Symbol>(w[i++]) : std::nullopt; },
        tol, max_digits);
}

namespace {

enum class Fit { none, endpoint, good };

// Where x sits relative to the closure of s: inside or at a clockwise endpoint is good,
// only at counterclockwise endpoints is the excluded case.
Fit fit(const ArcSet& s, double x) {
    Fit best = Fit::none;
    for (const auto& arc : s.arcs()) {
        if (arc.is_full())
            return Fit::good;
        const double p = wrap_angle(x - arc.start());
        if (p <= tol::angle || p >= two_pi - tol::angle)
            return Fit::good;
        if (p < arc.length() - tol::angle)
            return Fit::good;
        if (p <= arc.length() + tol::angle)
            best = Fit::endpoint;
    }
    return best;
}

// Distance from x to the closure of s, and the nearest point.
std::pair<double, double> nearest(const ArcSet& s, double x) {
    double best = std::numeric_limits<double>::infinity();
    double where = x;
    for (const auto& arc : s.arcs()) {
        if (arc.is_full() || arc.contains(x))
            return {0.0, x};
        const double ds = circle_distance(x, arc.start());
        const double de = circle_distance(x, arc.end());
        if (ds < best) {
            best = ds;
            where = arc.start();
        }
        if (de < best) {
            best = de;
            where = arc.end();
        }
    }
    return {best, where};
}

} // namespace

Word decode(const IntervalSystem& system, CirclePoint x, std::size_t n_digits) {
    const FollowerAutomaton& aut = system.follower();
    const std::size_t k = system.symbol_count();
    Word out;
    if (aut.state_count() == 0 && n_digits > 0)
        throw NoLegalDigit("subshift is empty", 0, x.angle());
    int state = aut.initial();
    ArcSet z = ArcSet::full();
    double xk = x.angle();
    // Bound on the rounding carried by x_k; it grows by the largest derivative of each inverse step.
    double drift = 0.0;
    for (std::size_t pos = 0; pos < n_digits; ++pos) {
        std::optional<Symbol> chosen, fallback, nearest_symbol;
        ArcSet chosen_set, fallback_set, nearest_set;
        double nearest_distance = std::numeric_limits<double>::infinity(), nearest_point = xk;
        for (Symbol a = 0; a < k && !chosen; ++a) {
            if (aut.step(state, a) == FollowerAutomaton::reject)
                continue;
            ArcSet s = z.intersect(system.cover(a));
            if (s.empty())
                continue;
            switch (fit(s, xk)) {
            case Fit::good:
                chosen = a;
                chosen_set = std::move(s);
                break;
            case Fit::endpoint:
                if (!fallback) {
                    fallback = a;
                    fallback_set = std::move(s);
                }
                break;
            case Fit::none: {
                // Rounding in x_k grows with the expansion; keep the closest legal set as a last resort.
                const auto [d, p] = nearest(s, xk);
                if (d < nearest_distance) {
                    nearest_distance = d;
                    nearest_point = p;
                    nearest_symbol = a;
                    nearest_set = std::move(s);
                }
                break;
            }
            }
        }
        if (!chosen && fallback) {
            chosen = fallback;
            chosen_set = std::move(fallback_set);
        }
        if (!chosen && nearest_symbol && nearest_distance <= drift + tol::angle) {
            chosen = nearest_symbol;
            chosen_set = std::move(nearest_set);
            xk = nearest_point;
        }
        if (!chosen) {
            std::ostringstream msg;
            msg << "no legal digit at position " << pos << " for local angle " << xk;
            throw NoLegalDigit(msg.str(), pos, xk);
        }
        const DiscMoebius& inv = system.inverse_transform(*chosen);
        out.push_back(*chosen);
        state = aut.step(state, *chosen);
        xk = inv.apply(CirclePoint(xk)).angle();
        const double r = std::abs(inv.alpha()) + std::abs(inv.beta());
        drift = std::min(two_pi, (drift + 4e-16) * r * r);
        z = chosen_set.image(inv);
    }
    return out;
}

std::string_view to_string(VerifyStatus s) {
    switch (s) {
    case VerifyStatus::verified_Qn: return "verified_Qn";
    case VerifyStatus::verified_prefix_set: return "verified_prefix_set";
    case VerifyStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

bool any_rotation(const IntervalSystem& system, std::size_t n) {
    bool found = false;
    system.walk(n, [&](const Word& v, const IntervalSystem::Entry& e, int) {
        if (v.size() == n && e.transform.is_rotation())
            found = true;
        return !found;
    });
    return found;
}

// Returns true when Q_n certifies the system; fills the verdict either way.
bool try_qn(const IntervalSystem& system, std::size_t n, Verdict& verdict) {
    const double q = system.Q_n(n);
    verdict.n = n;
    verdict.q_value = q;
    if (std::isinf(q)) {
        verdict.warnings.push_back("interval shift has no words of length " + std::to_string(n));
        return false;
    }
    if (q < 1.0 - tol::qn)
        return false;
    if (q <= 1.0 + tol::qn) {
        if (any_rotation(system, n)) {
            verdict.warnings.push_back("Q_" + std::to_string(n) + " = 1 and some F_v with |v| = " +
                                       std::to_string(n) + " is a rotation");
            return false;
        }
        verdict.warnings.push_back("Q_" + std::to_string(n) + " = 1 within " + std::to_string(tol::qn) +
                                   "; accepted because no F_v with |v| = " + std::to_string(n) +
                                   " is a rotation");
    }
    verdict.compatibility = system.compatibility_check(n);
    if (!verdict.compatibility->passed) {
        verdict.warnings.push_back("cover is not compatible with the subshift up to depth " + std::to_string(n));
        return false;
    }
    verdict.status = VerifyStatus::verified_Qn;
    return true;
}

Verdict try_prefix_set(const IntervalSystem& system, const std::vector<Word>& prefixes) {
    Verdict verdict;
    verdict.prefixes = prefixes;
    std::size_t depth = 0;
    for (const auto& b : prefixes)
        depth = std::max(depth, b.size());
    verdict.prefix_report = system.check_prefix_set(prefixes);
    verdict.compatibility = system.compatibility_check(depth);
    if (!verdict.compatibility->passed)
        verdict.warnings.push_back("cover is not compatible with the subshift up to depth " + std::to_string(depth));
    if (verdict.prefix_report->passed && verdict.compatibility->passed)
        verdict.status = VerifyStatus::verified_prefix_set;
    return verdict;
}

} // namespace

Verdict verify(const IntervalSystem& system, const VerifyRequest& request) {
    using Mode = VerifyRequest::Mode;
    if (request.mode == Mode::prefix_set)
        return try_prefix_set(system, request.prefixes);
    if (request.mode == Mode::qn) {
        Verdict verdict;
        try_qn(system, request.n, verdict);
        return verdict;
    }
    Verdict last;
    for (std::size_t n = 1; n <= request.n_max; ++n) {
        Verdict attempt;
        if (try_qn(system, n, attempt))
            return attempt;
        last = std::move(attempt);
        if (last.compatibility && !last.compatibility->passed)
            return last;
    }
    if (!request.prefixes.empty())
        return try_prefix_set(system, request.prefixes);
    last.warnings.push_back("no Q_n > 1 for n <= " + std::to_string(request.n_max) + "; supply a prefix set");
    return last;
}

ClosedArcSet phi_interval(const IntervalSystem& system, const Word& v) {
    const ArcSet w = system.refined_set(v);
    if (w.empty())
        throw EmptyRefinedSet("refined set of '" + system.alphabet().format(v) + "' is empty");
    return w.closure();
}

} // namespace mns

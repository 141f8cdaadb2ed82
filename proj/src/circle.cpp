#include "mns/circle.hpp"

#include "mns/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mns {

namespace {

struct Span {
    double s;
    double e;
};

// Position of theta counterclockwise from origin, in [0, 2pi).
double offset(double theta, double origin) {
    return wrap_angle(theta - origin);
}

} // namespace

Arc::Arc(double start, double length) : start_(wrap_angle(start)), length_(length) {
    if (!(length_ > 0.0))
        length_ = 0.0;
    if (length_ >= two_pi) {
        start_ = 0.0;
        length_ = two_pi;
    }
}

Arc Arc::between(CirclePoint from, CirclePoint to) {
    double len = offset(to.angle(), from.angle());
    if (len == 0.0)
        len = two_pi;
    return Arc(from.angle(), len);
}

bool Arc::contains(double theta) const {
    if (is_full())
        return true;
    const double p = offset(theta, start_);
    return p > 0.0 && p < length_;
}

ClosedArcSet ClosedArcSet::from_pieces(std::vector<Piece> pieces, double join) {
    ClosedArcSet out;
    std::vector<Span> spans;
    for (const auto& p : pieces) {
        if (p.length >= two_pi - join)
            return full();
        spans.push_back({wrap_angle(p.start), wrap_angle(p.start) + std::max(0.0, p.length)});
    }
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.s < b.s; });
    std::vector<Span> merged;
    for (const auto& sp : spans) {
        if (!merged.empty() && sp.s <= merged.back().e + join)
            merged.back().e = std::max(merged.back().e, sp.e);
        else
            merged.push_back(sp);
    }
    while (merged.size() > 1 && merged.front().s + two_pi <= merged.back().e + join) {
        merged.back().e = std::max(merged.back().e, merged.front().e + two_pi);
        merged.erase(merged.begin());
    }
    for (const auto& sp : merged) {
        if (sp.e - sp.s >= two_pi - join)
            return full();
        out.pieces_.push_back({sp.s, sp.e - sp.s});
    }
    return out;
}

double ClosedArcSet::length() const {
    if (full_)
        return two_pi;
    double total = 0.0;
    for (const auto& p : pieces_)
        total += p.length;
    return total;
}

bool ClosedArcSet::contains(double theta, double slack) const {
    if (full_)
        return true;
    for (const auto& p : pieces_) {
        const double q = offset(theta, p.start);
        if (q <= p.length + slack || q >= two_pi - slack)
            return true;
    }
    return false;
}

bool ClosedArcSet::contains_piece(const Piece& x, double slack) const {
    if (full_)
        return true;
    for (const auto& p : pieces_) {
        double q = offset(x.start, p.start);
        if (q >= two_pi - slack)
            q -= two_pi;
        if (q <= p.length + slack && q + x.length <= p.length + slack)
            return true;
    }
    return false;
}

ArcSet ArcSet::from_arcs(std::vector<Arc> arcs, double eps) {
    ArcSet out;
    std::vector<Span> spans;
    for (const auto& a : arcs) {
        if (a.length() < eps)
            continue;
        if (a.length() >= two_pi - eps) {
            out.arcs_ = {Arc(0.0, two_pi)};
            return out;
        }
        spans.push_back({a.start(), a.end()});
    }
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.s < b.s; });

    // Overlaps merge; endpoints within eps are snapped together and stay separate.
    std::vector<Span> merged;
    for (auto sp : spans) {
        if (merged.empty()) {
            merged.push_back(sp);
            continue;
        }
        Span& cur = merged.back();
        if (sp.s < cur.e - eps) {
            cur.e = std::max(cur.e, sp.e);
        } else if (sp.s <= cur.e + eps) {
            sp.s = cur.e;
            if (sp.e - sp.s >= eps)
                merged.push_back(sp);
        } else {
            merged.push_back(sp);
        }
    }
    while (merged.size() > 1) {
        Span& first = merged.front();
        Span& last = merged.back();
        const double wrapped = first.s + two_pi;
        if (wrapped < last.e - eps) {
            last.e = std::max(last.e, first.e + two_pi);
            merged.erase(merged.begin());
        } else {
            if (wrapped <= last.e + eps)
                last.e = wrapped;
            break;
        }
    }
    for (const auto& sp : merged) {
        if (sp.e - sp.s >= two_pi - eps) {
            out.arcs_ = {Arc(0.0, two_pi)};
            return out;
        }
        if (sp.e - sp.s >= eps)
            out.arcs_.emplace_back(sp.s, sp.e - sp.s);
    }
    std::sort(out.arcs_.begin(), out.arcs_.end(), [](const Arc& a, const Arc& b) { return a.start() < b.start(); });
    return out;
}

double ArcSet::length() const {
    double total = 0.0;
    for (const auto& a : arcs_)
        total += a.length();
    return total;
}

bool ArcSet::contains(CirclePoint x) const {
    for (const auto& a : arcs_)
        if (a.contains(x.angle()))
            return true;
    return false;
}

ArcSet ArcSet::intersect(const ArcSet& other) const {
    if (is_full())
        return other;
    if (other.is_full())
        return *this;
    std::vector<Arc> pieces;
    for (const auto& a : arcs_) {
        for (const auto& b : other.arcs_) {
            // b in coordinates relative to a.start, as (s, s + lb) with 0 <= s < 2pi.
            const double s = offset(b.start(), a.start());
            const double la = a.length(), lb = b.length();
            const double hi1 = std::min(la, s + lb);
            if (hi1 > s)
                pieces.emplace_back(a.start() + s, hi1 - s);
            const double hi2 = std::min(la, s + lb - two_pi);
            if (hi2 > 0.0)
                pieces.emplace_back(a.start(), hi2);
        }
    }
    return from_arcs(std::move(pieces));
}

ArcSet ArcSet::unite(const ArcSet& other) const {
    std::vector<Arc> all = arcs_;
    all.insert(all.end(), other.arcs_.begin(), other.arcs_.end());
    return from_arcs(std::move(all));
}

ArcSet ArcSet::complement() const {
    if (arcs_.empty())
        return full();
    if (is_full())
        return {};
    std::vector<Arc> gaps;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        const Arc& cur = arcs_[i];
        const double next = i + 1 < arcs_.size() ? arcs_[i + 1].start() : arcs_.front().start() + two_pi;
        const double len = next - cur.end();
        if (len > 0.0)
            gaps.emplace_back(cur.end(), len);
    }
    return from_arcs(std::move(gaps));
}

ClosedArcSet ArcSet::closure(double join) const {
    if (is_full())
        return ClosedArcSet::full();
    std::vector<ClosedArcSet::Piece> pieces;
    for (const auto& a : arcs_)
        pieces.push_back({a.start(), a.length()});
    return ClosedArcSet::from_pieces(std::move(pieces), join);
}

ArcSet ArcSet::image(const DiscMoebius& f) const {
    if (is_full())
        return *this;
    std::vector<Arc> out;
    for (const auto& a : arcs_) {
        const double s = f.apply(CirclePoint(a.start())).angle();
        const double e = f.apply(CirclePoint(a.end())).angle();
        double len = offset(e, s);
        // A wrapped length is ambiguous near 0 and 2pi; interior samples must advance monotonically.
        const double p1 = offset(f.apply(CirclePoint(a.start() + 0.25 * a.length())).angle(), s);
        const double p2 = offset(f.apply(CirclePoint(a.start() + 0.5 * a.length())).angle(), s);
        const double p3 = offset(f.apply(CirclePoint(a.start() + 0.75 * a.length())).angle(), s);
        const bool monotone = p1 <= p2 && p2 <= p3 && p3 <= len;
        if (!monotone)
            len = len > pi ? 0.0 : two_pi;
        if (len > 0.0)
            out.emplace_back(s, len);
    }
    return from_arcs(std::move(out));
}

double ArcSet::distance(const ArcSet& other) const {
    const auto& a = arcs_;
    const auto& b = other.arcs_;
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    if (a.empty())
        return 0.0;
    if (is_full() || other.is_full())
        return is_full() && other.is_full() ? 0.0 : std::numeric_limits<double>::infinity();
    const std::size_t n = a.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n && worst < best; ++i) {
            const Arc& x = a[i];
            const Arc& y = b[(i + k) % n];
            worst = std::max({worst, circle_distance(x.start(), y.start()), circle_distance(x.end(), y.end())});
        }
        best = std::min(best, worst);
    }
    return best;
}

ExpansionGeometry expansion_geometry(const DiscMoebius& f) {
    if (f.is_rotation())
        throw IsRotation("rotation has no expansion geometry");
    const cplx alpha = f.alpha(), beta = f.beta();
    const double b = std::abs(beta);
    ExpansionGeometry g;
    g.center = alpha / std::conj(beta);
    g.radius = 1.0 / b;
    g.contraction_center = -std::conj(alpha) / std::conj(beta);
    const double half = std::atan(1.0 / b);
    g.v_interval = ArcSet::from_arcs({Arc(std::arg(g.center) - half, 2.0 * half)});
    g.u_interval = ArcSet::from_arcs({Arc(std::arg(g.contraction_center) + half, two_pi - 2.0 * half)});
    return g;
}

ArcSet expansion_interval(const DiscMoebius& f) {
    if (f.is_rotation())
        return {};
    const double half = std::atan(1.0 / std::abs(f.beta()));
    return ArcSet::from_arcs({Arc(std::arg(f.expansion_center()) - half, 2.0 * half)});
}

double min_inverse_derivative(const DiscMoebius& f, const ClosedArcSet& a) {
    if (a.empty())
        throw EmptyArcSet("minimum over an empty set");
    if (f.is_rotation())
        return 1.0;
    // |x - d| is largest at the antipode of d, else at the endpoint farthest round.
    const double antipode = std::arg(f.expansion_center()) + pi;
    if (a.contains(antipode, 0.0))
        return f.inverse_derivative_modulus(CirclePoint(antipode));
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a.pieces()) {
        best = std::min(best, f.inverse_derivative_modulus(CirclePoint(p.start)));
        best = std::min(best, f.inverse_derivative_modulus(CirclePoint(p.end())));
    }
    return best;
}

bool covers_circle(const std::vector<ClosedArcSet>& sets, double gap) {
    std::vector<ClosedArcSet::Piece> pieces;
    for (const auto& s : sets) {
        if (s.is_full())
            return true;
        pieces.insert(pieces.end(), s.pieces().begin(), s.pieces().end());
    }
    return ClosedArcSet::from_pieces(std::move(pieces), gap).is_full();
}

bool covers_circle(const std::vector<ArcSet>& sets, double gap) {
    std::vector<ClosedArcSet> closed;
    closed.reserve(sets.size());
    for (const auto& s : sets)
        closed.push_back(s.closure(gap));
    return covers_circle(closed, gap);
}

} // namespace mns

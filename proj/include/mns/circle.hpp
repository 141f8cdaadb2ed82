#pragma once

#include "mns/moebius.hpp"

#include <vector>

namespace mns {

// Open counterclockwise arc (start, start + length); length in (0, 2pi], 2pi meaning the whole circle.
class Arc {
public:
    Arc(double start, double length);
    static Arc full() { return Arc(0.0, two_pi); }
    // Counterclockwise from `from` to `to`; equal endpoints give the full circle.
    static Arc between(CirclePoint from, CirclePoint to);

    double start() const { return start_; }
    double length() const { return length_; }
    // May exceed 2pi when the arc passes through angle 0.
    double end() const { return start_ + length_; }
    bool is_full() const { return length_ >= two_pi; }

    CirclePoint start_point() const { return CirclePoint(start_); }
    CirclePoint end_point() const { return CirclePoint(end()); }

    bool contains(double theta) const;

private:
    double start_;
    double length_;
};

// Closed arcs [start, start + length] with length >= 0; a query-time view only.
class ClosedArcSet {
public:
    struct Piece {
        double start;
        double length;
        double end() const { return start + length; }
    };

    ClosedArcSet() = default;
    // Merges pieces closer than `join` (gaps of that size count as covered).
    static ClosedArcSet from_pieces(std::vector<Piece> pieces, double join);
    static ClosedArcSet full() { ClosedArcSet s; s.full_ = true; return s; }
    static ClosedArcSet point(double theta) { return from_pieces({{wrap_angle(theta), 0.0}}, 0.0); }

    bool empty() const { return !full_ && pieces_.empty(); }
    bool is_full() const { return full_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    double length() const;

    bool contains(double theta, double slack = tol::angle) const;
    // Whether [start, start + length] lies inside one piece, up to slack.
    bool contains_piece(const Piece& p, double slack) const;

private:
    std::vector<Piece> pieces_;
    bool full_ = false;
};

// Finite union of disjoint open arcs, sorted by start angle, in canonical form.
class ArcSet {
public:
    ArcSet() = default;
    static ArcSet full() { return from_arcs({Arc::full()}); }
    static ArcSet from_arcs(std::vector<Arc> arcs, double eps = tol::angle);
    // Single counterclockwise arc between two angles.
    static ArcSet arc(double from, double to) { return from_arcs({Arc::between(CirclePoint(from), CirclePoint(to))}); }

    bool empty() const { return arcs_.empty(); }
    bool is_full() const { return arcs_.size() == 1 && arcs_.front().is_full(); }
    const std::vector<Arc>& arcs() const { return arcs_; }
    double length() const;

    bool contains(CirclePoint x) const;

    ArcSet intersect(const ArcSet& other) const;
    ArcSet unite(const ArcSet& other) const;
    // Interior of the complement.
    ArcSet complement() const;
    ClosedArcSet closure(double join = tol::angle) const;
    ArcSet image(const DiscMoebius& f) const;

    // Largest endpoint deviation under the best cyclic matching; infinite when arc counts differ.
    double distance(const ArcSet& other) const;
    bool approx_equal(const ArcSet& other, double eps = tol::angle) const { return distance(other) <= eps; }

private:
    std::vector<Arc> arcs_;
};

inline ArcSet arcset_intersect(const ArcSet& a, const ArcSet& b) { return a.intersect(b); }
inline ArcSet arcset_union(const ArcSet& a, const ArcSet& b) { return a.unite(b); }
inline ArcSet arcset_complement(const ArcSet& a) { return a.complement(); }
inline ClosedArcSet closure(const ArcSet& a) { return a.closure(); }
inline ArcSet image(const DiscMoebius& f, const ArcSet& a) { return a.image(f); }

struct ExpansionGeometry {
    cplx center;             // d = alpha / conj(beta)
    double radius;           // 1 / |beta|
    cplx contraction_center; // c = -conj(alpha) / conj(beta)
    ArcSet v_interval;       // where |(F^-1)'| > 1
    ArcSet u_interval;       // outside the closed contraction disc
};

// Throws IsRotation when |beta| is below the rotation tolerance.
ExpansionGeometry expansion_geometry(const DiscMoebius& f);
// V alone; empty for rotations.
ArcSet expansion_interval(const DiscMoebius& f);

// Minimum of |(F^-1)'| over a nonempty closed set; 1 for rotations.
double min_inverse_derivative(const DiscMoebius& f, const ClosedArcSet& a);
inline double min_inverse_derivative(const DiscMoebius& f, const ArcSet& a) {
    return min_inverse_derivative(f, a.closure());
}

bool covers_circle(const std::vector<ClosedArcSet>& sets, double gap = tol::gap);
bool covers_circle(const std::vector<ArcSet>& sets, double gap = tol::gap);

} // namespace mns

#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

namespace mns {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

namespace tol {
inline constexpr double norm = 1e-12;
inline constexpr double singular = 1e-12;
inline constexpr double shape = 1e-9;
inline constexpr double trace = 1e-9;
inline constexpr double identity = 1e-12;
inline constexpr double rotation = 1e-12;
inline constexpr double angle = 1e-9;
inline constexpr double gap = 1e-10;
inline constexpr double compat = 1e-8;
inline constexpr double state = 1e-7;
inline constexpr double qn = 1e-9;
} // namespace tol

// Maps any finite angle into [0, 2pi).
double wrap_angle(double theta);

class CirclePoint {
public:
    CirclePoint() = default;
    explicit CirclePoint(double theta) : theta_(wrap_angle(theta)) {}

    static CirclePoint from_complex(cplx z) { return CirclePoint(std::arg(z)); }

    double angle() const { return theta_; }
    cplx to_complex() const { return std::polar(1.0, theta_); }

private:
    double theta_ = 0.0;
};

// Shorter way round, in [0, pi].
double circle_distance(double a, double b);
inline double circle_distance(CirclePoint a, CirclePoint b) { return circle_distance(a.angle(), b.angle()); }

class SpherePoint {
public:
    SpherePoint(cplx z) : value_(z) {}
    SpherePoint(CirclePoint p) : value_(p.to_complex()) {}
    static SpherePoint infinity() { SpherePoint p(0.0); p.infinite_ = true; return p; }

    bool is_infinite() const { return infinite_; }
    cplx value() const { return value_; }

private:
    cplx value_;
    bool infinite_ = false;
};

// Row-major entries a, b, c, d of a 2x2 complex matrix.
using Matrix2 = std::array<cplx, 4>;

// z -> (alpha z + beta) / (conj(beta) z + conj(alpha)), |alpha|^2 - |beta|^2 = 1,
// sign fixed so that Re alpha > 0, or Re alpha = 0 and Im alpha >= 0.
class DiscMoebius {
public:
    DiscMoebius() = default;

    static DiscMoebius identity() { return {}; }
    // z -> e^{i phi} z
    static DiscMoebius rotation(double phi);
    // Hyperbolic with stable point 1 and derivative 1/r^2 there; r >= 1.
    static DiscMoebius contraction(double r);
    // Rescales to unit determinant and canonicalizes the sign.
    static DiscMoebius from_alpha_beta(cplx alpha, cplx beta);

    cplx alpha() const { return alpha_; }
    cplx beta() const { return beta_; }
    Matrix2 matrix() const { return {alpha_, beta_, std::conj(beta_), std::conj(alpha_)}; }

    double trace() const { return 2.0 * alpha_.real(); }
    double trace_squared() const { return 4.0 * alpha_.real() * alpha_.real(); }
    bool is_rotation() const { return std::abs(beta_) <= tol::rotation; }
    bool is_identity() const;

    DiscMoebius inverse() const;

    cplx apply(cplx z) const;
    SpherePoint apply(SpherePoint z) const;
    CirclePoint apply(CirclePoint x) const;

    // |F'(x)| on the circle.
    double derivative_modulus(CirclePoint x) const;
    // |(F^-1)'(x)| on the circle, without forming the inverse.
    double inverse_derivative_modulus(CirclePoint x) const;

    // Center alpha / conj(beta) of the expansion disc of the inverse.
    cplx expansion_center() const { return alpha_ / std::conj(beta_); }

    friend DiscMoebius operator*(const DiscMoebius& f, const DiscMoebius& g);

private:
    DiscMoebius(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {}
    void canonicalize();

    cplx alpha_{1.0, 0.0};
    cplx beta_{0.0, 0.0};
};

DiscMoebius normalize(const Matrix2& m);
// Conjugate of x -> (ax+b)/(cx+d) by the stereographic map u(z) = (-iz+1)/(z-i).
DiscMoebius from_real_line(double a, double b, double c, double d);
// f after g.
inline DiscMoebius compose(const DiscMoebius& f, const DiscMoebius& g) { return f * g; }
inline DiscMoebius inverse(const DiscMoebius& f) { return f.inverse(); }
inline SpherePoint apply(const DiscMoebius& f, SpherePoint z) { return f.apply(z); }
inline double derivative_modulus(const DiscMoebius& f, CirclePoint x) { return f.derivative_modulus(x); }

// u and its inverse between the circle and the extended real line.
SpherePoint circle_to_real(cplx z);
cplx real_to_circle(double x);
cplx real_to_circle(SpherePoint x);

enum class MoebiusKind { identity, elliptic, parabolic, hyperbolic };
enum class Stability { stable, unstable, neutral };

struct BoundaryFixedPoint {
    CirclePoint point;
    Stability stability;
};

struct MoebiusClass {
    MoebiusKind kind = MoebiusKind::identity;
    double trace_squared = 4.0;
    std::vector<BoundaryFixedPoint> boundary;
    std::optional<cplx> interior;
};

MoebiusClass classify(const DiscMoebius& f);
std::string_view to_string(MoebiusKind k);
std::string_view to_string(Stability s);

struct KAKDecomposition {
    double phi1 = 0.0;
    double r = 1.0;
    double phi2 = 0.0;

    // R_phi1 after C_r after R_phi2.
    DiscMoebius recompose() const;
};

KAKDecomposition decompose(const DiscMoebius& f);

} // namespace mns

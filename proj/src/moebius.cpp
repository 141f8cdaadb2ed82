#include "mns/moebius.hpp"

#include "mns/errors.hpp"

#include <cmath>

namespace mns {

namespace {

const cplx I{0.0, 1.0};

// Below this size the determinant can be recomputed accurately enough to rescale by it.
constexpr double renormalize_limit = 1e6;

void rescale(cplx& alpha, cplx& beta) {
    const double big = std::norm(alpha) + std::norm(beta);
    if (big >= renormalize_limit)
        return;
    const double det = std::norm(alpha) - std::norm(beta);
    if (det <= 0.0)
        return;
    const double s = std::sqrt(det);
    alpha /= s;
    beta /= s;
}

} // namespace

double wrap_angle(double theta) {
    double r = std::fmod(theta, two_pi);
    if (r < 0.0)
        r += two_pi;
    if (r >= two_pi || r == 0.0)
        r = 0.0;
    return r;
}

double circle_distance(double a, double b) {
    const double d = wrap_angle(a - b);
    return std::min(d, two_pi - d);
}

void DiscMoebius::canonicalize() {
    const double re = alpha_.real();
    const double snap = 1e-15 * std::abs(alpha_);
    bool flip = false;
    if (std::abs(re) <= snap)
        flip = alpha_.imag() < 0.0;
    else
        flip = re < 0.0;
    if (flip) {
        alpha_ = -alpha_;
        beta_ = -beta_;
    }
}

DiscMoebius DiscMoebius::rotation(double phi) {
    DiscMoebius f(std::polar(1.0, phi / 2.0), 0.0);
    f.canonicalize();
    return f;
}

DiscMoebius DiscMoebius::contraction(double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw ParamOutOfRange("contraction parameter must be positive");
    return DiscMoebius(0.5 * (r + 1.0 / r), 0.5 * (r - 1.0 / r));
}

DiscMoebius DiscMoebius::from_alpha_beta(cplx alpha, cplx beta) {
    const double det = std::norm(alpha) - std::norm(beta);
    if (!(det > 0.0))
        throw NotDiscPreserving("|alpha|^2 - |beta|^2 must be positive");
    const double s = std::sqrt(det);
    DiscMoebius f(alpha / s, beta / s);
    f.canonicalize();
    return f;
}

bool DiscMoebius::is_identity() const {
    return std::abs(beta_) <= tol::identity && std::abs(alpha_.imag()) <= tol::identity &&
           std::abs(alpha_ - 1.0) <= tol::identity;
}

DiscMoebius DiscMoebius::inverse() const {
    DiscMoebius f(std::conj(alpha_), -beta_);
    f.canonicalize();
    return f;
}

cplx DiscMoebius::apply(cplx z) const {
    return (alpha_ * z + beta_) / (std::conj(beta_) * z + std::conj(alpha_));
}

SpherePoint DiscMoebius::apply(SpherePoint z) const {
    if (z.is_infinite()) {
        if (beta_ == 0.0)
            return SpherePoint::infinity();
        return SpherePoint(alpha_ / std::conj(beta_));
    }
    const cplx den = std::conj(beta_) * z.value() + std::conj(alpha_);
    if (den == 0.0)
        return SpherePoint::infinity();
    return SpherePoint((alpha_ * z.value() + beta_) / den);
}

CirclePoint DiscMoebius::apply(CirclePoint x) const {
    // On the circle the denominator is x times the conjugate of the numerator.
    const cplx w = alpha_ * x.to_complex() + beta_;
    return CirclePoint(2.0 * std::arg(w) - x.angle());
}

double DiscMoebius::derivative_modulus(CirclePoint x) const {
    return 1.0 / std::norm(alpha_ * x.to_complex() + beta_);
}

double DiscMoebius::inverse_derivative_modulus(CirclePoint x) const {
    return 1.0 / std::norm(std::conj(alpha_) * x.to_complex() - beta_);
}

DiscMoebius operator*(const DiscMoebius& f, const DiscMoebius& g) {
    cplx a = f.alpha_ * g.alpha_ + f.beta_ * std::conj(g.beta_);
    cplx b = f.alpha_ * g.beta_ + f.beta_ * std::conj(g.alpha_);
    rescale(a, b);
    DiscMoebius h(a, b);
    h.canonicalize();
    return h;
}

DiscMoebius normalize(const Matrix2& m) {
    const cplx det = m[0] * m[3] - m[1] * m[2];
    if (std::abs(det) <= tol::singular)
        throw SingularMatrix("matrix is singular");
    const cplx s = std::sqrt(det);
    const cplx a = m[0] / s, b = m[1] / s, c = m[2] / s, d = m[3] / s;
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (std::abs(c - std::conj(b)) > tol::shape * scale || std::abs(d - std::conj(a)) > tol::shape * scale)
        throw NotDiscPreserving("matrix is not of the form ((alpha, beta), (conj beta, conj alpha))");
    return DiscMoebius::from_alpha_beta(0.5 * (a + std::conj(d)), 0.5 * (b + std::conj(c)));
}

DiscMoebius from_real_line(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (std::abs(det) <= tol::singular)
        throw SingularMatrix("real-line matrix is singular");
    if (det < 0.0)
        throw OrientationReversing("real-line matrix has negative determinant");
    // u = ((-i, 1), (1, -i)); its adjugate ((-i, -1), (-1, -i)) stands in for the inverse.
    const Matrix2 u{-I, 1.0, 1.0, -I};
    const Matrix2 v{-I, -1.0, -1.0, -I};
    const Matrix2 h{a, b, c, d};
    auto mul = [](const Matrix2& x, const Matrix2& y) {
        return Matrix2{x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
                       x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
    };
    return normalize(mul(mul(v, h), u));
}

SpherePoint circle_to_real(cplx z) {
    const cplx den = z - I;
    if (den == 0.0)
        return SpherePoint::infinity();
    return SpherePoint((-I * z + 1.0) / den);
}

cplx real_to_circle(double x) {
    return (1.0 + I * x) / (x + I);
}

cplx real_to_circle(SpherePoint x) {
    if (x.is_infinite())
        return I;
    return real_to_circle(x.value().real());
}

namespace {

// Roots of conj(beta) z^2 + (conj(alpha) - alpha) z - beta = 0, larger-magnitude q first.
std::pair<cplx, cplx> fixed_point_roots(const DiscMoebius& f) {
    const cplx a = std::conj(f.beta());
    const cplx b = std::conj(f.alpha()) - f.alpha();
    const cplx c = -f.beta();
    const cplx s = std::sqrt(b * b - 4.0 * a * c);
    const cplx q1 = -0.5 * (b + s);
    const cplx q2 = -0.5 * (b - s);
    const cplx q = std::abs(q1) >= std::abs(q2) ? q1 : q2;
    const cplx inf{HUGE_VAL, 0.0};
    const cplx r1 = a == 0.0 ? inf : q / a;
    const cplx r2 = q == 0.0 ? inf : c / q;
    return {r1, r2};
}

CirclePoint project(cplx z) {
    return CirclePoint::from_complex(z);
}

} // namespace

MoebiusClass classify(const DiscMoebius& f) {
    MoebiusClass out;
    out.trace_squared = f.trace_squared();
    if (f.is_identity()) {
        out.kind = MoebiusKind::identity;
        return out;
    }
    const double t2 = out.trace_squared;
    if (std::abs(t2 - 4.0) <= tol::trace) {
        out.kind = MoebiusKind::parabolic;
        cplx z = I * f.alpha().imag() / std::conj(f.beta());
        if (!(std::abs(z) > 1e-6))
            z = std::sqrt(f.beta() / std::conj(f.beta()));
        out.boundary.push_back({project(z), Stability::neutral});
        return out;
    }
    auto [r1, r2] = fixed_point_roots(f);
    if (t2 < 4.0) {
        out.kind = MoebiusKind::elliptic;
        out.interior = std::abs(r1) < std::abs(r2) ? r1 : r2;
        return out;
    }
    out.kind = MoebiusKind::hyperbolic;
    CirclePoint x1 = project(r1), x2 = project(r2);
    if (f.derivative_modulus(x1) > f.derivative_modulus(x2))
        std::swap(x1, x2);
    out.boundary.push_back({x1, Stability::stable});
    out.boundary.push_back({x2, Stability::unstable});
    return out;
}

std::string_view to_string(MoebiusKind k) {
    switch (k) {
    case MoebiusKind::identity: return "identity";
    case MoebiusKind::elliptic: return "elliptic";
    case MoebiusKind::parabolic: return "parabolic";
    case MoebiusKind::hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

std::string_view to_string(Stability s) {
    switch (s) {
    case Stability::stable: return "stable";
    case Stability::unstable: return "unstable";
    case Stability::neutral: return "neutral";
    }
    return "unknown";
}

DiscMoebius KAKDecomposition::recompose() const {
    return DiscMoebius::rotation(phi1) * DiscMoebius::contraction(r) * DiscMoebius::rotation(phi2);
}

KAKDecomposition decompose(const DiscMoebius& f) {
    if (f.is_rotation())
        return {wrap_angle(2.0 * std::arg(f.alpha())), 1.0, 0.0};
    const double a = std::arg(f.alpha()), b = std::arg(f.beta());
    return {wrap_angle(a + b), std::abs(f.alpha()) + std::abs(f.beta()), wrap_angle(a - b)};
}

} // namespace mns

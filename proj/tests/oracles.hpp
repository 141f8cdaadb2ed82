#pragma once
// Independent reference computations shared by unit and acceptance tests.
// They avoid the library's own geometry helpers wherever a direct formula exists.

#include "mns/moebius.hpp"
#include "mns/shift.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using mns::cplx;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double wrap(double t) {
    t = std::fmod(t, two_pi);
    return t < 0.0 ? t + two_pi : t;
}

// Normalized disc transformation with |beta| in [beta_min, beta_max] and arbitrary phases.
inline mns::DiscMoebius random_transform(std::mt19937_64& rng, double beta_min = 0.05, double beta_max = 20.0) {
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    std::uniform_real_distribution<double> logb(std::log(beta_min), std::log(beta_max));
    const double b = std::exp(logb(rng));
    const double a = std::sqrt(1.0 + b * b);
    return mns::DiscMoebius::from_alpha_beta(std::polar(a, phase(rng)), std::polar(b, phase(rng)));
}

inline cplx mobius(const mns::Matrix2& m, cplx z) {
    return (m[0] * z + m[1]) / (m[2] * z + m[3]);
}

inline mns::Matrix2 product(const mns::Matrix2& p, const mns::Matrix2& q) {
    return {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3], p[2] * q[0] + p[3] * q[2],
            p[2] * q[1] + p[3] * q[3]};
}

// |(F^-1)'(x)| by a central difference of the inverse map's angle.
inline double numeric_inverse_derivative(const mns::Matrix2& m, double theta, double h = 1e-6) {
    const mns::Matrix2 inv = {m[3], -m[1], -m[2], m[0]};
    const double lo = std::arg(mobius(inv, std::polar(1.0, theta - h)));
    const double hi = std::arg(mobius(inv, std::polar(1.0, theta + h)));
    double diff = hi - lo;
    while (diff > std::numbers::pi)
        diff -= two_pi;
    while (diff < -std::numbers::pi)
        diff += two_pi;
    return std::abs(diff) / (2.0 * h);
}

// Closed expansion arc of F as (start, length): the circle points inside |z - d| <= 1/|beta|.
// Half-width from the law of cosines, cos(half) = 1/|d|.
inline std::pair<double, double> expansion_arc(const mns::DiscMoebius& f) {
    const cplx d = f.alpha() / std::conj(f.beta());
    const double half = std::acos(std::min(1.0, 1.0 / std::abs(d)));
    return {wrap(std::arg(d) - half), 2.0 * half};
}

// Open arc membership with the arc given as raw (start, length).
inline bool in_arc(double start, double length, double theta) {
    if (length >= two_pi)
        return true;
    const double off = wrap(theta - start);
    return off > 0.0 && off < length;
}

inline double endpoint_distance(double start, double length, double theta) {
    auto d = [](double a, double b) {
        const double x = wrap(a - b);
        return std::min(x, two_pi - x);
    };
    return std::min(d(theta, start), d(theta, start + length));
}

// Whether closed arcs (start, length) cover the circle up to `gap`.
// Arcs through angle 0 are split so the sweep runs over the line segment [0, 2pi].
inline bool closed_arcs_cover(const std::vector<std::pair<double, double>>& arcs, double gap) {
    std::vector<std::pair<double, double>> spans;
    for (const auto& [s0, l] : arcs) {
        if (l >= two_pi - gap)
            return true;
        const double s = wrap(s0);
        spans.emplace_back(s, std::min(s + l, two_pi));
        if (s + l > two_pi)
            spans.emplace_back(0.0, s + l - two_pi);
    }
    std::sort(spans.begin(), spans.end());
    double reach = 0.0;
    for (const auto& [lo, hi] : spans) {
        if (lo > reach + gap)
            return false;
        reach = std::max(reach, hi);
    }
    return reach >= two_pi - gap;
}

// Plain enumeration of all words of length 1..depth over {a, b}, no pruning.
inline bool unpruned_cover(const std::array<mns::DiscMoebius, 2>& maps, int depth, double gap) {
    std::vector<std::pair<double, double>> arcs;
    std::vector<mns::DiscMoebius> level = {mns::DiscMoebius::identity()};
    for (int len = 1; len <= depth; ++len) {
        std::vector<mns::DiscMoebius> next;
        next.reserve(level.size() * 2);
        for (const auto& f : level)
            for (const auto& g : maps) {
                const mns::DiscMoebius fg = f * g;
                next.push_back(fg);
                if (std::abs(fg.beta()) > 1e-12)
                    arcs.push_back(expansion_arc(fg));
            }
        level = std::move(next);
    }
    return closed_arcs_cover(std::move(arcs), gap);
}

// Digits of p/q in (0, 1) for the signed continued-fraction system:
// [0; a1, a2, ...] -> 0 (1-)^a1 0 1^a2 0 (1-)^a3 ..., then 0 and an endless opposite-sign run.
struct CfTranscription {
    mns::Word prefix;
    mns::Symbol tail;
};

inline CfTranscription cf_transcription(long p, long q, mns::Symbol minus, mns::Symbol zero, mns::Symbol plus) {
    CfTranscription out;
    long num = q, den = p;
    bool negative = true;
    while (den != 0) {
        const long a = num / den;
        const long r = num % den;
        num = den;
        den = r;
        out.prefix.push_back(zero);
        out.prefix.insert(out.prefix.end(), static_cast<std::size_t>(a), negative ? minus : plus);
        negative = !negative;
    }
    out.prefix.push_back(zero);
    out.tail = negative ? minus : plus;
    return out;
}

// Inverse stereographic image of a real x: z with (-iz + 1)/(z - i) = x.
inline cplx real_to_circle(double x) {
    const cplx i(0.0, 1.0);
    return (i * x + 1.0) / (x + i);
}

// All words of length exactly n over k symbols, lexicographic.
inline std::vector<mns::Word> all_words(std::size_t k, std::size_t n) {
    std::vector<mns::Word> out = {{}};
    for (std::size_t len = 0; len < n; ++len) {
        std::vector<mns::Word> next;
        for (const auto& w : out)
            for (mns::Symbol a = 0; a < k; ++a) {
                auto x = w;
                x.push_back(a);
                next.push_back(std::move(x));
            }
        out = std::move(next);
    }
    return out;
}

} // namespace oracle

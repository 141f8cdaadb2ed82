#include "mns/builtin.hpp"

#include "mns/errors.hpp"

#include <array>
#include <cmath>
#include <string_view>

namespace mns {

namespace {

std::vector<Word> words(const Alphabet& alphabet, std::vector<std::string_view> texts) {
    std::vector<Word> out;
    for (auto t : texts)
        out.push_back(alphabet.parse(t));
    return out;
}

NumberSystemSpec assemble(std::string name, std::vector<std::string> symbols, std::vector<DiscMoebius> transforms,
                          std::vector<ArcSet> cover, std::vector<std::string_view> forbidden) {
    NumberSystemSpec spec;
    spec.name = std::move(name);
    spec.alphabet = Alphabet(std::move(symbols));
    spec.transforms = std::move(transforms);
    spec.cover = std::move(cover);
    spec.subshift = Subshift(spec.alphabet, words(spec.alphabet, forbidden));
    return spec;
}

ArcSet arc_between(cplx from, cplx to) {
    return ArcSet::arc(std::arg(from), std::arg(to));
}

const double third = two_pi / 3.0;

std::vector<DiscMoebius> parabolic3_maps() {
    const CirclePoint a(0.0), b(third), c(2.0 * third);
    return {parabolic_map(a, c, b), parabolic_map(b, a, c), parabolic_map(c, b, a)};
}

std::vector<DiscMoebius> binary_maps() {
    return {from_real_line(1, -1, 0, 2), from_real_line(1, 0, 0, 2), from_real_line(1, 1, 0, 2),
            from_real_line(2, 0, 0, 1)};
}

constexpr std::array<std::string_view, 6> binary_forbidden = {"20", "02", "12", "1-2", "11-", "1-1"};

} // namespace

DiscMoebius parabolic_map(CirclePoint fixed, CirclePoint from, CirclePoint to) {
    // Rotate the fixed point to i, where the stereographic picture is a translation.
    const DiscMoebius r = DiscMoebius::rotation(pi / 2.0 - fixed.angle());
    const double x0 = circle_to_real(r.apply(from).to_complex()).value().real();
    const double x1 = circle_to_real(r.apply(to).to_complex()).value().real();
    return r.inverse() * from_real_line(1.0, x1 - x0, 0.0, 1.0) * r;
}

std::vector<std::string> builtin_names() {
    return {"parabolic3", "cf", "binary", "hyperbolic4"};
}

NumberSystemSpec builtin_spec(std::string_view name) {
    if (name == "parabolic3")
        return parabolic3_system();
    if (name == "cf")
        return cf_system();
    if (name == "binary")
        return binary_system();
    if (name == "hyperbolic4")
        return hyperbolic4_system();
    throw ConfigError("unknown builtin system '" + std::string(name) + "'");
}

NumberSystemSpec parabolic3_system() {
    auto maps = parabolic3_maps();
    std::vector<ArcSet> cover;
    for (const auto& f : maps)
        cover.push_back(expansion_interval(f));
    return assemble("parabolic3", {"a", "b", "c"}, std::move(maps), std::move(cover), {"ac", "ba", "cb"});
}

NumberSystemSpec parabolic3_rotated_cover_system() {
    std::vector<ArcSet> cover{ArcSet::arc(2.0 * third, 0.0), ArcSet::arc(0.0, third), ArcSet::arc(third, 2.0 * third)};
    return assemble("parabolic3-rotated", {"a", "b", "c"}, parabolic3_maps(), std::move(cover), {});
}

NumberSystemSpec cf_system() {
    std::vector<DiscMoebius> maps{from_real_line(1, -1, 0, 1), from_real_line(0, -1, 1, 0), from_real_line(1, 1, 0, 1)};
    std::vector<ArcSet> cover{ArcSet::arc(pi / 2.0, pi), ArcSet::arc(pi, 0.0), ArcSet::arc(0.0, pi / 2.0)};
    return assemble("cf", {"1-", "0", "1"}, std::move(maps), std::move(cover), {"00", "11-", "1-1", "101", "1-01-"});
}

NumberSystemSpec binary_system() {
    const cplx q_minus = cplx(-8.0, -15.0) / 17.0;
    const cplx q_plus = cplx(8.0, -15.0) / 17.0;
    const cplx h_minus = cplx(-4.0, -3.0) / 5.0;
    const cplx h_plus = cplx(4.0, -3.0) / 5.0;
    // W_2 runs from h+ to h-, the arc of real values beyond +-1/2.
    std::vector<ArcSet> cover{arc_between(-1.0, q_minus), arc_between(h_minus, h_plus), arc_between(q_plus, 1.0),
                              arc_between(h_plus, h_minus)};
    return assemble("binary", {"1-", "0", "1", "2"}, binary_maps(), std::move(cover), {binary_forbidden.begin(), binary_forbidden.end()});
}

NumberSystemSpec binary_trivial_cover_system() {
    std::vector<ArcSet> cover(4, ArcSet::full());
    return assemble("binary-trivial", {"1-", "0", "1", "2"}, binary_maps(), std::move(cover), {binary_forbidden.begin(), binary_forbidden.end()});
}

NumberSystemSpec hyperbolic4_system() {
    const DiscMoebius f1 = DiscMoebius::contraction(1.0 + std::sqrt(2.0));
    const DiscMoebius f0 = DiscMoebius::rotation(-pi / 2.0) * f1 * DiscMoebius::rotation(pi / 2.0);
    std::vector<DiscMoebius> maps{f0, f1, f0.inverse(), f1.inverse()};
    const double q = pi / 4.0;
    std::vector<ArcSet> cover{ArcSet::arc(-3 * q, -q), ArcSet::arc(-q, q), ArcSet::arc(q, 3 * q),
                              ArcSet::arc(3 * q, -3 * q)};
    return assemble("hyperbolic4", {"0", "1", "2", "3"}, std::move(maps), std::move(cover), {"02", "20", "13", "31"});
}

} // namespace mns

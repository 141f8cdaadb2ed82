#include "mns/existence.hpp"

#include "mns/circle.hpp"
#include "mns/errors.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace mns {

std::array<DiscMoebius, 2> two_hyperbolic_system(TwoHyperbolicParams p) {
    auto check = [](double q, const char* name) {
        if (!(q > 0.0 && q < 1.0))
            throw ParamOutOfRange(std::string(name) + " must lie in (0, 1)");
    };
    check(p.q_a, "q_a");
    check(p.q_b, "q_b");
    auto make = [](double q, double sign) {
        const double s = 2.0 * std::sqrt(q);
        const Matrix2 m{cplx(1 + q, -(1 - q)) / s, sign * cplx(1 - q, 1 - q) / s, sign * cplx(1 - q, -(1 - q)) / s,
                        cplx(1 + q, 1 - q) / s};
        return normalize(m);
    };
    return {make(p.q_a, 1.0), make(p.q_b, -1.0)};
}

namespace {

ClosedArcSet::Piece closed_expansion(const DiscMoebius& f) {
    const double half = std::atan(1.0 / std::abs(f.beta()));
    return {wrap_angle(std::arg(f.expansion_center()) - half), 2.0 * half};
}

// Arc on which |(F^-1)'| > 1/bound; contains V_{vw} for every w whose F_w^-1 is at most `bound` steep.
std::optional<ClosedArcSet::Piece> enlarged_expansion(const DiscMoebius& f, double bound) {
    const double b2 = std::norm(f.beta());
    const double d = std::sqrt(1.0 + 1.0 / b2);
    const double c = (2.0 + (1.0 - bound) / b2) / (2.0 * d);
    if (c <= -1.0)
        return std::nullopt; // whole circle
    const double half = std::acos(std::min(1.0, c));
    return ClosedArcSet::Piece{wrap_angle(std::arg(f.expansion_center()) - half), 2.0 * half};
}

} // namespace

bool cover_search(const std::array<DiscMoebius, 2>& system, int depth) {
    if (depth > max_cover_depth)
        throw BudgetExceeded("cover search depth " + std::to_string(depth) + " exceeds " +
                             std::to_string(max_cover_depth));
    if (depth <= 0)
        return false;
    double step = 1.0;
    for (const auto& f : system)
        step = std::max(step, std::pow(std::abs(f.alpha()) + std::abs(f.beta()), 2));

    std::vector<ClosedArcSet::Piece> pieces;
    ClosedArcSet covered;
    std::vector<DiscMoebius> level{DiscMoebius::identity()};
    for (int len = 1; len <= depth; ++len) {
        std::vector<DiscMoebius> next;
        next.reserve(level.size() * 2);
        const double bound = std::pow(step, depth - len);
        for (const auto& parent : level) {
            for (const auto& g : system) {
                const DiscMoebius f = parent * g;
                if (f.is_rotation()) {
                    next.push_back(f);
                    continue;
                }
                pieces.push_back(closed_expansion(f));
                if (len == depth)
                    continue;
                const auto reach = enlarged_expansion(f, bound);
                if (!(reach && covered.contains_piece(*reach, 0.0)))
                    next.push_back(f);
            }
        }
        covered = ClosedArcSet::from_pieces(pieces, tol::gap);
        if (covered.is_full())
            return true;
        level = std::move(next);
    }
    return false;
}

namespace {

bool hyperbolic(const DiscMoebius& f) {
    return classify(f).kind == MoebiusKind::hyperbolic;
}

DiscMoebius power_then(const DiscMoebius& f, int n, const DiscMoebius& g) {
    DiscMoebius out;
    for (int i = 0; i < n; ++i)
        out = out * f;
    return out * g;
}

bool open_interval(double x, double lo, double hi) {
    return x > lo && x < hi;
}

} // namespace

bool inward_region_test(TwoHyperbolicParams p, int n_max) {
    if (n_max < 0)
        return false;
    if (!(p.q_a > 0.0 && p.q_a < 1.0 && p.q_b > 0.0 && p.q_b < 1.0))
        return false;
    const auto [fa, fb] = two_hyperbolic_system(p);
    if (open_interval(p.q_a, 0.0, 0.5) && open_interval(p.q_b, 0.0, 0.5) && hyperbolic(fa * fb))
        return true;
    for (int n = 1; n <= n_max; ++n) {
        const double lo = std::pow(2.0, -1.0 / n);
        const double hi = std::pow(2.0, -1.0 / (n + 1));
        if (open_interval(p.q_a, lo, hi) && open_interval(p.q_b, 0.0, 0.5) && hyperbolic(power_then(fa, n, fb)) &&
            hyperbolic(power_then(fa, n + 1, fb)))
            return true;
        // a b^n written as a followed by n copies of b
        if (open_interval(p.q_b, lo, hi) && open_interval(p.q_a, 0.0, 0.5)) {
            DiscMoebius w = fa;
            for (int i = 0; i < n; ++i)
                w = w * fb;
            if (hyperbolic(w) && hyperbolic(w * fb))
                return true;
        }
    }
    return false;
}

std::string_view to_string(CellLabel label) {
    switch (label) {
    case CellLabel::cover: return "cover";
    case CellLabel::inward: return "inward";
    case CellLabel::unknown: return "unknown";
    }
    return "unknown";
}

TwoHyperbolicParams CoverageGrid::cell_center(std::size_t col, std::size_t row) const {
    const double qa = rect.qa_min + (static_cast<double>(col) + 0.5) * (rect.qa_max - rect.qa_min) / width;
    const double qb = rect.qb_max - (static_cast<double>(row) + 0.5) * (rect.qb_max - rect.qb_min) / height;
    return {qa, qb};
}

double CoverageGrid::fraction(CellLabel label) const {
    if (labels.empty())
        return 0.0;
    std::size_t n = 0;
    for (auto l : labels)
        n += l == label;
    return static_cast<double>(n) / static_cast<double>(labels.size());
}

CoverageGrid render_grid(const ParamRect& rect, std::size_t width, std::size_t height, int depth, int n_max,
                         unsigned threads, const GridProgress& progress) {
    if (!(rect.qa_min >= 0.0 && rect.qa_max <= 1.0 && rect.qb_min >= 0.0 && rect.qb_max <= 1.0 &&
          rect.qa_min < rect.qa_max && rect.qb_min < rect.qb_max))
        throw ParamOutOfRange("parameter rectangle must lie inside the unit square");
    if (width == 0 || height == 0)
        throw ParamOutOfRange("grid resolution must be positive");
    if (depth > max_cover_depth)
        throw BudgetExceeded("cover search depth exceeds " + std::to_string(max_cover_depth));
    CoverageGrid grid;
    grid.width = width;
    grid.height = height;
    grid.depth = depth;
    grid.n_max = n_max;
    grid.rect = rect;
    grid.labels.assign(width * height, CellLabel::unknown);
    std::vector<std::uint8_t> dual(width * height, 0);

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, height));
    std::atomic<std::size_t> next_row{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    auto work = [&]() {
        for (std::size_t row = next_row++; row < height; row = next_row++) {
            for (std::size_t col = 0; col < width; ++col) {
                const TwoHyperbolicParams p = grid.cell_center(col, row);
                const bool cover = cover_search(two_hyperbolic_system(p), depth);
                const bool inward = inward_region_test(p, n_max);
                const std::size_t i = row * width + col;
                grid.labels[i] = cover ? CellLabel::cover : inward ? CellLabel::inward : CellLabel::unknown;
                dual[i] = cover && inward;
            }
            const std::size_t finished = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(finished * width, width * height);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    for (auto d : dual)
        grid.dual_labelled += d;
    return grid;
}

std::string to_pgm(const CoverageGrid& grid) {
    std::ostringstream out;
    out << "P2\n" << grid.width << ' ' << grid.height << "\n255\n";
    for (std::size_t row = 0; row < grid.height; ++row) {
        for (std::size_t col = 0; col < grid.width; ++col)
            out << (col ? " " : "") << static_cast<int>(grid.at(col, row));
        out << '\n';
    }
    return out.str();
}

std::string to_csv(const CoverageGrid& grid) {
    std::ostringstream out;
    out.precision(17);
    out << "q_a,q_b,label\n";
    for (std::size_t row = 0; row < grid.height; ++row)
        for (std::size_t col = 0; col < grid.width; ++col) {
            const auto p = grid.cell_center(col, row);
            out << p.q_a << ',' << p.q_b << ',' << to_string(grid.at(col, row)) << '\n';
        }
    return out.str();
}

nlohmann::json summary(const CoverageGrid& grid) {
    const double cover = grid.fraction(CellLabel::cover);
    const double inward = grid.fraction(CellLabel::inward);
    return {
        {"resolution", {grid.width, grid.height}},
        {"depth", grid.depth},
        {"n_max", grid.n_max},
        {"rect", {grid.rect.qa_min, grid.rect.qb_min, grid.rect.qa_max, grid.rect.qb_max}},
        {"fractions", {{"cover", cover}, {"inward", inward}, {"unknown", grid.fraction(CellLabel::unknown)}}},
        {"cover_plus_inward", cover + inward},
        {"dual_labelled", grid.dual_labelled},
    };
}

} // namespace mns

#pragma once

#include "mns/moebius.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mns {

// Derivatives of F_a and F_b at their stable points 1 and -1.
struct TwoHyperbolicParams {
    double q_a;
    double q_b;
};

// Throws ParamOutOfRange unless both parameters lie in (0, 1).
std::array<DiscMoebius, 2> two_hyperbolic_system(TwoHyperbolicParams p);

inline constexpr int max_cover_depth = 16;

// Whether the closed expansion intervals of all words of length 1..depth cover the circle.
// Throws BudgetExceeded above max_cover_depth.
bool cover_search(const std::array<DiscMoebius, 2>& system, int depth);

// Membership in U_n for some |n| <= n_max.
bool inward_region_test(TwoHyperbolicParams p, int n_max);

enum class CellLabel : std::uint8_t { unknown = 0, inward = 128, cover = 255 };
std::string_view to_string(CellLabel label);

struct ParamRect {
    double qa_min = 0.0;
    double qb_min = 0.0;
    double qa_max = 1.0;
    double qb_max = 1.0;
};

struct CoverageGrid {
    std::size_t width = 0;
    std::size_t height = 0;
    int depth = 0;
    int n_max = 0;
    ParamRect rect;
    std::vector<CellLabel> labels; // row-major from the top-left, q_b decreasing downwards
    std::size_t dual_labelled = 0; // cells where both predicates held

    TwoHyperbolicParams cell_center(std::size_t col, std::size_t row) const;
    CellLabel at(std::size_t col, std::size_t row) const { return labels[row * width + col]; }
    double fraction(CellLabel label) const;
};

using GridProgress = std::function<void(std::size_t done, std::size_t total)>;

// Cells are independent; threads = 0 picks the hardware concurrency.
CoverageGrid render_grid(const ParamRect& rect, std::size_t width, std::size_t height, int depth, int n_max,
                         unsigned threads = 0, const GridProgress& progress = {});

std::string to_pgm(const CoverageGrid& grid);
std::string to_csv(const CoverageGrid& grid);
nlohmann::json summary(const CoverageGrid& grid);

} // namespace mns

#pragma once

#include "mns/interval_system.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mns {

struct EncodeResult {
    CirclePoint point;    // d_n / |d_n|
    double error_radius;  // 1 / |beta_n|, the radius of D_n
    std::size_t digits_consumed = 0;
    bool converged = false;
};

// Yields the next digit, or nothing when the stream ends.
using DigitSource = std::function<std::optional<Symbol>()>;

inline constexpr std::size_t unlimited_digits = std::numeric_limits<std::size_t>::max();

// Throws IllegalPrefix when a prefix leaves the interval shift.
EncodeResult encode(const IntervalSystem& system, const Word& w, double tol,
                    std::size_t max_digits = unlimited_digits);
EncodeResult encode(const IntervalSystem& system, const DigitSource& next, double tol,
                    std::size_t max_digits = unlimited_digits);

// Greedy expansion of x with lexicographic tie-break. Throws NoLegalDigit.
Word decode(const IntervalSystem& system, CirclePoint x, std::size_t n_digits);

// Incremental legality of a word: follower state of the subshift and Z_v.
class PrefixTracker {
public:
    explicit PrefixTracker(const IntervalSystem& system);
    // Throws IllegalPrefix.
    void advance(Symbol a);
    const ArcSet& state() const { return z_; }
    std::size_t length() const { return length_; }

private:
    const IntervalSystem& system_;
    int follower_;
    ArcSet z_;
    std::optional<Symbol> last_;
    bool settled_ = false; // z_ is a fixed point of the last symbol's transition
    std::size_t length_ = 0;
};

enum class VerifyStatus { verified_Qn, verified_prefix_set, inconclusive };
std::string_view to_string(VerifyStatus s);

struct VerifyRequest {
    enum class Mode { automatic, qn, prefix_set };
    Mode mode = Mode::automatic;
    std::size_t n = 1;             // qn mode
    std::size_t n_max = 8;         // automatic mode
    std::vector<Word> prefixes;    // prefix_set mode, optional in automatic mode
};

struct Verdict {
    VerifyStatus status = VerifyStatus::inconclusive;
    std::optional<std::size_t> n;
    std::optional<double> q_value;
    std::vector<Word> prefixes;
    std::vector<std::string> warnings;
    std::optional<CompatibilityReport> compatibility;
    std::optional<PrefixSetVerdict> prefix_report;
};

Verdict verify(const IntervalSystem& system, const VerifyRequest& request);

// Closure of W_v: the points with an expansion starting with v. Throws EmptyRefinedSet.
ClosedArcSet phi_interval(const IntervalSystem& system, const Word& v);

} // namespace mns

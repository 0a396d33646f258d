#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace sboxforge::chaos {

/// Lower bound of the map state; keeps the 1/x terms of the ALG1 rule finite.
inline constexpr double kStateFloor = 1e-12;

/// Initial separation used by the two-trajectory Lyapunov estimator.
inline constexpr double kLyapunovSeparation = 1e-9;

inline constexpr std::size_t kMinLyapunovIterations = 1000;

/// Update rule of the trigonometric map.
///
/// `Eq1` is the piecewise sine/tangent recurrence; `Alg1` advances the state
/// through the W and Y quantities of the table-building procedure
/// (x' = frac(W * Y)).
enum class MapMode : std::uint8_t { Eq1, Alg1 };

std::string_view to_string(MapMode mode);
/// Accepts "eq1" / "alg1" (case-insensitive). Throws std::invalid_argument.
MapMode parse_mode(std::string_view text);

/// The secret key of the generator: initial state, control parameter,
/// scaling multiplier and update rule. Construction validates the ranges
/// 0 < x0 < 1, 0 < a < 2, 0 < b <= 1e9 and throws std::invalid_argument.
class MapParams {
public:
    MapParams(double x0, double a, double b, MapMode mode = MapMode::Alg1);

    double x0() const noexcept { return x0_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    MapMode mode() const noexcept { return mode_; }

    MapParams with_x0(double x0) const { return {x0, a_, b_, mode_}; }
    MapParams with_a(double a) const { return {x0_, a, b_, mode_}; }

    friend bool operator==(const MapParams&, const MapParams&) = default;

private:
    double x0_;
    double a_;
    double b_;
    MapMode mode_;
};

/// Map state confined to [kStateFloor, 1).
class ChaosState {
public:
    /// Throws std::invalid_argument outside [kStateFloor, 1).
    explicit ChaosState(double x);

    double x() const noexcept { return x_; }

    friend bool operator==(const ChaosState&, const ChaosState&) = default;

private:
    struct Unchecked {};
    ChaosState(double x, Unchecked) noexcept : x_(x) {}
    double x_;

    friend ChaosState step(ChaosState, const MapParams&);
    friend ChaosState wrap_state(double);
};

struct Intermediates {
    double w;
    double y;
};

/// Fractional part of v, raised to kStateFloor when it falls below it.
double wrap(double v) noexcept;
ChaosState wrap_state(double v);

/// Value of the active update rule before the fractional-part reduction.
double raw_step(double x, const MapParams& params) noexcept;

ChaosState step(ChaosState state, const MapParams& params);

/// W = 1 - cos(x)/x + (3 + a)/x, Y = sqrt(sin(x)) / (0.5 + a*x).
Intermediates intermediates(ChaosState state, const MapParams& params) noexcept;

/// Iterates from x0 for transient + n steps and returns the last n states.
/// Throws std::invalid_argument when n == 0.
std::vector<double> trajectory(const MapParams& params, std::size_t n, std::size_t transient = 0);

struct BifurcationRecord {
    double a;
    double x;
};

struct BifurcationScan {
    double a_min;
    double a_max;
    std::size_t a_steps;
    double x0;
    std::size_t samples;
    std::size_t transient;
    MapMode mode;
};

/// Evenly spaced sweep of the control parameter over [a_min, a_max].
/// Output is ordered by a, then by iterate index; distinct a-values may be
/// evaluated on worker threads. Throws std::invalid_argument on an empty or
/// inverted range, a_steps < 2 or samples == 0.
std::vector<BifurcationRecord> bifurcation_scan(const BifurcationScan& scan);

enum class LyapunovMethod : std::uint8_t { TwoTrajectory };

struct LyapunovEstimate {
    double value;
    /// Steps performed.
    std::size_t iterations;
    /// Steps that contributed to the average (branch straddles excluded).
    std::size_t accumulated;
    LyapunovMethod method;
};

/// Two-trajectory (Benettin) estimate of the largest Lyapunov exponent.
/// Throws std::invalid_argument when n < kMinLyapunovIterations.
LyapunovEstimate lyapunov(const MapParams& params, std::size_t n);

} // namespace sboxforge::chaos

#include "sboxforge/chaos.hpp"

#include "sboxforge/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sboxforge::chaos {

std::string_view to_string(MapMode mode) {
    switch (mode) {
    case MapMode::Eq1:
        return "eq1";
    case MapMode::Alg1:
        return "alg1";
    }
    return "unknown";
}

MapMode parse_mode(std::string_view text) {
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == "eq1") {
        return MapMode::Eq1;
    }
    if (lowered == "alg1") {
        return MapMode::Alg1;
    }
    throw std::invalid_argument("unknown map mode '" + std::string(text) + "' (expected eq1 or alg1)");
}

MapParams::MapParams(double x0, double a, double b, MapMode mode)
    : x0_(x0), a_(a), b_(b), mode_(mode) {
    if (!(x0 > 0.0 && x0 < 1.0)) {
        throw std::invalid_argument("x0 must lie in (0, 1)");
    }
    if (!(a > 0.0 && a < 2.0)) {
        throw std::invalid_argument("a must lie in (0, 2)");
    }
    if (!(b > 0.0 && b <= 1e9)) {
        throw std::invalid_argument("b must lie in (0, 1e9]");
    }
}

ChaosState::ChaosState(double x) : x_(x) {
    if (!(x >= kStateFloor && x < 1.0)) {
        throw std::invalid_argument("map state must lie in [1e-12, 1)");
    }
}

double wrap(double v) noexcept {
    double r = v - std::floor(v);
    // v slightly below an integer can round up to exactly 1.0.
    if (r >= 1.0) {
        r = 0.0;
    }
    return r < kStateFloor ? kStateFloor : r;
}

ChaosState wrap_state(double v) {
    if (!std::isfinite(v)) {
        throw std::domain_error("map produced a non-finite value");
    }
    return ChaosState(wrap(v), ChaosState::Unchecked{});
}

double raw_step(double x, const MapParams& params) noexcept {
    const double a = params.a();
    if (params.mode() == MapMode::Eq1) {
        if (x < 0.5) {
            const double s = std::sin(a * x);
            return 0.52 + x + s * s;
        }
        return 1.5 + a / 2.0 - std::tan(x);
    }
    const double w = 1.0 - std::cos(x) / x + (3.0 + a) / x;
    const double y = std::sqrt(std::sin(x)) / (0.5 + a * x);
    return w * y;
}

ChaosState step(ChaosState state, const MapParams& params) {
    return wrap_state(raw_step(state.x(), params));
}

Intermediates intermediates(ChaosState state, const MapParams& params) noexcept {
    const double x = state.x();
    const double a = params.a();
    return {1.0 - std::cos(x) / x + (3.0 + a) / x, std::sqrt(std::sin(x)) / (0.5 + a * x)};
}

std::vector<double> trajectory(const MapParams& params, std::size_t n, std::size_t transient) {
    if (n == 0) {
        throw std::invalid_argument("trajectory length must be at least 1");
    }
    ChaosState state = wrap_state(params.x0());
    for (std::size_t i = 0; i < transient; ++i) {
        state = step(state, params);
    }
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        state = step(state, params);
        out.push_back(state.x());
    }
    return out;
}

std::vector<BifurcationRecord> bifurcation_scan(const BifurcationScan& scan) {
    if (!(scan.a_min > 0.0 && scan.a_min < scan.a_max && scan.a_max < 2.0)) {
        throw std::invalid_argument("bifurcation range must satisfy 0 < a_min < a_max < 2");
    }
    if (scan.a_steps < 2) {
        throw std::invalid_argument("bifurcation scan needs at least 2 a-steps");
    }
    if (scan.samples == 0) {
        throw std::invalid_argument("bifurcation scan needs at least 1 sample");
    }

    std::vector<BifurcationRecord> records(scan.a_steps * scan.samples);
    const double span = scan.a_max - scan.a_min;
    const auto last = static_cast<double>(scan.a_steps - 1);

    parallel_for(scan.a_steps, [&](std::size_t k) {
        const double a = k + 1 == scan.a_steps ? scan.a_max
                                                : scan.a_min + span * static_cast<double>(k) / last;
        // b does not enter the map; any valid value will do.
        const MapParams params(scan.x0, a, 1.0, scan.mode);
        const auto xs = trajectory(params, scan.samples, scan.transient);
        for (std::size_t s = 0; s < scan.samples; ++s) {
            records[k * scan.samples + s] = {a, xs[s]};
        }
    });
    return records;
}

namespace {

// Places the companion point at distance delta from x, staying inside the
// state domain (moves left when x + delta would leave [floor, 1)).
double companion(double x, double delta) {
    const double right = x + delta;
    return right < 1.0 ? right : x - delta;
}

} // namespace

LyapunovEstimate lyapunov(const MapParams& params, std::size_t n) {
    if (n < kMinLyapunovIterations) {
        throw std::invalid_argument("lyapunov estimate needs at least 1000 iterations");
    }

    const double d0 = kLyapunovSeparation;
    const bool piecewise = params.mode() == MapMode::Eq1;

    double x = wrap_state(params.x0()).x();
    double y = companion(x, d0);
    double sum = 0.0;
    std::size_t used = 0;

    for (std::size_t i = 0; i < n; ++i) {
        const double fx = raw_step(x, params);
        if (piecewise && ((x < 0.5) != (y < 0.5))) {
            x = wrap(fx);
            y = companion(x, d0);
            continue;
        }
        const double fy = raw_step(y, params);
        // Separation on the circle: the fractional-part reduction is an
        // identification, not a divergence.
        double d = fy - fx;
        d -= std::round(d);
        const double sep = std::abs(d);
        x = wrap(fx);
        if (sep > 0.0) {
            sum += std::log(sep / d0);
            ++used;
        }
        y = companion(x, d0);
    }

    if (used == 0) {
        throw std::domain_error("lyapunov estimate collected no usable steps");
    }
    return {sum / static_cast<double>(used), n, used, LyapunovMethod::TwoTrajectory};
}

} // namespace sboxforge::chaos

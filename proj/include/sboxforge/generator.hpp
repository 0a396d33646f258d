#pragma once

#include "sboxforge/chaos.hpp"
#include "sboxforge/table.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace sboxforge::gen {

struct GenConfig {
    /// Cap on chaotic draws while filling the initial table (>= 256).
    std::size_t max_iterations = 10'000'000;
    bool refine = true;
    std::size_t refine_max_passes = 64;

    /// Throws std::invalid_argument when max_iterations < 256.
    void validate() const;
};

/// The draw budget ran out before 256 distinct octets were placed.
class GenerationStalled : public std::runtime_error {
public:
    GenerationStalled(std::size_t draws, std::size_t placed);
    std::size_t draws() const noexcept { return draws_; }
    std::size_t placed() const noexcept { return placed_; }

private:
    std::size_t draws_;
    std::size_t placed_;
};

/// A fixed point could not be removed without lowering min nonlinearity.
class RefinementFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterates the keyed map and yields one candidate octet per iterate:
/// round(x * b) mod 256, rounding half away from zero.
class OctetStream {
public:
    explicit OctetStream(const chaos::MapParams& key);

    std::uint8_t next();
    void discard(std::size_t count);
    std::size_t draws() const noexcept { return draws_; }

private:
    chaos::MapParams key_;
    chaos::ChaosState state_;
    std::size_t draws_ = 0;
};

std::uint8_t extract_octet(double x, double b) noexcept;

/// Fills the table with first occurrences of stream octets until all 256
/// values are present. Throws GenerationStalled on budget exhaustion.
SBox generate_initial(const chaos::MapParams& key, const GenConfig& cfg = {});

/// Iterates of the key stream skipped before refinement draws begin.
inline constexpr std::size_t kRefineStreamOffset = 1024;

/// Keyed hill-climb over transpositions. Removes every fixed point without
/// lowering min coordinate nonlinearity, then accepts swaps that strictly
/// raise it. Stops after cfg.refine_max_passes or a pass with no accepted
/// swap. Throws RefinementFailed when a fixed point cannot be removed.
SBox refine(const SBox& sbox, const GenConfig& cfg, const chaos::MapParams& key);

/// generate_initial, then refine when cfg.refine is set.
SBox generate(const chaos::MapParams& key, const GenConfig& cfg = {});

} // namespace sboxforge::gen

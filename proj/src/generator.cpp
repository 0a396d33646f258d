#include "sboxforge/generator.hpp"

#include "sboxforge/metrics.hpp"

#include <algorithm>
#include <array>
#include <bitset>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

namespace sboxforge::gen {

void GenConfig::validate() const {
    if (max_iterations < kTableSize) {
        throw std::invalid_argument("max_iterations must be at least 256");
    }
}

GenerationStalled::GenerationStalled(std::size_t draws, std::size_t placed)
    : std::runtime_error("generation stalled: " + std::to_string(placed) + " distinct octets after " +
                         std::to_string(draws) + " draws"),
      draws_(draws), placed_(placed) {}

std::uint8_t extract_octet(double x, double b) noexcept {
    // x * b <= 1e9, exact in the integer range of double.
    const auto rounded = static_cast<std::uint64_t>(std::round(x * b));
    return static_cast<std::uint8_t>(rounded % 256u);
}

OctetStream::OctetStream(const chaos::MapParams& key) : key_(key), state_(chaos::wrap_state(key.x0())) {}

std::uint8_t OctetStream::next() {
    state_ = chaos::step(state_, key_);
    ++draws_;
    return extract_octet(state_.x(), key_.b());
}

void OctetStream::discard(std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
        state_ = chaos::step(state_, key_);
    }
}

SBox generate_initial(const chaos::MapParams& key, const GenConfig& cfg) {
    cfg.validate();
    OctetStream stream(key);
    std::bitset<kTableSize> placed;
    Octets values{};
    std::size_t count = 0;
    while (count < kTableSize) {
        if (stream.draws() >= cfg.max_iterations) {
            throw GenerationStalled(stream.draws(), count);
        }
        const std::uint8_t v = stream.next();
        if (!placed.test(v)) {
            placed.set(v);
            values[count++] = v;
        }
    }
    return SBox(values);
}

namespace {

constexpr int kBits = 8;
constexpr int kHalf = static_cast<int>(kTableSize / 2);
constexpr std::size_t kDrawsPerPhase = 256;

using Spectrum = std::array<int, kTableSize>;

int peak_of(const Spectrum& w) {
    int peak = 0;
    for (int v : w) {
        peak = std::max(peak, std::abs(v));
    }
    return peak;
}

// Walsh spectra of the eight coordinate functions, updated in place when two
// table entries are exchanged.
class CoordinateSpectra {
public:
    explicit CoordinateSpectra(const Octets& table) : table_(table) {
        for (int c = 0; c < kBits; ++c) {
            const auto w = metrics::walsh_spectrum(metrics::component(table_, 1u << c));
            std::copy(w.begin(), w.end(), spectra_[c].begin());
            peaks_[c] = peak_of(spectra_[c]);
        }
    }

    const Octets& table() const noexcept { return table_; }

    int min_nl() const noexcept { return kHalf - *std::max_element(peaks_.begin(), peaks_.end()) / 2; }

    // Min NL after exchanging entries p and q; the trial spectra are kept
    // for commit().
    int trial(std::size_t p, std::size_t q) {
        trial_p_ = p;
        trial_q_ = q;
        const unsigned changed = table_[p] ^ table_[q];
        int worst = 0;
        for (int c = 0; c < kBits; ++c) {
            if (!((changed >> c) & 1u)) {
                trial_peaks_[c] = peaks_[c];
            } else {
                // Both f(p) and f(q) flip; each flip moves W(w) by -2 * its old sign.
                const int fp = (table_[p] >> c) & 1;
                const int fq = (table_[q] >> c) & 1;
                auto& out = scratch_[c];
                const auto& w = spectra_[c];
                for (std::size_t omega = 0; omega < kTableSize; ++omega) {
                    const int sp = (fp ^ metrics::parity(static_cast<unsigned>(omega & p))) ? -1 : 1;
                    const int sq = (fq ^ metrics::parity(static_cast<unsigned>(omega & q))) ? -1 : 1;
                    out[omega] = w[omega] - 2 * sp - 2 * sq;
                }
                trial_peaks_[c] = peak_of(out);
            }
            worst = std::max(worst, trial_peaks_[c]);
        }
        return kHalf - worst / 2;
    }

    void commit() {
        const unsigned changed = table_[trial_p_] ^ table_[trial_q_];
        for (int c = 0; c < kBits; ++c) {
            if ((changed >> c) & 1u) {
                spectra_[c] = scratch_[c];
            }
        }
        peaks_ = trial_peaks_;
        std::swap(table_[trial_p_], table_[trial_q_]);
    }

private:
    Octets table_;
    std::array<Spectrum, kBits> spectra_{};
    std::array<int, kBits> peaks_{};
    std::array<Spectrum, kBits> scratch_{};
    std::array<int, kBits> trial_peaks_{};
    std::size_t trial_p_ = 0;
    std::size_t trial_q_ = 0;
};

std::size_t first_fixed_point(const Octets& t) {
    for (std::size_t i = 0; i < kTableSize; ++i) {
        if (t[i] == i) {
            return i;
        }
    }
    return kTableSize;
}

// Exchanging a fixed point i with any j != i never creates a fixed point.
bool remove_fixed_point(CoordinateSpectra& spectra, std::size_t i, OctetStream& stream) {
    const int floor = spectra.min_nl();
    for (std::size_t draw = 0; draw < kDrawsPerPhase; ++draw) {
        const std::size_t j = stream.next();
        if (j != i && spectra.trial(i, j) >= floor) {
            spectra.commit();
            return true;
        }
    }
    for (std::size_t j = 0; j < kTableSize; ++j) {
        if (j != i && spectra.trial(i, j) >= floor) {
            spectra.commit();
            return true;
        }
    }
    return false;
}

} // namespace

SBox refine(const SBox& sbox, const GenConfig& cfg, const chaos::MapParams& key) {
    OctetStream stream(key);
    stream.discard(kRefineStreamOffset);
    CoordinateSpectra spectra(sbox.table().values());

    for (std::size_t pass = 0; pass < cfg.refine_max_passes; ++pass) {
        bool accepted = false;

        for (std::size_t i = first_fixed_point(spectra.table()); i < kTableSize;
             i = first_fixed_point(spectra.table())) {
            [[maybe_unused]] const int before = spectra.min_nl();
            if (!remove_fixed_point(spectra, i, stream)) {
                throw RefinementFailed("fixed point at " + std::to_string(i) +
                                       " cannot be removed without lowering nonlinearity");
            }
            assert(spectra.min_nl() >= before);
            accepted = true;
        }

        for (std::size_t draw = 0; draw < kDrawsPerPhase; ++draw) {
            const std::size_t p = stream.next();
            const std::size_t q = stream.next();
            const auto& t = spectra.table();
            if (p == q || t[q] == p || t[p] == q) {
                continue;
            }
            const int before = spectra.min_nl();
            if (spectra.trial(p, q) > before) {
                spectra.commit();
                assert(spectra.min_nl() > before);
                accepted = true;
            }
        }

        if (!accepted) {
            break;
        }
    }
    return SBox(spectra.table());
}

SBox generate(const chaos::MapParams& key, const GenConfig& cfg) {
    SBox initial = generate_initial(key, cfg);
    if (!cfg.refine) {
        return initial;
    }
    return refine(initial, cfg, key);
}

} // namespace sboxforge::gen

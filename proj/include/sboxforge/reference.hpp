#pragma once

#include "sboxforge/metrics.hpp"
#include "sboxforge/table.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sboxforge::reference {

using Matrix8 = std::array<std::array<double, 8>, 8>;

/// Printed decimals carry four places; a printed value v stands for the
/// exact value within this distance.
inline constexpr double kPrintedTolerance = 1e-4;
/// Allowed distance of the computed BIC-SAC average from the printed one.
inline constexpr double kBicSacAverageTolerance = 5e-4;

/// Values published alongside the trigonometric S-box, exactly as printed.
struct PublishedMetrics {
    std::array<int, 8> nl_per_bit;
    int nl_min;
    double lap;
    int differential_uniformity;
    std::size_t fixed_point_count;
    Matrix8 sac;
    Matrix8 bic_sac;
    double bic_sac_avg;
};

struct ReferenceFixture {
    std::string_view name;
    RawTable table;
    std::optional<PublishedMetrics> expected;
};

/// Published table, row-major; first row begins 90 125 131 229.
const RawTable& paper_final_sbox();
/// The text prints a single 16x16 table; the initial fixture carries that
/// same transcription and no published metrics.
const RawTable& paper_initial_sbox();
/// Rijndael S-box, used only to cross-check the metrics.
const RawTable& aes_sbox();

const PublishedMetrics& published_final_metrics();

/// Final fixture (with published metrics) followed by the initial fixture.
std::vector<ReferenceFixture> fixtures();
/// Throws std::invalid_argument for an unknown name ("final", "initial", "aes").
const RawTable& fixture_table(std::string_view name);

/// Sum of each 16-entry row, for checking a transcription by hand.
std::array<int, 16> row_sums(const RawTable& table);

struct AuditMismatch {
    std::string field;
    /// Offending cell, e.g. "bit 6" or "(0,1)"; empty for scalar fields.
    std::string cell;
    std::string expected;
    std::string actual;
};

struct AuditResult {
    std::vector<AuditMismatch> mismatches;
    std::size_t checked = 0;

    bool passed() const noexcept { return mismatches.empty(); }
};

/// Compares every published value against a computed report and lists each
/// disagreeing cell. An empty result is the strict-mode pass condition.
AuditResult audit(const PublishedMetrics& expected, const metrics::MetricsReport& report);

/// Audit of a fixture's table against its own published values; a fixture
/// without published values passes trivially.
AuditResult audit(const ReferenceFixture& fixture);

/// Strict mode: exact agreement (within printing precision) on every field.
bool strict_check(const ReferenceFixture& fixture);

} // namespace sboxforge::reference

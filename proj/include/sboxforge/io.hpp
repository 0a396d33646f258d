#pragma once

#include "sboxforge/chaos.hpp"
#include "sboxforge/metrics.hpp"
#include "sboxforge/table.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sboxforge::io {

/// Input that is not a 256-entry octet table.
class MalformedInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TableFormat { Hex, Bin, Json };

std::string_view to_string(TableFormat format);
/// "hex" / "bin" / "json". Throws std::invalid_argument.
TableFormat parse_format(std::string_view text);

/// 16 lines of 16 uppercase two-digit hex values separated by single
/// spaces, each line newline-terminated.
std::string to_hex(const RawTable& table);
/// Exactly 256 octets in index order.
std::string to_bin(const RawTable& table);
/// {"table": [256 integers]}, newline-terminated.
std::string to_json(const RawTable& table);
std::string encode(const RawTable& table, TableFormat format);

/// Whitespace-separated hex tokens (optional 0x prefix), exactly 256 of
/// them, each at most FF.
RawTable parse_hex(std::string_view text);
RawTable parse_bin(std::string_view bytes);
/// Either {"table": [...]} or a bare array of 256 integers in 0..255.
RawTable parse_json(std::string_view text);
RawTable decode(std::string_view data, TableFormat format);

/// Format from the extension (.hex/.txt, .bin, .json); otherwise sniffed
/// from the content.
TableFormat detect_format(const std::filesystem::path& path, std::string_view data);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

/// Reads and decodes a table; format is detected when not given.
RawTable read_table(const std::filesystem::path& path, std::optional<TableFormat> format = std::nullopt);

/// Report as JSON with a fixed key order. Rationals appear as
/// {"value": <6-place decimal>, "exact": "num/den"}.
std::string report_to_json(const metrics::MetricsReport& report);

/// "a,x" header then one row per record.
std::string bifurcation_to_csv(const std::vector<chaos::BifurcationRecord>& records);

std::string lyapunov_to_json(const chaos::LyapunovEstimate& estimate, const chaos::MapParams& params);

} // namespace sboxforge::io

#include "sboxforge/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace sboxforge::io {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(TableFormat format) {
    switch (format) {
    case TableFormat::Hex:
        return "hex";
    case TableFormat::Bin:
        return "bin";
    case TableFormat::Json:
        return "json";
    }
    return "unknown";
}

TableFormat parse_format(std::string_view text) {
    if (text == "hex") {
        return TableFormat::Hex;
    }
    if (text == "bin") {
        return TableFormat::Bin;
    }
    if (text == "json") {
        return TableFormat::Json;
    }
    throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected hex, bin or json)");
}

std::string to_hex(const RawTable& table) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(16 * 48);
    for (std::size_t i = 0; i < kTableSize; ++i) {
        out.push_back(digits[table[i] >> 4]);
        out.push_back(digits[table[i] & 0xF]);
        out.push_back(i % 16 == 15 ? '\n' : ' ');
    }
    return out;
}

std::string to_bin(const RawTable& table) {
    const auto& v = table.values();
    return std::string(v.begin(), v.end());
}

std::string to_json(const RawTable& table) {
    ordered_json j;
    j["table"] = table.values();
    return j.dump() + "\n";
}

std::string encode(const RawTable& table, TableFormat format) {
    switch (format) {
    case TableFormat::Hex:
        return to_hex(table);
    case TableFormat::Bin:
        return to_bin(table);
    case TableFormat::Json:
        return to_json(table);
    }
    throw std::invalid_argument("unknown table format");
}

RawTable parse_hex(std::string_view text) {
    Octets values{};
    std::size_t count = 0;
    std::size_t pos = 0;
    while (true) {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (pos == text.size()) {
            break;
        }
        std::size_t end = pos;
        while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) {
            ++end;
        }
        std::string_view token = text.substr(pos, end - pos);
        pos = end;
        if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
            token.remove_prefix(2);
        }
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value, 16);
        if (ec != std::errc{} || ptr != token.data() + token.size() || token.size() > 2) {
            throw MalformedInput("invalid hex octet '" + std::string(token) + "' at entry " + std::to_string(count));
        }
        if (count == kTableSize) {
            throw MalformedInput("hex table has more than 256 entries");
        }
        values[count++] = static_cast<std::uint8_t>(value);
    }
    if (count != kTableSize) {
        throw MalformedInput("hex table has " + std::to_string(count) + " entries, expected 256");
    }
    return RawTable(values);
}

RawTable parse_bin(std::string_view bytes) {
    if (bytes.size() != kTableSize) {
        throw MalformedInput("binary table has " + std::to_string(bytes.size()) + " octets, expected 256");
    }
    Octets values{};
    std::transform(bytes.begin(), bytes.end(), values.begin(),
                   [](char c) { return static_cast<std::uint8_t>(c); });
    return RawTable(values);
}

RawTable parse_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInput(std::string("invalid JSON: ") + e.what());
    }
    const ordered_json* array = &j;
    if (j.is_object()) {
        if (!j.contains("table")) {
            throw MalformedInput("JSON object has no \"table\" member");
        }
        array = &j.at("table");
    }
    if (!array->is_array() || array->size() != kTableSize) {
        throw MalformedInput("JSON table must be an array of 256 integers");
    }
    Octets values{};
    for (std::size_t i = 0; i < kTableSize; ++i) {
        const auto& v = (*array)[i];
        if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 255) {
            throw MalformedInput("JSON entry " + std::to_string(i) + " is not an octet");
        }
        values[i] = static_cast<std::uint8_t>(v.get<int>());
    }
    return RawTable(values);
}

RawTable decode(std::string_view data, TableFormat format) {
    switch (format) {
    case TableFormat::Hex:
        return parse_hex(data);
    case TableFormat::Bin:
        return parse_bin(data);
    case TableFormat::Json:
        return parse_json(data);
    }
    throw std::invalid_argument("unknown table format");
}

TableFormat detect_format(const std::filesystem::path& path, std::string_view data) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".hex" || ext == ".txt") {
        return TableFormat::Hex;
    }
    if (ext == ".bin") {
        return TableFormat::Bin;
    }
    if (ext == ".json") {
        return TableFormat::Json;
    }
    const auto first = data.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && (data[first] == '{' || data[first] == '[')) {
        return TableFormat::Json;
    }
    const bool textual = std::all_of(data.begin(), data.end(), [](char c) {
        return std::isxdigit(static_cast<unsigned char>(c)) || std::isspace(static_cast<unsigned char>(c)) ||
               c == 'x' || c == 'X';
    });
    return textual ? TableFormat::Hex : TableFormat::Bin;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MalformedInput("cannot open '" + path.string() + "'");
    }
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

RawTable read_table(const std::filesystem::path& path, std::optional<TableFormat> format) {
    const auto data = read_file(path);
    return decode(data, format.value_or(detect_format(path, data)));
}

namespace {

double six_places(double v) { return std::round(v * 1e6) / 1e6; }

ordered_json rational(const metrics::Ratio& r) {
    return {{"value", six_places(r.value())}, {"exact", r.exact()}};
}

template <typename T>
ordered_json rows(const metrics::SquareMatrix<T>& m) {
    ordered_json out = ordered_json::array();
    for (int i = 0; i < m.order(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.order(); ++j) {
            row.push_back(m.at(i, j));
        }
        out.push_back(std::move(row));
    }
    return out;
}

ordered_json decimal_rows(const metrics::SquareMatrix<int>& m, std::int64_t den) {
    ordered_json out = ordered_json::array();
    for (int i = 0; i < m.order(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < m.order(); ++j) {
            row.push_back(six_places(static_cast<double>(m.at(i, j)) / static_cast<double>(den)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string shortest(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

std::string report_to_json(const metrics::MetricsReport& r) {
    ordered_json j;
    j["width"] = r.width;
    j["bijective"] = r.bijective;
    j["fixed_point_count"] = r.fixed_point_count();
    j["fixed_points"] = r.fixed_points;
    j["nl_per_bit"] = r.nl_per_bit;
    j["nl_min"] = r.nl_min;
    j["sac"] = {{"denominator", r.sac.denominator},
                {"counts", rows(r.sac.counts)},
                {"decimal", decimal_rows(r.sac.counts, r.sac.denominator)}};
    j["sac_mean"] = rational(r.sac_mean);
    j["bic_nl"] = rows(r.bic_nl.matrix);
    j["bic_nl_min"] = r.bic_nl.min;
    j["bic_sac"] = {{"denominator", r.bic_sac.denominator},
                    {"counts", rows(r.bic_sac.counts)},
                    {"decimal", decimal_rows(r.bic_sac.counts, r.bic_sac.denominator)}};
    j["bic_sac_avg"] = rational(r.bic_sac_avg);
    j["lat_max_abs"] = r.lat_max_abs;
    j["lap"] = rational(r.lap);
    j["differential_uniformity"] = r.differential_uniformity;
    j["dap"] = rational(r.dap);
    j["algebraic_degree_per_bit"] = r.degree_per_bit;
    j["degree_min"] = r.degree_min;
    return j.dump(2) + "\n";
}

std::string bifurcation_to_csv(const std::vector<chaos::BifurcationRecord>& records) {
    std::string out = "a,x\n";
    out.reserve(records.size() * 40);
    for (const auto& rec : records) {
        out += shortest(rec.a);
        out.push_back(',');
        out += shortest(rec.x);
        out.push_back('\n');
    }
    return out;
}

std::string lyapunov_to_json(const chaos::LyapunovEstimate& estimate, const chaos::MapParams& params) {
    ordered_json j;
    j["value"] = estimate.value;
    j["iterations"] = estimate.iterations;
    j["accumulated"] = estimate.accumulated;
    j["method"] = "two_trajectory";
    j["mode"] = std::string(chaos::to_string(params.mode()));
    j["x0"] = params.x0();
    j["a"] = params.a();
    return j.dump(2) + "\n";
}

} // namespace sboxforge::io

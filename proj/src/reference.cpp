#include "sboxforge/reference.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace sboxforge::reference {

namespace {

constexpr Octets kPublishedTable{{
     90, 125, 131, 229,  72, 224, 159,  94, 251,  75, 198, 134, 194,  22,   0,  96,
    123, 223, 184, 139,  79,  65, 190, 176, 221, 187, 147, 234, 255, 105,  78, 186,
    191, 231,   6,  41,  48, 197, 178, 100, 136, 200, 166,  17,  66,  93,  59, 216,
     87, 172, 133,  10,  51, 157, 246,  21, 103, 126,  67, 189, 161, 168, 237, 236,
     61,  88, 104,  54,  99,  95, 179, 114,  81, 233, 116,  39, 217,  77, 146,  69,
     16, 204, 111, 218, 177, 155, 115, 253, 112, 199, 106, 152,  30,  80, 244,  20,
    148,  37, 240,  57, 135, 108,  45,  83, 193,  49, 130, 248,  18,  91, 205, 174,
    232, 144, 128,  11, 109, 127,  31, 206, 230,  19,  44,  26,  84, 141, 165,  97,
      9, 219, 211,  55, 110,  38,  74,  28, 208,  33,  56, 150,  62, 122, 167,  42,
    215, 242, 137, 118,  92,  50, 202, 196, 183, 163, 169,  14, 188, 214, 192, 124,
    254, 250, 252,  52,  15, 132, 207,  63,  23, 173, 113, 195, 235, 247,   7, 241,
     58,  64,   4, 119, 162,   8, 154, 101,  89, 243,  27,  40,  46, 149,  71,  24,
    145, 143, 175,  60, 117,   3, 164,  32, 129, 182,   1, 203,  70, 170,  85, 120,
    220, 171,  53,  76, 209, 156,   5, 140,  43,  13, 151, 153,  29,  98, 226, 245,
    185, 121, 239,   2, 225, 102,  73, 201, 181, 212, 142,  86, 213, 238,  35,  47,
    107,  34, 158,  68,  25, 210,  12,  36, 227, 160, 138, 249, 228,  82, 222, 180,
}};

constexpr Octets kAes{{
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
}};

std::string format_decimal(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string cell_name(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

} // namespace

const RawTable& paper_final_sbox() {
    static const RawTable table(kPublishedTable);
    return table;
}

const RawTable& paper_initial_sbox() {
    static const RawTable table(kPublishedTable);
    return table;
}

const RawTable& aes_sbox() {
    static const RawTable table(kAes);
    return table;
}

const PublishedMetrics& published_final_metrics() {
    static const PublishedMetrics published{
        {106, 106, 106, 106, 106, 108, 106, 108},
        106,
        0.1406,
        10,
        0,
        Matrix8{{
        {{0.4375, 0.5156, 0.5313, 0.4531, 0.4531, 0.5313, 0.5313, 0.5000}},
        {{0.5156, 0.4219, 0.5000, 0.4688, 0.4688, 0.4844, 0.5156, 0.5313}},
        {{0.5469, 0.5469, 0.4688, 0.5313, 0.5469, 0.5469, 0.4531, 0.5313}},
        {{0.5156, 0.5313, 0.5938, 0.4844, 0.5313, 0.5156, 0.5313, 0.4531}},
        {{0.4531, 0.5469, 0.5000, 0.5000, 0.5000, 0.5469, 0.5469, 0.5156}},
        {{0.4531, 0.5156, 0.5156, 0.5000, 0.5156, 0.5000, 0.5781, 0.5469}},
        {{0.4688, 0.5625, 0.5469, 0.5000, 0.5625, 0.4531, 0.5156, 0.4375}},
        {{0.4844, 0.4375, 0.4531, 0.4531, 0.5313, 0.5938, 0.4531, 0.5469}},
        }},
        Matrix8{{
        {{0.0000, 0.5273, 0.5156, 0.4980, 0.5039, 0.5176, 0.5234, 0.5000}},
        {{0.5273, 0.0000, 0.5000, 0.5137, 0.4727, 0.4980, 0.5215, 0.5020}},
        {{0.5156, 0.5000, 0.0000, 0.4844, 0.5020, 0.4844, 0.5078, 0.4922}},
        {{0.4980, 0.5137, 0.4844, 0.0000, 0.5176, 0.5000, 0.5254, 0.4883}},
        {{0.5039, 0.4727, 0.5020, 0.5176, 0.0000, 0.5156, 0.5000, 0.5254}},
        {{0.5176, 0.4980, 0.4844, 0.5000, 0.5156, 0.0000, 0.5156, 0.5117}},
        {{0.5234, 0.5215, 0.5078, 0.5254, 0.5000, 0.5156, 0.0000, 0.5195}},
        {{0.5000, 0.5020, 0.4922, 0.4883, 0.5254, 0.5117, 0.5195, 0.0000}},
        }},
        0.5066,
    };
    return published;
}

std::vector<ReferenceFixture> fixtures() {
    return {
        {"final", paper_final_sbox(), published_final_metrics()},
        {"initial", paper_initial_sbox(), std::nullopt},
    };
}

const RawTable& fixture_table(std::string_view name) {
    if (name == "final") {
        return paper_final_sbox();
    }
    if (name == "initial") {
        return paper_initial_sbox();
    }
    if (name == "aes") {
        return aes_sbox();
    }
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "' (expected final, initial or aes)");
}

std::array<int, 16> row_sums(const RawTable& table) {
    std::array<int, 16> sums{};
    for (std::size_t i = 0; i < kTableSize; ++i) {
        sums[i / 16] += table[i];
    }
    return sums;
}

AuditResult audit(const PublishedMetrics& expected, const metrics::MetricsReport& report) {
    AuditResult result;
    auto check = [&](bool ok, std::string field, std::string cell, std::string want, std::string got) {
        ++result.checked;
        if (!ok) {
            result.mismatches.push_back({std::move(field), std::move(cell), std::move(want), std::move(got)});
        }
    };
    auto near = [](double computed, double printed, double tolerance) {
        // Printed values are rounded; allow the rounding plus float slack.
        return std::abs(computed - printed) <= tolerance + 1e-12;
    };

    for (std::size_t bit = 0; bit < 8; ++bit) {
        const int got = bit < report.nl_per_bit.size() ? report.nl_per_bit[bit] : -1;
        check(got == expected.nl_per_bit[bit], "nl_per_bit", "bit " + std::to_string(bit),
              std::to_string(expected.nl_per_bit[bit]), std::to_string(got));
    }
    check(report.nl_min == expected.nl_min, "nl_min", "", std::to_string(expected.nl_min),
          std::to_string(report.nl_min));
    check(near(report.lap.value(), expected.lap, kPrintedTolerance), "lap", "", format_decimal(expected.lap),
          report.lap.exact());
    check(report.differential_uniformity == expected.differential_uniformity, "differential_uniformity", "",
          std::to_string(expected.differential_uniformity), std::to_string(report.differential_uniformity));
    check(report.fixed_point_count() == expected.fixed_point_count, "fixed_point_count", "",
          std::to_string(expected.fixed_point_count), std::to_string(report.fixed_point_count()));

    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const auto sac = report.sac.entry(i, j);
            check(near(sac.value(), expected.sac[i][j], kPrintedTolerance), "sac", cell_name(i, j),
                  format_decimal(expected.sac[i][j]), sac.exact());
        }
    }
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const auto bic = report.bic_sac.entry(i, j);
            check(near(bic.value(), expected.bic_sac[i][j], kPrintedTolerance), "bic_sac", cell_name(i, j),
                  format_decimal(expected.bic_sac[i][j]), bic.exact());
        }
    }
    check(near(report.bic_sac_avg.value(), expected.bic_sac_avg, kBicSacAverageTolerance), "bic_sac_avg", "",
          format_decimal(expected.bic_sac_avg), report.bic_sac_avg.exact());
    return result;
}

AuditResult audit(const ReferenceFixture& fixture) {
    if (!fixture.expected) {
        return {};
    }
    return audit(*fixture.expected, metrics::full_report(fixture.table));
}

bool strict_check(const ReferenceFixture& fixture) {
    return audit(fixture).passed();
}

} // namespace sboxforge::reference

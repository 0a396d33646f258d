#include "sboxforge/metrics.hpp"

#include "sboxforge/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>

namespace sboxforge::metrics {

std::string Ratio::exact() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

int width_of_size(std::size_t size) {
    if (size < 2 || size > 256 || !std::has_single_bit(size)) {
        throw std::invalid_argument("table size must be a power of two between 2 and 256");
    }
    return std::countr_zero(size);
}

bool is_permutation_table(std::span<const std::uint8_t> table) {
    std::vector<bool> seen(table.size(), false);
    for (auto v : table) {
        if (seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

// Coordinate function of output bits in mask; also the BIC pair function
// when mask has two bits set.
BooleanFunction coordinate(std::span<const std::uint8_t> table, unsigned mask) {
    std::vector<std::uint8_t> bits(table.size());
    for (std::size_t x = 0; x < table.size(); ++x) {
        bits[x] = static_cast<std::uint8_t>(parity(mask & table[x]));
    }
    return BooleanFunction(std::move(bits));
}

// Number of x where f(x) != f(x ^ 2^k), summed over every input bit k.
int avalanche_flips(const BooleanFunction& f) {
    int flips = 0;
    for (int k = 0; k < f.width(); ++k) {
        const std::size_t e = std::size_t{1} << k;
        for (std::size_t x = 0; x < f.size(); ++x) {
            flips += f[x] ^ f[x ^ e];
        }
    }
    return flips;
}

} // namespace

BooleanFunction::BooleanFunction(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)), width_(width_of_size(bits_.size())) {
    if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b > 1; })) {
        throw std::invalid_argument("truth table entries must be 0 or 1");
    }
}

int table_width(std::span<const std::uint8_t> table) {
    const int width = width_of_size(table.size());
    const auto limit = table.size();
    if (std::any_of(table.begin(), table.end(), [limit](std::uint8_t v) { return v >= limit; })) {
        throw std::invalid_argument("table value exceeds the output width");
    }
    return width;
}

BooleanFunction component(std::span<const std::uint8_t> table, unsigned mask) {
    table_width(table);
    return coordinate(table, mask);
}

std::vector<int> walsh_spectrum(const BooleanFunction& f) {
    const std::size_t size = f.size();
    std::vector<int> w(size);
    for (std::size_t x = 0; x < size; ++x) {
        w[x] = f[x] ? -1 : 1;
    }
    for (std::size_t h = 1; h < size; h <<= 1) {
        for (std::size_t i = 0; i < size; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const int u = w[j];
                const int v = w[j + h];
                w[j] = u + v;
                w[j + h] = u - v;
            }
        }
    }
#ifndef NDEBUG
    long long energy = 0;
    for (int v : w) {
        energy += static_cast<long long>(v) * v;
    }
    assert(energy == static_cast<long long>(size) * static_cast<long long>(size));
#endif
    return w;
}

int nonlinearity(const BooleanFunction& f) {
    const auto w = walsh_spectrum(f);
    int peak = 0;
    for (int v : w) {
        peak = std::max(peak, std::abs(v));
    }
    return static_cast<int>(f.size() / 2) - peak / 2;
}

std::vector<std::uint8_t> anf(const BooleanFunction& f) {
    std::vector<std::uint8_t> c = f.bits();
    const std::size_t size = c.size();
    for (std::size_t h = 1; h < size; h <<= 1) {
        for (std::size_t x = 0; x < size; ++x) {
            if (x & h) {
                c[x] ^= c[x ^ h];
            }
        }
    }
    return c;
}

int algebraic_degree(const BooleanFunction& f) {
    const auto c = anf(f);
    int degree = 0;
    for (std::size_t u = 0; u < c.size(); ++u) {
        if (c[u]) {
            degree = std::max(degree, std::popcount(u));
        }
    }
    return degree;
}

std::vector<int> fixed_points(std::span<const std::uint8_t> table) {
    std::vector<int> out;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] == i) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

NonlinearityResult nonlinearity(std::span<const std::uint8_t> table) {
    const int n = table_width(table);
    NonlinearityResult out;
    out.per_bit.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.per_bit[static_cast<std::size_t>(i)] = nonlinearity(coordinate(table, 1u << i));
    }
    out.min = *std::min_element(out.per_bit.begin(), out.per_bit.end());
    return out;
}

Ratio SacResult::mean() const {
    const auto& c = counts.cells();
    const std::int64_t total = std::accumulate(c.begin(), c.end(), std::int64_t{0});
    return {total, denominator * static_cast<std::int64_t>(c.size())};
}

SacResult sac_matrix(std::span<const std::uint8_t> table) {
    const int n = table_width(table);
    SacResult out{SquareMatrix<int>(n), std::int64_t{1} << n};
    for (int i = 0; i < n; ++i) {
        const std::size_t e = std::size_t{1} << i;
        for (std::size_t x = 0; x < table.size(); ++x) {
            const unsigned diff = table[x] ^ table[x ^ e];
            for (int j = 0; j < n; ++j) {
                out.counts.at(i, j) += static_cast<int>((diff >> j) & 1u);
            }
        }
    }
    return out;
}

BicNlResult bic_nl(std::span<const std::uint8_t> table) {
    const int n = table_width(table);
    BicNlResult out{SquareMatrix<int>(n), 0};
    bool first = true;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int value = nonlinearity(coordinate(table, (1u << i) | (1u << j)));
            out.matrix.at(i, j) = value;
            out.matrix.at(j, i) = value;
            out.min = first ? value : std::min(out.min, value);
            first = false;
        }
    }
    return out;
}

Ratio BicSacResult::average() const {
    const int n = counts.order();
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) {
                total += counts.at(i, j);
            }
        }
    }
    const auto pairs = static_cast<std::int64_t>(n) * (n - 1);
    return {total, denominator * std::max<std::int64_t>(pairs, 1)};
}

BicSacResult bic_sac(std::span<const std::uint8_t> table) {
    const int n = table_width(table);
    BicSacResult out{SquareMatrix<int>(n), static_cast<std::int64_t>(n) << n};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const int flips = avalanche_flips(coordinate(table, (1u << i) | (1u << j)));
            out.counts.at(i, j) = flips;
            out.counts.at(j, i) = flips;
        }
    }
    return out;
}

LinearApproximationTable::LinearApproximationTable(std::span<const std::uint8_t> table)
    : width_(table_width(table)) {
    const std::size_t size = table.size();
    entries_.assign(size * size, 0);
    std::vector<std::vector<int>> columns(size);
    for (std::size_t b = 0; b < size; ++b) {
        columns[b] = walsh_spectrum(coordinate(table, static_cast<unsigned>(b)));
    }
    for (std::size_t b = 0; b < size; ++b) {
        for (std::size_t a = 0; a < size; ++a) {
            const int value = columns[b][a] / 2;
            entries_[a * size + b] = static_cast<std::int16_t>(value);
            if (a != 0 || b != 0) {
                max_abs_ = std::max(max_abs_, std::abs(value));
            }
        }
    }
}

int LinearApproximationTable::at(unsigned input_mask, unsigned output_mask) const {
    const std::size_t size = std::size_t{1} << width_;
    return entries_.at(static_cast<std::size_t>(input_mask) * size + output_mask);
}

DifferenceTable::DifferenceTable(std::span<const std::uint8_t> table) : width_(table_width(table)) {
    const std::size_t size = table.size();
    entries_.assign(size * size, 0);
    for (std::size_t din = 0; din < size; ++din) {
        auto* row = entries_.data() + din * size;
        for (std::size_t x = 0; x < size; ++x) {
            ++row[table[x ^ din] ^ table[x]];
        }
        if (din != 0) {
            uniformity_ = std::max<int>(uniformity_, *std::max_element(row, row + size));
        }
    }
}

int DifferenceTable::at(unsigned din, unsigned dout) const {
    const std::size_t size = std::size_t{1} << width_;
    return entries_.at(static_cast<std::size_t>(din) * size + dout);
}

Ratio lap(std::span<const std::uint8_t> table) { return LinearApproximationTable(table).lap(); }
Ratio dap(std::span<const std::uint8_t> table) { return DifferenceTable(table).dap(); }
int differential_uniformity(std::span<const std::uint8_t> table) { return DifferenceTable(table).uniformity(); }

DegreeResult algebraic_degree(std::span<const std::uint8_t> table) {
    const int n = table_width(table);
    DegreeResult out;
    out.per_bit.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out.per_bit[static_cast<std::size_t>(i)] = algebraic_degree(coordinate(table, 1u << i));
    }
    out.min = *std::min_element(out.per_bit.begin(), out.per_bit.end());
    return out;
}

MetricsReport full_report(std::span<const std::uint8_t> table) {
    MetricsReport r;
    r.width = table_width(table);
    r.bijective = is_permutation_table(table);
    r.fixed_points = fixed_points(table);

    // Each task writes only its own fields.
    NonlinearityResult nl;
    std::optional<LinearApproximationTable> lat;
    std::optional<DifferenceTable> ddt;
    DegreeResult degree;
    const std::function<void()> tasks[] = {
        [&] { nl = nonlinearity(table); },
        [&] { r.sac = sac_matrix(table); },
        [&] { r.bic_nl = bic_nl(table); },
        [&] { r.bic_sac = bic_sac(table); },
        [&] { lat.emplace(table); },
        [&] { ddt.emplace(table); },
        [&] { degree = algebraic_degree(table); },
    };
    parallel_for(std::size(tasks), [&](std::size_t k) { tasks[k](); });

    r.nl_per_bit = std::move(nl.per_bit);
    r.nl_min = nl.min;
    r.sac_mean = r.sac.mean();
    r.bic_sac_avg = r.bic_sac.average();
    r.lat_max_abs = lat->max_abs_bias();
    r.lap = lat->lap();
    r.differential_uniformity = ddt->uniformity();
    r.dap = ddt->dap();
    r.degree_per_bit = std::move(degree.per_bit);
    r.degree_min = degree.min;
    return r;
}

} // namespace sboxforge::metrics

#pragma once

#include "sboxforge/table.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

// Cryptanalytic metrics of vectorial Boolean functions.
//
// Every routine accepts a lookup table of 2^n entries with values below 2^n
// (n in 1..8), so the same code paths analyse 8-bit S-boxes and the small
// 4-bit tables used for exhaustive cross-checks. All counts are exact
// integers; probabilities are surfaced as Ratio with a fixed denominator.

namespace sboxforge::metrics {

/// Exact rational with a fixed (unreduced) denominator, e.g. 36/256.
struct Ratio {
    std::int64_t num = 0;
    std::int64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    /// "num/den" without reduction.
    std::string exact() const;

    friend bool operator==(const Ratio& l, const Ratio& r) noexcept { return l.num * r.den == r.num * l.den; }
    friend std::strong_ordering operator<=>(const Ratio& l, const Ratio& r) noexcept {
        return l.num * r.den <=> r.num * l.den;
    }
};

template <typename T>
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int order, T fill = T{})
        : order_(order), cells_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), fill) {}

    int order() const noexcept { return order_; }
    T& at(int row, int col) { return cells_.at(index(row, col)); }
    const T& at(int row, int col) const { return cells_.at(index(row, col)); }
    const std::vector<T>& cells() const noexcept { return cells_; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(col);
    }

    int order_ = 0;
    std::vector<T> cells_;
};

/// Truth table of a single-output Boolean function on n variables.
class BooleanFunction {
public:
    /// bits.size() must be 2^n with 1 <= n <= 8 and every entry 0 or 1.
    explicit BooleanFunction(std::vector<std::uint8_t> bits);

    int width() const noexcept { return width_; }
    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t x) const noexcept { return bits_[x]; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
    std::vector<std::uint8_t> bits_;
    int width_ = 0;
};

/// Number of input bits of a lookup table. Throws std::invalid_argument
/// unless the size is a power of two in [2, 256] and every value fits.
int table_width(std::span<const std::uint8_t> table);

inline int parity(unsigned v) noexcept { return __builtin_parity(v); }

/// x -> parity(mask & S[x]).
BooleanFunction component(std::span<const std::uint8_t> table, unsigned mask);

/// W(w) = sum_x (-1)^(f(x) ^ <w, x>), via the in-place butterfly.
std::vector<int> walsh_spectrum(const BooleanFunction& f);

/// 2^(n-1) - max_w |W(w)| / 2.
int nonlinearity(const BooleanFunction& f);

/// Algebraic normal form coefficients (binary Moebius transform).
std::vector<std::uint8_t> anf(const BooleanFunction& f);

/// Largest monomial weight in the ANF; 0 for constant functions.
int algebraic_degree(const BooleanFunction& f);

std::vector<int> fixed_points(std::span<const std::uint8_t> table);

struct NonlinearityResult {
    std::vector<int> per_bit;
    int min = 0;
};
NonlinearityResult nonlinearity(std::span<const std::uint8_t> table);

/// Strict avalanche matrix. counts.at(i, j) = #{x : bit j of S(x) ^ S(x ^ 2^i)}
/// (row = flipped input bit, column = observed output bit), out of 2^n.
struct SacResult {
    SquareMatrix<int> counts;
    std::int64_t denominator = 1;

    Ratio entry(int i, int j) const { return {counts.at(i, j), denominator}; }
    Ratio mean() const;
};
SacResult sac_matrix(std::span<const std::uint8_t> table);

/// Nonlinearity of bit_i(S) ^ bit_j(S) for i != j; diagonal left at 0.
struct BicNlResult {
    SquareMatrix<int> matrix;
    int min = 0;
};
BicNlResult bic_nl(std::span<const std::uint8_t> table);

/// Avalanche of the pair function bit_i(S) ^ bit_j(S), averaged over every
/// single-bit input flip: counts.at(i, j) flips out of n * 2^n. Diagonal 0.
struct BicSacResult {
    SquareMatrix<int> counts;
    std::int64_t denominator = 1;

    Ratio entry(int i, int j) const { return {counts.at(i, j), denominator}; }
    /// Mean over the n(n-1) off-diagonal entries.
    Ratio average() const;
};
BicSacResult bic_sac(std::span<const std::uint8_t> table);

/// LAT(a, b) = #{x : <a, x> = <b, S(x)>} - 2^(n-1).
class LinearApproximationTable {
public:
    explicit LinearApproximationTable(std::span<const std::uint8_t> table);

    int width() const noexcept { return width_; }
    int at(unsigned input_mask, unsigned output_mask) const;
    /// max |LAT(a, b)| over (a, b) != (0, 0).
    int max_abs_bias() const noexcept { return max_abs_; }
    /// max_abs_bias / 2^n.
    Ratio lap() const noexcept { return {max_abs_, std::int64_t{1} << width_}; }

private:
    int width_;
    std::vector<std::int16_t> entries_;
    int max_abs_ = 0;
};

/// DDT(din, dout) = #{x : S(x ^ din) ^ S(x) = dout}.
class DifferenceTable {
public:
    explicit DifferenceTable(std::span<const std::uint8_t> table);

    int width() const noexcept { return width_; }
    int at(unsigned din, unsigned dout) const;
    /// max DDT over din != 0.
    int uniformity() const noexcept { return uniformity_; }
    Ratio dap() const noexcept { return {uniformity_, std::int64_t{1} << width_}; }

private:
    int width_;
    std::vector<std::uint16_t> entries_;
    int uniformity_ = 0;
};

Ratio lap(std::span<const std::uint8_t> table);
Ratio dap(std::span<const std::uint8_t> table);
int differential_uniformity(std::span<const std::uint8_t> table);

struct DegreeResult {
    std::vector<int> per_bit;
    int min = 0;
};
DegreeResult algebraic_degree(std::span<const std::uint8_t> table);

struct MetricsReport {
    int width = 0;
    bool bijective = false;
    std::vector<int> fixed_points;
    std::vector<int> nl_per_bit;
    int nl_min = 0;
    SacResult sac;
    Ratio sac_mean;
    BicNlResult bic_nl;
    BicSacResult bic_sac;
    Ratio bic_sac_avg;
    int lat_max_abs = 0;
    Ratio lap;
    int differential_uniformity = 0;
    Ratio dap;
    std::vector<int> degree_per_bit;
    int degree_min = 0;

    std::size_t fixed_point_count() const noexcept { return fixed_points.size(); }
};

/// Every metric over any table (non-bijective tables are analysed, with
/// bijective = false). Independent parts run on worker threads.
MetricsReport full_report(std::span<const std::uint8_t> table);
inline MetricsReport full_report(const RawTable& table) { return full_report(table.span()); }

} // namespace sboxforge::metrics

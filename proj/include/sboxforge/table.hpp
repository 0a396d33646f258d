#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace sboxforge {

inline constexpr std::size_t kTableSize = 256;

using Octets = std::array<std::uint8_t, kTableSize>;

/// 256 octets with no bijectivity guarantee: ingested files, transcribed
/// tables, intermediate generator output.
class RawTable {
public:
    constexpr RawTable() noexcept : values_{} {}
    constexpr explicit RawTable(const Octets& values) noexcept : values_(values) {}

    constexpr std::uint8_t operator[](std::size_t i) const noexcept { return values_[i]; }
    constexpr const Octets& values() const noexcept { return values_; }
    std::span<const std::uint8_t> span() const noexcept { return values_; }

    static RawTable identity() noexcept;

    friend bool operator==(const RawTable&, const RawTable&) = default;

private:
    Octets values_;
};

bool is_bijective(std::span<const std::uint8_t> table) noexcept;
inline bool is_bijective(const RawTable& table) noexcept { return is_bijective(table.span()); }

/// A permutation of 0..255.
class SBox {
public:
    /// Throws std::invalid_argument when the table is not a permutation.
    explicit SBox(const RawTable& table);
    explicit SBox(const Octets& values) : SBox(RawTable(values)) {}

    std::uint8_t operator[](std::size_t i) const noexcept { return table_[i]; }
    const RawTable& table() const noexcept { return table_; }
    std::span<const std::uint8_t> span() const noexcept { return table_.span(); }

    SBox inverse() const;
    /// Returns a copy with entries i and j exchanged (stays a permutation).
    SBox transposed(std::size_t i, std::size_t j) const;

    friend bool operator==(const SBox&, const SBox&) = default;

private:
    RawTable table_;
};

} // namespace sboxforge

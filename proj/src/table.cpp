#include "sboxforge/table.hpp"

#include <bitset>
#include <stdexcept>
#include <utility>

namespace sboxforge {

RawTable RawTable::identity() noexcept {
    Octets values{};
    for (std::size_t i = 0; i < kTableSize; ++i) {
        values[i] = static_cast<std::uint8_t>(i);
    }
    return RawTable(values);
}

bool is_bijective(std::span<const std::uint8_t> table) noexcept {
    if (table.size() != kTableSize) {
        return false;
    }
    std::bitset<kTableSize> seen;
    for (auto v : table) {
        if (seen.test(v)) {
            return false;
        }
        seen.set(v);
    }
    return true;
}

SBox::SBox(const RawTable& table) : table_(table) {
    if (!is_bijective(table)) {
        throw std::invalid_argument("table is not a permutation of 0..255");
    }
}

SBox SBox::inverse() const {
    Octets inv{};
    for (std::size_t i = 0; i < kTableSize; ++i) {
        inv[table_[i]] = static_cast<std::uint8_t>(i);
    }
    return SBox(inv);
}

SBox SBox::transposed(std::size_t i, std::size_t j) const {
    Octets values = table_.values();
    std::swap(values.at(i), values.at(j));
    return SBox(values);
}

} // namespace sboxforge

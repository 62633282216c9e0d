#include "navforge/parity.hpp"

#include <bit>
#include <string>

#include "navforge/error.hpp"

namespace navforge {
namespace {

constexpr CheckMatrix kCheckMatrix = {{
    {1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0},
    {0, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1},
    {1, 0, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0},
    {0, 1, 0, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1, 0},
    {1, 0, 1, 0, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1},
    {0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 1},
}};

// Each row packed MSB-first so that parity bit r = popcount(row & data) mod 2.
constexpr std::array<std::uint32_t, kParityBits> row_masks(const CheckMatrix& h) {
  std::array<std::uint32_t, kParityBits> masks{};
  for (std::size_t r = 0; r < h.size(); ++r) {
    for (std::size_t c = 0; c < h[r].size(); ++c) {
      masks[r] = (masks[r] << 1) | h[r][c];
    }
  }
  return masks;
}

constexpr auto kRowMasks = row_masks(kCheckMatrix);

}  // namespace

DataWord24::DataWord24(std::uint32_t bits) : bits_(bits) {
  if (bits & ~kMask) {
    throw Error(Errc::InvalidArgument, "data word has bits above bit 24: " + std::to_string(bits));
  }
}

Word30 Word30::from_packed(std::uint32_t bits) {
  if (bits >> kWordBits) {
    throw Error(Errc::InvalidArgument, "word has bits above bit 30: " + std::to_string(bits));
  }
  return Word30{DataWord24(bits >> kParityBits),
                ParityVector{static_cast<std::uint8_t>(bits & ((1u << kParityBits) - 1))}};
}

Word30 Word30::flipped(int k) const {
  if (k < 1 || k > kWordBits) {
    throw Error(Errc::InvalidArgument, "bit index " + std::to_string(k) + " outside 1..30");
  }
  return from_packed(packed() ^ (1u << (kWordBits - k)));
}

const CheckMatrix& check_matrix() { return kCheckMatrix; }

bool columns_nonzero(const CheckMatrix& h) {
  for (std::size_t c = 0; c < kDataBits; ++c) {
    bool any = false;
    for (const auto& row : h) {
      any = any || row[c] != 0;
    }
    if (!any) {
      return false;
    }
  }
  return true;
}

ParityVector compute_parity(DataWord24 data) {
  std::uint8_t s = 0;
  for (const std::uint32_t mask : kRowMasks) {
    s = static_cast<std::uint8_t>((s << 1) | (std::popcount(mask & data.value()) & 1));
  }
  return ParityVector{s};
}

Word30 append_parity(DataWord24 data) { return Word30{data, compute_parity(data)}; }

bool verify_word(const Word30& word) { return compute_parity(word.data) == word.parity; }

}  // namespace navforge

#pragma once

#include <array>
#include <cstdint>

namespace navforge {

inline constexpr int kDataBits = 24;
inline constexpr int kParityBits = 6;
inline constexpr int kWordBits = kDataBits + kParityBits;

// Bit k (1-based) of a packed field is the k-th transmitted bit and sits at
// the most significant end: bit 1 of a 24-bit word is 1u << 23.

class DataWord24 {
 public:
  static constexpr std::uint32_t kMask = (1u << kDataBits) - 1;

  constexpr DataWord24() = default;
  /// Throws InvalidArgument when `bits` has anything above bit 24 set.
  explicit DataWord24(std::uint32_t bits);

  constexpr std::uint32_t value() const noexcept { return bits_; }
  constexpr bool bit(int k) const noexcept { return (bits_ >> (kDataBits - k)) & 1u; }
  DataWord24 flipped(int k) const { return DataWord24(bits_ ^ (1u << (kDataBits - k))); }

  friend constexpr DataWord24 operator^(DataWord24 a, DataWord24 b) noexcept {
    DataWord24 r;
    r.bits_ = a.bits_ ^ b.bits_;
    return r;
  }
  friend constexpr bool operator==(DataWord24, DataWord24) = default;

 private:
  std::uint32_t bits_ = 0;
};

struct ParityVector {
  std::uint8_t bits = 0;  // six bits, word bit 25 is the MSB

  constexpr bool bit(int k) const noexcept { return (bits >> (kParityBits - k)) & 1u; }
  friend constexpr ParityVector operator^(ParityVector a, ParityVector b) noexcept {
    return ParityVector{static_cast<std::uint8_t>(a.bits ^ b.bits)};
  }
  friend constexpr bool operator==(ParityVector, ParityVector) = default;
};

struct Word30 {
  DataWord24 data;
  ParityVector parity;

  constexpr std::uint32_t packed() const noexcept {
    return (data.value() << kParityBits) | parity.bits;
  }
  constexpr bool bit(int k) const noexcept { return (packed() >> (kWordBits - k)) & 1u; }

  static Word30 from_packed(std::uint32_t bits);
  /// Copy with transmitted bit k (1..30) inverted.
  Word30 flipped(int k) const;

  friend constexpr bool operator==(const Word30&, const Word30&) = default;
};

using CheckMatrix = std::array<std::array<std::uint8_t, kDataBits>, kParityBits>;

/// The fixed 6x24 check matrix of the shortened Hamming code.
const CheckMatrix& check_matrix();

bool columns_nonzero(const CheckMatrix& h);

ParityVector compute_parity(DataWord24 data);
Word30 append_parity(DataWord24 data);
bool verify_word(const Word30& word);

}  // namespace navforge

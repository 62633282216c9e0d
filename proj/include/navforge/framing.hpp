#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "navforge/gpstime.hpp"
#include "navforge/parity.hpp"

namespace navforge {

inline constexpr std::uint32_t kPreamble = 0b10001011;
inline constexpr int kWordsPerSubframe = 10;
inline constexpr int kSubframesPerFrame = 5;
inline constexpr int kFramesPerSuperframe = 25;
inline constexpr int kBitsPerSubframe = kWordsPerSubframe * kWordBits;
inline constexpr int kBitsPerFrame = kSubframesPerFrame * kBitsPerSubframe;
inline constexpr int kBitsPerSuperframe = kFramesPerSuperframe * kBitsPerFrame;
inline constexpr double kWordDuration = 0.6;

Word30 build_tlm(std::uint16_t reserved = 0);

/// HOW data bits: 1-17 Z-count, 18-19 flags (zero), 20-22 subframe id
/// coded 001..101, 23-24 zero.
Word30 build_how(ZCount z, int subframe_id);

/// A contiguous run of data bits within one word.
struct FieldSegment {
  int word = 3;       // 1..10
  int start_bit = 1;  // 1..24
  int width = 1;
};

/// Placement of one navigation parameter. A field may span several words;
/// its segments hold the stored integer MSB-first in order.
struct FieldLayout {
  std::string name;
  int subframe = 1;
  std::vector<FieldSegment> segments;
  double scale = 1.0;      // LSB value
  bool is_signed = false;  // two's complement
  bool modular = false;    // unsigned value reduced mod 2^width instead of overflowing

  int width() const;

  static FieldLayout single(std::string name, int subframe, int word, int start_bit, int width,
                            double scale, bool is_signed = false);
};

struct EncodedField {
  std::int64_t stored = 0;    // floor(value / scale), after any modular reduction
  std::uint64_t pattern = 0;  // `width` low bits as transmitted
};

/// Throws FieldOverflow naming the field when the scaled value does not fit.
EncodedField encode_field(double value, const FieldLayout& layout);

/// Per-subframe ordered set of field layouts with non-overlap checking.
class LayoutRegistry {
 public:
  /// Throws InvalidArgument on bad geometry or overlap with an existing entry.
  void add(FieldLayout layout);

  std::vector<const FieldLayout*> for_subframe(int id) const;
  const FieldLayout* find(std::string_view name, int subframe) const;
  const std::vector<FieldLayout>& fields() const noexcept { return fields_; }

 private:
  std::vector<FieldLayout> fields_;
};

/// Clock fields in subframe 1 (toc word 8
/// bits 9-24, a0 word 9 bits 1-8, a1 word 9 bits 9-24, a2 word 10 bits
/// 1-22) plus conventional placements for the ephemeris in subframes 2-3.
LayoutRegistry default_layout();

using FieldValues = std::map<std::string, double, std::less<>>;

/// Data bits of words 3..10 of an almanac-style subframe.
using PageData = std::array<std::uint32_t, kWordsPerSubframe - 2>;

struct PagePair {
  PageData subframe4{};
  PageData subframe5{};
};

struct Subframe {
  int id = 1;
  std::array<Word30, kWordsPerSubframe> words{};

  friend bool operator==(const Subframe&, const Subframe&) = default;
};

using Frame = std::array<Subframe, kSubframesPerFrame>;

struct Superframe {
  std::array<Frame, kFramesPerSuperframe> frames{};

  std::size_t bit_count() const noexcept { return kBitsPerSuperframe; }
};

std::uint64_t decode_field(const Subframe& subframe, const FieldLayout& layout);
/// Interprets the decoded pattern as two's complement when the field is signed.
std::int64_t decode_stored(const Subframe& subframe, const FieldLayout& layout);

/// Throws MissingField when a registry field for `id` has no value and
/// propagates FieldOverflow.
Subframe assemble_subframe(int id, ZCount z, const FieldValues& payload,
                           const LayoutRegistry& registry);

Subframe assemble_page_subframe(int id, ZCount z, const PageData& page);

/// `frame_count` consecutive frames starting at `start_z`; subframes 4 and 5
/// of frame i carry pages45[i mod 25].
std::vector<Frame> assemble_frames(ZCount start_z, const FieldValues& payload,
                                   std::span<const PagePair, kFramesPerSuperframe> pages45,
                                   std::size_t frame_count, const LayoutRegistry& registry);

Superframe assemble_superframe(ZCount start_z, const FieldValues& payload,
                               std::span<const PagePair, kFramesPerSuperframe> pages45,
                               const LayoutRegistry& registry);

/// Start of word n (1-based) of the subframe whose HOW carries z, in
/// seconds of week. Word 3 starts at z*6 - 4.8.
double word_start_time(ZCount z, int word);

std::vector<bool> to_bits(std::span<const Frame> frames);

/// '0'/'1' characters with a newline after every 300 bits.
std::string serialize_text(std::span<const Frame> frames);
/// MSB-first bytes, zero padded in the last byte.
std::vector<std::uint8_t> serialize_packed(std::span<const Frame> frames);

/// Reads text produced by serialize_text; whitespace is ignored.
std::vector<bool> parse_text(std::string_view text);
std::vector<bool> unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count);

}  // namespace navforge

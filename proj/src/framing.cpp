#include "navforge/framing.hpp"

#include <cmath>
#include <numbers>

#include "navforge/error.hpp"

namespace navforge {
namespace {

void check_subframe_id(int id) {
  if (id < 1 || id > kSubframesPerFrame) {
    throw Error(Errc::InvalidSubframeId, "subframe id " + std::to_string(id) + " outside 1..5");
  }
}

// Writes `width` low bits of `value` into data bits [start, start+width-1].
std::uint32_t place_bits(std::uint32_t data, int start, int width, std::uint64_t value) {
  const int shift = kDataBits - (start + width - 1);
  const std::uint32_t mask = ((width == 32 ? 0u : (1u << width)) - 1u) << shift;
  return (data & ~mask) | ((static_cast<std::uint32_t>(value) << shift) & mask);
}

std::uint32_t extract_bits(std::uint32_t data, int start, int width) {
  const int shift = kDataBits - (start + width - 1);
  return (data >> shift) & ((1u << width) - 1u);
}

}  // namespace

Word30 build_tlm(std::uint16_t reserved) {
  return append_parity(DataWord24((kPreamble << 16) | reserved));
}

Word30 build_how(ZCount z, int subframe_id) {
  check_subframe_id(subframe_id);
  if (z.value >= kZCountModulus) {
    throw Error(Errc::InvalidArgument, "Z-count " + std::to_string(z.value) + " above 100799");
  }
  std::uint32_t data = 0;
  data = place_bits(data, 1, 17, z.value);
  data = place_bits(data, 20, 3, static_cast<std::uint32_t>(subframe_id));
  return append_parity(DataWord24(data));
}

int FieldLayout::width() const {
  int w = 0;
  for (const auto& s : segments) {
    w += s.width;
  }
  return w;
}

FieldLayout FieldLayout::single(std::string name, int subframe, int word, int start_bit, int width,
                                double scale, bool is_signed) {
  FieldLayout f;
  f.name = std::move(name);
  f.subframe = subframe;
  f.segments = {FieldSegment{word, start_bit, width}};
  f.scale = scale;
  f.is_signed = is_signed;
  return f;
}

EncodedField encode_field(double value, const FieldLayout& layout) {
  const int width = layout.width();
  const auto overflow = [&] {
    return Error(Errc::FieldOverflow, "field '" + layout.name + "' value " + std::to_string(value) +
                                          " does not fit " + std::to_string(width) +
                                          " bits at scale " + std::to_string(layout.scale));
  };
  if (!std::isfinite(value)) {
    throw overflow();
  }
  const double q = std::floor(value / layout.scale);
  const double span = std::ldexp(1.0, width);
  EncodedField out;
  if (layout.modular && !layout.is_signed) {
    if (!(std::abs(q) < 9.0e15)) {
      throw overflow();
    }
    double r = std::fmod(q, span);
    if (r < 0) {
      r += span;
    }
    out.stored = static_cast<std::int64_t>(r);
  } else {
    const double lo = layout.is_signed ? -span / 2 : 0.0;
    const double hi = layout.is_signed ? span / 2 - 1 : span - 1;
    if (q < lo || q > hi) {
      throw overflow();
    }
    out.stored = static_cast<std::int64_t>(q);
  }
  const std::uint64_t mask = width >= 64 ? ~0ull : (1ull << width) - 1ull;
  out.pattern = static_cast<std::uint64_t>(out.stored) & mask;
  return out;
}

void LayoutRegistry::add(FieldLayout layout) {
  const auto bad = [&](const std::string& why) {
    return Error(Errc::InvalidArgument, "field '" + layout.name + "': " + why);
  };
  check_subframe_id(layout.subframe);
  if (layout.segments.empty() || layout.width() > 63 || !(layout.scale > 0.0)) {
    throw bad("needs 1..63 bits and a positive scale");
  }
  for (const auto& s : layout.segments) {
    if (s.word < 3 || s.word > kWordsPerSubframe || s.start_bit < 1 || s.width < 1 ||
        s.start_bit + s.width - 1 > kDataBits) {
      throw bad("segment outside the data bits of words 3..10");
    }
  }
  for (const auto& other : fields_) {
    if (other.subframe != layout.subframe) {
      continue;
    }
    if (other.name == layout.name) {
      throw bad("duplicate name in subframe " + std::to_string(layout.subframe));
    }
    for (const auto& a : other.segments) {
      for (const auto& b : layout.segments) {
        if (a.word == b.word && a.start_bit <= b.start_bit + b.width - 1 &&
            b.start_bit <= a.start_bit + a.width - 1) {
          throw bad("overlaps '" + other.name + "'");
        }
      }
    }
  }
  fields_.push_back(std::move(layout));
}

std::vector<const FieldLayout*> LayoutRegistry::for_subframe(int id) const {
  std::vector<const FieldLayout*> out;
  for (const auto& f : fields_) {
    if (f.subframe == id) {
      out.push_back(&f);
    }
  }
  return out;
}

const FieldLayout* LayoutRegistry::find(std::string_view name, int subframe) const {
  for (const auto& f : fields_) {
    if (f.subframe == subframe && f.name == name) {
      return &f;
    }
  }
  return nullptr;
}

LayoutRegistry default_layout() {
  constexpr double pi = std::numbers::pi;
  const auto p2 = [](int e) { return std::ldexp(1.0, e); };
  const auto split = [](std::string name, int subframe, int word, int start, int w1, double scale,
                        bool is_signed) {
    // w1 bits at the end of `word`, remaining bits fill the whole next word.
    FieldLayout f;
    f.name = std::move(name);
    f.subframe = subframe;
    f.segments = {FieldSegment{word, start, w1}, FieldSegment{word + 1, 1, kDataBits}};
    f.scale = scale;
    f.is_signed = is_signed;
    return f;
  };
  const auto age = [](int subframe, int word, int start, int width) {
    FieldLayout f = FieldLayout::single(subframe == 1 ? "iodc" : "iode", subframe, word, start,
                                        width, 1.0);
    f.modular = true;
    return f;
  };

  LayoutRegistry r;
  // Subframe 1: clock.
  r.add(age(1, 7, 1, 24));
  r.add(FieldLayout::single("toc", 1, 8, 9, 16, 16.0));
  r.add(FieldLayout::single("a0", 1, 9, 1, 8, p2(-31), true));
  r.add(FieldLayout::single("a1", 1, 9, 9, 16, p2(-43), true));
  r.add(FieldLayout::single("a2", 1, 10, 1, 22, p2(-55), true));

  // Subframe 2: ephemeris part one. Angles are radians.
  r.add(age(2, 3, 1, 8));
  r.add(FieldLayout::single("crs", 2, 3, 9, 16, p2(-5), true));
  r.add(FieldLayout::single("deltan", 2, 4, 1, 16, p2(-43) * pi, true));
  r.add(split("m0", 2, 4, 17, 8, p2(-31) * pi, true));
  r.add(FieldLayout::single("cuc", 2, 6, 1, 16, p2(-29), true));
  r.add(split("e", 2, 6, 17, 8, p2(-33), false));
  r.add(FieldLayout::single("cus", 2, 8, 1, 16, p2(-29), true));
  r.add(split("sqrta", 2, 8, 17, 8, p2(-19), false));
  r.add(FieldLayout::single("toe", 2, 10, 1, 16, 16.0));

  // Subframe 3: ephemeris part two.
  r.add(FieldLayout::single("cic", 3, 3, 1, 16, p2(-29), true));
  r.add(split("omega0", 3, 3, 17, 8, p2(-31) * pi, true));
  r.add(FieldLayout::single("cis", 3, 5, 1, 16, p2(-29), true));
  r.add(split("i0", 3, 5, 17, 8, p2(-31) * pi, true));
  r.add(FieldLayout::single("crc", 3, 7, 1, 16, p2(-5), true));
  r.add(split("omega", 3, 7, 17, 8, p2(-31) * pi, true));
  r.add(FieldLayout::single("omegadot", 3, 9, 1, 24, p2(-43) * pi, true));
  r.add(age(3, 10, 1, 8));
  r.add(FieldLayout::single("idot", 3, 10, 9, 14, p2(-43) * pi, true));
  return r;
}

std::uint64_t decode_field(const Subframe& subframe, const FieldLayout& layout) {
  std::uint64_t v = 0;
  for (const auto& s : layout.segments) {
    const auto data = subframe.words[static_cast<std::size_t>(s.word - 1)].data.value();
    v = (v << s.width) | extract_bits(data, s.start_bit, s.width);
  }
  return v;
}

std::int64_t decode_stored(const Subframe& subframe, const FieldLayout& layout) {
  const std::uint64_t v = decode_field(subframe, layout);
  const int width = layout.width();
  if (layout.is_signed && ((v >> (width - 1)) & 1u)) {
    return static_cast<std::int64_t>(v) - (std::int64_t{1} << width);
  }
  return static_cast<std::int64_t>(v);
}

Subframe assemble_subframe(int id, ZCount z, const FieldValues& payload,
                           const LayoutRegistry& registry) {
  check_subframe_id(id);
  std::array<std::uint32_t, kWordsPerSubframe> data{};
  for (const FieldLayout* f : registry.for_subframe(id)) {
    const auto it = payload.find(f->name);
    if (it == payload.end()) {
      throw Error(Errc::MissingField,
                  "no value for field '" + f->name + "' of subframe " + std::to_string(id));
    }
    const EncodedField enc = encode_field(it->second, *f);
    int remaining = f->width();
    for (const auto& s : f->segments) {
      remaining -= s.width;
      const std::uint64_t part = (enc.pattern >> remaining) & ((1ull << s.width) - 1ull);
      auto& w = data[static_cast<std::size_t>(s.word - 1)];
      w = place_bits(w, s.start_bit, s.width, part);
    }
  }
  Subframe sf;
  sf.id = id;
  sf.words[0] = build_tlm();
  sf.words[1] = build_how(z, id);
  for (std::size_t w = 2; w < data.size(); ++w) {
    sf.words[w] = append_parity(DataWord24(data[w]));
  }
  return sf;
}

Subframe assemble_page_subframe(int id, ZCount z, const PageData& page) {
  Subframe sf;
  sf.id = id;
  sf.words[0] = build_tlm();
  sf.words[1] = build_how(z, id);
  for (std::size_t w = 0; w < page.size(); ++w) {
    sf.words[w + 2] = append_parity(DataWord24(page[w]));
  }
  return sf;
}

std::vector<Frame> assemble_frames(ZCount start_z, const FieldValues& payload,
                                   std::span<const PagePair, kFramesPerSuperframe> pages45,
                                   std::size_t frame_count, const LayoutRegistry& registry) {
  if (start_z.value >= kZCountModulus) {
    throw Error(Errc::InvalidArgument, "start Z-count above 100799");
  }
  std::vector<Frame> frames(frame_count);
  std::uint32_t z = start_z.value;
  const auto next_z = [&] {
    const ZCount out{z};
    z = (z + 1) % kZCountModulus;
    return out;
  };
  for (std::size_t i = 0; i < frame_count; ++i) {
    Frame& f = frames[i];
    for (int id = 1; id <= 3; ++id) {
      f[static_cast<std::size_t>(id - 1)] = assemble_subframe(id, next_z(), payload, registry);
    }
    const PagePair& page = pages45[i % kFramesPerSuperframe];
    f[3] = assemble_page_subframe(4, next_z(), page.subframe4);
    f[4] = assemble_page_subframe(5, next_z(), page.subframe5);
  }
  return frames;
}

Superframe assemble_superframe(ZCount start_z, const FieldValues& payload,
                               std::span<const PagePair, kFramesPerSuperframe> pages45,
                               const LayoutRegistry& registry) {
  auto frames = assemble_frames(start_z, payload, pages45, kFramesPerSuperframe, registry);
  Superframe sf;
  std::copy(frames.begin(), frames.end(), sf.frames.begin());
  return sf;
}

double word_start_time(ZCount z, int word) {
  return kZCountPeriod * (static_cast<double>(z.value) - 1.0) + kWordDuration * (word - 1);
}

std::vector<bool> to_bits(std::span<const Frame> frames) {
  std::vector<bool> bits;
  bits.reserve(frames.size() * kBitsPerFrame);
  for (const Frame& f : frames) {
    for (const Subframe& sf : f) {
      for (const Word30& w : sf.words) {
        for (int k = 1; k <= kWordBits; ++k) {
          bits.push_back(w.bit(k));
        }
      }
    }
  }
  return bits;
}

std::string serialize_text(std::span<const Frame> frames) {
  const auto bits = to_bits(frames);
  std::string out;
  out.reserve(bits.size() + bits.size() / kBitsPerSubframe + 1);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out.push_back(bits[i] ? '1' : '0');
    if ((i + 1) % kBitsPerSubframe == 0) {
      out.push_back('\n');
    }
  }
  return out;
}

std::vector<std::uint8_t> serialize_packed(std::span<const Frame> frames) {
  const auto bits = to_bits(frames);
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
  }
  return out;
}

std::vector<bool> parse_text(std::string_view text) {
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (const char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(c == '1');
    } else if (c != '\n' && c != '\r' && c != ' ' && c != '\t') {
      throw Error(Errc::InvalidArgument, std::string("unexpected character '") + c +
                                             "' in bit text");
    }
  }
  return bits;
}

std::vector<bool> unpack_bits(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    throw Error(Errc::InvalidArgument, "bit count exceeds packed length");
  }
  std::vector<bool> bits(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  }
  return bits;
}

}  // namespace navforge

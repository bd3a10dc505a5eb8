#include "wearcomm/codec.hpp"

#include <string>

namespace wearcomm::codec {
namespace {

void put_bits(BitSeq& out, std::uint32_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) out.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
}

std::uint32_t get_bits(std::span<const std::uint8_t> bits, std::size_t offset, std::size_t width) {
  std::uint32_t value = 0;
  for (std::size_t i = 0; i < width; ++i) value = (value << 1) | (bits[offset + i] & 1u);
  return value;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Idle: return "IDLE";
    case Mode::Acc: return "ACC";
    case Mode::Ppt: return "PPT";
    case Mode::Sync: return "SYNC";
  }
  return "?";
}

CodecFrame::CodecFrame(Mode mode, std::uint16_t x, std::uint16_t y, std::uint16_t z)
    : mode_(mode), x_(x), y_(y), z_(z) {
  if (x > kAxisMax || y > kAxisMax || z > kAxisMax) {
    throw ConfigError("axis value exceeds " + std::to_string(kAxisMax));
  }
}

std::uint8_t CodecFrame::crc() const {
  BitSeq protected_bits;
  protected_bits.reserve(kCrcOffset - kModeOffset);
  put_bits(protected_bits, static_cast<std::uint32_t>(mode_), 2);
  put_bits(protected_bits, x_, kAxisBits);
  put_bits(protected_bits, y_, kAxisBits);
  put_bits(protected_bits, z_, kAxisBits);
  return crc8_bits(protected_bits);
}

std::uint8_t crc8_bits(std::span<const std::uint8_t> bits) {
  std::uint8_t crc = 0;
  for (auto bit : bits) {
    const bool feedback = ((crc >> 7) & 1u) != (bit & 1u);
    crc = static_cast<std::uint8_t>(crc << 1);
    if (feedback) crc ^= kCrcPoly;
  }
  return crc;
}

BitSeq serialize(const CodecFrame& frame) {
  BitSeq bits;
  bits.reserve(kFrameBits);
  put_bits(bits, kSyncPattern, 8);
  put_bits(bits, static_cast<std::uint32_t>(frame.mode()), 2);
  put_bits(bits, frame.x(), kAxisBits);
  put_bits(bits, frame.y(), kAxisBits);
  put_bits(bits, frame.z(), kAxisBits);
  put_bits(bits, frame.crc(), 8);
  return bits;
}

CodecFrame deserialize(std::span<const std::uint8_t> bits) {
  if (bits.size() != kFrameBits) {
    throw CodecError(CodecErrorKind::WrongLength,
                     "frame length " + std::to_string(bits.size()) + ", expected 48");
  }
  if (get_bits(bits, 0, 8) != kSyncPattern) {
    throw CodecError(CodecErrorKind::SyncMismatch, "sync pattern mismatch");
  }
  const auto received_crc = get_bits(bits, kCrcOffset, 8);
  if (crc8_bits(bits.subspan(kModeOffset, kCrcOffset - kModeOffset)) != received_crc) {
    throw CodecError(CodecErrorKind::CrcMismatch, "crc mismatch");
  }
  return CodecFrame(static_cast<Mode>(get_bits(bits, kModeOffset, 2)),
                    static_cast<std::uint16_t>(get_bits(bits, kXOffset, kAxisBits)),
                    static_cast<std::uint16_t>(get_bits(bits, kYOffset, kAxisBits)),
                    static_cast<std::uint16_t>(get_bits(bits, kZOffset, kAxisBits)));
}

Fifo::Fifo(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("fifo capacity must be positive");
}

bool Fifo::push(const CodecFrame& frame) {
  if (frames_.size() == capacity_) {
    ++dropped_;
    return false;
  }
  frames_.push_back(frame);
  return true;
}

std::optional<CodecFrame> Fifo::pop() {
  if (frames_.empty()) return std::nullopt;
  auto front = frames_.front();
  frames_.pop_front();
  return front;
}

}  // namespace wearcomm::codec

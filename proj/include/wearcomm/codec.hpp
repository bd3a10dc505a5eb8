#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wearcomm/error.hpp"

namespace wearcomm::codec {

// One bit per element, value 0 or 1, most significant bit first.
using BitSeq = std::vector<std::uint8_t>;

enum class Mode : std::uint8_t { Idle = 0b00, Acc = 0b01, Ppt = 0b10, Sync = 0b11 };

std::string_view to_string(Mode mode);

inline constexpr std::uint8_t kSyncPattern = 0xA5;
inline constexpr std::uint8_t kCrcPoly = 0x07;
inline constexpr std::size_t kFrameBits = 48;
inline constexpr std::size_t kAxisBits = 10;
inline constexpr std::uint16_t kAxisMax = (1u << kAxisBits) - 1;

// Bit offsets inside a serialized frame.
inline constexpr std::size_t kModeOffset = 8;
inline constexpr std::size_t kXOffset = 10;
inline constexpr std::size_t kYOffset = 20;
inline constexpr std::size_t kZOffset = 30;
inline constexpr std::size_t kCrcOffset = 40;

// Mode tag plus three 10-bit axis counts. The sync preamble and CRC are
// derived on serialization, so a constructed frame is always valid.
class CodecFrame {
 public:
  CodecFrame() = default;
  // Throws ConfigError if any axis exceeds kAxisMax.
  CodecFrame(Mode mode, std::uint16_t x, std::uint16_t y, std::uint16_t z);

  Mode mode() const { return mode_; }
  std::uint16_t x() const { return x_; }
  std::uint16_t y() const { return y_; }
  std::uint16_t z() const { return z_; }

  // CRC-8 over the 32 protected bits (mode + payload).
  std::uint8_t crc() const;

  friend bool operator==(const CodecFrame&, const CodecFrame&) = default;

 private:
  Mode mode_ = Mode::Idle;
  std::uint16_t x_ = 0;
  std::uint16_t y_ = 0;
  std::uint16_t z_ = 0;
};

// CRC-8, polynomial 0x07, init 0x00, no reflection, fed MSB-first bit by bit.
std::uint8_t crc8_bits(std::span<const std::uint8_t> bits);

BitSeq serialize(const CodecFrame& frame);

enum class CodecErrorKind { WrongLength, SyncMismatch, CrcMismatch };

class CodecError : public Error {
 public:
  CodecError(CodecErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}
  CodecErrorKind kind() const { return kind_; }

 private:
  CodecErrorKind kind_;
};

CodecFrame deserialize(std::span<const std::uint8_t> bits);

// Bounded first-in-first-out frame buffer. A push onto a full buffer drops
// the frame and counts it.
class Fifo {
 public:
  // Throws ConfigError when capacity is zero.
  explicit Fifo(std::size_t capacity);

  // False on overflow; contents are then unchanged.
  bool push(const CodecFrame& frame);
  std::optional<CodecFrame> pop();

  std::size_t size() const { return frames_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return frames_.empty(); }
  std::uint64_t dropped() const { return dropped_; }

 private:
  std::size_t capacity_;
  std::deque<CodecFrame> frames_;
  std::uint64_t dropped_ = 0;
};

}  // namespace wearcomm::codec

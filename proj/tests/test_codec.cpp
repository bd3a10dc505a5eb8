#include <deque>
#include <random>
#include <string>

#include "doctest.h"
#include "wearcomm/codec.hpp"

using namespace wearcomm::codec;

namespace {

// Byte-wise CRC-8 (poly 0x07, init 0), written independently of crc8_bits.
std::uint8_t crc8_bytes(const std::uint8_t* data, std::size_t n) {
  std::uint8_t crc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    crc ^= data[i];
    for (int b = 0; b < 8; ++b) crc = (crc & 0x80) ? static_cast<std::uint8_t>((crc << 1) ^ 0x07)
                                                   : static_cast<std::uint8_t>(crc << 1);
  }
  return crc;
}

std::string to_text(const BitSeq& bits) {
  std::string s;
  for (auto b : bits) s += b ? '1' : '0';
  return s;
}

CodecFrame random_frame(std::mt19937& gen) {
  std::uniform_int_distribution<int> axis(0, 1023), mode(0, 3);
  return CodecFrame(static_cast<Mode>(mode(gen)), axis(gen), axis(gen), axis(gen));
}

}  // namespace

TEST_CASE("byte-wise CRC oracle matches the published check value") {
  const std::string check = "123456789";
  CHECK(crc8_bytes(reinterpret_cast<const std::uint8_t*>(check.data()), check.size()) == 0xF4);
}

TEST_CASE("crc8_bits agrees with the byte-wise oracle on the protected word") {
  std::mt19937 gen(11);
  for (int i = 0; i < 2000; ++i) {
    const auto f = random_frame(gen);
    const std::uint32_t word = (static_cast<std::uint32_t>(f.mode()) << 30) |
                               (static_cast<std::uint32_t>(f.x()) << 20) |
                               (static_cast<std::uint32_t>(f.y()) << 10) | f.z();
    const std::uint8_t bytes[4] = {static_cast<std::uint8_t>(word >> 24),
                                   static_cast<std::uint8_t>(word >> 16),
                                   static_cast<std::uint8_t>(word >> 8),
                                   static_cast<std::uint8_t>(word)};
    REQUIRE(f.crc() == crc8_bytes(bytes, 4));
  }
}

TEST_CASE("serialize lays out fields MSB first") {
  SUBCASE("zero payload") {
    const auto bits = serialize(CodecFrame(Mode::Acc, 0, 0, 0));
    REQUIRE(bits.size() == 48);
    const auto text = to_text(bits);
    CHECK(text.substr(0, 8) == "10100101");
    CHECK(text.substr(8, 2) == "01");
    CHECK(text.substr(10, 30) == std::string(30, '0'));
    // CRC-8 of 0x40000000 is 0x9B
    CHECK(text.substr(40, 8) == "10011011");
  }
  SUBCASE("hand-computed frame (ACC, 100, 360, 277)") {
    // sync | mode | x=100 | y=360 | z=277 | crc=0xCF (tests/oracles/frame_oracle.py)
    const std::string expected = std::string("10100101") + "01" + "0001100100" + "0101101000" +
                                 "0100010101" + "11001111";
    CHECK(to_text(serialize(CodecFrame(Mode::Acc, 100, 360, 277))) == expected);
  }
}

TEST_CASE("CodecFrame rejects values wider than 10 bits") {
  CHECK_THROWS_AS(CodecFrame(Mode::Acc, 1024, 0, 0), wearcomm::ConfigError);
  CHECK_NOTHROW(CodecFrame(Mode::Acc, 1023, 1023, 1023));
}

TEST_CASE("deserialize inverts serialize") {
  for (int m = 0; m < 4; ++m) {
    for (int x : {0, 1, 511, 512, 1022, 1023}) {
      for (int y : {0, 1, 512, 1023}) {
        for (int z : {0, 277, 1023}) {
          const CodecFrame f(static_cast<Mode>(m), x, y, z);
          REQUIRE(deserialize(serialize(f)) == f);
        }
      }
    }
  }
  std::mt19937 gen(3);
  for (int i = 0; i < 10000; ++i) {
    const auto f = random_frame(gen);
    REQUIRE(deserialize(serialize(f)) == f);
  }
}

TEST_CASE("deserialize detects every single-bit corruption") {
  const CodecFrame f(Mode::Acc, 100, 360, 277);
  const auto clean = serialize(f);
  for (std::size_t i = 0; i < kFrameBits; ++i) {
    auto bits = clean;
    bits[i] ^= 1;
    try {
      deserialize(bits);
      FAIL("bit " << i << " flip not detected");
    } catch (const CodecError& e) {
      CHECK(e.kind() == (i < 8 ? CodecErrorKind::SyncMismatch : CodecErrorKind::CrcMismatch));
    }
  }
}

TEST_CASE("deserialize rejects wrong lengths") {
  auto bits = serialize(CodecFrame(Mode::Acc, 1, 2, 3));
  bits.pop_back();
  try {
    deserialize(bits);
    FAIL("expected length error");
  } catch (const CodecError& e) {
    CHECK(e.kind() == CodecErrorKind::WrongLength);
  }
  CHECK_THROWS_AS(deserialize(BitSeq(49, 0)), CodecError);
  CHECK_THROWS_AS(deserialize(BitSeq{}), CodecError);
}

TEST_CASE("Fifo keeps order and bounds") {
  const CodecFrame a(Mode::Acc, 1, 1, 1), b(Mode::Acc, 2, 2, 2);
  Fifo fifo(4);
  CHECK(fifo.push(a));
  CHECK(fifo.size() == 1);
  CHECK(fifo.push(b));
  CHECK(fifo.pop() == a);
  CHECK(fifo.pop() == b);
  CHECK_FALSE(fifo.pop().has_value());

  for (int i = 0; i < 4; ++i) REQUIRE(fifo.push(CodecFrame(Mode::Acc, i, 0, 0)));
  CHECK_FALSE(fifo.push(a));
  CHECK(fifo.size() == 4);
  CHECK(fifo.dropped() == 1);
  for (int i = 0; i < 4; ++i) CHECK(fifo.pop()->x() == i);

  CHECK_THROWS_AS(Fifo(0), wearcomm::ConfigError);
}

TEST_CASE("Fifo property: random push/pop never reorders or overfills") {
  std::mt19937 gen(17);
  Fifo fifo(5);
  std::deque<int> model;
  std::uint64_t drops = 0;
  int next = 0;
  for (int step = 0; step < 5000; ++step) {
    if (gen() % 2) {
      const int v = next++ % 1024;
      if (fifo.push(CodecFrame(Mode::Acc, v, 0, 0))) {
        model.push_back(v);
      } else {
        ++drops;
        REQUIRE(model.size() == 5);
      }
    } else {
      const auto got = fifo.pop();
      if (model.empty()) {
        REQUIRE_FALSE(got.has_value());
      } else {
        REQUIRE(got->x() == model.front());
        model.pop_front();
      }
    }
    REQUIRE(fifo.size() <= fifo.capacity());
  }
  CHECK(fifo.dropped() == drops);
}

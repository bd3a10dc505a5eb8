#!/usr/bin/env python3
"""Hand layout of one frame and a byte-wise CRC-8 (poly 0x07, init 0)."""


def crc8(data: bytes) -> int:
    crc = 0
    for byte in data:
        crc ^= byte
        for _ in range(8):
            crc = ((crc << 1) ^ 0x07) & 0xFF if crc & 0x80 else (crc << 1) & 0xFF
    return crc


assert crc8(b"123456789") == 0xF4  # published check value for CRC-8/SMBUS

mode, x, y, z = 0b01, 100, 360, 277
word = (mode << 30) | (x << 20) | (y << 10) | z
crc = crc8(word.to_bytes(4, "big"))
bits = f"{0xA5:08b}{mode:02b}{x:010b}{y:010b}{z:010b}{crc:08b}"
print(f"protected word = 0x{word:08X}, crc = 0x{crc:02X}")
print("bits =", bits, len(bits))

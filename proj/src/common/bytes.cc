#include "teeboost/common/bytes.h"

#include <bit>
#include <cstring>

#include "teeboost/common/errors.h"

namespace teeboost {

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint32_t ByteReader::u32() {
  auto b = raw(4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::uint64_t ByteReader::u64() {
  auto b = raw(8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

ByteView ByteReader::raw(std::size_t n) {
  if (n > remaining()) {
    throw ProtocolError("truncated message: wanted " + std::to_string(n) + " bytes, " +
                        std::to_string(remaining()) + " left");
  }
  ByteView out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

void ByteReader::expect_done() const {
  if (!done()) {
    throw ProtocolError("trailing bytes in message: " + std::to_string(remaining()));
  }
}

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

}  // namespace teeboost

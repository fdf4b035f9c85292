#ifndef TEEBOOST_COMMON_BYTES_H_
#define TEEBOOST_COMMON_BYTES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace teeboost {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Appends little-endian integers and raw byte runs to a buffer.
class ByteWriter {
 public:
  ByteWriter() = default;
  explicit ByteWriter(std::size_t reserve) { buf_.reserve(reserve); }

  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void raw(ByteView bytes) { buf_.insert(buf_.end(), bytes.begin(), bytes.end()); }

  std::size_t size() const { return buf_.size(); }
  Bytes take() { return std::move(buf_); }

 private:
  Bytes buf_;
};

// Reads what ByteWriter wrote. Truncated input raises ProtocolError.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  ByteView raw(std::size_t n);

  std::size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  // Throws unless every byte has been consumed.
  void expect_done() const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

std::string to_hex(ByteView bytes);

}  // namespace teeboost

#endif  // TEEBOOST_COMMON_BYTES_H_

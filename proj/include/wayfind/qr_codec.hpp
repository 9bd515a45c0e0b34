#pragma once

// Text payload printed into each floor QR strip:
//
//   BNAV1|<map_id>|<node_id>|<crc32 as 8 lowercase hex digits>
//
// The checksum is CRC-32 (IEEE 802.3, reflected, init/xorout 0xFFFFFFFF) over
// the ASCII bytes of "BNAV1|<map_id>|<node_id>".

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wayfind::qr {

inline constexpr std::string_view kPrefix = "BNAV1";

enum class DecodeErrorKind { wrong_prefix, wrong_field_count, checksum_mismatch, invalid_field };

std::string_view to_string(DecodeErrorKind kind) noexcept;

class EncodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(DecodeErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  DecodeErrorKind kind() const noexcept { return kind_; }

 private:
  DecodeErrorKind kind_;
};

struct Location {
  std::string map_id;
  std::string node_id;
  friend bool operator==(const Location&, const Location&) = default;
};

std::uint32_t crc32(std::span<const unsigned char> bytes) noexcept;
std::uint32_t crc32(std::string_view text) noexcept;

/// Throws EncodeError when a field is empty or contains '|'.
std::string encode(std::string_view map_id, std::string_view node_id);

/// Total over strings; throws DecodeError. Does not check the node against any map.
Location decode(std::string_view payload);

}  // namespace wayfind::qr

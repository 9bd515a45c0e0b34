#include "wayfind/qr_codec.hpp"

#include <array>
#include <cstdio>
#include <vector>

namespace wayfind::qr {

namespace {

constexpr std::uint32_t kPolynomial = 0xEDB88320u;

constexpr std::array<std::uint32_t, 256> make_table() {
  std::array<std::uint32_t, 256> table{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) {
      c = (c & 1u) ? (kPolynomial ^ (c >> 1)) : (c >> 1);
    }
    table[i] = c;
  }
  return table;
}

constexpr auto kTable = make_table();

std::string hex8(std::uint32_t value) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", value);
  return std::string(buf, 8);
}

bool is_hex8(std::string_view s) {
  if (s.size() != 8) {
    return false;
  }
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(DecodeErrorKind kind) noexcept {
  switch (kind) {
    case DecodeErrorKind::wrong_prefix:
      return "wrong_prefix";
    case DecodeErrorKind::wrong_field_count:
      return "wrong_field_count";
    case DecodeErrorKind::checksum_mismatch:
      return "checksum_mismatch";
    case DecodeErrorKind::invalid_field:
      return "invalid_field";
  }
  return "unknown";
}

std::uint32_t crc32(std::span<const unsigned char> bytes) noexcept {
  std::uint32_t c = 0xFFFFFFFFu;
  for (unsigned char b : bytes) {
    c = kTable[(c ^ b) & 0xFFu] ^ (c >> 8);
  }
  return c ^ 0xFFFFFFFFu;
}

std::uint32_t crc32(std::string_view text) noexcept {
  return crc32(std::span(reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

std::string encode(std::string_view map_id, std::string_view node_id) {
  for (std::string_view field : {map_id, node_id}) {
    if (field.empty()) {
      throw EncodeError("payload field must not be empty");
    }
    if (field.find('|') != std::string_view::npos) {
      throw EncodeError("payload field must not contain '|': " + std::string(field));
    }
  }
  std::string body;
  body.reserve(kPrefix.size() + map_id.size() + node_id.size() + 2);
  body.append(kPrefix).append("|").append(map_id).append("|").append(node_id);
  const std::uint32_t sum = crc32(body);
  return body + "|" + hex8(sum);
}

Location decode(std::string_view payload) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = payload.find('|', start);
    if (bar == std::string_view::npos) {
      fields.push_back(payload.substr(start));
      break;
    }
    fields.push_back(payload.substr(start, bar - start));
    start = bar + 1;
  }

  if (fields.front() != kPrefix) {
    throw DecodeError(DecodeErrorKind::wrong_prefix, "payload does not start with BNAV1");
  }
  if (fields.size() != 4) {
    throw DecodeError(DecodeErrorKind::wrong_field_count,
                      "payload has " + std::to_string(fields.size()) + " fields, expected 4");
  }
  if (fields[1].empty() || fields[2].empty()) {
    throw DecodeError(DecodeErrorKind::invalid_field, "payload has an empty map or node field");
  }
  const std::string_view body = payload.substr(0, payload.size() - fields[3].size() - 1);
  if (!is_hex8(fields[3]) || hex8(crc32(body)) != fields[3]) {
    throw DecodeError(DecodeErrorKind::checksum_mismatch, "payload checksum mismatch");
  }
  return {std::string(fields[1]), std::string(fields[2])};
}

}  // namespace wayfind::qr

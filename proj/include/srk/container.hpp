#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace srk {

// Shared on-disk container: one line of JSON (UTF-8, LF-terminated) followed
// by a raw little-endian payload. The header's "format" field names the
// concrete schema.

struct Container {
    nlohmann::json header;
    std::vector<uint8_t> payload;
};

Container read_container(const std::string& path, const std::string& expect_format);
void write_container(const std::string& path, const nlohmann::json& header,
                     const std::vector<uint8_t>& payload);

// Sequential payload cursor; throws LoadError naming `what` when the block
// would run past the end.
class PayloadReader {
  public:
    explicit PayloadReader(const std::vector<uint8_t>& data) : data_(data) {}

    void read_f32(float* out, size_t count, const std::string& what);
    void read_u16(uint16_t* out, size_t count, const std::string& what);
    void expect_end(const std::string& what) const;

  private:
    const std::vector<uint8_t>& data_;
    size_t pos_ = 0;
};

void append_f32(std::vector<uint8_t>& payload, const float* data, size_t count);
void append_u16(std::vector<uint8_t>& payload, const uint16_t* data, size_t count);

} // namespace srk

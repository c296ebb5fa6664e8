#include "srk/container.hpp"

#include <cstring>
#include <fstream>

#include "srk/error.hpp"

namespace srk {

// Stored payloads are little-endian; that is also the only byte order this
// code runs on in practice, so blocks are memcpy'd directly.
static_assert(sizeof(float) == 4 && sizeof(uint16_t) == 2);

Container read_container(const std::string& path, const std::string& expect_format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError(expect_format + ": cannot open '" + path + "'");
    std::string header_line;
    if (!std::getline(in, header_line))
        throw LoadError(expect_format + ": '" + path + "' has no header line");
    Container c;
    try {
        c.header = nlohmann::json::parse(header_line);
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(expect_format + ": bad JSON header in '" + path + "': " + e.what());
    }
    if (c.header.value("format", "") != expect_format)
        throw LoadError(expect_format + ": '" + path + "' declares format '" +
                        c.header.value("format", "") + "'");
    std::vector<uint8_t> rest((std::istreambuf_iterator<char>(in)),
                              std::istreambuf_iterator<char>());
    c.payload = std::move(rest);
    return c;
}

void write_container(const std::string& path, const nlohmann::json& header,
                     const std::vector<uint8_t>& payload) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LoadError("cannot write '" + path + "'");
    out << header.dump() << '\n';
    out.write(reinterpret_cast<const char*>(payload.data()),
              std::streamsize(payload.size()));
    if (!out) throw LoadError("short write to '" + path + "'");
}

void PayloadReader::read_f32(float* out, size_t count, const std::string& what) {
    size_t bytes = count * 4;
    if (pos_ + bytes > data_.size())
        throw LoadError("truncated payload: block '" + what + "' needs " +
                        std::to_string(bytes) + " bytes, " +
                        std::to_string(data_.size() - pos_) + " remain");
    std::memcpy(out, data_.data() + pos_, bytes);
    pos_ += bytes;
}

void PayloadReader::read_u16(uint16_t* out, size_t count, const std::string& what) {
    size_t bytes = count * 2;
    if (pos_ + bytes > data_.size())
        throw LoadError("truncated payload: block '" + what + "' needs " +
                        std::to_string(bytes) + " bytes, " +
                        std::to_string(data_.size() - pos_) + " remain");
    std::memcpy(out, data_.data() + pos_, bytes);
    pos_ += bytes;
}

void PayloadReader::expect_end(const std::string& what) const {
    if (pos_ != data_.size())
        throw LoadError(what + ": payload has " + std::to_string(data_.size() - pos_) +
                        " unexpected trailing bytes");
}

void append_f32(std::vector<uint8_t>& payload, const float* data, size_t count) {
    size_t off = payload.size();
    payload.resize(off + count * 4);
    std::memcpy(payload.data() + off, data, count * 4);
}

void append_u16(std::vector<uint8_t>& payload, const uint16_t* data, size_t count) {
    size_t off = payload.size();
    payload.resize(off + count * 2);
    std::memcpy(payload.data() + off, data, count * 2);
}

} // namespace srk

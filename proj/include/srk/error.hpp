#pragma once

#include <stdexcept>
#include <string>

namespace srk {

// Bad arguments or malformed in-memory data. CLI maps this to exit code 2.
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

// File could not be read or failed validation; message names the offending field.
struct LoadError : std::runtime_error {
    explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotFound : std::runtime_error {
    explicit NotFound(const std::string& msg) : std::runtime_error(msg) {}
};

// ICP could not establish enough correspondences; caller keeps the unrefined mesh.
struct AlignmentFailed : std::runtime_error {
    explicit AlignmentFailed(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace srk

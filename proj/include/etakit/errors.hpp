#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace etakit {

// Base for every error raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two series over different coefficient rings (e.g. F_5 and F_7) were combined.
struct ring_mismatch : error {
    using error::error;
};

// A requested coefficient depth is not covered by the known precision.
struct insufficient_precision : error {
    insufficient_precision(const std::string& what, std::int64_t needed, std::int64_t available)
        : error(what + ": need precision " + std::to_string(needed) + ", have " +
                std::to_string(available)),
          needed(needed),
          available(available) {}
    std::int64_t needed;
    std::int64_t available;
};

// An argument violates an operation's precondition.
struct invalid_argument : error {
    using error::error;
};

// A construction that must succeed at desk scale could not be certified.
struct certification_failure : error {
    certification_failure(const std::string& what, std::int64_t witness)
        : error(what + " (first mismatch at index " + std::to_string(witness) + ")"),
          witness(witness) {}
    std::int64_t witness;
};

}  // namespace etakit

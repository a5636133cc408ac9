#pragma once

#include <stdexcept>
#include <string>

namespace zemach {

// Base class for every failure this library reports.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mixed or unsupported unit tags in measurement arithmetic/conversion.
struct unit_error : error {
    using error::error;
};

// Constant-set loading/lookup failures (missing name, bad entry, ...).
struct constants_error : error {
    using error::error;
};

// Form-factor model construction or evaluation failures.
struct model_error : error {
    using error::error;
};

// Extraction failures (inconsistent inputs, negative radius, ...).
struct extraction_error : error {
    using error::error;
};

// File / JSON parsing failures.
struct io_error : error {
    using error::error;
};

} // namespace zemach

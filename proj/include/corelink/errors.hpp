#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corelink {

// Input text could not be parsed; position() is the 0-based byte offset of
// the offending token.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// A resource guard tripped (series term cap, enumeration bound, reference
// expansion domain). The computation was refused, not truncated.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A degree-limited screening pass found no violation. Screening can only
// prove obstructions; it never certifies a pass, so no verdict exists.
class screen_inconclusive : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace corelink

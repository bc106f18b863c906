#pragma once

// Umbrella header.

#include "corelink/braid.hpp"
#include "corelink/burnside.hpp"
#include "corelink/errors.hpp"
#include "corelink/io.hpp"
#include "corelink/magnus.hpp"
#include "corelink/oracle.hpp"
#include "corelink/words.hpp"

namespace corelink {
inline constexpr const char* version = "0.1.0";
}

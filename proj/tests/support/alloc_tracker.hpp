#pragma once

#include <cstddef>

namespace crx::testing {

/// Heap accounting through replaced global operator new/delete. Only linked
/// into binaries that measure memory.
std::size_t live_bytes();
std::size_t peak_bytes();
/// Restarts peak tracking from the current live size.
void reset_peak();

} // namespace crx::testing

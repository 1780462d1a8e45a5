#pragma once

#include <string>

namespace landau {

/// Formats with 17 significant digits (round-trip safe for double).
std::string format_full(double v);

/// Writes content to path via a sibling temporary file plus rename, so a
/// crash never leaves a half-written file behind.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace landau

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace multinet {

// Shortest decimal string that round-trips to the same double. All file
// output goes through this so bytes are stable across runs and platforms.
std::string format_double(double x);

// Empty string for NaN ("missing" cells), otherwise format_double.
std::string format_cell(double x);

// FNV-1a 64-bit digest of a byte stream, as fixed-width hex.
std::string fnv1a_hex(std::istream& in);

}  // namespace multinet

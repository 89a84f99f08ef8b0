#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dynsim/log.hpp"

namespace dynsim {

/// Chunked binary log container ("DSLG", version 1, little-endian):
/// header + channel table, then CRC32-protected record chunks. Layout is
/// documented byte-exactly in docs/FORMATS.md. Serialization carries no
/// environment state (no timestamps-of-writing), so identical logs give
/// identical bytes.
std::vector<uint8_t> serialize_log(const Log& log, size_t chunk_bytes = 1 << 20);
Log deserialize_log(std::span<const uint8_t> bytes);

void write_log_file(const Log& log, const std::string& path, size_t chunk_bytes = 1 << 20);
Log read_log_file(const std::string& path);

}  // namespace dynsim

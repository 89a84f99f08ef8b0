#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dynsim/animation.hpp"

namespace dynsim {

/// Binary clip container ("DSCL", version 1, little-endian): header,
/// topology, base vertices, then per-frame vertex arrays or pose rows.
/// Layout documented in docs/FORMATS.md; round-trips bit-exactly.
std::vector<uint8_t> save_clip(const AnimatedAsset& asset);
AnimatedAsset load_clip(std::span<const uint8_t> bytes);

void save_clip_file(const AnimatedAsset& asset, const std::string& path);
AnimatedAsset load_clip_file(const std::string& path);

}  // namespace dynsim

#pragma once

#include <cstdint>

#include "lanehmm/errors.hpp"

namespace lanehmm {

// Virtual-warp constants: 32 lanes of 32-bit words, each byte one stripe
// cell, so a warp row spans 128 byte-columns.
inline constexpr uint32_t kWarpLanes = 32;
inline constexpr uint32_t kWarpBytes = 128;

// Scan geometry for one lane count S:
//   width  W = byte-stripes per sequence (128/S),
//   group  L = lanes cooperating on one sequence (ceil(32/S)),
//   rows   H = striped rows, W*H must cover the model.
struct Geometry {
    uint32_t lanes = 0;  // S
    uint32_t width = 0;  // W
    uint32_t group = 0;  // L
    uint32_t rows = 0;   // H

    uint64_t capacity() const { return uint64_t(width) * rows; }
};

inline bool valid_lane_count(uint32_t s) {
    return s >= 1 && s <= 128 && (s & (s - 1)) == 0;
}

// Builds the geometry for lane count `lanes` with an explicit row count.
inline Geometry make_geometry(uint32_t lanes, uint32_t rows) {
    if (!valid_lane_count(lanes))
        throw ContractError("lane count must be a power of two in [1,128]");
    if (rows < 2)
        throw ContractError("geometry needs at least 2 rows");
    Geometry g;
    g.lanes = lanes;
    g.width = kWarpBytes / lanes;
    g.group = (kWarpLanes + lanes - 1) / lanes;
    g.rows = rows;
    return g;
}

// Minimal-row geometry for a model of `modelLength` nodes.
inline Geometry minimal_geometry(uint32_t lanes, uint32_t modelLength) {
    if (modelLength < 1)
        throw ContractError("model length must be positive");
    uint32_t width = kWarpBytes / lanes;
    uint32_t rows = (modelLength + width - 1) / width;
    if (rows < 2)
        rows = 2;
    return make_geometry(lanes, rows);
}

} // namespace lanehmm

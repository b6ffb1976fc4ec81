#include "lanehmm/vwarp.hpp"

#include "lanehmm/errors.hpp"

namespace lanehmm::vwarp {

Warp shuffle_idx(const Warp& lanes, const std::array<uint8_t, kWarpLanes>& srcLane,
                 uint32_t segmentWidth) {
    if (segmentWidth == 0 || segmentWidth > kWarpLanes || (segmentWidth & (segmentWidth - 1)))
        throw ContractError("shuffle segment width must be a power of two <= 32");
    Warp out{};
    uint32_t segMask = segmentWidth - 1;
    for (uint32_t i = 0; i < kWarpLanes; ++i) {
        uint32_t src = (i & ~segMask) | (srcLane[i] & segMask);
        out[i] = lanes[src];
    }
    return out;
}

Warp shuffle_bfly(const Warp& lanes, uint32_t xorMask) {
    Warp out{};
    for (uint32_t i = 0; i < kWarpLanes; ++i)
        out[i] = lanes[(i ^ xorMask) & (kWarpLanes - 1)];
    return out;
}

Warp reorder(const Geometry& g, const Warp& v, uint8_t negInf, ReorderMode mode) {
    Warp out{};
    const bool inject = mode == ReorderMode::InjectNegInf;
    switch (g.lanes) {
    case 128:
        // single stripe per sequence: row 0 always restarts from -inf
        out.fill(splat4(negInf));
        return out;
    case 64:
        // two stripes per 16-bit half: low byte moves up within its half
        for (uint32_t i = 0; i < kWarpLanes; ++i) {
            LaneWord up = (v[i] << 8) & 0xff00ff00u;
            LaneWord low = inject ? (splat4(negInf) & 0x00ff00ffu)
                                  : ((v[i] >> 8) & 0x00ff00ffu);
            out[i] = up | low;
        }
        return out;
    case 32:
        for (uint32_t i = 0; i < kWarpLanes; ++i) {
            LaneWord up = v[i] << 8;
            out[i] = inject ? set_byte(up, 0, negInf) : (up | (v[i] >> 24));
        }
        return out;
    default: {
        // inter-lane: each lane takes the previous group lane's top byte
        uint32_t L = g.group;
        for (uint32_t i = 0; i < kWarpLanes; ++i) {
            uint32_t base = i & ~(L - 1);
            uint32_t prev = base + ((i - base) + L - 1) % L;
            out[i] = (v[i] << 8) | (v[prev] >> 24);
        }
        if (inject)
            for (uint32_t base = 0; base < kWarpLanes; base += L)
                out[base] = set_byte(out[base], 0, negInf);
        return out;
    }
    }
}

Warp max_reduce(const Geometry& g, const Warp& scE) {
    if (g.lanes == 128)
        return scE;
    Warp x = scE;
    if (g.lanes <= 16) {
        // butterfly all-reduce within each aligned group of L lanes
        for (uint32_t lm = 1; lm < g.group; lm <<= 1) {
            Warp y = shuffle_bfly(x, lm);
            for (uint32_t i = 0; i < kWarpLanes; ++i)
                x[i] = max4(x[i], y[i]);
        }
    }
    for (uint32_t i = 0; i < kWarpLanes; ++i) {
        LaneWord sw = ((x[i] >> 8) & 0x00ff00ffu) | ((x[i] << 8) & 0xff00ff00u);
        x[i] = max4(x[i], sw);
    }
    if (g.lanes == 64)
        return x;
    for (uint32_t i = 0; i < kWarpLanes; ++i) {
        LaneWord sw = (x[i] >> 16) | (x[i] << 16);
        x[i] = max4(x[i], sw);
    }
    return x;
}

LaneWord extract_res(const Warp& blockRow, uint32_t iSeq, uint32_t k, uint32_t lanes) {
    if (iSeq >= kWarpLanes)
        throw ContractError("extract_res word index out of range");
    if (lanes <= 32)
        return (blockRow[iSeq] >> (8 * (k % 4))) & 0xffu;
    if (lanes == 64)
        return (blockRow[iSeq] >> (16 * k)) & 0xffffu;
    return blockRow[iSeq];
}

} // namespace lanehmm::vwarp

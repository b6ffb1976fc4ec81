#pragma once

#include <array>
#include <cstdint>

#include "lanehmm/geometry.hpp"

// The virtual-warp compute core. Every operation is a pure function on 32
// lane words (or on single words), emulating the PTX-level primitives of a
// GPU warp: packed-byte saturating arithmetic, masked index shuffles,
// butterfly shuffles, the striped reorder step, and group max-reduction.
// Byte 0 of a lane word is the least significant byte and the lowest stripe.
namespace lanehmm::vwarp {

using LaneWord = uint32_t;
using Warp = std::array<LaneWord, kWarpLanes>;

inline constexpr LaneWord splat4(uint8_t b) {
    return 0x01010101u * b;
}

// Per-byte unsigned saturating add.
inline constexpr LaneWord add_sat4(LaneWord a, LaneWord b) {
    LaneWord low = (a & 0x7f7f7f7fu) + (b & 0x7f7f7f7fu);
    LaneWord sum = low ^ ((a ^ b) & 0x80808080u);
    LaneWord carry = ((a & b) | ((a | b) & ~sum)) & 0x80808080u;
    return sum | ((carry >> 7) * 0xffu);
}

// Per-byte unsigned saturating subtract (floors at 0).
inline constexpr LaneWord sub_sat4(LaneWord a, LaneWord b) {
    return ~add_sat4(~a, b);
}

// Per-byte unsigned max. b + max(a-b, 0) never carries across bytes.
inline constexpr LaneWord max4(LaneWord a, LaneWord b) {
    return b + sub_sat4(a, b);
}

inline constexpr uint8_t byte_of(LaneWord w, unsigned idx) {
    return uint8_t(w >> (8 * idx));
}

inline constexpr LaneWord set_byte(LaneWord w, unsigned idx, uint8_t v) {
    LaneWord m = 0xffu << (8 * idx);
    return (w & ~m) | (LaneWord(v) << (8 * idx));
}

// Indexed shuffle with segment masking: lane i receives the word of lane
// (segment base | srcLane[i] % segmentWidth). Lanes never read across their
// own segment.
Warp shuffle_idx(const Warp& lanes, const std::array<uint8_t, kWarpLanes>& srcLane,
                 uint32_t segmentWidth);

// Butterfly shuffle: lane i receives the word of lane i XOR xorMask.
Warp shuffle_bfly(const Warp& lanes, uint32_t xorMask);

enum class ReorderMode {
    InjectNegInf, // vacated stripe 0 of each sequence becomes negInf (normative)
    PaperWrap,    // keep the literal wrap of the top stripe back into stripe 0
};

// The striped shift by one model node between residue steps: every stripe's
// row-(H-1) score moves to the next-higher stripe position. Stripe 0 of each
// sequence is filled with negInf unless PaperWrap is selected. For S=128 the
// result is the negInf-filled word regardless of input.
Warp reorder(const Geometry& g, const Warp& v, uint8_t negInf,
             ReorderMode mode = ReorderMode::InjectNegInf);

// Group max-reduction on accumulated sc_E words. After the call, for S<=32
// every byte of every lane in a group equals the group's maximum byte; for
// S=64 each 16-bit half holds its own maximum in both bytes; for S=128 the
// input is returned unchanged.
Warp max_reduce(const Geometry& g, const Warp& scE);

// Residue extraction from one 128-byte block row stored as 32 little-endian
// words: a byte for S<=32, a 16-bit field for S=64, the whole word for S=128.
LaneWord extract_res(const Warp& blockRow, uint32_t iSeq, uint32_t k, uint32_t lanes);

} // namespace lanehmm::vwarp

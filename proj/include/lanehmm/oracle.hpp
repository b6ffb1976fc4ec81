#pragma once

#include <cstdint>
#include <span>

#include "lanehmm/profile.hpp"

// Scalar reference implementations of the MSV and SSV recurrences in the
// same saturating byte space as the engine. These are the ground truth for
// all engine equivalence tests; they never stripe and deliberately share no
// code with the vwarp core.
namespace lanehmm::oracle {

// Per-sequence base score for the B state, derived from the byte-space
// origin and the length-dependent move cost.
uint8_t sequence_base(uint64_t seqLen, const QuantParams& q);

// Byte cost of entering the model for a sequence of the given length:
// round(scale * log2((len+3)/3)), clamped to a byte.
uint8_t move_cost(uint64_t seqLen, const QuantParams& q);

// Multi-hit ungapped filter score, floor 0x00.
uint8_t scalar_msv(const CostMatrix& costs, std::span<const uint8_t> seq, const QuantParams& q);

// Single best ungapped diagonal, floor 0x80.
uint8_t scalar_ssv(const CostMatrix& costs, std::span<const uint8_t> seq, const QuantParams& q);

} // namespace lanehmm::oracle

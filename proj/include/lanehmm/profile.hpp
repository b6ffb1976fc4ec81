#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lanehmm/alphabet.hpp"
#include "lanehmm/geometry.hpp"

namespace lanehmm {

// A parsed query profile: per-node match emission log-odds (bits) over the
// 20 amino acids plus the Gumbel calibration used for P-values.
struct ProfileHMM {
    std::string name;
    uint32_t length = 0;              // node count
    std::vector<double> matchScores;  // length x 20, node-major
    double lambda = 0.0;              // Gumbel slope, per bit; > 0
    double tau = 0.0;                 // Gumbel location, bits

    double score(uint32_t node1, int amino) const {
        return matchScores[size_t(node1 - 1) * kAminoCount + amino];
    }
};

// Byte-space constants shared by kernels, oracle and score finalization.
struct QuantParams {
    double scale = 3.0;  // byte units per bit
    uint8_t base = 195;  // score origin of the MSV byte space
    uint8_t dbias = 3;   // per-step additive bias
    uint8_t tec = 3;     // E->J move cost
    uint8_t tjb = 3;     // J->B move cost

    static constexpr uint8_t kNegInfMsv = 0x00;
    static constexpr uint8_t kNegInfSsv = 0x80;

    void validate() const;
};

// Quantized emission costs: m x 21 bytes (20 aminos + the unknown column);
// every other alphabet code reads as the invalid cost 0xff. Lower cost means
// better match; the kernels subtract it.
struct CostMatrix {
    uint32_t modelLength = 0;
    std::vector<uint8_t> bytes;  // modelLength x (kAminoCount + 1)

    uint8_t at(uint32_t node1, uint8_t code) const {
        if (code > kUnknownCode)
            return 0xff;
        return bytes[size_t(node1 - 1) * (kAminoCount + 1) + code];
    }
};

// Emission cost table in striped layout for one geometry.
//
// For S<=32 (including S=1) `words[h*32*L + r*L + oig]` packs the four byte
// costs owned by group-lane oig at row h: byte b holds the cost of model
// node (4*oig+b)*H + h + 1, or 0xff past the model.
// For S=64 `pair16[h*32 + r]` holds the two stripe costs of row h (nodes
// h+1 and H+h+1); for S=128 `single8[h*32 + r]` holds the cost of node h+1.
struct StripedProfile {
    Geometry geom;
    uint32_t modelLength = 0;
    std::vector<uint32_t> words;
    std::vector<uint16_t> pair16;
    std::vector<uint8_t> single8;
};

// --- operations ---------------------------------------------------------

ProfileHMM parse_profile(const std::string& text);
std::string serialize_profile(const ProfileHMM& hmm);

CostMatrix quantize_emissions(const ProfileHMM& hmm, const QuantParams& q);

StripedProfile build_striped(const CostMatrix& costs, const Geometry& g);

// Emission gather for one group-lane: the packed word of four stripe costs
// addressed by (row h, residue word r, offset-in-group oig). For S=64/128 the
// residue word carries two/four independent residue codes, one per packed
// sequence. Residue codes must be < 32.
uint32_t gather_emission(const StripedProfile& sp, uint32_t oig, uint32_t h, uint32_t r);

} // namespace lanehmm

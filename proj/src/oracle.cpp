#include "lanehmm/oracle.hpp"

#include <cmath>
#include <vector>

#include "lanehmm/errors.hpp"

namespace lanehmm::oracle {

namespace {

// Scalar saturating byte helpers, kept separate from the vwarp core.
inline uint8_t adds(uint8_t a, uint8_t b) {
    unsigned s = unsigned(a) + b;
    return s > 255 ? 255 : uint8_t(s);
}

inline uint8_t subs(uint8_t a, uint8_t b) {
    return a > b ? uint8_t(a - b) : 0;
}

inline uint8_t maxu(uint8_t a, uint8_t b) {
    return a > b ? a : b;
}

} // namespace

uint8_t move_cost(uint64_t seqLen, const QuantParams& q) {
    double c = std::round(q.scale * std::log2((double(seqLen) + 3.0) / 3.0));
    if (c < 0.0)
        c = 0.0;
    if (c > 255.0)
        c = 255.0;
    return uint8_t(c);
}

uint8_t sequence_base(uint64_t seqLen, const QuantParams& q) {
    return subs(q.base, move_cost(seqLen, q));
}

uint8_t scalar_msv(const CostMatrix& costs, std::span<const uint8_t> seq, const QuantParams& q) {
    const uint32_t m = costs.modelLength;
    for (uint8_t c : seq)
        if (c > kUnknownCode)
            throw ContractError("oracle sequence contains non-residue codes");

    // prev[j] = M[i-1, j]; prev[0] is the permanent -inf boundary
    std::vector<uint8_t> prev(size_t(m) + 1, 0), cur(size_t(m) + 1, 0);
    const uint8_t base = sequence_base(seq.size(), q);
    uint8_t scE = 0, scJ = 0, scB = base;

    for (uint8_t a : seq) {
        uint8_t rowMax = 0;
        for (uint32_t j = 1; j <= m; ++j) {
            uint8_t v = maxu(prev[j - 1], scB);
            v = adds(v, q.dbias);
            v = subs(v, costs.at(j, a));
            cur[j] = v;
            rowMax = maxu(rowMax, v);
        }
        scE = maxu(scE, rowMax);
        scJ = maxu(scJ, subs(scE, q.tec));
        scB = maxu(base, subs(scJ, q.tjb));
        std::swap(prev, cur);
    }
    return scE;
}

uint8_t scalar_ssv(const CostMatrix& costs, std::span<const uint8_t> seq, const QuantParams& q) {
    const uint32_t m = costs.modelLength;
    for (uint8_t c : seq)
        if (c > kUnknownCode)
            throw ContractError("oracle sequence contains non-residue codes");

    const uint8_t floor = QuantParams::kNegInfSsv;
    std::vector<uint8_t> prev(size_t(m) + 1, floor), cur(size_t(m) + 1, floor);
    uint8_t scE = floor;

    for (uint8_t a : seq) {
        for (uint32_t j = 1; j <= m; ++j) {
            // diagonal-only recurrence; the floor doubles as the fresh
            // segment start level
            uint8_t v = subs(adds(prev[j - 1], q.dbias), costs.at(j, a));
            v = maxu(v, floor);
            cur[j] = v;
            scE = maxu(scE, v);
        }
        std::swap(prev, cur);
    }
    return scE;
}

} // namespace lanehmm::oracle

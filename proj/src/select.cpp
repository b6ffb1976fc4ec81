#include "lanehmm/select.hpp"

#include <algorithm>

#include "lanehmm/errors.hpp"

namespace lanehmm {

void SelectorConfig::validate() const {
    if (hMaxMsv < 2 || hMaxSsv < 2)
        throw ContractError("hMax must be at least 2");
    if (mMin >= mMaxMsv || mMin >= mMaxSsv)
        throw ContractError("mMin must be below mMax");
}

uint32_t lane_count(uint32_t modelLength, Algorithm alg, const SelectorConfig& cfg) {
    cfg.validate();
    if (modelLength < 1)
        throw ContractError("model length must be positive");
    const uint32_t hMax = cfg.h_max(alg);
    const uint64_t twoLaneCap = uint64_t(kWarpBytes / 2) * hMax;
    if (modelLength > cfg.m_max(alg) || modelLength > twoLaneCap)
        return 1;
    uint32_t s = 0;
    for (uint32_t cand = 128; cand >= 2; cand /= 2) {
        if (uint64_t(kWarpBytes / cand) * hMax >= modelLength) {
            s = cand;
            break;
        }
    }
    if (s == 0)
        return 1;
    // tiny models run faster on 32 lanes than on the assembly-heavy 64/128
    if (modelLength <= cfg.mMin)
        s = std::min<uint32_t>(s, 32);
    return s;
}

Geometry select_geometry(uint32_t lanes, uint32_t modelLength, Algorithm alg,
                         const SelectorConfig& cfg) {
    cfg.validate();
    Geometry g = minimal_geometry(lanes, modelLength);
    if (lanes > 1 && g.rows > cfg.h_max(alg))
        throw DataError("model length " + std::to_string(modelLength) + " exceeds " +
                        std::to_string(lanes) + "-lane capacity at hMax " +
                        std::to_string(cfg.h_max(alg)));
    return g;
}

CalibrationReport detect_knee(const std::vector<CalibrationEntry>& entries) {
    CalibrationReport rep;
    rep.entries = entries;
    if (entries.empty()) {
        rep.warnings.push_back("no calibration points");
        return rep;
    }
    // 3-point centered smoothing, then the largest H attaining the maximum
    std::vector<double> smooth(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
        double acc = entries[i].gcups;
        int n = 1;
        if (i > 0) {
            acc += entries[i - 1].gcups;
            ++n;
        }
        if (i + 1 < entries.size()) {
            acc += entries[i + 1].gcups;
            ++n;
        }
        smooth[i] = acc / n;
    }
    size_t best = 0;
    for (size_t i = 1; i < smooth.size(); ++i)
        if (smooth[i] >= smooth[best])
            best = i;
    rep.recommendedH = entries[best].rows;
    return rep;
}

CalibrationReport calibrate_hmax(const ProfileHMM& hmm, const CostMatrix& costs,
                                 const BlockSet& sample, uint32_t lanes, uint32_t hLo,
                                 uint32_t hHi, uint32_t hStep, Algorithm alg,
                                 const QuantParams& q, const ScanOptions& opt) {
    if (hStep < 1 || hLo < 2 || hHi < hLo)
        throw ContractError("bad calibration sweep range");
    const uint32_t width = kWarpBytes / lanes;
    const uint32_t hNeed = std::max<uint32_t>(2, (costs.modelLength + width - 1) / width);

    std::vector<CalibrationEntry> entries;
    std::vector<std::string> warnings;
    ScanOptions scanOpt = opt;
    scanOpt.alg = alg;
    for (uint32_t h = std::max(hLo, hNeed); h <= hHi; h += hStep) {
        Geometry g = make_geometry(lanes, h);
        ScanReport rep = scan_database(hmm, costs, sample, g, q, scanOpt);
        entries.push_back({h, rep.gcups});
        if (rep.elapsedSeconds < 0.05)
            warnings.push_back("H=" + std::to_string(h) +
                               ": sample too small for stable timing");
    }
    CalibrationReport rep = detect_knee(entries);
    for (auto& w : warnings)
        rep.warnings.push_back(std::move(w));
    return rep;
}

} // namespace lanehmm

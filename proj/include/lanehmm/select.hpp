#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lanehmm/engine.hpp"

namespace lanehmm {

// Lane-count and row-count selection thresholds. Defaults mirror the
// reference GPU calibration; calibrate_hmax re-derives hMax on local
// hardware.
struct SelectorConfig {
    uint32_t hMaxMsv = 45;
    uint32_t hMaxSsv = 50;
    uint32_t mMin = 20;       // at or below this, prefer 32-lane kernels
    uint32_t mMaxMsv = 2450;  // beyond this, fall back to S=1
    uint32_t mMaxSsv = 1000;

    uint32_t h_max(Algorithm a) const { return a == Algorithm::Msv ? hMaxMsv : hMaxSsv; }
    uint32_t m_max(Algorithm a) const { return a == Algorithm::Msv ? mMaxMsv : mMaxSsv; }

    void validate() const;
};

// Largest S in {2..128} whose W_S * hMax covers the model, capped at 32 for
// models at or below mMin; 1 when the model exceeds the multi-lane capacity
// or mMax.
uint32_t lane_count(uint32_t modelLength, Algorithm alg, const SelectorConfig& cfg);

// Minimal-H geometry for the chosen S, enforcing H <= hMax (except S=1,
// which has no row bound).
Geometry select_geometry(uint32_t lanes, uint32_t modelLength, Algorithm alg,
                         const SelectorConfig& cfg);

struct CalibrationEntry {
    uint32_t rows = 0;  // H
    double gcups = 0.0;
};

struct CalibrationReport {
    std::vector<CalibrationEntry> entries;
    uint32_t recommendedH = 0;
    std::vector<std::string> warnings;
};

// Knee detection on a throughput-vs-H curve: smooth over a 3-point window,
// report the largest H attaining the smoothed maximum (the last point before
// sustained decline).
CalibrationReport detect_knee(const std::vector<CalibrationEntry>& entries);

// Sweeps H at fixed S over a dataset sample, measuring engine throughput per
// H and reporting the knee as the recommended hMax for this machine.
CalibrationReport calibrate_hmax(const ProfileHMM& hmm, const CostMatrix& costs,
                                 const BlockSet& sample, uint32_t lanes, uint32_t hLo,
                                 uint32_t hHi, uint32_t hStep, Algorithm alg,
                                 const QuantParams& q, const ScanOptions& opt);

} // namespace lanehmm

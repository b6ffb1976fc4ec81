#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lanehmm/profile.hpp"
#include "lanehmm/seqdb.hpp"
#include "lanehmm/vwarp.hpp"

namespace lanehmm {

enum class Algorithm { Msv, Ssv };

inline const char* algorithm_name(Algorithm a) {
    return a == Algorithm::Msv ? "msv" : "ssv";
}

inline uint8_t neg_inf(Algorithm a) {
    return a == Algorithm::Msv ? QuantParams::kNegInfMsv : QuantParams::kNegInfSsv;
}

struct KernelParams {
    const StripedProfile* profile = nullptr;
    Geometry geometry;
    QuantParams quant;
    Algorithm alg = Algorithm::Msv;
    vwarp::ReorderMode reorderMode = vwarp::ReorderMode::InjectNegInf;
    bool specializedLoop = true;  // per-H expanded inner loop when available
    bool faultInjection = false;  // verification aid: corrupts one packed op
    double lambda = 0.0;
    double tau = 0.0;

    void validate() const;
};

struct HitResult {
    std::string seqId;
    uint8_t raw = 0;
    double bits = 0.0;
    double pValue = 1.0;
    bool overflow = false;
    uint64_t seqLen = 0;
    // provenance for deterministic ordering
    uint32_t block = 0;
    uint32_t column = 0;
    uint32_t ordinal = 0;
};

struct ScanReport {
    Algorithm alg = Algorithm::Msv;
    Geometry geometry;
    int workers = 1;
    uint64_t blockCount = 0;
    uint64_t totalSequences = 0;
    uint64_t totalResidues = 0;
    double elapsedSeconds = 0.0;
    double gcups = 0.0;
    std::vector<uint64_t> blocksPerWorker;  // static partition accounting
    std::vector<HitResult> hits;
};

struct ScanOptions {
    int workers = 1;
    Algorithm alg = Algorithm::Msv;
    vwarp::ReorderMode reorderMode = vwarp::ReorderMode::InjectNegInf;
    bool specializedLoop = true;
    bool faultInjection = false;
};

// --- score finalization ---------------------------------------------------

// scJ' = max(scJ, scE - tec); scB' = max(seqBase, scJ' - tjb), all per-byte
// saturating. Word-level; the oracle repeats the same formula on scalars.
void special_state_update(uint32_t scE, uint32_t& scJ, uint32_t& scB, uint32_t seqBase,
                          const QuantParams& q);

// Raw byte score -> bit score and Gumbel P-value. raw == 255 marks overflow
// (pValue 0, a certain pass to the next stage).
HitResult finalize_hit(uint8_t raw, uint64_t seqLen, double lambda, double tau,
                       const QuantParams& q, Algorithm alg);

// Length-dependent B-state base byte. Twin of oracle::sequence_base; the two
// implementations stay separate and are pinned equal by tests.
uint8_t engine_sequence_base(uint64_t seqLen, const QuantParams& q);

// --- scans -----------------------------------------------------------------

// Scans one block; hits come back in (column, ordinal) order.
std::vector<HitResult> scan_block(const KernelParams& kp, const BlockSet& bs, uint32_t blockIndex);

// Scans a whole BlockSet on a fixed-size worker pool (static block
// partition); hits are merged in (block, column, ordinal) order.
ScanReport scan_database(const ProfileHMM& hmm, const CostMatrix& costs, const BlockSet& bs,
                         const Geometry& g, const QuantParams& q, const ScanOptions& opt);

// S=1 special case: the whole virtual warp serves one sequence; input is a
// plain sequence stream, no block database involved.
ScanReport scan_sequences_s1(const ProfileHMM& hmm, const CostMatrix& costs,
                             const std::vector<SequenceRecord>& records, const QuantParams& q,
                             const ScanOptions& opt);

// --- pipeline ---------------------------------------------------------------

struct PipelineHit {
    std::string seqId;
    uint64_t seqLen = 0;
    uint8_t ssvRaw = 0;
    double ssvBits = 0.0;
    double ssvPValue = 1.0;
    bool ssvOverflow = false;
    uint8_t msvRaw = 0;
    double msvBits = 0.0;
    double msvPValue = 1.0;
    bool msvOverflow = false;
};

struct PipelineReport {
    double threshold = 0.0;
    uint64_t ssvScanned = 0;
    uint64_t msvRescored = 0;
    double ssvSeconds = 0.0;
    double msvSeconds = 0.0;
    std::vector<PipelineHit> survivors;      // rescored set, deterministic order
    std::vector<HitResult> ssvHits;          // full first-stage output
};

// SSV over the whole set, then MSV rescoring of every sequence with
// pValue <= threshold or with SSV overflow.
PipelineReport filter_pipeline(const ProfileHMM& hmm, const CostMatrix& costs, const BlockSet& bs,
                               double threshold, const QuantParams& q, const ScanOptions& opt,
                               const Geometry& ssvGeometry, const Geometry& msvGeometry);

} // namespace lanehmm

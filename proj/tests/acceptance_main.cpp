// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here, in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <omp.h>

#include "brute_force.hpp"
#include "lanehmm/engine.hpp"
#include "lanehmm/oracle.hpp"
#include "lanehmm/select.hpp"
#include "lanehmm/synth.hpp"

using namespace lanehmm;

namespace {

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("ACCEPT[%d] %-22s: %s (%s)\n", idx, name, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

void info(int idx, const std::string& detail) {
    std::printf("ACCEPT[%d]   note: %s\n", idx, detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. Oracle equivalence: every lane count, exact integer equality.

void criterion_oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuantParams q;
    const SelectorConfig cfg;
    const uint32_t laneSet[8] = {1, 2, 4, 8, 16, 32, 64, 128};
    const int instancesPerLane = 200;
    const uint64_t cellBudget = 30000000;  // residues x model per instance

    uint64_t mismatches = 0, sequencesChecked = 0;
    std::string firstBad;

#pragma omp parallel for collapse(2) schedule(dynamic) reduction(+ : mismatches, sequencesChecked)
    for (int si = 0; si < 8; ++si) {
        for (int t = 0; t < instancesPerLane; ++t) {
            const uint32_t S = laneSet[si];
            std::mt19937_64 rng(0xACCEu * (si + 1) + t);
            // capacity-respecting model range for this lane count; the
            // tighter MSV row limit bounds both algorithms
            const uint32_t width = kWarpBytes / std::max(S, 2u);
            const uint32_t hi = uint32_t(std::min<uint64_t>(2405, uint64_t(width) * cfg.hMaxMsv));
            std::uniform_int_distribution<uint32_t> mDist(7, hi);
            const uint32_t mhat = mDist(rng);
            const uint64_t lenHi =
                std::min<uint64_t>(500, std::max<uint64_t>(8, cellBudget / (128 * mhat)));

            ProfileHMM hmm = synth::random_profile(rng, mhat);
            CostMatrix costs = quantize_emissions(hmm, q);
            auto records = synth::random_records(rng, 128, 1, lenHi);

            for (Algorithm alg : {Algorithm::Msv, Algorithm::Ssv}) {
                ScanOptions opt;
                opt.alg = alg;
                std::vector<HitResult> hits;
                if (S == 1) {
                    hits = scan_sequences_s1(hmm, costs, records, q, opt).hits;
                } else {
                    // alternate packing density so shared columns exercise
                    // the per-sequence ending resets at every lane count
                    BlockSet bs = pack_blocks(records, 1, t % 2 ? 32 : 128);
                    Geometry g = minimal_geometry(S, mhat);
                    hits = scan_database(hmm, costs, bs, g, q, opt).hits;
                }
                std::map<std::string, uint8_t> got;
                for (const auto& h : hits)
                    got[h.seqId] = h.raw;
                for (const auto& rec : records) {
                    uint8_t want = alg == Algorithm::Msv
                                       ? oracle::scalar_msv(costs, rec.residues, q)
                                       : oracle::scalar_ssv(costs, rec.residues, q);
                    ++sequencesChecked;
                    if (got.at(rec.id) != want) {
                        ++mismatches;
#pragma omp critical
                        if (firstBad.empty())
                            firstBad = "S=" + std::to_string(S) + " mhat=" +
                                       std::to_string(mhat) + " seq=" + rec.id + " alg=" +
                                       algorithm_name(alg);
                    }
                }
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d instances/lane, %llu scores, zero tolerance, %.1fs",
                  instancesPerLane, (unsigned long long)sequencesChecked, seconds_since(t0));
    report(1, "oracle-equivalence", mismatches == 0, mismatches == 0 ? buf : firstBad + "; " + buf);
}

// ---------------------------------------------------------------------------
// 2. Brute-force grounding of the scalar oracle on all tiny shapes.

void criterion_brute_force() {
    const auto t0 = std::chrono::steady_clock::now();
    QuantParams q;
    std::mt19937_64 rng(0xB0F0);
    std::uniform_int_distribution<int> res(0, kAminoCount - 1);
    uint64_t mismatches = 0, checked = 0;
    for (uint32_t m = 1; m <= 4; ++m) {
        for (uint64_t len = 0; len <= 6; ++len) {
            for (int t = 0; t < 120; ++t) {
                CostMatrix cm;
                cm.modelLength = m;
                cm.bytes.resize(size_t(m) * (kAminoCount + 1));
                for (auto& b : cm.bytes) {
                    switch (t % 4) {
                    case 0: b = uint8_t(rng() % 16); break;
                    case 1: b = uint8_t(rng() % 256); break;
                    case 2: b = (rng() % 5) ? 0xff : 0; break;
                    default: b = uint8_t(rng() % 40) * 6; break;
                    }
                }
                std::vector<uint8_t> seq(len);
                for (auto& r : seq)
                    r = uint8_t(res(rng));
                checked += 2;
                if (oracle::scalar_msv(cm, seq, q) != brute::msv_path_enumeration(cm, seq, q))
                    ++mismatches;
                if (oracle::scalar_ssv(cm, seq, q) != brute::ssv_path_enumeration(cm, seq, q))
                    ++mismatches;
            }
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%llu comparisons over all m<=4, len<=6 shapes, %.1fs",
                  (unsigned long long)checked, seconds_since(t0));
    report(2, "brute-force-grounding", mismatches == 0, buf);
}

// ---------------------------------------------------------------------------
// 3. Geometry and selection reproduce the reference values.

void criterion_selection() {
    SelectorConfig cfg;
    bool ok = true;
    std::string bad;
    auto expect = [&](bool cond, const char* what) {
        if (!cond) {
            ok = false;
            if (!bad.empty())
                bad += ", ";
            bad += what;
        }
    };
    expect(lane_count(45, Algorithm::Msv, cfg) == 128, "laneCount(45,MSV)=128");
    expect(lane_count(1000, Algorithm::Msv, cfg) == 4, "laneCount(1000,MSV)=4");
    Geometry g16 = select_geometry(16, 300, Algorithm::Msv, cfg);
    expect(g16.width == 8 && g16.group == 2, "geometry(S=16): W=8,L=2");
    expect(select_geometry(2, 2405, Algorithm::Msv, cfg).rows == 38, "geometry(2,2405): H=38");
    expect(minimal_geometry(1, 2405).rows == 19, "S=1 fallback H=19");
    expect(cfg.hMaxMsv == 45 && cfg.hMaxSsv == 50, "hMax defaults 45/50");
    report(3, "geometry-selection", ok, ok ? "all reference values exact" : bad);
}

// ---------------------------------------------------------------------------
// 4. Packer balance at desk scale, literal parameters.

void criterion_packer_balance() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0xBA1A);
    auto recs = synth::lognormal_records(rng, 100000, 200.0, 0.25);

    BlockSet bs = pack_blocks(recs, 480, 32);
    BalanceStats st = balance_stats(bs);
    const double ratio = st.sdM / st.avgM;
    char buf[220];
    std::snprintf(buf, sizeof buf,
                  "N=480 S=32 (15360 columns): sdM/avgM=%.2e (<=0.01), PRR=%.2e (<=1e-3), %.1fs",
                  ratio, st.prr, seconds_since(t0));
    report(4, "packer-balance", ratio <= 0.01 && st.prr <= 1e-3, buf);

    // Same data and thresholds at the reference sequences-per-column ratio
    // (~130/column, as in the workload-balance evaluation): the balancing
    // meets the targets once columns are tall enough to absorb per-sequence
    // length granularity.
    BlockSet companion = pack_blocks(recs, 24, 32);
    BalanceStats cst = balance_stats(companion);
    std::snprintf(buf, sizeof buf,
                  "companion N=24 S=32 (768 columns): sdM/avgM=%.2e, PRR=%.2e -> %s both targets",
                  cst.sdM / cst.avgM, cst.prr,
                  (cst.sdM / cst.avgM <= 0.01 && cst.prr <= 1e-3) ? "meets" : "misses");
    info(4, buf);
}

// ---------------------------------------------------------------------------
// 5. Packing invariance and mask soundness.

void criterion_packing_invariance() {
    const auto t0 = std::chrono::steady_clock::now();
    QuantParams q;
    std::mt19937_64 rng(0x9ACC);
    const uint32_t mhat = 96;
    ProfileHMM hmm = synth::random_profile(rng, mhat);
    CostMatrix costs = quantize_emissions(hmm, q);
    auto records = synth::random_records(rng, 1000, 1, 300);
    Geometry g = minimal_geometry(32, mhat);
    StripedProfile sp = build_striped(costs, g);

    uint64_t bad = 0;
    for (Algorithm alg : {Algorithm::Msv, Algorithm::Ssv}) {
        ScanOptions opt;
        opt.alg = alg;
        BlockSet full = pack_blocks(records, 3, 128);
        opt.workers = 1;
        auto w1 = scan_database(hmm, costs, full, g, q, opt);
        opt.workers = 4;
        auto w4 = scan_database(hmm, costs, full, g, q, opt);
        opt.workers = 8;
        auto w8 = scan_database(hmm, costs, full, g, q, opt);
        for (size_t i = 0; i < w1.hits.size(); ++i) {
            if (w1.hits[i].seqId != w4.hits[i].seqId || w1.hits[i].raw != w4.hits[i].raw ||
                w1.hits[i].seqId != w8.hits[i].seqId || w1.hits[i].raw != w8.hits[i].raw)
                ++bad;
        }
        std::map<std::string, uint8_t> batch;
        for (const auto& h : w1.hits)
            batch[h.seqId] = h.raw;

        KernelParams kp;
        kp.profile = &sp;
        kp.geometry = g;
        kp.quant = q;
        kp.alg = alg;
        kp.lambda = hmm.lambda;
        kp.tau = hmm.tau;
#pragma omp parallel for schedule(dynamic) reduction(+ : bad)
        for (int64_t i = 0; i < int64_t(records.size()); ++i) {
            BlockSet solo = pack_blocks({records[i]}, 1, 1);
            auto hits = scan_block(kp, solo, 0);
            if (hits.size() != 1 || hits[0].raw != batch.at(records[i].id))
                ++bad;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "1000 sequences x {msv,ssv}: solo vs packed vs workers {1,4,8}, %.1fs",
                  seconds_since(t0));
    report(5, "packing-invariance", bad == 0, buf);
}

// ---------------------------------------------------------------------------
// 6. Pipeline semantics: survivors reconstructed independently.

void criterion_pipeline() {
    const auto t0 = std::chrono::steady_clock::now();
    QuantParams q;
    std::mt19937_64 rng(0x5175);
    const uint32_t mhat = 80;
    ProfileHMM hmm = synth::random_profile(rng, mhat);
    CostMatrix costs = quantize_emissions(hmm, q);
    auto records = synth::random_records(rng, 500, 20, 250);
    synth::plant_motifs(rng, hmm, records, 0.2);
    BlockSet bs = pack_blocks(records, 2, 64);
    Geometry gs = minimal_geometry(64, mhat);
    Geometry gm = minimal_geometry(64, mhat);
    ScanOptions opt;
    opt.workers = 2;

    bool ok = true;
    std::string detail;
    for (double threshold : {0.0, 0.022, 0.3, 1.0}) {
        PipelineReport rep = filter_pipeline(hmm, costs, bs, threshold, q, opt, gs, gm);
        // expected set rebuilt from per-sequence oracle P-values
        std::set<std::string> expect;
        for (const auto& rec : records) {
            uint8_t raw = oracle::scalar_ssv(costs, rec.residues, q);
            HitResult h =
                finalize_hit(raw, rec.residues.size(), hmm.lambda, hmm.tau, q, Algorithm::Ssv);
            if (h.pValue <= threshold || h.overflow)
                expect.insert(rec.id);
        }
        std::set<std::string> got;
        for (const auto& s : rep.survivors)
            got.insert(s.seqId);
        if (got != expect) {
            ok = false;
            detail = "set mismatch at threshold " + std::to_string(threshold);
            break;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "500 sequences, thresholds {0, 0.022, 0.3, 1}, %.1fs",
                  seconds_since(t0));
    report(6, "pipeline-semantics", ok, ok ? buf : detail);
}

// ---------------------------------------------------------------------------
// 7. Throughput harness (measured, soft): S=32 vs the scalar oracle.

void criterion_throughput() {
    const auto t0 = std::chrono::steady_clock::now();
    QuantParams q;
    bool ok = true;
    std::string detail;
    for (uint32_t mhat : {92u, 150u, 200u}) {
        std::mt19937_64 rng(0xBE5C + mhat);
        ProfileHMM hmm = synth::random_profile(rng, mhat);
        CostMatrix costs = quantize_emissions(hmm, q);
        auto records = synth::random_records(rng, 3000, 80, 400);
        BlockSet bs = pack_blocks(records, 32, 128);
        Geometry g = minimal_geometry(32, mhat);
        ScanOptions opt;
        opt.workers = 8;

        double engineG = 0.0;
        for (int rep = 0; rep < 2; ++rep)
            engineG = std::max(engineG, scan_database(hmm, costs, bs, g, q, opt).gcups);

        uint64_t residues = bs.total_residues();
        double oracleG = 0.0;
        for (int rep = 0; rep < 2; ++rep) {
            auto o0 = std::chrono::steady_clock::now();
            for (const auto& r : records)
                oracle::scalar_msv(costs, r.residues, q);
            double secs = seconds_since(o0);
            oracleG = std::max(oracleG, double(residues) * mhat / secs / 1e9);
        }
        char line[160];
        std::snprintf(line, sizeof line, "mhat=%u engine=%.2f oracle=%.2f GCUPS (%.1fx); ", mhat,
                      engineG, oracleG, engineG / oracleG);
        detail += line;
        if (engineG < 2.0 * oracleG)
            ok = false;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "8 workers, %.1fs", seconds_since(t0));
    report(7, "throughput-harness", ok, detail + buf);
}

// ---------------------------------------------------------------------------
// 8. Calibration behavior.

void criterion_calibration() {
    const auto t0 = std::chrono::steady_clock::now();
    // injected synthetic curve with its knee at H=40
    std::vector<CalibrationEntry> synthCurve;
    for (uint32_t h = 20; h <= 60; h += 5)
        synthCurve.push_back({h, 300.0 - 0.4 * (double(h) - 40.0) * (double(h) - 40.0)});
    bool kneeOk = detect_knee(synthCurve).recommendedH == 40;

    // real timing: the report must come out table-shaped (H, throughput);
    // no throughput values are asserted
    QuantParams q;
    std::mt19937_64 rng(0xCA1B);
    ProfileHMM hmm = synth::random_profile(rng, 64);
    CostMatrix costs = quantize_emissions(hmm, q);
    auto records = synth::random_records(rng, 1500, 60, 200);
    BlockSet sample = pack_blocks(std::move(records), 4, 128);
    ScanOptions opt;
    opt.workers = 2;
    CalibrationReport real =
        calibrate_hmax(hmm, costs, sample, 32, 16, 40, 8, Algorithm::Msv, q, opt);
    bool tableOk = real.entries.size() == 4 && real.recommendedH >= 16;
    for (const auto& e : real.entries)
        tableOk = tableOk && e.gcups > 0.0 && e.rows >= 16 && e.rows <= 40;

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "synthetic knee -> %s; real sweep %zu rows, recommended H=%u, %.1fs",
                  kneeOk ? "40" : "wrong", real.entries.size(), real.recommendedH,
                  seconds_since(t0));
    report(8, "calibration-behavior", kneeOk && tableOk, buf);
}

} // namespace

int main() {
    std::printf("lanehmm acceptance suite\n");
    criterion_oracle_equivalence();
    criterion_brute_force();
    criterion_selection();
    criterion_packer_balance();
    criterion_packing_invariance();
    criterion_pipeline();
    criterion_throughput();
    criterion_calibration();
    if (failures)
        std::printf("%d criterion(s) failed\n", failures);
    else
        std::printf("all criteria passed\n");
    return failures;
}

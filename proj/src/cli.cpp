#include "lanehmm/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lanehmm/engine.hpp"
#include "lanehmm/errors.hpp"
#include "lanehmm/oracle.hpp"
#include "lanehmm/select.hpp"
#include "lanehmm/synth.hpp"

using nlohmann::json;

namespace lanehmm::cli {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw DataError("cannot open file for writing: " + path);
    out << text;
    if (!out)
        throw DataError("failed to write file: " + path);
}

json stats_json(const BalanceStats& st) {
    return json{{"avg_m", st.avgM},
                {"sd_m", st.sdM},
                {"avg_endings", st.avgEndings},
                {"sd_endings", st.sdEndings},
                {"prr", st.prr},
                {"total_seqs", st.totalSeqs},
                {"total_residues", st.totalResidues}};
}

json report_json(const ScanReport& rep) {
    return json{{"alg", algorithm_name(rep.alg)},
                {"lanes", rep.geometry.lanes},
                {"width", rep.geometry.width},
                {"rows", rep.geometry.rows},
                {"workers", rep.workers},
                {"blocks", rep.blockCount},
                {"total_seqs", rep.totalSequences},
                {"total_residues", rep.totalResidues},
                {"elapsed_seconds", rep.elapsedSeconds},
                {"gcups", rep.gcups},
                {"hits", rep.hits.size()}};
}

void append_hit_tsv(std::string& out, const std::string& id, uint8_t raw, double bits,
                    double pValue, const char* stage) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s\t%u\t%.4f\t%.6g\t%s\n", id.c_str(), unsigned(raw), bits,
                  pValue, stage);
    out += buf;
}

std::string hits_tsv(const std::vector<HitResult>& hits, const char* stage) {
    std::string out = "seq_id\traw\tbits\tpvalue\tstage\n";
    for (const auto& h : hits)
        append_hit_tsv(out, h.seqId, h.raw, h.bits, h.pValue, stage);
    return out;
}

std::string pipeline_tsv(const PipelineReport& rep) {
    std::string out = "seq_id\traw\tbits\tpvalue\tstage\n";
    for (const auto& s : rep.survivors) {
        append_hit_tsv(out, s.seqId, s.ssvRaw, s.ssvBits, s.ssvPValue, "ssv");
        append_hit_tsv(out, s.seqId, s.msvRaw, s.msvBits, s.msvPValue, "msv");
    }
    return out;
}

Algorithm parse_alg(const std::string& name) {
    if (name == "msv")
        return Algorithm::Msv;
    if (name == "ssv")
        return Algorithm::Ssv;
    throw DataError("unknown algorithm: " + name);
}

struct CommonOpts {
    int workers = 1;
    uint64_t seed = 1;
    SelectorConfig selector;
};

void add_selector_flags(CLI::App* app, SelectorConfig& sel) {
    app->add_option("--hmax-msv", sel.hMaxMsv, "Row limit for MSV kernels")
        ->envname("LANEHMM_HMAX_MSV");
    app->add_option("--hmax-ssv", sel.hMaxSsv, "Row limit for SSV kernels")
        ->envname("LANEHMM_HMAX_SSV");
    app->add_option("--mmin", sel.mMin, "Model length at or below which 32 lanes are preferred");
    app->add_option("--mmax-msv", sel.mMaxMsv, "Largest MSV model before the S=1 fallback");
    app->add_option("--mmax-ssv", sel.mMaxSsv, "Largest SSV model before the S=1 fallback");
}

// --- verify ----------------------------------------------------------------

struct Mismatch {
    Algorithm alg = Algorithm::Msv;
    uint32_t lanes = 0;
    uint32_t mhat = 0;
    SequenceRecord record;
    uint8_t expected = 0;
    uint8_t got = 0;
};

bool solo_mismatch(const ProfileHMM& hmm, const CostMatrix& costs, const Geometry& g,
                   const QuantParams& q, const ScanOptions& opt, const SequenceRecord& rec,
                   Mismatch& mm) {
    uint8_t want = opt.alg == Algorithm::Msv ? oracle::scalar_msv(costs, rec.residues, q)
                                             : oracle::scalar_ssv(costs, rec.residues, q);
    uint8_t got = 0;
    if (g.lanes == 1) {
        got = scan_sequences_s1(hmm, costs, {rec}, q, opt).hits[0].raw;
    } else {
        BlockSet one = pack_blocks({rec}, 1, 1);
        got = scan_database(hmm, costs, one, g, q, opt).hits[0].raw;
    }
    if (got == want)
        return false;
    mm.record = rec;
    mm.expected = want;
    mm.got = got;
    return true;
}

// Shrinks a failing sequence by halving from either end while the solo
// mismatch persists.
void minimize_case(const ProfileHMM& hmm, const CostMatrix& costs, const Geometry& g,
                   const QuantParams& q, const ScanOptions& opt, Mismatch& mm) {
    bool reduced = true;
    while (reduced && mm.record.residues.size() > 1) {
        reduced = false;
        const auto& res = mm.record.residues;
        size_t half = res.size() / 2;
        std::vector<std::vector<uint8_t>> candidates = {
            {res.begin(), res.begin() + half},
            {res.begin() + half, res.end()},
        };
        for (auto& cand : candidates) {
            if (cand.empty())
                continue;
            SequenceRecord probe{mm.record.id, cand};
            Mismatch sub;
            if (solo_mismatch(hmm, costs, g, q, opt, probe, sub)) {
                mm.record.residues = std::move(cand);
                mm.expected = sub.expected;
                mm.got = sub.got;
                reduced = true;
                break;
            }
        }
    }
}

int cmd_verify(std::ostream& out, std::ostream& err, int trials, uint64_t seed, uint32_t mhatMin,
               uint32_t mhatMax, uint64_t lenMax, int workers, bool injectFault,
               const SelectorConfig& sel) {
    (void)workers;
    std::mt19937_64 rng(seed);
    QuantParams q;
    const uint32_t laneSet[] = {1, 2, 4, 8, 16, 32, 64, 128};
    uint64_t checked = 0;
    for (uint32_t lanes : laneSet) {
        for (Algorithm alg : {Algorithm::Msv, Algorithm::Ssv}) {
            const uint32_t hMax = sel.h_max(alg);
            const uint32_t width = kWarpBytes / std::max(lanes, 2u);
            uint32_t hi = std::min<uint64_t>(mhatMax, uint64_t(width) * hMax);
            uint32_t lo = std::min(mhatMin, hi);
            std::uniform_int_distribution<uint32_t> mhatDist(lo, hi);
            for (int t = 0; t < trials; ++t) {
                uint32_t mhat = mhatDist(rng);
                ProfileHMM hmm = synth::random_profile(rng, mhat);
                CostMatrix costs = quantize_emissions(hmm, q);
                Geometry g = minimal_geometry(lanes, mhat);
                uint64_t cap = std::max<uint64_t>(4, std::min<uint64_t>(lenMax, 300000 / mhat));
                auto records = synth::random_records(rng, 16, 1, cap, "v");
                ScanOptions opt;
                opt.alg = alg;
                opt.workers = 1;
                opt.faultInjection = injectFault;

                std::vector<HitResult> hits;
                if (lanes == 1) {
                    hits = scan_sequences_s1(hmm, costs, records, q, opt).hits;
                } else {
                    BlockSet bs = pack_blocks(records, 1, 128);
                    hits = scan_database(hmm, costs, bs, g, q, opt).hits;
                }
                std::map<std::string, uint8_t> got;
                for (const auto& h : hits)
                    got[h.seqId] = h.raw;
                for (const auto& rec : records) {
                    uint8_t want = alg == Algorithm::Msv
                                       ? oracle::scalar_msv(costs, rec.residues, q)
                                       : oracle::scalar_ssv(costs, rec.residues, q);
                    ++checked;
                    if (got.at(rec.id) == want)
                        continue;
                    Mismatch mm;
                    mm.alg = alg;
                    mm.lanes = lanes;
                    mm.mhat = mhat;
                    mm.record = rec;
                    mm.expected = want;
                    mm.got = got.at(rec.id);
                    Mismatch solo = mm;
                    if (solo_mismatch(hmm, costs, g, q, opt, rec, solo))
                        minimize_case(hmm, costs, g, q, opt, solo);
                    else
                        solo = mm;  // batch-only effect; report unshrunk
                    err << "MISMATCH alg=" << algorithm_name(alg) << " S=" << lanes
                        << " mhat=" << mhat << " H=" << g.rows << " seed=" << seed
                        << " len=" << solo.record.residues.size() << "\n  residues:";
                    for (uint8_t r : solo.record.residues)
                        err << ' ' << unsigned(r);
                    err << "\n  expected=" << unsigned(solo.expected)
                        << " got=" << unsigned(solo.got) << "\n";
                    return 3;
                }
            }
        }
    }
    out << "verify: " << checked << " sequence scores matched the scalar oracle\n";
    return 0;
}

// --- bench -------------------------------------------------------------------

int cmd_bench(std::ostream& out, const std::vector<uint32_t>& mhats,
              std::vector<uint32_t> lanesList, const std::vector<int>& workersList,
              const std::string& algName, size_t seqCount, uint64_t lenLo, uint64_t lenHi,
              uint64_t seed, bool withOracle, const std::string& csvPath,
              const std::string& sweepH, const SelectorConfig& sel) {
    std::string csv = "impl,alg,lanes,width,rows,mhat,workers,blocks,seqs,residues,seconds,gcups\n";
    std::mt19937_64 rng(seed);
    QuantParams q;

    std::vector<Algorithm> algs;
    if (algName == "both") {
        algs = {Algorithm::Msv, Algorithm::Ssv};
    } else {
        algs = {parse_alg(algName)};
    }

    uint32_t sweepLo = 0, sweepHi = 0, sweepStep = 1;
    if (!sweepH.empty()) {
        if (std::sscanf(sweepH.c_str(), "%u:%u:%u", &sweepLo, &sweepHi, &sweepStep) != 3 ||
            sweepStep < 1)
            throw DataError("bad --sweep-h, expected LO:HI:STEP");
    }

    for (uint32_t mhat : mhats) {
        ProfileHMM hmm = synth::random_profile(rng, mhat);
        CostMatrix costs = quantize_emissions(hmm, q);
        auto records = synth::random_records(rng, seqCount, lenLo, lenHi, "b");
        uint64_t residues = 0;
        for (const auto& r : records)
            residues += r.residues.size();

        for (Algorithm alg : algs) {
            const bool autoLanes = lanesList.empty();
            std::vector<uint32_t> lanes = lanesList;
            if (autoLanes)
                lanes = {lane_count(mhat, alg, sel)};
            for (uint32_t s : lanes) {
                for (int workers : workersList) {
                    uint64_t blocks = std::max<uint64_t>(
                        1, std::min<uint64_t>(records.size(), uint64_t(workers) * 4));
                    std::vector<uint32_t> rowChoices;
                    if (sweepH.empty()) {
                        // explicit lanes run at the mechanical minimum; the
                        // hMax policy only gates auto-selection
                        rowChoices.push_back(autoLanes && s > 1
                                                 ? select_geometry(s, mhat, alg, sel).rows
                                                 : minimal_geometry(s, mhat).rows);
                    } else {
                        for (uint32_t h = sweepLo; h <= sweepHi; h += sweepStep)
                            if (uint64_t(kWarpBytes / s) * h >= mhat)
                                rowChoices.push_back(h);
                    }
                    for (uint32_t rows : rowChoices) {
                        ScanOptions opt;
                        opt.alg = alg;
                        opt.workers = workers;
                        ScanReport rep;
                        if (s == 1) {
                            rep = scan_sequences_s1(hmm, costs, records, q, opt);
                        } else {
                            BlockSet bs = pack_blocks(records, blocks, 128);
                            rep = scan_database(hmm, costs, bs, make_geometry(s, rows), q, opt);
                        }
                        char buf[256];
                        std::snprintf(buf, sizeof buf,
                                      "engine,%s,%u,%u,%u,%u,%d,%llu,%zu,%llu,%.6f,%.3f\n",
                                      algorithm_name(alg), rep.geometry.lanes, rep.geometry.width,
                                      rep.geometry.rows, mhat, workers,
                                      (unsigned long long)rep.blockCount, records.size(),
                                      (unsigned long long)rep.totalResidues, rep.elapsedSeconds,
                                      rep.gcups);
                        csv += buf;
                    }
                }
            }
            if (withOracle) {
                auto t0 = std::chrono::steady_clock::now();
                for (const auto& r : records) {
                    if (alg == Algorithm::Msv)
                        oracle::scalar_msv(costs, r.residues, q);
                    else
                        oracle::scalar_ssv(costs, r.residues, q);
                }
                auto t1 = std::chrono::steady_clock::now();
                double secs = std::chrono::duration<double>(t1 - t0).count();
                double gcups = secs > 0 ? double(residues) * mhat / secs / 1e9 : 0.0;
                char buf[256];
                std::snprintf(buf, sizeof buf, "oracle,%s,0,0,0,%u,1,0,%zu,%llu,%.6f,%.3f\n",
                              algorithm_name(alg), mhat, records.size(),
                              (unsigned long long)residues, secs, gcups);
                csv += buf;
            }
        }
    }
    if (csvPath.empty())
        out << csv;
    else
        write_text(csvPath, csv);
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lanehmm: multi-lane striped MSV/SSV profile-HMM filter engine"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");

    // build-db
    auto* bdb = app.add_subcommand("build-db", "Pack a FASTA file into an LHMM block database");
    std::string bdbFasta, bdbOut, bdbStats;
    uint64_t bdbBlocks = 1;
    uint32_t bdbLanes = 128;
    bdb->add_option("--fasta", bdbFasta, "Input FASTA file")->required();
    bdb->add_option("--out", bdbOut, "Output block database path")->required();
    bdb->add_option("--blocks", bdbBlocks, "Block count N")->envname("LANEHMM_BLOCKS");
    bdb->add_option("--lanes", bdbLanes, "Lane count S the database is packed for")
        ->envname("LANEHMM_LANES");
    bdb->add_option("--stats", bdbStats, "Write balance statistics JSON to this path");

    // search
    auto* srch = app.add_subcommand("search", "Scan a block database with a query profile");
    std::string sProfile, sDb, sAlg = "pipeline", sHits, sReport;
    int sWorkers = 1;
    double sThreshold = 0.022;
    uint32_t sLanes = 0, sRows = 0;
    SelectorConfig sSel;
    srch->add_option("--profile", sProfile, "Query profile file")->required();
    srch->add_option("--db", sDb, "LHMM block database")->required();
    srch->add_option("--alg", sAlg, "msv, ssv or pipeline")->envname("LANEHMM_ALG");
    srch->add_option("--workers", sWorkers, "Worker pool size")->envname("LANEHMM_WORKERS");
    srch->add_option("--threshold", sThreshold, "Pipeline SSV P-value threshold")
        ->envname("LANEHMM_THRESHOLD");
    srch->add_option("--lanes", sLanes, "Override the selected lane count");
    srch->add_option("--rows", sRows, "Override the selected row count H");
    srch->add_option("--hits", sHits, "Write the hit TSV here instead of stdout");
    srch->add_option("--report", sReport, "Write the scan report JSON to this path");
    bool sWrap = false;
    srch->add_flag("--reorder-wrap", sWrap,
                   "Study mode: literal stripe-0 wrap instead of the -inf injection");
    add_selector_flags(srch, sSel);

    // verify
    auto* ver = app.add_subcommand("verify", "Engine vs scalar oracle equivalence sweep");
    int vTrials = 12;
    uint64_t vSeed = 1;
    uint32_t vMhatMin = 7, vMhatMax = 2405;
    uint64_t vLenMax = 400;
    int vWorkers = 1;
    bool vFault = false;
    SelectorConfig vSel;
    ver->add_option("--trials", vTrials, "Instances per lane count and algorithm");
    ver->add_option("--seed", vSeed, "RNG seed")->envname("LANEHMM_SEED");
    ver->add_option("--mhat-min", vMhatMin, "Smallest model length");
    ver->add_option("--mhat-max", vMhatMax, "Largest model length");
    ver->add_option("--len-max", vLenMax, "Longest sequence");
    ver->add_option("--workers", vWorkers, "Worker pool size")->envname("LANEHMM_WORKERS");
    ver->add_flag("--inject-fault", vFault, "Corrupt one packed op to prove detection");
    add_selector_flags(ver, vSel);

    // bench
    auto* ben = app.add_subcommand("bench", "Throughput sweeps, CSV output");
    std::vector<uint32_t> bMhats{92, 200};
    std::vector<uint32_t> bLanes;
    std::vector<int> bWorkers{1};
    std::string bAlg = "both", bCsv, bSweepH;
    size_t bSeqs = 2000;
    uint64_t bLenLo = 80, bLenHi = 400, bSeed = 1;
    bool bOracle = false;
    SelectorConfig bSel;
    ben->add_option("--mhat", bMhats, "Model lengths to sweep");
    ben->add_option("--lanes", bLanes, "Lane counts to sweep (default: auto-select)");
    ben->add_option("--workers", bWorkers, "Worker counts to sweep")->envname("LANEHMM_WORKERS");
    ben->add_option("--alg", bAlg, "msv, ssv or both");
    ben->add_option("--seqs", bSeqs, "Synthetic sequence count");
    ben->add_option("--len-lo", bLenLo, "Shortest synthetic sequence");
    ben->add_option("--len-hi", bLenHi, "Longest synthetic sequence");
    ben->add_option("--seed", bSeed, "RNG seed")->envname("LANEHMM_SEED");
    ben->add_flag("--oracle", bOracle, "Also time the scalar reference");
    ben->add_option("--csv", bCsv, "Write CSV here instead of stdout");
    ben->add_option("--sweep-h", bSweepH, "Row sweep LO:HI:STEP at fixed lanes");
    add_selector_flags(ben, bSel);

    // stats
    auto* sts = app.add_subcommand("stats", "Balance statistics of a block database");
    std::string stDb;
    sts->add_option("--db", stDb, "LHMM block database")->required();

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "Row-count calibration sweep on this machine");
    std::string cProfile, cDb, cAlg = "msv";
    uint32_t cLanes = 32, cHLo = 20, cHHi = 50, cHStep = 5;
    int cWorkers = 1;
    size_t cSeqs = 4000;
    uint64_t cSeed = 1;
    cal->add_option("--profile", cProfile, "Query profile file")->required();
    cal->add_option("--db", cDb, "Sample database (synthetic sample when omitted)");
    cal->add_option("--lanes", cLanes, "Lane count under calibration");
    cal->add_option("--h-lo", cHLo, "Sweep start");
    cal->add_option("--h-hi", cHHi, "Sweep end");
    cal->add_option("--h-step", cHStep, "Sweep step");
    cal->add_option("--alg", cAlg, "msv or ssv");
    cal->add_option("--workers", cWorkers, "Worker pool size")->envname("LANEHMM_WORKERS");
    cal->add_option("--seqs", cSeqs, "Synthetic sample size");
    cal->add_option("--seed", cSeed, "RNG seed")->envname("LANEHMM_SEED");

    std::vector<const char*> argv;
    argv.push_back("lanehmm");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (bdb->parsed()) {
            auto records = ingest_fasta_file(bdbFasta);
            BlockSet bs = pack_blocks(std::move(records), bdbBlocks, bdbLanes);
            write_block_db(bs, bdbOut);
            json st = stats_json(balance_stats(bs));
            if (bdbStats.empty())
                out << st.dump(2) << "\n";
            else
                write_text(bdbStats, st.dump(2) + "\n");
            return 0;
        }
        if (srch->parsed()) {
            ProfileHMM hmm = parse_profile(slurp(sProfile));
            QuantParams q;
            CostMatrix costs = quantize_emissions(hmm, q);
            BlockSet bs = read_block_db(sDb);
            ScanOptions opt;
            opt.workers = sWorkers;
            if (sWrap)
                opt.reorderMode = vwarp::ReorderMode::PaperWrap;
            auto pick_geometry = [&](Algorithm alg) {
                uint32_t lanes = sLanes ? sLanes : lane_count(hmm.length, alg, sSel);
                if (lanes == 1)
                    return minimal_geometry(1, hmm.length);
                if (sRows)
                    return make_geometry(lanes, sRows);
                return sLanes ? minimal_geometry(lanes, hmm.length)
                              : select_geometry(lanes, hmm.length, alg, sSel);
            };
            if (sAlg == "pipeline") {
                Geometry gs = pick_geometry(Algorithm::Ssv);
                Geometry gm = pick_geometry(Algorithm::Msv);
                if (gs.lanes == 1 || gm.lanes == 1)
                    throw DataError("pipeline needs a multi-lane geometry; use --alg msv/ssv");
                PipelineReport rep = filter_pipeline(hmm, costs, bs, sThreshold, q, opt, gs, gm);
                std::string tsv = pipeline_tsv(rep);
                if (sHits.empty())
                    out << tsv;
                else
                    write_text(sHits, tsv);
                json j{{"alg", "pipeline"},
                       {"threshold", rep.threshold},
                       {"ssv_scanned", rep.ssvScanned},
                       {"msv_rescored", rep.msvRescored},
                       {"survivors", rep.survivors.size()},
                       {"ssv_seconds", rep.ssvSeconds},
                       {"msv_seconds", rep.msvSeconds}};
                if (sReport.empty())
                    err << j.dump() << "\n";
                else
                    write_text(sReport, j.dump(2) + "\n");
                return 0;
            }
            Algorithm alg = parse_alg(sAlg);
            opt.alg = alg;
            Geometry g = pick_geometry(alg);
            ScanReport rep;
            if (g.lanes == 1)
                rep = scan_sequences_s1(hmm, costs, reconstruct_sequences(bs), q, opt);
            else
                rep = scan_database(hmm, costs, bs, g, q, opt);
            std::string tsv = hits_tsv(rep.hits, algorithm_name(alg));
            if (sHits.empty())
                out << tsv;
            else
                write_text(sHits, tsv);
            json j = report_json(rep);
            if (sReport.empty())
                err << j.dump() << "\n";
            else
                write_text(sReport, j.dump(2) + "\n");
            return 0;
        }
        if (ver->parsed())
            return cmd_verify(out, err, vTrials, vSeed, vMhatMin, vMhatMax, vLenMax, vWorkers,
                              vFault, vSel);
        if (ben->parsed())
            return cmd_bench(out, bMhats, bLanes, bWorkers, bAlg, bSeqs, bLenLo, bLenHi, bSeed,
                             bOracle, bCsv, bSweepH, bSel);
        if (sts->parsed()) {
            BlockSet bs = read_block_db(stDb);
            out << stats_json(balance_stats(bs)).dump(2) << "\n";
            return 0;
        }
        if (cal->parsed()) {
            ProfileHMM hmm = parse_profile(slurp(cProfile));
            QuantParams q;
            CostMatrix costs = quantize_emissions(hmm, q);
            BlockSet sample;
            if (cDb.empty()) {
                std::mt19937_64 rng(cSeed);
                auto records = synth::random_records(rng, cSeqs, 100, 400, "c");
                sample = pack_blocks(std::move(records), std::max<uint64_t>(1, cWorkers * 4), 128);
            } else {
                sample = read_block_db(cDb);
            }
            ScanOptions opt;
            opt.workers = cWorkers;
            CalibrationReport rep = calibrate_hmax(hmm, costs, sample, cLanes, cHLo, cHHi, cHStep,
                                                   parse_alg(cAlg), q, opt);
            json entries = json::array();
            for (const auto& e : rep.entries)
                entries.push_back({{"rows", e.rows}, {"gcups", e.gcups}});
            json j{{"lanes", cLanes},
                   {"alg", cAlg},
                   {"entries", entries},
                   {"recommended_h", rep.recommendedH},
                   {"warnings", rep.warnings}};
            out << j.dump(2) << "\n";
            return 0;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace lanehmm::cli

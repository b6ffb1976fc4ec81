#include "lanehmm/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <map>
#include <omp.h>

#include "lanehmm/errors.hpp"

namespace lanehmm {

using vwarp::add_sat4;
using vwarp::max4;
using vwarp::splat4;
using vwarp::sub_sat4;
using vwarp::Warp;

namespace {

uint8_t subs_byte(uint8_t a, uint8_t b) {
    return a > b ? uint8_t(a - b) : 0;
}

// Independent twin of the oracle's move_cost; both implement the documented
// length-move formula and a unit test pins their agreement.
uint8_t engine_move_cost(uint64_t seqLen, const QuantParams& q) {
    double c = std::round(q.scale * std::log2((double(seqLen) + 3.0) / 3.0));
    if (c < 0.0)
        c = 0.0;
    if (c > 255.0)
        c = 255.0;
    return uint8_t(c);
}

} // namespace

uint8_t engine_sequence_base(uint64_t seqLen, const QuantParams& q) {
    return subs_byte(q.base, engine_move_cost(seqLen, q));
}

void KernelParams::validate() const {
    if (!profile)
        throw ContractError("kernel params carry no striped profile");
    if (profile->geom.lanes != geometry.lanes || profile->geom.rows != geometry.rows)
        throw DataError("striped profile geometry does not match scan geometry");
    if (geometry.capacity() < profile->modelLength)
        throw DataError("geometry too small for the model");
    quant.validate();
}

void special_state_update(uint32_t scE, uint32_t& scJ, uint32_t& scB, uint32_t seqBase,
                          const QuantParams& q) {
    scJ = max4(scJ, sub_sat4(scE, splat4(q.tec)));
    scB = max4(seqBase, sub_sat4(scJ, splat4(q.tjb)));
}

HitResult finalize_hit(uint8_t raw, uint64_t seqLen, double lambda, double tau,
                       const QuantParams& q, Algorithm alg) {
    HitResult hit;
    hit.raw = raw;
    hit.seqLen = seqLen;
    const double lenCorr = std::log2((double(seqLen) + 3.0) / 3.0);
    if (alg == Algorithm::Msv) {
        // the byte-rounded move cost was deducted from the B base; add it
        // back before applying the real-valued correction
        hit.bits = (double(raw) - double(q.base) + double(engine_move_cost(seqLen, q))) / q.scale -
                   lenCorr;
    } else {
        hit.bits = (double(raw) - double(QuantParams::kNegInfSsv)) / q.scale - lenCorr;
    }
    hit.overflow = raw == 0xff;
    if (hit.overflow) {
        hit.pValue = 0.0;  // saturated score: certain pass to the next stage
    } else {
        double p = std::exp(-lambda * (hit.bits - tau));
        hit.pValue = std::min(1.0, p);
    }
    return hit;
}

// ---------------------------------------------------------------------------
// block scanning

namespace {

enum class LaneClass { GroupByte, HalfWord, FullWord };

LaneClass lane_class(uint32_t lanes) {
    if (lanes <= 32)
        return LaneClass::GroupByte;
    return lanes == 64 ? LaneClass::HalfWord : LaneClass::FullWord;
}

// One sequence slot active in the current pass: a container column mapped
// onto its share of the warp (a whole lane group for S<=32, a 16-bit half
// for S=64, one byte for S=128).
struct SeqUnit {
    int container = -1;  // stored column index, -1 for virtual padding
    uint32_t firstLane = 0;
    uint32_t laneCount = 1;
    uint32_t byteMask = 0xffffffffu;
    uint32_t rawShift = 0;
    // parse state of the column stream
    size_t cursor = 0;
    uint64_t seen = 0;
    bool paddingSeen = false;
    uint8_t residue = kPaddingCode;  // fed this row
};

struct PassCtx {
    const StripedProfile* sp = nullptr;
    uint32_t H = 0;
    uint32_t L = 0;
    Algorithm alg = Algorithm::Msv;
    uint32_t dbias4 = 0;
    uint32_t floor4 = 0;
    bool fault = false;

    Warp gamma0{};  // reorder output
    Warp carry{};   // diagonal value entering the current h row
    Warp v{};
    Warp scE{};
    Warp scJ{};
    Warp scB{};
    Warp baseW{};
    Warp mask{};   // AND mask for gamma loads
    Warp mask2{};  // OR mask (SSV floor re-injection)
    std::vector<uint32_t> gamma;  // row-major [h*32 + lane]

    // residues for the sigma fetch
    std::array<uint8_t, kWarpLanes> slotRes{};          // GroupByte: per slot
    std::array<std::array<uint8_t, 4>, kWarpLanes> byteRes{};  // Half/FullWord
};

// Expanded inner loop: all 32 lanes run the h-rows of one residue step.
// The lane dimension is the vectorizable axis: per h, a gather fills the
// sigma row, then the packed-byte step runs elementwise over the 32 words.
// HC > 0 bakes the row count into the instantiation; HC == 0 is the generic
// fallback (and the only path that honors fault injection).
template <Algorithm A>
inline void lane_row_step(PassCtx& c, const uint32_t* __restrict sg, uint32_t* __restrict G) {
    uint32_t* __restrict carry = c.carry.data();
    uint32_t* __restrict scE = c.scE.data();
    const uint32_t* __restrict scB = c.scB.data();
    const uint32_t* __restrict mask = c.mask.data();
    const uint32_t* __restrict mask2 = c.mask2.data();
    const uint32_t dbias4 = c.dbias4;
    const uint32_t floor4 = c.floor4;
    for (uint32_t lane = 0; lane < kWarpLanes; ++lane) {
        uint32_t val;
        if constexpr (A == Algorithm::Msv) {
            val = sub_sat4(add_sat4(max4(carry[lane], scB[lane]), dbias4), sg[lane]);
        } else {
            val = max4(sub_sat4(add_sat4(carry[lane], dbias4), sg[lane]), floor4);
        }
        scE[lane] = max4(scE[lane], val);
        uint32_t old = G[lane] & mask[lane];
        if constexpr (A == Algorithm::Ssv)
            old |= mask2[lane];
        G[lane] = val;
        carry[lane] = old;
    }
}

template <Algorithm A, int HC>
void inner_group_byte(PassCtx& c) {
    const uint32_t H = HC > 0 ? uint32_t(HC) : c.H;
    const uint32_t L = c.L;
    const uint32_t* table = c.sp->words.data();
    uint32_t base[kWarpLanes];
    for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
        base[lane] = uint32_t(c.slotRes[lane / L]) * L + lane % L;
    c.carry = c.gamma0;
    for (uint32_t h = 0; h < H; ++h) {
        const uint32_t* tableRow = table + size_t(h) * kAlphabetSize * L;
        uint32_t sg[kWarpLanes];
        for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
            sg[lane] = tableRow[base[lane]];
        uint32_t* G = c.gamma.data() + size_t(h) * kWarpLanes;
        lane_row_step<A>(c, sg, G);
        if constexpr (HC == 0)
            if (c.fault)  // lane 0's scE accumulate runs off by one
                c.scE[0] = max4(c.scE[0], add_sat4(G[0], splat4(1)));
    }
    for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
        c.v[lane] = c.gamma[size_t(H - 1) * kWarpLanes + lane];
}

template <Algorithm A>
void inner_half_word(PassCtx& c) {
    const uint32_t H = c.H;
    const uint16_t* table = c.sp->pair16.data();
    c.carry = c.gamma0;
    for (uint32_t h = 0; h < H; ++h) {
        const uint16_t* row = table + size_t(h) * kAlphabetSize;
        uint32_t sg[kWarpLanes];
        for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
            sg[lane] = uint32_t(row[c.byteRes[lane][0]]) | uint32_t(row[c.byteRes[lane][1]]) << 16;
        uint32_t* G = c.gamma.data() + size_t(h) * kWarpLanes;
        lane_row_step<A>(c, sg, G);
        if (c.fault)
            c.scE[0] = max4(c.scE[0], add_sat4(G[0], splat4(1)));
    }
    for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
        c.v[lane] = c.gamma[size_t(H - 1) * kWarpLanes + lane];
}

template <Algorithm A>
void inner_full_word(PassCtx& c) {
    const uint32_t H = c.H;
    const uint8_t* table = c.sp->single8.data();
    c.carry = c.gamma0;
    for (uint32_t h = 0; h < H; ++h) {
        const uint8_t* row = table + size_t(h) * kAlphabetSize;
        uint32_t sg[kWarpLanes];
        for (uint32_t lane = 0; lane < kWarpLanes; ++lane) {
            const auto& rs = c.byteRes[lane];
            sg[lane] = uint32_t(row[rs[0]]) | uint32_t(row[rs[1]]) << 8 |
                       uint32_t(row[rs[2]]) << 16 | uint32_t(row[rs[3]]) << 24;
        }
        uint32_t* G = c.gamma.data() + size_t(h) * kWarpLanes;
        lane_row_step<A>(c, sg, G);
        if (c.fault)
            c.scE[0] = max4(c.scE[0], add_sat4(G[0], splat4(1)));
    }
    for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
        c.v[lane] = c.gamma[size_t(H - 1) * kWarpLanes + lane];
}

using InnerFn = void (*)(PassCtx&);

constexpr int kMaxSpecializedH = 50;

template <Algorithm A, int... Hs>
constexpr std::array<InnerFn, sizeof...(Hs)> make_table(std::integer_sequence<int, Hs...>) {
    return {&inner_group_byte<A, Hs + 2>...};
}

InnerFn select_inner(Algorithm alg, LaneClass cls, uint32_t H, bool specialized, bool fault) {
    static constexpr auto msvTable =
        make_table<Algorithm::Msv>(std::make_integer_sequence<int, kMaxSpecializedH - 1>{});
    static constexpr auto ssvTable =
        make_table<Algorithm::Ssv>(std::make_integer_sequence<int, kMaxSpecializedH - 1>{});
    switch (cls) {
    case LaneClass::HalfWord:
        return alg == Algorithm::Msv ? &inner_half_word<Algorithm::Msv>
                                     : &inner_half_word<Algorithm::Ssv>;
    case LaneClass::FullWord:
        return alg == Algorithm::Msv ? &inner_full_word<Algorithm::Msv>
                                     : &inner_full_word<Algorithm::Ssv>;
    case LaneClass::GroupByte:
        break;
    }
    if (specialized && !fault && H >= 2 && H <= kMaxSpecializedH)
        return alg == Algorithm::Msv ? msvTable[H - 2] : ssvTable[H - 2];
    return alg == Algorithm::Msv ? &inner_group_byte<Algorithm::Msv, 0>
                                 : &inner_group_byte<Algorithm::Ssv, 0>;
}

void write_unit_bytes(Warp& w, const SeqUnit& u, uint8_t value) {
    const uint32_t word = splat4(value) & u.byteMask;
    for (uint32_t l = u.firstLane; l < u.firstLane + u.laneCount; ++l)
        w[l] = (w[l] & ~u.byteMask) | word;
}

std::vector<SeqUnit> pass_units(const BlockSet& bs, const Geometry& g, uint32_t k) {
    const uint32_t wPack = bs.container_width();
    std::vector<SeqUnit> units;
    auto container_at = [&](uint32_t column) -> int {
        if (column % wPack != 0)
            return -1;
        uint32_t j = column / wPack;
        return j < bs.lanes ? int(j) : -1;
    };
    switch (lane_class(g.lanes)) {
    case LaneClass::GroupByte:
        for (uint32_t slot = 0; slot < g.lanes; ++slot) {
            SeqUnit u;
            u.container = container_at(slot * g.width + k);
            u.firstLane = slot * g.group;
            u.laneCount = g.group;
            u.byteMask = 0xffffffffu;
            u.rawShift = 0;
            units.push_back(u);
        }
        break;
    case LaneClass::HalfWord:
        for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
            for (uint32_t half = 0; half < 2; ++half) {
                SeqUnit u;
                u.container = container_at(4 * lane + 2 * k + half);
                u.firstLane = lane;
                u.byteMask = half ? 0xffff0000u : 0x0000ffffu;
                u.rawShift = 16 * half;
                units.push_back(u);
            }
        break;
    case LaneClass::FullWord:
        for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
            for (uint32_t b = 0; b < 4; ++b) {
                SeqUnit u;
                u.container = container_at(4 * lane + b);
                u.firstLane = lane;
                u.byteMask = 0xffu << (8 * b);
                u.rawShift = 8 * b;
                units.push_back(u);
            }
        break;
    }
    return units;
}

struct BlockScanner {
    const KernelParams& kp;
    const BlockSet& bs;
    const Block& blk;
    uint32_t blockIndex;
    LaneClass cls;
    InnerFn inner;
    uint8_t floorByte;

    BlockScanner(const KernelParams& params, const BlockSet& set, uint32_t index)
        : kp(params), bs(set), blk(set.blocks[index]), blockIndex(index),
          cls(lane_class(params.geometry.lanes)),
          inner(select_inner(params.alg, cls, params.geometry.rows, params.specializedLoop,
                             params.faultInjection)),
          floorByte(neg_inf(params.alg)) {}

    std::vector<HitResult> run() {
        for (const auto& col : blk.columns)
            if (col.size() != blk.rows)
                throw DataError("block " + std::to_string(blockIndex) +
                                ": column height does not match block rows");
        std::vector<HitResult> hits;
        const Geometry& g = kp.geometry;
        for (uint32_t k = 0; k < g.width; ++k) {
            auto units = pass_units(bs, g, k);
            bool any = false;
            for (const auto& u : units)
                any = any || u.container >= 0;
            if (!any)
                continue;  // padding-only pass
            run_pass(units, hits);
        }
        std::stable_sort(hits.begin(), hits.end(), [](const HitResult& a, const HitResult& b) {
            return a.column != b.column ? a.column < b.column : a.ordinal < b.ordinal;
        });
        return hits;
    }

    void run_pass(std::vector<SeqUnit>& units, std::vector<HitResult>& hits) {
        const Geometry& g = kp.geometry;
        PassCtx c;
        c.sp = kp.profile;
        c.H = g.rows;
        c.L = g.group;
        c.alg = kp.alg;
        c.dbias4 = splat4(kp.quant.dbias);
        c.floor4 = splat4(QuantParams::kNegInfSsv);
        c.fault = kp.faultInjection;
        c.gamma.assign(size_t(kWarpLanes) * c.H, splat4(floorByte));
        c.v.fill(splat4(floorByte));
        c.scE.fill(splat4(floorByte));
        c.scJ.fill(0);
        c.scB.fill(0);
        c.baseW.fill(0);
        c.mask.fill(0xffffffffu);
        c.mask2.fill(0);

        for (auto& u : units)
            if (u.container >= 0 && !blk.meta[u.container].empty())
                write_unit_bytes(c.baseW, u,
                                 engine_sequence_base(blk.meta[u.container][0].length, kp.quant));
        c.scB = c.baseW;

        const bool msv = kp.alg == Algorithm::Msv;
        for (uint64_t row = 0; row < blk.rows; ++row) {
            // residue feed
            for (auto& u : units) {
                u.residue = u.container >= 0 ? blk.columns[u.container][row] : kPaddingCode;
            }
            if (cls == LaneClass::GroupByte) {
                for (uint32_t slot = 0; slot < g.lanes; ++slot)
                    c.slotRes[slot] = units[slot].residue;
            } else {
                const uint32_t perLane = cls == LaneClass::HalfWord ? 2 : 4;
                for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
                    for (uint32_t b = 0; b < perLane; ++b)
                        c.byteRes[lane][b] = units[lane * perLane + b].residue;
            }

            c.gamma0 = vwarp::reorder(g, c.v, floorByte, kp.reorderMode);
            inner(c);
            c.scE = vwarp::max_reduce(g, c.scE);
            if (msv)
                for (uint32_t lane = 0; lane < kWarpLanes; ++lane)
                    special_state_update(c.scE[lane], c.scJ[lane], c.scB[lane], c.baseW[lane],
                                         kp.quant);
            c.mask.fill(0xffffffffu);
            c.mask2.fill(0);

            for (auto& u : units) {
                if (u.container < 0)
                    continue;
                if (u.residue == kEndingCode) {
                    finish_sequence(u, c, hits);
                } else if (u.residue == kPaddingCode) {
                    u.paddingSeen = true;
                } else {
                    if (u.paddingSeen)
                        throw DataError(column_msg(u, "residues after padding"));
                    ++u.seen;
                }
            }
        }
        for (const auto& u : units) {
            if (u.container < 0)
                continue;
            const auto& meta = blk.meta[u.container];
            if (u.cursor != meta.size() || u.seen != 0)
                throw DataError(column_msg(u, "column ended with an unterminated sequence"));
        }
    }

    std::string column_msg(const SeqUnit& u, const char* what) {
        return "block " + std::to_string(blockIndex) + " column " + std::to_string(u.container) +
               ": " + what;
    }

    void finish_sequence(SeqUnit& u, PassCtx& c, std::vector<HitResult>& hits) {
        if (u.paddingSeen)
            throw DataError(column_msg(u, "ending byte after padding"));
        const auto& meta = blk.meta[u.container];
        if (u.cursor >= meta.size())
            throw DataError(column_msg(u, "more sequences than metadata entries"));
        const ColumnSequence& cs = meta[u.cursor];
        if (u.seen != cs.length)
            throw DataError(column_msg(u, "sequence length does not match metadata"));

        const uint8_t raw = uint8_t(c.scE[u.firstLane] >> u.rawShift);
        HitResult hit = finalize_hit(raw, cs.length, kp.lambda, kp.tau, kp.quant, kp.alg);
        hit.seqId = cs.id;
        hit.block = blockIndex;
        hit.column = uint32_t(u.container);
        hit.ordinal = uint32_t(u.cursor);
        hits.push_back(std::move(hit));

        // reset the finished sequence's share of the warp for its successor
        for (uint32_t l = u.firstLane; l < u.firstLane + u.laneCount; ++l)
            c.mask[l] &= ~u.byteMask;
        write_unit_bytes(c.scE, u, floorByte);
        if (kp.alg == Algorithm::Msv) {
            write_unit_bytes(c.scJ, u, 0);
        } else {
            for (uint32_t l = u.firstLane; l < u.firstLane + u.laneCount; ++l)
                c.mask2[l] |= splat4(QuantParams::kNegInfSsv) & u.byteMask;
        }
        ++u.cursor;
        u.seen = 0;
        const uint8_t nextBase = u.cursor < meta.size()
                                     ? engine_sequence_base(meta[u.cursor].length, kp.quant)
                                     : 0;
        write_unit_bytes(c.baseW, u, nextBase);
        write_unit_bytes(c.scB, u, nextBase);
    }
};

KernelParams make_kernel_params(const ProfileHMM& hmm, const StripedProfile& sp,
                                const Geometry& g, const QuantParams& q, const ScanOptions& opt) {
    KernelParams kp;
    kp.profile = &sp;
    kp.geometry = g;
    kp.quant = q;
    kp.alg = opt.alg;
    kp.reorderMode = opt.reorderMode;
    kp.specializedLoop = opt.specializedLoop;
    kp.faultInjection = opt.faultInjection;
    kp.lambda = hmm.lambda;
    kp.tau = hmm.tau;
    kp.validate();
    return kp;
}

} // namespace

std::vector<HitResult> scan_block(const KernelParams& kp, const BlockSet& bs, uint32_t blockIndex) {
    kp.validate();
    if (blockIndex >= bs.blocks.size())
        throw ContractError("block index out of range");
    BlockScanner scanner(kp, bs, blockIndex);
    return scanner.run();
}

ScanReport scan_database(const ProfileHMM& hmm, const CostMatrix& costs, const BlockSet& bs,
                         const Geometry& g, const QuantParams& q, const ScanOptions& opt) {
    if (opt.workers < 1)
        throw ContractError("worker count must be >= 1");
    StripedProfile sp = build_striped(costs, g);
    KernelParams kp = make_kernel_params(hmm, sp, g, q, opt);

    ScanReport report;
    report.alg = opt.alg;
    report.geometry = g;
    report.workers = opt.workers;
    report.blockCount = bs.blocks.size();
    report.totalSequences = bs.total_sequences();
    report.totalResidues = bs.total_residues();

    const int64_t n = int64_t(bs.blocks.size());
    std::vector<std::vector<HitResult>> perBlock(n);
    std::vector<uint64_t> perWorker(opt.workers, 0);
    std::string failure;

    auto t0 = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(static) num_threads(opt.workers)
    for (int64_t i = 0; i < n; ++i) {
        try {
            perBlock[i] = scan_block(kp, bs, uint32_t(i));
            ++perWorker[omp_get_thread_num()];
        } catch (const std::exception& e) {
#pragma omp critical
            if (failure.empty())
                failure = "block " + std::to_string(i) + ": " + e.what();
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    if (!failure.empty())
        throw DataError("scan failed at " + failure);

    report.elapsedSeconds = std::chrono::duration<double>(t1 - t0).count();
    report.gcups = report.elapsedSeconds > 0.0
                       ? double(report.totalResidues) * costs.modelLength /
                             report.elapsedSeconds / 1e9
                       : 0.0;
    report.blocksPerWorker = std::move(perWorker);
    for (auto& hits : perBlock)
        for (auto& h : hits)
            report.hits.push_back(std::move(h));
    return report;
}

ScanReport scan_sequences_s1(const ProfileHMM& hmm, const CostMatrix& costs,
                             const std::vector<SequenceRecord>& records, const QuantParams& q,
                             const ScanOptions& opt) {
    if (records.empty())
        throw DataError("no sequences to scan");
    // every sequence gets its own single-container block; the whole warp
    // serves one sequence at a time
    Geometry g = minimal_geometry(1, costs.modelLength);
    StripedProfile sp = build_striped(costs, g);
    KernelParams kp = make_kernel_params(hmm, sp, g, q, opt);

    ScanReport report;
    report.alg = opt.alg;
    report.geometry = g;
    report.workers = opt.workers;
    report.blockCount = records.size();
    report.totalSequences = records.size();

    const int64_t n = int64_t(records.size());
    std::vector<HitResult> hits(n);
    std::string failure;
    auto t0 = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(static) num_threads(opt.workers)
    for (int64_t i = 0; i < n; ++i) {
        try {
            BlockSet one = pack_blocks({records[i]}, 1, 1);
            auto h = scan_block(kp, one, 0);
            if (h.size() != 1)
                throw DataError("expected exactly one hit");
            hits[i] = std::move(h[0]);
            hits[i].block = uint32_t(i);
        } catch (const std::exception& e) {
#pragma omp critical
            if (failure.empty())
                failure = "sequence " + records[i].id + ": " + e.what();
        }
    }
    auto t1 = std::chrono::steady_clock::now();
    if (!failure.empty())
        throw DataError("scan failed at " + failure);

    for (const auto& r : records)
        report.totalResidues += r.residues.size();
    report.elapsedSeconds = std::chrono::duration<double>(t1 - t0).count();
    report.gcups = report.elapsedSeconds > 0.0
                       ? double(report.totalResidues) * costs.modelLength /
                             report.elapsedSeconds / 1e9
                       : 0.0;
    report.hits = std::move(hits);
    return report;
}

PipelineReport filter_pipeline(const ProfileHMM& hmm, const CostMatrix& costs, const BlockSet& bs,
                               double threshold, const QuantParams& q, const ScanOptions& opt,
                               const Geometry& ssvGeometry, const Geometry& msvGeometry) {
    if (threshold < 0.0 || threshold > 1.0)
        throw ContractError("pipeline threshold must lie in [0,1]");
    PipelineReport rep;
    rep.threshold = threshold;

    ScanOptions ssvOpt = opt;
    ssvOpt.alg = Algorithm::Ssv;
    ScanReport ssv = scan_database(hmm, costs, bs, ssvGeometry, q, ssvOpt);
    rep.ssvScanned = ssv.hits.size();
    rep.ssvSeconds = ssv.elapsedSeconds;

    std::vector<SequenceRecord> all = reconstruct_sequences(bs);
    std::map<std::string, const SequenceRecord*> byId;
    for (const auto& r : all)
        byId[r.id] = &r;

    std::vector<SequenceRecord> survivors;
    for (const auto& h : ssv.hits) {
        if (h.pValue <= threshold || h.overflow) {
            auto it = byId.find(h.seqId);
            if (it == byId.end())
                throw DataError("pipeline: hit for unknown sequence " + h.seqId);
            survivors.push_back(*it->second);
        }
    }
    rep.msvRescored = survivors.size();

    std::map<std::string, HitResult> msvById;
    if (!survivors.empty()) {
        uint64_t blocks = std::max<uint64_t>(1, (survivors.size() + 127) / 128);
        BlockSet rescored = pack_blocks(survivors, blocks, 128);
        ScanOptions msvOpt = opt;
        msvOpt.alg = Algorithm::Msv;
        ScanReport msv = scan_database(hmm, costs, rescored, msvGeometry, q, msvOpt);
        rep.msvSeconds = msv.elapsedSeconds;
        for (auto& h : msv.hits)
            msvById[h.seqId] = std::move(h);
    }

    for (const auto& h : ssv.hits) {
        if (!(h.pValue <= threshold || h.overflow))
            continue;
        const HitResult& m = msvById.at(h.seqId);
        PipelineHit ph;
        ph.seqId = h.seqId;
        ph.seqLen = h.seqLen;
        ph.ssvRaw = h.raw;
        ph.ssvBits = h.bits;
        ph.ssvPValue = h.pValue;
        ph.ssvOverflow = h.overflow;
        ph.msvRaw = m.raw;
        ph.msvBits = m.bits;
        ph.msvPValue = m.pValue;
        ph.msvOverflow = m.overflow;
        rep.survivors.push_back(std::move(ph));
    }
    rep.ssvHits = std::move(ssv.hits);
    return rep;
}

} // namespace lanehmm

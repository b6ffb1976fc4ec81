#include "lanehmm/seqdb.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include <zlib.h>

#include "lanehmm/errors.hpp"
#include "lanehmm/geometry.hpp"

namespace lanehmm {

uint64_t BlockSet::total_sequences() const {
    uint64_t n = 0;
    for (const auto& b : blocks)
        for (const auto& col : b.meta)
            n += col.size();
    return n;
}

uint64_t BlockSet::total_residues() const {
    uint64_t n = 0;
    for (const auto& b : blocks)
        for (const auto& col : b.meta)
            for (const auto& s : col)
                n += s.length;
    return n;
}

std::vector<SequenceRecord> ingest_fasta(std::istream& in) {
    std::vector<SequenceRecord> records;
    std::string line;
    bool sawAny = false;
    auto finish = [&](SequenceRecord& r, bool active) {
        if (!active)
            return;
        if (r.residues.empty())
            throw DataError("FASTA record '" + r.id + "' has an empty body");
        records.push_back(std::move(r));
    };
    SequenceRecord cur;
    bool active = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '>') {
            finish(cur, active);
            cur = SequenceRecord{};
            std::istringstream hs(line.substr(1));
            hs >> cur.id;
            if (cur.id.empty())
                cur.id = "seq" + std::to_string(records.size() + 1);
            active = true;
            sawAny = true;
        } else {
            if (!active)
                throw DataError("FASTA body before any '>' header");
            for (char c : line) {
                if (std::isspace(static_cast<unsigned char>(c)))
                    continue;
                cur.residues.push_back(encode_residue(c));
            }
        }
    }
    finish(cur, active);
    if (!sawAny)
        throw DataError("empty FASTA input");
    return records;
}

std::vector<SequenceRecord> ingest_fasta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open FASTA file: " + path);
    return ingest_fasta(in);
}

std::string to_fasta(const std::vector<SequenceRecord>& records) {
    std::ostringstream out;
    for (const auto& r : records) {
        out << '>' << r.id << '\n';
        for (size_t i = 0; i < r.residues.size(); ++i) {
            out << decode_residue(r.residues[i]);
            if ((i + 1) % 60 == 0)
                out << '\n';
        }
        if (r.residues.size() % 60 != 0)
            out << '\n';
    }
    return out.str();
}

namespace {

struct Container {
    std::vector<uint32_t> records;  // indices into the sorted record list
    uint64_t length = 0;            // residues plus one ending byte per record
};

} // namespace

BlockSet pack_blocks(std::vector<SequenceRecord> records, uint64_t blockCount, uint32_t lanes) {
    if (records.empty())
        throw DataError("pack_blocks: no sequences to pack");
    if (blockCount < 1)
        throw ContractError("pack_blocks: block count must be >= 1");
    if (!valid_lane_count(lanes))
        throw ContractError("pack_blocks: lanes must be a power of two in [1,128]");
    for (const auto& r : records)
        if (r.residues.empty())
            throw DataError("pack_blocks: sequence '" + r.id + "' is empty");

    // stable sort by length descending; ties keep input order
    std::stable_sort(records.begin(), records.end(),
                     [](const SequenceRecord& a, const SequenceRecord& b) {
                         return a.residues.size() > b.residues.size();
                     });

    const uint64_t lines = blockCount * lanes;
    std::vector<Container> containers(lines);

    // seed the containers with the first `lines` sequences
    const uint64_t seeded = std::min<uint64_t>(lines, records.size());
    for (uint64_t x = 0; x < seeded; ++x) {
        containers[x].records.push_back(uint32_t(x));
        containers[x].length = records[x].residues.size() + 1;
    }
    uint64_t maxLen = 0;
    for (const auto& c : containers)
        maxLen = std::max(maxLen, c.length);

    // distribute the rest: scan from the last-used position downward; on
    // reaching the bottom, force-attach to the last container and let the
    // refreshed total raise maxLen
    int64_t ptr = int64_t(lines);
    for (uint64_t y = seeded; y < records.size(); ++y) {
        const uint64_t need = records[y].residues.size() + 1;
        int64_t attached = -1;
        for (;;) {
            --ptr;
            if (ptr < 0) {
                ptr = int64_t(lines);
                attached = ptr - 1;
                break;
            }
            if (containers[ptr].length + need <= maxLen) {
                attached = ptr;
                break;
            }
        }
        containers[attached].records.push_back(uint32_t(y));
        containers[attached].length += need;
        maxLen = std::max(maxLen, containers[attached].length);
    }

    BlockSet bs;
    bs.lanes = lanes;
    bs.blocks.resize(blockCount);
    for (uint64_t i = 0; i < blockCount; ++i) {
        Block& blk = bs.blocks[i];
        uint64_t m = 0;
        for (uint32_t j = 0; j < lanes; ++j)
            m = std::max(m, containers[i * lanes + j].length);
        blk.rows = m;
        blk.columns.resize(lanes);
        blk.meta.resize(lanes);
        for (uint32_t j = 0; j < lanes; ++j) {
            const Container& c = containers[i * lanes + j];
            auto& col = blk.columns[j];
            col.reserve(m);
            for (uint32_t ri : c.records) {
                const auto& rec = records[ri];
                col.insert(col.end(), rec.residues.begin(), rec.residues.end());
                col.push_back(kEndingCode);
                blk.meta[j].push_back({rec.id, rec.residues.size()});
            }
            col.resize(m, kPaddingCode);
        }
    }
    return bs;
}

BalanceStats balance_stats(const BlockSet& bs) {
    BalanceStats st;
    const size_t n = bs.blocks.size();
    if (n == 0)
        return st;
    std::vector<double> ms, endings;
    ms.reserve(n);
    endings.reserve(n);
    uint64_t padding = 0;
    for (const auto& b : bs.blocks) {
        ms.push_back(double(b.rows));
        uint64_t e = 0, used = 0;
        for (const auto& col : b.meta) {
            e += col.size();
            for (const auto& s : col)
                used += s.length + 1;
        }
        endings.push_back(double(e));
        padding += b.rows * b.columns.size() - used;
        st.totalSeqs += e;
    }
    st.totalResidues = bs.total_residues();
    auto mean = [](const std::vector<double>& v) {
        return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    };
    auto sdev = [&](const std::vector<double>& v, double mu) {
        double acc = 0;
        for (double x : v)
            acc += (x - mu) * (x - mu);
        return std::sqrt(acc / double(v.size()));
    };
    st.avgM = mean(ms);
    st.sdM = sdev(ms, st.avgM);
    st.avgEndings = mean(endings);
    st.sdEndings = sdev(endings, st.avgEndings);
    st.prr = st.totalResidues ? double(padding) / double(st.totalResidues) : 0.0;
    return st;
}

std::vector<SequenceRecord> reconstruct_sequences(const BlockSet& bs) {
    std::vector<SequenceRecord> out;
    for (const auto& b : bs.blocks) {
        for (size_t c = 0; c < b.columns.size(); ++c) {
            const auto& col = b.columns[c];
            size_t pos = 0;
            for (const auto& meta : b.meta[c]) {
                SequenceRecord r;
                r.id = meta.id;
                r.residues.assign(col.begin() + pos, col.begin() + pos + meta.length);
                pos += meta.length;
                if (pos >= col.size() || col[pos] != kEndingCode)
                    throw DataError("column stream does not match its metadata");
                ++pos;
                out.push_back(std::move(r));
            }
        }
    }
    return out;
}

// --- block database -------------------------------------------------------
//
// Layout (little-endian):
//   "LHMM"  u16 version=1  u16 reserved  u32 lanes  u64 blockCount
//   u64 blockOffset[blockCount]            (absolute file offsets)
//   per block: u64 rows, u32 columnCount,
//              per column: u32 seqCount, { u32 idLen, id bytes, u64 seqLen }*
//              payload: columnCount * rows bytes (column-major)
//              u32 crc32 of the payload

namespace {

template <typename T>
void put(std::string& out, T v) {
    for (size_t i = 0; i < sizeof(T); ++i)
        out.push_back(char(uint8_t(uint64_t(v) >> (8 * i))));
}

template <typename T>
T get(const std::string& in, size_t& pos) {
    if (pos + sizeof(T) > in.size())
        throw DataError("block database truncated");
    uint64_t v = 0;
    for (size_t i = 0; i < sizeof(T); ++i)
        v |= uint64_t(uint8_t(in[pos + i])) << (8 * i);
    pos += sizeof(T);
    return T(v);
}

} // namespace

void write_block_db(const BlockSet& bs, const std::string& path) {
    std::string out;
    out += "LHMM";
    put<uint16_t>(out, 1);
    put<uint16_t>(out, 0);
    put<uint32_t>(out, bs.lanes);
    put<uint64_t>(out, bs.blocks.size());
    size_t offsetTable = out.size();
    for (size_t i = 0; i < bs.blocks.size(); ++i)
        put<uint64_t>(out, 0);

    std::vector<uint64_t> offsets(bs.blocks.size());
    for (size_t i = 0; i < bs.blocks.size(); ++i) {
        const Block& b = bs.blocks[i];
        offsets[i] = out.size();
        put<uint64_t>(out, b.rows);
        put<uint32_t>(out, uint32_t(b.columns.size()));
        for (size_t c = 0; c < b.columns.size(); ++c) {
            put<uint32_t>(out, uint32_t(b.meta[c].size()));
            for (const auto& s : b.meta[c]) {
                put<uint32_t>(out, uint32_t(s.id.size()));
                out += s.id;
                put<uint64_t>(out, s.length);
            }
        }
        uLong crc = crc32(0L, Z_NULL, 0);
        for (const auto& col : b.columns) {
            out.append(reinterpret_cast<const char*>(col.data()), col.size());
            crc = crc32(crc, col.data(), uInt(col.size()));
        }
        put<uint32_t>(out, uint32_t(crc));
    }
    for (size_t i = 0; i < bs.blocks.size(); ++i)
        for (size_t k = 0; k < 8; ++k)
            out[offsetTable + i * 8 + k] = char(uint8_t(offsets[i] >> (8 * k)));

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw DataError("cannot open block database for writing: " + path);
    f.write(out.data(), std::streamsize(out.size()));
    if (!f)
        throw DataError("failed to write block database: " + path);
}

BlockSet read_block_db(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw DataError("cannot open block database: " + path);
    std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    size_t pos = 0;
    if (in.size() < 4 || in.compare(0, 4, "LHMM") != 0)
        throw DataError("bad magic: not an LHMM block database");
    pos = 4;
    uint16_t version = get<uint16_t>(in, pos);
    if (version != 1)
        throw DataError("unsupported block database version " + std::to_string(version));
    get<uint16_t>(in, pos);
    BlockSet bs;
    bs.lanes = get<uint32_t>(in, pos);
    if (!valid_lane_count(bs.lanes))
        throw DataError("block database has invalid lane count");
    uint64_t blockCount = get<uint64_t>(in, pos);
    std::vector<uint64_t> offsets(blockCount);
    for (auto& o : offsets)
        o = get<uint64_t>(in, pos);

    bs.blocks.resize(blockCount);
    for (uint64_t i = 0; i < blockCount; ++i) {
        pos = offsets[i];
        if (pos > in.size())
            throw DataError("block database truncated");
        Block& b = bs.blocks[i];
        b.rows = get<uint64_t>(in, pos);
        uint32_t cols = get<uint32_t>(in, pos);
        if (cols != bs.lanes)
            throw DataError("block " + std::to_string(i) + " has wrong column count");
        b.columns.resize(cols);
        b.meta.resize(cols);
        for (uint32_t c = 0; c < cols; ++c) {
            uint32_t nseq = get<uint32_t>(in, pos);
            b.meta[c].resize(nseq);
            for (auto& s : b.meta[c]) {
                uint32_t idLen = get<uint32_t>(in, pos);
                if (pos + idLen > in.size())
                    throw DataError("block database truncated");
                s.id = in.substr(pos, idLen);
                pos += idLen;
                s.length = get<uint64_t>(in, pos);
            }
        }
        uLong crc = crc32(0L, Z_NULL, 0);
        for (uint32_t c = 0; c < cols; ++c) {
            if (pos + b.rows > in.size())
                throw DataError("block database truncated");
            b.columns[c].assign(in.begin() + pos, in.begin() + pos + b.rows);
            crc = crc32(crc, b.columns[c].data(), uInt(b.rows));
            pos += b.rows;
        }
        uint32_t stored = get<uint32_t>(in, pos);
        if (stored != uint32_t(crc))
            throw DataError("checksum failure in block " + std::to_string(i));
    }
    return bs;
}

} // namespace lanehmm

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lanehmm/alphabet.hpp"
#include "lanehmm/geometry.hpp"

namespace lanehmm {

struct SequenceRecord {
    std::string id;
    std::vector<uint8_t> residues;  // codes 0..20, never empty
};

struct ColumnSequence {
    std::string id;
    uint64_t length = 0;

    bool operator==(const ColumnSequence&) const = default;
};

// One warp-based sequence data block: S container columns padded to a common
// height M. A container column is the concatenation of whole sequences, each
// followed by one '@' ending byte, then '#' padding up to M. In the warp's
// 128-byte row view, container j sits at byte-column j * (128/S); the
// remaining byte-columns read as '#'.
struct Block {
    uint64_t rows = 0;                               // M_i
    std::vector<std::vector<uint8_t>> columns;       // S columns, each rows bytes
    std::vector<std::vector<ColumnSequence>> meta;   // per column, in order

    bool operator==(const Block&) const = default;
};

struct BlockSet {
    uint32_t lanes = 0;  // S the set was packed for
    std::vector<Block> blocks;

    static constexpr uint8_t kEnding = kEndingCode;
    static constexpr uint8_t kPadding = kPaddingCode;

    uint32_t container_width() const { return kWarpBytes / lanes; }
    // Virtual byte-column of container j inside the 128-byte row view.
    uint32_t virtual_column(uint32_t container) const { return container * container_width(); }

    uint64_t total_sequences() const;
    uint64_t total_residues() const;

    bool operator==(const BlockSet&) const = default;
};

struct BalanceStats {
    double avgM = 0.0;
    double sdM = 0.0;
    double avgEndings = 0.0;
    double sdEndings = 0.0;
    double prr = 0.0;  // padding bytes / real residue bytes
    uint64_t totalSeqs = 0;
    uint64_t totalResidues = 0;
};

// --- operations ---------------------------------------------------------

std::vector<SequenceRecord> ingest_fasta(std::istream& in);
std::vector<SequenceRecord> ingest_fasta_file(const std::string& path);
std::string to_fasta(const std::vector<SequenceRecord>& records);

// Packs records into `blockCount` blocks of `lanes` container columns each,
// following the reformatting algorithm: records are sorted by length
// descending (stable), the first blockCount*lanes seed the containers, and
// every later record scans from the last-used container downward for one
// whose accumulated length plus the record and its ending byte stays within
// maxLen; when the scan reaches the bottom it is force-attached to the last
// container and maxLen is refreshed.
BlockSet pack_blocks(std::vector<SequenceRecord> records, uint64_t blockCount, uint32_t lanes);

BalanceStats balance_stats(const BlockSet& bs);

// Splits the columns of a BlockSet back into the stored sequences.
std::vector<SequenceRecord> reconstruct_sequences(const BlockSet& bs);

// Binary "LHMM" block database, little-endian throughout, 64-bit offsets,
// CRC32 per block payload.
void write_block_db(const BlockSet& bs, const std::string& path);
BlockSet read_block_db(const std::string& path);

} // namespace lanehmm

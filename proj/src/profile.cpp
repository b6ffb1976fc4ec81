#include "lanehmm/profile.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lanehmm/errors.hpp"

namespace lanehmm {

void QuantParams::validate() const {
    if (!(scale > 0.0))
        throw ContractError("quant scale must be positive");
    if (int(base) + int(dbias) > 255)
        throw ContractError("quant base + dbias must fit in a byte");
}

namespace {

bool parse_double(const std::string& tok, double& out) {
    // from_chars for doubles is incomplete on some libstdc++ versions
    try {
        size_t pos = 0;
        out = std::stod(tok, &pos);
        return pos == tok.size();
    } catch (...) {
        return false;
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok)
        out.push_back(tok);
    return out;
}

} // namespace

// Profile text grammar (documented in docs/formats.md):
//   NAME <identifier>
//   LENG <node count>
//   STATS <lambda> <tau>
//   <node index> <20 match log-odds, bits>     repeated LENG times, 1-based
//   //
ProfileHMM parse_profile(const std::string& text) {
    ProfileHMM hmm;
    std::istringstream in(text);
    std::string line;
    long lineNo = 0;
    bool haveName = false, haveLeng = false, haveStats = false, closed = false;
    uint32_t nextNode = 1;

    while (std::getline(in, line)) {
        ++lineNo;
        auto toks = split_ws(line);
        if (toks.empty())
            continue;
        if (toks[0] == "//") {
            closed = true;
            break;
        }
        if (toks[0] == "NAME") {
            if (toks.size() != 2)
                throw ParseError("NAME expects one identifier", lineNo);
            hmm.name = toks[1];
            haveName = true;
        } else if (toks[0] == "LENG") {
            unsigned long v = 0;
            if (toks.size() != 2)
                throw ParseError("LENG expects one integer", lineNo);
            auto [p, ec] = std::from_chars(toks[1].data(), toks[1].data() + toks[1].size(), v);
            if (ec != std::errc() || p != toks[1].data() + toks[1].size() || v < 1)
                throw ParseError("LENG must be a positive integer", lineNo);
            hmm.length = uint32_t(v);
            hmm.matchScores.reserve(size_t(v) * kAminoCount);
            haveLeng = true;
        } else if (toks[0] == "STATS") {
            if (toks.size() != 3 || !parse_double(toks[1], hmm.lambda) ||
                !parse_double(toks[2], hmm.tau))
                throw ParseError("STATS expects <lambda> <tau>", lineNo);
            if (!(hmm.lambda > 0.0))
                throw ParseError("lambda must be positive", lineNo);
            haveStats = true;
        } else {
            if (!haveLeng)
                throw ParseError("emission row before LENG header", lineNo);
            if (toks.size() != 1 + kAminoCount)
                throw ParseError("emission row expects node index and 20 scores", lineNo);
            unsigned long idx = 0;
            auto [p, ec] = std::from_chars(toks[0].data(), toks[0].data() + toks[0].size(), idx);
            if (ec != std::errc() || p != toks[0].data() + toks[0].size())
                throw ParseError("emission row must start with the node index", lineNo);
            if (idx != nextNode)
                throw ParseError("node index out of order, expected " + std::to_string(nextNode),
                                 lineNo);
            if (idx > hmm.length)
                throw ParseError("row count mismatch: more rows than LENG", lineNo);
            for (int a = 0; a < kAminoCount; ++a) {
                double s = 0.0;
                if (!parse_double(toks[1 + a], s) || !std::isfinite(s))
                    throw ParseError("non-numeric emission score", lineNo);
                hmm.matchScores.push_back(s);
            }
            ++nextNode;
        }
    }
    if (!haveName)
        throw ParseError("missing NAME header");
    if (!haveLeng)
        throw ParseError("missing LENG header");
    if (!haveStats)
        throw ParseError("missing STATS header");
    if (!closed)
        throw ParseError("missing // terminator", lineNo);
    if (nextNode != hmm.length + 1)
        throw ParseError("row count mismatch: LENG " + std::to_string(hmm.length) + " but " +
                         std::to_string(nextNode - 1) + " rows");
    return hmm;
}

std::string serialize_profile(const ProfileHMM& hmm) {
    std::ostringstream out;
    char buf[64];
    out << "NAME " << hmm.name << "\n";
    out << "LENG " << hmm.length << "\n";
    std::snprintf(buf, sizeof buf, "STATS %.17g %.17g\n", hmm.lambda, hmm.tau);
    out << buf;
    for (uint32_t j = 1; j <= hmm.length; ++j) {
        out << j;
        for (int a = 0; a < kAminoCount; ++a) {
            std::snprintf(buf, sizeof buf, " %.17g", hmm.score(j, a));
            out << buf;
        }
        out << "\n";
    }
    out << "//\n";
    return out.str();
}

CostMatrix quantize_emissions(const ProfileHMM& hmm, const QuantParams& q) {
    q.validate();
    CostMatrix cm;
    cm.modelLength = hmm.length;
    cm.bytes.resize(size_t(hmm.length) * (kAminoCount + 1));
    for (uint32_t j = 1; j <= hmm.length; ++j) {
        uint8_t* row = cm.bytes.data() + size_t(j - 1) * (kAminoCount + 1);
        unsigned sum = 0;
        for (int a = 0; a < kAminoCount; ++a) {
            double c = std::round(double(q.dbias) - q.scale * hmm.score(j, a));
            if (c < 0.0)
                c = 0.0;
            if (c > 255.0)
                c = 255.0;
            row[a] = uint8_t(c);
            sum += row[a];
        }
        // unknown residue: per-node mean cost, rounded up
        row[kAminoCount] = uint8_t((sum + kAminoCount - 1) / kAminoCount);
    }
    return cm;
}

StripedProfile build_striped(const CostMatrix& costs, const Geometry& g) {
    if (g.capacity() < costs.modelLength)
        throw DataError("geometry capacity " + std::to_string(g.capacity()) +
                        " below model length " + std::to_string(costs.modelLength));
    StripedProfile sp;
    sp.geom = g;
    sp.modelLength = costs.modelLength;
    const uint32_t H = g.rows;

    auto stripe_cost = [&](uint32_t stripe, uint32_t h, uint8_t code) -> uint8_t {
        uint64_t node0 = uint64_t(stripe) * H + h;  // node = node0 + 1
        if (node0 >= costs.modelLength)
            return 0xff;
        return costs.at(uint32_t(node0 + 1), code);
    };

    if (g.lanes <= 32) {
        const uint32_t L = g.group;
        sp.words.resize(size_t(H) * kAlphabetSize * L);
        for (uint32_t h = 0; h < H; ++h)
            for (uint32_t r = 0; r < uint32_t(kAlphabetSize); ++r)
                for (uint32_t oig = 0; oig < L; ++oig) {
                    uint32_t w = 0;
                    for (uint32_t b = 0; b < 4; ++b)
                        w |= uint32_t(stripe_cost(4 * oig + b, h, uint8_t(r))) << (8 * b);
                    sp.words[size_t(h) * kAlphabetSize * L + size_t(r) * L + oig] = w;
                }
    } else if (g.lanes == 64) {
        sp.pair16.resize(size_t(H) * kAlphabetSize);
        for (uint32_t h = 0; h < H; ++h)
            for (uint32_t r = 0; r < uint32_t(kAlphabetSize); ++r)
                sp.pair16[size_t(h) * kAlphabetSize + r] =
                    uint16_t(stripe_cost(0, h, uint8_t(r))) |
                    uint16_t(stripe_cost(1, h, uint8_t(r))) << 8;
    } else {
        sp.single8.resize(size_t(H) * kAlphabetSize);
        for (uint32_t h = 0; h < H; ++h)
            for (uint32_t r = 0; r < uint32_t(kAlphabetSize); ++r)
                sp.single8[size_t(h) * kAlphabetSize + r] = stripe_cost(0, h, uint8_t(r));
    }
    return sp;
}

uint32_t gather_emission(const StripedProfile& sp, uint32_t oig, uint32_t h, uint32_t r) {
    const Geometry& g = sp.geom;
    if (g.lanes <= 32) {
        if (r >= uint32_t(kAlphabetSize))
            throw ContractError("residue code out of alphabet");
        return sp.words[size_t(h) * kAlphabetSize * g.group + size_t(r) * g.group + oig];
    }
    if (g.lanes == 64) {
        uint32_t r0 = r & 0xffu, r1 = (r >> 8) & 0xffu;
        if (r0 >= uint32_t(kAlphabetSize) || r1 >= uint32_t(kAlphabetSize))
            throw ContractError("residue code out of alphabet");
        const uint16_t* row = sp.pair16.data() + size_t(h) * kAlphabetSize;
        return uint32_t(row[r0]) | uint32_t(row[r1]) << 16;
    }
    const uint8_t* row = sp.single8.data() + size_t(h) * kAlphabetSize;
    uint32_t w = 0;
    for (uint32_t b = 0; b < 4; ++b) {
        uint32_t rb = (r >> (8 * b)) & 0xffu;
        if (rb >= uint32_t(kAlphabetSize))
            throw ContractError("residue code out of alphabet");
        w |= uint32_t(row[rb]) << (8 * b);
    }
    return w;
}

} // namespace lanehmm

#include <doctest.h>

#include <algorithm>
#include <random>

#include "lanehmm/vwarp.hpp"

using namespace lanehmm;
using namespace lanehmm::vwarp;

namespace {

// 4-way scalar oracle for the packed ops
uint32_t scalar4(uint32_t a, uint32_t b, uint8_t (*op)(uint8_t, uint8_t)) {
    uint32_t out = 0;
    for (int i = 0; i < 4; ++i) {
        uint8_t x = uint8_t(a >> (8 * i)), y = uint8_t(b >> (8 * i));
        out |= uint32_t(op(x, y)) << (8 * i);
    }
    return out;
}

uint8_t sc_add(uint8_t a, uint8_t b) {
    int s = a + b;
    return uint8_t(s > 255 ? 255 : s);
}
uint8_t sc_sub(uint8_t a, uint8_t b) {
    return a > b ? uint8_t(a - b) : 0;
}
uint8_t sc_max(uint8_t a, uint8_t b) {
    return a > b ? a : b;
}

Warp tagged_warp() {
    // unique byte tag per cell: lane*4 + byte (0..127)
    Warp w{};
    for (uint32_t l = 0; l < kWarpLanes; ++l)
        for (uint32_t b = 0; b < 4; ++b)
            w[l] |= uint32_t(4 * l + b) << (8 * b);
    return w;
}

} // namespace

TEST_CASE("packed saturating ops match the per-byte scalar oracle") {
    CHECK(add_sat4(0x12345678u, 0) == 0x12345678u);
    CHECK(add_sat4(0xFF000102u, 0x01010101u) == 0xFF010203u);
    CHECK(sub_sat4(0x00000000u, 0x41424344u) == 0u);
    CHECK(sub_sat4(0x05040302u, 0x01010101u) == 0x04030201u);
    CHECK(max4(0x01020304u, 0x04030201u) == 0x04030304u);

    std::mt19937_64 rng(20240810);
    for (int i = 0; i < 1000000; ++i) {
        uint32_t a = uint32_t(rng()), b = uint32_t(rng());
        REQUIRE(add_sat4(a, b) == scalar4(a, b, sc_add));
        REQUIRE(sub_sat4(a, b) == scalar4(a, b, sc_sub));
        REQUIRE(max4(a, b) == scalar4(a, b, sc_max));
    }
}

TEST_CASE("packed op algebra") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        uint32_t a = uint32_t(rng()), b = uint32_t(rng()), c = uint32_t(rng());
        CHECK(add_sat4(a, b) == add_sat4(b, a));
        CHECK(sub_sat4(a, a) == 0u);
        CHECK(max4(a, a) == a);
        CHECK(max4(max4(a, b), c) == max4(a, max4(b, c)));
    }
}

TEST_CASE("shuffle_idx: identity, rotation, segment isolation") {
    Warp w = tagged_warp();
    std::array<uint8_t, kWarpLanes> self{};
    for (uint32_t i = 0; i < kWarpLanes; ++i)
        self[i] = uint8_t(i);
    CHECK(shuffle_idx(w, self, 32) == w);

    std::array<uint8_t, kWarpLanes> rot{};
    for (uint32_t i = 0; i < kWarpLanes; ++i)
        rot[i] = uint8_t((i + 31) % 32);
    Warp r = shuffle_idx(w, rot, 32);
    for (uint32_t i = 0; i < kWarpLanes; ++i)
        CHECK(r[i] == w[(i + 31) % 32]);

    // segment width 2: a lane only ever receives words of its own pair
    std::mt19937_64 rng(3);
    for (int t = 0; t < 64; ++t) {
        std::array<uint8_t, kWarpLanes> src{};
        for (auto& s : src)
            s = uint8_t(rng() % 32);
        Warp out = shuffle_idx(w, src, 2);
        for (uint32_t i = 0; i < kWarpLanes; ++i) {
            uint32_t sourceLane = (out[i] & 0xffu) / 4;  // byte-0 tag identifies the lane
            CHECK(sourceLane / 2 == i / 2);
        }
    }
    CHECK_THROWS_AS(shuffle_idx(w, self, 3), ContractError);
}

TEST_CASE("shuffle_bfly: identity, involution, pair swap") {
    Warp w = tagged_warp();
    CHECK(shuffle_bfly(w, 0) == w);
    for (uint32_t m = 1; m < 32; ++m) {
        Warp once = shuffle_bfly(w, m);
        CHECK(shuffle_bfly(once, m) == w);
    }
    Warp s = shuffle_bfly(w, 1);
    for (uint32_t i = 0; i < kWarpLanes; ++i)
        CHECK(s[i] == w[i ^ 1]);
}

TEST_CASE("reorder moves every stripe up by one and injects negInf at stripe 0") {
    struct Cell {
        uint32_t seq, stripe;
    };
    auto cell_of = [](const Geometry& g, uint32_t lane, uint32_t byte) -> Cell {
        if (g.lanes <= 32) {
            uint32_t group = lane / g.group;
            return {group, (lane % g.group) * 4 + byte};
        }
        if (g.lanes == 64)
            return {lane * 2 + byte / 2, byte % 2};
        return {lane * 4 + byte, 0u};
    };

    for (uint32_t S : {1u, 2u, 4u, 8u, 16u, 32u, 64u, 128u}) {
        Geometry g = make_geometry(S, 2);
        Warp w = tagged_warp();
        Warp out = reorder(g, w, 0x00);
        for (uint32_t lane = 0; lane < kWarpLanes; ++lane) {
            for (uint32_t b = 0; b < 4; ++b) {
                Cell dst = cell_of(g, lane, b);
                uint8_t got = byte_of(out[lane], b);
                if (dst.stripe == 0) {
                    REQUIRE(got == 0x00);
                    continue;
                }
                // source cell: same sequence, one stripe lower
                bool found = false;
                for (uint32_t sl = 0; sl < kWarpLanes && !found; ++sl)
                    for (uint32_t sb = 0; sb < 4 && !found; ++sb) {
                        Cell src = cell_of(g, sl, sb);
                        if (src.seq == dst.seq && src.stripe + 1 == dst.stripe) {
                            REQUIRE(got == byte_of(w[sl], sb));
                            found = true;
                        }
                    }
                REQUIRE(found);
            }
        }
    }
}

TEST_CASE("reorder worked examples") {
    Warp w{};
    w.fill(0xAABBCCDDu);
    CHECK(reorder(make_geometry(128, 2), w, 0x00)[5] == 0x00000000u);
    CHECK(reorder(make_geometry(128, 2), w, 0x80)[5] == 0x80808080u);
    CHECK(reorder(make_geometry(32, 2), w, 0x00)[7] == 0xBBCCDD00u);
    CHECK(reorder(make_geometry(64, 2), w, 0x80)[9] == 0xBB80DD80u);
    // paper-literal wrap keeps the top byte cycling back to stripe 0
    CHECK(reorder(make_geometry(32, 2), w, 0x00, ReorderMode::PaperWrap)[0] == 0xBBCCDDAAu);
    CHECK(reorder(make_geometry(64, 2), w, 0x80, ReorderMode::PaperWrap)[0] == 0xBBAADDCCu);
}

TEST_CASE("max_reduce broadcasts the group maximum") {
    // byte cell i holds value i (0..127), the Fig.5-style labeling
    Warp w = tagged_warp();
    SUBCASE("S=16: every group byte equals its true maximum") {
        Geometry g = make_geometry(16, 2);
        Warp out = max_reduce(g, w);
        for (uint32_t group = 0; group < 16; ++group) {
            uint8_t expect = uint8_t(8 * group + 7);
            for (uint32_t l = 2 * group; l < 2 * group + 2; ++l)
                for (uint32_t b = 0; b < 4; ++b)
                    CHECK(byte_of(out[l], b) == expect);
        }
    }
    SUBCASE("S=128 is the identity") {
        CHECK(max_reduce(make_geometry(128, 2), w) == w);
    }
    SUBCASE("S=32 worked example") {
        Warp v{};
        v.fill(0x01400207u);
        Warp out = max_reduce(make_geometry(32, 2), v);
        CHECK(out[3] == 0x40404040u);
    }
    SUBCASE("S=64 reduces within each half only") {
        Warp v{};
        v[0] = 0x11990307u;  // halves (0x03,0x07) and (0x11,0x99)
        Warp out = max_reduce(make_geometry(64, 2), v);
        CHECK(out[0] == 0x99990707u);
    }
    SUBCASE("random warps match a scalar group max for S<=32") {
        std::mt19937_64 rng(99);
        for (uint32_t S : {1u, 2u, 4u, 8u, 16u, 32u}) {
            Geometry g = make_geometry(S, 2);
            for (int t = 0; t < 200; ++t) {
                Warp v{};
                for (auto& x : v)
                    x = uint32_t(rng());
                Warp out = max_reduce(g, v);
                for (uint32_t group = 0; group < S; ++group) {
                    uint8_t expect = 0;
                    for (uint32_t l = group * g.group; l < (group + 1) * g.group; ++l)
                        for (uint32_t b = 0; b < 4; ++b)
                            expect = std::max(expect, byte_of(v[l], b));
                    for (uint32_t l = group * g.group; l < (group + 1) * g.group; ++l)
                        for (uint32_t b = 0; b < 4; ++b)
                            REQUIRE(byte_of(out[l], b) == expect);
                }
            }
        }
    }
}

TEST_CASE("extract_res field selection") {
    Warp row{};
    row[5] = 0xAABBCCDDu;
    CHECK(extract_res(row, 5, 0, 32) == 0x000000DDu);
    CHECK(extract_res(row, 5, 1, 32) == 0x000000CCu);
    CHECK(extract_res(row, 5, 0, 64) == 0x0000CCDDu);
    CHECK(extract_res(row, 5, 1, 64) == 0x0000AABBu);
    CHECK(extract_res(row, 5, 0, 128) == 0xAABBCCDDu);
    CHECK_THROWS_AS(extract_res(row, 32, 0, 32), ContractError);
}

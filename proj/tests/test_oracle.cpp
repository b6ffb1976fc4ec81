#include <doctest.h>

#include <random>

#include "brute_force.hpp"
#include "lanehmm/oracle.hpp"
#include "lanehmm/synth.hpp"

using namespace lanehmm;

namespace {

CostMatrix direct_costs(uint32_t m, uint8_t fill) {
    CostMatrix cm;
    cm.modelLength = m;
    cm.bytes.assign(size_t(m) * (kAminoCount + 1), fill);
    return cm;
}

} // namespace

TEST_CASE("scalar_msv: empty sequence scores the floor") {
    QuantParams q;
    CostMatrix cm = direct_costs(4, 3);
    std::vector<uint8_t> empty;
    CHECK(oracle::scalar_msv(cm, empty, q) == 0);
    CHECK(oracle::scalar_ssv(cm, empty, q) == 0x80);
}

TEST_CASE("scalar_msv: one-node, one-residue case checked by hand") {
    // base 195, moveCost(1) = round(3*log2(4/3)) = 1, so B = 194;
    // v = (194 + 3) - cost
    QuantParams q;
    CostMatrix cm = direct_costs(1, 3);
    std::vector<uint8_t> seq{0};
    CHECK(oracle::scalar_msv(cm, seq, q) == 194);
    cm.bytes.assign(cm.bytes.size(), 197);
    CHECK(oracle::scalar_msv(cm, seq, q) == 0);
}

TEST_CASE("scalar_ssv: perfect two-step diagonal checked by hand") {
    // start 0x80, two cells each +dbias-0: 0x80 + 6 = 0x86
    QuantParams q;
    CostMatrix cm = direct_costs(2, 0xff);
    cm.bytes[size_t(0) * (kAminoCount + 1) + 0] = 0;  // node 1, amino 0
    cm.bytes[size_t(1) * (kAminoCount + 1) + 1] = 0;  // node 2, amino 1
    std::vector<uint8_t> seq{0, 1};
    CHECK(oracle::scalar_ssv(cm, seq, q) == 0x86);
}

TEST_CASE("scalar_ssv: all-invalid emissions stay at the floor") {
    QuantParams q;
    CostMatrix cm = direct_costs(3, 0xff);
    std::vector<uint8_t> seq{0, 5, 11, 19, 2};
    CHECK(oracle::scalar_ssv(cm, seq, q) == 0x80);
}

TEST_CASE("sequence_base and move_cost") {
    QuantParams q;
    CHECK(oracle::move_cost(0, q) == 0);
    CHECK(oracle::sequence_base(0, q) == q.base);
    CHECK(oracle::move_cost(1, q) == 1);   // round(3*log2(4/3))
    CHECK(oracle::move_cost(100, q) == 15);  // round(3*log2(103/3))
    CHECK(oracle::sequence_base(100, q) == q.base - 15);
}

TEST_CASE("oracle equals the exhaustive path enumeration on all tiny shapes") {
    QuantParams q;
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<int> costDist(0, 24);
    std::uniform_int_distribution<int> res(0, kAminoCount - 1);
    for (uint32_t m = 1; m <= 4; ++m) {
        for (uint64_t len = 0; len <= 6; ++len) {
            for (int t = 0; t < 60; ++t) {
                CostMatrix cm = direct_costs(m, 0);
                for (auto& b : cm.bytes)
                    b = uint8_t(t % 3 == 0 ? costDist(rng)
                                           : (t % 3 == 1 ? costDist(rng) * 10 : rng() % 256));
                std::vector<uint8_t> seq(len);
                for (auto& r : seq)
                    r = uint8_t(res(rng));
                REQUIRE(oracle::scalar_msv(cm, seq, q) == brute::msv_path_enumeration(cm, seq, q));
                REQUIRE(oracle::scalar_ssv(cm, seq, q) == brute::ssv_path_enumeration(cm, seq, q));
            }
        }
    }
}

TEST_CASE("path enumeration grounding holds under varied quant params") {
    std::mt19937_64 rng(556);
    std::uniform_int_distribution<int> res(0, kAminoCount - 1);
    for (QuantParams q : {QuantParams{3.0, 195, 3, 3, 3}, QuantParams{2.0, 240, 10, 1, 5},
                          QuantParams{3.0, 0, 0, 0, 0}}) {
        for (int t = 0; t < 120; ++t) {
            uint32_t m = 1 + uint32_t(rng() % 4);
            uint64_t len = rng() % 7;
            CostMatrix cm = direct_costs(m, 0);
            for (auto& b : cm.bytes)
                b = uint8_t(rng() % 64);
            std::vector<uint8_t> seq(len);
            for (auto& r : seq)
                r = uint8_t(res(rng));
            REQUIRE(oracle::scalar_msv(cm, seq, q) == brute::msv_path_enumeration(cm, seq, q));
            REQUIRE(oracle::scalar_ssv(cm, seq, q) == brute::ssv_path_enumeration(cm, seq, q));
        }
    }
}

TEST_CASE("msv raw dominates ssv raw under default params") {
    QuantParams q;
    std::mt19937_64 rng(77);
    for (int t = 0; t < 200; ++t) {
        uint32_t m = 1 + uint32_t(rng() % 60);
        ProfileHMM hmm = synth::random_profile(rng, m);
        CostMatrix cm = quantize_emissions(hmm, q);
        auto recs = synth::random_records(rng, 1, 1, 120);
        uint8_t msv = oracle::scalar_msv(cm, recs[0].residues, q);
        uint8_t ssv = oracle::scalar_ssv(cm, recs[0].residues, q);
        CHECK(msv >= ssv);
    }
}

TEST_CASE("oracle rejects sentinel codes") {
    QuantParams q;
    CostMatrix cm = direct_costs(2, 3);
    std::vector<uint8_t> bad{0, kEndingCode};
    CHECK_THROWS_AS(oracle::scalar_msv(cm, bad, q), ContractError);
}

#include "lanehmm/synth.hpp"

#include <algorithm>
#include <cmath>

namespace lanehmm::synth {

ProfileHMM random_profile(std::mt19937_64& rng, uint32_t modelLength) {
    ProfileHMM hmm;
    hmm.name = "synth" + std::to_string(modelLength);
    hmm.length = modelLength;
    hmm.lambda = 0.69;
    hmm.tau = 2.0;
    hmm.matchScores.resize(size_t(modelLength) * kAminoCount);
    std::normal_distribution<double> noise(-1.0, 1.5);
    std::uniform_int_distribution<int> pick(0, kAminoCount - 1);
    for (uint32_t j = 0; j < modelLength; ++j) {
        int consensus = pick(rng);
        for (int a = 0; a < kAminoCount; ++a) {
            double s = noise(rng);
            if (a == consensus)
                s += 3.0;
            hmm.matchScores[size_t(j) * kAminoCount + a] = std::clamp(s, -12.0, 8.0);
        }
    }
    return hmm;
}

std::vector<SequenceRecord> random_records(std::mt19937_64& rng, size_t count, uint64_t lenLo,
                                           uint64_t lenHi, const std::string& idPrefix) {
    std::uniform_int_distribution<uint64_t> lenDist(lenLo, lenHi);
    std::uniform_int_distribution<int> res(0, kAminoCount - 1);
    std::uniform_int_distribution<int> rare(0, 99);
    std::vector<SequenceRecord> out(count);
    for (size_t i = 0; i < count; ++i) {
        out[i].id = idPrefix + std::to_string(i);
        uint64_t len = lenDist(rng);
        out[i].residues.resize(len);
        for (auto& r : out[i].residues)
            r = rare(rng) == 0 ? kUnknownCode : uint8_t(res(rng));
    }
    return out;
}

void plant_motifs(std::mt19937_64& rng, const ProfileHMM& hmm, std::vector<SequenceRecord>& records,
                  double fraction) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto& rec : records) {
        if (coin(rng) > fraction)
            continue;
        uint64_t span = std::min<uint64_t>(rec.residues.size(), hmm.length);
        if (span == 0)
            continue;
        std::uniform_int_distribution<uint64_t> startDist(0, rec.residues.size() - span);
        uint64_t start = startDist(rng);
        std::uniform_int_distribution<uint32_t> nodeDist(1, uint32_t(hmm.length - span + 1));
        uint32_t node = nodeDist(rng);
        for (uint64_t i = 0; i < span; ++i) {
            int best = 0;
            for (int a = 1; a < kAminoCount; ++a)
                if (hmm.score(node + uint32_t(i), a) > hmm.score(node + uint32_t(i), best))
                    best = a;
            rec.residues[start + i] = uint8_t(best);
        }
    }
}

std::vector<SequenceRecord> lognormal_records(std::mt19937_64& rng, size_t count, double median,
                                              double sigma, uint64_t minLen) {
    std::lognormal_distribution<double> lenDist(std::log(median), sigma);
    std::uniform_int_distribution<int> res(0, kAminoCount - 1);
    std::vector<SequenceRecord> out(count);
    for (size_t i = 0; i < count; ++i) {
        out[i].id = "ln" + std::to_string(i);
        uint64_t len = std::max<uint64_t>(minLen, uint64_t(std::llround(lenDist(rng))));
        out[i].residues.resize(len);
        for (auto& r : out[i].residues)
            r = uint8_t(res(rng));
    }
    return out;
}

} // namespace lanehmm::synth

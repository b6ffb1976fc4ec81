#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lanehmm/profile.hpp"
#include "lanehmm/seqdb.hpp"

// Seeded synthetic inputs for verification, benchmarking and tests.
namespace lanehmm::synth {

ProfileHMM random_profile(std::mt19937_64& rng, uint32_t modelLength);

// Uniform random sequences over the 20 amino acids with an occasional
// unknown residue.
std::vector<SequenceRecord> random_records(std::mt19937_64& rng, size_t count, uint64_t lenLo,
                                           uint64_t lenHi, const std::string& idPrefix = "seq");

// Plants a high-scoring match of the profile into some records so P-values
// spread across the filter threshold.
void plant_motifs(std::mt19937_64& rng, const ProfileHMM& hmm, std::vector<SequenceRecord>& records,
                  double fraction);

// Log-normal lengths with the given median; sigma is the log-scale spread.
std::vector<SequenceRecord> lognormal_records(std::mt19937_64& rng, size_t count, double median,
                                              double sigma, uint64_t minLen = 1);

} // namespace lanehmm::synth

#pragma once

#include <cstdint>
#include <string_view>

namespace lanehmm {

// Emission tables address a 32-symbol extended alphabet: 20 amino acids,
// one collapsed "unknown" code for degenerate letters, the '@' ending and
// '#' padding sentinels used inside sequence blocks, and unused slots that
// always carry the invalid cost.
inline constexpr int kAminoCount = 20;
inline constexpr uint8_t kUnknownCode = 20;
inline constexpr uint8_t kEndingCode = 21;
inline constexpr uint8_t kPaddingCode = 22;
inline constexpr int kAlphabetSize = 32;

inline constexpr std::string_view kAminoLetters = "ACDEFGHIKLMNPQRSTVWY";

// Letter -> residue code. Case-insensitive; anything that is not one of the
// 20 canonical letters maps to kUnknownCode.
uint8_t encode_residue(char c);

// Residue code -> display letter ('X' for unknown, '@'/'#' for sentinels).
char decode_residue(uint8_t code);

} // namespace lanehmm

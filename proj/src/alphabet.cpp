#include "lanehmm/alphabet.hpp"

#include <array>
#include <cctype>

namespace lanehmm {

namespace {

std::array<uint8_t, 256> build_encode_table() {
    std::array<uint8_t, 256> t{};
    t.fill(kUnknownCode);
    for (int i = 0; i < kAminoCount; ++i) {
        unsigned char u = static_cast<unsigned char>(kAminoLetters[i]);
        t[u] = uint8_t(i);
        t[std::tolower(u)] = uint8_t(i);
    }
    return t;
}

const std::array<uint8_t, 256> kEncode = build_encode_table();

} // namespace

uint8_t encode_residue(char c) {
    return kEncode[static_cast<unsigned char>(c)];
}

char decode_residue(uint8_t code) {
    if (code < kAminoCount)
        return kAminoLetters[code];
    if (code == kEndingCode)
        return '@';
    if (code == kPaddingCode)
        return '#';
    return 'X';
}

} // namespace lanehmm

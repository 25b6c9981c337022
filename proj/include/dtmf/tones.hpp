// DTMF keypad tables and tone synthesis.
//
// Each keypad symbol is the sum of one low-group (row) and one
// high-group (column) sinusoid. The frequency assignment is the
// standard 4x4 grid:
//
//             1209 Hz  1336 Hz  1477 Hz  1633 Hz
//    697 Hz      1        2        3        A
//    770 Hz      4        5        6        B
//    852 Hz      7        8        9        C
//    941 Hz      *        0        #        D
//
// Synthesis is deterministic: both sinusoids start at phase zero and
// have unit amplitude, so clean samples always lie in [-2, 2].

#pragma once

#include <array>
#include <string>
#include <string_view>

#include "dtmf/signal.hpp"

namespace dtmf {

inline constexpr std::array<double, 4> kRowHz{697.0, 770.0, 852.0, 941.0};
inline constexpr std::array<double, 4> kColHz{1209.0, 1336.0, 1477.0, 1633.0};

inline constexpr std::array<std::array<char, 4>, 4> kKeypad{{
    {'1', '2', '3', 'A'},
    {'4', '5', '6', 'B'},
    {'7', '8', '9', 'C'},
    {'*', '0', '#', 'D'},
}};

// One keypad symbol with its row/column frequency pair in Hz.
struct DtmfSymbol {
    char glyph;
    double f_row;
    double f_col;
};

// The same pair as discrete-time angular frequencies, w = 2*pi*f/fs.
struct RadianPair {
    double w_row;
    double w_col;
    double fs;
};

bool is_symbol(char glyph);

// Grid position of a glyph; throws std::invalid_argument for unknown
// glyphs. row/col index into kRowHz/kColHz.
struct GridPos {
    int row;
    int col;
};
GridPos grid_position(char glyph);

DtmfSymbol symbol_frequencies(char glyph);

// Throws std::invalid_argument when fs does not satisfy fs > 2*f_col.
RadianPair radian_pair(char glyph, double fs);

// samples[n] = sin(w_row*n) + sin(w_col*n), n = 0..n_samples-1.
SignalBuffer synthesize_digit(char glyph, std::size_t n_samples, double fs);

// Tone bursts separated by exact-zero gaps, laid out by `timing`.
SignalBuffer synthesize_sequence(std::string_view glyphs,
                                 const TimingProfile& timing, double fs);

// Drops '-' and ' ' so dial strings may be written "247-448-1221".
std::string strip_separators(std::string_view digits);

}  // namespace dtmf

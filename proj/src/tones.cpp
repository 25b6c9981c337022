#include "dtmf/tones.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtmf {

TimingProfile TimingProfile::fixed(std::size_t n_digits, int mark, int space,
                                   bool trailing) {
    TimingProfile p;
    p.trailing_space = trailing;
    p.marks.assign(n_digits, mark);
    p.spaces.assign(p.expected_spaces(n_digits), space);
    p.validate(n_digits);
    return p;
}

void TimingProfile::validate(std::size_t n_digits) const {
    if (marks.size() != n_digits)
        throw std::invalid_argument("timing profile: need " + std::to_string(n_digits) +
                                    " mark entries, have " + std::to_string(marks.size()));
    if (spaces.size() != expected_spaces(n_digits))
        throw std::invalid_argument("timing profile: need " +
                                    std::to_string(expected_spaces(n_digits)) +
                                    " space entries, have " + std::to_string(spaces.size()));
    for (int m : marks)
        if (m < 1) throw std::invalid_argument("timing profile: mark must be >= 1 sample");
    for (int s : spaces)
        if (s < 0) throw std::invalid_argument("timing profile: space must be >= 0 samples");
}

std::size_t TimingProfile::total_samples() const {
    std::size_t total = 0;
    for (int m : marks) total += static_cast<std::size_t>(m);
    for (int s : spaces) total += static_cast<std::size_t>(s);
    return total;
}

bool is_symbol(char glyph) {
    for (const auto& row : kKeypad)
        for (char g : row)
            if (g == glyph) return true;
    return false;
}

GridPos grid_position(char glyph) {
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (kKeypad[r][c] == glyph) return {r, c};
    throw std::invalid_argument(std::string("not a DTMF symbol: '") + glyph + "'");
}

DtmfSymbol symbol_frequencies(char glyph) {
    const GridPos p = grid_position(glyph);
    return {glyph, kRowHz[static_cast<std::size_t>(p.row)],
            kColHz[static_cast<std::size_t>(p.col)]};
}

RadianPair radian_pair(char glyph, double fs) {
    const DtmfSymbol s = symbol_frequencies(glyph);
    if (!(fs > 2.0 * s.f_col))
        throw std::invalid_argument("sample rate " + std::to_string(fs) +
                                    " Hz aliases the " + std::to_string(s.f_col) +
                                    " Hz column tone");
    const double scale = 2.0 * std::numbers::pi / fs;
    return {scale * s.f_row, scale * s.f_col, fs};
}

SignalBuffer synthesize_digit(char glyph, std::size_t n_samples, double fs) {
    const RadianPair w = radian_pair(glyph, fs);
    SignalBuffer out;
    out.fs = fs;
    out.samples.resize(n_samples);
    for (std::size_t n = 0; n < n_samples; ++n) {
        const auto t = static_cast<double>(n);
        out.samples[n] = std::sin(w.w_row * t) + std::sin(w.w_col * t);
    }
    return out;
}

SignalBuffer synthesize_sequence(std::string_view glyphs, const TimingProfile& timing,
                                 double fs) {
    timing.validate(glyphs.size());
    SignalBuffer out;
    out.fs = fs;
    out.samples.reserve(timing.total_samples());
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
        const SignalBuffer burst =
            synthesize_digit(glyphs[i], static_cast<std::size_t>(timing.marks[i]), fs);
        out.samples.insert(out.samples.end(), burst.samples.begin(), burst.samples.end());
        if (i < timing.spaces.size())
            out.samples.insert(out.samples.end(),
                               static_cast<std::size_t>(timing.spaces[i]), 0.0);
    }
    return out;
}

std::string strip_separators(std::string_view digits) {
    std::string out;
    out.reserve(digits.size());
    for (char c : digits)
        if (c != '-' && c != ' ') out.push_back(c);
    return out;
}

}  // namespace dtmf

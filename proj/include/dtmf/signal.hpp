// Core sample-domain types shared by every module: a buffer of real
// samples with its sample rate, and the Mark/Space timing layout of a
// dialed sequence.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dtmf {

// Finite run of real-valued samples at a known sample rate.
struct SignalBuffer {
    std::vector<double> samples;
    double fs = 8192.0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
};

// Per-digit tone and inter-digit silence durations, in samples.
// `marks` holds one entry per dialed symbol; `spaces` one entry per gap
// between neighbours, plus one more when `trailing_space` is set.
struct TimingProfile {
    std::vector<int> marks;   // each >= 1
    std::vector<int> spaces;  // each >= 0
    bool trailing_space = false;

    // Uniform profile: every mark/space the same length.
    static TimingProfile fixed(std::size_t n_digits, int mark, int space,
                               bool trailing = false);

    std::size_t expected_spaces(std::size_t n_digits) const {
        if (n_digits == 0) return 0;
        return n_digits - 1 + (trailing_space ? 1 : 0);
    }

    // Throws std::invalid_argument if the profile cannot carry a dial
    // string of `n_digits` symbols.
    void validate(std::size_t n_digits) const;

    std::size_t total_samples() const;
};

}  // namespace dtmf

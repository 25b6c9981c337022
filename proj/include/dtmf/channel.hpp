// Stochastic channel models: calibrated additive white Gaussian noise,
// SNR/error measurement, and randomized Mark/Space timing realizations.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dtmf/signal.hpp"

namespace dtmf {

struct NoiseSpec {
    double snr_db = 0.0;    // target SNR, decibels
    std::uint64_t seed = 0;
};

// Uniform integer jitter on [mean - spread, mean + spread].
struct JitterDistribution {
    double mean = 0.0;
    double spread = 0.0;
};

// Either explicit per-digit/per-gap lists or a seeded distribution.
// When a list is longer than needed, the leading entries are used.
struct TimingJitterSpec {
    std::vector<int> mark_values;
    std::vector<int> space_values;
    std::optional<JitterDistribution> mark_dist;
    std::optional<JitterDistribution> space_dist;
    bool trailing_space = false;
    std::uint64_t seed = 0;
};

// y[n] = x[n] + w[n] with w zero-mean Gaussian of variance
// sigma_n^2 = sigma_x^2 * 10^(-snr_db/10), where sigma_x^2 is the
// empirical mean square of `clean`. Throws std::invalid_argument on an
// empty or all-zero buffer (the SNR is undefined there) and on a
// non-finite target.
SignalBuffer add_awgn(const SignalBuffer& clean, const NoiseSpec& spec);

// 10*log10( var(reference) / var(observed - reference) ), in dB.
// Returns +infinity when the error variance is exactly zero. Throws on
// length mismatch or zero reference variance.
double measured_snr(const SignalBuffer& reference, const SignalBuffer& observed);

// Noise-to-signal power ratio as a percentage: 100 * 10^(-snr_db/10).
double theoretical_error_rate(double snr_db);

// Concrete TimingProfile for `n_digits` symbols. List mode copies the
// first entries needed; distribution mode draws one value per digit
// (marks first, in order) and then one per gap, each rounded to the
// nearest integer and clamped to mark >= 1 / space >= 0.
TimingProfile realize_timing(std::size_t n_digits, const TimingJitterSpec& spec);

// Mean of x[n]^2 over the buffer (the empirical signal power).
double mean_square(const SignalBuffer& x);

// Mean-removed power; the denominator is n, not n - 1.
double variance(const SignalBuffer& x);

}  // namespace dtmf

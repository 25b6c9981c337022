#include "dtmf/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dtmf/rng.hpp"

namespace dtmf {

double mean_square(const SignalBuffer& x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (double v : x.samples) acc += v * v;
    return acc / static_cast<double>(x.size());
}

double variance(const SignalBuffer& x) {
    if (x.empty()) return 0.0;
    double mean = 0.0;
    for (double v : x.samples) mean += v;
    mean /= static_cast<double>(x.size());
    double acc = 0.0;
    for (double v : x.samples) acc += (v - mean) * (v - mean);
    return acc / static_cast<double>(x.size());
}

SignalBuffer add_awgn(const SignalBuffer& clean, const NoiseSpec& spec) {
    if (!std::isfinite(spec.snr_db))
        throw std::invalid_argument("add_awgn: target SNR must be finite");
    const double power = mean_square(clean);
    if (clean.empty() || power <= 0.0)
        throw std::invalid_argument("add_awgn: SNR undefined for an empty or silent buffer");

    const double sigma = std::sqrt(power * std::pow(10.0, -spec.snr_db / 10.0));
    Rng rng(spec.seed);
    SignalBuffer out;
    out.fs = clean.fs;
    out.samples.resize(clean.size());
    for (std::size_t i = 0; i < clean.size(); ++i)
        out.samples[i] = clean.samples[i] + sigma * rng.gaussian();
    return out;
}

double measured_snr(const SignalBuffer& reference, const SignalBuffer& observed) {
    if (reference.size() != observed.size())
        throw std::invalid_argument("measured_snr: buffer lengths differ");
    const double ref_var = variance(reference);
    if (ref_var <= 0.0)
        throw std::invalid_argument("measured_snr: reference has zero variance");

    SignalBuffer err;
    err.samples.resize(reference.size());
    for (std::size_t i = 0; i < reference.size(); ++i)
        err.samples[i] = observed.samples[i] - reference.samples[i];
    const double err_var = variance(err);
    if (err_var == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ref_var / err_var);
}

double theoretical_error_rate(double snr_db) {
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("theoretical_error_rate: SNR must be finite");
    return 100.0 * std::pow(10.0, -snr_db / 10.0);
}

namespace {

int draw_jittered(Rng& rng, const JitterDistribution& d, int min_value) {
    const double lo = d.mean - d.spread;
    const double hi = d.mean + d.spread;
    const double u = rng.uniform01();
    const auto v = static_cast<int>(std::llround(lo + u * (hi - lo)));
    return v < min_value ? min_value : v;
}

}  // namespace

TimingProfile realize_timing(std::size_t n_digits, const TimingJitterSpec& spec) {
    TimingProfile out;
    out.trailing_space = spec.trailing_space;
    const std::size_t n_spaces = out.expected_spaces(n_digits);
    Rng rng(spec.seed);

    if (!spec.mark_values.empty()) {
        if (spec.mark_values.size() < n_digits)
            throw std::invalid_argument("realize_timing: mark list shorter than dial string");
        out.marks.assign(spec.mark_values.begin(),
                         spec.mark_values.begin() + static_cast<long>(n_digits));
    } else if (spec.mark_dist) {
        if (spec.mark_dist->mean < 1.0)
            throw std::invalid_argument("realize_timing: mark distribution mean must be >= 1");
        out.marks.reserve(n_digits);
        for (std::size_t i = 0; i < n_digits; ++i)
            out.marks.push_back(draw_jittered(rng, *spec.mark_dist, 1));
    } else {
        throw std::invalid_argument("realize_timing: no mark values or distribution given");
    }

    if (!spec.space_values.empty() || n_spaces == 0) {
        if (spec.space_values.size() < n_spaces)
            throw std::invalid_argument("realize_timing: space list shorter than dial string");
        out.spaces.assign(spec.space_values.begin(),
                          spec.space_values.begin() + static_cast<long>(n_spaces));
    } else if (spec.space_dist) {
        out.spaces.reserve(n_spaces);
        for (std::size_t i = 0; i < n_spaces; ++i)
            out.spaces.push_back(draw_jittered(rng, *spec.space_dist, 0));
    } else {
        throw std::invalid_argument("realize_timing: no space values or distribution given");
    }

    out.validate(n_digits);
    return out;
}

}  // namespace dtmf

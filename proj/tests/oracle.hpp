// Brute-force reference transforms for oracle tests. These are written
// for independence from the library paths, not speed: long-double
// accumulation, one polar() per sample, no recurrences and no fast
// paths.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "dtmf/signal.hpp"

namespace oracle {

inline std::complex<double> dtft(const std::vector<double>& x, double w) {
    long double re = 0.0L, im = 0.0L;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const long double ang = -static_cast<long double>(w) * static_cast<long double>(n);
        re += static_cast<long double>(x[n]) * std::cos(ang);
        im += static_cast<long double>(x[n]) * std::sin(ang);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

// DFT bin k of the length-N transform (input zero-padded/truncated).
inline std::complex<double> dft_bin(const std::vector<double>& x, std::size_t k,
                                    std::size_t n) {
    const long double w = 2.0L * 3.141592653589793238462643383279502884L *
                          static_cast<long double>(k) / static_cast<long double>(n);
    long double re = 0.0L, im = 0.0L;
    const std::size_t m = x.size() < n ? x.size() : n;
    for (std::size_t i = 0; i < m; ++i) {
        const long double ang = -w * static_cast<long double>(i);
        re += static_cast<long double>(x[i]) * std::cos(ang);
        im += static_cast<long double>(x[i]) * std::sin(ang);
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

// Sum x[n] z^{-n} via per-term complex pow.
inline std::complex<double> ndft(const std::vector<double>& x, std::complex<double> z) {
    std::complex<long double> zl{z.real(), z.imag()};
    std::complex<long double> acc{0.0L, 0.0L};
    for (std::size_t n = 0; n < x.size(); ++n)
        acc += static_cast<long double>(x[n]) *
               std::pow(zl, -static_cast<long double>(n));
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

inline dtmf::SignalBuffer buffer(std::vector<double> samples, double fs = 8192.0) {
    dtmf::SignalBuffer b;
    b.samples = std::move(samples);
    b.fs = fs;
    return b;
}

}  // namespace oracle

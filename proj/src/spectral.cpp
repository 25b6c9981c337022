#include "dtmf/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dtmf/tones.hpp"

namespace dtmf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 DIT transform; a.size() must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::complex<double> wlen = std::polar(1.0, -kTwoPi / static_cast<double>(len));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Recursion core: s[i] = x[i] + coeff*s[i-1] - s[i-2] over `m` samples,
// then over `tail` implicit zeros.
struct GoertzelState {
    double s1 = 0.0;
    double s2 = 0.0;
};

GoertzelState run_goertzel(const double* x, std::size_t m, std::size_t tail, double coeff) {
    GoertzelState st;
    for (std::size_t i = 0; i < m; ++i) {
        const double s0 = x[i] + coeff * st.s1 - st.s2;
        st.s2 = st.s1;
        st.s1 = s0;
    }
    for (std::size_t i = 0; i < tail; ++i) {
        const double s0 = coeff * st.s1 - st.s2;
        st.s2 = st.s1;
        st.s1 = s0;
    }
    return st;
}

// |s1 e^{j theta} - s2|^2 without forming the complex value.
double goertzel_magnitude_sq(const GoertzelState& st, double coeff) {
    return st.s1 * st.s1 + st.s2 * st.s2 - coeff * st.s1 * st.s2;
}

}  // namespace

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::dtft: return "dtft";
        case Backend::dft: return "dft";
        case Backend::goertzel: return "goertzel";
        case Backend::sbndft: return "sbndft";
    }
    return "?";
}

Backend backend_from_name(const std::string& name) {
    if (name == "dtft") return Backend::dtft;
    if (name == "dft") return Backend::dft;
    if (name == "goertzel") return Backend::goertzel;
    if (name == "sbndft") return Backend::sbndft;
    throw std::invalid_argument("unknown backend: " + name);
}

std::complex<double> dtft_at(const SignalBuffer& x, double w) {
    const std::complex<double> step = std::polar(1.0, -w);
    std::complex<double> rot{1.0, 0.0};
    std::complex<double> acc{0.0, 0.0};
    for (double v : x.samples) {
        acc += v * rot;
        rot *= step;
    }
    return acc;
}

SpectrumEstimate dft_uniform(const SignalBuffer& x, std::size_t n) {
    if (n == 0) throw std::invalid_argument("dft_uniform: N must be >= 1");
    SpectrumEstimate est;
    est.kind = SpectrumKind::complex_amplitude;
    est.backend = Backend::dft;
    est.n_dft = n;
    est.fs = x.fs;
    est.freqs.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        est.freqs[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n);

    const std::size_t m = std::min(x.size(), n);
    if (is_power_of_two(n)) {
        std::vector<std::complex<double>> a(n, {0.0, 0.0});
        for (std::size_t i = 0; i < m; ++i) a[i] = x.samples[i];
        fft_radix2(a);
        est.values = std::move(a);
        return est;
    }
    est.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::complex<double> step = std::polar(1.0, -est.freqs[k]);
        std::complex<double> rot{1.0, 0.0};
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < m; ++i) {
            acc += x.samples[i] * rot;
            rot *= step;
        }
        est.values[k] = acc;
    }
    return est;
}

std::complex<double> goertzel(const SignalBuffer& x, std::size_t k, std::size_t n) {
    if (n == 0) throw std::invalid_argument("goertzel: N must be >= 1");
    if (k >= n) throw std::invalid_argument("goertzel: bin index out of range");
    const double w0 = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    const double coeff = 2.0 * std::cos(w0);
    const std::size_t m = std::min(x.size(), n);
    const GoertzelState st = run_goertzel(x.samples.data(), m, n - m, coeff);
    return st.s1 * std::polar(1.0, w0) - st.s2;
}

GoertzelPower goertzel_power(const SignalBuffer& x, double w, std::size_t n) {
    if (n == 0) throw std::invalid_argument("goertzel_power: N must be >= 1");
    if (!(w >= 0.0 && w <= kPi))
        throw std::invalid_argument("goertzel_power: w outside [0, pi]");
    const auto k = static_cast<std::size_t>(
        std::floor(w * static_cast<double>(n) / kTwoPi + 0.5));
    const double bin_w = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    const double coeff = 2.0 * std::cos(bin_w);
    const std::size_t m = std::min(x.size(), n);
    const GoertzelState st = run_goertzel(x.samples.data(), m, 0, coeff);
    return {goertzel_magnitude_sq(st, coeff), k, bin_w};
}

SubbandPair subband_decompose(const SignalBuffer& x) {
    if (x.size() % 2 != 0)
        throw std::invalid_argument("subband_decompose: length must be even");
    SubbandPair p;
    p.g_low.fs = p.g_high.fs = x.fs / 2.0;
    const std::size_t half = x.size() / 2;
    p.g_low.samples.resize(half);
    p.g_high.samples.resize(half);
    for (std::size_t i = 0; i < half; ++i) {
        const double even = x.samples[2 * i];
        const double odd = x.samples[2 * i + 1];
        p.g_low.samples[i] = 0.5 * (even + odd);
        p.g_high.samples[i] = 0.5 * (even - odd);
    }
    return p;
}

SignalBuffer subband_reconstruct(const SubbandPair& pair) {
    if (pair.g_low.size() != pair.g_high.size())
        throw std::invalid_argument("subband_reconstruct: subband lengths differ");
    SignalBuffer x;
    x.fs = pair.g_low.fs * 2.0;
    x.samples.resize(pair.g_low.size() * 2);
    for (std::size_t i = 0; i < pair.g_low.size(); ++i) {
        x.samples[2 * i] = pair.g_low.samples[i] + pair.g_high.samples[i];
        x.samples[2 * i + 1] = pair.g_low.samples[i] - pair.g_high.samples[i];
    }
    return x;
}

std::complex<double> ndft_point(const SignalBuffer& x, std::complex<double> z) {
    if (x.empty()) return {0.0, 0.0};
    if (x.size() == 1) return {x.samples[0], 0.0};
    if (z == std::complex<double>{0.0, 0.0})
        throw std::invalid_argument("ndft_point: z = 0 is a singular evaluation point");
    const std::complex<double> zinv = 1.0 / z;
    // Horner on x[0] + z^{-1}(x[1] + z^{-1}(x[2] + ...)).
    std::complex<double> acc{x.samples.back(), 0.0};
    for (std::size_t i = x.size() - 1; i-- > 0;) acc = acc * zinv + x.samples[i];
    return acc;
}

double sbndft_power(const SignalBuffer& x, double w) {
    if (x.size() % 2 != 0)
        throw std::invalid_argument("sbndft_power: length must be even");
    if (!(w >= 0.0 && w < kPi))
        throw std::invalid_argument("sbndft_power: w must lie in [0, pi); "
                                    "the compensation is singular at pi");
    const std::size_t half = x.size() / 2;
    const double theta = 2.0 * w;  // low subband evaluated at z^2
    const double coeff = 2.0 * std::cos(theta);
    GoertzelState st;
    for (std::size_t i = 0; i < half; ++i) {
        const double g = 0.5 * (x.samples[2 * i] + x.samples[2 * i + 1]);
        const double s0 = g + coeff * st.s1 - st.s2;
        st.s2 = st.s1;
        st.s1 = s0;
    }
    const double glow_sq = goertzel_magnitude_sq(st, coeff);
    return 8.0 * glow_sq / (1.0 + std::cos(w));
}

SpectrumEstimate dtmf_bank(const SignalBuffer& x, Backend backend, std::size_t n) {
    if (x.empty()) throw std::invalid_argument("dtmf_bank: empty signal");
    if (backend == Backend::dft)
        throw std::invalid_argument("dtmf_bank: backend must be dtft, goertzel or sbndft");

    SignalBuffer window;
    window.fs = x.fs;
    const std::size_t m = std::min(x.size(), n);
    window.samples.assign(x.samples.begin(), x.samples.begin() + static_cast<long>(m));

    SignalBuffer even_window;  // sbndft needs an even analysis length
    if (backend == Backend::sbndft) {
        even_window.fs = x.fs;
        const std::size_t even_m = m - (m % 2);
        even_window.samples.assign(x.samples.begin(),
                                   x.samples.begin() + static_cast<long>(even_m));
    }

    SpectrumEstimate est;
    est.kind = SpectrumKind::squared_magnitude;
    est.backend = backend;
    est.n_dft = n;
    est.fs = x.fs;
    for (double f : kRowHz) est.freqs.push_back(kTwoPi * f / x.fs);
    for (double f : kColHz) est.freqs.push_back(kTwoPi * f / x.fs);
    if (est.freqs.back() >= kPi)
        throw std::invalid_argument("dtmf_bank: sample rate aliases the 1633 Hz tone");

    est.values.reserve(est.freqs.size());
    for (double w : est.freqs) {
        double p = 0.0;
        switch (backend) {
            case Backend::dtft: p = std::norm(dtft_at(window, w)); break;
            case Backend::goertzel: p = goertzel_power(window, w, n).power; break;
            case Backend::sbndft:
                p = even_window.empty() ? 0.0 : sbndft_power(even_window, w);
                break;
            case Backend::dft: break;  // rejected above
        }
        est.values.emplace_back(p, 0.0);
    }
    return est;
}

}  // namespace dtmf

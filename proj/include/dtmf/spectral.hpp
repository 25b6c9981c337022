// Frequency-domain kernels: DTFT evaluation at arbitrary frequencies,
// uniform N-point DFT, the Goertzel single-bin filter, subband
// decomposition, NDFT evaluation at arbitrary z-plane points, and the
// subband-NDFT power estimator used as the fast decoding backend.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "dtmf/signal.hpp"

namespace dtmf {

enum class Backend { dtft, dft, goertzel, sbndft };

const char* backend_name(Backend b);
Backend backend_from_name(const std::string& name);  // throws on unknown

enum class SpectrumKind { complex_amplitude, squared_magnitude };

// Spectral values at a list of angular frequencies. `values` holds
// complex amplitudes or squared magnitudes depending on `kind`
// (squared magnitudes are stored in the real part).
struct SpectrumEstimate {
    std::vector<double> freqs;  // rad/sample
    std::vector<std::complex<double>> values;
    SpectrumKind kind = SpectrumKind::complex_amplitude;
    Backend backend = Backend::dft;
    std::size_t n_dft = 0;
    double fs = 8192.0;
};

// Half-rate subband split of an even-length buffer:
//   g_low[n]  = (x[2n] + x[2n+1]) / 2
//   g_high[n] = (x[2n] - x[2n+1]) / 2
struct SubbandPair {
    SignalBuffer g_low;
    SignalBuffer g_high;
};

// Sum_{n=0}^{M-1} x[n] * e^{-jwn}.
std::complex<double> dtft_at(const SignalBuffer& x, double w);

// Uniform N-point transform: values[k] = sum x[n] e^{-j2pi kn/N},
// freqs[k] = 2pi k/N. Input shorter than N is zero-padded, longer is
// truncated. Power-of-two N takes a radix-2 fast path; any other N is
// evaluated directly. Throws for N = 0.
SpectrumEstimate dft_uniform(const SignalBuffer& x, std::size_t n);

// Single DFT bin via the two-pole recursion
//   s[i] = x[i] + 2cos(2pi k/N) s[i-1] - s[i-2],  s[-1] = s[-2] = 0
// followed by the direct step y = s[N-1] e^{j2pi k/N} - s[N-2], which
// equals the DFT bin exactly (no residual rotation). Pads/truncates to
// N like dft_uniform. Throws for k >= N.
std::complex<double> goertzel(const SignalBuffer& x, std::size_t k, std::size_t n);

struct GoertzelPower {
    double power;       // squared magnitude at the selected bin
    std::size_t bin;    // k = round(w N / 2pi), ties up
    double bin_w;       // 2pi k / N, the frequency actually evaluated
};

// Squared magnitude of the DFT bin nearest to w. Only the magnitude is
// needed, so the recursion stops after the last nonzero sample: a
// zero-padding tail spins the phase without changing |y|.
GoertzelPower goertzel_power(const SignalBuffer& x, double w, std::size_t n);

SubbandPair subband_decompose(const SignalBuffer& x);  // throws on odd length
SignalBuffer subband_reconstruct(const SubbandPair& pair);

// Sum_{n} x[n] z^{-n} at one arbitrary z-plane point. Throws for z = 0
// when more than one sample contributes a negative power.
std::complex<double> ndft_point(const SignalBuffer& x, std::complex<double> z);

// Subband-NDFT power estimate at z = e^{jw}: evaluates only the low
// subband at z^2 with the Goertzel recursion on N/2 samples and
// compensates the dropped high band,
//   |X|^2 ~= 8 |G_low(e^{j2w})|^2 / (1 + cos w).
// Exact when g_high is identically zero; on DTMF tones (w < pi/2) the
// peak-power error is a fraction of a percent. Requires even length and
// w in [0, pi); the compensation is singular at w = pi.
double sbndft_power(const SignalBuffer& x, double w);

// Squared-magnitude estimates at the eight standard DTMF frequencies
// (rows then columns, ascending) with the chosen backend. The analysis
// window is the first min(len, n) samples; sbndft drops one trailing
// sample when that window is odd.
SpectrumEstimate dtmf_bank(const SignalBuffer& x, Backend backend, std::size_t n);

}  // namespace dtmf

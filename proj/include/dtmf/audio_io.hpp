// File interchange: 16-bit PCM mono WAV, and CSV emission for spectra
// and sweep results. All text output is locale-independent ('.' decimal
// point, 9 significant digits) and byte-reproducible for equal inputs.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dtmf/decoder.hpp"
#include "dtmf/signal.hpp"
#include "dtmf/spectral.hpp"

namespace dtmf {

// Fixed container format: RIFF/WAVE, PCM, 16-bit little-endian, mono.
struct WavSpec {
    std::uint32_t sample_rate = 8192;
    int bit_depth = 16;  // only 16 is supported
    int channels = 1;    // only mono is supported

    static WavSpec for_buffer(const SignalBuffer& x);
};

struct WavWriteResult {
    std::size_t clipped = 0;      // samples outside [-2, 2] hit the rails
    std::size_t data_bytes = 0;
};

// Quantization: q = clamp(round(s / 2.0 * 32767), -32768, 32767); the
// /2.0 maps the two-tone amplitude bound onto full scale. Throws
// std::runtime_error when the path cannot be written.
WavWriteResult write_wav(const SignalBuffer& x, const std::filesystem::path& path,
                         const WavSpec& spec = WavSpec{});

// Inverse mapping q / 32767 * 2.0; sample rate comes from the header.
// Throws std::runtime_error on malformed RIFF data or unsupported
// format (non-PCM, non-mono, non-16-bit).
SignalBuffer read_wav(const std::filesystem::path& path);

// Minimal CSV emitter: comma-separated, '\n' line ends, "%.9g" floats.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path,
              const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);

    static std::string num(double v);
    static std::string num(std::size_t v);
    static std::string num(long long v);

private:
    std::ofstream out_;
    std::size_t width_;
};

// Columns: k, omega_rad, freq_hz, magnitude, magnitude_normalized.
// One row per frequency point (N+1 lines for an N-point spectrum).
void write_csv_spectrum(const SpectrumEstimate& est, const std::filesystem::path& path);

// Columns: snr_db, digit, trials, errors, measured_pct, theoretical_pct.
void write_csv_sweep(const std::vector<ErrorRatePoint>& rows,
                     const std::filesystem::path& path);

}  // namespace dtmf

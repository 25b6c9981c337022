#include "dtmf/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace dtmf {

namespace {

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t get_u32(const std::string& s, std::size_t at) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[at])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 3])) << 24);
}

std::uint16_t get_u16(const std::string& s, std::size_t at) {
    return static_cast<std::uint16_t>(
        static_cast<std::uint16_t>(static_cast<unsigned char>(s[at])) |
        (static_cast<std::uint16_t>(static_cast<unsigned char>(s[at + 1])) << 8));
}

}  // namespace

WavSpec WavSpec::for_buffer(const SignalBuffer& x) {
    WavSpec spec;
    spec.sample_rate = static_cast<std::uint32_t>(std::lround(x.fs));
    return spec;
}

WavWriteResult write_wav(const SignalBuffer& x, const std::filesystem::path& path,
                         const WavSpec& spec) {
    if (spec.bit_depth != 16 || spec.channels != 1 || spec.sample_rate == 0)
        throw std::invalid_argument("write_wav: only 16-bit mono PCM is supported");

    const std::uint32_t data_bytes = static_cast<std::uint32_t>(x.size() * 2);
    std::string bytes;
    bytes.reserve(44 + data_bytes);
    bytes += "RIFF";
    put_u32(bytes, 36 + data_bytes);
    bytes += "WAVE";
    bytes += "fmt ";
    put_u32(bytes, 16);
    put_u16(bytes, 1);  // PCM
    put_u16(bytes, 1);  // mono
    put_u32(bytes, spec.sample_rate);
    put_u32(bytes, spec.sample_rate * 2);  // byte rate
    put_u16(bytes, 2);                     // block align
    put_u16(bytes, 16);                    // bits per sample
    bytes += "data";
    put_u32(bytes, data_bytes);

    WavWriteResult res;
    for (double s : x.samples) {
        long q = std::lround(s / 2.0 * 32767.0);
        if (q > 32767 || q < -32768) {
            ++res.clipped;
            q = std::clamp(q, -32768L, 32767L);
        }
        put_u16(bytes, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
    res.data_bytes = data_bytes;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_wav: cannot open " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write_wav: short write to " + path.string());
    return res;
}

SignalBuffer read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_wav: cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
        bytes.compare(8, 4, "WAVE") != 0)
        throw std::runtime_error("read_wav: not a RIFF/WAVE file: " + path.string());

    bool have_fmt = false;
    std::uint32_t sample_rate = 0;
    std::size_t data_at = 0, data_len = 0;
    bool have_data = false;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const std::string id = bytes.substr(pos, 4);
        const std::uint32_t len = get_u32(bytes, pos + 4);
        pos += 8;
        if (pos + len > bytes.size())
            throw std::runtime_error("read_wav: truncated chunk '" + id + "'");
        if (id == "fmt ") {
            if (len < 16) throw std::runtime_error("read_wav: fmt chunk too short");
            const std::uint16_t format = get_u16(bytes, pos);
            const std::uint16_t channels = get_u16(bytes, pos + 2);
            sample_rate = get_u32(bytes, pos + 4);
            const std::uint16_t bits = get_u16(bytes, pos + 14);
            if (format != 1) throw std::runtime_error("read_wav: not integer PCM");
            if (channels != 1) throw std::runtime_error("read_wav: only mono supported");
            if (bits != 16) throw std::runtime_error("read_wav: only 16-bit supported");
            have_fmt = true;
        } else if (id == "data") {
            data_at = pos;
            data_len = len;
            have_data = true;
        }
        pos += len + (len % 2);  // chunks are word-aligned
    }
    if (!have_fmt || !have_data)
        throw std::runtime_error("read_wav: missing fmt or data chunk");
    if (data_len % 2 != 0) throw std::runtime_error("read_wav: odd data chunk size");

    SignalBuffer x;
    x.fs = static_cast<double>(sample_rate);
    x.samples.resize(data_len / 2);
    for (std::size_t i = 0; i < x.samples.size(); ++i) {
        const auto q = static_cast<std::int16_t>(get_u16(bytes, data_at + 2 * i));
        x.samples[i] = static_cast<double>(q) / 32767.0 * 2.0;
    }
    return x;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::trunc), width_(header.size()) {
    if (!out_) throw std::runtime_error("csv: cannot open " + path.string());
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::invalid_argument("csv: ragged row");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw std::runtime_error("csv: write failed");
}

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string CsvWriter::num(std::size_t v) { return std::to_string(v); }
std::string CsvWriter::num(long long v) { return std::to_string(v); }

void write_csv_spectrum(const SpectrumEstimate& est, const std::filesystem::path& path) {
    CsvWriter csv(path, {"k", "omega_rad", "freq_hz", "magnitude", "magnitude_normalized"});
    std::vector<double> mag(est.values.size());
    for (std::size_t k = 0; k < est.values.size(); ++k)
        mag[k] = est.kind == SpectrumKind::complex_amplitude
                     ? std::abs(est.values[k])
                     : std::sqrt(std::max(0.0, est.values[k].real()));
    const double peak = mag.empty() ? 0.0 : *std::max_element(mag.begin(), mag.end());
    for (std::size_t k = 0; k < mag.size(); ++k) {
        const double w = est.freqs[k];
        csv.row({CsvWriter::num(k), CsvWriter::num(w),
                 CsvWriter::num(w * est.fs / (2.0 * std::numbers::pi)),
                 CsvWriter::num(mag[k]),
                 CsvWriter::num(peak > 0.0 ? mag[k] / peak : 0.0)});
    }
}

void write_csv_sweep(const std::vector<ErrorRatePoint>& rows,
                     const std::filesystem::path& path) {
    CsvWriter csv(path, {"snr_db", "digit", "trials", "errors", "measured_pct",
                         "theoretical_pct"});
    for (const ErrorRatePoint& r : rows)
        csv.row({CsvWriter::num(r.snr_db), std::string(1, r.glyph),
                 CsvWriter::num(r.trials), CsvWriter::num(r.errors),
                 CsvWriter::num(r.measured_pct), CsvWriter::num(r.theoretical_pct)});
}

}  // namespace dtmf

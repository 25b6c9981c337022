// Command-line harness for the DTMF laboratory. Every experiment is a
// subcommand that writes its artifacts (WAV/CSV) plus a manifest
// echoing the fully resolved configuration, so any run can be
// reproduced from the manifest alone. Stochastic runs require an
// explicit --seed; identical invocations produce byte-identical
// artifacts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dtmf/audio_io.hpp"
#include "dtmf/channel.hpp"
#include "dtmf/decoder.hpp"
#include "dtmf/rng.hpp"
#include "dtmf/spectral.hpp"
#include "dtmf/tones.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dtmf;

namespace {

constexpr double kPi = std::numbers::pi;

struct TimingFlags {
    int mark = 1000;
    int space = 100;
    std::vector<int> mark_list;
    std::vector<int> space_list;
    double mark_spread = 0.0;
    double space_spread = 0.0;
    bool trailing_space = false;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--mark", mark, "Fixed mark length, samples")->check(CLI::PositiveNumber);
        cmd.add_option("--space", space, "Fixed space length, samples")
            ->check(CLI::NonNegativeNumber);
        cmd.add_option("--mark-list", mark_list, "Per-digit mark lengths (comma separated)")
            ->delimiter(',');
        cmd.add_option("--space-list", space_list, "Per-gap space lengths (comma separated)")
            ->delimiter(',');
        cmd.add_option("--mark-spread", mark_spread,
                       "Half-width of the uniform mark jitter around --mark")
            ->check(CLI::NonNegativeNumber);
        cmd.add_option("--space-spread", space_spread,
                       "Half-width of the uniform space jitter around --space")
            ->check(CLI::NonNegativeNumber);
        cmd.add_flag("--trailing-space", trailing_space, "Append a space after the last digit");
    }

    bool stochastic() const {
        return (mark_list.empty() && mark_spread > 0.0) ||
               (space_list.empty() && space_spread > 0.0);
    }

    TimingProfile realize(std::size_t n_digits, std::uint64_t seed) const {
        TimingJitterSpec spec;
        spec.trailing_space = trailing_space;
        spec.seed = seed;
        if (!mark_list.empty())
            spec.mark_values = mark_list;
        else if (mark_spread > 0.0)
            spec.mark_dist = JitterDistribution{double(mark), mark_spread};
        else
            spec.mark_values.assign(n_digits, mark);
        const std::size_t n_spaces =
            n_digits > 0 ? n_digits - 1 + (trailing_space ? 1u : 0u) : 0;
        if (!space_list.empty())
            spec.space_values = space_list;
        else if (space_spread > 0.0)
            spec.space_dist = JitterDistribution{double(space), space_spread};
        else
            spec.space_values.assign(n_spaces, space);
        return realize_timing(n_digits, spec);
    }

    json to_json() const {
        json j;
        j["mark"] = mark;
        j["space"] = space;
        j["mark_list"] = mark_list;
        j["space_list"] = space_list;
        j["mark_spread"] = mark_spread;
        j["space_spread"] = space_spread;
        j["trailing_space"] = trailing_space;
        return j;
    }
};

struct SegFlags {
    int frame_len = 24;
    double threshold = 0.55;
    double exit_hysteresis = 0.72;
    int min_mark = -1;   // -1: 40 ms at the signal rate
    int min_space = 20;  // experiment default; the 40/40 standard is 328 at 8192 Hz

    void add_to(CLI::App& cmd) {
        cmd.add_option("--frame-len", frame_len, "RMS window for segmentation, samples");
        cmd.add_option("--threshold", threshold,
                       "Mark-entry threshold as a fraction of peak RMS");
        cmd.add_option("--exit-hysteresis", exit_hysteresis,
                       "Mark-exit level as a fraction of the entry threshold");
        cmd.add_option("--min-mark", min_mark, "Minimum mark length, samples (-1: 40 ms)");
        cmd.add_option("--min-space", min_space, "Minimum space length, samples");
    }

    SegmentationConfig resolve(double fs) const {
        SegmentationConfig cfg = SegmentationConfig::experiment(fs);
        cfg.frame_len = frame_len;
        cfg.energy_threshold_ratio = threshold;
        cfg.exit_hysteresis = exit_hysteresis;
        if (min_mark >= 0) cfg.min_mark = min_mark;
        cfg.min_space = min_space;
        return cfg;
    }

    static json to_json(const SegmentationConfig& cfg) {
        json j;
        j["frame_len"] = cfg.frame_len;
        j["energy_threshold_ratio"] = cfg.energy_threshold_ratio;
        j["exit_hysteresis"] = cfg.exit_hysteresis;
        j["min_mark"] = cfg.min_mark;
        j["min_space"] = cfg.min_space;
        return j;
    }
};

std::string sanitize_glyph(char g) {
    if (g == '*') return "star";
    if (g == '#') return "hash";
    return std::string(1, g);
}

std::string require_dial_string(const std::string& raw) {
    const std::string digits = strip_separators(raw);
    if (digits.empty()) throw CLI::ValidationError("--digits", "empty dial string");
    for (char c : digits)
        if (!is_symbol(c))
            throw CLI::ValidationError("--digits",
                                       std::string("not a keypad symbol: '") + c + "'");
    return digits;
}

void write_manifest(const fs::path& out_dir, const std::string& subcommand, json config,
                    const std::vector<std::string>& artifacts) {
    json m;
    m["subcommand"] = subcommand;
    m["config"] = std::move(config);
    m["artifacts"] = artifacts;
    const fs::path path = out_dir / (subcommand + "_manifest.json");
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest " + path.string());
    out << m.dump(2) << '\n';
}

std::vector<double> parse_snr_values(const std::string& range, double single,
                                     bool single_given) {
    if (single_given) return {single};
    double lo = 1.0, hi = 5.0, step = 1.0;
    if (!range.empty()) {
        std::istringstream ss(range);
        std::string tok;
        std::vector<double> parts;
        while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
        if (parts.size() < 2 || parts.size() > 3)
            throw CLI::ValidationError("--snr-range", "expected lo:hi[:step]");
        lo = parts[0];
        hi = parts[1];
        if (parts.size() == 3) step = parts[2];
        if (step <= 0.0) throw CLI::ValidationError("--snr-range", "step must be > 0");
    }
    std::vector<double> out;
    for (double s = lo; s <= hi + 1e-9; s += step) out.push_back(s);
    return out;
}

// Peak DFT bins (row = lower, col = higher) of one frame's analysis
// window; used by the N sweep to place the spectrum peaks.
struct FramePeaks {
    std::size_t row_bin = 0;
    std::size_t col_bin = 0;
};

FramePeaks frame_peak_bins(const SignalBuffer& x, const FrameRecord& f, std::size_t n) {
    SignalBuffer slice;
    slice.fs = x.fs;
    const std::size_t len = std::min(f.length, n);
    slice.samples.assign(x.samples.begin() + long(f.start),
                         x.samples.begin() + long(f.start + len));
    const SpectrumEstimate est = dft_uniform(slice, n);
    double m1 = -1.0, m2 = -1.0;
    std::size_t k1 = 0, k2 = 0;
    for (std::size_t k = 1; k < n / 2; ++k) {
        const double m = std::abs(est.values[k]);
        if (m > m1) {
            k2 = k1;
            m2 = m1;
            k1 = k;
            m1 = m;
        } else if (m > m2) {
            k2 = k;
            m2 = m;
        }
    }
    return {std::min(k1, k2), std::max(k1, k2)};
}

int run_encode(const std::string& digits_raw, double fs, const TimingFlags& timing,
               bool snr_given, double snr_db, bool seed_given, std::uint64_t seed,
               const fs::path& out_dir) {
    const std::string digits = require_dial_string(digits_raw);
    if ((timing.stochastic() || snr_given) && !seed_given)
        throw CLI::ValidationError("--seed", "required for stochastic runs");

    const TimingProfile profile = timing.realize(digits.size(), derive_seed(seed, 0));
    SignalBuffer x = synthesize_sequence(digits, profile, fs);
    if (snr_given) x = add_awgn(x, {snr_db, derive_seed(seed, 1)});

    fs::create_directories(out_dir);
    const fs::path wav_path = out_dir / "encoded.wav";
    const WavWriteResult res = write_wav(x, wav_path, WavSpec::for_buffer(x));
    if (res.clipped > 0)
        std::cerr << "warning: " << res.clipped << " samples clipped at full scale\n";

    json cfg;
    cfg["digits"] = digits;
    cfg["fs"] = fs;
    cfg["timing"] = timing.to_json();
    cfg["realized_marks"] = profile.marks;
    cfg["realized_spaces"] = profile.spaces;
    cfg["snr_db"] = snr_given ? json(snr_db) : json(nullptr);
    cfg["seed"] = seed_given ? json(seed) : json(nullptr);
    cfg["samples"] = x.size();
    write_manifest(out_dir, "encode", cfg, {"encoded.wav"});
    return 0;
}

int run_decode(const std::string& wav, const std::string& backend_str, std::size_t n,
               bool include_1633, const SegFlags& seg_flags, const fs::path& out_dir) {
    const SignalBuffer x = read_wav(wav);
    const SegmentationConfig seg = seg_flags.resolve(x.fs);
    ClassifierConfig cls;
    cls.backend = backend_from_name(backend_str);
    cls.n_dft = n;
    cls.include_1633 = include_1633;

    const DecodeReport report = decode_number(x, seg, cls);

    fs::create_directories(out_dir);
    const fs::path csv_path = out_dir / "decode_report.csv";
    CsvWriter csv(csv_path,
                  {"frame", "start", "length", "glyph", "confidence", "row_hz", "col_hz",
                   "e697", "e770", "e852", "e941", "e1209", "e1336", "e1477", "e1633"});
    for (std::size_t i = 0; i < report.frames.size(); ++i) {
        const FrameRecord& f = report.frames[i];
        std::vector<std::string> row{
            CsvWriter::num(i), CsvWriter::num(f.start), CsvWriter::num(f.length),
            f.result.tone ? std::string(1, f.result.glyph) : std::string("-"),
            CsvWriter::num(f.result.confidence), CsvWriter::num(f.result.row_hz),
            CsvWriter::num(f.result.col_hz)};
        for (double e : f.result.energies) row.push_back(CsvWriter::num(e));
        csv.row(row);
    }

    json cfg;
    cfg["wav"] = wav;
    cfg["fs"] = x.fs;
    cfg["backend"] = backend_str;
    cfg["n_dft"] = n;
    cfg["include_1633"] = include_1633;
    cfg["segmentation"] = SegFlags::to_json(seg);
    write_manifest(out_dir, "decode", cfg, {"decode_report.csv"});

    std::cout << report.digits << "\n";
    return 0;
}

int run_spectrum(const std::string& digits_raw, int mark, std::size_t n,
                 const std::string& backend_str, double fs, const fs::path& out_dir) {
    const std::string digits = require_dial_string(digits_raw);
    if (digits.size() != 1)
        throw CLI::ValidationError("--digits", "spectrum takes a single symbol");
    const char glyph = digits[0];
    const Backend backend = backend_from_name(backend_str);

    const SignalBuffer x = synthesize_digit(glyph, std::size_t(mark), fs);
    fs::create_directories(out_dir);
    const std::string tag = sanitize_glyph(glyph);

    const std::string spec_name = "digit_" + tag + "_spectrum.csv";
    write_csv_spectrum(dft_uniform(x, n), out_dir / spec_name);

    const std::string time_name = "digit_" + tag + "_time.csv";
    {
        CsvWriter csv(out_dir / time_name, {"n", "sample"});
        for (std::size_t i = 0; i < x.size(); ++i)
            csv.row({CsvWriter::num(i), CsvWriter::num(x.samples[i])});
    }

    const std::string bank_name = "digit_" + tag + "_bank.csv";
    {
        const SpectrumEstimate bank =
            dtmf_bank(x, backend == Backend::dft ? Backend::goertzel : backend, n);
        CsvWriter csv(out_dir / bank_name, {"freq_hz", "omega_rad", "power", "backend"});
        for (std::size_t i = 0; i < bank.freqs.size(); ++i)
            csv.row({CsvWriter::num(bank.freqs[i] * fs / (2.0 * kPi)),
                     CsvWriter::num(bank.freqs[i]), CsvWriter::num(bank.values[i].real()),
                     backend_name(bank.backend)});
    }

    json cfg;
    cfg["digit"] = std::string(1, glyph);
    cfg["mark"] = mark;
    cfg["n_dft"] = n;
    cfg["backend"] = backend_str;
    cfg["fs"] = fs;
    write_manifest(out_dir, "spectrum", cfg, {spec_name, time_name, bank_name});
    return 0;
}

int run_sweep_snr(const std::string& digits_raw, const std::string& snr_range,
                  double snr_single, bool snr_given, std::size_t trials, int mark,
                  const std::string& backend_str, std::size_t n, bool seed_given,
                  std::uint64_t seed, unsigned threads, double fs,
                  const fs::path& out_dir) {
    const std::string digits = require_dial_string(digits_raw);
    if (!seed_given) throw CLI::ValidationError("--seed", "required for stochastic runs");
    if (trials == 0) throw CLI::ValidationError("--trials", "must be >= 1");
    const std::vector<double> snrs = parse_snr_values(snr_range, snr_single, snr_given);

    ClassifierConfig cls;
    cls.backend = backend_from_name(backend_str);
    cls.n_dft = n;

    std::vector<ErrorRatePoint> rows;
    std::uint64_t point = 0;
    for (double snr : snrs)
        for (char g : digits)
            rows.push_back(digit_error_rate(g, std::size_t(mark), fs, snr, trials, cls,
                                            derive_seed(seed, point++), threads));

    fs::create_directories(out_dir);
    write_csv_sweep(rows, out_dir / "snr_sweep.csv");

    json cfg;
    cfg["digits"] = digits;
    cfg["snr_values"] = snrs;
    cfg["trials"] = trials;
    cfg["mark"] = mark;
    cfg["backend"] = backend_str;
    cfg["n_dft"] = n;
    cfg["seed"] = seed;
    cfg["threads"] = threads;
    cfg["fs"] = fs;
    write_manifest(out_dir, "sweep-snr", cfg, {"snr_sweep.csv"});
    return 0;
}

int run_sweep_timing(const std::string& digits_raw, const TimingFlags& test_timing,
                     int base_mark, int base_space, const std::string& backend_str,
                     std::size_t n, bool seed_given, std::uint64_t seed, double fs,
                     const SegFlags& seg_flags, const fs::path& out_dir) {
    const std::string digits = require_dial_string(digits_raw);
    if (test_timing.stochastic() && !seed_given)
        throw CLI::ValidationError("--seed", "required for stochastic runs");

    const TimingProfile base = TimingProfile::fixed(digits.size(), base_mark, base_space);
    const TimingProfile test = test_timing.realize(digits.size(), derive_seed(seed, 0));

    const SignalBuffer x_base = synthesize_sequence(digits, base, fs);
    const SignalBuffer x_test = synthesize_sequence(digits, test, fs);

    const SegmentationConfig seg = seg_flags.resolve(fs);
    ClassifierConfig cls;
    cls.backend = backend_from_name(backend_str);
    cls.n_dft = n;

    const DecodeReport rep_base = decode_number(x_base, seg, cls);
    const DecodeReport rep_test = decode_number(x_test, seg, cls);

    fs::create_directories(out_dir);
    CsvWriter csv(out_dir / "timing_sweep.csv",
                  {"digit_index", "glyph", "mark_base", "space_base", "mark_test",
                   "space_test", "decoded_base", "decoded_test", "row_hz_base",
                   "col_hz_base", "row_hz_test", "col_hz_test", "peaks_match"});
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const bool hb = i < rep_base.frames.size();
        const bool ht = i < rep_test.frames.size();
        const Classification cb = hb ? rep_base.frames[i].result : Classification{};
        const Classification ct = ht ? rep_test.frames[i].result : Classification{};
        const bool match = hb && ht && cb.tone && ct.tone && cb.row_hz == ct.row_hz &&
                           cb.col_hz == ct.col_hz;
        csv.row({CsvWriter::num(i), std::string(1, digits[i]),
                 CsvWriter::num(static_cast<long long>(base.marks[i])),
                 CsvWriter::num(static_cast<long long>(i < base.spaces.size()
                                                           ? base.spaces[i] : 0)),
                 CsvWriter::num(static_cast<long long>(test.marks[i])),
                 CsvWriter::num(static_cast<long long>(i < test.spaces.size()
                                                           ? test.spaces[i] : 0)),
                 cb.tone ? std::string(1, cb.glyph) : "-",
                 ct.tone ? std::string(1, ct.glyph) : "-", CsvWriter::num(cb.row_hz),
                 CsvWriter::num(cb.col_hz), CsvWriter::num(ct.row_hz),
                 CsvWriter::num(ct.col_hz), match ? "1" : "0"});
    }

    json cfg;
    cfg["digits"] = digits;
    cfg["baseline_mark"] = base_mark;
    cfg["baseline_space"] = base_space;
    cfg["timing"] = test_timing.to_json();
    cfg["realized_marks"] = test.marks;
    cfg["realized_spaces"] = test.spaces;
    cfg["backend"] = backend_str;
    cfg["n_dft"] = n;
    cfg["seed"] = seed_given ? json(seed) : json(nullptr);
    cfg["fs"] = fs;
    cfg["segmentation"] = SegFlags::to_json(seg);
    cfg["decoded_base"] = rep_base.digits;
    cfg["decoded_test"] = rep_test.digits;
    write_manifest(out_dir, "sweep-timing", cfg, {"timing_sweep.csv"});
    return 0;
}

int run_sweep_nfft(const std::string& digits_raw, std::vector<std::size_t> n_list,
                   const TimingFlags& timing, const std::string& backend_str,
                   bool seed_given, std::uint64_t seed, double fs,
                   const SegFlags& seg_flags, const fs::path& out_dir) {
    const std::string digits = require_dial_string(digits_raw);
    if (timing.stochastic() && !seed_given)
        throw CLI::ValidationError("--seed", "required for stochastic runs");
    if (n_list.empty()) n_list = {1100, 1300, 1500, 1700, 2500, 2800, 1900};

    const TimingProfile profile = timing.realize(digits.size(), derive_seed(seed, 0));
    const SignalBuffer x = synthesize_sequence(digits, profile, fs);
    const SegmentationConfig seg = seg_flags.resolve(fs);

    fs::create_directories(out_dir);
    CsvWriter csv(out_dir / "nfft_sweep.csv",
                  {"n_dft", "digit_index", "glyph", "decoded_glyph", "decoded_string",
                   "row_bin", "row_bin_target", "col_bin", "col_bin_target",
                   "within_one_bin"});
    for (std::size_t n : n_list) {
        ClassifierConfig cls;
        cls.backend = backend_from_name(backend_str);
        cls.n_dft = n;
        const DecodeReport rep = decode_number(x, seg, cls);
        for (std::size_t i = 0; i < rep.frames.size(); ++i) {
            const char truth = i < digits.size() ? digits[i] : '-';
            const FramePeaks pk = frame_peak_bins(x, rep.frames[i], n);
            double row_target = 0.0, col_target = 0.0;
            bool within = false;
            if (truth != '-') {
                const RadianPair w = radian_pair(truth, fs);
                row_target = w.w_row * double(n) / (2.0 * kPi);
                col_target = w.w_col * double(n) / (2.0 * kPi);
                within = std::abs(double(pk.row_bin) - row_target) <= 1.0 &&
                         std::abs(double(pk.col_bin) - col_target) <= 1.0;
            }
            const Classification& c = rep.frames[i].result;
            csv.row({CsvWriter::num(n), CsvWriter::num(i), std::string(1, truth),
                     c.tone ? std::string(1, c.glyph) : "-", rep.digits,
                     CsvWriter::num(pk.row_bin), CsvWriter::num(row_target),
                     CsvWriter::num(pk.col_bin), CsvWriter::num(col_target),
                     within ? "1" : "0"});
        }
    }

    json cfg;
    cfg["digits"] = digits;
    cfg["n_list"] = n_list;
    cfg["timing"] = timing.to_json();
    cfg["realized_marks"] = profile.marks;
    cfg["realized_spaces"] = profile.spaces;
    cfg["backend"] = backend_str;
    cfg["seed"] = seed_given ? json(seed) : json(nullptr);
    cfg["fs"] = fs;
    cfg["segmentation"] = SegFlags::to_json(seg);
    write_manifest(out_dir, "sweep-nfft", cfg, {"nfft_sweep.csv"});
    return 0;
}

// Direct DFT bin by plain summation; the selftest's own reference.
std::complex<double> direct_bin(const std::vector<double>& x, std::size_t k,
                                std::size_t n) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < std::min(x.size(), n); ++i)
        acc += x[i] * std::polar(1.0, -2.0 * kPi * double(k) * double(i) / double(n));
    return acc;
}

int run_selftest(const fs::path& out_dir, bool write_out) {
    int failures = 0;
    auto report = [&](bool ok, const std::string& name, const std::string& detail) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
        if (!ok) ++failures;
    };

    {  // Goertzel vs direct summation
        Rng rng(101);
        double worst = 0.0;
        for (int t = 0; t < 200; ++t) {
            const auto n = static_cast<std::size_t>(rng.uniform_int(1, 64));
            SignalBuffer x;
            x.samples.resize(n);
            for (double& v : x.samples) v = 2.0 * rng.uniform01() - 1.0;
            const auto k = static_cast<std::size_t>(rng.uniform_int(0, std::int64_t(n) - 1));
            worst = std::max(
                worst, std::abs(goertzel(x, k, n) - direct_bin(x.samples, k, n)) / double(n));
        }
        report(worst <= 1e-9, "goertzel-vs-dft", "worst err/N " + CsvWriter::num(worst));
    }

    {  // subband identities
        Rng rng(102);
        double worst_rec = 0.0, worst_split = 0.0;
        for (int t = 0; t < 100; ++t) {
            const auto half = static_cast<std::size_t>(rng.uniform_int(2, 100));
            SignalBuffer x;
            x.samples.resize(2 * half);
            for (double& v : x.samples) v = 2.0 * rng.uniform01() - 1.0;
            const SignalBuffer back = subband_reconstruct(subband_decompose(x));
            for (std::size_t i = 0; i < x.size(); ++i)
                worst_rec = std::max(worst_rec, std::abs(back.samples[i] - x.samples[i]));
            const SubbandPair p = subband_decompose(x);
            const double w = 0.999 * kPi * rng.uniform01();
            const auto z = std::polar(1.0, w);
            const auto lhs = ndft_point(x, z);
            const auto rhs = (1.0 + 1.0 / z) * ndft_point(p.g_low, z * z) +
                             (1.0 - 1.0 / z) * ndft_point(p.g_high, z * z);
            worst_split = std::max(worst_split, std::abs(lhs - rhs));
        }
        report(worst_rec <= 1e-15 && worst_split <= 1e-9, "subband-identities",
               "reconstruct " + CsvWriter::num(worst_rec) + ", split " +
                   CsvWriter::num(worst_split));
    }

    {  // AWGN calibration
        const SignalBuffer x = synthesize_digit('2', 100000, 8192.0);
        double worst = 0.0;
        for (double target : {1.0, 2.0, 3.0, 4.0, 5.0})
            for (std::uint64_t s = 0; s < 10; ++s)
                worst = std::max(
                    worst, std::abs(measured_snr(x, add_awgn(x, {target, s})) - target));
        report(worst <= 0.1, "awgn-calibration",
               "worst |err| " + CsvWriter::num(worst) + " dB");
    }

    {  // SB-NDFT vs exact NDFT over the Table II tones
        double worst_own = 0.0, worst_norm = 0.0;
        for (char g : {'1', '2', '3', '4', '5', '6', '7', '8', '9', '*', '0', '#'}) {
            const SignalBuffer x = synthesize_digit(g, 1024, 8192.0);
            const DtmfSymbol sym = symbol_frequencies(g);
            std::vector<double> freqs(kRowHz.begin(), kRowHz.end());
            freqs.insert(freqs.end(), kColHz.begin(), kColHz.end());
            double peak_power = 0.0;
            std::vector<double> exact(8), est(8);
            for (std::size_t i = 0; i < 8; ++i) {
                const double w = 2.0 * kPi * freqs[i] / 8192.0;
                exact[i] = std::norm(ndft_point(x, std::polar(1.0, w)));
                est[i] = sbndft_power(x, w);
                peak_power = std::max(peak_power, exact[i]);
            }
            for (std::size_t i = 0; i < 8; ++i) {
                if (freqs[i] == sym.f_row || freqs[i] == sym.f_col)
                    worst_own = std::max(worst_own, std::abs(est[i] - exact[i]) / exact[i]);
                worst_norm = std::max(worst_norm, std::abs(est[i] - exact[i]) / peak_power);
            }
        }
        report(worst_own <= 0.05 && worst_norm <= 0.01, "sbndft-vs-ndft",
               "own-freq rel " + CsvWriter::num(worst_own) + ", peak-normalized " +
                   CsvWriter::num(worst_norm));
    }

    {  // cost of sbndft vs full-length goertzel at one frequency
        const SignalBuffer x = synthesize_digit('2', 2048, 8192.0);
        const double w = radian_pair('2', 8192.0).w_row;
        using clock = std::chrono::steady_clock;
        volatile double sink = 0.0;
        const int reps = 2000;
        const auto t0 = clock::now();
        for (int i = 0; i < reps; ++i) sink = sink + goertzel_power(x, w, 2048).power;
        const auto t1 = clock::now();
        for (int i = 0; i < reps; ++i) sink = sink + sbndft_power(x, w);
        const auto t2 = clock::now();
        const double tg = std::chrono::duration<double>(t1 - t0).count();
        const double ts = std::chrono::duration<double>(t2 - t1).count();
        // recursion lengths are N vs N/2, so ~0.5 is the expected ratio
        report(ts < tg, "sbndft-cost",
               "time ratio sbndft/goertzel " + CsvWriter::num(ts / tg) +
                   ", recursion length ratio 0.5");
    }

    if (write_out) {
        fs::create_directories(out_dir);
        json cfg;
        cfg["failures"] = failures;
        write_manifest(out_dir, "selftest", cfg, {});
    }
    std::cout << (failures == 0 ? "selftest: all checks passed\n" : "selftest: FAILURES\n");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DTMF signal laboratory: synthesize, corrupt, and decode "
                 "touch-tone dial strings"};
    app.require_subcommand(1);

    std::string digits;
    double fs = 8192.0;
    std::string backend = "goertzel";
    std::size_t n_dft = 2048;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out_dir = ".";
    unsigned threads = 1;

    auto add_seed = [&](CLI::App& cmd, const char* help) {
        cmd.add_option("--seed", seed, help)->each([&](const std::string&) {
            seed_given = true;
        });
    };

    // encode
    auto* enc = app.add_subcommand("encode", "Synthesize a dial string to WAV");
    TimingFlags enc_timing;
    double enc_snr = 0.0;
    enc->add_option("--digits", digits, "Dial string ('-' and ' ' ignored)")->required();
    enc->add_option("--fs", fs, "Sample rate, Hz");
    enc_timing.add_to(*enc);
    auto* enc_snr_opt = enc->add_option("--snr", enc_snr, "Add AWGN at this SNR, dB");
    add_seed(*enc, "Master seed (required for stochastic runs)");
    enc->add_option("--out-dir", out_dir, "Artifact directory");

    // decode
    auto* dec = app.add_subcommand("decode", "Decode a WAV file to a dial string");
    std::string wav_in;
    bool include_1633 = false;
    SegFlags dec_seg;
    dec->add_option("wav", wav_in, "Input WAV (PCM16 mono)")->required();
    dec->add_option("--backend", backend, "dtft | goertzel | sbndft");
    dec->add_option("--n", n_dft, "DFT length for classification");
    dec->add_flag("--include-1633", include_1633, "Enable the A-D column");
    dec_seg.add_to(*dec);
    dec->add_option("--out-dir", out_dir, "Artifact directory");

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "Spectrum artifacts for one digit");
    int spec_mark = 1000;
    spec->add_option("--digits", digits, "Single keypad symbol")->required();
    spec->add_option("--mark", spec_mark, "Tone length, samples")->check(CLI::PositiveNumber);
    spec->add_option("--n", n_dft, "DFT length");
    spec->add_option("--backend", backend, "Bank backend: dtft | goertzel | sbndft");
    spec->add_option("--fs", fs, "Sample rate, Hz");
    spec->add_option("--out-dir", out_dir, "Artifact directory");

    // sweep-snr
    auto* ssnr =
        app.add_subcommand("sweep-snr", "Per-digit Monte Carlo error sweep over SNR");
    std::string snr_range;
    double snr_single = 0.0;
    std::size_t trials = 1000;
    int sweep_mark = 1000;
    ssnr->add_option("--digits", digits, "Digits to sweep")->default_val("02589");
    ssnr->add_option("--snr-range", snr_range, "lo:hi[:step], default 1:5:1");
    auto* snr_opt = ssnr->add_option("--snr", snr_single, "Single SNR instead of a range");
    ssnr->add_option("--trials", trials, "Trials per (digit, SNR) point");
    ssnr->add_option("--mark", sweep_mark, "Tone length per trial, samples");
    ssnr->add_option("--backend", backend, "dtft | goertzel | sbndft");
    ssnr->add_option("--n", n_dft, "DFT length for classification");
    add_seed(*ssnr, "Master seed (required)");
    ssnr->add_option("--threads", threads, "Worker threads per sweep point");
    ssnr->add_option("--fs", fs, "Sample rate, Hz");
    ssnr->add_option("--out-dir", out_dir, "Artifact directory");

    // sweep-timing
    auto* stim = app.add_subcommand("sweep-timing",
                                    "Compare decoding under fixed vs jittered Mark/Space");
    TimingFlags stim_timing;
    stim_timing.mark_list = {900, 1050, 980, 1300, 680, 900, 620};
    stim_timing.space_list = {150, 201, 21, 400, 320, 80};
    int base_mark = 1000, base_space = 100;
    SegFlags stim_seg;
    stim->add_option("--digits", digits, "Dial string")->default_val("49158");
    stim_timing.add_to(*stim);
    stim->add_option("--baseline-mark", base_mark, "Fixed-timing baseline mark");
    stim->add_option("--baseline-space", base_space, "Fixed-timing baseline space");
    stim->add_option("--backend", backend, "dtft | goertzel | sbndft");
    stim->add_option("--n", n_dft, "DFT length for classification");
    add_seed(*stim, "Master seed (required in distribution mode)");
    stim->add_option("--fs", fs, "Sample rate, Hz");
    stim_seg.add_to(*stim);
    stim->add_option("--out-dir", out_dir, "Artifact directory");

    // sweep-nfft
    auto* snf = app.add_subcommand("sweep-nfft", "Decode one jittered signal at several N");
    std::vector<std::size_t> n_list;
    TimingFlags snf_timing;
    snf_timing.mark = 2048;
    snf_timing.mark_spread = 300.0;
    snf_timing.space = 100;
    snf_timing.space_spread = 30.0;
    SegFlags snf_seg;
    snf->add_option("--digits", digits, "Dial string")->default_val("49158");
    snf->add_option("--n-list", n_list, "DFT lengths (comma separated)")->delimiter(',');
    snf_timing.add_to(*snf);
    snf->add_option("--backend", backend, "dtft | goertzel | sbndft");
    add_seed(*snf, "Master seed (required in distribution mode)");
    snf->add_option("--fs", fs, "Sample rate, Hz");
    snf_seg.add_to(*snf);
    snf->add_option("--out-dir", out_dir, "Artifact directory");

    // selftest
    auto* st = app.add_subcommand("selftest", "Run the built-in oracle checks");
    bool st_manifest = false;
    st->add_option("--out-dir", out_dir, "Artifact directory for the manifest");
    st->add_flag("--manifest", st_manifest, "Write a selftest manifest");

    CLI11_PARSE(app, argc, argv);

    try {
        if (enc->parsed())
            return run_encode(digits, fs, enc_timing, enc_snr_opt->count() > 0, enc_snr,
                              seed_given, seed, out_dir);
        if (dec->parsed())
            return run_decode(wav_in, backend, n_dft, include_1633, dec_seg, out_dir);
        if (spec->parsed())
            return run_spectrum(digits, spec_mark, n_dft, backend, fs, out_dir);
        if (ssnr->parsed())
            return run_sweep_snr(digits, snr_range, snr_single, snr_opt->count() > 0,
                                 trials, sweep_mark, backend, n_dft, seed_given, seed,
                                 threads, fs, out_dir);
        if (stim->parsed())
            return run_sweep_timing(digits, stim_timing, base_mark, base_space, backend,
                                    n_dft, seed_given, seed, fs, stim_seg, out_dir);
        if (snf->parsed())
            return run_sweep_nfft(digits, n_list, snf_timing, backend, seed_given, seed,
                                  fs, snf_seg, out_dir);
        if (st->parsed()) return run_selftest(out_dir, st_manifest);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

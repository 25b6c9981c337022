#include "dtmf/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dtmf/rng.hpp"
#include "dtmf/tones.hpp"

namespace dtmf {

SegmentationConfig SegmentationConfig::standard(double fs) {
    SegmentationConfig cfg;
    cfg.min_mark = static_cast<int>(std::lround(0.040 * fs));
    cfg.min_space = static_cast<int>(std::lround(0.040 * fs));
    return cfg;
}

SegmentationConfig SegmentationConfig::experiment(double fs) {
    SegmentationConfig cfg = standard(fs);
    cfg.min_space = 20;
    return cfg;
}

void SegmentationConfig::validate() const {
    if (frame_len < 1)
        throw std::invalid_argument("segmentation: frame_len must be >= 1");
    if (!(energy_threshold_ratio > 0.0 && energy_threshold_ratio < 1.0))
        throw std::invalid_argument("segmentation: threshold ratio must be in (0, 1)");
    if (!(exit_hysteresis > 0.0 && exit_hysteresis <= 1.0))
        throw std::invalid_argument("segmentation: exit hysteresis must be in (0, 1]");
    if (min_mark < frame_len)
        throw std::invalid_argument("segmentation: min_mark must be >= frame_len");
    if (min_space < 0)
        throw std::invalid_argument("segmentation: min_space must be >= 0");
}

std::vector<Frame> segment(const SignalBuffer& x, const SegmentationConfig& cfg) {
    cfg.validate();
    const std::size_t n = x.size();
    if (n == 0) return {};

    // Mean power over a window of frame_len samples centered on each
    // position, clipped at the buffer edges.
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + x.samples[i] * x.samples[i];
    const auto win = static_cast<std::size_t>(cfg.frame_len);
    const std::size_t half = win / 2;
    std::vector<double> power(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i > half ? i - half : 0;
        const std::size_t hi = std::min(lo + win, n);
        power[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
    }

    const double peak = *std::max_element(power.begin(), power.end());
    if (peak <= 0.0) return {};
    const double enter_rms = cfg.energy_threshold_ratio;
    const double enter = enter_rms * enter_rms * peak;
    const double exit = (cfg.exit_hysteresis * enter_rms) *
                        (cfg.exit_hysteresis * enter_rms) * peak;

    // Hysteresis walk: open at `enter`, close below `exit`.
    std::vector<Frame> runs;
    bool in_mark = false;
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_mark && power[i] >= enter) {
            in_mark = true;
            start = i;
        } else if (in_mark && power[i] < exit) {
            runs.push_back({start, i - start});
            in_mark = false;
        }
    }
    if (in_mark) runs.push_back({start, n - start});

    // The sliding window erodes a silent gap by about one window; widen
    // detected lengths by frame_len before comparing against the minima.
    std::vector<Frame> merged;
    for (const Frame& r : runs) {
        if (!merged.empty()) {
            const std::size_t gap = r.start - (merged.back().start + merged.back().length);
            if (gap + win < static_cast<std::size_t>(cfg.min_space)) {
                merged.back().length = r.start + r.length - merged.back().start;
                continue;
            }
        }
        merged.push_back(r);
    }
    std::vector<Frame> kept;
    for (const Frame& r : merged)
        if (r.length + win >= static_cast<std::size_t>(cfg.min_mark)) kept.push_back(r);
    return kept;
}

Classification classify_frame(const SignalBuffer& frame, const ClassifierConfig& cfg) {
    Classification out;
    if (frame.empty()) return out;

    const std::size_t analysis_len = std::min(frame.size(), cfg.n_dft);
    const SpectrumEstimate bank = dtmf_bank(frame, cfg.backend, cfg.n_dft);
    for (std::size_t i = 0; i < 8; ++i) out.energies[i] = bank.values[i].real();

    const std::size_t n_cols = cfg.include_1633 ? 4 : 3;
    int best_row = 0, best_col = 0;
    double row_second = 0.0, col_second = 0.0;
    for (int i = 1; i < 4; ++i)
        if (out.energies[static_cast<std::size_t>(i)] > out.energies[static_cast<std::size_t>(best_row)])
            best_row = i;
    for (int i = 0; i < 4; ++i)
        if (i != best_row)
            row_second = std::max(row_second, out.energies[static_cast<std::size_t>(i)]);
    for (std::size_t i = 1; i < n_cols; ++i)
        if (out.energies[4 + i] > out.energies[4 + static_cast<std::size_t>(best_col)])
            best_col = static_cast<int>(i);
    for (std::size_t i = 0; i < n_cols; ++i)
        if (static_cast<int>(i) != best_col)
            col_second = std::max(col_second, out.energies[4 + i]);

    const double row_best = out.energies[static_cast<std::size_t>(best_row)];
    const double col_best = out.energies[4 + static_cast<std::size_t>(best_col)];
    const double floor = cfg.noise_floor_coeff * static_cast<double>(analysis_len) *
                         static_cast<double>(analysis_len);
    if (analysis_len < cfg.min_frame || row_best < floor || col_best < floor)
        return out;  // no tone

    const double inf = std::numeric_limits<double>::infinity();
    const double row_conf = row_second > 0.0 ? row_best / row_second : inf;
    const double col_conf = col_second > 0.0 ? col_best / col_second : inf;

    out.tone = true;
    out.glyph = kKeypad[static_cast<std::size_t>(best_row)][static_cast<std::size_t>(best_col)];
    out.confidence = std::min(row_conf, col_conf);
    out.row_hz = kRowHz[static_cast<std::size_t>(best_row)];
    out.col_hz = kColHz[static_cast<std::size_t>(best_col)];
    return out;
}

DecodeReport decode_number(const SignalBuffer& x, const SegmentationConfig& seg,
                           const ClassifierConfig& cls) {
    DecodeReport report;
    report.backend = cls.backend;
    report.n_dft = cls.n_dft;
    for (const Frame& f : segment(x, seg)) {
        SignalBuffer slice;
        slice.fs = x.fs;
        slice.samples.assign(x.samples.begin() + static_cast<long>(f.start),
                             x.samples.begin() + static_cast<long>(f.start + f.length));
        FrameRecord rec;
        rec.start = f.start;
        rec.length = f.length;
        rec.result = classify_frame(slice, cls);
        if (rec.result.tone) report.digits.push_back(rec.result.glyph);
        report.frames.push_back(rec);
    }
    return report;
}

ErrorRatePoint digit_error_rate(char glyph, std::size_t mark_samples, double fs,
                                double snr_db, std::size_t trials,
                                const ClassifierConfig& cls,
                                std::uint64_t master_seed, unsigned threads) {
    if (trials == 0)
        throw std::invalid_argument("digit_error_rate: need at least one trial");
    const SignalBuffer clean = synthesize_digit(glyph, mark_samples, fs);

    const unsigned n_workers = std::max(1u, threads);
    std::vector<std::size_t> errors_per_worker(n_workers, 0);
    auto worker = [&](unsigned widx) {
        std::size_t errs = 0;
        for (std::size_t t = widx; t < trials; t += n_workers) {
            const SignalBuffer noisy = add_awgn(clean, {snr_db, derive_seed(master_seed, t)});
            const Classification c = classify_frame(noisy, cls);
            if (!c.tone || c.glyph != glyph) ++errs;
        }
        errors_per_worker[widx] = errs;
    };
    if (n_workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker, i);
        for (auto& th : pool) th.join();
    }

    ErrorRatePoint pt;
    pt.glyph = glyph;
    pt.snr_db = snr_db;
    pt.trials = trials;
    for (std::size_t e : errors_per_worker) pt.errors += e;
    pt.measured_pct = 100.0 * static_cast<double>(pt.errors) / static_cast<double>(trials);
    pt.theoretical_pct = theoretical_error_rate(snr_db);
    return pt;
}

}  // namespace dtmf

// Mark/Space segmentation, per-frame symbol classification, and the
// Monte Carlo misclassification sweep.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dtmf/channel.hpp"
#include "dtmf/signal.hpp"
#include "dtmf/spectral.hpp"

namespace dtmf {

// Energy-based segmentation parameters. A sliding RMS window of
// `frame_len` samples is compared against thresholds relative to the
// global peak RMS: a Mark opens at enter = energy_threshold_ratio * peak
// and closes below exit_hysteresis * enter. Detected gap/run lengths are
// widened by frame_len before the min_space / min_mark tests, which
// undoes the ~one-window erosion the sliding RMS applies to silent gaps.
struct SegmentationConfig {
    int frame_len = 24;
    double energy_threshold_ratio = 0.55;
    double exit_hysteresis = 0.72;
    int min_mark = 328;   // 40 ms at 8192 Hz
    int min_space = 328;

    // The 40/40 telephony standard: 40 ms minimum Mark and Space.
    static SegmentationConfig standard(double fs);

    // Experiment configuration: min_space lowered to 20 samples so gaps
    // down to ~2.5 ms split neighbouring digits.
    static SegmentationConfig experiment(double fs);

    void validate() const;
};

struct Frame {
    std::size_t start = 0;
    std::size_t length = 0;
};

// Maximal high-energy runs of x, in order. All-silence input yields an
// empty list.
std::vector<Frame> segment(const SignalBuffer& x, const SegmentationConfig& cfg);

struct ClassifierConfig {
    Backend backend = Backend::goertzel;
    std::size_t n_dft = 2048;
    // Decoding experiments use the 3-column grid; enable for A-D.
    bool include_1633 = false;
    // Frames analysed with fewer samples than this are reported no-tone.
    std::size_t min_frame = 200;
    // Absolute squared-magnitude floor: noise_floor_coeff * L^2 where L
    // is the analysis length. (M/2)^2 at a unit-amplitude peak sits four
    // orders above it.
    double noise_floor_coeff = 1e-6;
};

struct Classification {
    bool tone = false;   // false: silence/degenerate frame, no symbol
    char glyph = 0;
    double confidence = 0.0;  // min over the two groups of best/second-best
    std::array<double, 8> energies{};  // bank order: 4 rows then 4 cols
    double row_hz = 0.0;
    double col_hz = 0.0;
};

// Row = argmax of the four row energies, col = argmax of the column
// energies, symbol = grid lookup. Homogeneous in the input scale except
// for the absolute no-tone floor.
Classification classify_frame(const SignalBuffer& frame, const ClassifierConfig& cfg);

struct FrameRecord {
    std::size_t start = 0;
    std::size_t length = 0;
    Classification result;
};

struct DecodeReport {
    std::string digits;  // glyphs of tone frames, in order
    std::vector<FrameRecord> frames;
    Backend backend = Backend::goertzel;
    std::size_t n_dft = 0;
};

DecodeReport decode_number(const SignalBuffer& x, const SegmentationConfig& seg,
                           const ClassifierConfig& cls);

// One point of the per-digit error sweep.
struct ErrorRatePoint {
    char glyph = 0;
    double snr_db = 0.0;
    std::size_t trials = 0;
    std::size_t errors = 0;
    double measured_pct = 0.0;
    double theoretical_pct = 0.0;
};

// Monte Carlo misclassification rate of one digit at one SNR: per trial
// the clean mark is corrupted with add_awgn under a seed derived from
// (master_seed, trial) and re-classified with known frame bounds.
// Threading only partitions the trial range; per-trial seeding keeps the
// aggregate identical for any thread count.
ErrorRatePoint digit_error_rate(char glyph, std::size_t mark_samples, double fs,
                                double snr_db, std::size_t trials,
                                const ClassifierConfig& cls,
                                std::uint64_t master_seed, unsigned threads = 1);

}  // namespace dtmf

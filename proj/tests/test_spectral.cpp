#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "dtmf/rng.hpp"
#include "dtmf/spectral.hpp"
#include "dtmf/tones.hpp"
#include "oracle.hpp"

using namespace dtmf;
using std::numbers::pi;

namespace {

SignalBuffer random_buffer(Rng& rng, std::size_t n) {
    SignalBuffer x;
    x.samples.resize(n);
    for (double& v : x.samples) v = 2.0 * rng.uniform01() - 1.0;
    return x;
}

}  // namespace

TEST_CASE("dtft of a unit impulse is flat") {
    const SignalBuffer x = oracle::buffer({1.0, 0.0, 0.0, 0.0, 0.0});
    for (double w : {0.0, 0.3, 1.1, 3.0}) {
        const auto v = dtft_at(x, w);
        CHECK(std::abs(v - std::complex<double>{1.0, 0.0}) < 1e-12);
    }
}

TEST_CASE("dtft of the digit-2 tone peaks on frequency") {
    const SignalBuffer x = synthesize_digit('2', 1000, 8192.0);
    const double w_row = radian_pair('2', 8192.0).w_row;

    const double on_peak = std::abs(dtft_at(x, w_row));
    CHECK(on_peak == doctest::Approx(std::abs(oracle::dtft(x.samples, w_row))).epsilon(1e-9));
    CHECK(on_peak > 450.0);  // ~ M/2 at an on-frequency bin
    CHECK(on_peak < 550.0);

    const double off_peak = std::abs(dtft_at(x, 0.8));
    CHECK(on_peak >= 50.0 * off_peak);
}

TEST_CASE("dtft is linear") {
    Rng rng(11);
    const SignalBuffer x = random_buffer(rng, 300);
    const SignalBuffer y = random_buffer(rng, 300);
    const double alpha = 1.7, beta = -0.4;
    SignalBuffer mix;
    mix.samples.resize(300);
    for (std::size_t i = 0; i < 300; ++i)
        mix.samples[i] = alpha * x.samples[i] + beta * y.samples[i];
    for (double w : {0.1, 0.9, 2.5}) {
        const auto lhs = dtft_at(mix, w);
        const auto rhs = alpha * dtft_at(x, w) + beta * dtft_at(y, w);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
    }
}

TEST_CASE("dft_uniform basics") {
    CHECK_THROWS_AS(dft_uniform(oracle::buffer({1.0}), 0), std::invalid_argument);

    // DC case: constant 1 of length N
    const std::size_t n = 64;
    SignalBuffer ones;
    ones.samples.assign(n, 1.0);
    const SpectrumEstimate est = dft_uniform(ones, n);
    REQUIRE(est.values.size() == n);
    CHECK(est.values[0].real() == doctest::Approx(double(n)).epsilon(1e-12));
    for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(est.values[k]) < 1e-9);
    CHECK(est.freqs[1] == doctest::Approx(2.0 * pi / double(n)));
    CHECK(est.backend == Backend::dft);
    CHECK(est.n_dft == n);
}

TEST_CASE("dft_uniform agrees with the brute-force oracle (fast and direct paths)") {
    Rng rng(21);
    for (std::size_t n : {std::size_t{64}, std::size_t{48}}) {  // pow2 and not
        const SignalBuffer x = random_buffer(rng, n);
        const SpectrumEstimate est = dft_uniform(x, n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto expect = oracle::dft_bin(x.samples, k, n);
            CHECK(std::abs(est.values[k] - expect) <= 1e-9 * double(n));
        }
    }
    // zero padding: M < N
    const SignalBuffer x = random_buffer(rng, 40);
    const SpectrumEstimate est = dft_uniform(x, 128);
    for (std::size_t k = 0; k < 128; ++k)
        CHECK(std::abs(est.values[k] - oracle::dft_bin(x.samples, k, 128)) <= 1e-9 * 128);
}

TEST_CASE("dft_uniform satisfies Parseval and conjugate symmetry") {
    Rng rng(31);
    const std::size_t n = 256;
    const SignalBuffer x = random_buffer(rng, n);
    const SpectrumEstimate est = dft_uniform(x, n);

    double time_energy = 0.0;
    for (double v : x.samples) time_energy += v * v;
    double freq_energy = 0.0;
    for (const auto& v : est.values) freq_energy += std::norm(v);
    freq_energy /= double(n);
    CHECK(freq_energy == doctest::Approx(time_energy).epsilon(1e-9));

    for (std::size_t k = 1; k < n; ++k)
        CHECK(std::abs(est.values[n - k] - std::conj(est.values[k])) <= 1e-9 * double(n));
}

TEST_CASE("digit-2 spectrum has dominant bins 174 and 334 at N=2048") {
    const SignalBuffer x = synthesize_digit('2', 1000, 8192.0);
    const SpectrumEstimate est = dft_uniform(x, 2048);
    std::size_t k1 = 0, k2 = 0;
    double m1 = -1.0, m2 = -1.0;
    for (std::size_t k = 1; k < 1024; ++k) {
        const double m = std::abs(est.values[k]);
        if (m > m1) {
            k2 = k1; m2 = m1;
            k1 = k; m1 = m;
        } else if (m > m2) {
            k2 = k; m2 = m;
        }
    }
    CHECK(std::min(k1, k2) == 174);
    CHECK(std::max(k1, k2) == 334);
}

TEST_CASE("goertzel equals the DFT bin") {
    const std::size_t n = 200;
    // exact-bin cosine: |X(k)| = N/2
    const std::size_t k = 30;
    SignalBuffer x;
    x.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        x.samples[i] = std::cos(2.0 * pi * double(k) * double(i) / double(n));
    CHECK(std::abs(goertzel(x, k, n)) == doctest::Approx(double(n) / 2.0).epsilon(1e-9));

    SignalBuffer zeros;
    zeros.samples.assign(64, 0.0);
    CHECK(std::abs(goertzel(zeros, 5, 64)) == 0.0);

    CHECK_THROWS_AS(goertzel(x, n, n), std::invalid_argument);
    CHECK_THROWS_AS(goertzel(x, 0, 0), std::invalid_argument);
}

TEST_CASE("goertzel oracle sweep over random buffers") {
    Rng rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 64));
        const SignalBuffer x = random_buffer(rng, n);
        const auto k = static_cast<std::size_t>(rng.uniform_int(0, std::int64_t(n) - 1));
        const auto got = goertzel(x, k, n);
        const auto expect = oracle::dft_bin(x.samples, k, n);
        REQUIRE(std::abs(got - expect) <= 1e-9 * double(n));
    }
}

TEST_CASE("goertzel with zero padding matches the padded DFT") {
    Rng rng(55);
    const SignalBuffer x = random_buffer(rng, 23);
    for (std::size_t k : {std::size_t{0}, std::size_t{7}, std::size_t{40}}) {
        const auto got = goertzel(x, k, 64);
        const auto expect = oracle::dft_bin(x.samples, k, 64);
        CHECK(std::abs(got - expect) <= 1e-9 * 64);
    }
}

TEST_CASE("goertzel_power selects the nearest bin") {
    const SignalBuffer x = synthesize_digit('2', 1000, 8192.0);
    const double w_row = radian_pair('2', 8192.0).w_row;  // k_exact = 174.25
    const GoertzelPower gp = goertzel_power(x, w_row, 2048);
    CHECK(gp.bin == 174);
    CHECK(gp.bin_w == doctest::Approx(2.0 * pi * 174.0 / 2048.0));
    CHECK(gp.power ==
          doctest::Approx(std::norm(oracle::dft_bin(x.samples, 174, 2048))).epsilon(1e-9));

    // ties round half-up: w exactly between bins 2 and 3 of N=16
    const double w_tie = 2.0 * pi * 2.5 / 16.0;
    CHECK(goertzel_power(x, w_tie, 16).bin == 3);

    SignalBuffer zeros;
    zeros.samples.assign(100, 0.0);
    CHECK(goertzel_power(zeros, 1.0, 128).power == 0.0);

    CHECK_THROWS_AS(goertzel_power(x, -0.1, 64), std::invalid_argument);
    CHECK_THROWS_AS(goertzel_power(x, 3.5, 64), std::invalid_argument);
}

TEST_CASE("goertzel_power is homogeneous of degree two") {
    Rng rng(66);
    const SignalBuffer x = random_buffer(rng, 500);
    SignalBuffer scaled = x;
    for (double& v : scaled.samples) v *= 3.0;
    for (double w : {0.3, 0.9}) {
        const double base = goertzel_power(x, w, 512).power;
        const double big = goertzel_power(scaled, w, 512).power;
        CHECK(big == doctest::Approx(9.0 * base).epsilon(1e-9));
    }
}

TEST_CASE("subband split examples and round trip") {
    {
        const SubbandPair p = subband_decompose(oracle::buffer({1.0, 1.0}));
        CHECK(p.g_low.samples == std::vector<double>{1.0});
        CHECK(p.g_high.samples == std::vector<double>{0.0});
    }
    {
        const SubbandPair p = subband_decompose(oracle::buffer({1.0, -1.0}));
        CHECK(p.g_low.samples == std::vector<double>{0.0});
        CHECK(p.g_high.samples == std::vector<double>{1.0});
    }
    CHECK_THROWS_AS(subband_decompose(oracle::buffer({1.0, 2.0, 3.0})),
                    std::invalid_argument);

    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = 2 * static_cast<std::size_t>(rng.uniform_int(1, 100));
        const SignalBuffer x = random_buffer(rng, n);
        const SignalBuffer back = subband_reconstruct(subband_decompose(x));
        REQUIRE(back.size() == n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(back.samples[i] - x.samples[i]) <= 1e-15);
    }

    SubbandPair bad;
    bad.g_low.samples = {1.0, 2.0};
    bad.g_high.samples = {1.0};
    CHECK_THROWS_AS(subband_reconstruct(bad), std::invalid_argument);
}

TEST_CASE("ndft_point generalizes the DFT and rejects z=0") {
    Rng rng(88);
    const std::size_t n = 32;
    const SignalBuffer x = random_buffer(rng, n);
    for (std::size_t k : {std::size_t{0}, std::size_t{5}, std::size_t{17}}) {
        const auto z = std::polar(1.0, 2.0 * pi * double(k) / double(n));
        CHECK(std::abs(ndft_point(x, z) - oracle::dft_bin(x.samples, k, n)) <= 1e-9 * n);
    }

    CHECK(ndft_point(oracle::buffer({3.25}), {0.0, 0.0}) ==
          std::complex<double>{3.25, 0.0});
    CHECK(ndft_point(oracle::buffer({3.25}), {0.5, 0.5}) ==
          std::complex<double>{3.25, 0.0});
    CHECK_THROWS_AS(ndft_point(x, {0.0, 0.0}), std::invalid_argument);

    // off-circle point against the oracle
    const auto z = std::polar(1.05, 0.7);
    CHECK(std::abs(ndft_point(x, z) - oracle::ndft(x.samples, z)) < 1e-9);
}

TEST_CASE("subband split identity at arbitrary z") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = 2 * static_cast<std::size_t>(rng.uniform_int(2, 80));
        const SignalBuffer x = random_buffer(rng, n);
        const SubbandPair p = subband_decompose(x);
        const double w = pi * rng.uniform01() * 0.999;
        const auto z = std::polar(1.0, w);
        const auto lhs = ndft_point(x, z);
        const auto rhs = (1.0 + 1.0 / z) * ndft_point(p.g_low, z * z) +
                         (1.0 - 1.0 / z) * ndft_point(p.g_high, z * z);
        REQUIRE(std::abs(lhs - rhs) <= 1e-9);
    }
}

TEST_CASE("sbndft_power examples") {
    SignalBuffer zeros;
    zeros.samples.assign(64, 0.0);
    CHECK(sbndft_power(zeros, 0.5) == 0.0);

    // digit-2 tone at its nearest-bin row frequency: within 5% of the exact NDFT
    const SignalBuffer x = synthesize_digit('2', 1024, 8192.0);
    const double w_row = 2.0 * pi * 174.0 / 2048.0;
    const double exact = std::norm(oracle::ndft(x.samples, std::polar(1.0, w_row)));
    const double est = sbndft_power(x, w_row);
    CHECK(std::abs(est - exact) / exact < 0.05);

    CHECK_THROWS_AS(sbndft_power(oracle::buffer({1.0, 2.0, 3.0}), 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(sbndft_power(x, pi), std::invalid_argument);
    CHECK_THROWS_AS(sbndft_power(x, -0.2), std::invalid_argument);
}

TEST_CASE("sbndft_power at pi/2 reduces to 8|G_L|^2") {
    Rng rng(111);
    const SignalBuffer x = random_buffer(rng, 128);
    const SubbandPair p = subband_decompose(x);
    const double expect = 8.0 * std::norm(oracle::ndft(p.g_low.samples,
                                                       std::polar(1.0, pi)));
    CHECK(sbndft_power(x, pi / 2.0) == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("dropping the high band is exact when it vanishes") {
    // With x[2n] == x[2n+1] the high subband is identically zero, so the
    // truncated estimate (1+z^-1) G_L(z^2) -- the quantity before the
    // magnitude compensation -- carries the full transform. Recover its
    // squared magnitude from sbndft_power by undoing the compensation
    // factor (2/(1+cos w))^2.
    Rng rng(222);
    for (int trial = 0; trial < 20; ++trial) {
        const auto half = static_cast<std::size_t>(rng.uniform_int(4, 128));
        SignalBuffer x;
        x.samples.resize(2 * half);
        for (std::size_t i = 0; i < half; ++i) {
            const double v = 2.0 * rng.uniform01() - 1.0;
            x.samples[2 * i] = v;
            x.samples[2 * i + 1] = v;  // pairwise equal -> g_high == 0
        }
        const double w = 0.1 + 2.9 * rng.uniform01();
        const double exact = std::norm(oracle::ndft(x.samples, std::polar(1.0, w)));
        const double c = 1.0 + std::cos(w);
        const double truncated = sbndft_power(x, w) * c * c / 4.0;
        if (exact > 1e-12) REQUIRE(std::abs(truncated - exact) / exact <= 1e-9);
    }
}

TEST_CASE("sbndft_power is homogeneous of degree two") {
    const SignalBuffer x = synthesize_digit('7', 512, 8192.0);
    SignalBuffer scaled = x;
    for (double& v : scaled.samples) v *= 0.5;
    const double w = radian_pair('7', 8192.0).w_col;
    CHECK(sbndft_power(scaled, w) ==
          doctest::Approx(0.25 * sbndft_power(x, w)).epsilon(1e-9));
}

TEST_CASE("dtmf_bank ranks the true pair first") {
    const SignalBuffer x = synthesize_digit('9', 1000, 8192.0);
    for (Backend b : {Backend::dtft, Backend::goertzel, Backend::sbndft}) {
        const SpectrumEstimate est = dtmf_bank(x, b, 2048);
        REQUIRE(est.values.size() == 8);
        std::size_t best_row = 0, best_col = 4;
        for (std::size_t i = 1; i < 4; ++i)
            if (est.values[i].real() > est.values[best_row].real()) best_row = i;
        for (std::size_t i = 5; i < 8; ++i)
            if (est.values[i].real() > est.values[best_col].real()) best_col = i;
        CHECK(est.freqs[best_row] == doctest::Approx(2.0 * pi * 852.0 / 8192.0));
        CHECK(est.freqs[best_col] == doctest::Approx(2.0 * pi * 1477.0 / 8192.0));
        CHECK(est.kind == SpectrumKind::squared_magnitude);
    }
}

TEST_CASE("dtmf_bank on silence is ~zero and rejects bad input") {
    SignalBuffer silence;
    silence.fs = 8192.0;
    silence.samples.assign(1000, 0.0);
    const SpectrumEstimate est = dtmf_bank(silence, Backend::goertzel, 2048);
    for (const auto& v : est.values) CHECK(v.real() <= 1e-18);

    SignalBuffer empty;
    CHECK_THROWS_AS(dtmf_bank(empty, Backend::goertzel, 2048), std::invalid_argument);
    CHECK_THROWS_AS(dtmf_bank(silence, Backend::dft, 2048), std::invalid_argument);
    SignalBuffer slow = silence;
    slow.fs = 3000.0;  // 1633 Hz aliases
    CHECK_THROWS_AS(dtmf_bank(slow, Backend::goertzel, 2048), std::invalid_argument);
}

TEST_CASE("backends agree on argmax for every Table II symbol at 328 samples") {
    for (char g : {'1', '2', '3', '4', '5', '6', '7', '8', '9', '*', '0', '#'}) {
        const SignalBuffer x = synthesize_digit(g, 328, 8192.0);
        int rows[3], cols[3];
        int bi = 0;
        for (Backend b : {Backend::dtft, Backend::goertzel, Backend::sbndft}) {
            const SpectrumEstimate est = dtmf_bank(x, b, 2048);
            int best_row = 0, best_col = 0;
            for (int i = 1; i < 4; ++i)
                if (est.values[std::size_t(i)].real() >
                    est.values[std::size_t(best_row)].real())
                    best_row = i;
            for (int i = 1; i < 3; ++i)  // Table II columns only
                if (est.values[std::size_t(4 + i)].real() >
                    est.values[std::size_t(4 + best_col)].real())
                    best_col = i;
            rows[bi] = best_row;
            cols[bi] = best_col;
            ++bi;
        }
        CHECK(rows[0] == rows[1]);
        CHECK(rows[1] == rows[2]);
        CHECK(cols[0] == cols[1]);
        CHECK(cols[1] == cols[2]);
        // and they point at the glyph's own pair
        const GridPos p = grid_position(g);
        CHECK(rows[0] == p.row);
        CHECK(cols[0] == p.col);
    }
}

TEST_CASE("backend names round-trip") {
    for (Backend b : {Backend::dtft, Backend::dft, Backend::goertzel, Backend::sbndft})
        CHECK(backend_from_name(backend_name(b)) == b);
    CHECK_THROWS_AS(backend_from_name("fft"), std::invalid_argument);
}

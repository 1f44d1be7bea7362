// Copyright 2026 The qpfrft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// Classical complex-signal arithmetic: a radix-2 FFT and two independent
/// evaluations of the (linear) fractional Fourier transform
///
///     F_a[k] = sum_{j=0}^{N-1} f[j] * exp(2 pi i * a * k j / N)
///
/// All transforms here are unnormalized; whoever needs 1/sqrt(N) factors
/// (the quantum pipeline) applies them explicitly.
///
/// Chirp form. With the chirp w(j) = exp(+i pi a j^2 / N) and the identity
/// 2kj = k^2 + j^2 - (k-j)^2,
///
///     exp(2 pi i a kj / N) = w(k) * w(j) * conj(w(k - j)),
///
/// so F_a = w . ((f . w) * conj(w)) where `*` is the linear convolution over
/// lags -(N-1)..(N-1). Writing s = conj(w) = exp(-i pi a j^2 / N), this is
/// "pre- and post-multiply by conj(s), convolve with s". Swapping the roles of
/// s and conj(s) computes F_{-a} instead, which frft_direct catches at once.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qpfrft/error.hpp"

namespace qpfrft {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Complex product without the Annex G inf/nan recovery that std::complex
/// multiplication performs; inputs here are always finite.
inline Complex cmul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// exp(2 pi i * turns). The argument is reduced to [0, 1) in long double
/// before scaling, so large turn counts keep full double accuracy.
inline Complex unit_phase(long double turns) {
    long double frac = turns - std::floor(turns);
    const double angle = static_cast<double>(2.0L * std::numbers::pi_v<long double> * frac);
    return {std::cos(angle), std::sin(angle)};
}

/// exp(2 pi i * num / 2^bits) with num taken modulo 2^bits; exact argument
/// for dyadic phases.
inline Complex dyadic_phase(std::int64_t num, int bits) {
    const std::int64_t den = std::int64_t{1} << bits;
    std::int64_t r = num % den;
    if (r < 0) r += den;
    return unit_phase(static_cast<long double>(r) / static_cast<long double>(den));
}

constexpr bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

constexpr int log2_exact(std::size_t n) {
    int b = 0;
    while ((std::size_t{1} << b) < n) ++b;
    return b;
}

constexpr std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// A finite discrete signal f[0..N-1].
struct Signal {
    std::vector<Complex> values;

    Signal() = default;
    explicit Signal(std::vector<Complex> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    const Complex& operator[](std::size_t i) const { return values[i]; }
    Complex& operator[](std::size_t i) { return values[i]; }

    double norm() const {
        double s = 0;
        for (const auto& v : values) s += std::norm(v);
        return std::sqrt(s);
    }

    /// Returns a copy scaled to unit L2 norm.
    Signal normalized() const {
        const double n = norm();
        if (n == 0) throw Error("cannot normalize the zero signal");
        Signal out = *this;
        for (auto& v : out.values) v /= n;
        return out;
    }
};

/// F_a[0..N-1] together with the order a it was computed at.
struct Spectrum {
    std::vector<Complex> values;
    double alpha = 0;

    std::size_t size() const { return values.size(); }
    const Complex& operator[](std::size_t i) const { return values[i]; }
};

namespace detail {

inline void require_nonempty(std::span<const Complex> v) {
    if (v.empty()) throw LengthError("signal must have at least one sample");
}

inline void bit_reverse_permute(std::vector<Complex>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

}  // namespace detail

/// In-place iterative radix-2 FFT. Forward uses exp(+2 pi i kj/N) and no
/// scaling; inverse uses exp(-2 pi i kj/N) and scales by 1/N.
inline void fft_pow2_inplace(std::vector<Complex>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw LengthError("fft length " + std::to_string(n) + " is not a power of two");
    if (n == 1) return;
    detail::bit_reverse_permute(a);

    // Twiddles evaluated directly (no recurrence) for the full-size table;
    // each stage strides through it.
    const double sign = inverse ? -1.0 : 1.0;
    std::vector<Complex> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = sign * kTwoPi * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = {std::cos(ang), std::sin(ang)};
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex t = cmul(tw[k * stride], a[base + k + half]);
                const Complex u = a[base + k];
                a[base + k] = u + t;
                a[base + k + half] = u - t;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& v : a) v *= scale;
    }
}

inline Signal fft_pow2(const Signal& signal, bool inverse = false) {
    Signal out = signal;
    fft_pow2_inplace(out.values, inverse);
    return out;
}

/// The literal double sum. This is the reference every other route is
/// checked against; keep it naive.
inline Spectrum frft_direct(const Signal& signal, double alpha) {
    detail::require_nonempty(signal.values);
    const std::size_t n = signal.size();
    const long double a = alpha;
    const long double big_n = static_cast<long double>(n);
    Spectrum out{std::vector<Complex>(n), alpha};
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc{0, 0};
        for (std::size_t j = 0; j < n; ++j) {
            const long double kj = static_cast<long double>(k) * static_cast<long double>(j);
            acc += signal[j] * unit_phase(a * kj / big_n);
        }
        out.values[k] = acc;
    }
    return out;
}

/// Chirp-convolution evaluation of the same transform. O(N log N).
inline Spectrum frft_chirp(const Signal& signal, double alpha) {
    detail::require_nonempty(signal.values);
    const std::size_t n = signal.size();
    const long double a = alpha;
    const long double big_n = static_cast<long double>(n);

    // w(m) = exp(+i pi a m^2 / N) = exp(2 pi i * a m^2 / (2N)).
    std::vector<Complex> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        const long double m2 = static_cast<long double>(m) * static_cast<long double>(m);
        w[m] = unit_phase(a * m2 / (2.0L * big_n));
    }

    const std::size_t len = next_pow2(2 * n - 1);
    std::vector<Complex> x(len, Complex{0, 0});
    std::vector<Complex> kernel(len, Complex{0, 0});
    for (std::size_t j = 0; j < n; ++j) x[j] = signal[j] * w[j];
    // Kernel conj(w) at lags 0..N-1 and, wrapped to the top of the buffer,
    // lags -(N-1)..-1. The chirp is even in the lag.
    kernel[0] = std::conj(w[0]);
    for (std::size_t m = 1; m < n; ++m) {
        kernel[m] = std::conj(w[m]);
        kernel[len - m] = std::conj(w[m]);
    }

    fft_pow2_inplace(x, false);
    fft_pow2_inplace(kernel, false);
    for (std::size_t i = 0; i < len; ++i) x[i] = cmul(x[i], kernel[i]);
    fft_pow2_inplace(x, true);

    Spectrum out{std::vector<Complex>(n), alpha};
    for (std::size_t k = 0; k < n; ++k) out.values[k] = w[k] * x[k];
    return out;
}

/// max_k |a[k] - b[k]|. Sizes must agree.
inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) throw LengthError("size mismatch in comparison");
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(std::span<const Complex> a) {
    double m = 0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace qpfrft

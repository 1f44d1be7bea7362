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
/// Fractional Fourier coefficients from a unitary embedding.
///
/// Pipeline on {l: n+1, j: n, w: n}:
///   |l> (sum_j f(j)|j>) |0>  --U_a-->  |l> sum_{j,k} X_a(j,k) |j>|k>
///                            --QFT_j--> |l> sum_{Q,k} Z_a(Q,k) |Q>|k>
/// with X_a(j,k) = f(j) exp(2 pi i a k j / N) / sqrt(N). The Q = 0 slice is
/// Z_a(0,k) = (1/sqrt(N)) sum_j X_a(j,k) = F_a(k) / N: one 1/sqrt(N) comes from
/// spreading w, the other from the QFT. Coefficients are therefore read back
/// as N * Z_a(0,k) (times ||f|| when the input was not unit norm), not
/// sqrt(N) * Z_a(0,k).
///
/// Readout uses the simulator's amplitudes directly. Sampling |0>|k> would
/// only give |F_a(k)|^2 / N^2 and lose the phase.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpfrft/error.hpp"
#include "qpfrft/numerics.hpp"
#include "qpfrft/statevector.hpp"
#include "qpfrft/ualpha.hpp"

namespace qpfrft {

/// Dense row-major complex matrix.
struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    Complex& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct QpfrftRun {
    int n = 0;
    AlphaIndex index;
    Signal input;
    Spectrum coefficients;
    std::vector<Complex> raw_slice;  // amplitude(l, Q = 0, k), k = 0..N-1
    double rescale = 0;              // coefficients = rescale * raw_slice
    bool used_circuit = true;
    std::optional<StateVector> final_state;
};

/// X_a(j, k) = f(j) exp(2 pi i a k j / N) / sqrt(N).
inline ComplexMatrix xalpha_table(const Signal& f, const AlphaIndex& a) {
    const std::size_t big_n = std::size_t{1} << a.n;
    if (f.size() != big_n) throw LengthError("signal length must be 2^n");
    const double scale = 1.0 / std::sqrt(static_cast<double>(big_n));
    ComplexMatrix x(big_n, big_n);
    for (std::size_t j = 0; j < big_n; ++j) {
        for (std::size_t k = 0; k < big_n; ++k) {
            const std::int64_t num = a.offset() * static_cast<std::int64_t>(k) * static_cast<std::int64_t>(j);
            x(j, k) = f[j] * scale * dyadic_phase(num, 2 * a.n);
        }
    }
    return x;
}

/// The input layout with f on j and |l> prepared; f is normalized first.
inline StateVector qpfrft_input_state(const Signal& f, const AlphaIndex& a) {
    return prepare_signal(ualpha_layout(a.n), "j", f.normalized(), {{"l", a.l}});
}

/// Runs the full pipeline. `f` may have any nonzero norm; results are scaled
/// back so that coefficients match the transform of f itself.
inline QpfrftRun run_qpfrft(const Signal& f, std::uint64_t l, int n, bool use_circuit = true, bool keep_state = false) {
    if (n < 1) throw RangeError("n must be >= 1");
    if (f.size() != (std::size_t{1} << n)) {
        throw LengthError("signal length " + std::to_string(f.size()) + " is not 2^n = " +
                          std::to_string(std::size_t{1} << n));
    }
    const AlphaIndex a = decompose_l(l, n);
    const double norm = f.norm();
    if (!(norm > 0) || !std::isfinite(norm)) throw ParameterError("signal must have a finite nonzero norm");

    StateVector state = qpfrft_input_state(f, a);
    if (use_circuit) {
        state.apply(synthesize(a));
    } else {
        state = apply_direct(state, a, "j", "w");
    }
    state.apply_qft("j", /*inverse=*/false);

    const std::size_t big_n = std::size_t{1} << n;
    QpfrftRun run;
    run.n = n;
    run.index = a;
    run.input = f;
    run.used_circuit = use_circuit;
    run.rescale = static_cast<double>(big_n) * norm;
    run.raw_slice.resize(big_n);
    run.coefficients.alpha = a.alpha;
    run.coefficients.values.resize(big_n);
    for (std::size_t k = 0; k < big_n; ++k) {
        run.raw_slice[k] = state.amplitude({{"l", l}, {"j", 0}, {"w", k}});
        run.coefficients.values[k] = run.rescale * run.raw_slice[k];
    }
    if (keep_state) run.final_state = std::move(state);
    return run;
}

}  // namespace qpfrft

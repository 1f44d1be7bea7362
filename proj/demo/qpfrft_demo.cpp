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

// Walks through the library: a fractional transform computed three ways, the
// U_alpha gate tally, and one run of each phase-estimation variant.

#include <cstdio>

#include "qpfrft/numerics.hpp"
#include "qpfrft/qpe.hpp"
#include "qpfrft/qpfrft.hpp"
#include "qpfrft/ualpha.hpp"

int main() {
    using namespace qpfrft;

    const int n = 3;
    const std::uint64_t l = 11;  // alpha = 3/8
    Signal f({{0.5, 0.0}, {0.0, 0.5}, {0.25, 0.0}, {0.0, -0.25}, {0.25, 0.25}, {0.1, 0.0}, {0.0, 0.0}, {0.3, -0.1}});

    const auto direct = frft_direct(f, decompose_l(l, n).alpha);
    const auto chirp = frft_chirp(f, decompose_l(l, n).alpha);
    const auto run = run_qpfrft(f, l, n);
    std::printf("alpha = %g\n", run.index.alpha);
    std::printf("%3s  %-24s %-24s %-24s\n", "k", "direct", "chirp", "quantum");
    for (std::size_t k = 0; k < f.size(); ++k) {
        std::printf("%3zu  %+.6f%+.6fi   %+.6f%+.6fi   %+.6f%+.6fi\n", k, direct[k].real(), direct[k].imag(),
                    chirp[k].real(), chirp[k].imag(), run.coefficients[k].real(), run.coefficients[k].imag());
    }

    const auto counts = gate_count(n);
    std::printf("\nU_alpha, n = %d: %lld theta rotations, %lld phi rotations, %lld gates in total\n", n,
                static_cast<long long>(counts.theta_exact), static_cast<long long>(counts.phi_exact),
                static_cast<long long>(counts.total_exact));

    const auto unitary = DiagonalUnitary::with_phase(1, 1, 1.0 / 16.0);
    const auto reduced = qpe_reduced(unitary, 1, 6, 2, n);
    std::printf("\nreduced:   measured %lld, estimate %g, p = %.6f, %lld controlled-U^(2^i) layers\n",
                static_cast<long long>(reduced.measured), reduced.estimate, reduced.success_prob,
                static_cast<long long>(reduced.gate_tally.at("controlled_power_layers")));

    const auto grover = qpe_grover(DiagonalUnitary::with_phase(1, 1, 5.0 / 16.0), 1, n, 4);
    std::printf("grover:    measured l = %lld, estimate %g, marked p = %.6f, p(l = b) = %.6f\n",
                static_cast<long long>(grover.measured), grover.estimate, grover.success_prob,
                grover.diagnostics.at("target_prob"));

    const auto modulated = qpe_modulated(DiagonalUnitary::with_phase(2, 2, 5.0 / 8.0), 2, 12, n);
    std::printf("modulated: measured %lld, estimate %g, p = %.6f\n", static_cast<long long>(modulated.measured),
                modulated.estimate, modulated.success_prob);
    return 0;
}

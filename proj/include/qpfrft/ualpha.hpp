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
/// The U_a operator
///
///     |l>|j>|0>^n  ->  |l>|j> (1/sqrt(2^n)) sum_k exp(2 pi i a k j / 2^n) |k>,
///     a = (l - 2^n) / 2^n,  0 <= l < 2^{n+1},
///
/// as an explicit circuit of Hadamards, X gates and doubly-controlled dyadic
/// phase rotations, plus a matrix-free direct evaluation used to check it.
///
/// Writing l = l1 2^n + sum_q l'_q 2^{n-q}, k = sum_p k_p 2^{n-p} and
/// j = sum_r j_r 2^{m-r} (m = width of the j register, normally n), the
/// exponent a k j / 2^n splits into per-output-bit phases k_p (Theta_p + Phi_p):
///
///     Theta_p = sum_{q,r} l'_q j_r 2^{m-p-q-r}      (fires on l'_q = j_r = 1)
///     Phi_p   = (l1 - 1) sum_r j_r 2^{m-p-r}         (fires on l1 = 0, sign -)
///
/// Every term with a non-negative exponent is a whole number of turns and is
/// dropped, leaving only k_exp = p+q+r-m >= 1 (Theta) and p+r-m >= 1 (Phi).
/// The (l1 - 1) factor is realized by conjugating the Phi cascade with X on l1.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qpfrft/error.hpp"
#include "qpfrft/numerics.hpp"
#include "qpfrft/statevector.hpp"

namespace qpfrft {

inline constexpr int kMaxAlphaBits = 20;

/// l together with its bit split; alpha = (l - 2^n)/2^n is exact (dyadic).
struct AlphaIndex {
    int n = 0;
    std::uint64_t l = 0;
    int l1 = 0;
    std::vector<int> lprime;  // lprime[q-1] = l'_q, lprime[0] is the MSB of the low part
    double alpha = 0;

    std::uint64_t low() const { return l & ((std::uint64_t{1} << n) - 1); }

    /// (l - 2^n) as a signed integer; alpha = offset() / 2^n.
    std::int64_t offset() const { return static_cast<std::int64_t>(l) - (std::int64_t{1} << n); }
};

inline AlphaIndex decompose_l(std::uint64_t l, int n) {
    if (n < 1 || n > kMaxAlphaBits) throw RangeError("n must be in [1, " + std::to_string(kMaxAlphaBits) + "]");
    const std::uint64_t big_n = std::uint64_t{1} << n;
    if (l >= 2 * big_n) {
        throw RangeError("l = " + std::to_string(l) + " outside [0, 2^(n+1)) for n = " + std::to_string(n));
    }
    AlphaIndex a;
    a.n = n;
    a.l = l;
    a.l1 = static_cast<int>(l >> n);
    a.lprime.resize(n);
    for (int q = 1; q <= n; ++q) a.lprime[q - 1] = static_cast<int>((l >> (n - q)) & 1);
    a.alpha = std::ldexp(static_cast<double>(a.offset()), -n);
    return a;
}

enum class TermFamily { kTheta, kPhi };

/// One dyadic rotation k_p * j_r * (+-2^-k_exp) on output bit p.
struct PhaseTerm {
    TermFamily family = TermFamily::kTheta;
    int p = 0;
    int q = 0;  // l' bit, Theta only (0 for Phi)
    int r = 0;
    int k_exp = 0;
    int sign = 1;

    friend bool operator==(const PhaseTerm&, const PhaseTerm&) = default;
};

/// All surviving phase terms, p ascending, Theta before Phi, then (q, r)
/// lexicographic. `j_width` defaults to n.
inline std::vector<PhaseTerm> enumerate_terms(int n, int j_width = 0) {
    if (n < 1) throw RangeError("n must be >= 1");
    const int m = j_width == 0 ? n : j_width;
    if (m < 1) throw RangeError("j register width must be >= 1");
    std::vector<PhaseTerm> out;
    for (int p = 1; p <= n; ++p) {
        for (int q = 1; q <= n; ++q) {
            for (int r = std::max(1, m + 1 - (p + q)); r <= m; ++r) {
                out.push_back({TermFamily::kTheta, p, q, r, r + p + q - m, +1});
            }
        }
        for (int r = std::max(1, m - p + 1); r <= m; ++r) {
            out.push_back({TermFamily::kPhi, p, 0, r, r + p - m, -1});
        }
    }
    return out;
}

/// Psi_p = Theta_p + Phi_p reduced to [0, 1), for input basis value j.
inline double psi_phase(const AlphaIndex& a, std::uint64_t j, int p, int j_width = 0) {
    const int m = j_width == 0 ? a.n : j_width;
    if (j >= (std::uint64_t{1} << m)) throw RangeError("j outside the j register");
    if (p < 1 || p > a.n) throw RangeError("p must be in [1, n]");
    // Every k_exp is at most 2n; accumulate in units of 2^-2n.
    const int den_bits = 2 * a.n;
    std::int64_t num = 0;
    for (const auto& t : enumerate_terms(a.n, m)) {
        if (t.p != p) continue;
        const int jr = static_cast<int>((j >> (m - t.r)) & 1);
        if (!jr) continue;
        const bool fires = t.family == TermFamily::kTheta ? a.lprime[t.q - 1] == 1 : a.l1 == 0;
        if (fires) num += t.sign * (std::int64_t{1} << (den_bits - t.k_exp));
    }
    const std::int64_t den = std::int64_t{1} << den_bits;
    num %= den;
    if (num < 0) num += den;
    return std::ldexp(static_cast<double>(num), -den_bits);
}

/// Register names the U_a cascade reads and writes.
struct UalphaWiring {
    std::string l = "l";
    std::string j = "j";
    std::string w = "w";
};

/// Appends the U_a cascade to `circuit`. The l register must have width n+1
/// and w width n; j may have any width. `conjugate` flips every rotation,
/// giving exp(-2 pi i a k j / 2^n).
inline void append_ualpha(Circuit& circuit, const UalphaWiring& wires = {}, bool conjugate = false) {
    const auto& layout = circuit.layout();
    const int n = layout.width(wires.w);
    if (layout.width(wires.l) != n + 1) throw ParameterError("l register must be one qubit wider than w");
    const int m = layout.width(wires.j);
    const int flip = conjugate ? -1 : 1;
    const auto terms = enumerate_terms(n, m);

    auto lq = [&](int bit) { return layout.qubit(wires.l, bit); };
    auto jq = [&](int bit) { return layout.qubit(wires.j, bit); };
    auto wq = [&](int bit) { return layout.qubit(wires.w, bit); };

    for (int p = 1; p <= n; ++p) {
        circuit.add(Hadamard{wq(p)});
        for (const auto& t : terms) {
            if (t.p != p || t.family != TermFamily::kTheta) continue;
            circuit.add(ControlledDyadicPhase{{lq(t.q + 1), jq(t.r)}, wq(p), flip * t.sign, t.k_exp});
        }
    }
    circuit.add(PauliX{lq(1)});
    for (const auto& t : terms) {
        if (t.family != TermFamily::kPhi) continue;
        circuit.add(ControlledDyadicPhase{{lq(1), jq(t.r)}, wq(t.p), flip * t.sign, t.k_exp});
    }
    circuit.add(PauliX{lq(1)});
}

inline RegisterLayout ualpha_layout(int n, int max_qubits = default_qubit_limit()) {
    if (n < 1) throw RangeError("n must be >= 1");
    RegisterLayout layout({{"l", n + 1}, {"j", n}, {"w", n}}, max_qubits);
    if (n > kMaxAlphaBits) throw RangeError("n must be <= " + std::to_string(kMaxAlphaBits));
    return layout;
}

/// U_a on the standard layout {l: n+1, j: n, w: n}. The circuit is
/// controlled by the l register, so it is the same for every l of width n.
inline Circuit synthesize(int n, bool conjugate = false) {
    Circuit c(ualpha_layout(n));
    append_ualpha(c, {}, conjugate);
    return c;
}

inline Circuit synthesize(const AlphaIndex& a, bool conjugate = false) { return synthesize(a.n, conjugate); }

/// Matrix-free U_a for the fixed index `a`: every component |j>|0>_w becomes
/// |j> (1/sqrt(2^n)) sum_k exp(+-2 pi i a k j / 2^n)|k>. The w register must be
/// clear on every nonzero amplitude.
inline StateVector apply_direct(const StateVector& state, const AlphaIndex& a, std::string_view j_reg = "j",
                                std::string_view w_reg = "w", bool conjugate = false) {
    const auto& layout = state.layout();
    const int n = a.n;
    if (layout.width(w_reg) != n) throw ParameterError("w register width must equal n");
    const int m = layout.width(j_reg);
    const int ws = layout.shift(w_reg);
    const int js = layout.shift(j_reg);
    const std::uint64_t kdim = std::uint64_t{1} << n;
    const std::uint64_t wmask = (kdim - 1) << ws;
    const std::uint64_t jmask = (std::uint64_t{1} << m) - 1;
    const double scale = 1.0 / std::sqrt(static_cast<double>(kdim));
    const std::int64_t sign = conjugate ? -1 : 1;

    const auto& in = state.amps();
    std::vector<Complex> out(in.size());
    for (std::uint64_t i = 0; i < in.size(); ++i) {
        if (in[i] == Complex{0, 0}) continue;
        if (i & wmask) {
            if (std::abs(in[i]) > 1e-14) throw ParameterError("w register is not cleared");
            continue;
        }
        const std::int64_t j = static_cast<std::int64_t>((i >> js) & jmask);
        const Complex a0 = in[i] * scale;
        for (std::uint64_t k = 0; k < kdim; ++k) {
            // a k j / 2^n = (l - 2^n) k j / 2^{2n}, reduced exactly.
            const std::int64_t num = sign * a.offset() * static_cast<std::int64_t>(k) * j;
            out[i | (k << ws)] += cmul(a0, dyadic_phase(num, 2 * n));
        }
    }
    return StateVector(layout, std::move(out));
}

/// Exact term counts next to the n^2(n+1) / n(n+1)/2 figures quoted for the
/// construction. The Theta bound is loose: only sum_{p,q} min(n, p+q) terms
/// survive truncation.
struct GateCountReport {
    int n = 0;
    std::int64_t theta_exact = 0;
    std::int64_t phi_exact = 0;
    std::int64_t theta_paper_bound = 0;
    std::int64_t phi_formula = 0;
    std::int64_t hadamards = 0;
    std::int64_t pauli_x = 2;
    std::int64_t total_exact = 0;
    std::string asymptotic_note =
        "O(n^3) elementary gates once each doubly-controlled rotation is decomposed into one- and two-qubit gates";
};

inline GateCountReport gate_count(int n) {
    if (n < 1) throw RangeError("n must be >= 1");
    GateCountReport r;
    r.n = n;
    for (const auto& t : enumerate_terms(n)) (t.family == TermFamily::kTheta ? r.theta_exact : r.phi_exact) += 1;
    const std::int64_t nn = n;
    r.theta_paper_bound = nn * nn * (nn + 1);
    r.phi_formula = nn * (nn + 1) / 2;
    r.hadamards = nn;
    r.total_exact = r.theta_exact + r.phi_exact + r.hadamards + r.pauli_x;
    return r;
}

}  // namespace qpfrft

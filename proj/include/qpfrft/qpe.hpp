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
/// Phase estimation built on U_a, for diagonal test unitaries
/// U|u> = exp(2 pi i phi_u)|u>.
///
///   reduced    U_a on |l>|j>|0>, controlled-U^k with k from w, IQFT on w.
///              w ends up in |phi>, phi = a_l j + N phi_u, a_l = (l - N)/N,
///              using only n controlled-U^{2^i} layers.
///   grover     Superpose l, fix j = N^2/N', run the reduced pipeline with
///              a_l = -l/L and amplify the phi = 0 outcome. The marked l is b
///              when phi_u = b/N'.
///   modulated  The eigen register itself drives U_a (conjugated); the IQFT
///              then yields (N phi_u - u a) mod N.
///
/// Probabilities are read from the final statevector, not sampled.

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qpfrft/error.hpp"
#include "qpfrft/numerics.hpp"
#include "qpfrft/statevector.hpp"
#include "qpfrft/ualpha.hpp"

namespace qpfrft {

/// phi = b / 2^nprime.
struct PhaseTarget {
    std::uint64_t b = 0;
    int nprime = 0;

    PhaseTarget(std::uint64_t b_, int nprime_) : b(b_), nprime(nprime_) {
        if (nprime < 0 || nprime > 40) throw RangeError("nprime must be in [0, 40]");
        if (b >= (std::uint64_t{1} << nprime)) throw RangeError("b must be < 2^nprime");
    }

    double value() const { return std::ldexp(static_cast<double>(b), -nprime); }
};

struct QpeResult {
    std::string method;
    std::int64_t measured = 0;
    double estimate = 0;
    double success_prob = 0;
    std::map<std::string, std::int64_t> gate_tally;
    std::map<std::string, double> params;
    std::map<std::string, double> diagnostics;
    std::string alpha_convention;
    std::optional<StateVector> final_state;
};

namespace detail {

inline std::uint64_t argmax(const std::vector<double>& p) {
    std::uint64_t best = 0;
    for (std::uint64_t i = 1; i < p.size(); ++i) {
        if (p[i] > p[best]) best = i;
    }
    return best;
}

inline std::uint64_t mod_floor(std::int64_t v, std::uint64_t m) {
    const auto mm = static_cast<std::int64_t>(m);
    std::int64_t r = v % mm;
    if (r < 0) r += mm;
    return static_cast<std::uint64_t>(r);
}

inline void require_eigenindex(const DiagonalUnitary& unitary, std::uint64_t u) {
    if (unitary.width() < 1) throw ParameterError("unitary has no eigen register");
    if (u >= (std::uint64_t{1} << unitary.width())) {
        throw RangeError("eigenindex " + std::to_string(u) + " outside the unitary's register");
    }
}

/// The phase of a diagonal entry as an exact b / 2^bits, if it is one.
inline std::optional<std::uint64_t> as_binary_fraction(double phase, int bits) {
    const double scaled = std::ldexp(phase, bits);
    const double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > 1e-9) return std::nullopt;
    return static_cast<std::uint64_t>(rounded);
}

}  // namespace detail

/// Counting-register width a textbook phase estimation needs for nprime
/// bits with failure probability at most eps: nprime + ceil(log2(2 + 1/(2 eps))).
inline int textbook_register_width(int nprime, double eps) {
    if (!(eps > 0 && eps < 1)) throw RangeError("eps must be in (0, 1)");
    const double target = 2.0 + 1.0 / (2.0 * eps);
    int extra = 0;
    while (std::ldexp(1.0, extra) < target) ++extra;
    return nprime + extra;
}

/// Textbook phase estimation with a t-qubit counting register.
inline QpeResult qpe_textbook(const DiagonalUnitary& unitary, std::uint64_t u, int t) {
    detail::require_eigenindex(unitary, u);
    if (t < 1 || t > 24) throw RangeError("counting register width must be in [1, 24]");
    RegisterLayout layout({{"w", t}, {"u", unitary.width()}});
    Circuit c(layout);
    for (int b = 1; b <= t; ++b) c.add(Hadamard{layout.qubit("w", b)});
    c.add(DiagonalControlledPower{"w", "u", unitary});
    c.add(Qft{"w", true});

    StateVector state = basis_state(layout, {{"u", u}});
    state.apply(c);
    const auto p = state.marginal("w");
    const std::uint64_t dim = std::uint64_t{1} << t;
    const double phi = std::ldexp(unitary.phase(u), t);

    QpeResult r;
    r.method = "textbook";
    r.measured = static_cast<std::int64_t>(detail::argmax(p));
    r.estimate = std::ldexp(static_cast<double>(r.measured), -t);
    r.success_prob = p[detail::mod_floor(std::llround(phi), dim)];
    r.gate_tally = c.tally();
    r.params = {{"t", t}, {"u", static_cast<double>(u)}, {"phase", unitary.phase(u)}};
    return r;
}

/// Reduced-power phase estimation for a chosen (l, j).
inline QpeResult qpe_reduced(const DiagonalUnitary& unitary, std::uint64_t u, std::uint64_t l, std::uint64_t j, int n,
                             bool keep_state = false) {
    detail::require_eigenindex(unitary, u);
    const AlphaIndex a = decompose_l(l, n);
    const std::uint64_t big_n = std::uint64_t{1} << n;
    if (j >= big_n) throw RangeError("j = " + std::to_string(j) + " outside [0, 2^n)");

    RegisterLayout layout({{"l", n + 1}, {"j", n}, {"w", n}, {"u", unitary.width()}});
    Circuit c(layout);
    append_ualpha(c, {"l", "j", "w"});
    c.add(DiagonalControlledPower{"w", "u", unitary});
    c.add(Qft{"w", true});

    StateVector state = basis_state(layout, {{"l", l}, {"j", j}, {"u", u}});
    state.apply(c);
    const auto p = state.marginal("w");

    // phi = a_l j + N phi_u
    const double phi = static_cast<double>(a.offset()) * static_cast<double>(j) / static_cast<double>(big_n) +
                       static_cast<double>(big_n) * unitary.phase(u);

    QpeResult r;
    r.method = "reduced";
    r.alpha_convention = "a_l = (l - L)/L";
    r.measured = static_cast<std::int64_t>(detail::argmax(p));
    // estimate = (measured - a_l j) / N mod 1 = (measured N - (l - N) j) / N^2 mod 1, exactly.
    const std::int64_t num = r.measured * static_cast<std::int64_t>(big_n) - a.offset() * static_cast<std::int64_t>(j);
    r.estimate = std::ldexp(static_cast<double>(detail::mod_floor(num, big_n * big_n)), -2 * n);
    r.success_prob = p[detail::mod_floor(std::llround(phi), big_n)];
    r.gate_tally = c.tally();
    r.params = {{"n", n},
                {"l", static_cast<double>(l)},
                {"j", static_cast<double>(j)},
                {"u", static_cast<double>(u)},
                {"alpha", a.alpha},
                {"phase", unitary.phase(u)}};
    r.diagnostics = {{"phi", phi}};
    if (keep_state) r.final_state = std::move(state);
    return r;
}

/// An (l, j) for which a_l j + N b/2^nprime is an integer.
struct PhaseConfig {
    std::uint64_t l = 0;
    std::uint64_t j = 0;
    std::int64_t phi = 0;
};

/// Every (l, j) pair in range whose phi is an integer, l-major.
inline std::vector<PhaseConfig> integer_phase_configs(int n, const PhaseTarget& target) {
    if (n < 1 || n > 20 || target.nprime > 20) throw RangeError("n and nprime must be <= 20");
    const std::int64_t big_n = std::int64_t{1} << n;
    // phi * 2^{n + n'} = (l - N) j 2^{n'} + b 2^{2n}
    const int shift = n + target.nprime;
    const std::int64_t den = std::int64_t{1} << shift;
    std::vector<PhaseConfig> out;
    for (std::int64_t l = 0; l < 2 * big_n; ++l) {
        for (std::int64_t j = 0; j < big_n; ++j) {
            const std::int64_t num = ((l - big_n) * j << target.nprime) +
                                     (static_cast<std::int64_t>(target.b) << (2 * n));
            if (num % den == 0) {
                out.push_back({static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(j), num / den});
            }
        }
    }
    return out;
}

/// Builds the amplitude-amplification preparation circuit for the Grover
/// variant: X on l1 (fixing the sign bit so the conjugated U_a realizes
/// a_l = -l'/L), H on the low n bits of l, |j>, |u>, conjugated U_a,
/// controlled-U^k and IQFT on w.
inline Circuit grover_preparation(const DiagonalUnitary& unitary, std::uint64_t u, int n, std::uint64_t j) {
    RegisterLayout layout({{"l", n + 1}, {"j", n}, {"w", n}, {"u", unitary.width()}});
    Circuit a(layout);
    a.add(PauliX{layout.qubit("l", 1)});
    for (int q = 2; q <= n + 1; ++q) a.add(Hadamard{layout.qubit("l", q)});
    for (int r = 1; r <= n; ++r) {
        if ((j >> (n - r)) & 1) a.add(PauliX{layout.qubit("j", r)});
    }
    const int m = unitary.width();
    for (int r = 1; r <= m; ++r) {
        if ((u >> (m - r)) & 1) a.add(PauliX{layout.qubit("u", r)});
    }
    append_ualpha(a, {"l", "j", "w"}, /*conjugate=*/true);
    a.add(DiagonalControlledPower{"w", "u", unitary});
    a.add(Qft{"w", true});
    return a;
}

/// Grover-search phase estimation. The phase of |u> must be an exact
/// b / 2^nprime with b < 2^n, and n < nprime <= 2n so that j = N^2/N' is an
/// integer inside the j register. `iterations` defaults to floor(pi/4 sqrt(L)).
///
/// success_prob is the probability of the marked subspace (w = 0) after
/// amplification; diagnostics["target_prob"] is the probability of reading
/// l = b from the search register.
inline QpeResult qpe_grover(const DiagonalUnitary& unitary, std::uint64_t u, int n, int nprime,
                            std::optional<int> iterations = std::nullopt, bool keep_state = false) {
    detail::require_eigenindex(unitary, u);
    if (n < 1 || n > kMaxAlphaBits) throw RangeError("n must be in [1, " + std::to_string(kMaxAlphaBits) + "]");
    if (nprime <= n) {
        throw ParameterError("need nprime > n: j = N^2/N' = " + std::string(nprime == n ? "N" : "> N") +
                             " does not fit the j register");
    }
    if (nprime > 2 * n) throw ParameterError("need nprime <= 2n for j = N^2/N' to be an integer");
    const auto b = detail::as_binary_fraction(unitary.phase(u), nprime);
    if (!b) throw ParameterError("eigenphase is not an exact binary fraction b/2^nprime");
    const std::uint64_t big_l = std::uint64_t{1} << n;
    if (*b >= big_l) throw ParameterError("b = " + std::to_string(*b) + " must be < 2^n for the search to find it");
    const int rounds = iterations.value_or(static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(big_l)))));
    if (rounds < 0) throw RangeError("iterations must be >= 0");

    const std::uint64_t j = std::uint64_t{1} << (2 * n - nprime);
    const Circuit prep = grover_preparation(unitary, u, n, j);
    const Circuit unprep = prep.inverse();
    const auto& layout = prep.layout();

    StateVector state(layout);
    state.apply(prep);
    const double p0 = state.marginal("w")[0];
    const double target0 = state.marginal("l")[big_l + *b];

    const int ws = layout.shift("w");
    const std::uint64_t wmask = (big_l - 1) << ws;
    for (int it = 0; it < rounds; ++it) {
        auto& amps = state.amps();
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
            if ((i & wmask) == 0) amps[i] = -amps[i];
        }
        state.apply(unprep);
        state.amps()[0] = -state.amps()[0];
        state.apply(prep);
        for (auto& v : state.amps()) v = -v;
    }

    const auto pl = state.marginal("l");
    std::uint64_t best = big_l;
    for (std::uint64_t v = big_l; v < 2 * big_l; ++v) {
        if (pl[v] > pl[best]) best = v;
    }

    const double theta = std::asin(std::sqrt(std::min(1.0, p0)));
    QpeResult r;
    r.method = "grover";
    r.alpha_convention = "a_l = -l/L";
    r.measured = static_cast<std::int64_t>(best - big_l);
    // (l/L)(j/N) = l / N'
    r.estimate = std::ldexp(static_cast<double>(r.measured), -nprime);
    r.success_prob = state.marginal("w")[0];
    r.gate_tally = prep.tally();
    r.gate_tally["grover_iterations"] = rounds;
    r.gate_tally["preparation_applications"] = 2 * static_cast<std::int64_t>(rounds) + 1;
    r.params = {{"n", n},
                {"nprime", nprime},
                {"b", static_cast<double>(*b)},
                {"j", static_cast<double>(j)},
                {"u", static_cast<double>(u)},
                {"phase", unitary.phase(u)}};
    r.diagnostics = {{"initial_marked_prob", p0},
                     {"theta", theta},
                     {"predicted_marked_prob", std::pow(std::sin((2.0 * rounds + 1.0) * theta), 2)},
                     {"initial_target_prob", target0},
                     {"target_prob", pl[big_l + *b]},
                     {"iterations", rounds}};
    if (keep_state) r.final_state = std::move(state);
    return r;
}

/// All l in [0, 2^{n+1}) with u a_l an integer, i.e. (l - 2^n) u = 0 mod 2^n.
inline std::vector<std::uint64_t> valid_alphas(std::uint64_t u, int n) {
    if (n < 1 || n > kMaxAlphaBits) throw RangeError("n must be in [1, " + std::to_string(kMaxAlphaBits) + "]");
    const std::int64_t big_n = std::int64_t{1} << n;
    std::vector<std::uint64_t> out;
    const auto uu = static_cast<std::int64_t>(u % static_cast<std::uint64_t>(big_n));
    for (std::int64_t l = 0; l < 2 * big_n; ++l) {
        if (((l - big_n) * uu) % big_n == 0) out.push_back(static_cast<std::uint64_t>(l));
    }
    return out;
}

/// Eigenstate-modulated phase estimation: measured = (N phi_u - u a) mod N.
inline QpeResult qpe_modulated(const DiagonalUnitary& unitary, std::uint64_t u, std::uint64_t l, int n,
                               bool keep_state = false) {
    detail::require_eigenindex(unitary, u);
    const AlphaIndex a = decompose_l(l, n);
    const std::int64_t big_n = std::int64_t{1} << n;
    const std::int64_t ua_num = a.offset() * static_cast<std::int64_t>(u);
    if (ua_num % big_n != 0) {
        throw ParameterError("u * alpha = " + std::to_string(ua_num) + "/" + std::to_string(big_n) +
                             " is not an integer");
    }
    const std::int64_t ua = ua_num / big_n;

    RegisterLayout layout({{"l", n + 1}, {"u", unitary.width()}, {"w", n}});
    Circuit c(layout);
    append_ualpha(c, {"l", "u", "w"}, /*conjugate=*/true);
    c.add(DiagonalControlledPower{"w", "u", unitary});
    c.add(Qft{"w", true});

    StateVector state = basis_state(layout, {{"l", l}, {"u", u}});
    state.apply(c);
    const auto p = state.marginal("w");

    const double phi_tilde = static_cast<double>(big_n) * unitary.phase(u);
    const auto ubig = static_cast<std::uint64_t>(big_n);
    QpeResult r;
    r.method = "modulated";
    r.alpha_convention = "a = (l - 2^n)/2^n, conjugated";
    r.measured = static_cast<std::int64_t>(detail::argmax(p));
    r.estimate = std::ldexp(static_cast<double>(detail::mod_floor(r.measured + ua, ubig)), -n);
    r.success_prob = p[detail::mod_floor(std::llround(phi_tilde) - ua, ubig)];
    r.gate_tally = c.tally();
    r.params = {{"n", n},
                {"l", static_cast<double>(l)},
                {"u", static_cast<double>(u)},
                {"alpha", a.alpha},
                {"u_alpha", static_cast<double>(ua)},
                {"phase", unitary.phase(u)}};
    if (keep_state) r.final_state = std::move(state);
    return r;
}

// ---------------------------------------------------------------------------
// Feasibility of the Grover variant: 2^n <= (nu + n)^4, with 2^nu = N'/N.

using u128 = unsigned __int128;

inline std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

inline constexpr int kMaxFeasibilityN = 120;
inline constexpr std::int64_t kMaxFeasibilityNu = 1'000'000;

inline u128 feasibility_lhs(int n) { return u128{1} << n; }

inline u128 feasibility_rhs(int n, std::int64_t nu) {
    const u128 x = static_cast<u128>(nu + n);
    return x * x * x * x;
}

/// Exact integer evaluation of 2^n <= (nu + n)^4.
inline bool check_inequality(int n, std::int64_t nu) {
    if (n < 1 || n > kMaxFeasibilityN) throw RangeError("n must be in [1, " + std::to_string(kMaxFeasibilityN) + "]");
    if (nu < 0 || nu > kMaxFeasibilityNu) throw RangeError("nu must be in [0, " + std::to_string(kMaxFeasibilityNu) + "]");
    return feasibility_lhs(n) <= feasibility_rhs(n, nu);
}

struct FeasibilityRow {
    int n = 0;
    std::int64_t nu = 0;
    u128 lhs = 0;
    u128 rhs = 0;
    bool ok = false;
};

/// Rows for n = 1..n_max, grouped by nu in the given order.
inline std::vector<FeasibilityRow> feasibility_table(int n_max, const std::vector<std::int64_t>& nus) {
    std::vector<FeasibilityRow> rows;
    for (std::int64_t nu : nus) {
        for (int n = 1; n <= n_max; ++n) {
            rows.push_back({n, nu, feasibility_lhs(n), feasibility_rhs(n, nu), check_inequality(n, nu)});
        }
    }
    return rows;
}

/// Largest n <= n_max with the inequality holding, or 0 if none.
inline int last_feasible_n(std::int64_t nu, int n_max = kMaxFeasibilityN) {
    int last = 0;
    for (int n = 1; n <= n_max; ++n) {
        if (check_inequality(n, nu)) last = n;
    }
    return last;
}

}  // namespace qpfrft

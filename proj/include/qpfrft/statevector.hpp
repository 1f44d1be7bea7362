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
/// Dense statevector simulation over named qubit registers.
///
/// Index convention (used everywhere in the library):
///   * Registers are concatenated in declaration order; the first register
///     occupies the most significant block of the basis index.
///   * Inside a register of width w, bit 1 is the most significant, so the
///     register value is v = sum_{b=1}^{w} v_b 2^{w-b}.
///   * Qubits are numbered globally 0..Q-1 in the same order: qubit 0 is bit 1
///     of the first register, qubit Q-1 is the last bit of the last register.
///     Qubit q carries weight 2^{Q-1-q} in the basis index.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qpfrft/error.hpp"
#include "qpfrft/numerics.hpp"

namespace qpfrft {

inline constexpr int kDefaultMaxQubits = 28;
inline constexpr int kHardMaxQubits = 40;

/// Qubit limit for new layouts: QPFRFT_MAX_QUBITS when set, otherwise 28.
inline int default_qubit_limit() {
    if (const char* env = std::getenv("QPFRFT_MAX_QUBITS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, kHardMaxQubits));
    }
    return kDefaultMaxQubits;
}

using Assignment = std::map<std::string, std::uint64_t>;

struct Register {
    std::string name;
    int width = 0;
};

class RegisterLayout {
   public:
    RegisterLayout() = default;

    explicit RegisterLayout(std::vector<Register> regs, int max_qubits = default_qubit_limit())
        : regs_(std::move(regs)) {
        for (std::size_t i = 0; i < regs_.size(); ++i) {
            if (regs_[i].width < 1) throw RangeError("register '" + regs_[i].name + "' must have width >= 1");
            for (std::size_t k = 0; k < i; ++k) {
                if (regs_[k].name == regs_[i].name) throw ParameterError("duplicate register '" + regs_[i].name + "'");
            }
            total_ += regs_[i].width;
        }
        if (total_ > max_qubits || total_ > kHardMaxQubits) {
            throw CapacityError("layout needs " + std::to_string(total_) + " qubits, limit is " +
                                std::to_string(std::min(max_qubits, kHardMaxQubits)) +
                                " (raise with QPFRFT_MAX_QUBITS)");
        }
    }

    int total_qubits() const { return total_; }
    std::uint64_t dimension() const { return std::uint64_t{1} << total_; }
    const std::vector<Register>& registers() const { return regs_; }

    bool contains(std::string_view name) const {
        return std::any_of(regs_.begin(), regs_.end(), [&](const Register& r) { return r.name == name; });
    }

    const Register& reg(std::string_view name) const { return regs_[position(name)]; }
    int width(std::string_view name) const { return reg(name).width; }

    /// Global index of bit `bit` (1 = MSB) of register `name`.
    int qubit(std::string_view name, int bit) const {
        const std::size_t pos = position(name);
        if (bit < 1 || bit > regs_[pos].width) {
            throw RangeError("bit " + std::to_string(bit) + " outside register '" + std::string(name) + "'");
        }
        int start = 0;
        for (std::size_t i = 0; i < pos; ++i) start += regs_[i].width;
        return start + bit - 1;
    }

    /// Shift of the register's least significant bit within the basis index.
    int shift(std::string_view name) const {
        const std::size_t pos = position(name);
        int s = 0;
        for (std::size_t i = pos + 1; i < regs_.size(); ++i) s += regs_[i].width;
        return s;
    }

    std::uint64_t qubit_mask(int q) const {
        if (q < 0 || q >= total_) throw RangeError("qubit " + std::to_string(q) + " outside layout");
        return std::uint64_t{1} << (total_ - 1 - q);
    }

    std::uint64_t value_of(std::uint64_t index, std::string_view name) const {
        const std::uint64_t mask = (std::uint64_t{1} << width(name)) - 1;
        return (index >> shift(name)) & mask;
    }

    /// Basis index for an assignment; unassigned registers are 0.
    std::uint64_t encode(const Assignment& values) const {
        std::uint64_t idx = 0;
        for (const auto& [name, v] : values) {
            const int w = width(name);
            if (v >= (std::uint64_t{1} << w)) {
                throw RangeError("value " + std::to_string(v) + " does not fit register '" + name + "' of width " +
                                 std::to_string(w));
            }
            idx |= v << shift(name);
        }
        return idx;
    }

    friend bool operator==(const RegisterLayout& a, const RegisterLayout& b) {
        if (a.regs_.size() != b.regs_.size()) return false;
        for (std::size_t i = 0; i < a.regs_.size(); ++i) {
            if (a.regs_[i].name != b.regs_[i].name || a.regs_[i].width != b.regs_[i].width) return false;
        }
        return true;
    }

   private:
    std::size_t position(std::string_view name) const {
        for (std::size_t i = 0; i < regs_.size(); ++i) {
            if (regs_[i].name == name) return i;
        }
        throw ParameterError("unknown register '" + std::string(name) + "'");
    }

    std::vector<Register> regs_;
    int total_ = 0;
};

/// U|u> = exp(2 pi i phase[u]) |u>, phases in turns within [0, 1).
class DiagonalUnitary {
   public:
    DiagonalUnitary() = default;

    DiagonalUnitary(int width, std::vector<double> phases) : width_(width), phases_(std::move(phases)) {
        if (width < 1 || width > 20) throw RangeError("diagonal unitary width must be in [1, 20]");
        if (phases_.size() != (std::size_t{1} << width)) {
            throw LengthError("diagonal unitary of width " + std::to_string(width) + " needs " +
                              std::to_string(std::size_t{1} << width) + " phases");
        }
        for (double p : phases_) {
            if (!(p >= 0.0 && p < 1.0)) throw RangeError("eigenphase must lie in [0, 1)");
        }
    }

    /// Zero phase everywhere except `phase` on eigenindex u.
    static DiagonalUnitary with_phase(int width, std::uint64_t u, double phase) {
        if (width < 1 || width > 20) throw RangeError("diagonal unitary width must be in [1, 20]");
        std::vector<double> ph(std::size_t{1} << width, 0.0);
        if (u >= ph.size()) throw RangeError("eigenindex " + std::to_string(u) + " outside width " + std::to_string(width));
        ph[u] = phase;
        return DiagonalUnitary(width, std::move(ph));
    }

    int width() const { return width_; }
    double phase(std::uint64_t u) const { return phases_.at(u); }
    const std::vector<double>& phases() const { return phases_; }

    DiagonalUnitary adjoint() const {
        std::vector<double> ph(phases_.size());
        for (std::size_t i = 0; i < ph.size(); ++i) ph[i] = phases_[i] == 0.0 ? 0.0 : 1.0 - phases_[i];
        return DiagonalUnitary(width_, std::move(ph));
    }

   private:
    int width_ = 0;
    std::vector<double> phases_;
};

// ---------------------------------------------------------------------------
// Gates

struct Hadamard {
    int target = 0;
};

struct PauliX {
    int target = 0;
};

/// Phase exp(sign * 2 pi i / 2^k_exp) on basis states whose controls and
/// target are all 1. Symmetric in its qubits; "target" is bookkeeping.
struct ControlledDyadicPhase {
    std::vector<int> controls;
    int target = 0;
    int sign = 1;
    int k_exp = 1;
};

/// Controlled-U^k: control register value k, eigen register value u,
/// amplitude picks up exp(2 pi i k phase[u]). Counts as width(control)
/// controlled-U^{2^i} layers.
struct DiagonalControlledPower {
    std::string control;
    std::string eigen;
    DiagonalUnitary unitary;
};

/// Normalized QFT (positive exponent) on one register, or its inverse.
struct Qft {
    std::string reg;
    bool inverse = false;
};

using GateOp = std::variant<Hadamard, PauliX, ControlledDyadicPhase, DiagonalControlledPower, Qft>;

enum class GateKind { kHadamard = 0, kPauliX, kControlledPhase, kControlledPower, kQft };
inline constexpr std::size_t kNumGateKinds = 5;

inline GateKind kind_of(const GateOp& op) { return static_cast<GateKind>(op.index()); }

inline const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::kHadamard: return "hadamard";
        case GateKind::kPauliX: return "pauli_x";
        case GateKind::kControlledPhase: return "controlled_phase";
        case GateKind::kControlledPower: return "controlled_power";
        case GateKind::kQft: return "qft";
    }
    return "?";
}

/// Throws if `op` does not fit `layout`.
inline void validate(const GateOp& op, const RegisterLayout& layout) {
    const int q = layout.total_qubits();
    auto check_qubit = [q](int t) {
        if (t < 0 || t >= q) throw RangeError("qubit index " + std::to_string(t) + " outside layout of " + std::to_string(q));
    };
    std::visit(
        [&](const auto& g) {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Hadamard> || std::is_same_v<T, PauliX>) {
                check_qubit(g.target);
            } else if constexpr (std::is_same_v<T, ControlledDyadicPhase>) {
                check_qubit(g.target);
                for (std::size_t i = 0; i < g.controls.size(); ++i) {
                    check_qubit(g.controls[i]);
                    if (g.controls[i] == g.target) throw ParameterError("control coincides with target");
                    for (std::size_t k = 0; k < i; ++k) {
                        if (g.controls[k] == g.controls[i]) throw ParameterError("repeated control qubit");
                    }
                }
                if (g.k_exp < 1 || g.k_exp > 62) throw RangeError("k_exp must be in [1, 62]");
                if (g.sign != 1 && g.sign != -1) throw ParameterError("phase sign must be +1 or -1");
            } else if constexpr (std::is_same_v<T, DiagonalControlledPower>) {
                if (g.control == g.eigen) throw ParameterError("control and eigen registers must differ");
                layout.width(g.control);
                if (layout.width(g.eigen) != g.unitary.width()) {
                    throw ParameterError("eigen register '" + g.eigen + "' width does not match the unitary");
                }
            } else {
                layout.width(g.reg);
            }
        },
        op);
}

inline GateOp inverse_of(const GateOp& op) {
    return std::visit(
        [](const auto& g) -> GateOp {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, ControlledDyadicPhase>) {
                auto inv = g;
                inv.sign = -g.sign;
                return inv;
            } else if constexpr (std::is_same_v<T, DiagonalControlledPower>) {
                return DiagonalControlledPower{g.control, g.eigen, g.unitary.adjoint()};
            } else if constexpr (std::is_same_v<T, Qft>) {
                return Qft{g.reg, !g.inverse};
            } else {
                return g;
            }
        },
        op);
}

/// An ordered gate list bound to a layout, with a running tally per kind.
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(RegisterLayout layout) : layout_(std::move(layout)) {}

    Circuit& add(GateOp op) {
        validate(op, layout_);
        ++counts_[static_cast<std::size_t>(kind_of(op))];
        if (const auto* p = std::get_if<DiagonalControlledPower>(&op)) power_layers_ += layout_.width(p->control);
        ops_.push_back(std::move(op));
        return *this;
    }

    Circuit& append(const Circuit& other) {
        if (!(other.layout_ == layout_)) throw ParameterError("cannot append circuits over different layouts");
        for (const auto& op : other.ops_) add(op);
        return *this;
    }

    /// Reversed sequence of inverted gates.
    Circuit inverse() const {
        Circuit inv(layout_);
        for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) inv.add(inverse_of(*it));
        return inv;
    }

    const RegisterLayout& layout() const { return layout_; }
    const std::vector<GateOp>& ops() const { return ops_; }
    std::size_t size() const { return ops_.size(); }
    std::size_t count(GateKind k) const { return counts_[static_cast<std::size_t>(k)]; }

    /// Sum over controlled-power gates of their control-register widths.
    std::size_t controlled_power_layers() const { return power_layers_; }

    std::map<std::string, std::int64_t> tally() const {
        std::map<std::string, std::int64_t> t;
        for (std::size_t k = 0; k < kNumGateKinds; ++k) t[kind_name(static_cast<GateKind>(k))] = static_cast<std::int64_t>(counts_[k]);
        t["controlled_power_layers"] = static_cast<std::int64_t>(power_layers_);
        return t;
    }

   private:
    RegisterLayout layout_;
    std::vector<GateOp> ops_;
    std::array<std::size_t, kNumGateKinds> counts_{};
    std::size_t power_layers_ = 0;
};

// ---------------------------------------------------------------------------
// State

class StateVector {
   public:
    StateVector() = default;

    /// |0...0> over the layout.
    explicit StateVector(RegisterLayout layout) : layout_(std::move(layout)), amps_(layout_.dimension()) {
        amps_[0] = 1.0;
    }

    StateVector(RegisterLayout layout, std::vector<Complex> amps) : layout_(std::move(layout)), amps_(std::move(amps)) {
        if (amps_.size() != layout_.dimension()) throw LengthError("amplitude count does not match layout");
    }

    const RegisterLayout& layout() const { return layout_; }
    const std::vector<Complex>& amps() const { return amps_; }
    std::vector<Complex>& amps() { return amps_; }

    double norm() const {
        double s = 0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    Complex amplitude(const Assignment& full) const {
        for (const auto& r : layout_.registers()) {
            if (!full.count(r.name)) throw ParameterError("register '" + r.name + "' not assigned");
        }
        return amps_[layout_.encode(full)];
    }

    void apply(const GateOp& op) {
        validate(op, layout_);
        std::visit([this](const auto& g) { apply_gate(g); }, op);
    }

    void apply(const Circuit& c) {
        if (!(c.layout() == layout_)) throw ParameterError("circuit layout does not match state layout");
        for (const auto& op : c.ops()) std::visit([this](const auto& g) { apply_gate(g); }, op);
    }

    void apply_qft(std::string_view reg, bool inverse) { apply_gate(Qft{std::string(reg), inverse}); }

    /// Probability of each value of `reg`, summed over all other registers.
    std::vector<double> marginal(std::string_view reg) const {
        const int w = layout_.width(reg);
        const int s = layout_.shift(reg);
        const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
        std::vector<double> p(std::size_t{1} << w, 0.0);
        for (std::uint64_t i = 0; i < amps_.size(); ++i) p[(i >> s) & mask] += std::norm(amps_[i]);
        return p;
    }

    /// Draws `shots` values of `reg` from its marginal distribution.
    std::map<std::uint64_t, std::uint64_t> sample(std::string_view reg, std::uint64_t shots, std::uint64_t seed) const {
        if (shots < 1) throw RangeError("shots must be >= 1");
        const auto p = marginal(reg);
        std::vector<double> cdf(p.size());
        double acc = 0;
        for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = (acc += p[i]);
        std::mt19937_64 rng(seed);
        std::map<std::uint64_t, std::uint64_t> hist;
        for (std::uint64_t s = 0; s < shots; ++s) {
            // 53 random bits -> [0, acc); independent of the standard library's distributions.
            const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
            auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
            std::size_t v = static_cast<std::size_t>(it - cdf.begin());
            if (v >= p.size()) v = p.size() - 1;
            ++hist[v];
        }
        return hist;
    }

    /// Debug dump; not a stable format.
    nlohmann::json to_json() const {
        nlohmann::json doc;
        doc["layout"] = nlohmann::json::array();
        for (const auto& r : layout_.registers()) doc["layout"].push_back({{"name", r.name}, {"width", r.width}});
        nlohmann::json amps = nlohmann::json::array();
        for (const auto& a : amps_) amps.push_back({a.real(), a.imag()});
        doc["amps"] = std::move(amps);
        return doc;
    }

   private:
    int bit_pos(int qubit) const { return layout_.total_qubits() - 1 - qubit; }

    void apply_gate(const Hadamard& g) {
        const int pos = bit_pos(g.target);
        const std::uint64_t m = std::uint64_t{1} << pos;
        const double r = 1.0 / std::sqrt(2.0);
        for (std::uint64_t base = 0; base < amps_.size(); base += 2 * m) {
            for (std::uint64_t i0 = base; i0 < base + m; ++i0) {
                const Complex a = amps_[i0];
                const Complex b = amps_[i0 | m];
                amps_[i0] = (a + b) * r;
                amps_[i0 | m] = (a - b) * r;
            }
        }
    }

    void apply_gate(const PauliX& g) {
        const int pos = bit_pos(g.target);
        const std::uint64_t m = std::uint64_t{1} << pos;
        for (std::uint64_t base = 0; base < amps_.size(); base += 2 * m) {
            std::swap_ranges(amps_.begin() + static_cast<std::ptrdiff_t>(base),
                             amps_.begin() + static_cast<std::ptrdiff_t>(base + m),
                             amps_.begin() + static_cast<std::ptrdiff_t>(base + m));
        }
    }

    void apply_gate(const ControlledDyadicPhase& g) {
        std::vector<int> positions;
        positions.reserve(g.controls.size() + 1);
        positions.push_back(bit_pos(g.target));
        for (int c : g.controls) positions.push_back(bit_pos(c));
        std::sort(positions.begin(), positions.end());
        const Complex phase = dyadic_phase(g.sign, g.k_exp);
        // Walk the 2^(Q - #positions) indices with every listed bit set by
        // incrementing through the complement mask.
        std::uint64_t fixed = 0;
        for (int p : positions) fixed |= std::uint64_t{1} << p;
        const std::uint64_t free_mask = (amps_.size() - 1) & ~fixed;
        std::uint64_t c = 0;
        do {
            auto& a = amps_[c | fixed];
            a = cmul(a, phase);
            c = (c - free_mask) & free_mask;
        } while (c != 0);
    }

    void apply_gate(const DiagonalControlledPower& g) {
        const int kw = layout_.width(g.control);
        const int uw = layout_.width(g.eigen);
        const std::uint64_t kdim = std::uint64_t{1} << kw;
        const std::uint64_t udim = std::uint64_t{1} << uw;
        std::vector<Complex> table(kdim * udim);
        for (std::uint64_t k = 0; k < kdim; ++k) {
            for (std::uint64_t u = 0; u < udim; ++u) {
                table[k * udim + u] = unit_phase(static_cast<long double>(k) * g.unitary.phase(u));
            }
        }
        const int ks = layout_.shift(g.control);
        const int us = layout_.shift(g.eigen);
        for (std::uint64_t i = 0; i < amps_.size(); ++i) {
            const std::uint64_t k = (i >> ks) & (kdim - 1);
            const std::uint64_t u = (i >> us) & (udim - 1);
            amps_[i] = cmul(amps_[i], table[k * udim + u]);
        }
    }

    void apply_gate(const Qft& g) {
        const int w = layout_.width(g.reg);
        const int s = layout_.shift(g.reg);
        const std::uint64_t m = std::uint64_t{1} << w;
        const std::uint64_t lo_count = std::uint64_t{1} << s;
        const std::uint64_t hi_count = amps_.size() >> (s + w);
        const double scale = g.inverse ? std::sqrt(static_cast<double>(m)) : 1.0 / std::sqrt(static_cast<double>(m));
        std::vector<Complex> buf(m);
        for (std::uint64_t hi = 0; hi < hi_count; ++hi) {
            for (std::uint64_t lo = 0; lo < lo_count; ++lo) {
                const std::uint64_t base = (hi << (s + w)) | lo;
                for (std::uint64_t v = 0; v < m; ++v) buf[v] = amps_[base | (v << s)];
                fft_pow2_inplace(buf, g.inverse);
                for (std::uint64_t v = 0; v < m; ++v) amps_[base | (v << s)] = buf[v] * scale;
            }
        }
    }

    RegisterLayout layout_;
    std::vector<Complex> amps_;
};

inline StateVector basis_state(const RegisterLayout& layout, const Assignment& values) {
    std::vector<Complex> amps(layout.dimension());
    amps[layout.encode(values)] = 1.0;
    return StateVector(layout, std::move(amps));
}

/// sum_j f(j)|j> on `reg`, basis states `others` elsewhere. f must be unit norm.
inline StateVector prepare_signal(const RegisterLayout& layout, std::string_view reg, const Signal& f,
                                  const Assignment& others = {}) {
    const int w = layout.width(reg);
    if (f.size() != (std::size_t{1} << w)) {
        throw LengthError("signal length " + std::to_string(f.size()) + " does not match register '" +
                          std::string(reg) + "' of width " + std::to_string(w));
    }
    if (std::abs(f.norm() - 1.0) > 1e-12) throw ParameterError("signal must have unit L2 norm");
    if (others.count(std::string(reg))) throw ParameterError("signal register also given a basis value");
    const std::uint64_t base = layout.encode(others);
    const int s = layout.shift(reg);
    std::vector<Complex> amps(layout.dimension());
    for (std::uint64_t j = 0; j < f.size(); ++j) amps[base | (j << s)] = f[j];
    return StateVector(layout, std::move(amps));
}

}  // namespace qpfrft

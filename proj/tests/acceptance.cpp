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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qpfrft/qpe.hpp"
#include "qpfrft/qpfrft.hpp"
#include "qpfrft_cli.hpp"

using namespace qpfrft;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<Complex> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> g;
    std::vector<Complex> v(n);
    for (auto& x : v) x = {g(rng), g(rng)};
    return v;
}

Verdict chirp_vs_direct() {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> order(-1.0, 1.0);
    double worst = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t n = 2; n <= 1024; n *= 2) {
        for (int trial = 0; trial < 50; ++trial) {
            const Signal f(random_vector(rng, n));
            const double alpha = order(rng);
            const auto ref = frft_direct(f, alpha);
            const auto fast = frft_chirp(f, alpha);
            worst = std::max(worst, max_abs_diff(fast.values, ref.values) / max_abs(ref.values));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst <= 1e-9 && secs < 30.0, "max relative error " + fmt("%.3g", worst) + ", " + fmt("%.2f", secs) + " s"};
}

Verdict circuit_vs_definition() {
    double worst = 0;
    std::size_t cases = 0;
    const auto t0 = std::chrono::steady_clock::now();
    auto check = [&](const Circuit& c, std::uint64_t l, std::uint64_t j, int n) {
        auto s = basis_state(c.layout(), {{"l", l}, {"j", j}});
        const auto ref = apply_direct(s, decompose_l(l, n));
        s.apply(c);
        worst = std::max(worst, max_abs_diff(s.amps(), ref.amps()));
        ++cases;
    };
    for (int n = 1; n <= 4; ++n) {
        const Circuit c = synthesize(n);
        for (std::uint64_t l = 0; l < (std::uint64_t{2} << n); ++l) {
            for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) check(c, l, j, n);
        }
    }
    std::mt19937_64 rng(7);
    for (int n : {5, 6}) {
        const Circuit c = synthesize(n);
        for (int i = 0; i < 200; ++i) {
            const std::uint64_t l = rng() % (std::uint64_t{2} << n);
            check(c, l, rng() % (std::uint64_t{1} << n), n);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {worst <= 1e-10 && secs < 120.0,
            std::to_string(cases) + " cases, max amplitude error " + fmt("%.3g", worst) + ", " + fmt("%.2f", secs) + " s"};
}

Verdict truncation_lemma() {
    double worst = 0;
    for (int n = 1; n <= 4; ++n) {
        const std::int64_t big_n = std::int64_t{1} << n;
        for (std::int64_t l = 0; l < 2 * big_n; ++l) {
            const auto a = decompose_l(static_cast<std::uint64_t>(l), n);
            for (std::int64_t j = 0; j < big_n; ++j) {
                for (std::int64_t k = 0; k < big_n; ++k) {
                    double turns = 0;
                    for (int p = 1; p <= n; ++p) {
                        if ((k >> (n - p)) & 1) turns += psi_phase(a, static_cast<std::uint64_t>(j), p);
                    }
                    const double exact = static_cast<double>(l - big_n) * static_cast<double>(k * j) /
                                         static_cast<double>(big_n * big_n);
                    double d = turns - exact;
                    d -= std::round(d);
                    worst = std::max(worst, std::abs(d) * kTwoPi);
                }
            }
        }
    }
    return {worst <= 1e-12, "max phase discrepancy " + fmt("%.3g", worst) + " rad"};
}

Verdict qpfrft_end_to_end() {
    std::mt19937_64 rng(3);
    double worst = 0;
    double sqrt_n_worst = 0;
    for (int n = 1; n <= 4; ++n) {
        const std::size_t big_n = std::size_t{1} << n;
        for (std::uint64_t l = 0; l < 2 * big_n; ++l) {
            for (int t = 0; t < 10; ++t) {
                const Signal f(random_vector(rng, big_n));
                const auto run = run_qpfrft(f, l, n);
                const auto ref = frft_direct(f, run.index.alpha);
                worst = std::max(worst, max_abs_diff(run.coefficients.values, ref.values));
                std::vector<Complex> alt(big_n);
                for (std::size_t k = 0; k < big_n; ++k) {
                    alt[k] = run.raw_slice[k] * std::sqrt(static_cast<double>(big_n)) * f.norm();
                }
                sqrt_n_worst = std::max(sqrt_n_worst, max_abs_diff(alt, ref.values));
            }
        }
    }
    return {worst <= 1e-9, "rescale 2^n: max error " + fmt("%.3g", worst) + "; rescale sqrt(2^n) would give " +
                               fmt("%.3g", sqrt_n_worst)};
}

Verdict gate_counts() {
    bool ok = true;
    for (int n = 1; n <= 12; ++n) {
        const auto r = gate_count(n);
        ok = ok && r.phi_exact == n * (n + 1) / 2 && r.theta_exact <= r.theta_paper_bound;
    }
    const auto two = gate_count(2);
    ok = ok && two.theta_exact == 8;
    return {ok, "n=2: theta " + std::to_string(two.theta_exact) + " (bound " + std::to_string(two.theta_paper_bound) +
                    "), phi " + std::to_string(two.phi_exact) + "; n=12: theta " +
                    std::to_string(gate_count(12).theta_exact) + " <= " + std::to_string(gate_count(12).theta_paper_bound)};
}

Verdict feasibility() {
    std::vector<int> wrong_low;
    for (int n = 1; n <= 15; ++n) {
        if (!check_inequality(n, 0)) wrong_low.push_back(n);
    }
    bool high_ok = true;
    for (int n = 17; n <= kMaxFeasibilityN; ++n) high_ok = high_ok && !check_inequality(n, 0);
    const bool equality16 = feasibility_lhs(16) == feasibility_rhs(16, 0);
    const int last16 = last_feasible_n(16);
    std::string detail = "nu=0: n>=17 false " + std::string(high_ok ? "yes" : "no") + ", n=16 equality " +
                         (equality16 ? "yes" : "no") + "; nu=16: last true n = " + std::to_string(last16);
    for (int n : wrong_low) {
        detail += "; nu=0, n=" + std::to_string(n) + " is false (" + to_string_u128(feasibility_lhs(n)) + " > " +
                  to_string_u128(feasibility_rhs(n, 0)) + ")";
    }
    return {wrong_low.empty() && high_ok && last16 == 20, detail};
}

Verdict qpe_reduced_exact() {
    const int n = 3;
    const int nprime = 4;
    double worst = 0;
    std::size_t configs = 0;
    std::int64_t layers = -1;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << nprime); ++b) {
        const PhaseTarget target(b, nprime);
        const auto unitary = DiagonalUnitary::with_phase(1, 1, target.value());
        for (const auto& c : integer_phase_configs(n, target)) {
            const auto r = qpe_reduced(unitary, 1, c.l, c.j, n);
            worst = std::max(worst, std::abs(1.0 - r.success_prob));
            if (r.estimate != target.value()) worst = 1;
            layers = std::max(layers, r.gate_tally.at("controlled_power_layers"));
            ++configs;
        }
    }
    const int q = textbook_register_width(nprime, 0.25);
    const auto textbook = qpe_textbook(DiagonalUnitary::with_phase(1, 1, 5.0 / 16.0), 1, q);
    const std::int64_t tb_layers = textbook.gate_tally.at("controlled_power_layers");
    return {configs > 0 && worst <= 1e-10 && layers == n && tb_layers == 6,
            std::to_string(configs) + " integer-phase configs, max |1-p| " + fmt("%.3g", worst) + ", " +
                std::to_string(layers) + " controlled-power layers vs " + std::to_string(tb_layers) + " textbook"};
}

Verdict qpe_grover_law() {
    double worst = 0;
    bool amplified = true;
    std::string lows;
    for (std::uint64_t b = 0; b < 8; ++b) {
        const auto r = qpe_grover(DiagonalUnitary::with_phase(1, 1, static_cast<double>(b) / 16.0), 1, 3, 4);
        const double p0 = r.diagnostics.at("initial_marked_prob");
        const double theta = std::asin(std::sqrt(p0));
        worst = std::max(worst, std::abs(r.success_prob - std::pow(std::sin(5 * theta), 2)));
        amplified = amplified && r.success_prob > p0 && r.diagnostics.at("iterations") == 2.0;
        if (b == 5) lows = "b=5: " + fmt("%.4f", p0) + " -> " + fmt("%.4f", r.success_prob);
    }
    return {worst <= 1e-6 && amplified, "max |p - sin^2(5 theta)| " + fmt("%.3g", worst) + "; " + lows};
}

Verdict qpe_modulated_exhaustive() {
    std::size_t cases = 0;
    std::size_t bad = 0;
    for (int n = 1; n <= 3; ++n) {
        const std::int64_t big_n = std::int64_t{1} << n;
        for (int m = 1; m <= 2; ++m) {
            for (std::uint64_t u = 0; u < (std::uint64_t{1} << m); ++u) {
                for (std::uint64_t l : valid_alphas(u, n)) {
                    const std::int64_t ua = (static_cast<std::int64_t>(l) - big_n) * static_cast<std::int64_t>(u) / big_n;
                    for (std::int64_t b = 0; b < big_n; ++b) {
                        const auto unitary = DiagonalUnitary::with_phase(m, u, std::ldexp(static_cast<double>(b), -n));
                        const auto r = qpe_modulated(unitary, u, l, n);
                        const std::int64_t expect = ((b - ua) % big_n + big_n) % big_n;
                        if (r.measured != expect || std::abs(1.0 - r.success_prob) > 1e-10) ++bad;
                        ++cases;
                    }
                }
            }
        }
    }
    return {bad == 0, std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches"};
}

Verdict determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "qpfrft_acceptance";
    fs::create_directories(dir);
    {
        std::ofstream sig(dir / "signal.json");
        sig << R"({"values": [[0.5,0],[0,0.5],[-0.5,0],[0.5,0],[0.1,0.2],[0,0],[0.3,-0.1],[0,0.25]]})";
    }
    const std::string sig = (dir / "signal.json").string();
    const std::vector<std::vector<std::string>> commands{
        {"frft", "--input", sig, "--alpha", "0.3", "--method", "chirp", "--check"},
        {"ualpha-verify", "--n", "4", "--samples", "64", "--seed", "7"},
        {"qpfrft", "--input", sig, "--l", "11"},
        {"qpe", "--method", "grover", "--n", "3", "--nprime", "4", "--b", "5", "--u", "1", "--threshold", "0"},
        {"qpe", "--method", "modulated", "--n", "3", "--b", "5", "--u", "2", "--l", "12"},
        {"gatecount", "--n-max", "12"},
        {"feasibility", "--n-max", "40"}};
    auto read = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    };
    std::size_t same = 0;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        std::string outputs[2];
        for (int rep = 0; rep < 2; ++rep) {
            const fs::path out = dir / ("out" + std::to_string(rep));
            const fs::path dump = dir / ("dump" + std::to_string(rep));
            fs::remove(dump);
            std::vector<std::string> args{"qpfrft_cli", "--seed", "42", "-o", out.string(), "--dump", dump.string()};
            args.insert(args.end(), commands[i].begin(), commands[i].end());
            std::vector<const char*> argv;
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream sink;
            cli::run(static_cast<int>(argv.size()), argv.data(), sink, sink);
            outputs[rep] = read(out) + "\x1f" + (fs::exists(dump) ? read(dump) : std::string());
        }
        if (!outputs[0].empty() && outputs[0] == outputs[1]) ++same;
    }
    fs::remove_all(dir);
    return {same == commands.size(),
            std::to_string(same) + "/" + std::to_string(commands.size()) + " commands byte-identical across reruns"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"chirp transform matches direct sum, N = 2..1024", chirp_vs_direct},
        {"U_a circuit equals its definition", circuit_vs_definition},
        {"truncated dyadic phases reproduce a k j / 2^n", truncation_lemma},
        {"quantum pipeline coefficients match direct transform", qpfrft_end_to_end},
        {"gate counts against the quoted formula and bound", gate_counts},
        {"feasibility crossovers for nu = 0 and nu = 16", feasibility},
        {"reduced QPE exact on integer-phase configurations", qpe_reduced_exact},
        {"amplitude amplification follows sin^2((2i+1) theta)", qpe_grover_law},
        {"modulated QPE readout shift, exhaustive", qpe_modulated_exhaustive},
        {"CLI reruns are byte-identical", determinism}};

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!v.pass) ++failures;
        std::printf("%s  criterion %2zu  %s | %s | %.2f s\n", v.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), v.detail.c_str(), secs);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}

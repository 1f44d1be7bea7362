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

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error.

#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpfrft/numerics.hpp"
#include "qpfrft/qpe.hpp"
#include "qpfrft/qpfrft.hpp"
#include "qpfrft/signal_io.hpp"
#include "qpfrft/statevector.hpp"
#include "qpfrft/ualpha.hpp"

namespace qpfrft::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string subcommand;
    std::string input;
    std::string output;
    std::string dump;
    std::optional<double> tolerance;

    // frft
    std::optional<double> alpha;
    std::string method = "direct";
    bool check = false;

    // ualpha-verify / qpfrft / qpe
    std::optional<int> n;
    std::optional<std::uint64_t> l;
    std::optional<std::uint64_t> j;
    bool exhaustive = false;
    std::optional<std::uint64_t> samples;
    std::uint64_t seed = 0;
    bool use_circuit = true;

    // qpe
    std::string qpe_method;
    std::optional<std::uint64_t> b;
    std::optional<int> nprime;
    std::uint64_t u = 0;
    std::optional<int> m;
    std::optional<int> iterations;
    double threshold = 0.5;

    // reports
    std::optional<int> n_max;
    std::vector<std::int64_t> nus{0, 16};
};

class UsageError : public Error {
   public:
    using Error::Error;
};

namespace detail {

inline void write_text(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output.empty() || cfg.output == "-") {
        out << text;
        return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw FormatError("cannot write '" + cfg.output + "'");
    f << text;
}

inline void write_json(const RunConfig& cfg, const nlohmann::json& doc, std::ostream& out) {
    write_text(cfg, doc.dump(2) + "\n", out);
}

inline void dump_state(const RunConfig& cfg, const StateVector& state) {
    if (cfg.dump.empty()) return;
    std::ofstream f(cfg.dump, std::ios::binary);
    if (!f) throw FormatError("cannot write '" + cfg.dump + "'");
    f << state.to_json().dump() << "\n";
}

template <typename T>
const T& require(const std::optional<T>& v, const char* flag, const std::string& cmd) {
    if (!v) throw UsageError(cmd + " requires " + flag);
    return *v;
}

inline nlohmann::json tally_json(const std::map<std::string, std::int64_t>& t) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : t) j[k] = v;
    return j;
}

inline nlohmann::json map_json(const std::map<std::string, double>& t) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : t) j[k] = v;
    return j;
}

}  // namespace detail

inline int cmd_frft(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const double alpha = detail::require(cfg.alpha, "--alpha", "frft");
    if (cfg.input.empty()) throw UsageError("frft requires --input");
    if (cfg.method != "direct" && cfg.method != "chirp") throw UsageError("--method must be direct or chirp");
    const Signal f = read_signal_file(cfg.input);
    const bool chirp = cfg.method == "chirp";
    const Spectrum s = chirp ? frft_chirp(f, alpha) : frft_direct(f, alpha);

    nlohmann::json doc = spectrum_to_json(s);
    doc["method"] = cfg.method;
    int status = kExitOk;
    if (cfg.check) {
        const double tol = cfg.tolerance.value_or(1e-9);
        const Spectrum other = chirp ? frft_direct(f, alpha) : frft_chirp(f, alpha);
        const double abs_err = max_abs_diff(s.values, other.values);
        const double ref = max_abs(chirp ? other.values : s.values);
        const double rel_err = ref > 0 ? abs_err / ref : abs_err;
        doc["check"] = {{"method", chirp ? "direct" : "chirp"},
                        {"max_abs_err", abs_err},
                        {"max_rel_err", rel_err},
                        {"tolerance", tol},
                        {"ok", rel_err <= tol}};
        if (rel_err > tol) {
            err << "frft: methods disagree, relative error " << rel_err << " > " << tol << "\n";
            status = kExitVerifyFailed;
        }
    }
    detail::write_json(cfg, doc, out);
    return status;
}

inline int cmd_ualpha_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const int n = detail::require(cfg.n, "--n", "ualpha-verify");
    if (n < 1) throw UsageError("--n must be >= 1");
    const double tol = cfg.tolerance.value_or(1e-10);

    RegisterLayout layout;
    try {
        layout = ualpha_layout(n);
    } catch (const CapacityError& e) {
        throw CapacityError(std::string("memory guard: ") + e.what());
    }
    if (cfg.exhaustive == cfg.samples.has_value()) throw UsageError("give exactly one of --exhaustive or --samples");
    const Circuit circuit = synthesize(n);
    const std::uint64_t l_count = std::uint64_t{2} << n;
    const std::uint64_t j_count = std::uint64_t{1} << n;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> cases;
    if (cfg.exhaustive) {
        for (std::uint64_t l = 0; l < l_count; ++l) {
            for (std::uint64_t j = 0; j < j_count; ++j) cases.emplace_back(l, j);
        }
    } else {
        std::mt19937_64 rng(cfg.seed);
        for (std::uint64_t s = 0; s < *cfg.samples; ++s) {
            const std::uint64_t l = rng() % l_count;
            const std::uint64_t j = rng() % j_count;
            cases.emplace_back(l, j);
        }
    }

    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json failures = nlohmann::json::array();
    double worst = 0;
    for (const auto& [l, j] : cases) {
        const AlphaIndex a = decompose_l(l, n);
        StateVector via_circuit = basis_state(layout, {{"l", l}, {"j", j}});
        const StateVector via_direct = apply_direct(via_circuit, a);
        via_circuit.apply(circuit);
        const double e = max_abs_diff(via_circuit.amps(), via_direct.amps());
        worst = std::max(worst, e);
        rows.push_back({{"l", l}, {"j", j}, {"max_err", e}});
        if (e > tol) failures.push_back({{"l", l}, {"j", j}, {"max_err", e}});
    }

    nlohmann::json doc;
    doc["n"] = n;
    doc["mode"] = cfg.exhaustive ? "exhaustive" : "samples";
    if (!cfg.exhaustive) doc["seed"] = cfg.seed;
    doc["tolerance"] = tol;
    doc["cases"] = std::move(rows);
    doc["case_count"] = cases.size();
    doc["max_err"] = worst;
    doc["gate_tally"] = detail::tally_json(circuit.tally());
    doc["failures"] = failures;
    doc["ok"] = failures.empty();
    detail::write_json(cfg, doc, out);
    if (!failures.empty()) {
        for (const auto& f : failures) {
            err << "ualpha-verify: l=" << f["l"] << " j=" << f["j"] << " max_err=" << f["max_err"] << "\n";
        }
        return kExitVerifyFailed;
    }
    return kExitOk;
}

inline int cmd_qpfrft(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.input.empty()) throw UsageError("qpfrft requires --input");
    const std::uint64_t l = detail::require(cfg.l, "--l", "qpfrft");
    const Signal f = read_signal_file(cfg.input);
    if (!is_pow2(f.size()) || f.size() < 2) throw LengthError("qpfrft needs a signal of length 2^n, n >= 1");
    const int n = cfg.n.value_or(log2_exact(f.size()));
    if (n < 1 || f.size() != (std::size_t{1} << n)) {
        throw UsageError("--n " + std::to_string(n) + " does not match signal length " + std::to_string(f.size()));
    }
    const double tol = cfg.tolerance.value_or(1e-9);
    // Validates the layout against the memory guard before any work.
    ualpha_layout(n);
    const QpfrftRun run = run_qpfrft(f, l, n, cfg.use_circuit, !cfg.dump.empty());
    const Spectrum oracle = frft_direct(f, run.index.alpha);
    const double e = max_abs_diff(run.coefficients.values, oracle.values);
    const double bound = tol * std::max(1.0, max_abs(oracle.values));

    nlohmann::json doc;
    doc["alpha"] = run.index.alpha;
    doc["l"] = l;
    doc["n"] = n;
    doc["path"] = cfg.use_circuit ? "circuit" : "direct";
    doc["rescale"] = run.rescale;
    doc["coefficients"] = complex_array_to_json(run.coefficients.values);
    doc["oracle_maxerr"] = e;
    doc["ok"] = e <= bound;
    detail::write_json(cfg, doc, out);
    if (run.final_state) detail::dump_state(cfg, *run.final_state);
    if (e > bound) {
        err << "qpfrft: oracle deviation " << e << " exceeds " << bound << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

inline int cmd_qpe(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::string& method = cfg.qpe_method;
    if (method != "reduced" && method != "grover" && method != "modulated") {
        throw UsageError("--method must be reduced, grover or modulated");
    }
    const int n = detail::require(cfg.n, "--n", "qpe");
    const std::uint64_t b = detail::require(cfg.b, "--b", "qpe");
    int nprime = cfg.nprime.value_or(n);
    if (method == "grover") nprime = detail::require(cfg.nprime, "--nprime", "qpe --method grover");
    if (method == "reduced") {
        detail::require(cfg.l, "--l", "qpe --method reduced");
        detail::require(cfg.j, "--j", "qpe --method reduced");
    }
    if (method == "modulated") detail::require(cfg.l, "--l", "qpe --method modulated");

    int m = cfg.m.value_or(1);
    if (!cfg.m) {
        while ((std::uint64_t{1} << m) <= cfg.u) ++m;
    }
    const PhaseTarget target(b, nprime);
    const DiagonalUnitary unitary = DiagonalUnitary::with_phase(m, cfg.u, target.value());

    QpeResult r;
    const bool keep = !cfg.dump.empty();
    if (method == "reduced") {
        r = qpe_reduced(unitary, cfg.u, *cfg.l, *cfg.j, n, keep);
    } else if (method == "grover") {
        r = qpe_grover(unitary, cfg.u, n, nprime, cfg.iterations, keep);
    } else {
        r = qpe_modulated(unitary, cfg.u, *cfg.l, n, keep);
    }

    nlohmann::json doc;
    doc["method"] = r.method;
    nlohmann::json params = detail::map_json(r.params);
    params["b"] = b;
    params["nprime"] = nprime;
    params["m"] = m;
    params["alpha_convention"] = r.alpha_convention;
    doc["params"] = params;
    doc["measured"] = r.measured;
    doc["estimate"] = r.estimate;
    doc["success_prob"] = r.success_prob;
    doc["gate_tally"] = detail::tally_json(r.gate_tally);
    if (!r.diagnostics.empty()) doc["diagnostics"] = detail::map_json(r.diagnostics);
    doc["threshold"] = cfg.threshold;
    doc["ok"] = r.success_prob >= cfg.threshold;
    detail::write_json(cfg, doc, out);
    if (r.final_state) detail::dump_state(cfg, *r.final_state);
    if (r.success_prob < cfg.threshold) {
        err << "qpe: success probability " << r.success_prob << " below threshold " << cfg.threshold << "\n";
        return kExitVerifyFailed;
    }
    return kExitOk;
}

inline int cmd_gatecount(const RunConfig& cfg, std::ostream& out) {
    const int n_max = detail::require(cfg.n_max, "--n-max", "gatecount");
    if (n_max < 1 || n_max > 512) throw UsageError("--n-max must be in [1, 512]");
    std::ostringstream csv;
    csv << "n,theta_exact,phi_exact,theta_paper_bound,total_exact\n";
    for (int n = 1; n <= n_max; ++n) {
        const auto r = gate_count(n);
        csv << r.n << ',' << r.theta_exact << ',' << r.phi_exact << ',' << r.theta_paper_bound << ',' << r.total_exact
            << '\n';
    }
    detail::write_text(cfg, csv.str(), out);
    return kExitOk;
}

inline int cmd_feasibility(const RunConfig& cfg, std::ostream& out) {
    const int n_max = detail::require(cfg.n_max, "--n-max", "feasibility");
    if (n_max < 1 || n_max > kMaxFeasibilityN) {
        throw UsageError("--n-max must be in [1, " + std::to_string(kMaxFeasibilityN) + "]");
    }
    std::ostringstream csv;
    csv << "n,nu,lhs,rhs,ok\n";
    for (const auto& row : feasibility_table(n_max, cfg.nus)) {
        csv << row.n << ',' << row.nu << ',' << to_string_u128(row.lhs) << ',' << to_string_u128(row.rhs) << ','
            << (row.ok ? "true" : "false") << '\n';
    }
    detail::write_text(cfg, csv.str(), out);
    return kExitOk;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.subcommand == "frft") return cmd_frft(cfg, out, err);
    if (cfg.subcommand == "ualpha-verify") return cmd_ualpha_verify(cfg, out, err);
    if (cfg.subcommand == "qpfrft") return cmd_qpfrft(cfg, out, err);
    if (cfg.subcommand == "qpe") return cmd_qpe(cfg, out, err);
    if (cfg.subcommand == "gatecount") return cmd_gatecount(cfg, out);
    if (cfg.subcommand == "feasibility") return cmd_feasibility(cfg, out);
    throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
}

/// Parses argv and runs one subcommand, writing results to `out` (unless
/// --output is given) and diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Fractional Fourier transforms and U_alpha phase estimation on a statevector simulator"};
    app.require_subcommand(1);
    app.add_option("-o,--output", cfg.output, "Output file (default: stdout)");
    app.add_option("--tolerance", cfg.tolerance, "Override the verification tolerance");
    app.add_option("--dump", cfg.dump, "Write the final statevector as JSON to this file");
    app.add_option("--seed", cfg.seed, "RNG seed");

    auto* frft = app.add_subcommand("frft", "Classical fractional Fourier transform of a signal file");
    frft->add_option("-i,--input", cfg.input, "Signal JSON")->required();
    frft->add_option("--alpha", cfg.alpha, "Transform order")->required();
    frft->add_option("--method", cfg.method, "direct | chirp");
    frft->add_flag("--check", cfg.check, "Cross-check against the other method");

    auto* verify = app.add_subcommand("ualpha-verify", "Check the U_alpha circuit against the direct definition");
    verify->add_option("--n", cfg.n, "Register width")->required();
    verify->add_flag("--exhaustive", cfg.exhaustive, "All (l, j) pairs");
    verify->add_option("--samples", cfg.samples, "Number of random (l, j) pairs");
    verify->add_option("--seed", cfg.seed, "RNG seed for --samples");

    auto* qp = app.add_subcommand("qpfrft", "Fractional Fourier coefficients through the quantum pipeline");
    qp->add_option("-i,--input", cfg.input, "Signal JSON")->required();
    qp->add_option("--l", cfg.l, "Alpha index l, alpha = (l - 2^n)/2^n")->required();
    qp->add_option("--n", cfg.n, "Register width (default: log2 of the signal length)");
    qp->add_flag("--direct{false}", cfg.use_circuit, "Use the matrix-free U_alpha instead of the circuit");

    auto* qpe = app.add_subcommand("qpe", "U_alpha based phase estimation");
    qpe->add_option("--method", cfg.qpe_method, "reduced | grover | modulated")->required();
    qpe->add_option("--n", cfg.n, "Width of the j / w registers")->required();
    qpe->add_option("--b", cfg.b, "Eigenphase numerator: phi_u = b / 2^nprime")->required();
    qpe->add_option("--nprime", cfg.nprime, "Eigenphase precision bits (default n; required for grover)");
    qpe->add_option("--l", cfg.l, "Alpha index l");
    qpe->add_option("--j", cfg.j, "j register value (reduced)");
    qpe->add_option("--u", cfg.u, "Eigenindex");
    qpe->add_option("--m", cfg.m, "Eigen register width (default: smallest that holds u)");
    qpe->add_option("--iterations", cfg.iterations, "Grover rounds (default floor(pi/4 sqrt(2^n)))");
    qpe->add_option("--threshold", cfg.threshold, "Minimum success probability for exit 0");

    auto* gc = app.add_subcommand("gatecount", "U_alpha gate counts as CSV");
    gc->add_option("--n-max", cfg.n_max, "Largest n")->required();

    auto* fe = app.add_subcommand("feasibility", "Rows of 2^n <= (nu + n)^4 as CSV");
    fe->add_option("--n-max", cfg.n_max, "Largest n")->required();
    fe->add_option("--nu", cfg.nus, "nu values")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }
    for (auto* sub : app.get_subcommands()) cfg.subcommand = sub->get_name();

    try {
        return dispatch(cfg, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace qpfrft::cli

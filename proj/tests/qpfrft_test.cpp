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

#include "qpfrft/qpfrft.hpp"

#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace qpfrft;
using qpfrft::testing::random_unit;

namespace {

// F_a[k] = sum_j f[j] exp(2 pi i a k j / N) with a = (l - N)/N, evaluated
// with the exponent reduced in integers.
std::vector<Complex> reference_frft(const std::vector<Complex>& f, std::uint64_t l, int n) {
    const std::int64_t big_n = std::int64_t{1} << n;
    const std::int64_t den = big_n * big_n;
    std::vector<Complex> out(f.size());
    for (std::int64_t k = 0; k < big_n; ++k) {
        for (std::int64_t j = 0; j < big_n; ++j) {
            std::int64_t num = ((static_cast<std::int64_t>(l) - big_n) * k * j) % den;
            if (num < 0) num += den;
            out[k] += f[j] * qpfrft::testing::expi_turns(static_cast<double>(num) / static_cast<double>(den));
        }
    }
    return out;
}

}  // namespace

TEST(RunQpfrft, DeltaGivesOnes) {
    for (int n = 1; n <= 3; ++n) {
        std::vector<Complex> f(std::size_t{1} << n);
        f[0] = 1;
        for (std::uint64_t l = 0; l < (std::uint64_t{2} << n); ++l) {
            const auto run = run_qpfrft(Signal(f), l, n);
            for (const auto& v : run.coefficients.values) ASSERT_LT(std::abs(v - Complex(1, 0)), 1e-12);
        }
    }
}

TEST(RunQpfrft, AlphaZeroSumsTheSignal) {
    const auto run = run_qpfrft(Signal({0.5, 0.5, 0.5, 0.5}), 4, 2);
    EXPECT_EQ(run.coefficients.alpha, 0.0);
    EXPECT_EQ(run.rescale, 4.0);
    for (const auto& v : run.coefficients.values) EXPECT_LT(std::abs(v - Complex(2, 0)), 1e-12);
}

TEST(RunQpfrft, RandomSignalMatchesDirect) {
    std::mt19937_64 rng(3);
    const Signal f(random_unit(rng, 8));
    const auto run = run_qpfrft(f, 11, 3);
    EXPECT_EQ(run.coefficients.alpha, 0.375);
    const auto ref = frft_direct(f, 0.375);
    EXPECT_LT(max_abs_diff(run.coefficients.values, ref.values), 1e-9);
}

TEST(RunQpfrft, FrozenTwoQubitValues) {
    const Signal f({{0.5, 0}, {0, 0.5}, {-0.5, 0}, {0.5, 0}});
    const auto run = run_qpfrft(f, 5, 2);
    const std::vector<Complex> expect{{0.5, 0.5},
                                      {0.1464466094067262, 0.570326141918013},
                                      {-0.2071067811865475, 0.20710678118654757},
                                      {-0.07032614191801306, -0.35355339059327373}};
    EXPECT_LT(max_abs_diff(run.coefficients.values, expect), 1e-12);
}

TEST(RunQpfrft, RescaleIsNTimesNorm) {
    std::mt19937_64 rng(9);
    auto v = qpfrft::testing::random_complex(rng, 16);
    const Signal f(v);
    const auto run = run_qpfrft(f, 20, 4);
    EXPECT_NEAR(run.rescale, 16.0 * f.norm(), 1e-12);
    EXPECT_LT(max_abs_diff(run.coefficients.values, reference_frft(v, 20, 4)), 1e-9 * f.norm() * 16);
    // sqrt(N) scaling would be off by a factor sqrt(N).
    std::vector<Complex> wrong(16);
    for (std::size_t k = 0; k < 16; ++k) wrong[k] = run.raw_slice[k] * 4.0 * f.norm();
    EXPECT_GT(max_abs_diff(wrong, reference_frft(v, 20, 4)), 0.1);
}

TEST(RunQpfrft, OracleEquivalenceBothPaths) {
    std::mt19937_64 rng(1);
    for (int n = 1; n <= 4; ++n) {
        for (std::uint64_t l = 0; l < (std::uint64_t{2} << n); ++l) {
            for (int trial = 0; trial < 10; ++trial) {
                const Signal f(random_unit(rng, std::size_t{1} << n));
                const auto ref = frft_direct(f, decompose_l(l, n).alpha);
                const auto ref2 = reference_frft(f.values, l, n);
                const auto circ = run_qpfrft(f, l, n, true);
                const auto direct = run_qpfrft(f, l, n, false);
                ASSERT_LT(max_abs_diff(circ.coefficients.values, ref.values), 1e-9);
                ASSERT_LT(max_abs_diff(circ.coefficients.values, ref2), 1e-9);
                ASSERT_LT(max_abs_diff(direct.coefficients.values, ref.values), 1e-9);
                ASSERT_LT(max_abs_diff(circ.coefficients.values, direct.coefficients.values), 1e-10);
            }
        }
    }
}

TEST(RunQpfrft, AlphaMinusOneIsInverseDft) {
    std::mt19937_64 rng(4);
    const Signal f(random_unit(rng, 16));
    const auto run = run_qpfrft(f, 0, 4);
    EXPECT_LT(max_abs_diff(run.coefficients.values, qpfrft::testing::direct_dft(f.values, -1)), 1e-9);
}

TEST(RunQpfrft, NothingLeaksOutOfTheLBlock) {
    std::mt19937_64 rng(8);
    const Signal f(random_unit(rng, 8));
    const auto run = run_qpfrft(f, 6, 3, true, true);
    ASSERT_TRUE(run.final_state.has_value());
    double mass = 0;
    for (std::uint64_t q = 0; q < 8; ++q) {
        for (std::uint64_t k = 0; k < 8; ++k) mass += std::norm(run.final_state->amplitude({{"l", 6}, {"j", q}, {"w", k}}));
    }
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_NEAR(run.final_state->norm(), 1.0, 1e-12);
}

TEST(RunQpfrft, Errors) {
    EXPECT_THROW(run_qpfrft(Signal({1, 0, 0}), 0, 2), LengthError);
    EXPECT_THROW(run_qpfrft(Signal({1, 0}), 0, 2), LengthError);
    EXPECT_THROW(run_qpfrft(Signal({0, 0}), 0, 1), ParameterError);
    EXPECT_THROW(run_qpfrft(Signal({1, 0}), 4, 1), RangeError);
    EXPECT_THROW(run_qpfrft(Signal({1}), 0, 0), RangeError);
}

TEST(Xalpha, RowZeroAndAlphaZero) {
    std::mt19937_64 rng(6);
    const Signal f(random_unit(rng, 8));
    const auto x = xalpha_table(f, decompose_l(13, 3));
    for (std::size_t k = 0; k < 8; ++k) EXPECT_LT(std::abs(x(0, k) - f[0] / std::sqrt(8.0)), 1e-15);
    const auto x0 = xalpha_table(f, decompose_l(8, 3));
    for (std::size_t j = 0; j < 8; ++j) {
        for (std::size_t k = 0; k < 8; ++k) EXPECT_LT(std::abs(x0(j, k) - f[j] / std::sqrt(8.0)), 1e-15);
    }
    EXPECT_THROW(xalpha_table(Signal({1, 0}), decompose_l(1, 3)), LengthError);
}

TEST(Xalpha, ColumnSumsGiveTheTransform) {
    std::mt19937_64 rng(10);
    const Signal f(qpfrft::testing::random_complex(rng, 16));
    for (std::uint64_t l : {0u, 3u, 17u, 31u}) {
        const auto x = xalpha_table(f, decompose_l(l, 4));
        const auto ref = reference_frft(f.values, l, 4);
        for (std::size_t k = 0; k < 16; ++k) {
            Complex sum{0, 0};
            for (std::size_t j = 0; j < 16; ++j) sum += x(j, k);
            EXPECT_LT(std::abs(sum * 4.0 - ref[k]), 1e-12);
        }
    }
}

// The state between U_a and the QFT carries X_a on |j>|k>.
TEST(Xalpha, IntermediateStateMatchesTable) {
    std::mt19937_64 rng(12);
    for (int n = 1; n <= 4; ++n) {
        for (std::uint64_t l = 0; l < (std::uint64_t{2} << n); ++l) {
            const Signal f(random_unit(rng, std::size_t{1} << n));
            const auto a = decompose_l(l, n);
            auto s = qpfrft_input_state(f, a);
            s.apply(synthesize(a));
            const auto x = xalpha_table(f, a);
            for (std::size_t j = 0; j < x.rows; ++j) {
                for (std::size_t k = 0; k < x.cols; ++k) {
                    ASSERT_LT(std::abs(s.amplitude({{"l", l}, {"j", j}, {"w", k}}) - x(j, k)), 1e-12);
                }
            }
        }
    }
}

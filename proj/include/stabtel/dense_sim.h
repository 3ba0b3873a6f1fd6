// Copyright 2026 The stabtel Authors
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

#ifndef STABTEL_DENSE_SIM_H
#define STABTEL_DENSE_SIM_H

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stabtel/pauli.h"
#include "stabtel/protocol.h"
#include "stabtel/stabilizer_group.h"

namespace stabtel {

/// Largest Hilbert-space dimension materialized by default.
inline constexpr std::size_t kDefaultBudget = std::size_t{1} << 13;

/// Pinned numerical tolerances.
inline constexpr double kConstructionTol = 1e-10;
inline constexpr double kPsdTol = -1e-9;
inline constexpr double kEqualityTol = 1e-12;
inline constexpr double kPerfectionTol = 1e-8;
inline constexpr double kZeroProbability = 1e-12;
/// Enumerate every outcome up to this many, otherwise sample.
inline constexpr std::size_t kEnumerationLimit = 4096;

/// d^n, throwing std::length_error when it exceeds `budget`.
std::size_t checked_dimension(int64_t d, std::size_t n, std::size_t budget = kDefaultBudget);

/// A validated density matrix: Hermitian and unit trace within 1e-10, and no
/// eigenvalue below -1e-9.
class DensityMatrix {
   public:
    /// Throws std::invalid_argument when a check fails.
    explicit DensityMatrix(ComplexMatrix entries);

    std::size_t dim() const {
        return static_cast<std::size_t>(entries_.rows());
    }
    const ComplexMatrix &matrix() const {
        return entries_;
    }

   private:
    ComplexMatrix entries_;
};

/// Exact gamma^c (x)_k X^{a_k} Z^{b_k}, first qudit most significant.
ComplexMatrix pauli_matrix(const PauliOperator &g, std::size_t budget = kDefaultBudget);

/// P(g_1..g_k; x) = prod_i (1/d) sum_j omega^{-j x_i} g_i^j for commuting g_i.
ComplexMatrix projector(std::span<const PauliOperator> gens, std::span<const int64_t> x,
                        std::size_t budget = kDefaultBudget);

/// P_S / tr(P_S). Throws std::logic_error if tr(P_S) disagrees with
/// projector_rank.
DensityMatrix rho_S(const StabilizerGroup &s, std::size_t budget = kDefaultBudget);

/// Partial trace keeping `keep` (ascending) of qudits with dimensions `dims`.
ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims);

/// Half the sum of singular values of a - b.
double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b);
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

/// Normalized G G^dag for a seeded matrix G of standard complex normals.
DensityMatrix random_density_matrix(std::size_t dim, uint64_t seed);

enum class OutcomeMode { kAuto, kEnumerate, kSample };

struct SimulationOptions {
    OutcomeMode mode = OutcomeMode::kAuto;
    /// Draws in sample mode; repeated outcomes are simulated once.
    std::size_t samples = 256;
    uint64_t seed = 0;
    std::size_t budget = kDefaultBudget;
};

struct OutcomeRecord {
    std::vector<int64_t> outcome;
    double probability = 0;
    /// Trace distance between the destination state and the product of the
    /// inputs; negative when the outcome was skipped for zero probability.
    double trace_distance = -1;
    ComplexMatrix recovered;
};

struct SimulationResult {
    std::vector<OutcomeRecord> outcomes;
    bool enumerated = false;
    std::size_t total_outcomes = 0;
    double probability_sum = 0;
    double max_trace_distance = 0;
    double mean_trace_distance = 0;

    bool perfect(double tol = kPerfectionTol) const {
        return max_trace_distance < tol;
    }
};

/// Runs the protocol on rho_S (x) sigma_1 (x) ... (x) sigma_m, one input per
/// sender with dimension d^{a_i}.
///
/// Throws std::invalid_argument on dimension mismatch or an invalid
/// stabilizer, std::length_error past the budget, and std::logic_error when
/// no outcome has probability above 1e-12.
SimulationResult run_protocol(const ProtocolSpec &spec, const std::vector<DensityMatrix> &inputs,
                              const SimulationOptions &options = {});

}  // namespace stabtel

#endif

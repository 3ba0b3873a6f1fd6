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

#ifndef STABTEL_PROTOCOL_H
#define STABTEL_PROTOCOL_H

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabtel/decomposition.h"
#include "stabtel/pauli.h"

namespace stabtel {

using ComplexMatrix = Eigen::MatrixXcd;

/// Outcome-to-correction map. Destination qudit l receives
/// Z^{sum_k z_coeffs[l][k] x_k} X^{sum_k x_coeffs[l][k] x_k}; both tables are
/// b x 2b. The standard rule has x_coeffs[l][2l] = 1 and z_coeffs[l][2l+1] = -1
/// (0-based), everything else 0.
struct CorrectionRule {
    std::vector<std::vector<int64_t>> x_coeffs;
    std::vector<std::vector<int64_t>> z_coeffs;

    static CorrectionRule standard(std::size_t b, int64_t d);
    /// Pauli on the b destination qudits for the outcome vector x (length 2b).
    PauliOperator apply(std::span<const int64_t> x, int64_t d) const;
    bool operator==(const CorrectionRule &other) const = default;
};

/// Everything the parties need to run the one-round protocol.
///
/// Sender i measures the commuting operators `measurements[i]`, which act on
/// its sites (sorted) followed by its capacities[i] message qudits. Outcomes
/// are concatenated over senders in order; within a sender they are
/// interleaved (Z-type, X-type) per message qudit. The receiver applies
/// `receiver_unitary` to its sites (sorted; first site most significant)
/// either before the measurements or after hearing the outcomes, then the
/// correction on the destination sites.
struct ProtocolSpec {
    int64_t d = 2;
    std::size_t num_qudits = 0;
    std::vector<std::vector<std::size_t>> parts;
    std::size_t receiver = 0;
    /// Generators of the shared state's stabilizer group.
    std::vector<PauliOperator> stabilizer;
    std::vector<std::size_t> capacities;
    ComplexMatrix receiver_unitary;
    std::vector<std::vector<PauliOperator>> measurements;
    /// Destination sites T'_i of each sender, global 0-based qudit indices.
    std::vector<std::vector<std::size_t>> destinations;
    CorrectionRule correction;
    /// The receiver's unitary commutes with the senders' measurements, so it
    /// may be applied first or last.
    bool unitary_first = true;

    Partition partition() const;
    std::size_t total_capacity() const;
    /// Concatenation of the destinations, in receiver-local order.
    std::vector<std::size_t> destination_sites() const;
};

/// Unitary U on q qudits with U Zbar_i U^dag = Z_i for every i and
/// U Xbar_j U^dag = X_j for j < xbar.size() <= zbar.size().
///
/// Throws std::invalid_argument naming the offending pair when the Z-bars do
/// not commute, the X-bars do not commute, or e(Zbar_i, Xbar_j) != delta_ij.
/// Eigenbases are fixed by Gram-Schmidt over projector columns in index order.
ComplexMatrix synthesize_receiver_unitary(const std::vector<PauliOperator> &zbar,
                                          const std::vector<PauliOperator> &xbar, int64_t d, std::size_t q);

/// The 2 a_i commuting operators of sender i (0-based among senders), each on
/// the sender's sites followed by its a_i message qudits.
std::vector<PauliOperator> build_sender_measurement(const Decomposition &decomp, const Partition &partition,
                                                    std::size_t sender);

/// (x)_{l} Z^{-x_{2l}} X^{x_{2l-1}} over b qudits, with 1-based outcome labels.
PauliOperator correction_unitary(std::span<const int64_t> x, std::size_t b, int64_t d);

/// Assembles the protocol from a certified decomposition.
ProtocolSpec synthesize_protocol(const StabilizerGroup &s, const Partition &partition, const Decomposition &decomp);

/// Searches for a decomposition first. Returns nothing (with a diagnostic)
/// when none was found; that does not mean the capacity is unachievable.
std::optional<ProtocolSpec> synthesize_protocol(const StabilizerGroup &s, const Partition &partition,
                                                std::string *diagnostic = nullptr);

}  // namespace stabtel

#endif

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

#ifndef STABTEL_DECOMPOSITION_H
#define STABTEL_DECOMPOSITION_H

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stabtel/stabilizer_group.h"

namespace stabtel {

/// Disjoint nonempty parts covering qudits 0..n-1. One part is the receiver;
/// the others are senders, kept in their listed order.
class Partition {
   public:
    /// Throws std::invalid_argument on overlap, gaps, empty parts, fewer than
    /// two parts, or a receiver index out of range.
    Partition(std::vector<std::vector<std::size_t>> parts, std::size_t receiver, std::size_t num_qudits);

    /// Receiver is the last part.
    static Partition with_last_receiver(std::vector<std::vector<std::size_t>> parts, std::size_t num_qudits);

    const std::vector<std::vector<std::size_t>> &parts() const {
        return parts_;
    }
    std::size_t receiver_index() const {
        return receiver_;
    }
    std::size_t num_qudits() const {
        return num_qudits_;
    }
    std::size_t num_senders() const {
        return parts_.size() - 1;
    }
    /// Sites of sender i (0-based among senders), sorted.
    const std::vector<std::size_t> &sender(std::size_t i) const;
    /// Sites of the receiver, sorted.
    const std::vector<std::size_t> &receiver() const {
        return parts_[receiver_];
    }
    /// Index into parts() of sender i.
    std::size_t sender_part_index(std::size_t i) const;

    std::string str() const;

   private:
    std::vector<std::vector<std::size_t>> parts_;
    std::size_t receiver_;
    std::size_t num_qudits_;
};

/// Generators of S arranged so that each sender owns conjugate pairs acting
/// as the identity on every other sender, and the rest act on the receiver
/// as the tail of a canonical pattern.
///
/// Layout of `generators`: for each sender, its pairs (Z-type, X-type)
/// interleaved; then the tail Z-type elements (tail pairs first), the tail
/// X-type elements, and finally elements acting trivially on the receiver.
struct Decomposition {
    std::vector<PauliOperator> generators;
    /// Exponent vector of each generator over the original generators of S.
    std::vector<ResidueVector> combinations;
    /// Indices into `generators` for P_1..P_m (senders) and P_{m+1} (last).
    std::vector<std::vector<std::size_t>> parts;
    /// a_1..a_m.
    std::vector<std::size_t> capacities;
    /// Pattern of the whole restricted group S^(receiver): t = sum of capacities.
    CanonicalPattern receiver_pattern;
    /// Normalized receiver restrictions in pattern order.
    PatternWitness witness;
    /// Set when d is composite: the search only pivots on units, so a failure
    /// or a small capacity is not conclusive.
    bool composite_caveat = false;

    std::size_t total_capacity() const;
    /// Generators of sender i in pair order (Z-type, X-type, ...).
    std::vector<PauliOperator> sender_pairs(std::size_t i) const;
};

/// Greedy search: senders in order, each taking as many pairs as possible
/// from generators local to it, ties broken by lowest index. The result is
/// re-verified with verify_decomposition before it is returned. On failure
/// `diagnostic` (when given) names the stage that failed.
std::optional<Decomposition> find_multipartite_decomposition(const StabilizerGroup &s, const Partition &partition,
                                                            std::string *diagnostic = nullptr);

/// The two-party case with the given receiver sites.
std::optional<Decomposition> find_bipartite_decomposition(const StabilizerGroup &s,
                                                         const std::vector<std::size_t> &receiver_sites,
                                                         std::string *diagnostic = nullptr);

/// Certifies the subgroups P_i = <g_j : j in groups[i]> given as 0-based
/// generator indices, senders first in partition order, P_{m+1} last. Pairs
/// are found inside each subgroup; subgroups are not mixed.
std::optional<Decomposition> certify_user_decomposition(const StabilizerGroup &s, const Partition &partition,
                                                       const std::vector<std::vector<std::size_t>> &groups,
                                                       std::string *diagnostic = nullptr);

/// Independent re-check of every structural condition a decomposition claims.
CheckResult verify_decomposition(const StabilizerGroup &s, const Partition &partition, const Decomposition &decomp);

}  // namespace stabtel

#endif

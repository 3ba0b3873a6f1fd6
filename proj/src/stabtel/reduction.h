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

#ifndef STABTEL_REDUCTION_H
#define STABTEL_REDUCTION_H

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "stabtel/pauli.h"

namespace stabtel::internal {

/// Commutation exponent of g and h counting only the given sites.
int64_t exponent_on(const PauliOperator &g, const PauliOperator &h, std::span<const std::size_t> sites);

/// A list of operators rewritten by invertible recombinations, together with
/// each operator's exponent vector over the original list.
///
/// Exponents are reduced mod d, so operators are exact only when every
/// element of the generated group satisfies g^d = I (true inside a
/// stabilizer group). For restricted groups only the exponent vectors matter.
class Workspace {
   public:
    explicit Workspace(std::vector<PauliOperator> ops);

    std::size_t size() const {
        return ops_.size();
    }
    const PauliOperator &op(std::size_t i) const {
        return ops_[i];
    }
    const ResidueVector &combination(std::size_t i) const {
        return combos_[i];
    }

    /// (op_i, op_j) <- (op_i^s op_j^t, op_i^u op_j^v).
    void transform(std::size_t i, std::size_t j, int64_t s, int64_t t, int64_t u, int64_t v);
    /// op_i <- op_i * op_j^e.
    void absorb(std::size_t i, std::size_t j, int64_t e);
    /// op_i <- op_i^e for a unit e.
    void raise(std::size_t i, int64_t e);

   private:
    int64_t d_;
    std::vector<PauliOperator> ops_;
    std::vector<ResidueVector> combos_;
};

/// Gaussian elimination of the x and z entries on `sites`, column by column.
/// Each column's pivot row is removed from `rows` and returned in pivot order;
/// the rows left in `rows` vanish on every listed site.
std::vector<std::size_t> eliminate_sites(Workspace &ws, std::vector<std::size_t> &rows,
                                         std::span<const std::size_t> sites);

/// Symplectic Gram-Schmidt restricted to `sites`.
///
/// Repeatedly takes the lowest candidate g with some candidate partner h whose
/// exponent e with g is a unit, rescales h to make e = 1, removes both from
/// `active` and `candidates`, and clears their exponents from every other
/// active row. Returns (g, h) pairs in extraction order.
std::vector<std::pair<std::size_t, std::size_t>> extract_pairs(Workspace &ws, std::vector<std::size_t> &active,
                                                               std::vector<std::size_t> &candidates,
                                                               std::span<const std::size_t> sites);

/// An operator bar in G' with bar^a equal to w up to phase, when the exponents
/// of w divide entrywise (or a is a unit); otherwise w normalized into G'.
PauliOperator pattern_root(const PauliOperator &w, int64_t a);

}  // namespace stabtel::internal

#endif

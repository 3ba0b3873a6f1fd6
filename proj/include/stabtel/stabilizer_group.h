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

#ifndef STABTEL_STABILIZER_GROUP_H
#define STABTEL_STABILIZER_GROUP_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stabtel/pauli.h"
#include "stabtel/zd_linalg.h"

namespace stabtel {

/// Outcome of a structural check: ok, or a human-readable reason.
struct CheckResult {
    bool ok = true;
    std::string reason;

    static CheckResult failure(std::string why) {
        return {false, std::move(why)};
    }
    explicit operator bool() const {
        return ok;
    }
};

/// An abelian group of qudit Paulis given by independent commuting generators,
/// each of which has eigenvalue 1, and containing no scalar other than I.
///
/// Instances are only produced by build_group, so the invariants always hold.
class StabilizerGroup {
   public:
    int64_t d() const {
        return d_;
    }
    std::size_t num_qudits() const {
        return n_;
    }
    /// Number of generators k.
    std::size_t size() const {
        return generators_.size();
    }
    const std::vector<PauliOperator> &generators() const {
        return generators_;
    }
    const PauliOperator &generator(std::size_t i) const {
        return generators_.at(i);
    }

    /// k x 2n matrix over Z_d; row i is the symplectic vector of generator i.
    ResidueMatrix tableau() const;

   private:
    friend StabilizerGroup build_group(std::vector<PauliOperator> generators, int64_t d, std::size_t num_qudits);
    int64_t d_ = 2;
    std::size_t n_ = 0;
    std::vector<PauliOperator> generators_;
};

/// Validates and wraps a generator list. Generator positions in error
/// messages are 1-based ("generator #2").
///
/// Throws std::invalid_argument when a generator has the wrong shape, lacks
/// eigenvalue 1, fails to commute with another generator, is generated by
/// the others, or when the generators force a nontrivial scalar into the group.
StabilizerGroup build_group(std::vector<PauliOperator> generators, int64_t d, std::size_t num_qudits);

/// Product g_1^{j_1} g_2^{j_2} ... in list order, exact.
PauliOperator product_of_powers(std::span<const PauliOperator> generators, const ResidueVector &exponents);

/// Exponents j with prod_i g_i^{j_i} == g exactly (phase included), if g is in S.
std::optional<ResidueVector> is_member(const PauliOperator &g, const StabilizerGroup &s);

/// Dimension of the stabilized subspace, d^n / |S|. Throws std::overflow_error
/// when d^n does not fit in 63 bits.
uint64_t projector_rank(const StabilizerGroup &s);

/// The restriction S^(T) = <gamma, g_1^(T), ..., g_k^(T)>.
///
/// Because gamma is adjoined, membership ignores phases.
struct RestrictedGroup {
    int64_t d = 2;
    std::vector<std::size_t> sites;
    std::vector<PauliOperator> generators;

    RowSpanProfile span_profile() const;
    /// True when `op` (on sites.size() qudits) lies in the group.
    bool contains(const PauliOperator &op) const;
    /// True when both groups are generated by the same set of operators.
    bool same_group(const RestrictedGroup &other) const;
};

/// Throws std::invalid_argument when `sites` is empty, has duplicates or is
/// out of range.
RestrictedGroup restrict_group(const StabilizerGroup &s, std::span<const std::size_t> sites);

/// The target shape <gamma, Z_1, X_1, ..., Z_t, X_t, Z_{t+1}^{a_1}, ...,
/// Z_{t+s}^{a_s}, X_{t+1}^{b_1}, ..., X_{t+u}^{b_u}> on t + s qudits.
struct CanonicalPattern {
    std::size_t t = 0;
    std::vector<int64_t> z_exponents;  // a_1..a_s
    std::vector<int64_t> x_exponents;  // b_1..b_u, u <= s

    std::size_t s() const {
        return z_exponents.size();
    }
    std::size_t u() const {
        return x_exponents.size();
    }

    /// The group's listed generators in the order shown above (without gamma).
    std::vector<PauliOperator> target_elements(int64_t d) const;

    bool operator==(const CanonicalPattern &other) const = default;
    std::string str() const;
};

/// Operators playing the roles of Z-bar_1..Z-bar_{t+s} and X-bar_1..X-bar_{t+u}.
struct PatternWitness {
    std::vector<PauliOperator> z_bar;
    std::vector<PauliOperator> x_bar;

    /// Z-bar_1, X-bar_1, ..., Z-bar_{t+i}^{a_i}, ..., X-bar_{t+j}^{b_j}: the
    /// counterparts of CanonicalPattern::target_elements.
    std::vector<PauliOperator> elements(const CanonicalPattern &pattern) const;
};

/// Checks that Z-bar_i -> Z_i, X-bar_j -> X_j induces an isomorphism between
/// the restricted group and the pattern's group: the witness elements generate
/// the same group, have the pattern's commutation exponents, satisfy exactly
/// the same relations (phases included), and every bar has eigenvalue 1.
CheckResult verify_witness(const RestrictedGroup &r, const CanonicalPattern &pattern, const PatternWitness &witness);

/// A pattern and witness read off from the group itself by symplectic
/// reduction. Always succeeds for prime d.
struct PatternCertificate {
    CanonicalPattern pattern;
    PatternWitness witness;
};
std::optional<PatternCertificate> find_canonical_pattern(const RestrictedGroup &r);

/// Builds a witness for the requested pattern and verifies it. Returns
/// nothing when no witness was found.
std::optional<PatternWitness> certify_pattern(const RestrictedGroup &r, const CanonicalPattern &pattern);

}  // namespace stabtel

#endif

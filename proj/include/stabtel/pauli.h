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

#ifndef STABTEL_PAULI_H
#define STABTEL_PAULI_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stabtel/zd_linalg.h"

namespace stabtel {

/// A generalized Pauli operator gamma^c (X^a_1 Z^b_1) (x) ... (x) (X^a_n Z^b_n)
/// on n qudits of dimension d, where omega = exp(2 pi i / d) and gamma = exp(pi i / d).
///
/// The phase exponent c lives in Z_{2d}; the exponents a, b live in Z_d.
/// Equality is exact, including the phase.
class PauliOperator {
   public:
    PauliOperator() = default;
    /// Identity on `num_qudits` qudits.
    PauliOperator(int64_t d, std::size_t num_qudits);
    PauliOperator(int64_t d, int64_t phase_gamma, ResidueVector x, ResidueVector z);
    PauliOperator(int64_t d, int64_t phase_gamma, std::vector<int64_t> x, std::vector<int64_t> z);

    /// X^a Z^b on one site, identity elsewhere.
    static PauliOperator single(int64_t d, std::size_t num_qudits, std::size_t site, int64_t a, int64_t b);

    /// Parses forms like "X Z^2 I", "w^2 XZ X^2Z^-1", "g^3 Z", "- Y Y".
    ///
    /// An optional leading phase token is one of w, w^k (omega^k), g, g^c
    /// (gamma^c) or "-" (gamma^d = -1). Site tokens are I, X, Z, X^a, Z^b,
    /// X^aZ^b and XZ; Y means gamma*XZ and is accepted only for d = 2.
    static PauliOperator from_string(std::string_view text, int64_t d);

    int64_t d() const {
        return d_;
    }
    std::size_t num_qudits() const {
        return x_.size();
    }
    /// Exponent of gamma, in [0, 2d).
    int64_t phase() const {
        return phase_;
    }
    const ResidueVector &x() const {
        return x_;
    }
    const ResidueVector &z() const {
        return z_;
    }

    PauliOperator with_phase(int64_t phase_gamma) const;
    bool is_identity() const;
    bool is_scalar() const;

    /// Concatenated exponent vector (a_1..a_n, b_1..b_n) over Z_d.
    ResidueVector symplectic() const;

    PauliOperator operator*(const PauliOperator &other) const;
    bool operator==(const PauliOperator &other) const = default;

    /// Canonical string form; from_string(str(), d) reproduces the operator exactly.
    std::string str() const;

   private:
    int64_t d_ = 2;
    int64_t phase_ = 0;
    ResidueVector x_;
    ResidueVector z_;
};

/// Exact product g*h. Throws std::invalid_argument on mismatched d or length.
PauliOperator multiply(const PauliOperator &g, const PauliOperator &h);

/// The e in Z_d with g h = omega^e h g.
int64_t commutation_exponent(const PauliOperator &g, const PauliOperator &h);

inline bool commutes(const PauliOperator &g, const PauliOperator &h) {
    return commutation_exponent(g, h) == 0;
}

/// g^j for j >= 0; g^0 is the identity.
PauliOperator power(const PauliOperator &g, int64_t j);

/// Inverse g^{-1}, exact.
PauliOperator inverse(const PauliOperator &g);

/// Keeps the tensor factors on `sites` (sorted ascending, duplicates rejected)
/// and resets the phase to 0.
PauliOperator restrict(const PauliOperator &g, std::span<const std::size_t> sites);

/// Places `g` on `sites` of a register of `num_qudits` qudits; identity elsewhere.
PauliOperator embed(const PauliOperator &g, std::size_t num_qudits, std::span<const std::size_t> sites);

/// Tensor product g (x) h.
PauliOperator tensor(const PauliOperator &g, const PauliOperator &h);

/// Smallest r >= 1 with g^r proportional to the identity.
int64_t order_up_to_phase(const PauliOperator &g);

/// The eigenvalues of g are exactly {gamma^(offset + 2 j step) : j}, where
/// step = d / order_up_to_phase(g) and 0 <= offset < 2 step.
///
/// `plain` means offset 0 (eigenvalues are powers of omega^step), `shifted`
/// means offset 1, and `rotated` covers every other offset.
struct SpectrumClass {
    enum class Kind { plain, shifted, rotated };
    Kind kind;
    int64_t step;
    int64_t offset;

    bool operator==(const SpectrumClass &other) const = default;
};

SpectrumClass spectrum_class(const PauliOperator &g);

/// True when g^r = I exactly for r = order_up_to_phase(g), so g has eigenvalue 1.
bool in_g_prime(const PauliOperator &g);

/// The phase multiple of g that satisfies in_g_prime with the smallest phase
/// exponent in [0, 2d). For d = 2 this turns XZ into Y rather than -Y.
PauliOperator normalize_into_g_prime(const PauliOperator &g);

}  // namespace stabtel

#endif

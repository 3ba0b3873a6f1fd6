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

#ifndef STABTEL_ZD_LINALG_H
#define STABTEL_ZD_LINALG_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stabtel {

/// Least nonnegative residue of `value` modulo `modulus`.
int64_t mod_reduce(int64_t value, int64_t modulus);

/// Multiplicative inverse of `value` modulo `modulus`, if it is a unit.
std::optional<int64_t> mod_inverse(int64_t value, int64_t modulus);

struct ExtendedGcd {
    int64_t g;
    int64_t s;
    int64_t t;
};

/// s*a + t*b == g == gcd(a, b) for nonnegative a, b.
ExtendedGcd extended_gcd(int64_t a, int64_t b);

/// A unit u of Z_modulus with u * value == gcd(value, modulus) (mod modulus).
int64_t normalizing_unit(int64_t value, int64_t modulus);

/// Fixed-length vector over Z_modulus. Entries are always stored reduced.
class ResidueVector {
   public:
    ResidueVector() = default;
    static ResidueVector zeros(std::size_t length, int64_t modulus);
    ResidueVector(std::vector<int64_t> entries, int64_t modulus);

    std::size_t size() const {
        return entries_.size();
    }
    int64_t modulus() const {
        return modulus_;
    }
    int64_t operator[](std::size_t k) const {
        return entries_[k];
    }
    std::span<const int64_t> entries() const {
        return entries_;
    }

    void set(std::size_t k, int64_t value);
    bool is_zero() const;

    ResidueVector operator+(const ResidueVector &other) const;
    ResidueVector operator-(const ResidueVector &other) const;
    ResidueVector scaled(int64_t factor) const;
    /// Sum of entry-wise products, reduced.
    int64_t dot(const ResidueVector &other) const;

    bool operator==(const ResidueVector &other) const = default;

    std::string str() const;

   private:
    std::vector<int64_t> entries_;
    int64_t modulus_ = 1;
};

/// Dense row-major matrix over Z_modulus.
class ResidueMatrix {
   public:
    ResidueMatrix() = default;
    ResidueMatrix(std::size_t rows, std::size_t cols, int64_t modulus);
    /// All rows must share the given modulus and a common length `cols`.
    static ResidueMatrix from_rows(const std::vector<ResidueVector> &rows, std::size_t cols, int64_t modulus);

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    int64_t modulus() const {
        return modulus_;
    }
    int64_t at(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    void set(std::size_t r, std::size_t c, int64_t value);

    ResidueVector row(std::size_t r) const;
    ResidueMatrix transposed() const;

    /// Matrix-vector product A*x; x must have length cols().
    ResidueVector multiply(const ResidueVector &x) const;

    bool operator==(const ResidueMatrix &other) const = default;

    std::string str() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    int64_t modulus_ = 1;
    std::vector<int64_t> data_;
};

/// Canonical description of a row span over Z_modulus (Howell form).
///
/// Two matrices with the same column count and modulus have the same row span
/// if and only if their canonical matrices are equal. Each canonical row has a
/// pivot (its first nonzero column) holding a divisor of the modulus; entries
/// above a pivot are reduced modulo it.
struct RowSpanProfile {
    ResidueMatrix canonical;
    std::vector<std::size_t> pivot_columns;
    std::vector<int64_t> pivot_values;

    /// Number of distinct vectors in the span, i.e. the product of modulus/pivot.
    /// Saturates at UINT64_MAX.
    uint64_t span_size() const;

    /// Reduces `v` against the canonical rows. Returns the coefficient row
    /// combination (one entry per canonical row) when v lies in the span.
    std::optional<ResidueVector> decompose(const ResidueVector &v) const;
    bool contains(const ResidueVector &v) const;
};

RowSpanProfile row_span_rank_profile(const ResidueMatrix &a);

/// Solves A*x = b (mod m). A is rows x cols, b has length rows(), x has length
/// cols(). Correct for composite moduli. Throws std::invalid_argument when the
/// moduli or shapes disagree.
std::optional<ResidueVector> solve_linear_mod(const ResidueMatrix &a, const ResidueVector &b);

/// Generators of the left kernel {y : y*A = 0 (mod m)} as row vectors of length rows().
std::vector<ResidueVector> left_kernel(const ResidueMatrix &a);

}  // namespace stabtel

#endif

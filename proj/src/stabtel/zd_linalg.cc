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

#include "stabtel/zd_linalg.h"

#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace stabtel {

ExtendedGcd extended_gcd(int64_t a, int64_t b) {
    int64_t old_r = a, r = b;
    int64_t old_s = 1, s = 0;
    int64_t old_t = 0, t = 1;
    while (r != 0) {
        int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    return {old_r, old_s, old_t};
}

namespace {

void check_modulus(int64_t modulus) {
    if (modulus < 1) {
        throw std::invalid_argument("modulus must be positive, got " + std::to_string(modulus));
    }
}

using Rows = std::vector<std::vector<int64_t>>;

// Replaces (row_a, row_b) by (s*row_a + t*row_b, u*row_a + v*row_b).
void combine_rows(std::vector<int64_t> &row_a, std::vector<int64_t> &row_b, int64_t s, int64_t t, int64_t u, int64_t v,
                  int64_t m) {
    for (std::size_t c = 0; c < row_a.size(); c++) {
        int64_t a = row_a[c];
        int64_t b = row_b[c];
        row_a[c] = mod_reduce(mod_reduce(s, m) * a + mod_reduce(t, m) * b, m);
        row_b[c] = mod_reduce(mod_reduce(u, m) * a + mod_reduce(v, m) * b, m);
    }
}

void add_multiple(std::vector<int64_t> &target, const std::vector<int64_t> &source, int64_t factor, int64_t m) {
    int64_t f = mod_reduce(factor, m);
    if (f == 0) {
        return;
    }
    for (std::size_t c = 0; c < target.size(); c++) {
        target[c] = mod_reduce(target[c] + f * source[c], m);
    }
}

bool row_is_zero(const std::vector<int64_t> &row) {
    for (int64_t v : row) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

// Howell form of the row span. Rows are brought into echelon form with
// unimodular 2x2 gcd transforms, pivots normalized to divisors of m, and for
// each pivot p the annihilated row (m/p)*row is fed back so later columns
// absorb it.
Rows howell_rows(Rows rows, std::size_t cols, int64_t m, std::vector<std::size_t> &pivot_cols) {
    pivot_cols.clear();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; c++) {
        for (std::size_t i = r + 1; i < rows.size(); i++) {
            if (r >= rows.size()) {
                break;
            }
            if (rows[i][c] == 0) {
                continue;
            }
            if (rows[r][c] == 0) {
                std::swap(rows[r], rows[i]);
                continue;
            }
            int64_t a = rows[r][c];
            int64_t b = rows[i][c];
            auto [g, s, t] = extended_gcd(a, b);
            combine_rows(rows[r], rows[i], s, t, -(b / g), a / g, m);
        }
        if (r >= rows.size() || rows[r][c] == 0) {
            continue;
        }
        int64_t unit = normalizing_unit(rows[r][c], m);
        for (auto &v : rows[r]) {
            v = mod_reduce(v * unit, m);
        }
        int64_t p = rows[r][c];
        for (std::size_t i = 0; i < r; i++) {
            int64_t q = rows[i][c] / p;
            add_multiple(rows[i], rows[r], -q, m);
        }
        std::vector<int64_t> annihilated = rows[r];
        for (auto &v : annihilated) {
            v = mod_reduce(v * (m / p), m);
        }
        if (!row_is_zero(annihilated)) {
            rows.push_back(std::move(annihilated));
        }
        pivot_cols.push_back(c);
        r++;
    }
    rows.resize(std::min(r, rows.size()));
    return rows;
}

}  // namespace

int64_t mod_reduce(int64_t value, int64_t modulus) {
    int64_t r = value % modulus;
    return r < 0 ? r + modulus : r;
}

std::optional<int64_t> mod_inverse(int64_t value, int64_t modulus) {
    check_modulus(modulus);
    int64_t a = mod_reduce(value, modulus);
    auto [g, s, t] = extended_gcd(a, modulus);
    (void)t;
    if (g != 1) {
        if (modulus == 1) {
            return 0;
        }
        return std::nullopt;
    }
    return mod_reduce(s, modulus);
}

int64_t normalizing_unit(int64_t value, int64_t modulus) {
    check_modulus(modulus);
    int64_t a = mod_reduce(value, modulus);
    if (a == 0 || modulus == 1) {
        return 1;
    }
    int64_t g = std::gcd(a, modulus);
    int64_t reduced_modulus = modulus / g;
    int64_t base = reduced_modulus == 1 ? 0 : *mod_inverse(a / g, reduced_modulus);
    // Lift base from Z_{m/g} to a unit of Z_m; some lift always exists.
    for (int64_t k = 0; k < g; k++) {
        int64_t u = base + k * reduced_modulus;
        if (std::gcd(u, modulus) == 1) {
            return u;
        }
    }
    throw std::logic_error("normalizing_unit: no unit lift found");
}

ResidueVector ResidueVector::zeros(std::size_t length, int64_t modulus) {
    return ResidueVector(std::vector<int64_t>(length, 0), modulus);
}

ResidueVector::ResidueVector(std::vector<int64_t> entries, int64_t modulus)
    : entries_(std::move(entries)), modulus_(modulus) {
    check_modulus(modulus);
    for (auto &v : entries_) {
        v = mod_reduce(v, modulus_);
    }
}

void ResidueVector::set(std::size_t k, int64_t value) {
    entries_.at(k) = mod_reduce(value, modulus_);
}

bool ResidueVector::is_zero() const {
    for (int64_t v : entries_) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

ResidueVector ResidueVector::operator+(const ResidueVector &other) const {
    if (other.modulus_ != modulus_ || other.size() != size()) {
        throw std::invalid_argument("ResidueVector addition: modulus or length mismatch");
    }
    auto out = ResidueVector::zeros(size(), modulus_);
    for (std::size_t k = 0; k < size(); k++) {
        out.entries_[k] = mod_reduce(entries_[k] + other.entries_[k], modulus_);
    }
    return out;
}

ResidueVector ResidueVector::operator-(const ResidueVector &other) const {
    return *this + other.scaled(-1);
}

ResidueVector ResidueVector::scaled(int64_t factor) const {
    int64_t f = mod_reduce(factor, modulus_);
    auto out = ResidueVector::zeros(size(), modulus_);
    for (std::size_t k = 0; k < size(); k++) {
        out.entries_[k] = mod_reduce(entries_[k] * f, modulus_);
    }
    return out;
}

int64_t ResidueVector::dot(const ResidueVector &other) const {
    if (other.modulus_ != modulus_ || other.size() != size()) {
        throw std::invalid_argument("ResidueVector dot: modulus or length mismatch");
    }
    int64_t acc = 0;
    for (std::size_t k = 0; k < size(); k++) {
        acc = mod_reduce(acc + entries_[k] * other.entries_[k], modulus_);
    }
    return acc;
}

std::string ResidueVector::str() const {
    std::stringstream ss;
    ss << "(";
    for (std::size_t k = 0; k < size(); k++) {
        if (k) {
            ss << ",";
        }
        ss << entries_[k];
    }
    ss << ") mod " << modulus_;
    return ss.str();
}

ResidueMatrix::ResidueMatrix(std::size_t rows, std::size_t cols, int64_t modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0) {
    check_modulus(modulus);
}

ResidueMatrix ResidueMatrix::from_rows(const std::vector<ResidueVector> &rows, std::size_t cols, int64_t modulus) {
    ResidueMatrix out(rows.size(), cols, modulus);
    for (std::size_t r = 0; r < rows.size(); r++) {
        if (rows[r].modulus() != modulus) {
            throw std::invalid_argument("ResidueMatrix::from_rows: row " + std::to_string(r) + " has modulus " +
                                        std::to_string(rows[r].modulus()) + ", expected " + std::to_string(modulus));
        }
        if (rows[r].size() != cols) {
            throw std::invalid_argument("ResidueMatrix::from_rows: row " + std::to_string(r) + " has length " +
                                        std::to_string(rows[r].size()) + ", expected " + std::to_string(cols));
        }
        for (std::size_t c = 0; c < cols; c++) {
            out.data_[r * cols + c] = rows[r][c];
        }
    }
    return out;
}

void ResidueMatrix::set(std::size_t r, std::size_t c, int64_t value) {
    if (r >= rows_ || c >= cols_) {
        throw std::out_of_range("ResidueMatrix::set index out of range");
    }
    data_[r * cols_ + c] = mod_reduce(value, modulus_);
}

ResidueVector ResidueMatrix::row(std::size_t r) const {
    std::vector<int64_t> entries(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    return ResidueVector(std::move(entries), modulus_);
}

ResidueMatrix ResidueMatrix::transposed() const {
    ResidueMatrix out(cols_, rows_, modulus_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            out.data_[c * rows_ + r] = at(r, c);
        }
    }
    return out;
}

ResidueVector ResidueMatrix::multiply(const ResidueVector &x) const {
    if (x.modulus() != modulus_) {
        throw std::invalid_argument("ResidueMatrix::multiply: modulus mismatch");
    }
    if (x.size() != cols_) {
        throw std::invalid_argument("ResidueMatrix::multiply: vector length mismatch");
    }
    auto out = ResidueVector::zeros(rows_, modulus_);
    for (std::size_t r = 0; r < rows_; r++) {
        int64_t acc = 0;
        for (std::size_t c = 0; c < cols_; c++) {
            acc = mod_reduce(acc + at(r, c) * x[c], modulus_);
        }
        out.set(r, acc);
    }
    return out;
}

std::string ResidueMatrix::str() const {
    std::stringstream ss;
    for (std::size_t r = 0; r < rows_; r++) {
        ss << row(r).str() << "\n";
    }
    return ss.str();
}

uint64_t RowSpanProfile::span_size() const {
    uint64_t total = 1;
    int64_t m = canonical.modulus();
    for (int64_t p : pivot_values) {
        uint64_t factor = static_cast<uint64_t>(m / p);
        if (total > std::numeric_limits<uint64_t>::max() / factor) {
            return std::numeric_limits<uint64_t>::max();
        }
        total *= factor;
    }
    return total;
}

std::optional<ResidueVector> RowSpanProfile::decompose(const ResidueVector &v) const {
    int64_t m = canonical.modulus();
    if (v.modulus() != m || v.size() != canonical.cols()) {
        throw std::invalid_argument("RowSpanProfile::decompose: modulus or length mismatch");
    }
    std::vector<int64_t> rest(v.entries().begin(), v.entries().end());
    auto coefficients = ResidueVector::zeros(canonical.rows(), m);
    for (std::size_t i = 0; i < canonical.rows(); i++) {
        std::size_t c = pivot_columns[i];
        int64_t p = pivot_values[i];
        if (rest[c] % p != 0) {
            return std::nullopt;
        }
        int64_t q = rest[c] / p;
        coefficients.set(i, q);
        for (std::size_t k = 0; k < rest.size(); k++) {
            rest[k] = mod_reduce(rest[k] - q * canonical.at(i, k), m);
        }
    }
    if (!row_is_zero(rest)) {
        return std::nullopt;
    }
    return coefficients;
}

bool RowSpanProfile::contains(const ResidueVector &v) const {
    return decompose(v).has_value();
}

RowSpanProfile row_span_rank_profile(const ResidueMatrix &a) {
    int64_t m = a.modulus();
    Rows rows;
    for (std::size_t r = 0; r < a.rows(); r++) {
        auto row = a.row(r);
        rows.emplace_back(row.entries().begin(), row.entries().end());
    }
    RowSpanProfile out;
    rows = howell_rows(std::move(rows), a.cols(), m, out.pivot_columns);
    out.canonical = ResidueMatrix(rows.size(), a.cols(), m);
    for (std::size_t r = 0; r < rows.size(); r++) {
        for (std::size_t c = 0; c < a.cols(); c++) {
            out.canonical.set(r, c, rows[r][c]);
        }
        out.pivot_values.push_back(rows[r][out.pivot_columns[r]]);
    }
    return out;
}

std::optional<ResidueVector> solve_linear_mod(const ResidueMatrix &a, const ResidueVector &b) {
    if (a.modulus() != b.modulus()) {
        throw std::invalid_argument("solve_linear_mod: matrix modulus " + std::to_string(a.modulus()) +
                                    " differs from vector modulus " + std::to_string(b.modulus()));
    }
    if (a.rows() != b.size()) {
        throw std::invalid_argument("solve_linear_mod: matrix has " + std::to_string(a.rows()) +
                                    " rows but right-hand side has length " + std::to_string(b.size()));
    }
    int64_t m = a.modulus();
    std::size_t n = a.cols();
    std::size_t len = a.rows();

    // Rows [column_j(A) | e_j]; any combination y gives [A*y | y].
    ResidueMatrix augmented(n, len + n, m);
    for (std::size_t j = 0; j < n; j++) {
        for (std::size_t r = 0; r < len; r++) {
            augmented.set(j, r, a.at(r, j));
        }
        augmented.set(j, len + j, 1);
    }
    RowSpanProfile profile = row_span_rank_profile(augmented);

    std::vector<int64_t> rest(len + n, 0);
    for (std::size_t r = 0; r < len; r++) {
        rest[r] = b[r];
    }
    for (std::size_t i = 0; i < profile.canonical.rows(); i++) {
        std::size_t c = profile.pivot_columns[i];
        if (c >= len) {
            break;
        }
        int64_t p = profile.pivot_values[i];
        if (rest[c] % p != 0) {
            return std::nullopt;
        }
        int64_t q = rest[c] / p;
        for (std::size_t k = 0; k < rest.size(); k++) {
            rest[k] = mod_reduce(rest[k] - q * profile.canonical.at(i, k), m);
        }
    }
    for (std::size_t r = 0; r < len; r++) {
        if (rest[r] != 0) {
            return std::nullopt;
        }
    }
    auto x = ResidueVector::zeros(n, m);
    for (std::size_t j = 0; j < n; j++) {
        x.set(j, -rest[len + j]);
    }
    return x;
}

std::vector<ResidueVector> left_kernel(const ResidueMatrix &a) {
    int64_t m = a.modulus();
    std::size_t k = a.rows();
    std::size_t w = a.cols();
    ResidueMatrix augmented(k, w + k, m);
    for (std::size_t r = 0; r < k; r++) {
        for (std::size_t c = 0; c < w; c++) {
            augmented.set(r, c, a.at(r, c));
        }
        augmented.set(r, w + r, 1);
    }
    RowSpanProfile profile = row_span_rank_profile(augmented);
    std::vector<ResidueVector> out;
    for (std::size_t i = 0; i < profile.canonical.rows(); i++) {
        if (profile.pivot_columns[i] < w) {
            continue;
        }
        auto y = ResidueVector::zeros(k, m);
        for (std::size_t r = 0; r < k; r++) {
            y.set(r, profile.canonical.at(i, w + r));
        }
        out.push_back(std::move(y));
    }
    return out;
}

}  // namespace stabtel

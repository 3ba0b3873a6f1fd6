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

// Test-only dense matrices built straight from the shift and clock actions,
// kept independent of dense_sim so that both can be checked against it.

#ifndef STABTEL_TESTING_DENSE_ORACLE_H
#define STABTEL_TESTING_DENSE_ORACLE_H

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "stabtel/fixtures.h"
#include "stabtel/pauli.h"
#include "stabtel/stabilizer_group.h"

namespace stabtel::testing {

using Matrix = Eigen::MatrixXcd;

inline std::complex<double> gamma_power(int64_t d, int64_t c) {
    return std::polar(1.0, std::acos(-1.0) * static_cast<double>(c) / static_cast<double>(d));
}

inline Matrix shift(int64_t d) {
    Matrix m = Matrix::Zero(d, d);
    for (int64_t j = 0; j < d; j++) {
        m((j + 1) % d, j) = 1;
    }
    return m;
}

inline Matrix clock(int64_t d) {
    Matrix m = Matrix::Zero(d, d);
    for (int64_t j = 0; j < d; j++) {
        m(j, j) = gamma_power(d, 2 * j);
    }
    return m;
}

inline Matrix matrix_power(const Matrix &m, int64_t k) {
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (int64_t i = 0; i < k; i++) {
        out = out * m;
    }
    return out;
}

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Matrix dense(const PauliOperator &g) {
    int64_t d = g.d();
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < g.num_qudits(); k++) {
        out = kron(out, matrix_power(shift(d), g.x()[k]) * matrix_power(clock(d), g.z()[k]));
    }
    return gamma_power(d, g.phase()) * out;
}

// Product over generators of (1/d) sum_j g^j, the projector onto V_S.
inline Matrix dense_stabilizer_projector(const std::vector<PauliOperator> &gens, int64_t d, std::size_t n) {
    Eigen::Index dim = 1;
    for (std::size_t k = 0; k < n; k++) {
        dim *= d;
    }
    Matrix p = Matrix::Identity(dim, dim);
    for (const auto &g : gens) {
        Matrix m = dense(g);
        Matrix sum = Matrix::Zero(dim, dim);
        Matrix acc = Matrix::Identity(dim, dim);
        for (int64_t j = 0; j < d; j++) {
            sum += acc;
            acc = acc * m;
        }
        p = p * (sum / static_cast<double>(d));
    }
    return p;
}

inline std::vector<PauliOperator> parse_all(const DemoProblem &p) {
    std::vector<PauliOperator> out;
    for (const auto &text : p.generators) {
        out.push_back(PauliOperator::from_string(text, p.d));
    }
    return out;
}

inline StabilizerGroup demo_group(const DemoProblem &p) {
    return build_group(parse_all(p), p.d, p.n);
}

// Z_1..Z_s and X_1..X_t on q qudits pushed through random symplectic
// transvections g -> g v^{e(g, v)}, which keep every commutation exponent.
struct RandomWitness {
    std::vector<PauliOperator> zbar;
    std::vector<PauliOperator> xbar;
};

inline RandomWitness random_witness(int64_t d, std::size_t q, std::size_t s, std::size_t t, std::mt19937_64 &rng,
                                    int steps = 12) {
    RandomWitness w;
    for (std::size_t i = 0; i < s; i++) {
        w.zbar.push_back(PauliOperator::single(d, q, i, 0, 1));
    }
    for (std::size_t j = 0; j < t; j++) {
        w.xbar.push_back(PauliOperator::single(d, q, j, 1, 0));
    }
    std::uniform_int_distribution<int64_t> exponent(0, d - 1);
    for (int step = 0; step < steps; step++) {
        std::vector<int64_t> xs(q), zs(q);
        for (std::size_t k = 0; k < q; k++) {
            xs[k] = exponent(rng);
            zs[k] = exponent(rng);
        }
        PauliOperator v(d, 0, xs, zs);
        auto apply = [&](PauliOperator &g) {
            g = normalize_into_g_prime(multiply(g, power(v, commutation_exponent(g, v))));
        };
        for (auto &g : w.zbar) {
            apply(g);
        }
        for (auto &g : w.xbar) {
            apply(g);
        }
    }
    return w;
}

inline double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace stabtel::testing

#endif

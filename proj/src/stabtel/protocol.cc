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

#include "stabtel/protocol.h"

#include <numeric>
#include <stdexcept>

#include "stabtel/dense_sim.h"

namespace stabtel {

namespace {

std::string bar_name(const char *kind, std::size_t i) {
    return std::string(kind) + "bar_" + std::to_string(i + 1);
}

void check_bar_shapes(const std::vector<PauliOperator> &ops, const char *kind, int64_t d, std::size_t q) {
    for (std::size_t i = 0; i < ops.size(); i++) {
        if (ops[i].d() != d || ops[i].num_qudits() != q) {
            throw std::invalid_argument(bar_name(kind, i) + " = " + ops[i].str() + " does not act on " +
                                        std::to_string(q) + " qudits of dimension " + std::to_string(d));
        }
        if (!in_g_prime(ops[i])) {
            throw std::invalid_argument(bar_name(kind, i) + " = " + ops[i].str() +
                                        " does not have eigenvalue 1");
        }
    }
}

void check_commutation(const PauliOperator &a, const std::string &a_name, const PauliOperator &b,
                       const std::string &b_name, int64_t expected) {
    int64_t e = commutation_exponent(a, b);
    if (e != expected) {
        throw std::invalid_argument(a_name + " and " + b_name + " have commutation exponent " + std::to_string(e) +
                                    ", expected " + std::to_string(expected));
    }
}

// Orthonormal basis of the column space of a projector, scanning columns in
// index order with two passes of modified Gram-Schmidt.
std::vector<Eigen::VectorXcd> column_basis(const ComplexMatrix &p) {
    std::vector<Eigen::VectorXcd> basis;
    for (Eigen::Index c = 0; c < p.cols(); c++) {
        Eigen::VectorXcd v = p.col(c);
        for (int pass = 0; pass < 2; pass++) {
            for (const auto &b : basis) {
                v -= b.dot(v) * b;
            }
        }
        double norm = v.norm();
        if (norm > 1e-6) {
            basis.push_back(v / norm);
        }
    }
    return basis;
}

}  // namespace

CorrectionRule CorrectionRule::standard(std::size_t b, int64_t d) {
    CorrectionRule rule;
    rule.x_coeffs.assign(b, std::vector<int64_t>(2 * b, 0));
    rule.z_coeffs.assign(b, std::vector<int64_t>(2 * b, 0));
    for (std::size_t l = 0; l < b; l++) {
        rule.x_coeffs[l][2 * l] = 1;
        rule.z_coeffs[l][2 * l + 1] = mod_reduce(-1, d);
    }
    return rule;
}

PauliOperator CorrectionRule::apply(std::span<const int64_t> x, int64_t d) const {
    std::size_t b = x_coeffs.size();
    if (z_coeffs.size() != b || x.size() != 2 * b) {
        throw std::invalid_argument("correction rule for " + std::to_string(b) + " qudits got an outcome of length " +
                                    std::to_string(x.size()));
    }
    PauliOperator out(d, b);
    for (std::size_t l = 0; l < b; l++) {
        if (x_coeffs[l].size() != 2 * b || z_coeffs[l].size() != 2 * b) {
            throw std::invalid_argument("correction rule row " + std::to_string(l + 1) + " has the wrong length");
        }
        int64_t xe = 0, ze = 0;
        for (std::size_t k = 0; k < 2 * b; k++) {
            xe = mod_reduce(xe + x_coeffs[l][k] * x[k], d);
            ze = mod_reduce(ze + z_coeffs[l][k] * x[k], d);
        }
        // Z^{ze} X^{xe} in that order.
        out = multiply(out, multiply(PauliOperator::single(d, b, l, 0, ze), PauliOperator::single(d, b, l, xe, 0)));
    }
    return out;
}

Partition ProtocolSpec::partition() const {
    return Partition(parts, receiver, num_qudits);
}

std::size_t ProtocolSpec::total_capacity() const {
    return std::accumulate(capacities.begin(), capacities.end(), std::size_t{0});
}

std::vector<std::size_t> ProtocolSpec::destination_sites() const {
    std::vector<std::size_t> out;
    for (const auto &t : destinations) {
        out.insert(out.end(), t.begin(), t.end());
    }
    return out;
}

ComplexMatrix synthesize_receiver_unitary(const std::vector<PauliOperator> &zbar,
                                          const std::vector<PauliOperator> &xbar, int64_t d, std::size_t q) {
    std::size_t s = zbar.size(), t = xbar.size();
    if (t > s || s > q) {
        throw std::invalid_argument("need #Xbar <= #Zbar <= q, got " + std::to_string(t) + ", " + std::to_string(s) +
                                    ", " + std::to_string(q));
    }
    check_bar_shapes(zbar, "Z", d, q);
    check_bar_shapes(xbar, "X", d, q);
    for (std::size_t i = 0; i < s; i++) {
        for (std::size_t j = i + 1; j < s; j++) {
            check_commutation(zbar[i], bar_name("Z", i), zbar[j], bar_name("Z", j), 0);
        }
    }
    for (std::size_t i = 0; i < t; i++) {
        for (std::size_t j = i + 1; j < t; j++) {
            check_commutation(xbar[i], bar_name("X", i), xbar[j], bar_name("X", j), 0);
        }
    }
    for (std::size_t i = 0; i < s; i++) {
        for (std::size_t j = 0; j < t; j++) {
            check_commutation(zbar[i], bar_name("Z", i), xbar[j], bar_name("X", j), i == j ? 1 : 0);
        }
    }

    std::size_t dim = checked_dimension(d, q);
    std::size_t rest = checked_dimension(d, q - s);
    std::size_t tail_count = checked_dimension(d, s - t);
    std::size_t pair_count = checked_dimension(d, t);
    std::vector<ComplexMatrix> xm;
    for (const auto &x : xbar) {
        xm.push_back(pauli_matrix(x));
    }

    // Column |x, y, alpha> of W is Xbar^x applied to the alpha-th basis vector
    // of the joint eigenspace of the Z-bars with eigenvalues (1, .., 1, omega^y).
    ComplexMatrix w = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<int64_t> label(s, 0);
    for (std::size_t y = 0; y < tail_count; y++) {
        std::size_t code = y;
        for (std::size_t k = s; k-- > t;) {
            label[k] = static_cast<int64_t>(code % d);
            code /= d;
        }
        auto basis = column_basis(projector(zbar, label));
        if (basis.size() != rest) {
            throw std::invalid_argument("Z-bar eigenspace has dimension " + std::to_string(basis.size()) +
                                        ", expected " + std::to_string(rest) + "; the Z-bars are not independent");
        }
        for (std::size_t xcode = 0; xcode < pair_count; xcode++) {
            ComplexMatrix shift = ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
            std::size_t c = xcode;
            for (std::size_t j = t; j-- > 0;) {
                int64_t e = static_cast<int64_t>(c % d);
                c /= d;
                for (int64_t r = 0; r < e; r++) {
                    shift = xm[j] * shift;
                }
            }
            for (std::size_t alpha = 0; alpha < rest; alpha++) {
                std::size_t column = (xcode * tail_count + y) * rest + alpha;
                w.col(static_cast<Eigen::Index>(column)) = shift * basis[alpha];
            }
        }
    }
    return w.adjoint();
}

std::vector<PauliOperator> build_sender_measurement(const Decomposition &decomp, const Partition &partition,
                                                    std::size_t sender) {
    const auto &sites = partition.sender(sender);
    std::size_t a = decomp.capacities.at(sender);
    std::size_t offset = 0;
    for (std::size_t i = 0; i < sender; i++) {
        offset += decomp.capacities[i];
    }
    std::vector<PauliOperator> out;
    const auto &part = decomp.parts.at(sender);
    for (std::size_t j = 0; j < a; j++) {
        for (int kind = 0; kind < 2; kind++) {
            const PauliOperator &g = decomp.generators[part[2 * j + kind]];
            const PauliOperator &bar =
                kind == 0 ? decomp.witness.z_bar[offset + j] : decomp.witness.x_bar[offset + j];
            // g = gamma^c R (x) Gbar with Gbar = gamma^f g^(receiver), so R carries gamma^(c - f).
            PauliOperator r = restrict(g, sites);
            r = r.with_phase(g.phase() - bar.phase());
            PauliOperator message = kind == 0 ? PauliOperator::single(g.d(), a, j, 0, 1)
                                              : PauliOperator::single(g.d(), a, j, 1, 0);
            out.push_back(tensor(r, message));
        }
    }
    return out;
}

PauliOperator correction_unitary(std::span<const int64_t> x, std::size_t b, int64_t d) {
    if (x.size() != 2 * b) {
        throw std::invalid_argument("outcome vector has length " + std::to_string(x.size()) + ", expected " +
                                    std::to_string(2 * b));
    }
    return CorrectionRule::standard(b, d).apply(x, d);
}

ProtocolSpec synthesize_protocol(const StabilizerGroup &s, const Partition &partition, const Decomposition &decomp) {
    ProtocolSpec spec;
    spec.d = s.d();
    spec.num_qudits = s.num_qudits();
    spec.parts = partition.parts();
    spec.receiver = partition.receiver_index();
    spec.stabilizer = s.generators();
    spec.capacities = decomp.capacities;
    std::size_t b = decomp.total_capacity();
    std::vector<PauliOperator> zbar(decomp.witness.z_bar.begin(), decomp.witness.z_bar.begin() + b);
    std::vector<PauliOperator> xbar(decomp.witness.x_bar.begin(), decomp.witness.x_bar.begin() + b);
    const auto &receiver = partition.receiver();
    spec.receiver_unitary = synthesize_receiver_unitary(zbar, xbar, s.d(), receiver.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < partition.num_senders(); i++) {
        spec.measurements.push_back(build_sender_measurement(decomp, partition, i));
        std::vector<std::size_t> dest(receiver.begin() + next, receiver.begin() + next + decomp.capacities[i]);
        next += decomp.capacities[i];
        spec.destinations.push_back(std::move(dest));
    }
    spec.correction = CorrectionRule::standard(b, s.d());
    return spec;
}

std::optional<ProtocolSpec> synthesize_protocol(const StabilizerGroup &s, const Partition &partition,
                                                std::string *diagnostic) {
    auto decomp = find_multipartite_decomposition(s, partition, diagnostic);
    if (!decomp) {
        return std::nullopt;
    }
    return synthesize_protocol(s, partition, *decomp);
}

}  // namespace stabtel

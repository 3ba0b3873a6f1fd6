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

#include "stabtel/dense_sim.h"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace stabtel {

namespace {

using Complex = std::complex<double>;

Eigen::Index idx(std::size_t i) {
    return static_cast<Eigen::Index>(i);
}

std::vector<Complex> gamma_table(int64_t d) {
    std::vector<Complex> out(static_cast<std::size_t>(2 * d));
    for (int64_t c = 0; c < 2 * d; c++) {
        out[static_cast<std::size_t>(c)] = std::polar(1.0, M_PI * static_cast<double>(c) / static_cast<double>(d));
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Row-major strides for qudits with the given dimensions.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> out(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) {
        out[k - 1] = out[k] * dims[k];
    }
    return out;
}

// Offsets of every joint index of the listed qudits.
std::vector<std::size_t> offsets_over(std::span<const std::size_t> which, std::span<const std::size_t> dims,
                                      std::span<const std::size_t> strides) {
    std::vector<std::size_t> out{0};
    for (std::size_t q : which) {
        std::vector<std::size_t> next;
        next.reserve(out.size() * dims[q]);
        for (std::size_t base : out) {
            for (std::size_t v = 0; v < dims[q]; v++) {
                next.push_back(base + v * strides[q]);
            }
        }
        out = std::move(next);
    }
    return out;
}

// New qudit k is old qudit perm[k].
ComplexMatrix permute_qudits(const ComplexMatrix &rho, std::span<const std::size_t> perm,
                             std::span<const std::size_t> dims) {
    std::vector<std::size_t> ordered(perm.size());
    for (std::size_t k = 0; k < perm.size(); k++) {
        ordered[k] = perm[k];
    }
    auto strides = strides_of(dims);
    std::vector<std::size_t> map = offsets_over(ordered, dims, strides);
    ComplexMatrix out(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < map.size(); i++) {
        for (std::size_t j = 0; j < map.size(); j++) {
            out(idx(i), idx(j)) = rho(idx(map[i]), idx(map[j]));
        }
    }
    return out;
}

// tr_Q((P (x) I) rho) for rho on Q (x) Rest with Q leading, dim(Q) = P.rows().
ComplexMatrix contract_leading(const ComplexMatrix &p, const ComplexMatrix &rho) {
    Eigen::Index kq = p.rows();
    Eigen::Index kr = rho.rows() / kq;
    ComplexMatrix out = ComplexMatrix::Zero(kr, kr);
    for (Eigen::Index a = 0; a < kq; a++) {
        for (Eigen::Index b = 0; b < kq; b++) {
            Complex w = p(a, b);
            if (std::abs(w) < 1e-15) {
                continue;
            }
            out += w * rho.block(b * kr, a * kr, kr, kr);
        }
    }
    return out;
}

// tr_Rest(rho) for rho on Q (x) Rest.
ComplexMatrix leading_marginal(const ComplexMatrix &rho, Eigen::Index kq) {
    Eigen::Index kr = rho.rows() / kq;
    ComplexMatrix out(kq, kq);
    for (Eigen::Index a = 0; a < kq; a++) {
        for (Eigen::Index b = 0; b < kq; b++) {
            out(a, b) = rho.block(a * kr, b * kr, kr, kr).trace();
        }
    }
    return out;
}

std::vector<int64_t> digits(std::size_t code, int64_t d, std::size_t len) {
    std::vector<int64_t> out(len);
    for (std::size_t k = len; k-- > 0;) {
        out[k] = static_cast<int64_t>(code % static_cast<std::size_t>(d));
        code /= static_cast<std::size_t>(d);
    }
    return out;
}

struct SenderFamily {
    Eigen::Index dim = 1;
    std::size_t outcome_count = 1;
    std::size_t outcome_length = 0;
    // Projector for each outcome code (most significant digit first).
    std::vector<ComplexMatrix> projectors;
};

struct Runner {
    const ProtocolSpec &spec;
    const std::vector<SenderFamily> &families;
    const ComplexMatrix &target;
    std::vector<std::size_t> dest_positions;
    std::size_t receiver_qudits;
    SimulationResult &result;

    void finish(std::vector<int64_t> outcome, ComplexMatrix state, double probability) {
        OutcomeRecord rec;
        rec.outcome = std::move(outcome);
        rec.probability = probability;
        if (probability < kZeroProbability) {
            result.outcomes.push_back(std::move(rec));
            return;
        }
        if (!spec.unitary_first) {
            state = spec.receiver_unitary * state * spec.receiver_unitary.adjoint();
        }
        PauliOperator v = embed(spec.correction.apply(rec.outcome, spec.d), receiver_qudits, dest_positions);
        ComplexMatrix vm = pauli_matrix(v);
        state = vm * state * vm.adjoint();
        std::vector<std::size_t> dims(receiver_qudits, static_cast<std::size_t>(spec.d));
        std::vector<std::size_t> sorted = dest_positions;
        std::sort(sorted.begin(), sorted.end());
        ComplexMatrix kept = partial_trace(state, sorted, dims);
        // Reorder the kept qudits into destination order.
        std::vector<std::size_t> perm;
        for (std::size_t p : dest_positions) {
            perm.push_back(static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), p) - sorted.begin()));
        }
        rec.recovered = permute_qudits(kept, perm, std::vector<std::size_t>(perm.size(), dims[0]));
        rec.trace_distance = trace_distance(rec.recovered, target);
        result.outcomes.push_back(std::move(rec));
    }

    // Unnormalized branch: rho lives on Q_i (x) ... (x) Q_m (x) R.
    void enumerate(std::size_t sender, const ComplexMatrix &rho, std::vector<int64_t> &prefix) {
        if (sender == families.size()) {
            double p = rho.trace().real();
            finish(prefix, p > 0 ? ComplexMatrix(rho / p) : rho, p);
            return;
        }
        const auto &fam = families[sender];
        for (std::size_t code = 0; code < fam.outcome_count; code++) {
            ComplexMatrix next = contract_leading(fam.projectors[code], rho);
            auto dig = digits(code, spec.d, fam.outcome_length);
            prefix.insert(prefix.end(), dig.begin(), dig.end());
            enumerate(sender + 1, next, prefix);
            prefix.resize(prefix.size() - dig.size());
        }
    }

    // Born-rule draw of one outcome, sender by sender.
    std::pair<std::vector<int64_t>, double> sample_outcome(ComplexMatrix rho, std::mt19937_64 &rng) {
        std::vector<int64_t> outcome;
        double prob = 1;
        for (const auto &fam : families) {
            ComplexMatrix marginal = leading_marginal(rho, fam.dim);
            std::vector<double> weights(fam.outcome_count);
            for (std::size_t code = 0; code < fam.outcome_count; code++) {
                weights[code] = std::max(0.0, (fam.projectors[code] * marginal).trace().real());
            }
            std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
            std::size_t code = pick(rng);
            double total = std::accumulate(weights.begin(), weights.end(), 0.0);
            double p = weights[code] / total;
            prob *= p;
            rho = contract_leading(fam.projectors[code], rho) / weights[code];
            auto dig = digits(code, spec.d, fam.outcome_length);
            outcome.insert(outcome.end(), dig.begin(), dig.end());
        }
        return {outcome, prob};
    }
};

}  // namespace

std::size_t checked_dimension(int64_t d, std::size_t n, std::size_t budget) {
    std::size_t dim = 1;
    for (std::size_t k = 0; k < n; k++) {
        dim *= static_cast<std::size_t>(d);
        if (dim > budget) {
            throw std::length_error("dimension " + std::to_string(d) + "^" + std::to_string(n) +
                                    " exceeds the memory budget of " + std::to_string(budget));
        }
    }
    return dim;
}

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw std::invalid_argument("density matrix must be square and nonempty");
    }
    double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kConstructionTol) {
        throw std::invalid_argument("density matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    Complex tr = entries_.trace();
    if (std::abs(tr - Complex(1, 0)) > kConstructionTol) {
        throw std::invalid_argument("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    ComplexMatrix sym = (entries_ + entries_.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sym, Eigen::EigenvaluesOnly);
    double lowest = eig.eigenvalues().minCoeff();
    if (lowest < kPsdTol) {
        throw std::invalid_argument("density matrix has negative eigenvalue " + std::to_string(lowest));
    }
}

namespace {

// A Pauli operator is monomial: column `col` has the single entry
// value[col] in row row[col].
struct Monomial {
    std::vector<std::size_t> row;
    std::vector<Complex> value;
};

Monomial monomial(const PauliOperator &g, std::size_t dim, const std::vector<Complex> &gam) {
    int64_t d = g.d();
    std::size_t n = g.num_qudits();
    Monomial m{std::vector<std::size_t>(dim), std::vector<Complex>(dim)};
    for (std::size_t col = 0; col < dim; col++) {
        auto k = digits(col, d, n);
        std::size_t row = 0;
        int64_t phase = g.phase();
        for (std::size_t q = 0; q < n; q++) {
            row = row * static_cast<std::size_t>(d) + static_cast<std::size_t>(mod_reduce(k[q] + g.x()[q], d));
            phase += 2 * g.z()[q] * k[q];
        }
        m.row[col] = row;
        m.value[col] = gam[static_cast<std::size_t>(mod_reduce(phase, 2 * d))];
    }
    return m;
}

}  // namespace

ComplexMatrix pauli_matrix(const PauliOperator &g, std::size_t budget) {
    std::size_t dim = checked_dimension(g.d(), g.num_qudits(), budget);
    Monomial m = monomial(g, dim, gamma_table(g.d()));
    ComplexMatrix out = ComplexMatrix::Zero(idx(dim), idx(dim));
    for (std::size_t col = 0; col < dim; col++) {
        out(idx(m.row[col]), idx(col)) = m.value[col];
    }
    return out;
}

ComplexMatrix projector(std::span<const PauliOperator> gens, std::span<const int64_t> x, std::size_t budget) {
    if (gens.empty()) {
        throw std::invalid_argument("projector needs at least one operator");
    }
    if (gens.size() != x.size()) {
        throw std::invalid_argument("projector: " + std::to_string(gens.size()) + " operators but " +
                                    std::to_string(x.size()) + " outcome labels");
    }
    int64_t d = gens[0].d();
    std::size_t dim = checked_dimension(d, gens[0].num_qudits(), budget);
    auto gam = gamma_table(d);
    ComplexMatrix out = ComplexMatrix::Identity(idx(dim), idx(dim));
    for (std::size_t i = 0; i < gens.size(); i++) {
        // out <- out * (1/d) sum_j omega^(-j x_i) g_i^j, one monomial at a time.
        ComplexMatrix next = ComplexMatrix::Zero(idx(dim), idx(dim));
        for (int64_t j = 0; j < d; j++) {
            Complex w = gam[static_cast<std::size_t>(mod_reduce(-2 * j * x[i], 2 * d))] / static_cast<double>(d);
            Monomial m = monomial(power(gens[i], j), dim, gam);
            for (std::size_t col = 0; col < dim; col++) {
                next.col(idx(col)) += (w * m.value[col]) * out.col(idx(m.row[col]));
            }
        }
        out = std::move(next);
    }
    return out;
}

DensityMatrix rho_S(const StabilizerGroup &s, std::size_t budget) {
    std::size_t dim = checked_dimension(s.d(), s.num_qudits(), budget);
    ComplexMatrix p = ComplexMatrix::Identity(idx(dim), idx(dim));
    if (s.size() > 0) {
        std::vector<int64_t> zero(s.size(), 0);
        p = projector(s.generators(), zero, budget);
    }
    double tr = p.trace().real();
    double rank = static_cast<double>(projector_rank(s));
    if (std::abs(tr - rank) > kConstructionTol * static_cast<double>(dim)) {
        throw std::logic_error("tr(P_S) = " + std::to_string(tr) + " but the projector rank is " +
                               std::to_string(rank));
    }
    return DensityMatrix(p / tr);
}

ComplexMatrix partial_trace(const ComplexMatrix &rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
    std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (static_cast<std::size_t>(rho.rows()) != total || rho.rows() != rho.cols()) {
        throw std::invalid_argument("partial_trace: matrix is " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + " but the qudit dimensions multiply to " +
                                    std::to_string(total));
    }
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t i = 0; i < keep.size(); i++) {
        if (keep[i] >= dims.size() || (i > 0 && keep[i] <= keep[i - 1])) {
            throw std::invalid_argument("partial_trace: kept sites must be ascending and in range");
        }
        kept[keep[i]] = true;
    }
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < dims.size(); q++) {
        if (!kept[q]) {
            traced.push_back(q);
        }
    }
    auto strides = strides_of(dims);
    auto keep_off = offsets_over(keep, dims, strides);
    auto trace_off = offsets_over(traced, dims, strides);
    ComplexMatrix out = ComplexMatrix::Zero(idx(keep_off.size()), idx(keep_off.size()));
    for (std::size_t r = 0; r < keep_off.size(); r++) {
        for (std::size_t c = 0; c < keep_off.size(); c++) {
            Complex acc = 0;
            for (std::size_t t : trace_off) {
                acc += rho(idx(keep_off[r] + t), idx(keep_off[c] + t));
            }
            out(idx(r), idx(c)) = acc;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep,
                            std::span<const std::size_t> dims) {
    return DensityMatrix(partial_trace(rho.matrix(), keep, dims));
}

double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(a - b);
    return 0.5 * svd.singularValues().sum();
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    return trace_distance(a.matrix(), b.matrix());
}

DensityMatrix random_density_matrix(std::size_t dim, uint64_t seed) {
    if (dim == 0) {
        throw std::invalid_argument("random_density_matrix: dim must be positive");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    ComplexMatrix g(idx(dim), idx(dim));
    for (Eigen::Index i = 0; i < g.rows(); i++) {
        for (Eigen::Index j = 0; j < g.cols(); j++) {
            double re = normal(rng);
            double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    // Exact Hermiticity after rounding.
    rho = (rho + rho.adjoint()).eval() / 2.0;
    return DensityMatrix(rho);
}

SimulationResult run_protocol(const ProtocolSpec &spec, const std::vector<DensityMatrix> &inputs,
                              const SimulationOptions &options) {
    Partition partition = spec.partition();
    StabilizerGroup s = build_group(spec.stabilizer, spec.d, spec.num_qudits);
    std::size_t m = partition.num_senders();
    int64_t d = spec.d;
    if (spec.capacities.size() != m || spec.measurements.size() != m || spec.destinations.size() != m) {
        throw std::invalid_argument("protocol lists data for a different number of senders than its partition");
    }
    if (inputs.size() != m) {
        throw std::invalid_argument("protocol has " + std::to_string(m) + " senders but " +
                                    std::to_string(inputs.size()) + " inputs were given");
    }
    const auto &receiver = partition.receiver();
    std::size_t q = receiver.size();
    std::size_t kr = checked_dimension(d, q, options.budget);
    if (static_cast<std::size_t>(spec.receiver_unitary.rows()) != kr ||
        static_cast<std::size_t>(spec.receiver_unitary.cols()) != kr) {
        throw std::invalid_argument("receiver unitary must be " + std::to_string(kr) + "x" + std::to_string(kr));
    }
    std::size_t b = spec.total_capacity();
    checked_dimension(d, spec.num_qudits + b, options.budget);

    std::vector<std::size_t> dest_positions;
    for (std::size_t site : spec.destination_sites()) {
        auto it = std::find(receiver.begin(), receiver.end(), site);
        if (it == receiver.end()) {
            throw std::invalid_argument("destination qudit " + std::to_string(site + 1) + " is not a receiver qudit");
        }
        dest_positions.push_back(static_cast<std::size_t>(it - receiver.begin()));
    }
    for (std::size_t i = 0; i < m; i++) {
        if (spec.destinations[i].size() != spec.capacities[i]) {
            throw std::invalid_argument("sender " + std::to_string(i + 1) + " has " +
                                        std::to_string(spec.destinations[i].size()) + " destination qudits for " +
                                        std::to_string(spec.capacities[i]) + " message qudits");
        }
    }

    // Measurement families on Q_i = T_i + M_i.
    std::vector<SenderFamily> families(m);
    ComplexMatrix target = ComplexMatrix::Identity(1, 1);
    for (std::size_t i = 0; i < m; i++) {
        std::size_t a = spec.capacities[i];
        std::size_t width = partition.sender(i).size() + a;
        std::size_t expected_dim = checked_dimension(d, a, options.budget);
        if (inputs[i].dim() != expected_dim) {
            throw std::invalid_argument("input " + std::to_string(i + 1) + " has dimension " +
                                        std::to_string(inputs[i].dim()) + ", expected " +
                                        std::to_string(expected_dim));
        }
        target = kron(target, inputs[i].matrix());
        const auto &ops = spec.measurements[i];
        if (ops.size() != 2 * a) {
            throw std::invalid_argument("sender " + std::to_string(i + 1) + " measures " + std::to_string(ops.size()) +
                                        " operators, expected " + std::to_string(2 * a));
        }
        for (const auto &op : ops) {
            if (op.d() != d || op.num_qudits() != width) {
                throw std::invalid_argument("measurement operator " + op.str() + " of sender " +
                                            std::to_string(i + 1) + " does not act on " + std::to_string(width) +
                                            " qudits");
            }
        }
        auto &fam = families[i];
        fam.dim = idx(checked_dimension(d, width, options.budget));
        fam.outcome_length = 2 * a;
        fam.outcome_count = checked_dimension(d, 2 * a, std::numeric_limits<std::size_t>::max());
        for (std::size_t code = 0; code < fam.outcome_count; code++) {
            if (ops.empty()) {
                fam.projectors.push_back(ComplexMatrix::Identity(fam.dim, fam.dim));
            } else {
                fam.projectors.push_back(projector(ops, digits(code, d, 2 * a), options.budget));
            }
        }
    }

    // rho_S (x) sigma_1 (x) ... in natural order, then qudits reordered to
    // [T_1, M_1, ..., T_m, M_m, R].
    ComplexMatrix rho = rho_S(s, options.budget).matrix();
    std::vector<std::vector<std::size_t>> message_sites(m);
    std::size_t next = spec.num_qudits;
    for (std::size_t i = 0; i < m; i++) {
        rho = kron(rho, inputs[i].matrix());
        for (std::size_t k = 0; k < spec.capacities[i]; k++) {
            message_sites[i].push_back(next++);
        }
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < m; i++) {
        const auto &t = partition.sender(i);
        order.insert(order.end(), t.begin(), t.end());
        order.insert(order.end(), message_sites[i].begin(), message_sites[i].end());
    }
    order.insert(order.end(), receiver.begin(), receiver.end());
    std::vector<std::size_t> dims(order.size(), static_cast<std::size_t>(d));
    rho = permute_qudits(rho, order, dims);

    if (spec.unitary_first) {
        Eigen::Index blocks = rho.rows() / idx(kr);
        const ComplexMatrix &u = spec.receiver_unitary;
        ComplexMatrix ud = u.adjoint();
        for (Eigen::Index a = 0; a < blocks; a++) {
            for (Eigen::Index c = 0; c < blocks; c++) {
                auto blk = rho.block(a * idx(kr), c * idx(kr), idx(kr), idx(kr));
                blk = u * blk * ud;
            }
        }
    }

    SimulationResult result;
    result.total_outcomes = 1;
    for (const auto &fam : families) {
        result.total_outcomes *= fam.outcome_count;
    }
    bool enumerate = options.mode == OutcomeMode::kEnumerate ||
                     (options.mode == OutcomeMode::kAuto && result.total_outcomes <= kEnumerationLimit);
    Runner runner{spec, families, target, dest_positions, q, result};
    if (enumerate) {
        result.enumerated = true;
        std::vector<int64_t> prefix;
        runner.enumerate(0, rho, prefix);
    } else {
        std::mt19937_64 rng(options.seed);
        std::map<std::vector<int64_t>, double> drawn;
        for (std::size_t k = 0; k < options.samples; k++) {
            auto [outcome, p] = runner.sample_outcome(rho, rng);
            drawn.emplace(std::move(outcome), p);
        }
        for (const auto &[outcome, p] : drawn) {
            // Recompute the branch exactly rather than reuse the sampled state.
            ComplexMatrix branch = rho;
            std::size_t pos = 0;
            for (const auto &fam : families) {
                std::size_t code = 0;
                for (std::size_t k = 0; k < fam.outcome_length; k++) {
                    code = code * static_cast<std::size_t>(d) + static_cast<std::size_t>(outcome[pos++]);
                }
                branch = contract_leading(fam.projectors[code], branch);
            }
            double prob = branch.trace().real();
            runner.finish(outcome, prob > 0 ? ComplexMatrix(branch / prob) : branch, prob);
        }
    }

    std::size_t counted = 0;
    double sum_distance = 0;
    for (const auto &rec : result.outcomes) {
        result.probability_sum += rec.probability;
        if (rec.trace_distance >= 0) {
            counted++;
            sum_distance += rec.trace_distance;
            result.max_trace_distance = std::max(result.max_trace_distance, rec.trace_distance);
        }
    }
    if (counted == 0) {
        throw std::logic_error("no measurement outcome has probability above 1e-12; the protocol is inconsistent");
    }
    result.mean_trace_distance = sum_distance / static_cast<double>(counted);
    return result;
}

}  // namespace stabtel

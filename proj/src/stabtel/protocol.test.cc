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

#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "stabtel/dense_sim.h"
#include "stabtel/fixtures.h"
#include "stabtel/testing/dense_oracle.h"

using namespace stabtel;
namespace oracle = stabtel::testing;
using stabtel::testing::demo_group;
using stabtel::testing::max_abs;
using Matrix = Eigen::MatrixXcd;

namespace {

PauliOperator P(const std::string &text, int64_t d) {
    return PauliOperator::from_string(text, d);
}

// Largest conjugation residual over all bars, plus the unitarity residual.
double conjugation_residual(const Matrix &u, const std::vector<PauliOperator> &zbar, const std::vector<PauliOperator> &xbar) {
    double worst = max_abs(u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()));
    for (std::size_t i = 0; i < zbar.size(); i++) {
        PauliOperator z = PauliOperator::single(zbar[i].d(), zbar[i].num_qudits(), i, 0, 1);
        worst = std::max(worst, max_abs(u * oracle::dense(zbar[i]) * u.adjoint() - oracle::dense(z)));
    }
    for (std::size_t j = 0; j < xbar.size(); j++) {
        PauliOperator x = PauliOperator::single(xbar[j].d(), xbar[j].num_qudits(), j, 1, 0);
        worst = std::max(worst, max_abs(u * oracle::dense(xbar[j]) * u.adjoint() - oracle::dense(x)));
    }
    return worst;
}

std::string unitary_error(const std::vector<PauliOperator> &zbar, const std::vector<PauliOperator> &xbar, int64_t d,
                          std::size_t q) {
    try {
        synthesize_receiver_unitary(zbar, xbar, d, q);
    } catch (const std::invalid_argument &e) {
        return e.what();
    }
    return "";
}

TEST(ReceiverUnitary, StandardPairNeedsNoRotation) {
    Matrix u = synthesize_receiver_unitary({P("Z", 3)}, {P("X", 3)}, 3, 1);
    EXPECT_LT(conjugation_residual(u, {P("Z", 3)}, {P("X", 3)}), 1e-12);
}

TEST(ReceiverUnitary, SwappedPairIsHadamardLike) {
    Matrix u = synthesize_receiver_unitary({P("X", 2)}, {P("Z", 2)}, 2, 1);
    EXPECT_LT(conjugation_residual(u, {P("X", 2)}, {P("Z", 2)}), 1e-12);
    // Hadamard up to phases: every entry has modulus 1/sqrt(2).
    EXPECT_LT(max_abs(u.cwiseAbs() - Matrix::Constant(2, 2, 1 / std::sqrt(2.0))), 1e-12);
}

TEST(ReceiverUnitary, FiveQutritReceiverWitness) {
    DemoProblem p = five_qutrit_problem();
    StabilizerGroup s = demo_group(p);
    auto dec = find_multipartite_decomposition(s, Partition(p.partition, p.receiver, p.n));
    ASSERT_TRUE(dec.has_value());
    const auto &zbar = dec->witness.z_bar;
    const auto &xbar = dec->witness.x_bar;
    ASSERT_EQ(zbar.size(), 3u);
    ASSERT_EQ(xbar.size(), 2u);
    Matrix u = synthesize_receiver_unitary(zbar, xbar, 3, 3);
    EXPECT_EQ(u.rows(), 27);
    EXPECT_LT(conjugation_residual(u, zbar, xbar), 1e-10);
}

TEST(ReceiverUnitary, RandomWitnessSets) {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 40; trial++) {
        int64_t d = trial % 2 == 0 ? 2 : 3;
        std::size_t q = 1 + trial % 3;
        std::size_t s = 1 + (trial / 3) % q;
        std::size_t t = (trial / 2) % (s + 1);
        auto w = oracle::random_witness(d, q, s, t, rng);
        Matrix u = synthesize_receiver_unitary(w.zbar, w.xbar, d, q);
        EXPECT_LT(conjugation_residual(u, w.zbar, w.xbar), 1e-10) << "trial " << trial;
    }
}

TEST(ReceiverUnitary, IsDeterministic) {
    std::mt19937_64 rng(1);
    auto w = oracle::random_witness(3, 2, 2, 1, rng);
    EXPECT_EQ(synthesize_receiver_unitary(w.zbar, w.xbar, 3, 2), synthesize_receiver_unitary(w.zbar, w.xbar, 3, 2));
}

TEST(ReceiverUnitary, NamesTheOffendingPair) {
    std::string err = unitary_error({P("Z I", 3), P("X I", 3)}, {}, 3, 2);
    EXPECT_NE(err.find("Zbar_1 and Zbar_2"), std::string::npos) << err;
    err = unitary_error({P("Z I", 3)}, {P("X^2 I", 3)}, 3, 2);
    EXPECT_NE(err.find("Zbar_1 and Xbar_1"), std::string::npos) << err;
    err = unitary_error({P("Z I", 3), P("I Z", 3)}, {P("X I", 3), P("Z X", 3)}, 3, 2);
    EXPECT_NE(err.find("Xbar_1 and Xbar_2"), std::string::npos) << err;
    EXPECT_NE(unitary_error({P("Z I", 2), P("Z I", 2)}, {}, 2, 2), "");
    EXPECT_NE(unitary_error({P("Z", 2)}, {P("X", 2), P("X", 2)}, 2, 1), "");
}

TEST(SenderMeasurement, EightQubitFirstSender) {
    DemoProblem p = eight_qubit_problem('a');
    StabilizerGroup s = demo_group(p);
    Partition part(p.partition, p.receiver, p.n);
    auto dec = find_multipartite_decomposition(s, part);
    ASSERT_TRUE(dec.has_value());
    auto ops = build_sender_measurement(*dec, part, 0);
    ASSERT_EQ(ops.size(), 2u);
    EXPECT_EQ(ops[0], P("X Y Z", 2)) << ops[0].str();
    EXPECT_EQ(ops[1], P("X Z X", 2)) << ops[1].str();
    EXPECT_EQ(build_sender_measurement(*dec, part, 1).size(), 4u);
}

TEST(SenderMeasurement, BellPairGivesBellMeasurement) {
    for (int64_t d : {2, 3}) {
        DemoProblem p = bell_problem(d);
        StabilizerGroup s = demo_group(p);
        Partition part(p.partition, p.receiver, p.n);
        auto dec = find_multipartite_decomposition(s, part);
        ASSERT_TRUE(dec.has_value());
        auto ops = build_sender_measurement(*dec, part, 0);
        ASSERT_EQ(ops.size(), 2u);
        EXPECT_EQ(ops[0], P("Z^-1 Z", d));
        EXPECT_EQ(ops[1], P("X X", d));
    }
}

TEST(SenderMeasurement, IdleSenderHasEmptyFamily) {
    // Bell pair between qudits 1 and 3; qudit 2 is a product |0>.
    StabilizerGroup s = build_group({P("Z I Z", 2), P("X I X", 2), P("I Z I", 2)}, 2, 3);
    Partition part({{0}, {1}, {2}}, 2, 3);
    auto dec = find_multipartite_decomposition(s, part);
    ASSERT_TRUE(dec.has_value());
    EXPECT_EQ(dec->capacities, (std::vector<std::size_t>{1, 0}));
    EXPECT_TRUE(build_sender_measurement(*dec, part, 1).empty());
    ProtocolSpec spec = synthesize_protocol(s, part, *dec);
    auto result = run_protocol(spec, {random_density_matrix(2, 5), DensityMatrix(Matrix::Identity(1, 1))});
    EXPECT_EQ(result.outcomes.size(), 4u);
    EXPECT_LT(result.max_trace_distance, 1e-9);
}

TEST(Correction, MatchesClosedForm) {
    std::vector<int64_t> zero(4, 0);
    EXPECT_TRUE(correction_unitary(zero, 2, 3).is_identity());

    std::vector<int64_t> x{1, 2};
    PauliOperator v = correction_unitary(x, 1, 3);
    EXPECT_EQ(v, multiply(P("Z^-2", 3), P("X", 3)));
    EXPECT_EQ(v, multiply(P("Z", 3), P("X", 3)));

    std::vector<int64_t> y{1, 0, 0, 1};
    EXPECT_EQ(correction_unitary(y, 2, 2), P("X Z", 2));
    EXPECT_THROW(correction_unitary(y, 1, 2), std::invalid_argument);
}

TEST(Correction, RuleTablesHaveStandardShape) {
    CorrectionRule rule = CorrectionRule::standard(2, 5);
    EXPECT_EQ(rule.x_coeffs, (std::vector<std::vector<int64_t>>{{1, 0, 0, 0}, {0, 0, 1, 0}}));
    EXPECT_EQ(rule.z_coeffs, (std::vector<std::vector<int64_t>>{{0, 4, 0, 0}, {0, 0, 0, 4}}));
}

TEST(Synthesize, FixtureShapes) {
    struct Case {
        DemoProblem problem;
        std::vector<std::size_t> capacities;
        std::size_t outcomes;
    };
    std::vector<Case> cases{{bell_problem(2), {1}, 4},
                            {five_qutrit_problem(), {2}, 81},
                            {eight_qubit_problem('a'), {1, 2}, 64}};
    for (const auto &c : cases) {
        StabilizerGroup s = demo_group(c.problem);
        Partition part(c.problem.partition, c.problem.receiver, c.problem.n);
        std::string why;
        auto spec = synthesize_protocol(s, part, &why);
        ASSERT_TRUE(spec.has_value()) << why;
        EXPECT_EQ(spec->capacities, c.capacities);
        std::size_t outcomes = 1;
        for (std::size_t a : spec->capacities) {
            outcomes *= checked_dimension(spec->d, 2 * a);
        }
        EXPECT_EQ(outcomes, c.outcomes);
        EXPECT_TRUE(spec->unitary_first);
        EXPECT_EQ(spec->destination_sites().size(), spec->total_capacity());
    }
}

TEST(Synthesize, UserGroupingForSecondEightQubitPartition) {
    DemoProblem p = eight_qubit_problem('b');
    StabilizerGroup s = demo_group(p);
    Partition part(p.partition, p.receiver, p.n);
    auto dec = certify_user_decomposition(s, part, p.decomposition);
    ASSERT_TRUE(dec.has_value());
    ProtocolSpec spec = synthesize_protocol(s, part, *dec);
    EXPECT_EQ(spec.capacities, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(spec.destinations, (std::vector<std::vector<std::size_t>>{{1}, {3}}));
}

TEST(Synthesize, ReceiverUnitaryConjugatesSenderBars) {
    for (const auto &p : {five_qutrit_problem(), eight_qubit_problem('a')}) {
        StabilizerGroup s = demo_group(p);
        Partition part(p.partition, p.receiver, p.n);
        auto dec = find_multipartite_decomposition(s, part);
        ASSERT_TRUE(dec.has_value());
        ProtocolSpec spec = synthesize_protocol(s, part, *dec);
        std::size_t b = dec->total_capacity();
        std::vector<PauliOperator> zbar(dec->witness.z_bar.begin(), dec->witness.z_bar.begin() + b);
        std::vector<PauliOperator> xbar(dec->witness.x_bar.begin(), dec->witness.x_bar.begin() + b);
        EXPECT_LT(conjugation_residual(spec.receiver_unitary, zbar, xbar), 1e-10) << p.name;
    }
}

TEST(Synthesize, PerSenderFamiliesAreCompleteAndFactorize) {
    DemoProblem p = eight_qubit_problem('a');
    StabilizerGroup s = demo_group(p);
    Partition part(p.partition, p.receiver, p.n);
    auto spec = synthesize_protocol(s, part);
    ASSERT_TRUE(spec.has_value());
    const auto &alice = spec->measurements[0];
    const auto &bob = spec->measurements[1];
    // Joint family on Q_1 (x) Q_2 built by embedding each operator.
    std::size_t qa = alice[0].num_qudits(), qb = bob[0].num_qudits();
    std::vector<PauliOperator> joint;
    for (const auto &h : alice) {
        joint.push_back(tensor(h, PauliOperator(2, qb)));
    }
    for (const auto &h : bob) {
        joint.push_back(tensor(PauliOperator(2, qa), h));
    }
    for (std::size_t code = 0; code < 64; code++) {
        std::vector<int64_t> x(6);
        for (std::size_t k = 0; k < 6; k++) {
            x[k] = (code >> (5 - k)) & 1;
        }
        std::vector<int64_t> xa(x.begin(), x.begin() + 2), xb(x.begin() + 2, x.end());
        Matrix lhs = projector(joint, x);
        Matrix rhs = oracle::kron(projector(alice, xa), projector(bob, xb));
        EXPECT_LT(max_abs(lhs - rhs), 1e-12) << code;
    }
}

}  // namespace

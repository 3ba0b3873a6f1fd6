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

#include "stabtel/decomposition.h"

#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "stabtel/fixtures.h"
#include "stabtel/testing/dense_oracle.h"

using namespace stabtel;
using stabtel::testing::demo_group;

namespace {

Partition partition_of(const DemoProblem &p) {
    return Partition(p.partition, p.receiver, p.n);
}

// Span of a list of operators as a subgroup of S, compared via is_member of
// every element of a Z_d-basis both ways.
bool same_subgroup(const std::vector<PauliOperator> &a, const std::vector<PauliOperator> &b, int64_t d,
                   std::size_t n) {
    StabilizerGroup ga = build_group(a, d, n);
    StabilizerGroup gb = build_group(b, d, n);
    for (const auto &g : a) {
        if (!is_member(g, gb)) {
            return false;
        }
    }
    for (const auto &g : b) {
        if (!is_member(g, ga)) {
            return false;
        }
    }
    return true;
}

TEST(Partition, ValidatesCoverage) {
    EXPECT_NO_THROW(Partition({{0}, {1}}, 1, 2));
    EXPECT_THROW(Partition({{0}, {0, 1}}, 1, 2), std::invalid_argument);
    EXPECT_THROW(Partition({{0}, {2}}, 1, 3), std::invalid_argument);
    EXPECT_THROW(Partition({{0, 1}}, 0, 2), std::invalid_argument);
    EXPECT_THROW(Partition({{0}, {}}, 1, 1), std::invalid_argument);
    EXPECT_THROW(Partition({{0}, {1}}, 2, 2), std::invalid_argument);
}

TEST(Partition, ReceiverMayBeAnyPart) {
    Partition p({{0, 1}, {2}, {3}}, 0, 4);
    EXPECT_EQ(p.num_senders(), 2u);
    EXPECT_EQ(p.sender(0), (std::vector<std::size_t>{2}));
    EXPECT_EQ(p.sender(1), (std::vector<std::size_t>{3}));
    EXPECT_EQ(p.receiver(), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(p.str(), "{1,2}* | {3} | {4}");
}

TEST(Bipartite, BellPairTeleportsOneQudit) {
    for (int64_t d : {2, 3, 4, 5, 6}) {
        StabilizerGroup s = demo_group(bell_problem(d));
        std::string why;
        auto dec = find_bipartite_decomposition(s, {1}, &why);
        ASSERT_TRUE(dec.has_value()) << d << ": " << why;
        EXPECT_EQ(dec->total_capacity(), 1u);
        EXPECT_EQ(dec->receiver_pattern, (CanonicalPattern{1, {}, {}}));
        EXPECT_EQ(dec->composite_caveat, d == 4 || d == 6);
    }
}

TEST(Bipartite, FiveQutritStateHasTwoPairsAndOneTail) {
    DemoProblem p = five_qutrit_problem();
    StabilizerGroup s = demo_group(p);
    std::string why;
    auto dec = find_bipartite_decomposition(s, {2, 3, 4}, &why);
    ASSERT_TRUE(dec.has_value()) << why;
    EXPECT_EQ(dec->total_capacity(), 2u);
    EXPECT_EQ(dec->receiver_pattern, (CanonicalPattern{2, {1}, {}}));
    // P_1 = <g1..g4> and P_2 = <g5> as subgroups.
    auto gens = s.generators();
    EXPECT_TRUE(same_subgroup(dec->sender_pairs(0), {gens[0], gens[1], gens[2], gens[3]}, 3, 5));
    EXPECT_TRUE(same_subgroup(dec->sender_pairs(1), {gens[4]}, 3, 5));
    EXPECT_TRUE(verify_decomposition(s, partition_of(p), *dec).ok);
}

TEST(Bipartite, ProductStateHasNoPair) {
    StabilizerGroup s = build_group({PauliOperator::from_string("Z I", 2), PauliOperator::from_string("I Z", 2)}, 2, 2);
    auto dec = find_bipartite_decomposition(s, {1});
    ASSERT_TRUE(dec.has_value());
    EXPECT_EQ(dec->total_capacity(), 0u);
    EXPECT_EQ(dec->receiver_pattern, (CanonicalPattern{0, {1}, {}}));
}

TEST(Multipartite, EightQubitFirstPartition) {
    DemoProblem p = eight_qubit_problem('a');
    StabilizerGroup s = demo_group(p);
    std::string why;
    auto dec = find_multipartite_decomposition(s, partition_of(p), &why);
    ASSERT_TRUE(dec.has_value()) << why;
    EXPECT_EQ(dec->capacities, (std::vector<std::size_t>{1, 2}));
    auto gens = s.generators();
    EXPECT_TRUE(same_subgroup(dec->sender_pairs(0), {gens[0], gens[1]}, 2, 8));
    EXPECT_TRUE(same_subgroup(dec->sender_pairs(1), {gens[2], gens[3], gens[4], gens[5]}, 2, 8));
    EXPECT_TRUE(same_subgroup(dec->sender_pairs(2), {gens[6]}, 2, 8));
    EXPECT_FALSE(dec->composite_caveat);
}

TEST(Multipartite, EightQubitSecondPartitionRecombinedGrouping) {
    DemoProblem p = eight_qubit_problem('b');
    StabilizerGroup s = demo_group(p);
    StabilizerGroup original = demo_group(eight_qubit_problem('a'));
    ASSERT_TRUE(same_subgroup(s.generators(), original.generators(), 2, 8));
    std::string why;
    auto dec = certify_user_decomposition(s, partition_of(p), p.decomposition, &why);
    ASSERT_TRUE(dec.has_value()) << why;
    EXPECT_EQ(dec->capacities, (std::vector<std::size_t>{1, 1}));
    EXPECT_EQ(dec->receiver_pattern, (CanonicalPattern{2, {1, 1}, {1}}));
    auto gens = s.generators();
    EXPECT_TRUE(same_subgroup(dec->sender_pairs(2), {gens[4], gens[5], gens[6]}, 2, 8));
}

TEST(Multipartite, EightQubitSecondPartitionSearchFindsMore) {
    // The greedy search gives the second sender two pairs; the result is
    // re-verified and dominates the (1,1) grouping above.
    DemoProblem p = eight_qubit_problem('b');
    for (const auto &s : {demo_group(p), demo_group(eight_qubit_problem('a'))}) {
        std::string why;
        auto dec = find_multipartite_decomposition(s, partition_of(p), &why);
        ASSERT_TRUE(dec.has_value()) << why;
        EXPECT_EQ(dec->capacities, (std::vector<std::size_t>{1, 2}));
        EXPECT_EQ(dec->receiver_pattern, (CanonicalPattern{3, {1}, {}}));
        EXPECT_TRUE(verify_decomposition(s, partition_of(p), *dec).ok);
    }
}

TEST(Multipartite, SingleSenderMatchesBipartite) {
    for (const auto &p : {five_qutrit_problem(), bell_problem(3)}) {
        StabilizerGroup s = demo_group(p);
        auto multi = find_multipartite_decomposition(s, partition_of(p));
        auto bi = find_bipartite_decomposition(s, p.partition[p.receiver]);
        ASSERT_TRUE(multi.has_value());
        ASSERT_TRUE(bi.has_value());
        EXPECT_EQ(multi->capacities, bi->capacities);
        EXPECT_EQ(multi->receiver_pattern, bi->receiver_pattern);
        EXPECT_EQ(multi->generators, bi->generators);
    }
}

TEST(Multipartite, ReceiverListedFirst) {
    // Same state, receiver listed first: capacities follow the sender order.
    DemoProblem p = eight_qubit_problem('a');
    StabilizerGroup s = demo_group(p);
    Partition moved({{5, 6, 7}, {0, 1}, {2, 3, 4}}, 0, 8);
    auto dec = find_multipartite_decomposition(s, moved);
    ASSERT_TRUE(dec.has_value());
    EXPECT_EQ(dec->capacities, (std::vector<std::size_t>{1, 2}));
}

TEST(Multipartite, SizeMismatchReportsDiagnostic) {
    StabilizerGroup s = demo_group(bell_problem(2));
    std::string why;
    EXPECT_FALSE(find_multipartite_decomposition(s, Partition({{0}, {1}, {2}}, 2, 3), &why).has_value());
    EXPECT_FALSE(why.empty());
}

TEST(Multipartite, RandomRecombinationKeepsCapacities) {
    std::mt19937 rng(3);
    for (const auto &p : {five_qutrit_problem(), eight_qubit_problem('a'), eight_qubit_problem('b')}) {
        StabilizerGroup s = demo_group(p);
        auto base = find_multipartite_decomposition(s, partition_of(p));
        ASSERT_TRUE(base.has_value());
        std::vector<PauliOperator> gens = s.generators();
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        for (int trial = 0; trial < 5; trial++) {
            for (int step = 0; step < 20; step++) {
                std::size_t i = pick(rng), j = pick(rng);
                if (i != j) {
                    gens[i] = multiply(gens[i], gens[j]);
                }
            }
            std::shuffle(gens.begin(), gens.end(), rng);
            StabilizerGroup t = build_group(gens, p.d, p.n);
            auto dec = find_multipartite_decomposition(t, partition_of(p));
            ASSERT_TRUE(dec.has_value()) << p.name;
            EXPECT_EQ(dec->capacities, base->capacities) << p.name;
        }
    }
}

TEST(Verify, CatchesTamperedDecompositions) {
    DemoProblem p = eight_qubit_problem('a');
    StabilizerGroup s = demo_group(p);
    Partition part = partition_of(p);
    auto dec = find_multipartite_decomposition(s, part);
    ASSERT_TRUE(dec.has_value());
    ASSERT_TRUE(verify_decomposition(s, part, *dec).ok);

    Decomposition flipped = *dec;
    flipped.generators[0] = flipped.generators[0].with_phase(flipped.generators[0].phase() + 2);
    EXPECT_FALSE(verify_decomposition(s, part, flipped).ok);

    Decomposition inflated = *dec;
    inflated.capacities[0] = 2;
    EXPECT_FALSE(verify_decomposition(s, part, inflated).ok);

    Decomposition swapped = *dec;
    std::swap(swapped.parts[0], swapped.parts[1]);
    EXPECT_FALSE(verify_decomposition(s, part, swapped).ok);

    Decomposition dropped = *dec;
    dropped.parts.back().pop_back();
    EXPECT_FALSE(verify_decomposition(s, part, dropped).ok);
}

TEST(UserDecomposition, CertifiesFirstPartitionGrouping) {
    DemoProblem p = eight_qubit_problem('a');
    StabilizerGroup s = demo_group(p);
    std::string why;
    auto dec = certify_user_decomposition(s, partition_of(p), {{0, 1}, {2, 3, 4, 5}, {6}}, &why);
    ASSERT_TRUE(dec.has_value()) << why;
    EXPECT_EQ(dec->capacities, (std::vector<std::size_t>{1, 2}));
}

TEST(UserDecomposition, CertifiesFiveQutritGrouping) {
    DemoProblem p = five_qutrit_problem();
    StabilizerGroup s = demo_group(p);
    auto dec = certify_user_decomposition(s, partition_of(p), {{0, 1, 2, 3}, {4}});
    ASSERT_TRUE(dec.has_value());
    EXPECT_EQ(dec->total_capacity(), 2u);
}

TEST(UserDecomposition, RejectsBadGroupings) {
    DemoProblem p = eight_qubit_problem('a');
    StabilizerGroup s = demo_group(p);
    std::string why;
    // g7 acts on the first sender's qudits.
    EXPECT_FALSE(certify_user_decomposition(s, partition_of(p), {{0, 1}, {2, 3, 4, 5, 6}, {}}, &why).has_value());
    EXPECT_NE(why.find("#7"), std::string::npos) << why;
    EXPECT_FALSE(certify_user_decomposition(s, partition_of(p), {{0, 1}, {2, 3, 4, 5}}, &why).has_value());
    EXPECT_FALSE(certify_user_decomposition(s, partition_of(p), {{0, 1}, {2, 3, 4, 5}, {5, 6}}, &why).has_value());
    EXPECT_FALSE(certify_user_decomposition(s, partition_of(p), {{0, 1}, {2, 3, 4, 5}, {9}}, &why).has_value());
}

TEST(UserDecomposition, RejectsSenderSubgroupWithIsotropicReceiverPart) {
    // Sender 1 claims Z Z, whose receiver restriction is a lone Z.
    StabilizerGroup s = build_group({PauliOperator::from_string("Z Z", 2), PauliOperator::from_string("X X", 2)}, 2, 2);
    std::string why;
    EXPECT_FALSE(certify_user_decomposition(s, Partition({{0}, {1}}, 1, 2), {{0}, {1}}, &why).has_value());
    EXPECT_FALSE(why.empty());
}

}  // namespace

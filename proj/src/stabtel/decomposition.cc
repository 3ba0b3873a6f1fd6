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

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "reduction.h"

namespace stabtel {

namespace {

bool is_prime(int64_t d) {
    if (d < 2) {
        return false;
    }
    for (int64_t p = 2; p * p <= d; p++) {
        if (d % p == 0) {
            return false;
        }
    }
    return true;
}

std::vector<std::size_t> other_sender_sites(const Partition &partition, std::size_t sender) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < partition.num_senders(); j++) {
        if (j != sender) {
            const auto &sites = partition.sender(j);
            out.insert(out.end(), sites.begin(), sites.end());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void set_diagnostic(std::string *diagnostic, const std::string &text) {
    if (diagnostic) {
        *diagnostic = text;
    }
}

// Index lists into a workspace holding the generators of S, already reduced.
struct Arrangement {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> sender_pairs;
    std::vector<std::pair<std::size_t, std::size_t>> tail_pairs;
    std::vector<std::size_t> isotropic;
    std::vector<std::size_t> trivial;
};

std::optional<Decomposition> assemble(const StabilizerGroup &s, const Partition &partition,
                                      const internal::Workspace &ws, const Arrangement &arr, std::string *diagnostic) {
    const auto &receiver = partition.receiver();
    Decomposition out;
    out.composite_caveat = !is_prime(s.d());
    auto push = [&](std::size_t idx) {
        out.generators.push_back(ws.op(idx));
        out.combinations.push_back(ws.combination(idx));
        return out.generators.size() - 1;
    };
    auto bar = [&](std::size_t idx) { return normalize_into_g_prime(restrict(ws.op(idx), receiver)); };
    for (const auto &pairs : arr.sender_pairs) {
        std::vector<std::size_t> part;
        for (auto [g, h] : pairs) {
            part.push_back(push(g));
            part.push_back(push(h));
            out.witness.z_bar.push_back(bar(g));
            out.witness.x_bar.push_back(bar(h));
        }
        out.capacities.push_back(pairs.size());
        out.parts.push_back(std::move(part));
    }
    out.receiver_pattern.t = out.total_capacity();
    std::vector<std::size_t> last;
    for (auto [g, h] : arr.tail_pairs) {
        last.push_back(push(g));
        out.receiver_pattern.z_exponents.push_back(1);
        out.witness.z_bar.push_back(bar(g));
    }
    for (std::size_t w : arr.isotropic) {
        PauliOperator restricted = restrict(ws.op(w), receiver);
        int64_t a = s.d() / order_up_to_phase(restricted);
        last.push_back(push(w));
        out.receiver_pattern.z_exponents.push_back(a);
        out.witness.z_bar.push_back(internal::pattern_root(restricted, a));
    }
    for (auto [g, h] : arr.tail_pairs) {
        last.push_back(push(h));
        out.receiver_pattern.x_exponents.push_back(1);
        out.witness.x_bar.push_back(bar(h));
    }
    for (std::size_t w : arr.trivial) {
        last.push_back(push(w));
    }
    out.parts.push_back(std::move(last));

    CheckResult check = verify_decomposition(s, partition, out);
    if (!check) {
        set_diagnostic(diagnostic, "certification failed: " + check.reason +
                                       (out.composite_caveat ? " (composite d: the search is best-effort)" : ""));
        return std::nullopt;
    }
    return out;
}

}  // namespace

Partition::Partition(std::vector<std::vector<std::size_t>> parts, std::size_t receiver, std::size_t num_qudits)
    : parts_(std::move(parts)), receiver_(receiver), num_qudits_(num_qudits) {
    if (parts_.size() < 2) {
        throw std::invalid_argument("a partition needs at least one sender and a receiver, got " +
                                    std::to_string(parts_.size()) + " part(s)");
    }
    if (receiver_ >= parts_.size()) {
        throw std::invalid_argument("receiver index " + std::to_string(receiver_) + " out of range for " +
                                    std::to_string(parts_.size()) + " parts");
    }
    std::vector<int> owner(num_qudits_, -1);
    for (std::size_t p = 0; p < parts_.size(); p++) {
        auto &part = parts_[p];
        if (part.empty()) {
            throw std::invalid_argument("partition part " + std::to_string(p + 1) + " is empty");
        }
        std::sort(part.begin(), part.end());
        for (std::size_t q : part) {
            if (q >= num_qudits_) {
                throw std::invalid_argument("partition part " + std::to_string(p + 1) + " names qudit " +
                                            std::to_string(q + 1) + " but there are only " +
                                            std::to_string(num_qudits_));
            }
            if (owner[q] >= 0) {
                throw std::invalid_argument("qudit " + std::to_string(q + 1) + " appears in parts " +
                                            std::to_string(owner[q] + 1) + " and " + std::to_string(p + 1));
            }
            owner[q] = static_cast<int>(p);
        }
    }
    for (std::size_t q = 0; q < num_qudits_; q++) {
        if (owner[q] < 0) {
            throw std::invalid_argument("qudit " + std::to_string(q + 1) + " is not in any partition part");
        }
    }
}

Partition Partition::with_last_receiver(std::vector<std::vector<std::size_t>> parts, std::size_t num_qudits) {
    std::size_t receiver = parts.empty() ? 0 : parts.size() - 1;
    return Partition(std::move(parts), receiver, num_qudits);
}

std::size_t Partition::sender_part_index(std::size_t i) const {
    if (i >= num_senders()) {
        throw std::out_of_range("sender index " + std::to_string(i) + " out of range");
    }
    return i < receiver_ ? i : i + 1;
}

const std::vector<std::size_t> &Partition::sender(std::size_t i) const {
    return parts_[sender_part_index(i)];
}

std::string Partition::str() const {
    std::ostringstream out;
    for (std::size_t p = 0; p < parts_.size(); p++) {
        if (p) {
            out << " | ";
        }
        out << "{";
        for (std::size_t k = 0; k < parts_[p].size(); k++) {
            out << (k ? "," : "") << parts_[p][k] + 1;
        }
        out << "}";
        if (p == receiver_) {
            out << "*";
        }
    }
    return out.str();
}

std::size_t Decomposition::total_capacity() const {
    return std::accumulate(capacities.begin(), capacities.end(), std::size_t{0});
}

std::vector<PauliOperator> Decomposition::sender_pairs(std::size_t i) const {
    std::vector<PauliOperator> out;
    for (std::size_t idx : parts.at(i)) {
        out.push_back(generators[idx]);
    }
    return out;
}

std::optional<Decomposition> find_multipartite_decomposition(const StabilizerGroup &s, const Partition &partition,
                                                            std::string *diagnostic) {
    if (partition.num_qudits() != s.num_qudits()) {
        set_diagnostic(diagnostic, "partition covers " + std::to_string(partition.num_qudits()) +
                                       " qudits but the group acts on " + std::to_string(s.num_qudits()));
        return std::nullopt;
    }
    const auto &receiver = partition.receiver();
    internal::Workspace ws(s.generators());
    std::vector<std::size_t> active(s.size());
    std::iota(active.begin(), active.end(), 0);

    Arrangement arr;
    for (std::size_t i = 0; i < partition.num_senders(); i++) {
        auto others = other_sender_sites(partition, i);
        std::vector<std::size_t> local = active;
        internal::eliminate_sites(ws, local, others);
        arr.sender_pairs.push_back(internal::extract_pairs(ws, active, local, receiver));
    }
    std::vector<std::size_t> candidates = active;
    arr.tail_pairs = internal::extract_pairs(ws, active, candidates, receiver);
    arr.isotropic = internal::eliminate_sites(ws, active, receiver);
    arr.trivial = active;
    return assemble(s, partition, ws, arr, diagnostic);
}

std::optional<Decomposition> find_bipartite_decomposition(const StabilizerGroup &s,
                                                         const std::vector<std::size_t> &receiver_sites,
                                                         std::string *diagnostic) {
    std::vector<bool> in_receiver(s.num_qudits(), false);
    for (std::size_t q : receiver_sites) {
        if (q >= s.num_qudits()) {
            throw std::invalid_argument("receiver qudit " + std::to_string(q + 1) + " out of range");
        }
        in_receiver[q] = true;
    }
    std::vector<std::size_t> sender;
    for (std::size_t q = 0; q < s.num_qudits(); q++) {
        if (!in_receiver[q]) {
            sender.push_back(q);
        }
    }
    return find_multipartite_decomposition(s, Partition({sender, receiver_sites}, 1, s.num_qudits()), diagnostic);
}

std::optional<Decomposition> certify_user_decomposition(const StabilizerGroup &s, const Partition &partition,
                                                       const std::vector<std::vector<std::size_t>> &groups,
                                                       std::string *diagnostic) {
    std::size_t m = partition.num_senders();
    if (groups.size() != m + 1) {
        set_diagnostic(diagnostic, "decomposition lists " + std::to_string(groups.size()) + " subgroups, expected " +
                                       std::to_string(m + 1) + " (one per sender, then the receiver's)");
        return std::nullopt;
    }
    std::vector<int> seen(s.size(), 0);
    for (const auto &g : groups) {
        for (std::size_t idx : g) {
            if (idx >= s.size()) {
                set_diagnostic(diagnostic, "decomposition names generator #" + std::to_string(idx + 1) +
                                               " but there are only " + std::to_string(s.size()));
                return std::nullopt;
            }
            seen[idx]++;
        }
    }
    for (std::size_t i = 0; i < s.size(); i++) {
        if (seen[i] != 1) {
            set_diagnostic(diagnostic, "generator #" + std::to_string(i + 1) + " appears " + std::to_string(seen[i]) +
                                           " times in the decomposition; each must appear exactly once");
            return std::nullopt;
        }
    }
    const auto &receiver = partition.receiver();
    internal::Workspace ws(s.generators());
    Arrangement arr;
    for (std::size_t i = 0; i < m; i++) {
        std::vector<std::size_t> active = groups[i];
        std::vector<std::size_t> candidates = active;
        auto others = other_sender_sites(partition, i);
        for (std::size_t idx : active) {
            for (std::size_t q : others) {
                if (ws.op(idx).x()[q] != 0 || ws.op(idx).z()[q] != 0) {
                    set_diagnostic(diagnostic, "generator #" + std::to_string(idx + 1) + " in subgroup " +
                                                   std::to_string(i + 1) + " acts on another sender's qudit " +
                                                   std::to_string(q + 1));
                    return std::nullopt;
                }
            }
        }
        arr.sender_pairs.push_back(internal::extract_pairs(ws, active, candidates, receiver));
        auto leftover = internal::eliminate_sites(ws, active, receiver);
        if (!leftover.empty()) {
            set_diagnostic(diagnostic, "subgroup " + std::to_string(i + 1) +
                                           " restricted to the receiver is not a product of conjugate pairs");
            return std::nullopt;
        }
        arr.trivial.insert(arr.trivial.end(), active.begin(), active.end());
    }
    std::vector<std::size_t> active = groups[m];
    std::vector<std::size_t> candidates = active;
    arr.tail_pairs = internal::extract_pairs(ws, active, candidates, receiver);
    arr.isotropic = internal::eliminate_sites(ws, active, receiver);
    arr.trivial.insert(arr.trivial.end(), active.begin(), active.end());
    return assemble(s, partition, ws, arr, diagnostic);
}

CheckResult verify_decomposition(const StabilizerGroup &s, const Partition &partition, const Decomposition &decomp) {
    std::size_t m = partition.num_senders();
    const auto &receiver = partition.receiver();
    if (decomp.parts.size() != m + 1 || decomp.capacities.size() != m) {
        return CheckResult::failure("decomposition does not have one subgroup per party");
    }
    if (decomp.generators.size() != decomp.combinations.size()) {
        return CheckResult::failure("generator and combination lists differ in length");
    }
    std::vector<int> seen(decomp.generators.size(), 0);
    for (const auto &part : decomp.parts) {
        for (std::size_t idx : part) {
            if (idx >= decomp.generators.size()) {
                return CheckResult::failure("subgroup index out of range");
            }
            seen[idx]++;
        }
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
        return CheckResult::failure("subgroups do not partition the generator list");
    }

    for (std::size_t i = 0; i < decomp.generators.size(); i++) {
        const auto &g = decomp.generators[i];
        if (g.d() != s.d() || g.num_qudits() != s.num_qudits()) {
            return CheckResult::failure("generator " + std::to_string(i + 1) + " has the wrong shape");
        }
        if (!is_member(g, s)) {
            return CheckResult::failure("generator " + g.str() + " is not an element of the group");
        }
        if (s.size() > 0 && product_of_powers(s.generators(), decomp.combinations[i]) != g) {
            return CheckResult::failure("recorded combination does not reproduce generator " + g.str());
        }
    }
    {
        std::vector<ResidueVector> rows;
        for (const auto &g : decomp.generators) {
            rows.push_back(g.symplectic());
        }
        auto ours = row_span_rank_profile(ResidueMatrix::from_rows(rows, 2 * s.num_qudits(), s.d()));
        if (ours.canonical != row_span_rank_profile(s.tableau()).canonical) {
            return CheckResult::failure("listed generators do not generate the whole group");
        }
    }

    for (std::size_t i = 0; i < m; i++) {
        if (decomp.parts[i].size() != 2 * decomp.capacities[i]) {
            return CheckResult::failure("sender " + std::to_string(i + 1) + " does not hold exactly its pairs");
        }
        for (std::size_t idx : decomp.parts[i]) {
            const auto &g = decomp.generators[idx];
            for (std::size_t q : other_sender_sites(partition, i)) {
                if (g.x()[q] != 0 || g.z()[q] != 0) {
                    return CheckResult::failure("an element of sender " + std::to_string(i + 1) +
                                                "'s subgroup acts on qudit " + std::to_string(q + 1) +
                                                " of another sender");
                }
            }
        }
    }

    const CanonicalPattern &pattern = decomp.receiver_pattern;
    if (pattern.t != decomp.total_capacity()) {
        return CheckResult::failure("receiver pattern pair count differs from the total capacity");
    }
    std::vector<std::size_t> ordered;
    for (std::size_t i = 0; i < m; i++) {
        ordered.insert(ordered.end(), decomp.parts[i].begin(), decomp.parts[i].end());
    }
    const auto &last = decomp.parts[m];
    std::size_t tail = pattern.s() + pattern.u();
    if (last.size() < tail) {
        return CheckResult::failure("receiver subgroup is smaller than its pattern");
    }
    ordered.insert(ordered.end(), last.begin(), last.begin() + static_cast<std::ptrdiff_t>(tail));
    std::vector<PauliOperator> elements;
    try {
        elements = decomp.witness.elements(pattern);
    } catch (const std::invalid_argument &e) {
        return CheckResult::failure(e.what());
    }
    for (std::size_t k = 0; k < ordered.size(); k++) {
        PauliOperator r = restrict(decomp.generators[ordered[k]], receiver);
        if (r.symplectic() != elements[k].symplectic()) {
            return CheckResult::failure("receiver restriction of " + decomp.generators[ordered[k]].str() +
                                        " does not match its witness element " + elements[k].str());
        }
    }
    for (std::size_t k = tail; k < last.size(); k++) {
        if (!restrict(decomp.generators[last[k]], receiver).is_scalar()) {
            return CheckResult::failure("element " + decomp.generators[last[k]].str() +
                                        " is listed as acting trivially on the receiver but does not");
        }
    }
    RestrictedGroup r = restrict_group(s, receiver);
    return verify_witness(r, pattern, decomp.witness);
}

}  // namespace stabtel

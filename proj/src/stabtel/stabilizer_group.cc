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

#include "stabtel/stabilizer_group.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "reduction.h"

namespace stabtel {

namespace {

std::string ordinal(std::size_t i) {
    return "#" + std::to_string(i + 1);
}

ResidueMatrix rows_of(const std::vector<PauliOperator> &ops, int64_t d, std::size_t num_qudits) {
    std::vector<ResidueVector> rows;
    for (const auto &op : ops) {
        rows.push_back(op.symplectic());
    }
    return ResidueMatrix::from_rows(rows, 2 * num_qudits, d);
}

std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
}

struct Reduction {
    std::vector<std::pair<PauliOperator, PauliOperator>> pairs;
    std::vector<PauliOperator> isotropic;
};

Reduction reduce_restricted(const RestrictedGroup &r) {
    internal::Workspace ws(r.generators);
    auto sites = iota(r.sites.size());
    auto active = iota(r.generators.size());
    auto candidates = active;
    Reduction out;
    for (auto [g, h] : internal::extract_pairs(ws, active, candidates, sites)) {
        out.pairs.emplace_back(normalize_into_g_prime(ws.op(g)), normalize_into_g_prime(ws.op(h)));
    }
    for (std::size_t p : internal::eliminate_sites(ws, active, sites)) {
        out.isotropic.push_back(ws.op(p).with_phase(0));
    }
    return out;
}

}  // namespace

ResidueMatrix StabilizerGroup::tableau() const {
    return rows_of(generators_, d_, n_);
}

StabilizerGroup build_group(std::vector<PauliOperator> generators, int64_t d, std::size_t num_qudits) {
    if (d < 2) {
        throw std::invalid_argument("qudit dimension must be at least 2, got " + std::to_string(d));
    }
    for (std::size_t i = 0; i < generators.size(); i++) {
        const auto &g = generators[i];
        if (g.d() != d || g.num_qudits() != num_qudits) {
            throw std::invalid_argument("generator " + ordinal(i) + " acts on " + std::to_string(g.num_qudits()) +
                                        " qudits of dimension " + std::to_string(g.d()) + ", expected " +
                                        std::to_string(num_qudits) + " of dimension " + std::to_string(d));
        }
        if (!in_g_prime(g)) {
            SpectrumClass spec = spectrum_class(g);
            throw std::invalid_argument("generator " + ordinal(i) + " (" + g.str() +
                                        ") does not have eigenvalue 1: its eigenvalues are gamma^(" +
                                        std::to_string(spec.offset) + " + " + std::to_string(2 * spec.step) +
                                        "j)");
        }
    }
    for (std::size_t i = 0; i < generators.size(); i++) {
        for (std::size_t j = i + 1; j < generators.size(); j++) {
            int64_t e = commutation_exponent(generators[i], generators[j]);
            if (e != 0) {
                throw std::invalid_argument("generators " + ordinal(i) + " and " + ordinal(j) +
                                            " do not commute (commutation exponent " + std::to_string(e) + ")");
            }
        }
    }
    for (std::size_t i = generators.size(); i-- > 0;) {
        std::vector<PauliOperator> others;
        for (std::size_t j = 0; j < generators.size(); j++) {
            if (j != i) {
                others.push_back(generators[j]);
            }
        }
        auto profile = row_span_rank_profile(rows_of(others, d, num_qudits));
        if (profile.contains(generators[i].symplectic())) {
            throw std::invalid_argument("generator " + ordinal(i) + " (" + generators[i].str() +
                                        ") is generated by the others up to phase; the generators are not independent");
        }
    }
    ResidueMatrix tableau = rows_of(generators, d, num_qudits);
    for (const auto &y : left_kernel(tableau)) {
        PauliOperator p = product_of_powers(generators, y);
        if (!p.is_identity()) {
            throw std::invalid_argument("the generators force the scalar " + p.str() + " into the group (relation " +
                                        y.str() + "), so no state is stabilized");
        }
    }
    StabilizerGroup out;
    out.d_ = d;
    out.n_ = num_qudits;
    out.generators_ = std::move(generators);
    return out;
}

PauliOperator product_of_powers(std::span<const PauliOperator> generators, const ResidueVector &exponents) {
    if (generators.size() != exponents.size()) {
        throw std::invalid_argument("product_of_powers: " + std::to_string(generators.size()) + " generators but " +
                                    std::to_string(exponents.size()) + " exponents");
    }
    if (generators.empty()) {
        throw std::invalid_argument("product_of_powers: empty generator list has no shape");
    }
    PauliOperator out(generators[0].d(), generators[0].num_qudits());
    for (std::size_t i = 0; i < generators.size(); i++) {
        out = multiply(out, power(generators[i], exponents[i]));
    }
    return out;
}

std::optional<ResidueVector> is_member(const PauliOperator &g, const StabilizerGroup &s) {
    if (g.d() != s.d() || g.num_qudits() != s.num_qudits()) {
        throw std::invalid_argument("is_member: operator shape does not match the group");
    }
    if (s.size() == 0) {
        if (g.is_identity()) {
            return ResidueVector::zeros(0, s.d());
        }
        return std::nullopt;
    }
    auto j = solve_linear_mod(s.tableau().transposed(), g.symplectic());
    if (!j) {
        return std::nullopt;
    }
    // Relations among the generators all evaluate to I, so any solution works.
    if (product_of_powers(s.generators(), *j) != g) {
        return std::nullopt;
    }
    return j;
}

uint64_t projector_rank(const StabilizerGroup &s) {
    uint64_t total = 1;
    for (std::size_t i = 0; i < s.num_qudits(); i++) {
        if (total > static_cast<uint64_t>(std::numeric_limits<int64_t>::max()) / static_cast<uint64_t>(s.d())) {
            throw std::overflow_error("projector_rank: d^n does not fit in 63 bits");
        }
        total *= static_cast<uint64_t>(s.d());
    }
    return total / row_span_rank_profile(s.tableau()).span_size();
}

RowSpanProfile RestrictedGroup::span_profile() const {
    return row_span_rank_profile(rows_of(generators, d, sites.size()));
}

bool RestrictedGroup::contains(const PauliOperator &op) const {
    if (op.d() != d || op.num_qudits() != sites.size()) {
        return false;
    }
    return span_profile().contains(op.symplectic());
}

bool RestrictedGroup::same_group(const RestrictedGroup &other) const {
    return d == other.d && sites.size() == other.sites.size() &&
           span_profile().canonical == other.span_profile().canonical;
}

RestrictedGroup restrict_group(const StabilizerGroup &s, std::span<const std::size_t> sites) {
    if (sites.empty()) {
        throw std::invalid_argument("restrict_group: the site set is empty");
    }
    RestrictedGroup out;
    out.d = s.d();
    out.sites.assign(sites.begin(), sites.end());
    std::sort(out.sites.begin(), out.sites.end());
    for (const auto &g : s.generators()) {
        out.generators.push_back(restrict(g, out.sites));
    }
    return out;
}

std::vector<PauliOperator> CanonicalPattern::target_elements(int64_t d) const {
    if (u() > s()) {
        throw std::invalid_argument("pattern has more X-type tail entries than Z-type ones");
    }
    std::size_t q = t + s();
    std::vector<PauliOperator> out;
    for (std::size_t i = 0; i < t; i++) {
        out.push_back(PauliOperator::single(d, q, i, 0, 1));
        out.push_back(PauliOperator::single(d, q, i, 1, 0));
    }
    for (std::size_t i = 0; i < s(); i++) {
        out.push_back(PauliOperator::single(d, q, t + i, 0, z_exponents[i]));
    }
    for (std::size_t j = 0; j < u(); j++) {
        out.push_back(PauliOperator::single(d, q, t + j, x_exponents[j], 0));
    }
    return out;
}

std::string CanonicalPattern::str() const {
    std::ostringstream out;
    out << "t=" << t << " s=" << s() << " u=" << u();
    auto list = [&](const char *name, const std::vector<int64_t> &v) {
        if (v.empty()) {
            return;
        }
        out << " " << name << "=(";
        for (std::size_t i = 0; i < v.size(); i++) {
            out << (i ? "," : "") << v[i];
        }
        out << ")";
    };
    list("a", z_exponents);
    list("b", x_exponents);
    return out.str();
}

std::vector<PauliOperator> PatternWitness::elements(const CanonicalPattern &pattern) const {
    if (z_bar.size() != pattern.t + pattern.s() || x_bar.size() != pattern.t + pattern.u()) {
        throw std::invalid_argument("witness has " + std::to_string(z_bar.size()) + " Z-bars and " +
                                    std::to_string(x_bar.size()) + " X-bars; pattern " + pattern.str() + " needs " +
                                    std::to_string(pattern.t + pattern.s()) + " and " +
                                    std::to_string(pattern.t + pattern.u()));
    }
    std::vector<PauliOperator> out;
    for (std::size_t i = 0; i < pattern.t; i++) {
        out.push_back(z_bar[i]);
        out.push_back(x_bar[i]);
    }
    for (std::size_t i = 0; i < pattern.s(); i++) {
        out.push_back(power(z_bar[pattern.t + i], pattern.z_exponents[i]));
    }
    for (std::size_t j = 0; j < pattern.u(); j++) {
        out.push_back(power(x_bar[pattern.t + j], pattern.x_exponents[j]));
    }
    return out;
}

CheckResult verify_witness(const RestrictedGroup &r, const CanonicalPattern &pattern, const PatternWitness &witness) {
    int64_t d = r.d;
    std::size_t q = r.sites.size();
    if (pattern.u() > pattern.s()) {
        return CheckResult::failure("pattern has u > s");
    }
    if (witness.z_bar.size() != pattern.t + pattern.s() || witness.x_bar.size() != pattern.t + pattern.u()) {
        return CheckResult::failure("witness size does not match pattern " + pattern.str());
    }
    auto check_bar = [&](const PauliOperator &op, const std::string &name) -> CheckResult {
        if (op.d() != d || op.num_qudits() != q) {
            return CheckResult::failure(name + " has the wrong shape");
        }
        if (!in_g_prime(op)) {
            return CheckResult::failure(name + " = " + op.str() + " lacks eigenvalue 1");
        }
        return {};
    };
    for (std::size_t i = 0; i < witness.z_bar.size(); i++) {
        if (auto c = check_bar(witness.z_bar[i], "Z-bar " + ordinal(i)); !c) {
            return c;
        }
        for (std::size_t j = 0; j < i; j++) {
            if (!commutes(witness.z_bar[i], witness.z_bar[j])) {
                return CheckResult::failure("Z-bars " + ordinal(j) + " and " + ordinal(i) + " do not commute");
            }
        }
        for (std::size_t j = 0; j < witness.x_bar.size(); j++) {
            int64_t want = i == j ? 1 : 0;
            if (commutation_exponent(witness.z_bar[i], witness.x_bar[j]) != want) {
                return CheckResult::failure("Z-bar " + ordinal(i) + " and X-bar " + ordinal(j) +
                                            " have commutation exponent " +
                                            std::to_string(commutation_exponent(witness.z_bar[i], witness.x_bar[j])) +
                                            ", expected " + std::to_string(want));
            }
        }
    }
    for (std::size_t i = 0; i < witness.x_bar.size(); i++) {
        if (auto c = check_bar(witness.x_bar[i], "X-bar " + ordinal(i)); !c) {
            return c;
        }
        for (std::size_t j = 0; j < i; j++) {
            if (!commutes(witness.x_bar[i], witness.x_bar[j])) {
                return CheckResult::failure("X-bars " + ordinal(j) + " and " + ordinal(i) + " do not commute");
            }
        }
    }

    auto elements = witness.elements(pattern);
    auto targets = pattern.target_elements(d);
    RestrictedGroup generated{d, r.sites, elements};
    if (!generated.same_group(r)) {
        return CheckResult::failure("witness elements do not generate the restricted group");
    }
    for (std::size_t i = 0; i < elements.size(); i++) {
        for (std::size_t j = 0; j < elements.size(); j++) {
            if (commutation_exponent(elements[i], elements[j]) != commutation_exponent(targets[i], targets[j])) {
                return CheckResult::failure("commutation exponents of elements " + ordinal(i) + ", " + ordinal(j) +
                                            " differ from the pattern");
            }
        }
    }
    if (elements.empty()) {
        return {};
    }
    auto witness_kernel = left_kernel(rows_of(elements, d, q));
    auto target_kernel = left_kernel(rows_of(targets, d, pattern.t + pattern.s()));
    auto canon = [&](const std::vector<ResidueVector> &rows) {
        return row_span_rank_profile(ResidueMatrix::from_rows(rows, elements.size(), d)).canonical;
    };
    if (canon(witness_kernel) != canon(target_kernel)) {
        return CheckResult::failure("witness elements satisfy different relations than the pattern");
    }
    for (const auto &y : witness_kernel) {
        PauliOperator lhs = product_of_powers(elements, y);
        PauliOperator rhs = product_of_powers(targets, y);
        if (lhs.phase() != rhs.phase()) {
            return CheckResult::failure("relation " + y.str() + " evaluates to gamma^" + std::to_string(lhs.phase()) +
                                        " on the witness but gamma^" + std::to_string(rhs.phase()) +
                                        " on the pattern");
        }
    }
    return {};
}

std::optional<PatternCertificate> find_canonical_pattern(const RestrictedGroup &r) {
    Reduction red = reduce_restricted(r);
    PatternCertificate cert;
    cert.pattern.t = red.pairs.size();
    for (const auto &[g, h] : red.pairs) {
        cert.witness.z_bar.push_back(g);
        cert.witness.x_bar.push_back(h);
    }
    for (const auto &w : red.isotropic) {
        int64_t a = r.d / order_up_to_phase(w);
        cert.pattern.z_exponents.push_back(a);
        cert.witness.z_bar.push_back(internal::pattern_root(w, a));
    }
    if (!verify_witness(r, cert.pattern, cert.witness)) {
        return std::nullopt;
    }
    return cert;
}

std::optional<PatternWitness> certify_pattern(const RestrictedGroup &r, const CanonicalPattern &pattern) {
    if (pattern.u() > pattern.s()) {
        return std::nullopt;
    }
    for (int64_t e : pattern.z_exponents) {
        if (e < 0 || e >= r.d) {
            return std::nullopt;
        }
    }
    for (int64_t e : pattern.x_exponents) {
        if (e < 0 || e >= r.d) {
            return std::nullopt;
        }
    }
    Reduction red = reduce_restricted(r);
    std::size_t pairs_needed = pattern.t + pattern.u();
    if (red.pairs.size() != pairs_needed || red.isotropic.size() > pattern.s() - pattern.u()) {
        return std::nullopt;
    }
    PatternWitness w;
    for (std::size_t i = 0; i < pattern.t; i++) {
        w.z_bar.push_back(red.pairs[i].first);
        w.x_bar.push_back(red.pairs[i].second);
    }
    for (std::size_t j = 0; j < pattern.u(); j++) {
        w.z_bar.push_back(red.pairs[pattern.t + j].first);
    }
    std::size_t q = r.sites.size();
    for (std::size_t i = pattern.u(); i < pattern.s(); i++) {
        std::size_t k = i - pattern.u();
        if (k < red.isotropic.size()) {
            w.z_bar.push_back(internal::pattern_root(red.isotropic[k], pattern.z_exponents[i]));
        } else {
            w.z_bar.push_back(PauliOperator(r.d, q));
        }
    }
    for (std::size_t j = 0; j < pattern.u(); j++) {
        w.x_bar.push_back(red.pairs[pattern.t + j].second);
    }
    if (!verify_witness(r, pattern, w)) {
        return std::nullopt;
    }
    return w;
}

}  // namespace stabtel

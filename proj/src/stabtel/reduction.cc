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

#include "reduction.h"

#include <algorithm>
#include <stdexcept>

namespace stabtel::internal {

int64_t exponent_on(const PauliOperator &g, const PauliOperator &h, std::span<const std::size_t> sites) {
    int64_t e = 0;
    for (std::size_t s : sites) {
        e += g.z()[s] * h.x()[s] - g.x()[s] * h.z()[s];
    }
    return mod_reduce(e, g.d());
}

Workspace::Workspace(std::vector<PauliOperator> ops) : d_(ops.empty() ? 2 : ops[0].d()), ops_(std::move(ops)) {
    for (std::size_t i = 0; i < ops_.size(); i++) {
        auto c = ResidueVector::zeros(ops_.size(), d_);
        c.set(i, 1);
        combos_.push_back(std::move(c));
    }
}

void Workspace::transform(std::size_t i, std::size_t j, int64_t s, int64_t t, int64_t u, int64_t v) {
    auto p = [&](std::size_t k, int64_t e) { return power(ops_[k], mod_reduce(e, d_)); };
    PauliOperator new_i = multiply(p(i, s), p(j, t));
    PauliOperator new_j = multiply(p(i, u), p(j, v));
    ResidueVector ci = combos_[i].scaled(s) + combos_[j].scaled(t);
    ResidueVector cj = combos_[i].scaled(u) + combos_[j].scaled(v);
    ops_[i] = std::move(new_i);
    ops_[j] = std::move(new_j);
    combos_[i] = std::move(ci);
    combos_[j] = std::move(cj);
}

void Workspace::absorb(std::size_t i, std::size_t j, int64_t e) {
    ops_[i] = multiply(ops_[i], power(ops_[j], mod_reduce(e, d_)));
    combos_[i] = combos_[i] + combos_[j].scaled(e);
}

void Workspace::raise(std::size_t i, int64_t e) {
    ops_[i] = power(ops_[i], mod_reduce(e, d_));
    combos_[i] = combos_[i].scaled(e);
}

std::vector<std::size_t> eliminate_sites(Workspace &ws, std::vector<std::size_t> &rows,
                                         std::span<const std::size_t> sites) {
    std::vector<std::size_t> pivots;
    for (std::size_t site : sites) {
        for (int component = 0; component < 2; component++) {
            auto entry = [&](std::size_t r) {
                return component == 0 ? ws.op(r).x()[site] : ws.op(r).z()[site];
            };
            std::vector<std::size_t> nonzero;
            for (std::size_t r : rows) {
                if (entry(r) != 0) {
                    nonzero.push_back(r);
                }
            }
            if (nonzero.empty()) {
                continue;
            }
            std::size_t p = nonzero[0];
            for (std::size_t k = 1; k < nonzero.size(); k++) {
                std::size_t r = nonzero[k];
                int64_t x = entry(p), y = entry(r);
                ExtendedGcd eg = extended_gcd(x, y);
                ws.transform(p, r, eg.s, eg.t, -(y / eg.g), x / eg.g);
            }
            pivots.push_back(p);
            rows.erase(std::find(rows.begin(), rows.end(), p));
        }
    }
    return pivots;
}

std::vector<std::pair<std::size_t, std::size_t>> extract_pairs(Workspace &ws, std::vector<std::size_t> &active,
                                                               std::vector<std::size_t> &candidates,
                                                               std::span<const std::size_t> sites) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    int64_t d = ws.size() == 0 ? 2 : ws.op(0).d();
    auto erase = [](std::vector<std::size_t> &v, std::size_t x) {
        auto it = std::find(v.begin(), v.end(), x);
        if (it != v.end()) {
            v.erase(it);
        }
    };
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t a = 0; a < candidates.size() && !progress; a++) {
            for (std::size_t b = 0; b < candidates.size() && !progress; b++) {
                if (a == b) {
                    continue;
                }
                std::size_t g = candidates[a], h = candidates[b];
                auto inv = mod_inverse(exponent_on(ws.op(g), ws.op(h), sites), d);
                if (!inv) {
                    continue;
                }
                ws.raise(h, *inv);
                erase(active, g);
                erase(active, h);
                erase(candidates, g);
                erase(candidates, h);
                for (std::size_t f : active) {
                    int64_t alpha = exponent_on(ws.op(f), ws.op(g), sites);
                    int64_t beta = exponent_on(ws.op(f), ws.op(h), sites);
                    if (beta != 0) {
                        ws.absorb(f, g, -beta);
                    }
                    if (alpha != 0) {
                        ws.absorb(f, h, alpha);
                    }
                }
                pairs.emplace_back(g, h);
                progress = true;
            }
        }
    }
    return pairs;
}

PauliOperator pattern_root(const PauliOperator &w, int64_t a) {
    int64_t d = w.d();
    if (auto inv = mod_inverse(a, d)) {
        return normalize_into_g_prime(power(w, *inv));
    }
    if (a == 0) {
        return normalize_into_g_prime(w);
    }
    std::size_t q = w.num_qudits();
    std::vector<int64_t> xs(q), zs(q);
    for (std::size_t k = 0; k < q; k++) {
        if (w.x()[k] % a != 0 || w.z()[k] % a != 0) {
            return normalize_into_g_prime(w);
        }
        xs[k] = w.x()[k] / a;
        zs[k] = w.z()[k] / a;
    }
    return normalize_into_g_prime(PauliOperator(d, 0, std::move(xs), std::move(zs)));
}

}  // namespace stabtel::internal

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

#include "stabtel/pauli.h"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace stabtel {

namespace {

void check_dimension(int64_t d) {
    if (d < 2) {
        throw std::invalid_argument("qudit dimension must be at least 2, got " + std::to_string(d));
    }
}

void check_compatible(const PauliOperator &g, const PauliOperator &h, const char *op) {
    if (g.d() != h.d()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(g.d()) + " vs " +
                                    std::to_string(h.d()) + ")");
    }
    if (g.num_qudits() != h.num_qudits()) {
        throw std::invalid_argument(std::string(op) + ": length mismatch (" + std::to_string(g.num_qudits()) +
                                    " vs " + std::to_string(h.num_qudits()) + ")");
    }
}

std::vector<std::size_t> checked_sites(std::span<const std::size_t> sites, std::size_t num_qudits) {
    std::vector<std::size_t> out(sites.begin(), sites.end());
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
        throw std::invalid_argument("site list contains duplicates");
    }
    if (!out.empty() && out.back() >= num_qudits) {
        throw std::invalid_argument("site " + std::to_string(out.back()) + " out of range for " +
                                    std::to_string(num_qudits) + " qudits");
    }
    return out;
}

// Parses an optionally signed integer starting at text[pos]; advances pos.
bool parse_int(std::string_view text, std::size_t &pos, int64_t &out) {
    const char *begin = text.data() + pos;
    const char *end = text.data() + text.size();
    if (begin != end && *begin == '+') {
        begin++;
    }
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc()) {
        return false;
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    return true;
}

// Exponent after an operator letter: "^k" or nothing (meaning 1).
bool parse_exponent(std::string_view token, std::size_t &pos, int64_t &out) {
    if (pos < token.size() && token[pos] == '^') {
        pos++;
        return parse_int(token, pos, out);
    }
    out = 1;
    return true;
}

bool parse_phase_token(std::string_view token, int64_t d, int64_t &phase) {
    if (token == "-") {
        phase = d;
        return true;
    }
    if (token.empty() || (token[0] != 'w' && token[0] != 'g')) {
        return false;
    }
    std::size_t pos = 1;
    int64_t k;
    if (!parse_exponent(token, pos, k) || pos != token.size()) {
        return false;
    }
    phase = token[0] == 'w' ? 2 * k : k;
    return true;
}

// Returns false when the token is not a site token.
bool parse_site_token(std::string_view token, int64_t d, int64_t &a, int64_t &b, int64_t &phase) {
    a = 0;
    b = 0;
    if (token == "I") {
        return true;
    }
    if (token == "Y") {
        if (d != 2) {
            throw std::invalid_argument("Y is only defined for qubits (d = 2); write XZ with an explicit phase");
        }
        a = 1;
        b = 1;
        phase += 1;
        return true;
    }
    std::size_t pos = 0;
    bool any = false;
    if (pos < token.size() && token[pos] == 'X') {
        pos++;
        if (!parse_exponent(token, pos, a)) {
            return false;
        }
        any = true;
    }
    if (pos < token.size() && token[pos] == 'Z') {
        pos++;
        if (!parse_exponent(token, pos, b)) {
            return false;
        }
        any = true;
    }
    return any && pos == token.size();
}

std::string power_token(char letter, int64_t k) {
    std::string out(1, letter);
    if (k != 1) {
        out += "^" + std::to_string(k);
    }
    return out;
}

}  // namespace

PauliOperator::PauliOperator(int64_t d, std::size_t num_qudits)
    : d_(d), phase_(0), x_(ResidueVector::zeros(num_qudits, d)), z_(ResidueVector::zeros(num_qudits, d)) {
    check_dimension(d);
}

PauliOperator::PauliOperator(int64_t d, int64_t phase_gamma, ResidueVector x, ResidueVector z)
    : d_(d), phase_(mod_reduce(phase_gamma, 2 * d)), x_(std::move(x)), z_(std::move(z)) {
    check_dimension(d);
    if (x_.modulus() != d || z_.modulus() != d) {
        throw std::invalid_argument("Pauli exponent vectors must be taken modulo d = " + std::to_string(d));
    }
    if (x_.size() != z_.size()) {
        throw std::invalid_argument("X and Z exponent vectors differ in length (" + std::to_string(x_.size()) +
                                    " vs " + std::to_string(z_.size()) + ")");
    }
}

PauliOperator::PauliOperator(int64_t d, int64_t phase_gamma, std::vector<int64_t> x, std::vector<int64_t> z)
    : PauliOperator(d, phase_gamma, ResidueVector(std::move(x), d), ResidueVector(std::move(z), d)) {
}

PauliOperator PauliOperator::single(int64_t d, std::size_t num_qudits, std::size_t site, int64_t a, int64_t b) {
    if (site >= num_qudits) {
        throw std::invalid_argument("site " + std::to_string(site) + " out of range for " +
                                    std::to_string(num_qudits) + " qudits");
    }
    PauliOperator out(d, num_qudits);
    out.x_.set(site, a);
    out.z_.set(site, b);
    return out;
}

PauliOperator PauliOperator::from_string(std::string_view text, int64_t d) {
    check_dimension(d);
    std::vector<std::string> tokens;
    {
        std::string buffer(text);
        std::istringstream in(buffer);
        std::string tok;
        while (in >> tok) {
            if (tok != "\xE2\x8A\x97") {
                tokens.push_back(tok);
            }
        }
    }
    int64_t phase = 0;
    std::size_t first = 0;
    if (!tokens.empty() && parse_phase_token(tokens[0], d, phase)) {
        first = 1;
    }
    if (first == tokens.size()) {
        throw std::invalid_argument("Pauli string '" + std::string(text) + "' has no site tokens");
    }
    std::vector<int64_t> xs, zs;
    for (std::size_t k = first; k < tokens.size(); k++) {
        int64_t a, b;
        if (!parse_site_token(tokens[k], d, a, b, phase)) {
            throw std::invalid_argument("Pauli string '" + std::string(text) + "': bad token '" + tokens[k] +
                                        "' at position " + std::to_string(k + 1));
        }
        xs.push_back(a);
        zs.push_back(b);
    }
    return PauliOperator(d, phase, std::move(xs), std::move(zs));
}

PauliOperator PauliOperator::with_phase(int64_t phase_gamma) const {
    PauliOperator out = *this;
    out.phase_ = mod_reduce(phase_gamma, 2 * d_);
    return out;
}

bool PauliOperator::is_scalar() const {
    return x_.is_zero() && z_.is_zero();
}

bool PauliOperator::is_identity() const {
    return phase_ == 0 && is_scalar();
}

ResidueVector PauliOperator::symplectic() const {
    std::vector<int64_t> v(x_.entries().begin(), x_.entries().end());
    v.insert(v.end(), z_.entries().begin(), z_.entries().end());
    return ResidueVector(std::move(v), d_);
}

PauliOperator PauliOperator::operator*(const PauliOperator &other) const {
    return multiply(*this, other);
}

std::string PauliOperator::str() const {
    std::size_t n = num_qudits();
    int64_t phase = phase_;
    std::vector<std::string> sites;
    for (std::size_t k = 0; k < n; k++) {
        int64_t a = x_[k], b = z_[k];
        if (d_ == 2 && a == 1 && b == 1) {
            sites.push_back("Y");
            phase -= 1;
        } else if (a == 0 && b == 0) {
            sites.push_back("I");
        } else if (b == 0) {
            sites.push_back(power_token('X', a));
        } else if (a == 0) {
            sites.push_back(power_token('Z', b));
        } else {
            sites.push_back(power_token('X', a) + power_token('Z', b));
        }
    }
    phase = mod_reduce(phase, 2 * d_);
    std::string out;
    if (phase == d_) {
        out = "-";
    } else if (phase != 0 && phase % 2 == 0) {
        out = power_token('w', phase / 2);
    } else if (phase != 0) {
        out = power_token('g', phase);
    }
    for (const auto &s : sites) {
        if (!out.empty()) {
            out += ' ';
        }
        out += s;
    }
    return out;
}

PauliOperator multiply(const PauliOperator &g, const PauliOperator &h) {
    check_compatible(g, h, "multiply");
    // Z^b X^a' = omega^(b a') X^a' Z^b on every site.
    int64_t cross = g.z().dot(h.x());
    return PauliOperator(g.d(), g.phase() + h.phase() + 2 * cross, g.x() + h.x(), g.z() + h.z());
}

int64_t commutation_exponent(const PauliOperator &g, const PauliOperator &h) {
    check_compatible(g, h, "commutation_exponent");
    return mod_reduce(g.z().dot(h.x()) - g.x().dot(h.z()), g.d());
}

PauliOperator power(const PauliOperator &g, int64_t j) {
    if (j < 0) {
        throw std::invalid_argument("power: exponent must be nonnegative, got " + std::to_string(j));
    }
    PauliOperator result(g.d(), g.num_qudits());
    PauliOperator base = g;
    while (j > 0) {
        if (j & 1) {
            result = multiply(result, base);
        }
        j >>= 1;
        if (j > 0) {
            base = multiply(base, base);
        }
    }
    return result;
}

PauliOperator inverse(const PauliOperator &g) {
    // (X^a Z^b)^-1 = Z^-b X^-a = omega^(a.b) X^-a Z^-b.
    int64_t d = g.d();
    return PauliOperator(d, -g.phase() + 2 * g.x().dot(g.z()), g.x().scaled(-1), g.z().scaled(-1));
}

PauliOperator restrict(const PauliOperator &g, std::span<const std::size_t> sites) {
    auto kept = checked_sites(sites, g.num_qudits());
    std::vector<int64_t> xs, zs;
    for (std::size_t s : kept) {
        xs.push_back(g.x()[s]);
        zs.push_back(g.z()[s]);
    }
    return PauliOperator(g.d(), 0, std::move(xs), std::move(zs));
}

PauliOperator embed(const PauliOperator &g, std::size_t num_qudits, std::span<const std::size_t> sites) {
    if (sites.size() != g.num_qudits()) {
        throw std::invalid_argument("embed: operator has " + std::to_string(g.num_qudits()) + " qudits but " +
                                    std::to_string(sites.size()) + " sites were given");
    }
    checked_sites(sites, num_qudits);
    auto xs = ResidueVector::zeros(num_qudits, g.d());
    auto zs = ResidueVector::zeros(num_qudits, g.d());
    for (std::size_t k = 0; k < sites.size(); k++) {
        xs.set(sites[k], g.x()[k]);
        zs.set(sites[k], g.z()[k]);
    }
    return PauliOperator(g.d(), g.phase(), std::move(xs), std::move(zs));
}

PauliOperator tensor(const PauliOperator &g, const PauliOperator &h) {
    if (g.d() != h.d()) {
        throw std::invalid_argument("tensor: dimension mismatch");
    }
    std::vector<int64_t> xs(g.x().entries().begin(), g.x().entries().end());
    std::vector<int64_t> zs(g.z().entries().begin(), g.z().entries().end());
    xs.insert(xs.end(), h.x().entries().begin(), h.x().entries().end());
    zs.insert(zs.end(), h.z().entries().begin(), h.z().entries().end());
    return PauliOperator(g.d(), g.phase() + h.phase(), std::move(xs), std::move(zs));
}

int64_t order_up_to_phase(const PauliOperator &g) {
    int64_t common = g.d();
    for (std::size_t k = 0; k < g.num_qudits(); k++) {
        common = std::gcd(common, g.x()[k]);
        common = std::gcd(common, g.z()[k]);
    }
    return g.d() / common;
}

SpectrumClass spectrum_class(const PauliOperator &g) {
    int64_t d = g.d();
    int64_t r = order_up_to_phase(g);
    int64_t e = power(g, r).phase();
    int64_t step = d / r;
    // g^r = gamma^e I forces every eigenvalue gamma^f to satisfy r f = e (mod 2d),
    // and the solutions form a single class modulo 2 step.
    for (int64_t f = 0; f < 2 * step; f++) {
        if (mod_reduce(r * f - e, 2 * d) == 0) {
            SpectrumClass::Kind kind = f == 0   ? SpectrumClass::Kind::plain
                                       : f == 1 ? SpectrumClass::Kind::shifted
                                                : SpectrumClass::Kind::rotated;
            return {kind, step, f};
        }
    }
    throw std::logic_error("spectrum_class: no consistent eigenphase for " + g.str());
}

bool in_g_prime(const PauliOperator &g) {
    return power(g, order_up_to_phase(g)).phase() == 0;
}

PauliOperator normalize_into_g_prime(const PauliOperator &g) {
    SpectrumClass spec = spectrum_class(g);
    // Admissible phases form one class mod 2 * step.
    return g.with_phase(mod_reduce(g.phase() - spec.offset, 2 * spec.step));
}

}  // namespace stabtel

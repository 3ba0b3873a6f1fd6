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

#include "stabtel/problem_io.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "stabtel/dense_sim.h"

namespace stabtel {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &where, const std::string &what) {
    throw ParseError(where + ": " + what);
}

std::string at(const std::string &where, std::size_t i) {
    return where + "[" + std::to_string(i) + "]";
}

std::string at(const std::string &where, const char *key) {
    return where.empty() ? std::string(key) : where + "." + key;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ParseError(std::string("json: ") + e.what());
    }
}

const Json &member(const Json &obj, const char *key, const std::string &where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(at(where, key), "missing");
    }
    return *it;
}

int64_t to_int(const Json &v, const std::string &where) {
    if (!v.is_number_integer()) {
        fail(where, "expected an integer, got " + v.dump());
    }
    return v.get<int64_t>();
}

std::size_t to_index(const Json &v, const std::string &where, std::size_t limit) {
    int64_t i = to_int(v, where);
    if (i < 1 || static_cast<std::size_t>(i) > limit) {
        fail(where, "index " + std::to_string(i) + " outside 1.." + std::to_string(limit));
    }
    return static_cast<std::size_t>(i - 1);
}

const Json &to_array(const Json &v, const std::string &where) {
    if (!v.is_array()) {
        fail(where, "expected an array");
    }
    return v;
}

std::vector<std::vector<std::size_t>> to_index_lists(const Json &v, const std::string &where, std::size_t limit) {
    std::vector<std::vector<std::size_t>> out;
    const Json &outer = to_array(v, where);
    for (std::size_t i = 0; i < outer.size(); i++) {
        const Json &inner = to_array(outer[i], at(where, i));
        std::vector<std::size_t> row;
        for (std::size_t j = 0; j < inner.size(); j++) {
            row.push_back(to_index(inner[j], at(at(where, i), j), limit));
        }
        out.push_back(std::move(row));
    }
    return out;
}

Json index_lists_to_json(const std::vector<std::vector<std::size_t>> &lists) {
    Json out = Json::array();
    for (const auto &row : lists) {
        Json r = Json::array();
        for (std::size_t i : row) {
            r.push_back(i + 1);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::vector<int64_t>> to_int_table(const Json &v, const std::string &where) {
    std::vector<std::vector<int64_t>> out;
    const Json &outer = to_array(v, where);
    for (std::size_t i = 0; i < outer.size(); i++) {
        const Json &inner = to_array(outer[i], at(where, i));
        std::vector<int64_t> row;
        for (std::size_t j = 0; j < inner.size(); j++) {
            row.push_back(to_int(inner[j], at(at(where, i), j)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

Json matrix_to_json(const ComplexMatrix &m) {
    Json re = Json::array(), im = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json rr = Json::array(), ir = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            rr.push_back(m(r, c).real());
            ir.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ir));
    }
    return Json{{"real", std::move(re)}, {"imag", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json &v, const std::string &where) {
    if (!v.is_object()) {
        fail(where, "expected an object with real and imag arrays");
    }
    std::string rw = at(where, "real"), iw = at(where, "imag");
    const Json &re = to_array(member(v, "real", where), rw);
    const Json &im = to_array(member(v, "imag", where), iw);
    std::size_t dim = re.size();
    if (dim == 0 || im.size() != dim) {
        fail(where, "real and imag must be non-empty square arrays of the same size");
    }
    ComplexMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; r++) {
        const Json &rr = to_array(re[r], at(rw, r));
        const Json &ir = to_array(im[r], at(iw, r));
        if (rr.size() != dim || ir.size() != dim) {
            fail(at(rw, r), "row length differs from the number of rows");
        }
        for (std::size_t c = 0; c < dim; c++) {
            if (!rr[c].is_number() || !ir[c].is_number()) {
                fail(at(at(rw, r), c), "expected a number");
            }
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = {rr[c].get<double>(), ir[c].get<double>()};
        }
    }
    return m;
}

PauliOperator parse_operator(const std::string &text, int64_t d, std::size_t n, const std::string &where) {
    PauliOperator g;
    try {
        g = PauliOperator::from_string(text, d);
    } catch (const std::invalid_argument &e) {
        fail(where, e.what());
    }
    if (g.num_qudits() != n) {
        fail(where, "\"" + text + "\" acts on " + std::to_string(g.num_qudits()) + " qudits but n = " +
                        std::to_string(n));
    }
    return g;
}

PauliOperator generator_from_json(const Json &v, int64_t d, std::size_t n, const std::string &where) {
    if (v.is_string()) {
        return parse_operator(v.get<std::string>(), d, n, where);
    }
    if (!v.is_object()) {
        fail(where, "expected a string or an object with phase_gamma, x and z");
    }
    int64_t c = v.contains("phase_gamma") ? to_int(v["phase_gamma"], at(where, "phase_gamma")) : 0;
    std::vector<int64_t> x, z;
    for (auto [key, out] : {std::pair<const char *, std::vector<int64_t> *>{"x", &x}, {"z", &z}}) {
        std::string w = at(where, key);
        const Json &arr = to_array(member(v, key, where), w);
        if (arr.size() != n) {
            fail(w, "has length " + std::to_string(arr.size()) + " but n = " + std::to_string(n));
        }
        for (std::size_t i = 0; i < arr.size(); i++) {
            out->push_back(to_int(arr[i], at(w, i)));
        }
    }
    return PauliOperator(d, c, std::move(x), std::move(z));
}

void check_d_and_n(int64_t d, int64_t n, const std::string &where) {
    if (d < 2) {
        fail(at(where, "d"), "must be at least 2, got " + std::to_string(d));
    }
    if (n < 1) {
        fail(at(where, "n"), "must be at least 1, got " + std::to_string(n));
    }
}

// Shared consistency checks once all fields are known.
void check_problem(const ProblemSpec &spec, const std::string &partition_where) {
    try {
        Partition(spec.parts, spec.receiver, spec.n);
    } catch (const std::invalid_argument &e) {
        fail(partition_where, e.what());
    }
    if (!spec.inputs.empty() && spec.inputs.size() != spec.parts.size() - 1) {
        fail("inputs", "expected one entry per sender (" + std::to_string(spec.parts.size() - 1) + "), got " +
                           std::to_string(spec.inputs.size()));
    }
}

std::vector<std::string> split_words(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::vector<std::string> out;
    std::string w;
    while (in >> w) {
        out.push_back(w);
    }
    return out;
}

std::size_t parse_count(const std::string &word, const std::string &where) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(word, &used);
    } catch (const std::exception &) {
        fail(where, "expected an integer, got \"" + word + "\"");
    }
    if (used != word.size() || v < 0) {
        fail(where, "expected a non-negative integer, got \"" + word + "\"");
    }
    return static_cast<std::size_t>(v);
}

}  // namespace

bool MessageInput::operator==(const MessageInput &other) const {
    if (seed != other.seed || matrix.rows() != other.matrix.rows() || matrix.cols() != other.matrix.cols()) {
        return false;
    }
    return matrix.size() == 0 || matrix == other.matrix;
}

StabilizerGroup ProblemSpec::group() const {
    return build_group(generators, d, n);
}

Partition ProblemSpec::partition() const {
    return Partition(parts, receiver, n);
}

ProblemSpec parse_problem(std::string_view text) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        return parse_problem_json(text);
    }
    return parse_problem_text(text);
}

ProblemSpec parse_problem_json(std::string_view text) {
    Json root = parse_json(text);
    if (!root.is_object()) {
        throw ParseError("json: the top level must be an object");
    }
    ProblemSpec spec;
    int64_t d = to_int(member(root, "d", ""), "d");
    int64_t n = to_int(member(root, "n", ""), "n");
    check_d_and_n(d, n, "");
    spec.d = d;
    spec.n = static_cast<std::size_t>(n);

    const Json &gens = to_array(member(root, "generators", ""), "generators");
    for (std::size_t i = 0; i < gens.size(); i++) {
        spec.generators.push_back(generator_from_json(gens[i], d, spec.n, at("generators", i)));
    }
    spec.parts = to_index_lists(member(root, "partition", ""), "partition", spec.n);
    int64_t receiver = to_int(member(root, "receiver", ""), "receiver");
    if (receiver < 0 || static_cast<std::size_t>(receiver) >= spec.parts.size()) {
        fail("receiver", "part index " + std::to_string(receiver) + " outside 0.." +
                             std::to_string(static_cast<int64_t>(spec.parts.size()) - 1));
    }
    spec.receiver = static_cast<std::size_t>(receiver);
    if (root.contains("decomposition") && !root["decomposition"].is_null()) {
        spec.decomposition = to_index_lists(root["decomposition"], "decomposition", spec.generators.size());
    }
    if (root.contains("inputs") && !root["inputs"].is_null()) {
        const Json &inputs = to_array(root["inputs"], "inputs");
        for (std::size_t i = 0; i < inputs.size(); i++) {
            std::string w = at("inputs", i);
            MessageInput in;
            if (inputs[i].is_object() && inputs[i].contains("seed")) {
                int64_t seed = to_int(inputs[i]["seed"], at(w, "seed"));
                if (seed < 0) {
                    fail(at(w, "seed"), "must be non-negative");
                }
                in.seed = static_cast<uint64_t>(seed);
            } else {
                in.matrix = matrix_from_json(inputs[i], w);
            }
            spec.inputs.push_back(std::move(in));
        }
    }
    check_problem(spec, "partition");
    return spec;
}

ProblemSpec parse_problem_text(std::string_view text) {
    ProblemSpec spec;
    std::optional<int64_t> d;
    std::optional<std::size_t> n;
    std::vector<std::pair<std::string, std::string>> generator_lines;
    std::optional<std::size_t> receiver;
    std::vector<std::pair<std::string, std::vector<std::string>>> index_lines;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::string where = "line " + std::to_string(line_no);
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        auto words = split_words(line);
        if (words.empty()) {
            continue;
        }
        const std::string &key = words[0];
        std::vector<std::string> args(words.begin() + 1, words.end());
        if (key == "d" || key == "n" || key == "seed") {
            if (args.size() != 1) {
                fail(where, "\"" + key + "\" takes exactly one integer");
            }
            std::size_t v = parse_count(args[0], where);
            if (key == "d") {
                d = static_cast<int64_t>(v);
            } else if (key == "n") {
                n = v;
            } else {
                MessageInput msg;
                msg.seed = v;
                spec.inputs.push_back(std::move(msg));
            }
        } else if (key == "generator") {
            std::size_t start = line.find("generator") + std::string("generator").size();
            generator_lines.emplace_back(where, line.substr(start));
        } else if (key == "part" || key == "receiver" || key == "group") {
            if (args.empty() && key != "group") {
                fail(where, "\"" + key + "\" needs at least one index");
            }
            if (key == "receiver") {
                if (receiver) {
                    fail(where, "a second receiver part");
                }
                receiver = std::count_if(index_lines.begin(), index_lines.end(),
                                         [](const auto &l) { return l.first.ends_with(":part"); });
            }
            index_lines.emplace_back(where + ":" + (key == "group" ? "group" : "part"), args);
        } else {
            fail(where, "unknown directive \"" + key + "\"");
        }
    }
    if (!d) {
        throw ParseError("missing \"d\" line");
    }
    if (!n) {
        throw ParseError("missing \"n\" line");
    }
    check_d_and_n(*d, static_cast<int64_t>(*n), "");
    if (!receiver) {
        throw ParseError("missing \"receiver\" line");
    }
    spec.d = *d;
    spec.n = *n;
    for (const auto &[where, body] : generator_lines) {
        spec.generators.push_back(parse_operator(body, spec.d, spec.n, where));
    }
    for (const auto &[tag, args] : index_lines) {
        std::string where = tag.substr(0, tag.rfind(':'));
        bool group = tag.ends_with(":group");
        std::size_t limit = group ? spec.generators.size() : spec.n;
        std::vector<std::size_t> row;
        for (const auto &a : args) {
            std::size_t v = parse_count(a, where);
            if (v < 1 || v > limit) {
                fail(where, "index " + a + " outside 1.." + std::to_string(limit));
            }
            row.push_back(v - 1);
        }
        (group ? spec.decomposition : spec.parts).push_back(std::move(row));
    }
    spec.receiver = *receiver;
    check_problem(spec, "partition");
    return spec;
}

std::string problem_to_json(const ProblemSpec &spec) {
    Json root;
    root["d"] = spec.d;
    root["n"] = spec.n;
    root["generators"] = Json::array();
    for (const auto &g : spec.generators) {
        root["generators"].push_back(g.str());
    }
    root["partition"] = index_lists_to_json(spec.parts);
    root["receiver"] = spec.receiver;
    if (!spec.decomposition.empty()) {
        root["decomposition"] = index_lists_to_json(spec.decomposition);
    }
    if (!spec.inputs.empty()) {
        Json inputs = Json::array();
        for (const auto &in : spec.inputs) {
            inputs.push_back(in.seed ? Json{{"seed", *in.seed}} : matrix_to_json(in.matrix));
        }
        root["inputs"] = std::move(inputs);
    }
    return root.dump(2) + "\n";
}

std::string problem_to_text(const ProblemSpec &spec) {
    std::ostringstream out;
    out << "d " << spec.d << "\n" << "n " << spec.n << "\n";
    for (const auto &g : spec.generators) {
        out << "generator " << g.str() << "\n";
    }
    auto indices = [&](const char *key, const std::vector<std::size_t> &row) {
        out << key;
        for (std::size_t i : row) {
            out << ' ' << i + 1;
        }
        out << "\n";
    };
    for (std::size_t p = 0; p < spec.parts.size(); p++) {
        indices(p == spec.receiver ? "receiver" : "part", spec.parts[p]);
    }
    for (const auto &group : spec.decomposition) {
        indices("group", group);
    }
    for (const auto &in : spec.inputs) {
        if (!in.seed) {
            throw std::invalid_argument("explicit input matrices have no text form; use JSON");
        }
        out << "seed " << *in.seed << "\n";
    }
    return out.str();
}

ProblemSpec problem_from_demo(const DemoProblem &demo) {
    ProblemSpec spec;
    spec.d = demo.d;
    spec.n = demo.n;
    for (std::size_t i = 0; i < demo.generators.size(); i++) {
        spec.generators.push_back(parse_operator(demo.generators[i], demo.d, demo.n, at("generators", i)));
    }
    spec.parts = demo.partition;
    spec.receiver = demo.receiver;
    spec.decomposition = demo.decomposition;
    check_problem(spec, "partition");
    return spec;
}

std::string protocol_to_json(const ProtocolSpec &spec) {
    Json root;
    root["format"] = "stabtel-protocol";
    root["version"] = 1;
    root["d"] = spec.d;
    root["n"] = spec.num_qudits;
    root["generators"] = Json::array();
    for (const auto &g : spec.stabilizer) {
        root["generators"].push_back(g.str());
    }
    root["partition"] = index_lists_to_json(spec.parts);
    root["receiver"] = spec.receiver;
    root["capacities"] = spec.capacities;
    root["receiver_unitary"] = matrix_to_json(spec.receiver_unitary);
    root["unitary_first"] = spec.unitary_first;
    root["measurements"] = Json::array();
    for (const auto &family : spec.measurements) {
        Json f = Json::array();
        for (const auto &h : family) {
            f.push_back(h.str());
        }
        root["measurements"].push_back(std::move(f));
    }
    root["destinations"] = index_lists_to_json(spec.destinations);
    root["correction"] = Json{{"x_coeffs", spec.correction.x_coeffs}, {"z_coeffs", spec.correction.z_coeffs}};
    return root.dump(2) + "\n";
}

ProtocolSpec parse_protocol(std::string_view text) {
    Json root = parse_json(text);
    if (!root.is_object()) {
        throw ParseError("json: the top level must be an object");
    }
    if (root.contains("format") && root["format"] != "stabtel-protocol") {
        fail("format", "expected \"stabtel-protocol\"");
    }
    ProtocolSpec spec;
    int64_t d = to_int(member(root, "d", ""), "d");
    int64_t n = to_int(member(root, "n", ""), "n");
    check_d_and_n(d, n, "");
    spec.d = d;
    spec.num_qudits = static_cast<std::size_t>(n);
    const Json &gens = to_array(member(root, "generators", ""), "generators");
    for (std::size_t i = 0; i < gens.size(); i++) {
        spec.stabilizer.push_back(generator_from_json(gens[i], d, spec.num_qudits, at("generators", i)));
    }
    spec.parts = to_index_lists(member(root, "partition", ""), "partition", spec.num_qudits);
    int64_t receiver = to_int(member(root, "receiver", ""), "receiver");
    if (receiver < 0 || static_cast<std::size_t>(receiver) >= spec.parts.size()) {
        fail("receiver", "part index " + std::to_string(receiver) + " out of range");
    }
    spec.receiver = static_cast<std::size_t>(receiver);
    Partition partition = [&] {
        try {
            return spec.partition();
        } catch (const std::invalid_argument &e) {
            fail("partition", e.what());
        }
    }();
    std::size_t m = partition.num_senders();

    const Json &caps = to_array(member(root, "capacities", ""), "capacities");
    if (caps.size() != m) {
        fail("capacities", "expected " + std::to_string(m) + " entries, got " + std::to_string(caps.size()));
    }
    for (std::size_t i = 0; i < m; i++) {
        int64_t a = to_int(caps[i], at("capacities", i));
        if (a < 0) {
            fail(at("capacities", i), "must be non-negative");
        }
        spec.capacities.push_back(static_cast<std::size_t>(a));
    }
    std::size_t b = spec.total_capacity();
    std::size_t q = partition.receiver().size();
    if (b > q) {
        fail("capacities", "sum " + std::to_string(b) + " exceeds the " + std::to_string(q) + " receiver qudits");
    }

    spec.receiver_unitary = matrix_from_json(member(root, "receiver_unitary", ""), "receiver_unitary");
    std::size_t dim = checked_dimension(d, q, std::numeric_limits<std::size_t>::max());
    if (static_cast<std::size_t>(spec.receiver_unitary.rows()) != dim) {
        fail("receiver_unitary", "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    }
    double residual = (spec.receiver_unitary * spec.receiver_unitary.adjoint() -
                       ComplexMatrix::Identity(spec.receiver_unitary.rows(), spec.receiver_unitary.cols()))
                          .cwiseAbs()
                          .maxCoeff();
    if (residual > kConstructionTol) {
        fail("receiver_unitary", "not unitary (max |UU^dagger - I| = " + std::to_string(residual) + ")");
    }
    if (root.contains("unitary_first")) {
        if (!root["unitary_first"].is_boolean()) {
            fail("unitary_first", "expected true or false");
        }
        spec.unitary_first = root["unitary_first"].get<bool>();
    }

    const Json &meas = to_array(member(root, "measurements", ""), "measurements");
    if (meas.size() != m) {
        fail("measurements", "expected " + std::to_string(m) + " families, got " + std::to_string(meas.size()));
    }
    for (std::size_t i = 0; i < m; i++) {
        std::string w = at("measurements", i);
        const Json &family = to_array(meas[i], w);
        std::size_t width = partition.sender(i).size() + spec.capacities[i];
        if (family.size() != 2 * spec.capacities[i]) {
            fail(w, "expected " + std::to_string(2 * spec.capacities[i]) + " operators, got " +
                        std::to_string(family.size()));
        }
        std::vector<PauliOperator> ops;
        for (std::size_t j = 0; j < family.size(); j++) {
            if (!family[j].is_string()) {
                fail(at(w, j), "expected an operator string");
            }
            ops.push_back(parse_operator(family[j].get<std::string>(), d, width, at(w, j)));
        }
        spec.measurements.push_back(std::move(ops));
    }

    spec.destinations = to_index_lists(member(root, "destinations", ""), "destinations", spec.num_qudits);
    if (spec.destinations.size() != m) {
        fail("destinations", "expected " + std::to_string(m) + " lists, got " +
                                 std::to_string(spec.destinations.size()));
    }
    const auto &receiver_sites = partition.receiver();
    for (std::size_t i = 0; i < m; i++) {
        if (spec.destinations[i].size() != spec.capacities[i]) {
            fail(at("destinations", i), "length differs from the capacity " + std::to_string(spec.capacities[i]));
        }
        for (std::size_t site : spec.destinations[i]) {
            if (std::find(receiver_sites.begin(), receiver_sites.end(), site) == receiver_sites.end()) {
                fail(at("destinations", i), "qudit " + std::to_string(site + 1) + " is not a receiver qudit");
            }
        }
    }

    const Json &corr = member(root, "correction", "");
    spec.correction.x_coeffs = to_int_table(member(corr, "x_coeffs", "correction"), "correction.x_coeffs");
    spec.correction.z_coeffs = to_int_table(member(corr, "z_coeffs", "correction"), "correction.z_coeffs");
    for (const auto *table : {&spec.correction.x_coeffs, &spec.correction.z_coeffs}) {
        const char *name = table == &spec.correction.x_coeffs ? "correction.x_coeffs" : "correction.z_coeffs";
        if (table->size() != b) {
            fail(name, "expected " + std::to_string(b) + " rows, got " + std::to_string(table->size()));
        }
        for (std::size_t r = 0; r < b; r++) {
            if ((*table)[r].size() != 2 * b) {
                fail(at(name, r), "expected " + std::to_string(2 * b) + " entries");
            }
        }
    }
    return spec;
}

bool looks_like_protocol(std::string_view text) {
    Json root = Json::parse(text, nullptr, false);
    return !root.is_discarded() && root.is_object() && root.contains("receiver_unitary");
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string &path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("error while writing " + path);
    }
}

}  // namespace stabtel

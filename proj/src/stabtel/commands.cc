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

#include "stabtel/commands.h"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace stabtel {

namespace {

using Json = nlohmann::ordered_json;

std::string capacities_str(const std::vector<std::size_t> &caps) {
    std::string out = "(";
    for (std::size_t i = 0; i < caps.size(); i++) {
        out += (i ? "," : "") + std::to_string(caps[i]);
    }
    return out + ")";
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string fixed(double v, int digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Json check_json(const CheckReport &r) {
    Json j;
    j["d"] = r.d;
    j["n"] = r.n;
    j["k"] = r.k;
    j["partition"] = r.partition;
    j["projector_rank"] = r.projector_rank;
    j["pure"] = r.pure();
    j["method"] = r.method;
    j["found"] = r.decomposition.has_value();
    j["useful"] = r.useful();
    if (r.decomposition) {
        const auto &dec = *r.decomposition;
        j["capacities"] = dec.capacities;
        j["total_capacity"] = dec.total_capacity();
        j["receiver_pattern"] = Json{{"t", dec.receiver_pattern.t},
                                     {"z_exponents", dec.receiver_pattern.z_exponents},
                                     {"x_exponents", dec.receiver_pattern.x_exponents}};
        j["composite_caveat"] = dec.composite_caveat;
    }
    if (r.search_capacities) {
        j["search_capacities"] = *r.search_capacities;
    }
    if (!r.diagnostic.empty()) {
        j["diagnostic"] = r.diagnostic;
    }
    return j;
}

Json simulation_json(const std::vector<TrialResult> &trials) {
    Json out;
    Json list = Json::array();
    double worst = 0;
    for (const auto &t : trials) {
        const auto &r = t.result;
        worst = std::max(worst, r.max_trace_distance);
        Json outcomes = Json::array();
        for (const auto &o : r.outcomes) {
            outcomes.push_back(
                Json{{"outcome", o.outcome}, {"probability", o.probability}, {"trace_distance", o.trace_distance}});
        }
        list.push_back(Json{{"seed", t.seed},
                            {"enumerated", r.enumerated},
                            {"total_outcomes", r.total_outcomes},
                            {"simulated_outcomes", r.outcomes.size()},
                            {"probability_sum", r.probability_sum},
                            {"max_trace_distance", r.max_trace_distance},
                            {"mean_trace_distance", r.mean_trace_distance},
                            {"outcomes", std::move(outcomes)}});
    }
    out["trials"] = std::move(list);
    out["max_trace_distance"] = worst;
    out["threshold"] = kPerfectionTol;
    out["verdict"] = worst < kPerfectionTol ? "PERFECT" : "IMPERFECT";
    return out;
}

bool all_perfect(const std::vector<TrialResult> &trials) {
    return std::all_of(trials.begin(), trials.end(), [](const TrialResult &t) { return t.result.perfect(); });
}

DensityMatrix input_state(const MessageInput &in, std::size_t dim) {
    if (in.seed) {
        return random_density_matrix(dim, *in.seed);
    }
    if (static_cast<std::size_t>(in.matrix.rows()) != dim) {
        throw std::invalid_argument("input matrix is " + std::to_string(in.matrix.rows()) + "x" +
                                    std::to_string(in.matrix.cols()) + " but the sender carries dimension " +
                                    std::to_string(dim));
    }
    return DensityMatrix(in.matrix);
}

ProblemSpec load_problem(const CommandOptions &options) {
    if (options.input && options.demo) {
        throw ParseError("--input and --demo are mutually exclusive");
    }
    if (options.demo) {
        auto demo = demo_problem(*options.demo);
        if (!demo) {
            throw ParseError("unknown demo \"" + *options.demo + "\"");
        }
        return problem_from_demo(*demo);
    }
    if (!options.input) {
        throw ParseError("one of --input or --demo is required");
    }
    return parse_problem(read_text_file(*options.input));
}

SimulateRequest make_request(const CommandOptions &options, const std::vector<MessageInput> &inputs) {
    SimulateRequest req;
    req.trials = std::max<std::size_t>(options.trials, 1);
    req.seed = options.seed;
    req.options.mode = options.mode;
    req.options.budget = options.budget;
    req.inputs = inputs;
    return req;
}

// Runs `body` and maps exceptions to exit code 1.
int guarded(std::ostream &err, const std::function<int()> &body) {
    try {
        return body();
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << "\n";
    } catch (const std::length_error &e) {
        err << "budget exceeded: " << e.what() << "\n";
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitInputError;
}

void report_no_decomposition(std::ostream &err) {
    err << "no decomposition with t>0 found; refusing to build a protocol\n";
}

}  // namespace

bool CheckReport::useful() const {
    return decomposition && decomposition->total_capacity() > 0;
}

CheckReport check_problem(const ProblemSpec &problem) {
    StabilizerGroup group = problem.group();
    Partition partition = problem.partition();
    CheckReport r;
    r.d = problem.d;
    r.n = problem.n;
    r.k = group.size();
    r.partition = partition.str();
    r.projector_rank = stabtel::projector_rank(group);
    std::string search_diag;
    auto search = find_multipartite_decomposition(group, partition, &search_diag);
    if (!problem.decomposition.empty()) {
        r.method = "certified";
        r.decomposition = certify_user_decomposition(group, partition, problem.decomposition, &r.diagnostic);
        if (search) {
            r.search_capacities = search->capacities;
        }
    } else {
        r.method = "search";
        r.decomposition = std::move(search);
        r.diagnostic = search_diag;
    }
    return r;
}

std::optional<ProtocolSpec> synthesize_from_report(const ProblemSpec &problem, const CheckReport &report) {
    if (!report.useful()) {
        return std::nullopt;
    }
    return synthesize_protocol(problem.group(), problem.partition(), *report.decomposition);
}

std::vector<DensityMatrix> seeded_inputs(const ProtocolSpec &spec, uint64_t seed) {
    std::vector<DensityMatrix> out;
    for (std::size_t i = 0; i < spec.capacities.size(); i++) {
        out.push_back(random_density_matrix(checked_dimension(spec.d, spec.capacities[i]), seed * 1000003 + i));
    }
    return out;
}

std::vector<TrialResult> simulate_trials(const ProtocolSpec &spec, const SimulateRequest &request) {
    std::vector<TrialResult> out;
    for (std::size_t t = 0; t < request.trials; t++) {
        TrialResult tr;
        tr.seed = request.seed + t;
        std::vector<DensityMatrix> inputs;
        if (t == 0 && !request.inputs.empty()) {
            if (request.inputs.size() != spec.capacities.size()) {
                throw std::invalid_argument("expected " + std::to_string(spec.capacities.size()) +
                                            " inputs, got " + std::to_string(request.inputs.size()));
            }
            for (std::size_t i = 0; i < request.inputs.size(); i++) {
                inputs.push_back(input_state(request.inputs[i], checked_dimension(spec.d, spec.capacities[i])));
            }
        } else {
            inputs = seeded_inputs(spec, tr.seed);
        }
        SimulationOptions opts = request.options;
        opts.seed = tr.seed;
        tr.result = run_protocol(spec, inputs, opts);
        out.push_back(std::move(tr));
    }
    return out;
}

std::string format_check(const CheckReport &r, bool json) {
    if (json) {
        return check_json(r).dump(2) + "\n";
    }
    std::ostringstream out;
    out << "group          d=" << r.d << " n=" << r.n << " k=" << r.k << "\n";
    out << "partition      " << r.partition << "   (* marks the receiver)\n";
    out << "projector rank " << r.projector_rank << (r.pure() ? " (pure)" : " (mixed)") << "\n";
    if (r.useful()) {
        const auto &dec = *r.decomposition;
        out << "decomposition  found (" << r.method << ")\n";
        out << "capacities     " << capacities_str(dec.capacities) << ", t=" << dec.total_capacity() << "\n";
        out << "receiver group " << dec.receiver_pattern.str() << "\n";
    } else {
        out << "decomposition  no decomposition with t>0 found";
        if (!r.diagnostic.empty()) {
            out << " (" << r.diagnostic << ")";
        }
        out << "\n               this does not prove perfect teleportation impossible\n";
    }
    if (r.search_capacities && r.decomposition && *r.search_capacities != r.decomposition->capacities) {
        out << "search         greedy search finds " << capacities_str(*r.search_capacities) << "\n";
    }
    if (r.decomposition && r.decomposition->composite_caveat) {
        out << "note           d is composite; the search only pivots on units\n";
    }
    return out.str();
}

std::string format_protocol_summary(const ProtocolSpec &spec) {
    std::ostringstream out;
    Partition partition = spec.partition();
    std::size_t outcomes = 1;
    for (std::size_t a : spec.capacities) {
        outcomes *= checked_dimension(spec.d, 2 * a, std::numeric_limits<std::size_t>::max());
    }
    out << "protocol       capacities " << capacities_str(spec.capacities) << ", " << outcomes << " outcomes\n";
    std::size_t q = partition.receiver().size();
    out << "receiver U     " << spec.receiver_unitary.rows() << "x" << spec.receiver_unitary.cols() << " on " << q
        << (q == 1 ? " qudit" : " qudits") << "\n";
    for (std::size_t i = 0; i < spec.measurements.size(); i++) {
        out << "sender " << i + 1 << "       ";
        if (spec.measurements[i].empty()) {
            out << "idle\n";
            continue;
        }
        for (std::size_t j = 0; j < spec.measurements[i].size(); j++) {
            out << (j ? ", " : "") << spec.measurements[i][j].str();
        }
        out << "  -> qudits";
        for (std::size_t s : spec.destinations[i]) {
            out << ' ' << s + 1;
        }
        out << "\n";
    }
    return out.str();
}

std::string format_simulation(const std::vector<TrialResult> &trials, bool json) {
    if (json) {
        return simulation_json(trials).dump(2) + "\n";
    }
    std::ostringstream out;
    double worst = 0;
    for (std::size_t t = 0; t < trials.size(); t++) {
        const auto &r = trials[t].result;
        worst = std::max(worst, r.max_trace_distance);
        out << "trial " << t + 1 << " (seed " << trials[t].seed << "): " << r.outcomes.size() << "/"
            << r.total_outcomes << " outcomes " << (r.enumerated ? "enumerated" : "sampled") << ", probability sum "
            << fixed(r.probability_sum, 12) << ", max trace distance " << sci(r.max_trace_distance) << "\n";
        if (t != 0) {
            continue;
        }
        out << "  outcome" << std::string(14, ' ') << "probability     trace distance\n";
        for (const auto &o : r.outcomes) {
            std::string label;
            for (int64_t x : o.outcome) {
                label += (label.empty() ? "" : " ") + std::to_string(x);
            }
            label.resize(std::max<std::size_t>(label.size(), 20), ' ');
            out << "  " << label << " " << fixed(o.probability, 12) << "  "
                << (o.trace_distance < 0 ? std::string("skipped") : sci(o.trace_distance)) << "\n";
        }
    }
    out << "max trace distance " << sci(worst) << " over " << trials.size()
        << (trials.size() == 1 ? " trial" : " trials") << "\n";
    out << "verdict " << (worst < kPerfectionTol ? "PERFECT" : "IMPERFECT") << " (threshold " << sci(kPerfectionTol)
        << ")\n";
    return out.str();
}

int run_check(const CommandOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        CheckReport report = check_problem(load_problem(options));
        out << format_check(report, options.json);
        return report.useful() ? kExitOk : kExitNoDecomposition;
    });
}

int run_synthesize(const CommandOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        ProblemSpec problem = load_problem(options);
        CheckReport report = check_problem(problem);
        auto spec = synthesize_from_report(problem, report);
        if (!spec) {
            if (options.json) {
                out << format_check(report, true);
            }
            report_no_decomposition(err);
            return kExitNoDecomposition;
        }
        std::string file = protocol_to_json(*spec);
        if (!options.out) {
            out << file;
            return kExitOk;
        }
        write_text_file(*options.out, file);
        if (options.json) {
            out << format_check(report, true);
        } else {
            out << format_check(report, false) << format_protocol_summary(*spec) << "wrote " << *options.out << "\n";
        }
        return kExitOk;
    });
}

int run_simulate(const CommandOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        ProtocolSpec spec;
        std::vector<MessageInput> inputs;
        std::string text = options.input && !options.demo ? read_text_file(*options.input) : "";
        if (!text.empty() && looks_like_protocol(text)) {
            spec = parse_protocol(text);
        } else {
            ProblemSpec problem = text.empty() ? load_problem(options) : parse_problem(text);
            CheckReport report = check_problem(problem);
            auto synthesized = synthesize_from_report(problem, report);
            if (!synthesized) {
                report_no_decomposition(err);
                return kExitNoDecomposition;
            }
            spec = std::move(*synthesized);
            inputs = problem.inputs;
        }
        auto trials = simulate_trials(spec, make_request(options, inputs));
        out << format_simulation(trials, options.json);
        return all_perfect(trials) ? kExitOk : kExitImperfect;
    });
}

int run_demo(const CommandOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (!options.demo) {
            throw ParseError("demo needs a name: one of example1, example2, example3a, example3b");
        }
        ProblemSpec problem = load_problem(options);
        CheckReport report = check_problem(problem);
        auto spec = synthesize_from_report(problem, report);
        std::vector<TrialResult> trials;
        if (spec) {
            trials = simulate_trials(*spec, make_request(options, problem.inputs));
        }
        if (options.json) {
            Json j{{"demo", *options.demo}, {"check", check_json(report)}};
            if (spec) {
                j["simulation"] = simulation_json(trials);
            }
            out << j.dump(2) << "\n";
        } else {
            out << "demo " << *options.demo << "\n" << format_check(report, false);
            if (spec) {
                out << format_protocol_summary(*spec) << format_simulation(trials, false);
            }
        }
        if (!spec) {
            report_no_decomposition(err);
            return kExitNoDecomposition;
        }
        return all_perfect(trials) ? kExitOk : kExitImperfect;
    });
}

}  // namespace stabtel

// Copyright 2026 The locc Authors
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

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "locc.hpp"

namespace {

using namespace locc;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitImpossible = 3;

struct Options {
    std::string json_path;
    std::uint64_t seed = AlsConfig{}.seed;

    AlsConfig als() const {
        AlsConfig c;
        c.seed = seed;
        return c;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// A state file is either a JSON state document or a protocol-format document
/// (only its state/attach lines matter).
PureState load_state(const std::string& path) {
    const std::string text = read_file(path);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::ParseError, path + ": " + e.what());
        }
        return state_from_json(j);
    }
    return parse_protocol_file(text).initial;
}

void write_json(const Options& opt, const json& j) {
    if (opt.json_path.empty()) return;
    std::ofstream out(opt.json_path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + opt.json_path);
    out << j.dump(2) << "\n";
}

std::string fixed12(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

std::string join_ints(const std::vector<int>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

void print_tree(const BranchNode& n, int depth = 0) {
    std::printf("  %-*s%-24s p=%s  %s\n", 2 * depth, "", n.record.empty() ? "(root)" : n.record.c_str(),
                fixed12(n.probability).c_str(), n.is_leaf() ? std::string(to_string(n.status)).c_str() : "");
    for (const auto& c : n.children) print_tree(c, depth + 1);
}

void print_steps(const Protocol& p) {
    std::printf("protocol %s\n", p.name.c_str());
    for (std::size_t i = 0; i < p.steps.size(); ++i) std::printf("  %zu. %s\n", i + 1, describe(p.steps[i]).c_str());
    std::printf("  target: %s", std::string(to_string(p.target.mode)).c_str());
    for (auto s : p.target.sites) std::printf(" %d", s);
    std::printf("\n");
    for (const auto& note : p.notes) std::printf("  note: %s\n", note.c_str());
}

void print_bound(const ConversionBound& b) {
    std::printf("bipartite splitting bound (%s -> %s)\n", b.source_id.c_str(), b.target_id.c_str());
    for (const auto& c : b.per_cut) std::printf("  %-10s P = %s\n", c.cut.name().c_str(), fixed12(c.probability).c_str());
    std::printf("  bound       %s\n", fixed12(b.bound).c_str());
}

void print_estimate(const char* label, const ProductTermEstimate& e) {
    std::printf("  %s: %d product terms (lower bound %d%s)\n", label, e.terms, e.lower_bound,
                e.heuristic ? ", heuristic" : "");
    for (const auto& p : e.probes) {
        std::printf("    r=%-2d residual=%.3e  %s (%d/%d restarts)\n", p.tested_rank, p.best_residual,
                    p.converged ? "converged" : "not converged", p.converged_restarts, p.restarts);
    }
}

void print_verdict(const CatalysisVerdict& v) {
    std::printf("verdict: %s\n", std::string(to_string(v.feasible)).c_str());
    std::printf("  reduced ranks:");
    for (const auto& r : v.ranks) std::printf("  %s %d->%d", r.party.c_str(), r.source_rank, r.target_rank);
    std::printf("\n");
    if (v.source_terms) print_estimate("source", *v.source_terms);
    if (v.target_terms) print_estimate("target", *v.target_terms);
    if (v.product_term_obstruction) {
        std::printf("  product terms %d vs %d%s\n", v.product_term_obstruction->source_estimate,
                    v.product_term_obstruction->target_estimate,
                    v.product_term_obstruction->heuristic ? " (heuristic: ALS evidence, not a proof)" : "");
    }
    std::printf("  %s\n", v.reason.c_str());
}

json run_and_report(const Scenario& s) {
    print_steps(s.protocol);
    const RunResult r = run_protocol(s.initial, s.protocol);
    std::printf("branches\n");
    print_tree(r.root);
    std::printf("success probability %s\n", fixed12(r.success_probability).c_str());
    if (r.aborted_probability > 0) std::printf("aborted probability %s\n", fixed12(r.aborted_probability).c_str());
    return to_json(r);
}

// --- commands ---------------------------------------------------------------

int cmd_classify(const Options& opt, const std::string& path, bool terms) {
    const PureState s = load_state(path);
    json out{{"state", to_json(s)}};
    const PartyTensor t = PartyTensor::from_state(s);
    const auto ranks = flattening_ranks(t);
    std::printf("parties:");
    for (const auto& p : t.parties()) std::printf(" %s", p.c_str());
    std::printf("\nsingle-party ranks %s\n", join_ints(ranks).c_str());
    out["ranks"] = ranks;
    if (t.dims() == std::vector<int>{2, 2, 2}) {
        const SloccClass c = slocc_class(s);
        std::printf("three-tangle %.12g\nclass %s\n", c.tangle, c.name().c_str());
        out["class"] = to_json(c);
    }
    if (terms) {
        const auto e = product_term_estimate(t, opt.als());
        print_estimate("estimate", e);
        out["product_terms"] = to_json(e);
    }
    write_json(opt, out);
    return kExitOk;
}

int cmd_bound(const Options& opt, const std::string& src, const std::string& dst) {
    const auto b = splitting_bound(load_state(src), load_state(dst), src, dst);
    print_bound(b);
    write_json(opt, to_json(b));
    return kExitOk;
}

int cmd_verdict(const Options& opt, const std::string& src, const std::string& dst) {
    const auto v = catalysis_verdict(load_state(src), load_state(dst), default_rank_probe(opt.als()));
    print_verdict(v);
    write_json(opt, to_json(v));
    return v.feasible == Feasibility::Impossible ? kExitImpossible : kExitOk;
}

int cmd_run(const Options& opt, const std::string& path) {
    const ProtocolFile f = parse_protocol_file(read_file(path));
    if (!f.has_target) throw ParseError(ErrorKind::SemanticError, 1, 1, "protocol file has no target");
    json out = run_and_report({f.protocol.name, f.initial, f.protocol});
    if (f.protocol.target.mode == Equivalence::Exact && f.protocol.target.state &&
        f.protocol.target.state->num_sites() == f.initial.num_sites()) {
        try {
            const auto b = splitting_bound(f.initial, *f.protocol.target.state, "initial", "target");
            print_bound(b);
            out["bound"] = to_json(b);
        } catch (const Error&) {
            // target lives on a different register; no bound to report
        }
    }
    write_json(opt, out);
    return kExitOk;
}

int demo_prop1(const Options& opt) {
    const auto pair = catalysed_w_to_ghz();
    std::printf("%s\n", pair.name.c_str());
    const auto v = catalysis_verdict(pair.source, pair.target, default_rank_probe(opt.als()));
    print_verdict(v);
    write_json(opt, to_json(v));
    return kExitOk;
}

int demo_prop2(const Options& opt) {
    json out = json::array();
    bool first = true;
    for (const auto& pair : tripartite_catalyst_pairs()) {
        std::printf("%s%s\n", first ? "" : "\n", pair.name.c_str());
        first = false;
        const auto v = catalysis_verdict(pair.source, pair.target, default_rank_probe(opt.als()));
        print_verdict(v);
        out.push_back(to_json(v));
    }
    write_json(opt, out);
    return kExitOk;
}

int demo_prop3(const Options& opt, double a) {
    const Scenario s = prop3(a);
    std::printf("W(a,a,1-2a,0) x EPR(B4,C5) -> GHZ(1,2,5) x |00>(3,4), a = %.12g\n", a);
    json out = run_and_report(s);
    const double p = out["success_probability"].get<double>();
    const auto b = splitting_bound(s.initial, prop3_exact_target(), "phi", "chi");
    print_bound(b);
    const bool optimal = std::abs(p - b.bound) <= 1e-9;
    std::printf("optimal: %s\n", optimal ? "achieved" : "not achieved");
    out["bound"] = to_json(b);
    out["optimal"] = optimal;
    write_json(opt, out);
    return kExitOk;
}

int demo_scenario(const Options& opt, const Scenario& s) {
    json out = run_and_report(s);
    write_json(opt, out);
    return kExitOk;
}

int cmd_sweep(const Options& opt, const std::string& from_text, const std::string& to_text, int points) {
    const auto from = parse_number(from_text), to = parse_number(to_text);
    if (!from || !to) throw ParseError(ErrorKind::ParseError, 1, 1, "bad sweep range");
    if (points < 1) throw ParseError(ErrorKind::ParseError, 1, 1, "--points must be positive");
    json rows = json::array();
    std::printf("%-16s %-16s %-16s %-16s\n", "a", "P(protocol)", "bound", "2a");
    for (int i = 0; i < points; ++i) {
        const double a = points == 1 ? *from : *from + (*to - *from) * i / (points - 1);
        const Scenario s = prop3(a);
        const double p = run_protocol(s.initial, s.protocol).success_probability;
        const double b = splitting_bound(s.initial, prop3_exact_target()).bound;
        std::printf("%-16s %-16s %-16s %-16s\n", fixed12(a).c_str(), fixed12(p).c_str(), fixed12(b).c_str(),
                    fixed12(2 * a).c_str());
        rows.push_back({{"a", a}, {"probability", round12(p)}, {"bound", round12(b)}, {"closed_form", round12(2 * a)}});
    }
    write_json(opt, rows);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local transformations of few-qubit entangled states"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--json", opt.json_path, "Write machine-readable output to this path");
    app.add_option("--seed", opt.seed, "Seed for the randomized product-term probe");

    std::string path, src, dst;
    bool terms = false;
    auto* classify = app.add_subcommand("classify", "Reduced ranks and SLOCC class of a state");
    classify->add_option("state", path, "State file (JSON or protocol format)")->required();
    classify->add_flag("--terms", terms, "Also estimate the minimal number of product terms");

    auto* bound = app.add_subcommand("bound", "Bipartite-splitting upper bound on the conversion probability");
    bound->add_option("source", src)->required();
    bound->add_option("target", dst)->required();

    auto* verdict = app.add_subcommand("verdict", "Check a claimed local conversion for rank/product-term obstructions");
    verdict->add_option("source", src)->required();
    verdict->add_option("target", dst)->required();

    auto* run = app.add_subcommand("run", "Simulate a protocol file");
    run->add_option("protocol", path)->required();

    std::vector<std::string> demo_args;
    auto* demo = app.add_subcommand("demo", "Built-in reproductions: prop1 | prop2 | prop3 <a> | intro | ghz2epr");
    demo->add_option("name", demo_args)->required()->expected(1, 2);

    std::string sweep_what, from = "1/3", to = "0.49";
    int points = 5;
    auto* sweep = app.add_subcommand("sweep", "Tabulate the prop3 success probability over a");
    sweep->add_option("family", sweep_what)->required()->check(CLI::IsMember({"prop3"}));
    sweep->add_option("--from", from, "First a (fractions allowed)");
    sweep->add_option("--to", to, "Last a");
    sweep->add_option("--points", points, "Number of grid points");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify) return cmd_classify(opt, path, terms);
        if (*bound) return cmd_bound(opt, src, dst);
        if (*verdict) return cmd_verdict(opt, src, dst);
        if (*run) return cmd_run(opt, path);
        if (*sweep) return cmd_sweep(opt, from, to, points);
        if (*demo) {
            const std::string& name = demo_args.front();
            if (name == "prop1") return demo_prop1(opt);
            if (name == "prop2") return demo_prop2(opt);
            if (name == "prop3") {
                const auto a = parse_number(demo_args.size() > 1 ? demo_args[1] : "0.4");
                if (!a) throw ParseError(ErrorKind::ParseError, 1, 1, "bad value for a");
                return demo_prop3(opt, *a);
            }
            if (name == "intro") return demo_scenario(opt, intro_teleport());
            if (name == "ghz2epr") return demo_scenario(opt, ghz_to_epr());
            std::fprintf(stderr, "unknown demo '%s'\n", name.c_str());
            return kExitParse;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        const bool parse = e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::SemanticError;
        return parse ? kExitParse : kExitFailure;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitOk;
}

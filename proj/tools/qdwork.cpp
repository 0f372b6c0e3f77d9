// Copyright 2026 The qdwork Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qdwork: compute truncations, verify congruences, compare unit roots.
//
// Exit status: 0 every check holds, 1 a check failed, 2 invalid or
// degenerate input, 3 resource budget exceeded, 4 internal or I/O error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qdwork/qdwork.hpp"

namespace {

using qdwork::Errc;
using qdwork::Error;
using ojson = nlohmann::ordered_json;

constexpr const char* kSchema = "qdwork.result/1";

struct RunConfig {
    std::string command;
    std::uint32_t p = 3, n = 2, k = 1;
    std::string omega = "1/2";
    unsigned s = 1;
    std::optional<unsigned> s_max;
    std::vector<std::string> modes{"qdeform", "classical", "roots"};
    std::optional<unsigned> l;
    bool self_test_negative = false;
    bool classical = false;
    std::uint64_t z0 = 2;
    std::string lift = "teichmuller";
    unsigned threads = 1;
    std::string cache_dir;
    std::string output;
    std::size_t max_terms = 20'000'000;
    bool csv = false;
    bool no_run_info = false;
    bool pretty = false;
};

/// Values from --config fill every option not given on the command line.
void apply_config_file(const std::string& path, CLI::App& sub, RunConfig& c) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot read config " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::invalid_argument, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(Errc::invalid_argument, "config must be a JSON object");
    auto unset = [&](const char* flag) {
        const CLI::Option* o = sub.get_option_no_throw(flag);
        return o == nullptr || o->count() == 0;
    };
    try {
        for (const auto& [key, val] : j.items()) {
            if (key == "p" && unset("--p")) c.p = val.get<std::uint32_t>();
            else if (key == "n" && unset("--n")) c.n = val.get<std::uint32_t>();
            else if (key == "k" && unset("--k")) c.k = val.get<std::uint32_t>();
            else if (key == "omega" && unset("--omega")) c.omega = val.get<std::string>();
            else if (key == "s" && unset("--s")) c.s = val.get<unsigned>();
            else if (key == "s_max" && unset("--s-max")) c.s_max = val.get<unsigned>();
            else if (key == "modes" && unset("--mode")) c.modes = val.get<std::vector<std::string>>();
            else if (key == "l" && unset("--l")) c.l = val.get<unsigned>();
            else if (key == "z0" && unset("--z0")) c.z0 = val.get<std::uint64_t>();
            else if (key == "lift" && unset("--lift")) c.lift = val.get<std::string>();
            else if (key == "threads" && unset("--threads")) c.threads = val.get<unsigned>();
            else if (key == "cache_dir" && unset("--cache-dir")) c.cache_dir = val.get<std::string>();
            else if (key == "max_terms" && unset("--max-terms")) c.max_terms = val.get<std::size_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::invalid_argument, std::string("bad config value: ") + e.what());
    }
}

qdwork::QuiverParams params_for(const RunConfig& c, unsigned s_needed) {
    return qdwork::validate(c.p, c.n, c.k, qdwork::parse_omega(c.omega), s_needed);
}

unsigned s_hi(const RunConfig& c) {
    const unsigned hi = c.s_max.value_or(c.s);
    if (hi < c.s) throw Error(Errc::invalid_argument, "--s-max is smaller than --s");
    return hi;
}

ojson config_echo(const RunConfig& c) {
    ojson j;
    if (c.command == "unit-root") {
        j["p"] = c.p;
        j["z0"] = c.z0;
        j["s"] = c.s;
        j["lift"] = c.lift;
        return j;
    }
    j["p"] = c.p;
    j["n"] = c.n;
    j["k"] = c.k;
    j["omega"] = c.omega;
    j["s"] = c.s;
    j["s_max"] = s_hi(c);
    if (c.command == "verify") {
        j["modes"] = c.modes;
        if (c.l) j["l"] = *c.l;
        j["self_test_negative"] = c.self_test_negative;
    }
    if (c.command == "compute") j["classical"] = c.classical;
    return j;
}

qdwork::ExtractOptions extract_options(const RunConfig& c) {
    qdwork::ExtractOptions o;
    o.threads = std::max(1u, c.threads);
    o.max_terms = c.max_terms;
    return o;
}

std::optional<std::filesystem::path> cache_dir(const RunConfig& c) {
    if (!c.cache_dir.empty()) return std::filesystem::path(c.cache_dir);
    if (const char* env = std::getenv("QDWORK_CACHE_DIR"); env && *env) return std::filesystem::path(env);
    return std::nullopt;
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
    ojson results = ojson::array();
    ojson timings = ojson::array();
    bool all_hold = true;
};

Outcome cmd_compute(const RunConfig& c, qdwork::TruncationStore& store) {
    Outcome out;
    const auto qp = params_for(c, s_hi(c));
    for (unsigned s = c.s; s <= s_hi(c); ++s) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto& rec = store.get(qp, s);
        ojson r;
        r["params"] = qdwork::to_json(qp);
        r["s"] = s;
        r["sign"] = rec.sign;
        r["theta_sign"] = rec.theta_sign();
        r["theta"] = rec.theta;
        r["poly"] = qdwork::to_json(rec.poly);
        if (c.classical) r["classical"] = qdwork::to_json(store.classical(qp, s));
        out.results.push_back(std::move(r));
        out.timings.push_back({{"s", s}, {"seconds", since(t0)}});
    }
    return out;
}

Outcome cmd_verify(const RunConfig& c, qdwork::TruncationStore& store) {
    Outcome out;
    const unsigned hi = s_hi(c);
    if (c.s == 0) throw Error(Errc::invalid_argument, "verify needs s >= 1");
    const auto qp = params_for(c, hi + 1);
    for (const auto& m : c.modes)
        if (m != "qdeform" && m != "classical" && m != "roots" && m != "splits")
            throw Error(Errc::invalid_argument, "unknown mode '" + m + "' (qdeform, classical, roots, splits)");
    auto record = [&](const qdwork::CongruenceReport& r) {
        out.all_hold = out.all_hold && r.holds;
        out.results.push_back(qdwork::to_json(r));
        ojson t{{"s", r.s}, {"mode", qdwork::mode_name(r.mode)}, {"seconds", r.seconds}};
        if (r.l) t["l"] = r.l;
        if (r.identity) t["identity"] = r.identity;
        out.timings.push_back(std::move(t));
    };
    for (unsigned s = c.s; s <= hi; ++s) {
        std::vector<unsigned> ls;
        if (c.l) {
            if (*c.l == 0 || *c.l > s) throw Error(Errc::invalid_argument, "--l must satisfy 1 <= l <= s");
            ls.push_back(*c.l);
        } else {
            for (unsigned l = 1; l <= s; ++l) ls.push_back(l);
        }
        for (const auto& m : c.modes) {
            if (m == "qdeform") {
                record(qdwork::q_dwork_verify(store, qp, s, c.self_test_negative));
            } else if (m == "classical") {
                record(qdwork::classical_dwork_verify(store, qp, s, c.self_test_negative));
            } else if (m == "roots") {
                for (unsigned l : ls) record(qdwork::root_of_unity_verify(store, qp, s, l, c.self_test_negative));
            } else {
                qdwork::SplitOptions so;
                so.reduce = !c.self_test_negative;
                so.max_terms = std::min<std::size_t>(c.max_terms, 2'000'000);
                for (unsigned l : ls)
                    for (unsigned id = 1; id <= 4; ++id) record(qdwork::split_identity_verify(qp, s, l, id, so));
            }
        }
    }
    return out;
}

Outcome cmd_unit_root(const RunConfig& c, qdwork::TruncationStore& store) {
    Outcome out;
    if (c.lift != "teichmuller" && c.lift != "integer")
        throw Error(Errc::invalid_argument, "--lift must be teichmuller or integer");
    if (c.s == 0) throw Error(Errc::invalid_argument, "unit-root needs s >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const auto cmp = qdwork::unit_root_compare(store, c.p, c.z0, c.s,
                                               c.lift == "integer" ? qdwork::Lift::integer : qdwork::Lift::teichmuller);
    out.all_hold = cmp.agreement == c.s;
    out.results.push_back(qdwork::to_json(cmp));
    out.timings.push_back({{"seconds", since(t0)}});
    return out;
}

void emit(const RunConfig& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::io_error, "cannot write " + c.output);
    f << text;
    if (!f) throw Error(Errc::io_error, "short write to " + c.output);
}

int cmd_bench(const RunConfig& c) {
    const auto qp = params_for(c, c.s);
    auto o = extract_options(c);
    std::vector<qdwork::StepStat> steps;
    o.on_step = [&](const qdwork::StepStat& st) { steps.push_back(st); };
    const auto t0 = std::chrono::steady_clock::now();
    const auto rec = qdwork::truncation_q(qp, c.s, o);
    const double total = since(t0);
    std::ostringstream text;
    if (c.csv) {
        text << "step,origin,terms,seconds\n";
        for (const auto& st : steps)
            text << st.step << ',' << qdwork::origin_name(st.origin) << ',' << st.terms << ',' << st.seconds << '\n';
    } else {
        ojson env;
        env["artifact"] = "qdwork";
        env["version"] = qdwork::kVersion;
        env["schema"] = kSchema;
        env["command"] = "bench";
        env["config"] = config_echo(c);
        ojson arr = ojson::array();
        std::size_t peak = 0;
        for (const auto& st : steps) {
            peak = std::max(peak, st.terms);
            arr.push_back({{"step", st.step}, {"origin", qdwork::origin_name(st.origin)}, {"terms", st.terms},
                           {"seconds", st.seconds}});
        }
        env["result"] = {{"steps", arr.size()}, {"peak_terms", peak}, {"result_terms", rec.poly.terms().size()}};
        env["run"] = {{"threads", o.threads}, {"seconds", total}, {"steps", std::move(arr)}};
        text << env.dump(c.pretty ? 2 : -1) << '\n';
    }
    emit(c, text.str());
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"q-deformed Dwork truncations and congruences"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qdwork::kVersion));
    RunConfig c;
    std::string config_path;

    auto add_quiver = [&](CLI::App* sub) {
        sub->add_option("--p", c.p, "odd prime");
        sub->add_option("--n", c.n, "quiver rank parameter (A_{n-1})");
        sub->add_option("--k", c.k, "framing parameter, n >= 2k");
        sub->add_option("--omega", c.omega, "weight as a fraction r/m");
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON file with default option values");
        sub->add_option("--threads", c.threads, "worker threads for coefficient extraction");
        sub->add_option("--cache-dir", c.cache_dir, "truncation cache directory (env QDWORK_CACHE_DIR)");
        sub->add_option("--output", c.output, "write the result here instead of stdout");
        sub->add_option("--max-terms", c.max_terms, "abort when an intermediate exceeds this many terms");
        sub->add_flag("--no-run-info", c.no_run_info, "omit the thread count and timing section");
        sub->add_flag("--pretty", c.pretty, "indent the JSON output");
    };

    auto* compute = app.add_subcommand("compute", "compute T_s(z,q)");
    add_quiver(compute);
    compute->add_option("--s", c.s, "level");
    compute->add_option("--s-max", c.s_max, "compute levels s..s-max");
    compute->add_flag("--classical", c.classical, "also report T_s(z) from the q = 1 route");
    add_common(compute);

    auto* verify = app.add_subcommand("verify", "verify the congruences");
    add_quiver(verify);
    verify->add_option("--s", c.s, "level");
    verify->add_option("--s-max", c.s_max, "verify levels s..s-max");
    verify->add_option("--mode", c.modes, "qdeform, classical, roots, splits")->delimiter(',');
    verify->add_option("--l", c.l, "root-of-unity exponent (default: every l <= s)");
    verify->add_flag("--self-test-negative", c.self_test_negative, "perturb the inputs; every check must fail");
    add_common(verify);

    auto* unit = app.add_subcommand("unit-root", "compare the two unit-root pipelines");
    unit->add_option("--p", c.p, "odd prime");
    unit->add_option("--z0", c.z0, "curve parameter residue");
    unit->add_option("--s", c.s, "p-adic precision exponent");
    unit->add_option("--lift", c.lift, "lift of z0: teichmuller or integer");
    add_common(unit);

    auto* bench = app.add_subcommand("bench", "per-step statistics of the extraction engine");
    add_quiver(bench);
    bench->add_option("--s", c.s, "level");
    bench->add_flag("--csv", c.csv, "emit CSV instead of JSON");
    add_common(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    if (!config_path.empty()) apply_config_file(config_path, *sub, c);

    if (c.command == "bench") return cmd_bench(c);

    qdwork::TruncationStore store(extract_options(c), cache_dir(c));
    store.on_warning = [](const std::string& m) { std::cerr << "qdwork: warning: " << m << '\n'; };
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    if (c.command == "compute") out = cmd_compute(c, store);
    else if (c.command == "verify") out = cmd_verify(c, store);
    else out = cmd_unit_root(c, store);

    ojson env;
    env["artifact"] = "qdwork";
    env["version"] = qdwork::kVersion;
    env["schema"] = kSchema;
    env["command"] = c.command;
    env["config"] = config_echo(c);
    env["results"] = std::move(out.results);
    env["all_hold"] = out.all_hold;
    if (!c.no_run_info)
        env["run"] = {{"threads", std::max(1u, c.threads)},
                      {"cache_hits", store.disk_hits()},
                      {"seconds", since(t0)},
                      {"timings", std::move(out.timings)}};
    emit(c, env.dump(c.pretty ? 2 : -1) + "\n");
    return out.all_hold ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "qdwork: " << qdwork::errc_name(e.code()) << ": " << e.what() << '\n';
        return qdwork::exit_status(e.code());
    } catch (const std::bad_alloc&) {
        std::cerr << "qdwork: out of memory\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "qdwork: internal error: " << e.what() << '\n';
        return 4;
    }
}

// Copyright 2026 The nonloc Authors
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


// Command-line front end. Exit codes: 0 affirmative, 1 negative, 2 usage or
// I/O error.

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "nonloc/error.h"
#include "nonloc/io.h"

using namespace nonloc;
using io::json;

namespace {

constexpr int kAffirmative = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sha256_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    char buf[1 << 14];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; i++) {
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    }
    return hex.str();
}

// Collects what a command read and wrote, then drops <output>.manifest.json
// next to every output file.
struct Manifest {
    std::string command;
    json params = json::object();
    std::optional<std::uint64_t> seed;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    void write() const {
        json in = json::object(), out = json::object();
        for (const auto &p : inputs) {
            in[p] = sha256_file(p);
        }
        for (const auto &p : outputs) {
            out[p] = sha256_file(p);
        }
        json m = {{"command", command},
                  {"parameters", params},
                  {"seed", seed ? json(*seed) : json(nullptr)},
                  {"tool_version", NONLOC_VERSION},
                  {"inputs", in},
                  {"outputs", out}};
        for (const auto &p : outputs) {
            std::ofstream f(p + ".manifest.json");
            if (!f) {
                throw UsageError("cannot write manifest for " + p);
            }
            f << m.dump(2) << '\n';
        }
    }
};

std::ofstream open_out(const std::string &path) {
    std::ofstream f(path);
    if (!f) {
        throw UsageError("cannot write " + path);
    }
    return f;
}

void write_json(const std::string &path, const json &j) {
    auto f = open_out(path);
    f << j.dump(2) << '\n';
}

MeasurementSettings load_settings(const std::string &path) {
    json j = io::read_json_file(path);
    // A symmetric-solver output carries its settings as a nested record.
    if (j.is_object() && j.contains("settings") && j["settings"].is_object()) {
        return io::settings_from_json(j["settings"]);
    }
    return io::settings_from_json(j);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &flag) {
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("NONLOC_SEED")) {
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size()) {
                throw std::invalid_argument("trailing characters");
            }
            return v;
        } catch (const std::exception &) {
            throw UsageError(std::string("NONLOC_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

struct TableSource {
    std::string distribution, state, settings;

    void attach(CLI::App *cmd) {
        cmd->add_option("--distribution,-d", distribution, "Distribution JSON file");
        cmd->add_option("--state", state, "State JSON file");
        cmd->add_option("--settings", settings, "Settings JSON file");
    }

    JointDistribution load(Manifest &m) const {
        if (!distribution.empty()) {
            if (!state.empty() || !settings.empty()) {
                throw UsageError("give either --distribution or --state with --settings");
            }
            m.inputs.push_back(distribution);
            return io::distribution_from_json(io::read_json_file(distribution));
        }
        if (state.empty() || settings.empty()) {
            throw UsageError("give either --distribution or --state with --settings");
        }
        m.inputs.push_back(state);
        m.inputs.push_back(settings);
        PureState psi = io::state_from_json(io::read_json_file(state));
        return born_distribution(psi, load_settings(settings));
    }
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Hardy-type tests of genuine multipartite nonlocality"};
    app.require_subcommand(1);
    app.set_version_flag("--version", NONLOC_VERSION);
    Manifest manifest;
    std::function<int()> run;

    // distribution
    auto *dist = app.add_subcommand("distribution", "Born table of a state under settings");
    std::string dist_state, dist_settings, dist_out, dist_csv;
    dist->add_option("--state", dist_state, "State JSON file")->required();
    dist->add_option("--settings", dist_settings, "Settings JSON file")->required();
    dist->add_option("--out,-o", dist_out, "Output distribution JSON")->required();
    dist->add_option("--csv", dist_csv, "Also write the table as CSV");
    dist->callback([&] {
        run = [&] {
            manifest.command = "distribution";
            manifest.params = {{"state", dist_state}, {"settings", dist_settings}, {"out", dist_out}};
            manifest.inputs = {dist_state, dist_settings};
            PureState psi = io::state_from_json(io::read_json_file(dist_state));
            JointDistribution d = born_distribution(psi, load_settings(dist_settings));
            write_json(dist_out, io::distribution_to_json(d));
            manifest.outputs.push_back(dist_out);
            if (!dist_csv.empty()) {
                auto f = open_out(dist_csv);
                io::write_distribution_csv(f, d);
                f.close();
                manifest.outputs.push_back(dist_csv);
            }
            manifest.write();
            return kAffirmative;
        };
    });

    // hardy
    auto *hardy = app.add_subcommand("hardy", "Check the Hardy zero and success conditions");
    TableSource hardy_src;
    hardy_src.attach(hardy);
    int pivot = 1;
    HardyTolerances tol;
    bool standard = false;
    std::string hardy_out;
    hardy->add_option("--pivot", pivot, "Pivot party, 1-based")->default_val(1);
    hardy->add_option("--eps-zero", tol.eps_zero, "Tolerance for the zero conditions")->default_val(tol.eps_zero);
    hardy->add_option("--delta-pos", tol.delta_pos, "Threshold for the success probability")
        ->default_val(tol.delta_pos);
    hardy->add_flag("--standard", standard, "Use the single all-b condition instead of the pivot pairs");
    hardy->add_option("--out,-o", hardy_out, "Also write the report to this file");
    hardy->callback([&] {
        run = [&] {
            manifest.command = "hardy";
            manifest.params = {{"pivot", pivot},
                               {"eps_zero", tol.eps_zero},
                               {"delta_pos", tol.delta_pos},
                               {"standard", standard}};
            JointDistribution d = hardy_src.load(manifest);
            if (pivot < 1 || pivot > d.n()) {
                throw UsageError("--pivot must lie in 1.." + std::to_string(d.n()));
            }
            HardyReport r =
                hardy_conditions(d, pivot - 1, tol, standard ? HardyVariant::Standard : HardyVariant::Genuine);
            json report = io::report_to_json(r, inequality1(d, pivot - 1), inequality2(d));
            std::cout << report.dump(2) << '\n';
            if (!hardy_out.empty()) {
                write_json(hardy_out, report);
                manifest.outputs.push_back(hardy_out);
                manifest.write();
            }
            return r.passed ? kAffirmative : kNegative;
        };
    });

    // symmetric
    auto *sym = app.add_subcommand("symmetric", "Hardy settings for a permutation-symmetric state");
    std::string sym_state, sym_x, sym_out, sym_sweep;
    std::vector<double> sym_ghz;
    int sym_w = 0;
    auto *opt_state = sym->add_option("--state", sym_state, "State JSON file (symmetric or full amplitudes)");
    auto *opt_ghz = sym->add_option("--ghz", sym_ghz, "GHZ family: n theta")->expected(2);
    auto *opt_w = sym->add_option("--w", sym_w, "W state on n parties");
    opt_state->excludes(opt_ghz)->excludes(opt_w);
    opt_ghz->excludes(opt_w);
    sym->add_option("--x", sym_x, "Explicit free parameter as re,im");
    sym->add_option("--out,-o", sym_out, "Write the solution JSON here");
    sym->add_option("--sweep", sym_sweep, "Write a CSV of p_success over a |x| grid");
    sym->callback([&] {
        run = [&]() -> int {
            manifest.command = "symmetric";
            std::string id;
            std::optional<SymmetricState> s;
            if (!sym_state.empty()) {
                manifest.inputs.push_back(sym_state);
                json j = io::read_json_file(sym_state);
                s = j.contains("h") ? io::symmetric_from_json(j) : symmetric_from_pure(io::state_from_json(j));
                id = sym_state;
                manifest.params["state"] = sym_state;
            } else if (!sym_ghz.empty()) {
                double nd = sym_ghz[0];
                if (nd != std::floor(nd)) {
                    throw UsageError("--ghz expects an integer party count");
                }
                s = SymmetricState::ghz(static_cast<int>(nd), sym_ghz[1]);
                id = io::json(sym_ghz[1]).dump();
                manifest.params["ghz"] = sym_ghz;
            } else if (sym_w > 0) {
                s = SymmetricState::w(sym_w);
                id = "w";
                manifest.params["w"] = sym_w;
            } else {
                throw UsageError("give one of --state, --ghz or --w");
            }
            manifest.params["x"] = sym_x.empty() ? json(nullptr) : json(sym_x);

            SymmetricSolution sol = [&] {
                if (sym_x.empty()) {
                    return solve_auto(*s);
                }
                return solve_settings(*s, io::parse_complex_flag(sym_x));
            }();
            json j = io::solution_to_json(sol);
            std::cout << j.dump(2) << '\n';
            if (!sym_out.empty()) {
                write_json(sym_out, j);
                manifest.outputs.push_back(sym_out);
            }
            if (!sym_sweep.empty()) {
                // Sweep in the frame where the solver ran, along the phase it used.
                MagicBasis mb = sym_x.empty() ? to_magic_basis(*s) : MagicBasis{*s, Mat2::Identity()};
                double w = sym_x.empty() ? std::arg(sol.x) : std::arg(io::parse_complex_flag(sym_x));
                if (sym_x.empty() && std::abs(sol.x) == 0) {
                    w = phase_pick(mb.state);
                }
                auto f = open_out(sym_sweep);
                f << "n,theta_or_state_id,abs_x,arg_x,p_success\n";
                for (int i = 1; i <= 60; i++) {
                    double r = 0.05 * i;
                    try {
                        SymmetricSolution pt = solve_settings(mb.state, std::polar(r, w));
                        char line[160];
                        std::snprintf(line, sizeof line, ",%.17g,%.17g,%.17g\n", r, w, pt.p_success);
                        f << s->n() << ',' << id << line;
                    } catch (const DegenerateX &) {
                    } catch (const SingularDenominator &) {
                    }
                }
                f.close();
                manifest.outputs.push_back(sym_sweep);
            }
            manifest.write();
            return kAffirmative;
        };
    });

    // classify
    auto *cls = app.add_subcommand("classify", "Local / bilocal / genuinely nonlocal for three parties");
    TableSource cls_src;
    cls_src.attach(cls);
    std::string cls_out;
    cls->add_option("--out,-o", cls_out, "Also write the result to this file");
    cls->callback([&] {
        run = [&] {
            manifest.command = "classify";
            JointDistribution d = cls_src.load(manifest);
            if (d.n() != 3) {
                throw UsageError("classify needs a three-party table, got n = " + std::to_string(d.n()));
            }
            ClassifyResult c = classify(d);
            json j = {{"label", to_string(c.label)}, {"local", io::lp_outcome_to_json(c.local)}};
            j["bilocal"] = c.bilocal ? io::lp_outcome_to_json(*c.bilocal) : json(nullptr);
            std::cout << j.dump(2) << '\n';
            if (!cls_out.empty()) {
                write_json(cls_out, j);
                manifest.outputs.push_back(cls_out);
                manifest.write();
            }
            return kAffirmative;
        };
    });

    // experiment
    auto *exp = app.add_subcommand("experiment", "Hardy search over Haar-random entangled states");
    int exp_n = 3, exp_count = 100, exp_lp = 20, exp_jobs = 1;
    std::optional<std::uint64_t> exp_seed;
    std::string exp_out, exp_summary;
    SearchConfig cfg;
    exp->add_option("--n", exp_n, "Party count (3 or 4)")->required();
    exp->add_option("--count", exp_count, "Number of states")->required();
    exp->add_option("--seed", exp_seed, "Master seed (falls back to NONLOC_SEED, then 0)");
    exp->add_option("--lp-subsample", exp_lp, "LP-check this many passes for n = 3")->default_val(20);
    exp->add_option("--jobs", exp_jobs, "Worker threads")->default_val(1);
    exp->add_option("--multistarts", cfg.multistarts, "Search restarts per state")->default_val(cfg.multistarts);
    exp->add_option("--max-iters", cfg.max_iters, "Nelder-Mead iterations per start")->default_val(cfg.max_iters);
    exp->add_option("--out,-o", exp_out, "Per-state CSV");
    exp->add_option("--summary", exp_summary, "Summary JSON");
    exp->callback([&] {
        run = [&] {
            manifest.command = "experiment";
            std::uint64_t seed = resolve_seed(exp_seed);
            manifest.seed = seed;
            manifest.params = {{"n", exp_n},
                               {"count", exp_count},
                               {"lp_subsample", exp_lp},
                               {"jobs", exp_jobs},
                               {"multistarts", cfg.multistarts},
                               {"max_iters", cfg.max_iters},
                               {"mu", cfg.mu},
                               {"eps_zero", cfg.eps_zero},
                               {"delta_pos", cfg.delta_pos}};
            if (exp_n != 3 && exp_n != 4) {
                throw UsageError("--n must be 3 or 4");
            }
            cfg.seed = seed;
            ExperimentSummary summary = random_experiment(exp_n, exp_count, seed, cfg, exp_lp, exp_jobs);
            json j = io::experiment_summary_to_json(summary);
            j["seed"] = seed;
            std::cout << j.dump(2) << '\n';
            for (const auto &r : summary.records) {
                if (!r.passed) {
                    std::cerr << "state " << r.index << " failed, sub_seed " << r.sub_seed << '\n';
                }
            }
            if (!exp_out.empty()) {
                auto f = open_out(exp_out);
                io::write_experiment_csv(f, summary);
                f.close();
                manifest.outputs.push_back(exp_out);
            }
            if (!exp_summary.empty()) {
                write_json(exp_summary, j);
                manifest.outputs.push_back(exp_summary);
            }
            manifest.write();
            return summary.failed == 0 ? kAffirmative : kNegative;
        };
    });

    // vertices
    auto *vert = app.add_subcommand("vertices", "Dump a vertex set");
    std::string model = "bilocal-ns", vert_out;
    int vert_n = 3;
    vert->add_option("--model", model, "fully-local, ns-bipartite or bilocal-ns")
        ->check(CLI::IsMember({"fully-local", "ns-bipartite", "bilocal-ns"}))
        ->default_val(model);
    vert->add_option("--n", vert_n, "Party count for fully-local")->default_val(3);
    vert->add_option("--out,-o", vert_out, "Output JSON")->required();
    vert->callback([&] {
        run = [&] {
            manifest.command = "vertices";
            manifest.params = {{"model", model}, {"n", vert_n}};
            ModelVertexSet vs = model == "fully-local"    ? deterministic_local_vertices(vert_n)
                                : model == "ns-bipartite" ? ns_bipartite_vertex_set()
                                                          : bilocal_ns_vertices();
            write_json(vert_out, io::vertex_set_to_json(vs));
            manifest.outputs.push_back(vert_out);
            manifest.write();
            return kAffirmative;
        };
    });

    // verify-appendix
    auto *va = app.add_subcommand("verify-appendix", "Check both Hardy inequalities on every bilocal vertex");
    double va_tol = 1e-12;
    va->add_option("--tol", va_tol, "Allowed positive slack")->default_val(va_tol);
    va->callback([&] {
        run = [&] {
            ModelVertexSet vs = bilocal_ns_vertices();
            double worst1 = -std::numeric_limits<double>::infinity();
            double worst2 = worst1;
            for (const auto &col : vs.columns) {
                for (int p = 0; p < vs.n; p++) {
                    worst1 = std::max(worst1, inequality1(col, p));
                }
                worst2 = std::max(worst2, inequality2(col));
            }
            bool ok = worst1 <= va_tol && worst2 <= va_tol;
            json j = {{"model", vs.model},
                      {"vertices", vs.columns.size()},
                      {"max_ineq1", worst1},
                      {"max_ineq2", worst2},
                      {"passed", ok}};
            std::cout << j.dump(2) << '\n';
            return ok ? kAffirmative : kNegative;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kAffirmative : kUsage;
    }
    try {
        return run();
    } catch (const DegenerateX &e) {
        std::cerr << e.what() << '\n';
        return kNegative;
    } catch (const NotEntangled &e) {
        std::cerr << e.what() << '\n';
        return kNegative;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}

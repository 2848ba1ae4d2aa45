/*
 * Copyright 2026 The combsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "combsim/cegar.hpp"
#include "combsim/cli.hpp"
#include "combsim/io.hpp"
#include "combsim/logic.hpp"
#include "combsim/random.hpp"
#include "combsim/relations.hpp"

namespace combsim {

namespace {

using json = nlohmann::json;

StateId state_of(const Game &g, const std::string &id, const char *what)
{
    auto s = g.find_state(id);
    if (!s) throw Error(ErrorKind::DanglingReference, std::string(what) + " state " + id);
    return *s;
}

int cmd_check(const std::string &left, const std::string &right, const std::string &relation, bool dump, std::ostream &out)
{
    Game g = as_game(load_model(left));
    Game h = as_game(load_model(right));
    RelationMatrix rel;
    bool holds;
    if (relation == "combined") {
        if (dump) {
            rel = max_combined_simulation(g, h);
            holds = rel.contains(g.initial(), h.initial());
        } else {
            holds = combined_simulates(g, h).holds;
        }
    } else {
        rel = relation == "sim" ? max_simulation(g, h) : max_alternating_simulation(g, h);
        holds = rel.contains(g.initial(), h.initial());
    }
    out << (holds ? "yes" : "no") << "\n";
    if (dump) {
        json pairs = json::array();
        for (auto &[s, t] : rel.pairs()) pairs.push_back({g.state_name(s), h.state_name(t)});
        out << json{{"relation", relation}, {"pairs", pairs}}.dump() << "\n";
    }
    return holds ? kExitHolds : kExitRefuted;
}

int cmd_mono(const std::string &c1, const std::string &c2, const std::string &spec, bool skip, std::ostream &out)
{
    RelationCheck r = monolithic_check(as_game(load_model(c1)), as_game(load_model(c2)), as_game(load_model(spec)), skip);
    json j = {{"verdict", r.holds ? "holds" : "refuted"}, {"arena_nodes", r.nodes}};
    out << j.dump() << "\n";
    return r.holds ? kExitHolds : kExitRefuted;
}

int cmd_ag(const std::string &c1, const std::string &c2, const std::string &spec, const CegarOptions &opt, const std::string &cex_path,
           bool timing, std::ostream &out)
{
    CegarResult r = ag_cegar(as_game(load_model(c1)), as_game(load_model(c2)), as_game(load_model(spec)), opt);
    out << stats_json(r, timing) << "\n";
    if (!cex_path.empty()) {
        std::ofstream f(cex_path, std::ios::binary);
        if (!f) throw SchemaError(cex_path, "cannot write file");
        f << cex_json(r);
    }
    switch (r.verdict) {
    case Verdict::Holds: return kExitHolds;
    case Verdict::Refuted: return kExitRefuted;
    case Verdict::Exhausted: return kExitExhausted;
    }
    return kExitInternal;
}

int cmd_eval(const std::string &model, const std::string &text, std::ostream &out)
{
    Model m = load_model(model);
    Formula f = parse_formula(text);
    json names = json::array();
    if (auto g = std::get_if<Game>(&m)) {
        for (uint32_t s : eval_atl(*g, f).to_vector()) names.push_back(g->state_name(s));
    } else {
        const Mdp &mdp = std::get<Mdp>(m);
        for (uint32_t s : eval_qctl(mdp, f).to_vector()) names.push_back(mdp.state_name(s));
    }
    out << json{{"states", names}}.dump() << "\n";
    return kExitHolds;
}

int cmd_distinguish(const std::string &left, const std::string &right, const std::string &pair, std::ostream &out)
{
    Game g = as_game(load_model(left));
    Game h = as_game(load_model(right));
    auto comma = pair.find(',');
    if (comma == std::string::npos) throw SchemaError("--pair", "expected s,t");
    StateId s = state_of(g, pair.substr(0, comma), "left");
    StateId t = state_of(h, pair.substr(comma + 1), "right");
    try {
        out << to_string(distinguishing_formula(g, h, s, t)) << "\n";
        return kExitHolds;
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::NotDistinguishable) throw;
        out << "not distinguishable\n";
        return kExitRefuted;
    }
}

struct BenchRow {
    size_t g1 = 0, g2 = 0, spec = 0;
    bool mono = false;
    CegarResult ag;
};

size_t worker_count(size_t jobs)
{
    size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("COMBSIM_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = (size_t)v;
    }
    return std::max<size_t>(1, std::min(n, jobs));
}

int cmd_bench(uint64_t seed, size_t count, size_t max_states, bool timing, std::ostream &out)
{
    std::vector<BenchRow> rows(count);
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next++; i < count; i = next++) {
            Rng rng(seed + i);
            Triple t = random_triple(rng, max_states);
            BenchRow &row = rows[i];
            row.g1 = t.g1.num_states();
            row.g2 = t.g2.num_states();
            row.spec = t.spec.num_states();
            row.mono = monolithic_check(t.g1, t.g2, t.spec).holds;
            row.ag = ag_cegar(t.g1, t.g2, t.spec);
        }
    };
    std::vector<std::thread> pool;
    for (size_t k = 1; k < worker_count(count); k++) pool.emplace_back(work);
    work();
    for (auto &th : pool) th.join();

    size_t agree = 0;
    out << "  # |g1| |g2| |spec|    mono        ag  iters blocks" << (timing ? "     ms" : "") << "\n";
    for (size_t i = 0; i < count; i++) {
        auto &r = rows[i];
        bool same = (r.ag.verdict == Verdict::Holds) == r.mono && r.ag.verdict != Verdict::Exhausted;
        agree += same;
        out << std::setw(3) << i << std::setw(5) << r.g1 << std::setw(5) << r.g2 << std::setw(7) << r.spec << std::setw(8)
            << (r.mono ? "holds" : "refuted") << std::setw(10) << verdict_name(r.ag.verdict) << std::setw(7) << r.ag.iterations
            << std::setw(7) << r.ag.partition_size;
        if (timing) out << std::setw(7) << std::fixed << std::setprecision(1) << r.ag.time_ms;
        out << (same ? "" : "  MISMATCH") << "\n";
    }
    out << "agreement: " << agree << "/" << count << "\n";
    return agree == count ? kExitHolds : kExitRefuted;
}

}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Combined simulation checking and compositional verification of games and MDPs", "combsim"};
    app.require_subcommand(1);

    std::string left, right, relation = "combined", pair, c1, c2, spec, model, formula, cex_path;
    bool dump = false, improved = false, skip = false, timing = false;
    size_t max_iters = 0, count = 100, max_states = 6;
    uint64_t seed = 1;

    auto *check = app.add_subcommand("check", "decide whether --right simulates --left at the initial states");
    check->add_option("--left", left, "model file")->required();
    check->add_option("--right", right, "model file")->required();
    check->add_option("--relation", relation, "sim, alt or combined")->check(CLI::IsMember({"sim", "alt", "combined"}));
    check->add_flag("--dump-relation", dump, "print the largest relation");

    auto *mono = app.add_subcommand("mono", "check --spec against c1 || c2 without abstraction");
    mono->add_option("--c1", c1)->required();
    mono->add_option("--c2", c2)->required();
    mono->add_option("--spec", spec)->required();
    mono->add_flag("--skip-step-opt", skip, "collapse forced gadget stages");

    auto *ag = app.add_subcommand("ag", "check --spec against c1 || c2 by abstraction refinement of c2");
    ag->add_option("--c1", c1)->required();
    ag->add_option("--c2", c2)->required();
    ag->add_option("--spec", spec)->required();
    ag->add_option("--max-iters", max_iters, "stop after this many premise checks");
    ag->add_option("--emit-cex", cex_path, "write the counterexamples to this file");
    ag->add_flag("--improved-refine", improved, "also split states outside the concretized sets");
    ag->add_flag("--skip-step-opt", skip, "collapse forced gadget stages");
    ag->add_flag("--timing", timing, "include wall time in the statistics");

    auto *eval = app.add_subcommand("eval", "states satisfying a formula");
    eval->add_option("--model", model)->required();
    eval->add_option("--formula", formula)->required();

    auto *dist = app.add_subcommand("distinguish", "formula separating a pair of states of two alternating games");
    dist->add_option("--left", left)->required();
    dist->add_option("--right", right)->required();
    dist->add_option("--pair", pair, "s,t")->required();

    auto *bench = app.add_subcommand("bench", "compare ag and mono on random instances");
    bench->add_option("--seed", seed);
    bench->add_option("--count", count);
    bench->add_option("--max-states", max_states);
    bench->add_flag("--timing", timing, "print wall times");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitHolds;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(left, right, relation, dump, out);
        if (mono->parsed()) return cmd_mono(c1, c2, spec, skip, out);
        if (ag->parsed()) {
            CegarOptions opt;
            if (max_iters > 0) opt.max_iters = max_iters;
            opt.improved_refine = improved;
            opt.skip_step = skip;
            opt.keep_cex = !cex_path.empty();
            return cmd_ag(c1, c2, spec, opt, cex_path, timing, out);
        }
        if (eval->parsed()) return cmd_eval(model, formula, out);
        if (dist->parsed()) return cmd_distinguish(left, right, pair, out);
        if (bench->parsed()) return cmd_bench(seed, count, max_states, timing, out);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        if (e.kind() == ErrorKind::NotRefinable || e.kind() == ErrorKind::MalformedDag) return kExitInternal;
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

}

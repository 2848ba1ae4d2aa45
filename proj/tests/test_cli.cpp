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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "combsim/cli.hpp"
#include "combsim/io.hpp"
#include "combsim/random.hpp"

using namespace combsim;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "combsim");
    std::vector<const char *> argv;
    for (auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli((int)argv.size(), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const char *name)
{
    return std::string(COMBSIM_FIXTURES) + "/" + name;
}

// scratch directory with a random triple written out
struct Workspace {
    fs::path dir;

    explicit Workspace(const std::string &tag) : dir(fs::temp_directory_path() / ("combsim_cli_" + tag))
    {
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }

    std::string write(const std::string &name, const std::string &text)
    {
        std::ofstream f(dir / name, std::ios::binary);
        f << text;
        return (dir / name).string();
    }
    std::string read(const std::string &name)
    {
        std::ifstream f(dir / name, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
};

}

TEST_SUITE("cli") {

TEST_CASE("check")
{
    std::string l = fixture("strict_left.json"), r = fixture("strict_right.json");
    Run self = run({"check", "--left", l, "--right", l, "--relation", "combined"});
    CHECK(self.code == kExitHolds);
    CHECK(self.out == "yes\n");
    CHECK(run({"check", "--left", l, "--right", r, "--relation", "sim"}).code == kExitHolds);
    CHECK(run({"check", "--left", l, "--right", r, "--relation", "alt"}).code == kExitHolds);
    Run comb = run({"check", "--left", l, "--right", r});
    CHECK(comb.code == kExitRefuted);
    CHECK(comb.out == "no\n");
    Run dump = run({"check", "--left", l, "--right", r, "--relation", "sim", "--dump-relation"});
    CHECK(dump.out.rfind("yes\n{\"pairs\":[[\"s0\",\"s0\"]", 0) == 0);
}

TEST_CASE("usage and input errors")
{
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"check", "--left", "x.json"}).code == kExitUsage);
    CHECK(run({"check", "--left", "a", "--right", "b", "--relation", "bisim"}).code == kExitUsage);
    Run missing = run({"check", "--left", "/nonexistent/a.json", "--right", "/nonexistent/b.json"});
    CHECK(missing.code == kExitUsage);
    CHECK(missing.err.find("cannot open") != std::string::npos);
    CHECK(run({"check", "--left", fixture("syntax_error.json"), "--right", fixture("strict_left.json")}).code == kExitUsage);
    CHECK(run({"eval", "--model", fixture("strict_left.json"), "--formula", "<<1>>X ("}).code == kExitUsage);
    CHECK(run({"eval", "--model", fixture("strict_left.json"), "--formula", "<<1>>X nope"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitHolds);
}

TEST_CASE("eval")
{
    Run all = run({"eval", "--model", fixture("example1_mdp.json"), "--formula", "<Almost>X true"});
    CHECK(all.code == kExitHolds);
    CHECK(all.out == "{\"states\":[\"s'0\",\"s'1\",\"s'2\",\"s'3\",\"s'4\"]}\n");
    Run g = run({"eval", "--model", fixture("strict_right.json"), "--formula", "p"});
    CHECK(g.out == "{\"states\":[\"s1\"]}\n");
}

TEST_CASE("distinguish")
{
    Workspace ws("dist");
    std::string a = ws.write("a.json", R"({"kind": "game", "initial": "x",
        "states": [{"id": "x", "labels": ["turn"]}, {"id": "y", "labels": ["p"]}],
        "transitions": [{"from": "x", "action": "go", "to": ["y"]}, {"from": "y", "action": "go", "to": ["y"]}]})");
    std::string b = ws.write("b.json", R"({"kind": "game", "initial": "x", "propositions": ["p"],
        "states": [{"id": "x", "labels": ["turn"]}, {"id": "y"}],
        "transitions": [{"from": "x", "action": "go", "to": ["y"]}, {"from": "y", "action": "go", "to": ["y"]}]})");
    Run d = run({"distinguish", "--left", a, "--right", b, "--pair", "x,x"});
    CHECK(d.code == kExitHolds);
    CHECK(d.out == "<<1>>X p\n");
    Run same = run({"distinguish", "--left", a, "--right", a, "--pair", "x,x"});
    CHECK(same.code == kExitRefuted);
    CHECK(same.out == "not distinguishable\n");
    CHECK(run({"distinguish", "--left", a, "--right", b, "--pair", "x"}).code == kExitUsage);
    CHECK(run({"distinguish", "--left", a, "--right", b, "--pair", "x,zz"}).code == kExitUsage);
}

TEST_CASE("ag and mono")
{
    Workspace ws("ag");
    Rng rng(2024);
    size_t refuted = 0, held = 0;
    for (int i = 0; i < 40; i++) {
        Triple t = random_triple(rng, 5);
        std::string c1 = ws.write("c1.json", serialize_game(t.g1));
        std::string c2 = ws.write("c2.json", serialize_game(t.g2));
        std::string sp = ws.write("spec.json", serialize_game(t.spec));
        std::string cex = (ws.dir / "cex.json").string();
        Run mono = run({"mono", "--c1", c1, "--c2", c2, "--spec", sp});
        Run ag = run({"ag", "--c1", c1, "--c2", c2, "--spec", sp, "--emit-cex", cex});
        CHECK(ag.code == mono.code);
        CHECK(ag.out.find(mono.code == 0 ? "\"verdict\":\"holds\"" : "\"verdict\":\"refuted\"") != std::string::npos);
        CHECK(ag.out.find("time_ms") == std::string::npos);
        std::string first = ws.read("cex.json");
        Run again = run({"ag", "--c1", c1, "--c2", c2, "--spec", sp, "--emit-cex", cex});
        CHECK(again.out == ag.out);
        CHECK(ws.read("cex.json") == first);
        CHECK(run({"ag", "--c1", c1, "--c2", c2, "--spec", sp, "--skip-step-opt", "--improved-refine"}).code == mono.code);
        CHECK(run({"mono", "--c1", c1, "--c2", c2, "--spec", sp, "--skip-step-opt"}).code == mono.code);
        CHECK(run({"ag", "--c1", c1, "--c2", c2, "--spec", sp, "--timing"}).out.find("time_ms") != std::string::npos);
        if (ag.out.find("\"iterations\":1,") == std::string::npos) {
            CHECK(run({"ag", "--c1", c1, "--c2", c2, "--spec", sp, "--max-iters", "1"}).code == kExitExhausted);
        }
        (mono.code == 0 ? held : refuted)++;
    }
    CHECK(held > 0);
    CHECK(refuted > 0);
}

TEST_CASE("bench output does not depend on the worker count")
{
    setenv("COMBSIM_THREADS", "1", 1);
    Run one = run({"bench", "--seed", "3", "--count", "12", "--max-states", "5"});
    setenv("COMBSIM_THREADS", "4", 1);
    Run four = run({"bench", "--seed", "3", "--count", "12", "--max-states", "5"});
    unsetenv("COMBSIM_THREADS");
    CHECK(one.code == kExitHolds);
    CHECK(one.out == four.out);
    CHECK(one.out.find("agreement: 12/12") != std::string::npos);
}

}

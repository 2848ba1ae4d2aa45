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

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "combsim/io.hpp"

namespace combsim {

using json = nlohmann::json;

namespace {

const json &field(const json &obj, const char *name, const std::string &where)
{
    if (!obj.is_object()) throw SchemaError(where, "expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) throw SchemaError(where + "." + name, "missing");
    return *it;
}

std::string str(const json &v, const std::string &where)
{
    if (!v.is_string()) throw SchemaError(where, "expected a string");
    return v.get<std::string>();
}

std::vector<std::string> strings(const json &v, const std::string &where)
{
    if (!v.is_array()) throw SchemaError(where, "expected an array of strings");
    std::vector<std::string> r;
    for (size_t i = 0; i < v.size(); i++) r.push_back(str(v[i], where + "[" + std::to_string(i) + "]"));
    return r;
}

std::vector<std::string> optional_strings(const json &obj, const char *name, const std::string &where)
{
    auto it = obj.find(name);
    if (it == obj.end()) return {};
    return strings(*it, where + "." + name);
}

Rational probability(const json &v, const std::string &where)
{
    try {
        if (v.is_number_unsigned()) return Rational::make(v.get<int64_t>(), 1);
        return Rational::parse(str(v, where));
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::InvalidDistribution) throw SchemaError(where, e.what());
        throw;
    }
}

Game read_game(const json &root)
{
    RawGame raw;
    const json &states = field(root, "states", "model");
    if (!states.is_array()) throw SchemaError("model.states", "expected an array");
    for (size_t i = 0; i < states.size(); i++) {
        std::string w = "model.states[" + std::to_string(i) + "]";
        raw.states.push_back({str(field(states[i], "id", w), w + ".id"), optional_strings(states[i], "labels", w)});
    }
    const json &trans = field(root, "transitions", "model");
    if (!trans.is_array()) throw SchemaError("model.transitions", "expected an array");
    for (size_t i = 0; i < trans.size(); i++) {
        std::string w = "model.transitions[" + std::to_string(i) + "]";
        raw.transitions.push_back({str(field(trans[i], "from", w), w + ".from"), str(field(trans[i], "action", w), w + ".action"),
                                   strings(field(trans[i], "to", w), w + ".to")});
    }
    raw.initial = str(field(root, "initial", "model"), "model.initial");
    raw.actions = optional_strings(root, "actions", "model");
    raw.propositions = optional_strings(root, "propositions", "model");
    return validate_game(raw);
}

Mdp read_mdp(const json &root)
{
    RawMdp raw;
    const json &states = field(root, "states", "model");
    if (!states.is_array()) throw SchemaError("model.states", "expected an array");
    for (size_t i = 0; i < states.size(); i++) {
        std::string w = "model.states[" + std::to_string(i) + "]";
        std::string role = str(field(states[i], "role", w), w + ".role");
        if (role != "player1" && role != "prob") throw SchemaError(w + ".role", "expected \"player1\" or \"prob\"");
        raw.states.push_back({str(field(states[i], "id", w), w + ".id"), optional_strings(states[i], "labels", w),
                              role == "player1" ? MdpRole::Player1 : MdpRole::Prob});
    }
    const json &trans = field(root, "transitions", "model");
    if (!trans.is_array()) throw SchemaError("model.transitions", "expected an array");
    for (size_t i = 0; i < trans.size(); i++) {
        std::string w = "model.transitions[" + std::to_string(i) + "]";
        const json &t = trans[i];
        std::string from = str(field(t, "from", w), w + ".from");
        if (t.contains("dist")) {
            const json &d = t["dist"];
            if (!d.is_object()) throw SchemaError(w + ".dist", "expected an object");
            RawMdpDist rd{from, {}};
            for (auto it = d.begin(); it != d.end(); ++it) rd.dist.emplace_back(it.key(), probability(it.value(), w + ".dist." + it.key()));
            raw.dists.push_back(std::move(rd));
        } else {
            raw.moves.push_back({from, str(field(t, "action", w), w + ".action"), str(field(t, "to", w), w + ".to")});
        }
    }
    raw.initial = str(field(root, "initial", "model"), "model.initial");
    raw.actions = optional_strings(root, "actions", "model");
    raw.propositions = optional_strings(root, "propositions", "model");
    try {
        return validate_mdp(raw);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::InvalidDistribution) throw SchemaError("model.transitions.dist", e.what());
        throw;
    }
}

std::pair<size_t, size_t> line_col(std::string_view text, size_t byte)
{
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < byte && i < text.size(); i++) {
        if (text[i] == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
    }
    return {line, col};
}

}

Model parse_model(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        auto [line, col] = line_col(text, e.byte);
        std::string msg = e.what();
        auto pos = msg.rfind(": ");
        throw SyntaxError(line, col, pos == std::string::npos ? msg : msg.substr(pos + 2));
    }
    std::string kind = str(field(root, "kind", "model"), "model.kind");
    if (kind == "game") return read_game(root);
    if (kind == "mdp") return read_mdp(root);
    throw SchemaError("model.kind", "expected \"game\" or \"mdp\"");
}

Model load_model(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError(path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

Game as_game(const Model &m)
{
    if (auto g = std::get_if<Game>(&m)) return *g;
    return mdp_to_game(std::get<Mdp>(m));
}

static json sorted(std::vector<std::string> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

std::string serialize_game(const Game &g)
{
    json root;
    root["kind"] = "game";
    root["actions"] = sorted(g.action_names());
    if (!g.declared_props().empty()) root["propositions"] = sorted(g.declared_props());
    std::vector<StateId> order(g.num_states());
    for (StateId s = 0; s < order.size(); s++) order[s] = s;
    std::sort(order.begin(), order.end(), [&](StateId a, StateId b) { return g.state_name(a) < g.state_name(b); });
    json states = json::array(), trans = json::array();
    for (StateId s : order) {
        states.push_back({{"id", g.state_name(s)}, {"labels", g.labels(s)}});
        std::vector<std::pair<std::string, ActionId>> acts;
        for (ActionId a : g.avail(s)) acts.emplace_back(g.action_name(a), a);
        std::sort(acts.begin(), acts.end());
        for (auto &[name, a] : acts) {
            std::vector<std::string> to;
            for (StateId t : g.delta(s, a)) to.push_back(g.state_name(t));
            trans.push_back({{"from", g.state_name(s)}, {"action", name}, {"to", sorted(to)}});
        }
    }
    root["states"] = std::move(states);
    root["transitions"] = std::move(trans);
    root["initial"] = g.state_name(g.initial());
    return root.dump(2) + "\n";
}

std::string serialize_mdp(const Mdp &m)
{
    json root;
    root["kind"] = "mdp";
    root["actions"] = sorted(m.action_names());
    if (!m.declared_props().empty()) root["propositions"] = sorted(m.declared_props());
    std::vector<StateId> order(m.num_states());
    for (StateId s = 0; s < order.size(); s++) order[s] = s;
    std::sort(order.begin(), order.end(), [&](StateId a, StateId b) { return m.state_name(a) < m.state_name(b); });
    json states = json::array(), trans = json::array();
    for (StateId s : order) {
        bool p1 = m.role(s) == MdpRole::Player1;
        states.push_back({{"id", m.state_name(s)}, {"labels", m.labels(s)}, {"role", p1 ? "player1" : "prob"}});
        if (p1) {
            std::vector<std::pair<std::string, StateId>> acts;
            for (auto &[a, t] : m.moves(s)) acts.emplace_back(m.action_name(a), t);
            std::sort(acts.begin(), acts.end());
            for (auto &[name, t] : acts) trans.push_back({{"from", m.state_name(s)}, {"action", name}, {"to", m.state_name(t)}});
        } else {
            json d = json::object();
            for (auto &[t, pr] : m.distribution(s)) d[m.state_name(t)] = pr.str();
            trans.push_back({{"from", m.state_name(s)}, {"dist", d}});
        }
    }
    root["states"] = std::move(states);
    root["transitions"] = std::move(trans);
    root["initial"] = m.state_name(m.initial());
    return root.dump(2) + "\n";
}

std::string serialize_model(const Model &m)
{
    if (auto g = std::get_if<Game>(&m)) return serialize_game(*g);
    return serialize_mdp(std::get<Mdp>(m));
}

std::string stats_json(const CegarResult &r, bool timing)
{
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["iterations"] = r.iterations;
    j["refinements"] = r.refinements;
    j["partition_size"] = r.partition_size;
    j["peak_arena_nodes"] = r.peak_nodes;
    if (timing) j["time_ms"] = r.time_ms;
    return j.dump();
}

std::string cex_json(const CegarResult &r)
{
    json root;
    root["verdict"] = verdict_name(r.verdict);
    json list = json::array();
    for (auto &rec : r.cex) {
        json nodes = json::array();
        for (size_t i = 0; i < rec.nodes.size(); i++) {
            auto &v = rec.nodes[i];
            json n = {{"id", i}, {"kind", v.kind}, {"left", v.left}, {"right", v.right}, {"rank", v.rank}, {"succ", v.succ}, {"conc", v.conc}};
            if (!v.action.empty()) n["action"] = v.action;
            if (!v.action2.empty()) n["action2"] = v.action2;
            nodes.push_back(std::move(n));
        }
        list.push_back({{"iteration", rec.iteration}, {"partition_size", rec.partition_size}, {"feasible", rec.feasible}, {"nodes", std::move(nodes)}});
    }
    root["counterexamples"] = std::move(list);
    return root.dump(2) + "\n";
}

}

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

#include "combsim/solve.hpp"

namespace combsim {

SolveResult solve_safety(const SafetyInstance &inst)
{
    const Arena &ar = inst.arena;
    const uint32_t n = (uint32_t)ar.num_nodes();
    const uint32_t nm = (uint32_t)ar.num_moves();
    if (inst.bad.size() != n) throw std::logic_error("solve_safety: bad set has wrong size");

    // reverse edges: target -> moves that reach it
    std::vector<uint32_t> owner(nm);
    for (uint32_t v = 0; v < n; v++) {
        for (uint32_t m = ar.moves_begin(v); m < ar.moves_end(v); m++) owner[m] = v;
    }
    std::vector<uint32_t> rev_begin(n + 1, 0);
    for (uint32_t t : ar.targets) rev_begin[t + 1]++;
    for (uint32_t v = 0; v < n; v++) rev_begin[v + 1] += rev_begin[v];
    std::vector<uint32_t> rev(ar.targets.size());
    {
        std::vector<uint32_t> fill(rev_begin.begin(), rev_begin.end() - 1);
        for (uint32_t m = 0; m < nm; m++) {
            for (uint32_t t : ar.move_targets(m)) rev[fill[t]++] = m;
        }
    }

    SolveResult res;
    res.rank.assign(n, kNoRank);
    std::vector<uint32_t> open(n);        // moves not yet forced into the attractor
    std::vector<char> forced(nm, 0);
    std::vector<uint32_t> queue;
    queue.reserve(n);

    for (uint32_t v = 0; v < n; v++) {
        open[v] = ar.moves_end(v) - ar.moves_begin(v);
        if (inst.bad.test(v)) {
            res.rank[v] = 0;
            queue.push_back(v);
        }
    }
    // a node without moves is lost in the first round
    for (uint32_t v = 0; v < n; v++) {
        if (res.rank[v] == kNoRank && open[v] == 0) {
            res.rank[v] = 1;
            queue.push_back(v);
        }
    }
    // FIFO order processes nodes by nondecreasing rank
    for (size_t qi = 0; qi < queue.size(); qi++) {
        uint32_t t = queue[qi];
        for (uint32_t i = rev_begin[t]; i < rev_begin[t + 1]; i++) {
            uint32_t m = rev[i];
            if (forced[m]) continue;
            forced[m] = 1;
            uint32_t v = owner[m];
            if (res.rank[v] != kNoRank) continue;
            if (--open[v] == 0) {
                res.rank[v] = res.rank[t] + 1;
                queue.push_back(v);
            }
        }
    }

    res.adversary_win = StateSet(n);
    res.proponent_win = StateSet(n);
    res.proponent_strategy.assign(n, kNoChoice);
    res.adversary_strategy.assign(nm, kNoChoice);
    for (uint32_t v = 0; v < n; v++) {
        if (res.rank[v] != kNoRank) {
            res.adversary_win.set(v);
            if (inst.bad.test(v)) continue;
            // lowest-index target among those of minimal rank
            for (uint32_t m = ar.moves_begin(v); m < ar.moves_end(v); m++) {
                uint32_t best = kNoChoice;
                for (uint32_t t : ar.move_targets(m)) {
                    if (res.rank[t] == kNoRank) continue;
                    if (best == kNoChoice || res.rank[t] < res.rank[best]) best = t;
                }
                res.adversary_strategy[m] = best;
            }
        } else {
            res.proponent_win.set(v);
            for (uint32_t m = ar.moves_begin(v); m < ar.moves_end(v); m++) {
                if (!forced[m]) {
                    res.proponent_strategy[v] = m;
                    break;
                }
            }
        }
    }
    return res;
}

StateSet pre_exists_forall(const Arena &ar, const StateSet &x)
{
    StateSet r(ar.num_nodes());
    for (uint32_t v = 0; v < ar.num_nodes(); v++) {
        for (uint32_t m = ar.moves_begin(v); m < ar.moves_end(v); m++) {
            bool all = true;
            for (uint32_t t : ar.move_targets(m)) {
                if (!x.test(t)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                r.set(v);
                break;
            }
        }
    }
    return r;
}

StateSet pre_exists_exists(const Arena &ar, const StateSet &x)
{
    StateSet r(ar.num_nodes());
    for (uint32_t v = 0; v < ar.num_nodes(); v++) {
        for (uint32_t m = ar.moves_begin(v); m < ar.moves_end(v) && !r.test(v); m++) {
            for (uint32_t t : ar.move_targets(m)) {
                if (x.test(t)) {
                    r.set(v);
                    break;
                }
            }
        }
    }
    return r;
}

StateSet pre_forall_exists(const Arena &ar, const StateSet &x)
{
    StateSet r(ar.num_nodes());
    for (uint32_t v = 0; v < ar.num_nodes(); v++) {
        bool all = true;
        for (uint32_t m = ar.moves_begin(v); m < ar.moves_end(v) && all; m++) {
            bool some = false;
            for (uint32_t t : ar.move_targets(m)) {
                if (x.test(t)) {
                    some = true;
                    break;
                }
            }
            all = some;
        }
        if (all) r.set(v);
    }
    return r;
}

StateSet pre_forall_forall(const Arena &ar, const StateSet &x)
{
    StateSet r(ar.num_nodes());
    for (uint32_t v = 0; v < ar.num_nodes(); v++) {
        bool all = true;
        for (uint32_t m = ar.moves_begin(v); m < ar.moves_end(v) && all; m++) {
            for (uint32_t t : ar.move_targets(m)) {
                if (!x.test(t)) {
                    all = false;
                    break;
                }
            }
        }
        if (all) r.set(v);
    }
    return r;
}

}

#pragma once

// Reachability over finite state graphs whose states are packed byte strings.
// Neighbor generators are callables `nb(state, visit)` that call
// `visit(const State&) -> bool` for each neighbor in canonical order and stop
// early when visit returns false. Edges are assumed symmetric.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dht/lattice.hpp"

namespace dht {

using State = std::string;

/// Raised when a search exceeds its node budget and no sound answer exists.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

enum class SearchStatus {
    found,            ///< a target was reached
    exhausted,        ///< the whole reachable set was explored without reaching a target
    budget_exceeded,  ///< the node budget ran out first
};

/// Answers for bounded decision procedures.
enum class Verdict {
    yes,               ///< equivalent; a witness is attached
    no_within_bound,   ///< every candidate within the bound was exhausted
    exact_no,          ///< exhaustion that provably extends beyond the bound
    bound_exhausted,   ///< the bound or node budget ran out before a decision
};

const char* to_string(Verdict v);
const char* to_string(SearchStatus s);

struct SearchOptions {
    std::size_t max_frontier = 4'000'000;  ///< maximum number of states visited by one search
};

State pack(const std::vector<PointIndex>& values);
std::vector<PointIndex> unpack(const State& s);

struct PathSearchResult {
    SearchStatus status = SearchStatus::exhausted;
    std::vector<State> path;  ///< from .. target when found
    std::size_t visited = 0;
    int exhausted_side = 1;   ///< which end's component was fully explored
};

/// Shortest path from `from` to any of `targets`, lexicographically least among
/// shortest ones (compared stage by stage). Runs BFS outward from the targets
/// until `from` is reached, then walks greedily back. `on_visit` sees every
/// state discovered.
template <class Neighbors, class OnVisit>
PathSearchResult shortest_path(const State& from, const std::vector<State>& targets, Neighbors&& nb,
                               std::size_t max_nodes, OnVisit&& on_visit)
{
    PathSearchResult result;
    std::unordered_map<State, std::uint32_t> dist;
    std::vector<State> frontier;
    for (const auto& t : targets)
        if (dist.emplace(t, 0).second) {
            frontier.push_back(t);
            on_visit(t);
        }
    bool reached = dist.count(from) != 0;
    bool over_budget = false;
    std::uint32_t depth = 0;
    while (!reached && !frontier.empty() && !over_budget) {
        std::vector<State> next;
        for (const auto& s : frontier) {
            nb(s, [&](const State& n) {
                auto [it, inserted] = dist.emplace(n, depth + 1);
                if (inserted) {
                    on_visit(n);
                    next.push_back(n);
                    if (n == from)
                        reached = true;
                    if (dist.size() > max_nodes)
                        over_budget = true;
                }
                return !over_budget;
            });
            if (over_budget)
                break;
        }
        if (reached)
            break;
        frontier = std::move(next);
        ++depth;
    }
    result.visited = dist.size();
    if (!reached) {
        result.status = over_budget ? SearchStatus::budget_exceeded : SearchStatus::exhausted;
        return result;
    }
    // Layers below dist[from] are complete, so the greedy walk sees every
    // candidate predecessor.
    State cur = from;
    result.path.push_back(cur);
    while (dist.at(cur) > 0) {
        const std::uint32_t want = dist.at(cur) - 1;
        State chosen;
        bool have = false;
        nb(cur, [&](const State& n) {
            auto it = dist.find(n);
            if (it != dist.end() && it->second == want && (!have || n < chosen)) {
                chosen = n;
                have = true;
            }
            return true;
        });
        if (!have)
            throw Error("shortest_path: inconsistent neighbor relation");
        cur = chosen;
        result.path.push_back(cur);
    }
    result.status = SearchStatus::found;
    return result;
}

template <class Neighbors>
PathSearchResult shortest_path(const State& from, const std::vector<State>& targets, Neighbors&& nb,
                               std::size_t max_nodes)
{
    return shortest_path(from, targets, std::forward<Neighbors>(nb), max_nodes, [](const State&) {});
}

struct ReachResult {
    SearchStatus status = SearchStatus::exhausted;  ///< found is never reported here
    std::vector<State> states;                      ///< BFS discovery order, starting with the seed
};

template <class Neighbors>
ReachResult reachable_set(const State& from, Neighbors&& nb, std::size_t max_nodes)
{
    ReachResult r;
    std::unordered_set<State> seen{from};
    r.states.push_back(from);
    bool over = false;
    for (std::size_t head = 0; head < r.states.size() && !over; ++head) {
        const State s = r.states[head];
        nb(s, [&](const State& n) {
            if (seen.insert(n).second) {
                r.states.push_back(n);
                if (seen.size() > max_nodes)
                    over = true;
            }
            return !over;
        });
    }
    r.status = over ? SearchStatus::budget_exceeded : SearchStatus::exhausted;
    return r;
}

/// Best-first search from `from` until some state is one step from a target.
/// Sound for "reachable" answers only; used when exhaustive search is too
/// large. Returns the stage sequence from .. target.
template <class Neighbors, class Heuristic, class Goal>
PathSearchResult guided_search(const State& from, Neighbors&& nb, Heuristic&& h, Goal&& goal, std::size_t max_nodes)
{
    PathSearchResult result;
    struct Entry {
        std::uint64_t cost;
        std::uint64_t order;
        std::uint32_t id;
        bool operator>(const Entry& o) const { return cost != o.cost ? cost > o.cost : order > o.order; }
    };
    std::vector<State> states{from};
    std::vector<std::uint32_t> parent{0};
    std::unordered_map<State, std::uint32_t> ids{{from, 0}};
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    std::uint64_t order = 0;
    open.push({h(from), order++, 0});
    auto finish = [&](std::uint32_t id, const State& target) {
        std::vector<State> rev;
        if (target != states[id])
            rev.push_back(target);
        for (std::uint32_t cur = id;; cur = parent[cur]) {
            rev.push_back(states[cur]);
            if (cur == 0)
                break;
        }
        result.path.assign(rev.rbegin(), rev.rend());
        result.status = SearchStatus::found;
        result.visited = states.size();
    };
    while (!open.empty()) {
        const Entry e = open.top();
        open.pop();
        const State cur = states[e.id];
        State target;
        if (goal(cur, target)) {
            finish(e.id, target);
            return result;
        }
        bool over = false;
        nb(cur, [&](const State& n) {
            auto [it, inserted] = ids.emplace(n, static_cast<std::uint32_t>(states.size()));
            if (inserted) {
                states.push_back(n);
                parent.push_back(e.id);
                open.push({h(n), order++, it->second});
                if (states.size() > max_nodes)
                    over = true;
            }
            return !over;
        });
        if (over) {
            result.status = SearchStatus::budget_exceeded;
            result.visited = states.size();
            return result;
        }
    }
    result.status = SearchStatus::exhausted;
    result.visited = states.size();
    return result;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        if (rank_[a] < rank_[b])
            std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b])
            ++rank_[a];
        return true;
    }

    std::size_t size() const noexcept { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
};

}  // namespace dht

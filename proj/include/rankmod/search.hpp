#pragma once

#include <cstdlib>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rankmod/permutation.hpp"
#include "rankmod/transitions.hpp"

namespace rankmod {

// Deterministic backtracking searches over the directed graph on A_k whose
// edges are the parity-preserving push-to-the-top transitions t_{^j}, j odd.
// Branching is lexicographic by transition index (smallest first), so results
// are reproducible.  Budgets bound the number of node expansions.

inline bool search_budget_configured() {
    const char* env = std::getenv("RANKMOD_SEARCH_BUDGET");
    return env && *env;
}

inline uint64_t default_search_budget() {
    if (const char* env = std::getenv("RANKMOD_SEARCH_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 200000000ull;  // enough for the exhaustive order-5 optimality scan
}

struct SearchConstraints {
    std::vector<int> must_use;                 // transition indices that must appear
    std::vector<Permutation> excluded;         // vertices banned from the cycle
    std::optional<int> end_transition;         // required closing transition index
};

struct SearchOutcome {
    bool found = false;
    bool budget_exhausted = false;
    uint64_t nodes = 0;
    std::vector<Permutation> codewords;  // cyclic order, starts at id
    std::vector<int> transitions;        // top indices, size == codewords.size()
};

namespace detail {

struct ParityGraph {
    int k = 0;
    std::vector<Permutation> verts;          // even permutations, lex order
    std::vector<std::vector<int>> succ;      // succ[v][e] vertex index
    std::vector<int> edge_label;             // odd transition indices, ascending
    int id_index = -1;

    explicit ParityGraph(int k_) : k(k_) {
        std::unordered_map<Permutation, int, PermutationHash> index;
        std::vector<uint8_t> v(static_cast<size_t>(k));
        for (int i = 0; i < k; ++i) v[static_cast<size_t>(i)] = static_cast<uint8_t>(i + 1);
        do {
            Permutation p = Permutation::unchecked(v);
            if (is_even(p)) {
                index.emplace(p, static_cast<int>(verts.size()));
                verts.push_back(std::move(p));
            }
        } while (std::next_permutation(v.begin(), v.end()));
        for (int j = 3; j <= k; j += 2) edge_label.push_back(j);
        succ.resize(verts.size());
        for (size_t i = 0; i < verts.size(); ++i) {
            succ[i].reserve(edge_label.size());
            for (int j : edge_label) succ[i].push_back(index.at(push_to_top(verts[i], j)));
        }
        id_index = index.at(Permutation::identity(k));
    }
};

}  // namespace detail

// Searches for a cyclic parity-preserving G_^(k, target) code starting at id
// whose first transition is t_{^k}.  Exhausts the (constrained) space when the
// budget allows, so a not-found result with budget remaining is a proof of
// nonexistence under the stated conventions.
inline SearchOutcome search_parity_preserving(int k, uint64_t target,
                                              const SearchConstraints& constraints = {},
                                              uint64_t budget = default_search_budget()) {
    if (k < 3 || k % 2 == 0)
        throw std::invalid_argument("search_parity_preserving: order must be odd and >= 3");
    SearchOutcome out;
    detail::ParityGraph g(k);
    if (target > g.verts.size()) return out;

    std::vector<char> banned(g.verts.size(), 0);
    for (const auto& p : constraints.excluded) {
        for (size_t i = 0; i < g.verts.size(); ++i)
            if (g.verts[i] == p) banned[i] = 1;
    }
    if (banned[static_cast<size_t>(g.id_index)]) return out;

    const int degree = static_cast<int>(g.edge_label.size());
    const int first_edge = degree - 1;  // t_{^k} is the largest odd index
    std::vector<char> visited(g.verts.size(), 0);
    std::vector<int> path;
    std::vector<int> trans;
    path.reserve(static_cast<size_t>(target));
    trans.reserve(static_cast<size_t>(target));

    struct Frame { int v; int e; };
    std::vector<Frame> stack;
    stack.reserve(static_cast<size_t>(target) + 1);

    auto satisfies_must_use = [&](int closing) {
        for (int m : constraints.must_use) {
            bool seen = (closing == m);
            for (int t : trans)
                if (t == m) { seen = true; break; }
            if (!seen) return false;
        }
        return true;
    };

    visited[static_cast<size_t>(g.id_index)] = 1;
    path.push_back(g.id_index);
    const int v1 = g.succ[static_cast<size_t>(g.id_index)][static_cast<size_t>(first_edge)];
    if (banned[static_cast<size_t>(v1)] || static_cast<uint64_t>(2) > target) return out;
    visited[static_cast<size_t>(v1)] = 1;
    path.push_back(v1);
    trans.push_back(g.edge_label[static_cast<size_t>(first_edge)]);
    stack.push_back({v1, 0});

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (path.size() == target) {
            // try to close the cycle
            bool closed = false;
            for (int e = 0; e < degree && !closed; ++e) {
                if (g.succ[static_cast<size_t>(f.v)][static_cast<size_t>(e)] != g.id_index) continue;
                const int label = g.edge_label[static_cast<size_t>(e)];
                if (constraints.end_transition && *constraints.end_transition != label) continue;
                if (!satisfies_must_use(label)) continue;
                trans.push_back(label);
                closed = true;
            }
            if (closed) {
                out.found = true;
                out.transitions = trans;
                out.codewords.reserve(path.size());
                for (int vi : path) out.codewords.push_back(g.verts[static_cast<size_t>(vi)]);
                return out;
            }
            // dead end at full length: backtrack
            stack.pop_back();
            visited[static_cast<size_t>(path.back())] = 0;
            path.pop_back();
            if (!trans.empty()) trans.pop_back();
            continue;
        }
        if (f.e >= degree) {
            stack.pop_back();
            visited[static_cast<size_t>(path.back())] = 0;
            path.pop_back();
            if (!trans.empty()) trans.pop_back();
            continue;
        }
        const int e = f.e++;
        const int w = g.succ[static_cast<size_t>(f.v)][static_cast<size_t>(e)];
        if (visited[static_cast<size_t>(w)] || banned[static_cast<size_t>(w)]) continue;
        if (++out.nodes > budget) {
            out.budget_exhausted = true;
            return out;
        }
        visited[static_cast<size_t>(w)] = 1;
        path.push_back(w);
        trans.push_back(g.edge_label[static_cast<size_t>(e)]);
        stack.push_back({w, 0});
    }
    return out;
}

// Order-(2m+1) building block for the even-order Kendall snakes: a cyclic
// parity-preserving code of size (2m+1)!/2 - (2m-1) over edges
// {t_{^(2m-1)}, t_{^(2m+1)}} whose complement is a single t_{^(2m-1)}-orbit.
// Orbits are tried in lexicographic order of their representatives.
struct HsnakeBlock {
    std::vector<Permutation> codewords;  // cyclic, starts at id
    std::vector<int> transitions;
    Permutation excluded_rep;            // representative of the excluded orbit
};

inline std::optional<HsnakeBlock> search_hsnake_block(int m, uint64_t budget = default_search_budget()) {
    if (m < 2) throw std::invalid_argument("search_hsnake_block: m must be >= 2");
    const int k = 2 * m + 1;
    detail::ParityGraph full(k);
    // restrict to the two designated edges
    const int lo = 2 * m - 1, hi = 2 * m + 1;
    int elo = -1, ehi = -1;
    for (size_t e = 0; e < full.edge_label.size(); ++e) {
        if (full.edge_label[e] == lo) elo = static_cast<int>(e);
        if (full.edge_label[e] == hi) ehi = static_cast<int>(e);
    }
    const uint64_t target = factorial(k) / 2 - static_cast<uint64_t>(2 * m - 1);

    std::vector<char> in_some_orbit(full.verts.size(), 0);
    uint64_t nodes_left = budget;
    for (size_t rep = 0; rep < full.verts.size(); ++rep) {
        if (in_some_orbit[rep]) continue;
        // build the t_{^(2m-1)}-orbit of this representative
        std::vector<int> orbit{static_cast<int>(rep)};
        for (int q = 1; q < 2 * m - 1; ++q)
            orbit.push_back(full.succ[static_cast<size_t>(orbit.back())][static_cast<size_t>(elo)]);
        for (int v : orbit) in_some_orbit[static_cast<size_t>(v)] = 1;
        bool contains_id = false;
        for (int v : orbit)
            if (v == full.id_index) contains_id = true;
        if (contains_id) continue;

        // Hamiltonian cycle from id on the complement, edges {lo, hi} in lex order.
        std::vector<char> visited(full.verts.size(), 0);
        for (int v : orbit) visited[static_cast<size_t>(v)] = 1;
        std::vector<int> path{full.id_index};
        std::vector<int> trans;
        visited[static_cast<size_t>(full.id_index)] = 1;
        struct Frame { int v; int e; };
        std::vector<Frame> stack{{full.id_index, 0}};
        uint64_t nodes = 0;
        bool found = false;
        while (!stack.empty() && !found) {
            Frame& f = stack.back();
            if (path.size() == target) {
                for (int e : {elo, ehi}) {
                    if (full.succ[static_cast<size_t>(f.v)][static_cast<size_t>(e)] == full.id_index) {
                        const int label = full.edge_label[static_cast<size_t>(e)];
                        bool use_lo = (label == lo), use_hi = (label == hi);
                        for (int t : trans) {
                            use_lo = use_lo || t == lo;
                            use_hi = use_hi || t == hi;
                        }
                        if (!use_lo || !use_hi) continue;
                        trans.push_back(label);
                        found = true;
                        break;
                    }
                }
                if (found) break;
                stack.pop_back();
                visited[static_cast<size_t>(path.back())] = 0;
                path.pop_back();
                if (!trans.empty()) trans.pop_back();
                continue;
            }
            if (f.e >= 2) {
                stack.pop_back();
                visited[static_cast<size_t>(path.back())] = 0;
                path.pop_back();
                if (!trans.empty()) trans.pop_back();
                continue;
            }
            const int e = (f.e++ == 0) ? elo : ehi;
            const int w = full.succ[static_cast<size_t>(f.v)][static_cast<size_t>(e)];
            if (visited[static_cast<size_t>(w)]) continue;
            if (++nodes > nodes_left) break;
            visited[static_cast<size_t>(w)] = 1;
            path.push_back(w);
            trans.push_back(full.edge_label[static_cast<size_t>(e)]);
            stack.push_back({w, 0});
        }
        nodes_left = (nodes >= nodes_left) ? 0 : nodes_left - nodes;
        if (found) {
            HsnakeBlock block;
            block.transitions = trans;
            block.codewords.reserve(path.size());
            for (int vi : path) block.codewords.push_back(full.verts[static_cast<size_t>(vi)]);
            block.excluded_rep = full.verts[rep];
            return block;
        }
        if (nodes_left == 0) return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace rankmod

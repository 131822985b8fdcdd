#include "sdp/solve.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include "sdp/errors.hpp"

namespace sdp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ShortestPathTree dijkstra(const DescentGraph& g, int source) {
    const int n = g.node_count();
    ShortestPathTree t;
    t.source = source;
    t.dist.assign(n, kInf);
    t.parent.assign(n, -1);

    using Key = std::pair<double, int>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> queue;
    std::vector<bool> settled(n, false);
    std::vector<int> stamp(n, -1);
    std::vector<std::pair<int, double>> succ;

    t.dist[source] = 0.0;
    queue.push({0.0, source});
    int tick = 0;
    while (!queue.empty()) {
        auto [d, x] = queue.top();
        queue.pop();
        if (settled[x]) continue;
        settled[x] = true;
        succ.clear();
        g.successors_into(x, succ, stamp, ++tick);
        for (auto [y, w] : succ) {
            if (settled[y]) continue;
            double nd = d + w;
            if (nd < t.dist[y]) {
                t.dist[y] = nd;
                t.parent[y] = x;
                queue.push({nd, y});
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Bushwhack
//
// Per ordered co-face edge pair (e, e') we keep a list of disjoint claimed
// intervals over e''s node chain. A claimed interval belongs to a settled
// node u on e and covers the chain ordinals whose cheapest valid access
// through e is via u, as far as the carving comparisons established. Each
// interval streams its candidates outward from the ordinal nearest to u, in
// nondecreasing segment length, and keeps at most one outstanding queue
// item.

namespace {

struct QItem {
    double cost;
    int target;
    int parent;
    int pair_id;  // -1: direct vertex-vertex offer
    int entry_id;
    int gen;
    int ordinal;
};

struct QItemGreater {
    bool operator()(const QItem& a, const QItem& b) const {
        if (a.cost != b.cost) return a.cost > b.cost;
        if (a.target != b.target) return a.target > b.target;
        if (a.parent != b.parent) return a.parent > b.parent;
        return a.ordinal > b.ordinal;
    }
};

struct Entry {
    int key = -1;
    double key_cost = 0.0;
    int pair_id = -1;
    int lo = 0, hi = 0;      // claimed ordinal range [lo, hi)
    int left = 0, right = 0; // next unconsumed ordinal per sweep direction
    int cur = -1;            // ordinal of the outstanding queue item
    int gen = 0;
    bool alive = false;
};

struct PairList {
    int src_edge = -1;
    int dst_edge = -1;
    std::vector<int> order;                     // alive entries sorted by lo
    std::vector<std::pair<int, double>> keys;   // all inserted keys, for inspection
};

class BushwhackSolver {
public:
    BushwhackSolver(const DescentGraph& g, int source, const BushwhackInspector* inspect)
        : g_(g), mesh_(g.mesh()), inspect_(inspect), source_(source) {}

    ShortestPathTree run() {
        const int n = g_.node_count();
        tree_.source = source_;
        tree_.dist.assign(n, kInf);
        tree_.parent.assign(n, -1);
        settled_.assign(n, false);

        settle(source_, 0.0, -1);
        while (!queue_.empty()) {
            QItem item = queue_.top();
            queue_.pop();
            if (item.pair_id >= 0) {
                Entry& e = arena_[item.entry_id];
                if (!e.alive || e.gen != item.gen || e.cur != item.ordinal) continue;  // stale
                e.cur = -1;
                gen_next(item.entry_id);
            }
            if (!settled_[item.target]) settle(item.target, item.cost, item.parent);
        }
        return std::move(tree_);
    }

private:
    const DescentGraph& g_;
    const TerrainMesh& mesh_;
    const BushwhackInspector* inspect_;
    int source_;

    ShortestPathTree tree_;
    std::vector<bool> settled_;
    std::priority_queue<QItem, std::vector<QItem>, QItemGreater> queue_;

    std::vector<Entry> arena_;
    std::vector<int> free_slots_;
    std::vector<PairList> pairs_;
    std::unordered_map<long long, int> pair_index_;

    int pair_id(int e, int ep) {
        long long key = static_cast<long long>(e) * mesh_.edge_count() + ep;
        auto it = pair_index_.find(key);
        if (it != pair_index_.end()) return it->second;
        int id = static_cast<int>(pairs_.size());
        pair_index_.emplace(key, id);
        pairs_.push_back({e, ep, {}, {}});
        return id;
    }

    int alloc_entry() {
        if (!free_slots_.empty()) {
            int id = free_slots_.back();
            free_slots_.pop_back();
            ++arena_[id].gen;
            arena_[id].alive = true;
            return id;
        }
        arena_.push_back({});
        arena_.back().alive = true;
        return static_cast<int>(arena_.size() - 1);
    }

    void kill_entry(int id) {
        arena_[id].alive = false;
        arena_[id].cur = -1;
        free_slots_.push_back(id);
    }

    double cost_via(int key, double key_cost, int node) const { return key_cost + g_.weight(key, node); }

    // Candidate y must be lower-or-level with the key and must not share the
    // key's own edge (a Steiner key never links to its edge's endpoints).
    bool offer_allowed(int key, int y) const {
        if (g_.height(y) > g_.height(key)) return false;
        const NodeRef& rk = g_.ref(key);
        if (!rk.is_vertex) {
            const NodeRef& ry = g_.ref(y);
            if (ry.is_vertex && mesh_.edges[rk.edge].has_vertex(ry.vertex)) return false;
        }
        return true;
    }

    // Ordinal range of the chain whose heights do not exceed key_h. Chain
    // heights are monotone in t, so the range is a prefix, suffix, all, or
    // empty.
    std::pair<int, int> valid_range(double key_h, const std::vector<int>& chain) const {
        const int n = static_cast<int>(chain.size());
        double z_front = g_.height(chain.front());
        double z_back = g_.height(chain.back());
        if (z_front == z_back) return key_h >= z_front ? std::make_pair(0, n) : std::make_pair(0, 0);
        if (z_front < z_back) {
            int lo = 0, hi = n;  // first index with h > key_h
            while (lo < hi) {
                int mid = (lo + hi) / 2;
                if (g_.height(chain[mid]) <= key_h) lo = mid + 1;
                else hi = mid;
            }
            return {0, lo};
        }
        int lo = 0, hi = n;  // first index with h <= key_h
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            if (g_.height(chain[mid]) > key_h) lo = mid + 1;
            else hi = mid;
        }
        return {lo, n};
    }

    // Index of the minimum of the convex sequence |key -> chain[i]| over
    // [lo, hi).
    int argmin_dist(int key, const std::vector<int>& chain, int lo, int hi) const {
        while (hi - lo > 1) {
            int mid = (lo + hi) / 2;
            if (g_.weight(key, chain[mid - 1]) <= g_.weight(key, chain[mid])) hi = mid;
            else lo = mid;
        }
        return lo;
    }

    // Advances the entry's two-pointer sweep to its next valid candidate and
    // enqueues it. Candidates come out in nondecreasing segment length.
    void gen_next(int entry_id) {
        Entry& e = arena_[entry_id];
        const PairList& list = pairs_[e.pair_id];
        const auto& chain = g_.edge_chain(list.dst_edge);
        while (true) {
            bool has_l = e.left >= e.lo;
            bool has_r = e.right < e.hi;
            if (!has_l && !has_r) {
                e.cur = -1;
                return;
            }
            bool from_left;
            if (has_l && has_r)
                from_left = g_.weight(e.key, chain[e.left]) <= g_.weight(e.key, chain[e.right]);
            else
                from_left = has_l;
            int ord = from_left ? e.left-- : e.right++;
            int y = chain[ord];
            if (settled_[y] || !offer_allowed(e.key, y)) continue;
            e.cur = ord;
            queue_.push({cost_via(e.key, e.key_cost, y), y, e.key, e.pair_id, entry_id, e.gen, ord});
            return;
        }
    }

    void insert_ordered(int pid, int id, int lo) {
        auto& order = pairs_[pid].order;
        auto pos = std::upper_bound(order.begin(), order.end(), lo,
                                    [&](int v, int oid) { return v < arena_[oid].lo; });
        order.insert(pos, id);
    }

    void make_entry(int pid, int key, double key_cost, int lo, int hi) {
        int id = alloc_entry();
        Entry& e = arena_[id];
        e.key = key;
        e.key_cost = key_cost;
        e.pair_id = pid;
        e.lo = lo;
        e.hi = hi;
        const auto& chain = g_.edge_chain(pairs_[pid].dst_edge);
        int start = argmin_dist(key, chain, lo, hi);
        e.left = start;
        e.right = start + 1;
        e.cur = -1;
        insert_ordered(pid, id, lo);
        gen_next(id);
    }

    // Fragment of a carved incumbent: inherits the consumed-cursor state so
    // every chain ordinal is consumed O(1) times across an entry's lineage.
    // The parent's in-flight candidate (its queue item goes stale with the
    // parent) is re-admitted when this fragment covers it.
    void make_fragment(int pid, int key, double key_cost, int lo, int hi, int left, int right,
                       int old_cur) {
        if (old_cur >= lo && old_cur < hi) {
            if (old_cur == left + 1) left = old_cur;
            else if (old_cur == right - 1) right = old_cur;
        }
        int id = alloc_entry();
        Entry& e = arena_[id];
        e.key = key;
        e.key_cost = key_cost;
        e.pair_id = pid;
        e.lo = lo;
        e.hi = hi;
        e.left = std::min(left, hi - 1);
        e.right = std::max(right, lo);
        e.cur = -1;
        insert_ordered(pid, id, lo);
        gen_next(id);
    }

    // Arclength position of a chain ordinal along its edge, measured from
    // the lower-index vertex.
    double chain_pos(int dst_edge, int ordinal, int chain_size) const {
        if (ordinal == 0) return 0.0;
        double len = mesh_.edge_length(dst_edge);
        if (ordinal == chain_size - 1) return len;
        return g_.disc().per_edge[dst_edge][ordinal - 1].t * len;
    }

    // Exact win set of the newcomer u against one incumbent over the piece
    // [plo, phi): ordinals where cost via u is strictly smaller. The cost
    // difference along the chain line is a hyperbola comparison with at most
    // two sign changes; its critical parameters have the closed form below,
    // so probing the piece ends plus the critical ordinals splits the piece
    // into monotone stretches and each boundary falls to one binary search.
    void piece_win_runs(int u, double cu, int inc_key, double inc_cost, int dst_edge,
                        const std::vector<int>& chain, int plo, int phi,
                        std::vector<std::pair<int, int>>& runs) const {
        auto win = [&](int ord) {
            return cost_via(u, cu, chain[ord]) < cost_via(inc_key, inc_cost, chain[ord]);
        };
        const int n = static_cast<int>(chain.size());
        const Edge& ed = mesh_.edges[dst_edge];
        const Point3& a3 = mesh_.vertices[ed.lo];
        Point3 dir = mesh_.vertices[ed.hi] - a3;
        double len = dir.norm();
        dir = dir * (1.0 / len);
        auto project = [&](int node, double& p, double& d) {
            Point3 rel = g_.coords(node) - a3;
            p = rel.dot(dir);
            Point3 off = rel - dir * p;
            d = off.norm();
        };
        double pu, du, pi, di;
        project(u, pu, du);
        project(inc_key, pi, di);

        std::vector<int> probes = {plo, phi - 1};
        auto add_critical = [&](double t) {
            if (!std::isfinite(t)) return;
            // ordinal straddling parameter t
            int lo = plo, hi = phi - 1;
            if (t <= chain_pos(dst_edge, lo, n) || t >= chain_pos(dst_edge, hi, n)) return;
            while (hi - lo > 1) {
                int mid = (lo + hi) / 2;
                if (chain_pos(dst_edge, mid, n) <= t) lo = mid;
                else hi = mid;
            }
            probes.push_back(lo);
            probes.push_back(hi);
        };
        if (di != du) add_critical((pu * di - pi * du) / (di - du));
        if (di + du > 0.0) add_critical((pu * di + pi * du) / (di + du));
        // the per-key minima guard the near-degenerate d ~ 0 corner
        add_critical(pu);
        add_critical(pi);
        std::sort(probes.begin(), probes.end());
        probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

        // scan monotone stretches, recording the win runs
        int run_start = -1;
        bool prev = win(probes.front());
        if (prev) run_start = probes.front();
        for (size_t k = 0; k + 1 < probes.size(); ++k) {
            int a = probes[k], b = probes[k + 1];
            bool wa = prev, wb = win(b);
            if (wa != wb) {
                // single flip inside (a, b]: find the first ordinal valued wb
                int lo = a, hi = b;
                while (hi - lo > 1) {
                    int mid = (lo + hi) / 2;
                    if (win(mid) == wa) lo = mid;
                    else hi = mid;
                }
                if (wb) {
                    run_start = hi;
                } else {
                    runs.emplace_back(run_start, hi);
                    run_start = -1;
                }
            }
            prev = wb;
        }
        if (run_start >= 0) runs.emplace_back(run_start, phi);
    }

    // Removes loss runs from an incumbent entry, re-inserting the surviving
    // fragments with inherited stream state.
    void apply_losses(int pid, int order_pos, const std::vector<std::pair<int, int>>& loss_runs) {
        PairList& list = pairs_[pid];
        int oid = list.order[order_pos];
        Entry snap = arena_[oid];
        list.order.erase(list.order.begin() + order_pos);
        kill_entry(oid);
        int cursor = snap.lo;
        for (auto [a, b] : loss_runs) {
            if (a > cursor) make_fragment(pid, snap.key, snap.key_cost, cursor, a, snap.left, snap.right, snap.cur);
            cursor = b;
        }
        if (cursor < snap.hi)
            make_fragment(pid, snap.key, snap.key_cost, cursor, snap.hi, snap.left, snap.right, snap.cur);
    }

    // Inserts settled node u as a key of pair list pid, carving its claim out
    // of the incumbents' intervals.
    void insert_key(int pid, int u) {
        PairList& list = pairs_[pid];
        const auto& chain = g_.edge_chain(list.dst_edge);
        const double cu = tree_.dist[u];
        auto [vlo, vhi] = valid_range(g_.height(u), chain);

        std::vector<std::pair<int, int>> claims;
        if (vlo < vhi) {
            struct Loss {
                int oid;
                std::vector<std::pair<int, int>> runs;  // ordinals lost, within the entry
            };
            std::vector<Loss> losses;

            // phase 1: walk [vlo, vhi); uncovered gaps are claimed outright,
            // overlapped incumbents contribute their exact win runs
            int cursor = vlo;
            size_t pos = 0;
            while (pos < list.order.size() && arena_[list.order[pos]].hi <= vlo) ++pos;
            while (cursor < vhi) {
                if (pos >= list.order.size() || arena_[list.order[pos]].lo >= vhi) {
                    claims.emplace_back(cursor, vhi);
                    break;
                }
                const Entry& inc = arena_[list.order[pos]];
                if (inc.lo > cursor) {
                    claims.emplace_back(cursor, std::min(inc.lo, vhi));
                    cursor = std::min(inc.lo, vhi);
                    continue;
                }
                int plo = cursor;
                int phi = std::min(inc.hi, vhi);
                std::vector<std::pair<int, int>> runs;
                piece_win_runs(u, cu, inc.key, inc.key_cost, list.dst_edge, chain, plo, phi, runs);
                if (!runs.empty()) {
                    for (auto& r : runs) claims.push_back(r);
                    losses.push_back({list.order[pos], std::move(runs)});
                }
                cursor = phi;
                if (inc.hi <= vhi) ++pos;
            }

            // phase 2: rebuild carved incumbents; order positions are looked
            // up fresh because make_entry shifts them
            for (auto& loss : losses) {
                auto it = std::find(list.order.begin(), list.order.end(), loss.oid);
                apply_losses(pid, static_cast<int>(it - list.order.begin()), loss.runs);
            }

            // merge adjacent claim ranges
            std::vector<std::pair<int, int>> merged;
            for (auto& c : claims) {
                if (!merged.empty() && merged.back().second == c.first) merged.back().second = c.second;
                else merged.push_back(c);
            }
            claims.swap(merged);
        }

        if (inspect_ && inspect_->on_claim)
            inspect_->on_claim(list.src_edge, list.dst_edge, u, cu, claims, list.keys);
        list.keys.emplace_back(u, cu);

        for (auto [a, b] : claims) make_entry(pid, u, cu, a, b);
    }

    void settle(int u, double cost, int parent) {
        settled_[u] = true;
        tree_.dist[u] = cost;
        tree_.parent[u] = parent;
        const NodeRef& ru = g_.ref(u);

        if (ru.is_vertex) {
            // edge links to adjacent vertices
            for (int e : mesh_.vertex_edges[ru.vertex]) {
                const Edge& ed = mesh_.edges[e];
                int w = ed.lo == ru.vertex ? ed.hi : ed.lo;
                int y = g_.disc().node_of_vertex(w);
                if (settled_[y] || g_.height(y) > g_.height(u)) continue;
                queue_.push({cost_via(u, cost, y), y, u, -1, -1, 0, -1});
            }
            // interval claims on the opposite edge of each incident face
            for (int f : mesh_.vertex_faces[ru.vertex]) {
                int opp = -1, acc = -1;
                for (int e : mesh_.face_edges[f]) {
                    if (!mesh_.edges[e].has_vertex(ru.vertex)) opp = e;
                    else if (acc < 0 || e < acc) acc = e;
                }
                insert_key(pair_id(acc, opp), u);
            }
        } else {
            for (int f : mesh_.edges[ru.edge].faces) {
                if (f < 0) continue;
                for (int e : mesh_.face_edges[f]) {
                    if (e == ru.edge) continue;
                    insert_key(pair_id(ru.edge, e), u);
                }
            }
        }
    }
};

}  // namespace

ShortestPathTree bushwhack(const DescentGraph& g, int source, const BushwhackInspector* inspect) {
    return BushwhackSolver(g, source, inspect).run();
}

SurfacePoint node_surface_point(const DescentGraph& g, int node) {
    const NodeRef& r = g.ref(node);
    if (r.is_vertex) return SurfacePoint::at_vertex(g.mesh(), r.vertex);
    SurfacePoint sp;
    sp.kind = SurfaceKind::Edge;
    sp.index = r.edge;
    sp.t = g.disc().per_edge[r.edge][r.ordinal].t;
    sp.coords = g.coords(node);  // z is the stored Steiner height
    return sp;
}

Path extract_path(const DescentGraph& g, const ShortestPathTree& tree, int v) {
    if (v < 0 || v >= g.node_count() || !tree.reached(v))
        throw UnreachableTarget("node " + std::to_string(v) + " is not reachable from the source");
    Path path;
    path.length = tree.dist[v];
    for (int x = v; x >= 0; x = tree.parent[x]) path.nodes.push_back(x);
    std::reverse(path.nodes.begin(), path.nodes.end());
    path.points.reserve(path.nodes.size());
    for (int x : path.nodes) path.points.push_back(node_surface_point(g, x));
    return path;
}

}  // namespace sdp

#include "monolab/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace monolab {

namespace {

void check_bits(const Shape& shape, std::span<const std::uint8_t> bits) {
    if (static_cast<Index>(bits.size()) != shape.size()) {
        throw Error(Error::Kind::dimension_mismatch, "indicator length differs from the box size");
    }
    for (std::uint8_t b : bits) {
        if (b > 1) throw Error(Error::Kind::invalid_argument, "indicator values must be 0 or 1");
    }
}

// Dinic on a CSR graph. Capacities are small integers; kInf marks the lattice arcs.
class Dinic {
public:
    static constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max() / 2;

    explicit Dinic(std::int32_t nodes) : nodes_(nodes), level_(nodes), arc_(nodes) {}

    void add_edge(std::int32_t u, std::int32_t v, std::int32_t cap) {
        pending_.push_back({u, v, cap});
    }

    void build() {
        std::vector<std::int32_t> deg(static_cast<std::size_t>(nodes_) + 1, 0);
        for (const auto& e : pending_) {
            ++deg[e.u + 1];
            ++deg[e.v + 1];
        }
        for (std::int32_t k = 0; k < nodes_; ++k) deg[k + 1] += deg[k];
        first_ = deg;
        to_.resize(pending_.size() * 2);
        cap_.resize(pending_.size() * 2);
        rev_.resize(pending_.size() * 2);
        std::vector<std::int32_t> fill(first_.begin(), first_.end() - 1);
        for (const auto& e : pending_) {
            const std::int32_t a = fill[e.u]++;
            const std::int32_t b = fill[e.v]++;
            to_[a] = e.v;
            cap_[a] = e.cap;
            rev_[a] = b;
            to_[b] = e.u;
            cap_[b] = 0;
            rev_[b] = a;
        }
        pending_.clear();
        pending_.shrink_to_fit();
    }

    std::int64_t max_flow(std::int32_t s, std::int32_t t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            for (std::int32_t v = 0; v < nodes_; ++v) arc_[v] = first_[v];
            while (augment(s, t)) ++flow;
        }
        return flow;
    }

    /// Nodes reachable from s in the residual graph (valid after max_flow).
    std::vector<std::uint8_t> residual_reach(std::int32_t s) const {
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(nodes_), 0);
        std::vector<std::int32_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            const std::int32_t u = stack.back();
            stack.pop_back();
            for (std::int32_t a = first_[u]; a < first_[u + 1]; ++a) {
                if (cap_[a] > 0 && !seen[to_[a]]) {
                    seen[to_[a]] = 1;
                    stack.push_back(to_[a]);
                }
            }
        }
        return seen;
    }

private:
    struct PendingEdge {
        std::int32_t u, v, cap;
    };

    bool bfs(std::int32_t s, std::int32_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::vector<std::int32_t> queue{s};
        level_[s] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::int32_t u = queue[head];
            for (std::int32_t a = first_[u]; a < first_[u + 1]; ++a) {
                if (cap_[a] > 0 && level_[to_[a]] < 0) {
                    level_[to_[a]] = level_[u] + 1;
                    queue.push_back(to_[a]);
                }
            }
        }
        return level_[t] >= 0;
    }

    // One unit along a level-graph path. Source arcs have capacity 1, so every
    // augmenting path carries exactly one unit.
    bool augment(std::int32_t s, std::int32_t t) {
        path_.clear();
        std::int32_t u = s;
        while (true) {
            if (u == t) {
                for (std::int32_t a : path_) {
                    --cap_[a];
                    ++cap_[rev_[a]];
                }
                return true;
            }
            bool advanced = false;
            for (std::int32_t& a = arc_[u]; a < first_[u + 1]; ++a) {
                const std::int32_t v = to_[a];
                if (cap_[a] > 0 && level_[v] == level_[u] + 1) {
                    path_.push_back(a);
                    u = v;
                    advanced = true;
                    break;
                }
            }
            if (advanced) continue;
            // Dead end: prune u from this phase and retreat.
            level_[u] = -1;
            if (path_.empty()) return false;
            const std::int32_t a = path_.back();
            path_.pop_back();
            u = to_[rev_[a]];
            ++arc_[u];
        }
    }

    std::int32_t nodes_;
    std::vector<PendingEdge> pending_;
    std::vector<std::int32_t> first_, to_, cap_, rev_;
    std::vector<std::int32_t> level_, arc_, path_;
};

}  // namespace

BooleanCover boolean_violation_cover(const Shape& shape, std::span<const std::uint8_t> bits) {
    check_bits(shape, bits);
    const Index n_points = shape.size();
    if (n_points > std::numeric_limits<std::int32_t>::max() / 4) {
        throw Error(Error::Kind::cap_exceeded, "box too large for the flow solver");
    }
    const auto N = static_cast<std::int32_t>(n_points);
    const std::int32_t s = N;
    const std::int32_t t = N + 1;

    Dinic dinic(N + 2);
    for (std::int32_t x = 0; x < N; ++x) {
        if (bits[x]) {
            dinic.add_edge(s, x, 1);
        } else {
            dinic.add_edge(x, t, 1);
        }
        for (int axis = 1; axis <= static_cast<int>(shape.rank()); ++axis) {
            if (shape.coord(x, axis) < shape.dims()[axis - 1]) {
                dinic.add_edge(x, static_cast<std::int32_t>(x + shape.stride(axis)), Dinic::kInf);
            }
        }
    }
    dinic.build();

    BooleanCover out;
    out.matching_size = dinic.max_flow(s, t);
    // The source side of the minimum cut is an up-set; setting g = 1 there is
    // an optimal monotone repair, and the cover is where g differs from bits.
    const auto reach = dinic.residual_reach(s);
    for (std::int32_t x = 0; x < N; ++x) {
        if (reach[x] != bits[x]) out.cover.push_back(x);
    }
    return out;
}

namespace reference {

BooleanCover boolean_violation_cover(const Shape& shape, std::span<const std::uint8_t> bits) {
    check_bits(shape, bits);
    std::vector<Index> left, right;
    for (Index x = 0; x < shape.size(); ++x) (bits[x] ? left : right).push_back(x);

    const std::size_t L = left.size();
    const std::size_t R = right.size();
    std::vector<std::vector<std::int32_t>> adj(L);
    for (std::size_t a = 0; a < L; ++a) {
        for (std::size_t b = 0; b < R; ++b) {
            if (shape.precedes(left[a], right[b])) adj[a].push_back(static_cast<std::int32_t>(b));
        }
    }

    constexpr std::int32_t kFree = -1;
    constexpr std::int32_t kUnreached = std::numeric_limits<std::int32_t>::max();
    std::vector<std::int32_t> match_l(L, kFree), match_r(R, kFree), dist(L);

    auto bfs = [&] {
        std::queue<std::int32_t> q;
        bool found = false;
        for (std::size_t a = 0; a < L; ++a) {
            if (match_l[a] == kFree) {
                dist[a] = 0;
                q.push(static_cast<std::int32_t>(a));
            } else {
                dist[a] = kUnreached;
            }
        }
        while (!q.empty()) {
            const std::int32_t a = q.front();
            q.pop();
            for (std::int32_t b : adj[a]) {
                const std::int32_t next = match_r[b];
                if (next == kFree) {
                    found = true;
                } else if (dist[next] == kUnreached) {
                    dist[next] = dist[a] + 1;
                    q.push(next);
                }
            }
        }
        return found;
    };

    auto dfs = [&](auto&& self, std::int32_t a) -> bool {
        for (std::int32_t b : adj[a]) {
            const std::int32_t next = match_r[b];
            if (next == kFree || (dist[next] == dist[a] + 1 && self(self, next))) {
                match_l[a] = b;
                match_r[b] = a;
                return true;
            }
        }
        dist[a] = kUnreached;
        return false;
    };

    BooleanCover out;
    while (bfs()) {
        for (std::size_t a = 0; a < L; ++a) {
            if (match_l[a] == kFree && dfs(dfs, static_cast<std::int32_t>(a))) ++out.matching_size;
        }
    }

    // König: Z = vertices reachable from free left vertices by alternating
    // paths; the cover is (L \ Z) ∪ (R ∩ Z).
    std::vector<std::uint8_t> zl(L, 0), zr(R, 0);
    std::vector<std::int32_t> stack;
    for (std::size_t a = 0; a < L; ++a) {
        if (match_l[a] == kFree) {
            zl[a] = 1;
            stack.push_back(static_cast<std::int32_t>(a));
        }
    }
    while (!stack.empty()) {
        const std::int32_t a = stack.back();
        stack.pop_back();
        for (std::int32_t b : adj[a]) {
            if (zr[b] || match_l[a] == b) continue;
            zr[b] = 1;
            const std::int32_t next = match_r[b];
            if (next != kFree && !zl[next]) {
                zl[next] = 1;
                stack.push_back(next);
            }
        }
    }
    for (std::size_t a = 0; a < L; ++a) {
        if (!zl[a]) out.cover.push_back(left[a]);
    }
    for (std::size_t b = 0; b < R; ++b) {
        if (zr[b]) out.cover.push_back(right[b]);
    }
    std::sort(out.cover.begin(), out.cover.end());
    return out;
}

}  // namespace reference

}  // namespace monolab

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "pep2gi/matrix.hpp"
#include "pep2gi/permutation.hpp"

namespace pep2gi {

/// Directed graph on n vertices with edge weights in F_q, including
/// self-loops; adj(i, j) is the weight of the arc i -> j. Two such graphs
/// are isomorphic when A2 = P^T A1 P for a permutation matrix P.
class WeightedDigraph {
  public:
    WeightedDigraph(Field f, std::size_t n) : f_(std::move(f)), n_(n), adj_(n * n, 0) {}

    static WeightedDigraph from_matrix(const Matrix& m) {
        if (m.rows() != m.cols()) throw Error("digraph: adjacency matrix must be square");
        WeightedDigraph g(m.field(), m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) g.set(i, j, m.at(i, j));
        return g;
    }

    const Field& field() const { return f_; }
    std::size_t size() const { return n_; }
    FElem at(std::size_t i, std::size_t j) const { return adj_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, FElem w) { adj_[i * n_ + j] = w; }

    Matrix adjacency() const {
        Matrix m(f_, n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) m.set(i, j, at(i, j));
        return m;
    }

    bool operator==(const WeightedDigraph& o) const {
        return f_ == o.f_ && n_ == o.n_ && adj_ == o.adj_;
    }

  private:
    Field f_;
    std::size_t n_;
    std::vector<FElem> adj_;
};

struct RefinementState {
    std::vector<std::uint32_t> colors;
    bool stable;
};

namespace detail {

/// One-dimensional refinement over a list of graphs sharing one color
/// vector (vertex v of graph g sits at offset[g] + v). The signature of a
/// vertex is its current color, its self-loop weight and the multisets of
/// (weight, neighbour color) pairs in both directions; new classes are
/// numbered by first occurrence in scan order. Returns once stable.
inline void refine_colors(const std::vector<const WeightedDigraph*>& graphs,
                          std::vector<std::uint32_t>& colors) {
    using Sig = std::tuple<std::uint32_t, FElem, std::vector<std::pair<FElem, std::uint32_t>>,
                           std::vector<std::pair<FElem, std::uint32_t>>>;
    std::vector<std::size_t> offset;
    std::size_t total = 0;
    for (const auto* g : graphs) {
        offset.push_back(total);
        total += g->size();
    }
    for (;;) {
        std::map<Sig, std::uint32_t> ids;
        std::vector<std::uint32_t> next(total);
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const WeightedDigraph& g = *graphs[gi];
            const std::size_t base = offset[gi];
            for (std::size_t v = 0; v < g.size(); ++v) {
                Sig sig;
                std::get<0>(sig) = colors[base + v];
                std::get<1>(sig) = g.at(v, v);
                auto& out = std::get<2>(sig);
                auto& in = std::get<3>(sig);
                for (std::size_t u = 0; u < g.size(); ++u) {
                    if (u == v) continue;
                    out.emplace_back(g.at(v, u), colors[base + u]);
                    in.emplace_back(g.at(u, v), colors[base + u]);
                }
                std::sort(out.begin(), out.end());
                std::sort(in.begin(), in.end());
                const auto [it, fresh] =
                    ids.emplace(std::move(sig), static_cast<std::uint32_t>(ids.size()));
                next[base + v] = it->second;
            }
        }
        if (next == colors) return;
        colors = std::move(next);
    }
}

}  // namespace detail

/// Refine vertex colors of one graph to an equitable partition. Classes are
/// numbered by first occurrence; the result is always a fixpoint.
inline RefinementState refine(const WeightedDigraph& g,
                              const std::optional<std::vector<std::uint32_t>>& initial = {}) {
    std::vector<std::uint32_t> colors(g.size(), 0);
    if (initial) {
        if (initial->size() != g.size()) throw Error("refine: initial color size mismatch");
        colors = *initial;
    }
    std::vector<const WeightedDigraph*> gs{&g};
    detail::refine_colors(gs, colors);
    return RefinementState{std::move(colors), true};
}

namespace detail {

struct IsoSearch {
    const WeightedDigraph& a;
    const WeightedDigraph& b;
    std::size_t n;

    bool run(std::vector<std::uint32_t> colors, std::vector<std::uint32_t>& mapping) const {
        std::vector<const WeightedDigraph*> gs{&a, &b};
        refine_colors(gs, colors);

        std::uint32_t maxc = 0;
        for (const auto c : colors) maxc = std::max(maxc, c);
        std::vector<std::vector<std::uint32_t>> cell_a(maxc + 1), cell_b(maxc + 1);
        for (std::size_t v = 0; v < n; ++v) cell_a[colors[v]].push_back(static_cast<std::uint32_t>(v));
        for (std::size_t v = 0; v < n; ++v) cell_b[colors[n + v]].push_back(static_cast<std::uint32_t>(v));
        for (std::uint32_t c = 0; c <= maxc; ++c)
            if (cell_a[c].size() != cell_b[c].size()) return false;

        // target cell: smallest non-singleton, ties broken by color id
        std::uint32_t target = maxc + 1;
        std::size_t best = SIZE_MAX;
        for (std::uint32_t c = 0; c <= maxc; ++c)
            if (cell_a[c].size() > 1 && cell_a[c].size() < best) {
                best = cell_a[c].size();
                target = c;
            }

        if (target == maxc + 1) {  // discrete: the correspondence is forced
            for (std::uint32_t c = 0; c <= maxc; ++c) mapping[cell_a[c][0]] = cell_b[c][0];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (b.at(mapping[i], mapping[j]) != a.at(i, j)) return false;
            return true;
        }

        const std::uint32_t u = cell_a[target][0];
        for (const auto v : cell_b[target]) {
            auto branch = colors;
            branch[u] = maxc + 1;
            branch[n + v] = maxc + 1;
            if (run(std::move(branch), mapping)) return true;
        }
        return false;
    }
};

}  // namespace detail

/// Exact isomorphism test: returns pi with adj2 = P^T adj1 P when the
/// graphs are isomorphic. Color refinement plus individualisation
/// backtracking; deterministic (smallest non-singleton cell, smallest
/// vertex index first) and verified before returning.
inline std::optional<Permutation> wdg_iso(const WeightedDigraph& a, const WeightedDigraph& b) {
    if (a.size() != b.size() || !(a.field() == b.field())) return std::nullopt;
    const std::size_t n = a.size();
    if (n == 0) return Permutation::identity(0);
    detail::IsoSearch search{a, b, n};
    std::vector<std::uint32_t> mapping(n, 0);
    if (!search.run(std::vector<std::uint32_t>(2 * n, 0), mapping)) return std::nullopt;
    return Permutation(std::move(mapping));
}

/// Plain undirected graph as an edge list, the target of the weighted ->
/// unweighted encoding. Vertices are 0-based; no self-loops.
struct UnweightedGraph {
    std::size_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

/// Encode a weighted digraph as a plain graph that is isomorphic exactly
/// when the originals are. Layered binary construction with L =
/// ceil(log2 q) + 1: vertex v becomes a ladder of copies v^0..v^L with a
/// 2-tail below v^0 and a 3-tail above v^L; an arc (i, j) whose weight code
/// has bit l set contributes two fresh vertices g, h at layer l with edges
/// g-i^l, g-j^l, h-g, h-i^l, the triangle on the i side recording the arc
/// direction. The extra top layer keeps used layers asymmetric under ladder
/// reversal. Validated by property tests against wdg_iso.
inline UnweightedGraph export_unweighted(const WeightedDigraph& g) {
    const std::size_t n = g.size();
    const std::uint64_t q = g.field().q();
    std::size_t lg = 0;
    while ((1ull << lg) < q) ++lg;
    const std::size_t layers = lg + 1;  // ladder rungs run 0..layers

    UnweightedGraph out;
    const auto rung = [&](std::size_t v, std::size_t l) {
        return static_cast<std::uint32_t>(v * (layers + 1) + l);
    };
    const std::size_t tail_base = n * (layers + 1);
    std::uint32_t fresh = static_cast<std::uint32_t>(tail_base + 5 * n);
    const auto edge = [&](std::uint32_t u, std::uint32_t v) { out.edges.emplace_back(u, v); };

    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t l = 0; l < layers; ++l) edge(rung(v, l), rung(v, l + 1));
        const auto t = static_cast<std::uint32_t>(tail_base + 5 * v);
        edge(rung(v, 0), t);
        edge(t, t + 1);
        edge(rung(v, layers), t + 2);
        edge(t + 2, t + 3);
        edge(t + 3, t + 4);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const FElem w = g.at(i, j);
            if (w == 0) continue;
            for (std::size_t l = 0; l < lg; ++l) {
                if (!((w >> l) & 1)) continue;
                const std::uint32_t gv = fresh++;
                const std::uint32_t hv = fresh++;
                edge(gv, rung(i, l));
                if (j != i) edge(gv, rung(j, l));
                edge(hv, gv);
                edge(hv, rung(i, l));
            }
        }
    out.n = fresh;
    for (auto& e : out.edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

}  // namespace pep2gi

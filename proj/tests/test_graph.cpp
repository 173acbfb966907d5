#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "pep2gi/graph.hpp"
#include "support/plain_graph.hpp"
#include "support/random_gen.hpp"

using namespace pep2gi;

namespace {
const Field f3 = Field::make(3);

const Matrix kPi = Matrix::from_rows(f3, {{1, 1, 0, 0}, {0, 0, 0, 0}, {0, 1, 1, 0}, {1, 2, 1, 0}});
const Matrix kPiPrime =
    Matrix::from_rows(f3, {{0, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {2, 1, 1, 0}});

/// Exhaustive reference: try all n! permutations.
std::optional<Permutation> iso_by_exhaustion(const WeightedDigraph& a, const WeightedDigraph& b) {
    if (a.size() != b.size()) return std::nullopt;
    Permutation pi = Permutation::identity(a.size());
    do {
        bool ok = true;
        for (std::size_t i = 0; i < a.size() && ok; ++i)
            for (std::size_t j = 0; j < a.size() && ok; ++j)
                if (b.at(pi(i), pi(j)) != a.at(i, j)) ok = false;
        if (ok) return pi;
    } while (pi.next());
    return std::nullopt;
}

std::map<std::uint32_t, std::size_t> color_histogram(const RefinementState& s) {
    std::map<std::uint32_t, std::size_t> h;
    for (const auto c : s.colors) ++h[c];
    return h;
}
}  // namespace

TEST_CASE("color refinement", "[graph]") {
    const WeightedDigraph zero(f3, 4);
    const auto rz = refine(zero);
    CHECK(rz.stable);
    CHECK(rz.colors == std::vector<std::uint32_t>(4, 0));

    WeightedDigraph loop(f3, 3);
    loop.set(0, 0, 1);
    const auto rl = refine(loop);
    CHECK(rl.colors[0] != rl.colors[1]);
    CHECK(rl.colors[1] == rl.colors[2]);

    // the example projector: the zero row (vertex 1) is separated
    const auto rp = refine(WeightedDigraph::from_matrix(kPi));
    CHECK(std::count(rp.colors.begin(), rp.colors.end(), rp.colors[1]) == 1);

    // supplied initial colors are respected
    const auto ri = refine(zero, std::vector<std::uint32_t>{7, 7, 9, 9});
    CHECK(ri.colors[0] == ri.colors[1]);
    CHECK(ri.colors[2] == ri.colors[3]);
    CHECK(ri.colors[0] != ri.colors[2]);
}

TEST_CASE("refinement histogram is conjugation-invariant", "[graph]") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + rng() % 7;
        const WeightedDigraph g = testgen::random_digraph(f3, n, rng);
        const auto pg = testgen::conjugate(g, testgen::random_permutation(n, rng));
        std::multiset<std::size_t> h1, h2;
        for (const auto& [c, cnt] : color_histogram(refine(g))) h1.insert(cnt);
        for (const auto& [c, cnt] : color_histogram(refine(pg))) h2.insert(cnt);
        CHECK(h1 == h2);
    }
}

TEST_CASE("wdg_iso on the example projectors", "[graph]") {
    const auto pi = wdg_iso(WeightedDigraph::from_matrix(kPi), WeightedDigraph::from_matrix(kPiPrime));
    REQUIRE(pi);
    CHECK(pi->image() == std::vector<std::uint32_t>{1, 0, 2, 3});
}

TEST_CASE("wdg_iso basics", "[graph]") {
    std::mt19937_64 rng(42);
    const WeightedDigraph g = testgen::random_digraph(f3, 5, rng);
    const auto self = wdg_iso(g, g);
    REQUIRE(self);
    CHECK(*self == Permutation::identity(5));

    // single weighted arc versus the zero graph: weight multisets differ
    WeightedDigraph one(f3, 4);
    one.set(0, 1, 1);
    CHECK_FALSE(wdg_iso(one, WeightedDigraph(f3, 4)));

    CHECK_FALSE(wdg_iso(WeightedDigraph(f3, 3), WeightedDigraph(f3, 4)));
}

TEST_CASE("wdg_iso agrees with exhaustive search", "[graph]") {
    std::mt19937_64 rng(43);
    for (std::size_t n = 1; n <= 5; ++n) {
        for (int t = 0; t < 40; ++t) {
            const WeightedDigraph a = testgen::random_digraph(f3, n, rng);
            WeightedDigraph b(f3, n);
            if (t % 2 == 0) {
                b = testgen::conjugate(a, testgen::random_permutation(n, rng));
            } else {
                b = testgen::random_digraph(f3, n, rng);
            }
            const auto fast = wdg_iso(a, b);
            const auto slow = iso_by_exhaustion(a, b);
            CHECK(static_cast<bool>(fast) == static_cast<bool>(slow));
            if (fast) {
                // soundness: verify the returned witness explicitly
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        CHECK(b.at((*fast)(i), (*fast)(j)) == a.at(i, j));
            }
        }
    }
}

TEST_CASE("export of the zero graph is a union of ladders", "[graph]") {
    const std::size_t n = 3;
    const WeightedDigraph zero(f3, n);
    const auto g = export_unweighted(zero);
    // q = 3: lg = 2, ladder rungs 0..3, plus 5 tail vertices per base vertex
    CHECK(g.n == n * 9);
    CHECK(g.edges.size() == n * 8);
    // every vertex has degree <= 2 (disjoint paths), and each component has
    // two endpoints
    std::vector<std::size_t> deg(g.n, 0);
    for (const auto& [u, v] : g.edges) {
        ++deg[u];
        ++deg[v];
    }
    CHECK(std::count(deg.begin(), deg.end(), 1) == 2 * static_cast<long>(n));
    CHECK(std::count(deg.begin(), deg.end(), 2) == static_cast<long>(g.n - 2 * n));
}

TEST_CASE("export of a single arc places one direction gadget at layer 0", "[graph]") {
    WeightedDigraph g(f3, 2);
    g.set(0, 1, 1);  // weight code 1: only bit 0
    const auto e = export_unweighted(g);
    // 2 ladders of 4 rungs + 2*5 tail vertices + one gadget pair
    CHECK(e.n == 2 * 9 + 2);
    const std::uint32_t gv = 18, hv = 19;
    const auto has = [&](std::uint32_t a, std::uint32_t b) {
        if (a > b) std::swap(a, b);
        return std::find(e.edges.begin(), e.edges.end(), std::make_pair(a, b)) != e.edges.end();
    };
    // rung(v, l) = 4v + l: gadget attaches to 0^0 = 0 and 1^0 = 4,
    // with the marker triangle on the tail side (vertex 0)
    CHECK(has(gv, 0));
    CHECK(has(gv, 4));
    CHECK(has(hv, gv));
    CHECK(has(hv, 0));
    CHECK_FALSE(has(hv, 4));
}

TEST_CASE("exports of conjugate graphs are isomorphic as plain graphs", "[graph]") {
    std::mt19937_64 rng(44);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + rng() % 4;
        const WeightedDigraph a = testgen::random_digraph(f3, n, rng);
        const auto b = testgen::conjugate(a, testgen::random_permutation(n, rng));
        CHECK(testgen::plain_iso(export_unweighted(a), export_unweighted(b)));
    }
}

TEST_CASE("export preserves and reflects isomorphism", "[graph]") {
    std::mt19937_64 rng(45);
    for (int t = 0; t < 40; ++t) {
        const Field f = Field::make(t % 2 ? 3 : 5);
        const std::size_t n = 2 + rng() % 4;
        const WeightedDigraph a = testgen::random_digraph(f, n, rng);
        WeightedDigraph b(f, n);
        if (t % 4 < 2) {
            b = testgen::conjugate(a, testgen::random_permutation(n, rng));
        } else {
            b = testgen::random_digraph(f, n, rng);
        }
        const bool weighted = static_cast<bool>(wdg_iso(a, b));
        const bool plain = static_cast<bool>(testgen::plain_iso(export_unweighted(a),
                                                                export_unweighted(b)));
        CHECK(weighted == plain);
    }
}

TEST_CASE("self-loops and opposite arcs export distinguishably", "[graph]") {
    // a->b versus b->a only: isomorphic by swapping; a->b versus a self-loop: not
    WeightedDigraph fwd(f3, 2), bwd(f3, 2), loop(f3, 2);
    fwd.set(0, 1, 2);
    bwd.set(1, 0, 2);
    loop.set(0, 0, 2);
    CHECK(testgen::plain_iso(export_unweighted(fwd), export_unweighted(bwd)));
    CHECK_FALSE(testgen::plain_iso(export_unweighted(fwd), export_unweighted(loop)));
    CHECK_FALSE(wdg_iso(fwd, loop));

    // weight 1 versus weight 2 differ (different bit layers)
    WeightedDigraph w1(f3, 2), w2(f3, 2);
    w1.set(0, 1, 1);
    w2.set(0, 1, 2);
    CHECK_FALSE(testgen::plain_iso(export_unweighted(w1), export_unweighted(w2)));
}

// Canonical labeling and automorphism groups of stable graphs.
//
// A stable graph is determined up to isomorphism by its vertex-level
// quotient: a multigraph whose vertices carry (genus, pointedness,
// decoration, labeled legs, unlabeled-leg count, loop count) and whose
// off-diagonal entries count parallel edges. Isomorphisms of stable graphs
// are lifts of colour-preserving vertex bijections; the lifts of a fixed
// vertex bijection form a coset of the group permuting parallel edges,
// loops (including their orientation) and unlabeled legs at a vertex.
//
// Vertex-level search is individualization-refinement: colour refinement
// by neighbour multisets, branching on the first non-singleton cell, and
// pruning children that lie in one orbit of the stabilizer of the current
// prefix.

#include <mbar/stable_graph.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace mbar
{

namespace
{

using Key = std::vector<std::int64_t>;
using Coloring = std::vector<int>;

struct VertexLevel
{
    int n = 0;
    std::vector<Key> keys;
    std::vector<std::vector<int>> mult; // edges between distinct vertices

    bool preserves(const std::vector<int> &perm) const
    {
        for (int u = 0; u < n; ++u) {
            if (keys[static_cast<std::size_t>(u)] != keys[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])])
                return false;
            for (int v = u + 1; v < n; ++v)
                if (mult[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] !=
                    mult[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])][static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])])
                    return false;
        }
        return true;
    }
};

VertexLevel vertex_level(const StableGraph &g)
{
    VertexLevel vl;
    vl.n = g.vertex_count();
    vl.mult.assign(static_cast<std::size_t>(vl.n), std::vector<int>(static_cast<std::size_t>(vl.n), 0));
    std::vector<int> loops(static_cast<std::size_t>(vl.n), 0), unlabeled(static_cast<std::size_t>(vl.n), 0);
    std::vector<std::vector<int>> labels(static_cast<std::size_t>(vl.n));
    for (const auto &e : g.edges()) {
        const int a = g.tau[static_cast<std::size_t>(e.h1)];
        const int b = g.tau[static_cast<std::size_t>(e.h2)];
        if (a == b)
            ++loops[static_cast<std::size_t>(a)];
        else {
            ++vl.mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            ++vl.mult[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
        }
    }
    for (const auto &[h, label] : g.legs) {
        const int v = g.tau[static_cast<std::size_t>(h)];
        if (label)
            labels[static_cast<std::size_t>(v)].push_back(*label);
        else
            ++unlabeled[static_cast<std::size_t>(v)];
    }
    for (int v = 0; v < vl.n; ++v) {
        const auto &d = g.vertices[static_cast<std::size_t>(v)];
        auto &lab = labels[static_cast<std::size_t>(v)];
        std::sort(lab.begin(), lab.end());
        Key key{d.genus, d.pointed ? 1 : 0, d.decoration.value_or(0), loops[static_cast<std::size_t>(v)],
                unlabeled[static_cast<std::size_t>(v)], static_cast<std::int64_t>(lab.size())};
        key.insert(key.end(), lab.begin(), lab.end());
        vl.keys.push_back(std::move(key));
    }
    return vl;
}

template <typename Sig> Coloring rank_signatures(const std::vector<Sig> &sigs)
{
    std::vector<Sig> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Coloring out(sigs.size());
    for (std::size_t v = 0; v < sigs.size(); ++v)
        out[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin());
    return out;
}

int color_count(const Coloring &c) { return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1; }

Coloring refine(const VertexLevel &vl, Coloring colors)
{
    int count = color_count(colors);
    while (true) {
        std::vector<std::vector<int>> sigs(static_cast<std::size_t>(vl.n));
        for (int v = 0; v < vl.n; ++v) {
            auto &s = sigs[static_cast<std::size_t>(v)];
            s.push_back(colors[static_cast<std::size_t>(v)]);
            std::vector<std::pair<int, int>> nb;
            for (int u = 0; u < vl.n; ++u) {
                const int m = vl.mult[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)];
                if (m > 0)
                    nb.emplace_back(colors[static_cast<std::size_t>(u)], m);
            }
            std::sort(nb.begin(), nb.end());
            for (auto [c, m] : nb) {
                s.push_back(c);
                s.push_back(m);
            }
        }
        Coloring next = rank_signatures(sigs);
        const int next_count = color_count(next);
        colors = std::move(next);
        if (next_count == count)
            return colors;
        count = next_count;
    }
}

Coloring individualize(const VertexLevel &vl, const Coloring &colors, int v)
{
    std::vector<int> sigs(colors.size());
    for (std::size_t u = 0; u < colors.size(); ++u)
        sigs[u] = 2 * colors[u] + (static_cast<int>(u) == v ? 0 : 1);
    return refine(vl, rank_signatures(sigs));
}

Coloring initial_coloring(const VertexLevel &vl) { return refine(vl, rank_signatures(vl.keys)); }

bool is_discrete(const Coloring &c) { return color_count(c) == static_cast<int>(c.size()); }

// Smallest colour whose cell has more than one vertex, and that cell.
std::vector<int> target_cell(const Coloring &c)
{
    std::vector<int> size(c.size(), 0);
    for (int x : c)
        ++size[static_cast<std::size_t>(x)];
    int target = -1;
    for (std::size_t k = 0; k < size.size(); ++k)
        if (size[k] > 1) {
            target = static_cast<int>(k);
            break;
        }
    std::vector<int> cell;
    for (std::size_t v = 0; v < c.size(); ++v)
        if (c[v] == target)
            cell.push_back(static_cast<int>(v));
    return cell;
}

bool same_histogram(const Coloring &a, const Coloring &b)
{
    if (a.size() != b.size())
        return false;
    std::vector<int> ha(a.size(), 0), hb(b.size(), 0);
    for (int x : a)
        ++ha[static_cast<std::size_t>(x)];
    for (int x : b)
        ++hb[static_cast<std::size_t>(x)];
    return ha == hb;
}

// Searches for a vertex automorphism carrying colouring `a` onto colouring `b`.
bool find_mapping(const VertexLevel &vl, const Coloring &a, const Coloring &b, std::vector<int> *out)
{
    if (!same_histogram(a, b))
        return false;
    if (is_discrete(a)) {
        std::vector<int> by_color(a.size());
        for (std::size_t v = 0; v < b.size(); ++v)
            by_color[static_cast<std::size_t>(b[v])] = static_cast<int>(v);
        std::vector<int> perm(a.size());
        for (std::size_t v = 0; v < a.size(); ++v)
            perm[v] = by_color[static_cast<std::size_t>(a[v])];
        if (!vl.preserves(perm))
            return false;
        if (out)
            *out = std::move(perm);
        return true;
    }
    const auto cell = target_cell(a);
    const int x = cell.front();
    const Coloring ax = individualize(vl, a, x);
    for (std::size_t y = 0; y < b.size(); ++y)
        if (b[y] == a[static_cast<std::size_t>(x)] && find_mapping(vl, ax, individualize(vl, b, static_cast<int>(y)), out))
            return true;
    return false;
}

// Partitions `cell` into orbits of the automorphisms preserving `colors`.
// Returns one representative per orbit together with the orbit sizes.
std::vector<std::pair<int, int>> cell_orbits(const VertexLevel &vl, const Coloring &colors, const std::vector<int> &cell,
                                             std::vector<std::vector<int>> *witnesses = nullptr)
{
    std::vector<std::pair<int, int>> reps; // (representative, orbit size)
    std::vector<Coloring> rep_colorings;
    for (int w : cell) {
        Coloring cw = individualize(vl, colors, w);
        bool found = false;
        for (std::size_t r = 0; r < reps.size() && !found; ++r) {
            std::vector<int> perm;
            if (find_mapping(vl, rep_colorings[r], cw, &perm)) {
                ++reps[r].second;
                found = true;
                if (witnesses && r == 0)
                    witnesses->push_back(std::move(perm));
            }
        }
        if (!found) {
            reps.emplace_back(w, 1);
            rep_colorings.push_back(std::move(cw));
        }
    }
    return reps;
}

Key leaf_code(const VertexLevel &vl, const Coloring &colors)
{
    std::vector<int> order(colors.size());
    for (std::size_t v = 0; v < colors.size(); ++v)
        order[static_cast<std::size_t>(colors[v])] = static_cast<int>(v);
    Key code{vl.n};
    for (int v : order) {
        const auto &k = vl.keys[static_cast<std::size_t>(v)];
        code.push_back(static_cast<std::int64_t>(k.size()));
        code.insert(code.end(), k.begin(), k.end());
    }
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
            code.push_back(vl.mult[static_cast<std::size_t>(order[i])][static_cast<std::size_t>(order[j])]);
    return code;
}

void canonical_search(const VertexLevel &vl, const Coloring &colors, Key &best, bool &have_best)
{
    if (is_discrete(colors)) {
        Key code = leaf_code(vl, colors);
        if (!have_best || code < best) {
            best = std::move(code);
            have_best = true;
        }
        return;
    }
    const auto cell = target_cell(colors);
    for (auto [rep, size] : cell_orbits(vl, colors, cell)) {
        (void)size;
        canonical_search(vl, individualize(vl, colors, rep), best, have_best);
    }
}

BigInt factorial(int k)
{
    BigInt f = 1;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return f;
}

// Half-edges at each vertex, grouped by role, each group sorted.
struct Incidence
{
    std::map<int, int> labeled;                     // label -> half-edge
    std::vector<int> unlabeled;                     // unlabeled legs
    std::vector<std::pair<int, int>> loops;         // (smaller, larger)
    std::map<int, std::vector<int>> to;             // neighbour -> half-edges at this vertex
};

std::vector<Incidence> incidences(const StableGraph &g)
{
    std::vector<Incidence> inc(g.vertices.size());
    for (int h = 0; h < g.half_edge_count(); ++h) {
        const int v = g.tau[static_cast<std::size_t>(h)];
        const int s = g.sigma[static_cast<std::size_t>(h)];
        auto &I = inc[static_cast<std::size_t>(v)];
        if (s == h) {
            const auto &label = g.legs.at(h);
            if (label)
                I.labeled[*label] = h;
            else
                I.unlabeled.push_back(h);
        } else {
            const int w = g.tau[static_cast<std::size_t>(s)];
            if (w == v) {
                if (h < s)
                    I.loops.emplace_back(h, s);
            } else {
                I.to[w].push_back(h);
            }
        }
    }
    // Parallel edges between u and w are ordered by their half-edge at the
    // smaller endpoint so both endpoints agree on the pairing.
    for (std::size_t v = 0; v < inc.size(); ++v)
        for (auto &[w, hs] : inc[v].to) {
            if (static_cast<int>(v) < w)
                std::sort(hs.begin(), hs.end());
            else
                std::sort(hs.begin(), hs.end(), [&](int a, int b) {
                    return g.sigma[static_cast<std::size_t>(a)] < g.sigma[static_cast<std::size_t>(b)];
                });
        }
    return inc;
}

Automorphism lift(const StableGraph &g, const std::vector<Incidence> &inc, const std::vector<int> &vperm)
{
    Automorphism a;
    a.vertices = vperm;
    a.half_edges.assign(g.sigma.size(), -1);
    for (std::size_t v = 0; v < inc.size(); ++v) {
        const auto &src = inc[v];
        const int pv = vperm[v];
        const auto &dst = inc[static_cast<std::size_t>(pv)];
        for (const auto &[label, h] : src.labeled)
            a.half_edges[static_cast<std::size_t>(h)] = dst.labeled.at(label);
        for (std::size_t i = 0; i < src.unlabeled.size(); ++i)
            a.half_edges[static_cast<std::size_t>(src.unlabeled[i])] = dst.unlabeled[i];
        for (std::size_t i = 0; i < src.loops.size(); ++i) {
            a.half_edges[static_cast<std::size_t>(src.loops[i].first)] = dst.loops[i].first;
            a.half_edges[static_cast<std::size_t>(src.loops[i].second)] = dst.loops[i].second;
        }
        for (const auto &[w, hs] : src.to) {
            const auto &target = dst.to.at(vperm[static_cast<std::size_t>(w)]);
            for (std::size_t i = 0; i < hs.size(); ++i)
                a.half_edges[static_cast<std::size_t>(hs[i])] = target[i];
        }
    }
    return a;
}

Automorphism identity(const StableGraph &g)
{
    Automorphism a;
    a.vertices.resize(g.vertices.size());
    std::iota(a.vertices.begin(), a.vertices.end(), 0);
    a.half_edges.resize(g.sigma.size());
    std::iota(a.half_edges.begin(), a.half_edges.end(), 0);
    return a;
}

// Generators of the symmetric group on `items` (as a permutation of the
// half-edges carried along by `apply`): a transposition and a long cycle.
template <typename Apply> void symmetric_generators(int k, Apply apply)
{
    if (k < 2)
        return;
    std::vector<int> swap01(static_cast<std::size_t>(k));
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    apply(swap01);
    if (k > 2) {
        std::vector<int> cycle(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            cycle[static_cast<std::size_t>(i)] = (i + 1) % k;
        apply(cycle);
    }
}

} // namespace

GraphIsoClass canonical_form(const StableGraph &graph)
{
    require_well_formed(graph);
    const VertexLevel vl = vertex_level(graph);
    Key best;
    bool have_best = false;
    canonical_search(vl, initial_coloring(vl), best, have_best);
    std::ostringstream os;
    for (std::size_t i = 0; i < best.size(); ++i)
        os << (i ? "," : "") << best[i];
    return {os.str()};
}

bool is_isomorphic(const StableGraph &a, const StableGraph &b)
{
    if (a.half_edge_count() != b.half_edge_count() || a.vertex_count() != b.vertex_count())
        return false;
    return canonical_form(a) == canonical_form(b);
}

AutGroup automorphisms(const StableGraph &graph)
{
    require_well_formed(graph);
    const VertexLevel vl = vertex_level(graph);
    const auto inc = incidences(graph);

    AutGroup group;
    group.order = 1;

    // Vertex level: orbit-stabilizer along a base.
    std::vector<std::vector<int>> vertex_gens;
    Coloring colors = initial_coloring(vl);
    while (!is_discrete(colors)) {
        const auto cell = target_cell(colors);
        const int base_point = cell.front();
        std::vector<std::vector<int>> witnesses;
        const auto orbits = cell_orbits(vl, colors, cell, &witnesses);
        group.order *= orbits.front().second;
        for (auto &w : witnesses)
            vertex_gens.push_back(std::move(w));
        colors = individualize(vl, colors, base_point);
    }
    for (const auto &vp : vertex_gens)
        group.generators.push_back(lift(graph, inc, vp));

    // Kernel: permutations fixing every vertex.
    for (std::size_t v = 0; v < inc.size(); ++v) {
        const auto &I = inc[v];
        const int nl = static_cast<int>(I.loops.size());
        group.order *= factorial(nl) * (BigInt(1) << nl);
        if (nl >= 1) {
            Automorphism flip = identity(graph);
            std::swap(flip.half_edges[static_cast<std::size_t>(I.loops[0].first)],
                      flip.half_edges[static_cast<std::size_t>(I.loops[0].second)]);
            group.generators.push_back(std::move(flip));
        }
        symmetric_generators(nl, [&](const std::vector<int> &p) {
            Automorphism a = identity(graph);
            for (int i = 0; i < nl; ++i) {
                a.half_edges[static_cast<std::size_t>(I.loops[static_cast<std::size_t>(i)].first)] = I.loops[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])].first;
                a.half_edges[static_cast<std::size_t>(I.loops[static_cast<std::size_t>(i)].second)] = I.loops[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])].second;
            }
            group.generators.push_back(std::move(a));
        });
        const int nu = static_cast<int>(I.unlabeled.size());
        group.order *= factorial(nu);
        symmetric_generators(nu, [&](const std::vector<int> &p) {
            Automorphism a = identity(graph);
            for (int i = 0; i < nu; ++i)
                a.half_edges[static_cast<std::size_t>(I.unlabeled[static_cast<std::size_t>(i)])] = I.unlabeled[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
            group.generators.push_back(std::move(a));
        });
        for (const auto &[w, hs] : I.to) {
            if (w < static_cast<int>(v))
                continue;
            const int k = static_cast<int>(hs.size());
            group.order *= factorial(k);
            symmetric_generators(k, [&](const std::vector<int> &p) {
                Automorphism a = identity(graph);
                for (int i = 0; i < k; ++i) {
                    const int src = hs[static_cast<std::size_t>(i)];
                    const int dst = hs[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
                    a.half_edges[static_cast<std::size_t>(src)] = dst;
                    a.half_edges[static_cast<std::size_t>(graph.sigma[static_cast<std::size_t>(src)])] =
                        graph.sigma[static_cast<std::size_t>(dst)];
                }
                group.generators.push_back(std::move(a));
            });
        }
    }
    return group;
}

bool is_automorphism(const StableGraph &graph, const Automorphism &a)
{
    const auto H = graph.sigma.size();
    const auto V = graph.vertices.size();
    if (a.half_edges.size() != H || a.vertices.size() != V)
        return false;
    std::vector<bool> hit_h(H, false), hit_v(V, false);
    for (int x : a.half_edges) {
        if (x < 0 || static_cast<std::size_t>(x) >= H || hit_h[static_cast<std::size_t>(x)])
            return false;
        hit_h[static_cast<std::size_t>(x)] = true;
    }
    for (int x : a.vertices) {
        if (x < 0 || static_cast<std::size_t>(x) >= V || hit_v[static_cast<std::size_t>(x)])
            return false;
        hit_v[static_cast<std::size_t>(x)] = true;
    }
    for (std::size_t h = 0; h < H; ++h) {
        const int ph = a.half_edges[h];
        if (a.half_edges[static_cast<std::size_t>(graph.sigma[h])] != graph.sigma[static_cast<std::size_t>(ph)])
            return false;
        if (a.vertices[static_cast<std::size_t>(graph.tau[h])] != graph.tau[static_cast<std::size_t>(ph)])
            return false;
        if (graph.sigma[h] == static_cast<int>(h) && graph.legs.at(static_cast<int>(h)).has_value() &&
            ph != static_cast<int>(h))
            return false;
    }
    for (std::size_t v = 0; v < V; ++v)
        if (graph.vertices[v] != graph.vertices[static_cast<std::size_t>(a.vertices[v])])
            return false;
    return true;
}

} // namespace mbar

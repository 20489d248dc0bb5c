#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <tuple>

namespace mbar::oracle
{

BigInt factorial(int k)
{
    BigInt f = 1;
    for (int i = 2; i <= k; ++i)
        f *= i;
    return f;
}

// ---------------------------------------------------------------- algebra

std::vector<BigInt> enumerate_monomials(const std::vector<Generator> &gens, int cap)
{
    std::vector<BigInt> out(static_cast<std::size_t>(cap) + 1);
    std::function<void(std::size_t, int)> go = [&](std::size_t i, int degree) {
        if (i == gens.size()) {
            out[static_cast<std::size_t>(degree)] += 1;
            return;
        }
        const int max_exp = gens[i].exterior ? 1 : cap;
        for (int e = 0; e <= max_exp && degree + e * gens[i].degree <= cap; ++e)
            go(i + 1, degree + e * gens[i].degree);
    };
    go(0, 0);
    return out;
}

std::vector<BigInt> count_monomials(const std::vector<Generator> &gens, int cap)
{
    std::vector<BigInt> table(static_cast<std::size_t>(cap) + 1);
    table[0] = 1;
    for (const auto &gen : gens) {
        std::vector<BigInt> next(table.size());
        for (int d = 0; d <= cap; ++d) {
            if (table[static_cast<std::size_t>(d)] == 0)
                continue;
            const int max_exp = gen.exterior ? 1 : cap;
            for (int e = 0; e <= max_exp && d + e * gen.degree <= cap; ++e)
                next[static_cast<std::size_t>(d + e * gen.degree)] += table[static_cast<std::size_t>(d)];
        }
        table = std::move(next);
    }
    return table;
}

std::vector<Generator> expand(const GradedDims &dims, int characteristic)
{
    std::vector<Generator> out;
    for (const auto &[deg, mult] : dims.entries())
        for (BigInt k = 0; k < mult; ++k)
            out.push_back({deg, characteristic != 2 && deg % 2 == 1});
    return out;
}

std::vector<int> aij_degrees(int cap)
{
    std::vector<int> out;
    for (int i = 0; 2 + 2 * i <= cap; ++i)
        for (int j = 0; 2 + 2 * i + 4 * j <= cap; ++j)
            out.push_back(2 + 2 * i + 4 * j);
    return out;
}

std::vector<BigInt> bn2_mod2_dims(int cap)
{
    std::vector<BigInt> out(static_cast<std::size_t>(cap) + 1);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; a + 2 * b <= cap; ++b)
            for (int c = 0; a + 2 * b + 4 * c <= cap; ++c)
                out[static_cast<std::size_t>(a + 2 * b + 4 * c)] += 1;
    return out;
}

std::vector<BigInt> sigma2_invariant_dims(int cap)
{
    std::vector<BigInt> out(static_cast<std::size_t>(cap) + 1);
    for (int k = 0; 2 * k <= cap; ++k) {
        std::vector<std::pair<int, int>> reps;
        for (int a = 0; a <= k; ++a) {
            const std::pair<int, int> m{a, k - a}, swapped{k - a, a};
            reps.push_back(std::min(m, swapped));
        }
        std::sort(reps.begin(), reps.end());
        reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
        out[static_cast<std::size_t>(2 * k)] = reps.size();
    }
    return out;
}

std::map<int, BigInt> raw_dl_dims(int deg_x, int p, int cap, bool strict)
{
    std::map<int, BigInt> out;
    if (cap < deg_x)
        return out;
    out[deg_x] = 1;
    std::vector<std::pair<int, int>> word; // (eps, s)
    auto shift_of = [p](int eps, int s) { return p == 2 ? s : 2 * s * (p - 1) - eps; };
    auto accept = [&]() {
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            const auto [e, s] = word[i];
            const int next = word[i + 1].second;
            if (p == 2 ? next > 2 * s : next > p * s - e)
                return false;
        }
        int e_plus_b;
        if (p == 2) {
            e_plus_b = word[0].second;
            for (std::size_t i = 1; i < word.size(); ++i)
                e_plus_b -= word[i].second;
        } else {
            e_plus_b = 2 * word[0].second - word[0].first + word[0].first;
            for (std::size_t i = 1; i < word.size(); ++i)
                e_plus_b -= 2 * word[i].second * (p - 1) - word[i].first;
        }
        return strict ? e_plus_b > deg_x : e_plus_b >= deg_x;
    };
    std::function<void(int)> go = [&](int degree) {
        if (!word.empty() && accept())
            out[degree] += 1;
        for (int eps = 0; eps <= (p == 2 ? 0 : 1); ++eps)
            for (int s = 1; degree + shift_of(eps, s) <= cap; ++s) {
                word.emplace_back(eps, s);
                go(degree + shift_of(eps, s));
                word.pop_back();
            }
    };
    go(deg_x);
    return out;
}

// ---------------------------------------------------------------- graphs

namespace
{

struct Matcher
{
    const StableGraph &a;
    const StableGraph &b;
    std::vector<int> pi, used, phi, phi_inv, val_a, val_b;
    BigInt count = 0;
    bool stop_at_first;

    Matcher(const StableGraph &a_, const StableGraph &b_, bool first) : a(a_), b(b_), stop_at_first(first)
    {
        pi.assign(a.sigma.size(), -1);
        used.assign(b.sigma.size(), 0);
        phi.assign(a.vertices.size(), -1);
        phi_inv.assign(b.vertices.size(), -1);
        val_a.assign(a.vertices.size(), 0);
        val_b.assign(b.vertices.size(), 0);
        for (int t : a.tau)
            ++val_a[static_cast<std::size_t>(t)];
        for (int t : b.tau)
            ++val_b[static_cast<std::size_t>(t)];
    }

    bool done() const { return stop_at_first && count > 0; }

    void search(std::size_t h)
    {
        if (done())
            return;
        if (h == a.sigma.size()) {
            count += isolated_matchings();
            return;
        }
        const int sa = a.sigma[h];
        const bool leg = sa == static_cast<int>(h);
        for (std::size_t t = 0; t < b.sigma.size() && !done(); ++t) {
            if (used[t])
                continue;
            const int sb = b.sigma[t];
            if (leg != (sb == static_cast<int>(t)))
                continue;
            if (leg && a.legs.at(static_cast<int>(h)) != b.legs.at(static_cast<int>(t)))
                continue;
            if (!leg && sa < static_cast<int>(h) && pi[static_cast<std::size_t>(sa)] != sb)
                continue;
            const int va = a.tau[h], vb = b.tau[t];
            const bool fresh = phi[static_cast<std::size_t>(va)] == -1;
            if (fresh) {
                if (phi_inv[static_cast<std::size_t>(vb)] != -1)
                    continue;
                if (!(a.vertices[static_cast<std::size_t>(va)] == b.vertices[static_cast<std::size_t>(vb)]) ||
                    val_a[static_cast<std::size_t>(va)] != val_b[static_cast<std::size_t>(vb)])
                    continue;
                phi[static_cast<std::size_t>(va)] = vb;
                phi_inv[static_cast<std::size_t>(vb)] = va;
            } else if (phi[static_cast<std::size_t>(va)] != vb) {
                continue;
            }
            pi[h] = static_cast<int>(t);
            used[t] = 1;
            search(h + 1);
            used[t] = 0;
            pi[h] = -1;
            if (fresh) {
                phi[static_cast<std::size_t>(va)] = -1;
                phi_inv[static_cast<std::size_t>(vb)] = -1;
            }
        }
    }

    // Vertices without half-edges are matched by data only.
    BigInt isolated_matchings() const
    {
        std::map<std::tuple<int, bool, std::int64_t>, std::pair<int, int>> classes;
        for (std::size_t v = 0; v < a.vertices.size(); ++v)
            if (val_a[v] == 0) {
                const auto &d = a.vertices[v];
                ++classes[{d.genus, d.pointed, d.decoration.value_or(-1)}].first;
            }
        for (std::size_t v = 0; v < b.vertices.size(); ++v)
            if (val_b[v] == 0) {
                const auto &d = b.vertices[v];
                ++classes[{d.genus, d.pointed, d.decoration.value_or(-1)}].second;
            }
        BigInt total = 1;
        for (const auto &[key, counts] : classes) {
            if (counts.first != counts.second)
                return 0;
            total *= factorial(counts.first);
        }
        return total;
    }
};

bool same_shape(const StableGraph &a, const StableGraph &b)
{
    return a.vertices.size() == b.vertices.size() && a.sigma.size() == b.sigma.size();
}

bool connected(int V, const std::vector<int> &sigma, const std::vector<int> &tau)
{
    if (V <= 1)
        return true;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(V));
    for (std::size_t h = 0; h < sigma.size(); ++h)
        if (sigma[h] != static_cast<int>(h))
            adj[static_cast<std::size_t>(tau[h])].push_back(tau[static_cast<std::size_t>(sigma[h])]);
    std::vector<int> seen(static_cast<std::size_t>(V), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                q.push(w);
            }
    }
    return reached == V;
}

// Restricted growth strings: tau with vertices appearing in first-use order
// and exactly V blocks.
void for_each_rgs(int H, int V, const std::function<void(const std::vector<int> &)> &visit)
{
    std::vector<int> tau(static_cast<std::size_t>(H));
    std::function<void(int, int)> go = [&](int i, int blocks) {
        if (H - i < V - blocks)
            return;
        if (i == H) {
            if (blocks == V)
                visit(tau);
            return;
        }
        for (int v = 0; v <= std::min(blocks, V - 1); ++v) {
            tau[static_cast<std::size_t>(i)] = v;
            go(i + 1, std::max(blocks, v + 1));
        }
    };
    go(0, 0);
}

void for_each_genus_vector(int V, int total, const std::function<void(const std::vector<int> &)> &visit)
{
    std::vector<int> gv(static_cast<std::size_t>(V));
    std::function<void(int, int)> go = [&](int i, int left) {
        if (i == V - 1) {
            gv[static_cast<std::size_t>(i)] = left;
            visit(gv);
            return;
        }
        for (int x = 0; x <= left; ++x) {
            gv[static_cast<std::size_t>(i)] = x;
            go(i + 1, left - x);
        }
    };
    go(0, total);
}

} // namespace

BigInt aut_count(const StableGraph &g)
{
    Matcher m(g, g, false);
    m.search(0);
    return m.count;
}

bool isomorphic(const StableGraph &a, const StableGraph &b)
{
    if (!same_shape(a, b))
        return false;
    Matcher m(a, b, true);
    m.search(0);
    return m.count > 0;
}

std::vector<StableGraph> brute_strata(int g, int n)
{
    std::vector<StableGraph> reps;
    std::map<std::vector<int>, std::vector<std::size_t>> buckets;
    const int max_e = 3 * g - 3 + n;
    for (int E = 0; E <= max_e; ++E) {
        const int H = n + 2 * E;
        std::vector<int> sigma(static_cast<std::size_t>(H));
        for (int h = 0; h < n; ++h)
            sigma[static_cast<std::size_t>(h)] = h;
        for (int k = 0; k < E; ++k) {
            sigma[static_cast<std::size_t>(n + 2 * k)] = n + 2 * k + 1;
            sigma[static_cast<std::size_t>(n + 2 * k + 1)] = n + 2 * k;
        }
        for (int V = 1; V <= E + 1; ++V) {
            const int total = g - E - 1 + V;
            if (total < 0)
                continue;
            auto with_tau = [&](const std::vector<int> &tau) {
                if (!connected(V, sigma, tau))
                    return;
                std::vector<int> val(static_cast<std::size_t>(V), 0);
                for (int t : tau)
                    ++val[static_cast<std::size_t>(t)];
                for_each_genus_vector(V, total, [&](const std::vector<int> &gv) {
                    for (int v = 0; v < V; ++v) {
                        const int va = val[static_cast<std::size_t>(v)], gg = gv[static_cast<std::size_t>(v)];
                        if ((va < 3 && gg < 1) || (va == 0 && gg < 2))
                            return;
                    }
                    StableGraph G;
                    for (int x : gv)
                        G.vertices.push_back({x, false, std::nullopt});
                    G.sigma = sigma;
                    G.tau = tau;
                    for (int h = 0; h < n; ++h)
                        G.legs[h] = h + 1;
                    std::vector<int> key{V, E};
                    std::vector<std::pair<int, int>> profile;
                    for (int v = 0; v < V; ++v)
                        profile.emplace_back(gv[static_cast<std::size_t>(v)], val[static_cast<std::size_t>(v)]);
                    std::sort(profile.begin(), profile.end());
                    for (auto [x, y] : profile) {
                        key.push_back(x);
                        key.push_back(y);
                    }
                    auto &bucket = buckets[key];
                    for (std::size_t idx : bucket)
                        if (isomorphic(reps[idx], G))
                            return;
                    bucket.push_back(reps.size());
                    reps.push_back(std::move(G));
                });
            };
            if (H == 0) {
                if (V == 1)
                    with_tau({});
            } else {
                for_each_rgs(H, V, with_tau);
            }
        }
    }
    return reps;
}

StableGraph relabel(const StableGraph &g, std::mt19937_64 &rng)
{
    std::vector<int> pv(g.vertices.size()), ph(g.sigma.size());
    std::iota(pv.begin(), pv.end(), 0);
    std::iota(ph.begin(), ph.end(), 0);
    std::shuffle(pv.begin(), pv.end(), rng);
    std::shuffle(ph.begin(), ph.end(), rng);
    StableGraph out;
    out.vertices.resize(g.vertices.size());
    out.sigma.resize(g.sigma.size());
    out.tau.resize(g.tau.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        out.vertices[static_cast<std::size_t>(pv[v])] = g.vertices[v];
    for (std::size_t h = 0; h < g.sigma.size(); ++h) {
        out.sigma[static_cast<std::size_t>(ph[h])] = ph[static_cast<std::size_t>(g.sigma[h])];
        out.tau[static_cast<std::size_t>(ph[h])] = pv[static_cast<std::size_t>(g.tau[h])];
    }
    for (const auto &[h, label] : g.legs)
        out.legs[ph[static_cast<std::size_t>(h)]] = label;
    return out;
}

StableGraph random_stable_graph(std::mt19937_64 &rng, const RandomGraphOptions &opt)
{
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (;;) {
        const int V = uni(1, opt.max_vertices);
        std::vector<int> genus(static_cast<std::size_t>(V));
        for (auto &x : genus)
            x = uni(0, 2);
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < V; ++v)
            edges.emplace_back(uni(0, v - 1), v);
        const int extra = uni(0, opt.max_extra_edges);
        for (int k = 0; k < extra; ++k)
            edges.emplace_back(uni(0, V - 1), uni(0, V - 1));
        std::vector<std::pair<int, LegLabel>> legs;
        const int labeled = uni(0, opt.max_labeled_legs);
        for (int l = 1; l <= labeled; ++l)
            legs.emplace_back(uni(0, V - 1), l);
        if (opt.unlabeled_legs)
            for (int k = uni(0, 2); k > 0; --k)
                legs.emplace_back(uni(0, V - 1), std::nullopt);
        struct Leaf
        {
            int attach, genus;
            std::int64_t decoration;
        };
        std::vector<Leaf> leaves;
        if (opt.pointed)
            for (int k = uni(0, 3); k > 0; --k)
                leaves.push_back({uni(0, V - 1), uni(1, 2), uni(1, 2)});

        const int half_edges = 2 * static_cast<int>(edges.size() + leaves.size()) + static_cast<int>(legs.size());
        if (half_edges > opt.max_half_edges)
            continue;

        std::vector<int> val(static_cast<std::size_t>(V), 0);
        for (auto [u, v] : edges) {
            ++val[static_cast<std::size_t>(u)];
            ++val[static_cast<std::size_t>(v)];
        }
        for (const auto &[v, l] : legs)
            ++val[static_cast<std::size_t>(v)];
        for (const auto &leaf : leaves)
            ++val[static_cast<std::size_t>(leaf.attach)];
        for (int v = 0; v < V; ++v) {
            auto &gg = genus[static_cast<std::size_t>(v)];
            if (val[static_cast<std::size_t>(v)] == 0)
                gg = std::max(gg, 2);
            else if (val[static_cast<std::size_t>(v)] < 3)
                gg = std::max(gg, 1);
        }

        GraphBuilder b;
        for (int x : genus)
            b.add_vertex(x);
        for (auto [u, v] : edges)
            b.add_edge(u, v);
        for (const auto &[v, l] : legs)
            b.add_leg(v, l);
        for (const auto &leaf : leaves) {
            const int w = b.add_pointed_vertex(leaf.genus, leaf.decoration);
            b.add_edge(leaf.attach, w);
        }
        return b.build();
    }
}

} // namespace mbar::oracle

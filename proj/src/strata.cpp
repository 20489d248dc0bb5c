#include <mbar/parallel.hpp>
#include <mbar/stable_graph.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

namespace mbar
{

bool is_stable_type(int g, int n) noexcept { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

namespace
{

struct Task
{
    int edges;
    std::vector<int> genera; // nonincreasing
};

void genus_sequences(int remaining, int slots, int max_part, std::vector<int> &cur, std::vector<std::vector<int>> &out)
{
    if (slots == 0) {
        if (remaining == 0)
            out.push_back(cur);
        return;
    }
    for (int x = std::min(remaining, max_part); x >= 0; --x) {
        cur.push_back(x);
        genus_sequences(remaining - x, slots - 1, x, cur, out);
        cur.pop_back();
    }
}

// Valence a vertex of the given genus needs in order to be stable.
int required_valence(int genus) { return genus == 0 ? 3 : genus == 1 ? 1 : 0; }

auto representative_key(const StableGraph &g)
{
    std::vector<int> genera;
    for (const auto &v : g.vertices)
        genera.push_back(v.genus);
    std::vector<std::pair<int, int>> legs;
    for (const auto &[h, label] : g.legs)
        legs.emplace_back(h, label.value_or(0));
    return std::make_tuple(genera, g.sigma, g.tau, legs);
}

class StrataCollector
{
public:
    void offer(StableGraph graph)
    {
        GraphIsoClass iso = canonical_form(graph);
        std::lock_guard lock(mutex_);
        auto [it, inserted] = found_.try_emplace(std::move(iso), graph);
        if (!inserted && representative_key(graph) < representative_key(it->second))
            it->second = std::move(graph);
    }

    std::vector<Stratum> take()
    {
        std::vector<Stratum> out;
        for (auto &[iso, graph] : found_)
            out.push_back({iso, std::move(graph)});
        std::sort(out.begin(), out.end(), [](const Stratum &a, const Stratum &b) {
            const int ea = a.representative.edge_count(), eb = b.representative.edge_count();
            return ea != eb ? ea < eb : a.iso < b.iso;
        });
        return out;
    }

private:
    std::mutex mutex_;
    std::map<GraphIsoClass, StableGraph> found_;
};

class TaskRunner
{
public:
    TaskRunner(const Task &task, int n, StrataCollector &sink)
        : task_(task), n_(n), V_(static_cast<int>(task.genera.size())), sink_(sink),
          valence_(static_cast<std::size_t>(V_), 0)
    {
        for (int i = 0; i < V_; ++i)
            for (int j = i; j < V_; ++j)
                pairs_.emplace_back(i, j);
    }

    void run() { place_edges(0, task_.edges); }

private:
    int deficit() const
    {
        int d = 0;
        for (int v = 0; v < V_; ++v)
            d += std::max(0, required_valence(task_.genera[static_cast<std::size_t>(v)]) - valence_[static_cast<std::size_t>(v)]);
        return d;
    }

    void place_edges(std::size_t first_pair, int remaining)
    {
        if (deficit() > 2 * remaining + n_)
            return;
        if (remaining == 0) {
            if (edges_connected())
                place_legs(1);
            return;
        }
        for (std::size_t p = first_pair; p < pairs_.size(); ++p) {
            auto [a, b] = pairs_[p];
            chosen_.push_back(pairs_[p]);
            ++valence_[static_cast<std::size_t>(a)];
            ++valence_[static_cast<std::size_t>(b)];
            place_edges(p, remaining - 1);
            --valence_[static_cast<std::size_t>(a)];
            --valence_[static_cast<std::size_t>(b)];
            chosen_.pop_back();
        }
    }

    bool edges_connected() const
    {
        std::vector<int> parent(static_cast<std::size_t>(V_));
        for (int v = 0; v < V_; ++v)
            parent[static_cast<std::size_t>(v)] = v;
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x)
                x = parent[static_cast<std::size_t>(x)];
            return x;
        };
        int components = V_;
        for (auto [a, b] : chosen_) {
            const int ra = find(a), rb = find(b);
            if (ra != rb) {
                parent[static_cast<std::size_t>(ra)] = rb;
                --components;
            }
        }
        return components == 1;
    }

    void place_legs(int label)
    {
        if (label > n_) {
            if (deficit() == 0)
                emit();
            return;
        }
        if (deficit() > n_ - label + 1)
            return;
        for (int v = 0; v < V_; ++v) {
            leg_vertex_.push_back(v);
            ++valence_[static_cast<std::size_t>(v)];
            place_legs(label + 1);
            --valence_[static_cast<std::size_t>(v)];
            leg_vertex_.pop_back();
        }
    }

    void emit()
    {
        GraphBuilder b;
        for (int genus : task_.genera)
            b.add_vertex(genus);
        for (auto [u, v] : chosen_)
            b.add_edge(u, v);
        for (std::size_t i = 0; i < leg_vertex_.size(); ++i)
            b.add_leg(leg_vertex_[i], static_cast<int>(i) + 1);
        sink_.offer(b.build());
    }

    const Task &task_;
    int n_;
    int V_;
    StrataCollector &sink_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<std::pair<int, int>> chosen_;
    std::vector<int> valence_;
    std::vector<int> leg_vertex_;
};

} // namespace

std::vector<Stratum> enumerate_stable_graphs(int g, int n, std::optional<int> max_edges, int jobs)
{
    if (!is_stable_type(g, n))
        throw ContractError("(g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ") admits no stable curves");
    int edge_bound = 3 * g - 3 + n;
    if (max_edges)
        edge_bound = std::min(edge_bound, *max_edges);

    // Every vertex contributes 2g(v) - 2 + val(v) >= 1 to 2g - 2 + n.
    const int max_vertices = 2 * g - 2 + n;
    std::vector<Task> tasks;
    for (int E = 0; E <= edge_bound; ++E)
        for (int V = 1; V <= std::min(max_vertices, E + 1); ++V) {
            const int genus_sum = g - E - 1 + V;
            if (genus_sum < 0)
                continue;
            std::vector<std::vector<int>> seqs;
            std::vector<int> cur;
            genus_sequences(genus_sum, V, genus_sum, cur, seqs);
            for (auto &s : seqs)
                tasks.push_back({E, std::move(s)});
        }

    StrataCollector collector;
    parallel_for(tasks.size(), jobs, [&](std::size_t i) { TaskRunner(tasks[i], n, collector).run(); });
    return collector.take();
}

std::vector<BoundaryComponent> enumerate_elementary(int g, int n)
{
    std::vector<BoundaryComponent> out;
    if (!is_stable_type(g, n))
        return out;
    auto stable_vertex = [](int genus, int valence) { return valence >= 3 || (genus >= 1 && valence >= 1) || genus >= 2; };
    if (g >= 1 && stable_vertex(g - 1, n + 2))
        out.push_back(BoundaryComponent::irr());
    for (int h = 0; 2 * h <= g; ++h)
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> P, Pc;
            for (int i = 0; i < n; ++i)
                ((mask >> i) & 1u ? P : Pc).push_back(i + 1);
            if (!stable_vertex(h, static_cast<int>(P.size()) + 1) || !stable_vertex(g - h, static_cast<int>(Pc.size()) + 1))
                continue;
            // With equal genera (h, P) and (h, P^c) are the same graph; keep
            // the smaller side, ordered by size and then lexicographically.
            if (2 * h == g && std::make_pair(Pc.size(), Pc) < std::make_pair(P.size(), P))
                continue;
            out.push_back(BoundaryComponent::separating(h, std::move(P)));
        }
    std::sort(out.begin(), out.end());
    return out;
}

StableGraph elementary_graph(const BoundaryComponent &alpha, int g, int n)
{
    GraphBuilder b;
    if (alpha.is_irr()) {
        const int v = b.add_vertex(g - 1);
        b.add_edge(v, v);
        for (int i = 1; i <= n; ++i)
            b.add_leg(v, i);
        return b.build();
    }
    const int small = b.add_vertex(alpha.h);
    const int large = b.add_vertex(g - alpha.h);
    b.add_edge(small, large);
    for (int i = 1; i <= n; ++i)
        b.add_leg(std::binary_search(alpha.P.begin(), alpha.P.end(), i) ? small : large, i);
    return b.build();
}

} // namespace mbar

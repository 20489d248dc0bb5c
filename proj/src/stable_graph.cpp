#include <mbar/stable_graph.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

namespace mbar
{

int StableGraph::valence(int v) const
{
    return static_cast<int>(std::count(tau.begin(), tau.end(), v));
}

std::vector<Edge> StableGraph::edges() const
{
    std::vector<Edge> out;
    for (int h = 0; h < half_edge_count(); ++h) {
        const int s = sigma[static_cast<std::size_t>(h)];
        if (h < s)
            out.push_back({h, s});
    }
    return out;
}

int StableGraph::edge_count() const { return static_cast<int>(edges().size()); }

int StableGraph::labeled_leg_count() const
{
    return static_cast<int>(std::count_if(legs.begin(), legs.end(), [](const auto &kv) { return kv.second.has_value(); }));
}

int GraphBuilder::add_vertex(int genus)
{
    graph_.vertices.push_back({genus, false, std::nullopt});
    return graph_.vertex_count() - 1;
}

int GraphBuilder::add_pointed_vertex(int genus, std::int64_t decoration)
{
    graph_.vertices.push_back({genus, true, decoration});
    return graph_.vertex_count() - 1;
}

int GraphBuilder::add_half_edge(int v)
{
    const int h = graph_.half_edge_count();
    graph_.sigma.push_back(h);
    graph_.tau.push_back(v);
    return h;
}

void GraphBuilder::add_edge(int u, int v)
{
    const int a = add_half_edge(u);
    const int b = add_half_edge(v);
    graph_.sigma[static_cast<std::size_t>(a)] = b;
    graph_.sigma[static_cast<std::size_t>(b)] = a;
}

void GraphBuilder::add_leg(int v, LegLabel label)
{
    const int h = add_half_edge(v);
    graph_.legs[h] = label;
}

const char *rule_name(Rule rule) noexcept
{
    switch (rule) {
    case Rule::SizeMismatch: return "size-mismatch";
    case Rule::SigmaOutOfRange: return "sigma-out-of-range";
    case Rule::SigmaNotInvolution: return "sigma-not-involution";
    case Rule::TauOutOfRange: return "tau-out-of-range";
    case Rule::LegSetMismatch: return "leg-set-mismatch";
    case Rule::BadLegLabel: return "bad-leg-label";
    case Rule::DuplicateLegLabel: return "duplicate-leg-label";
    case Rule::NegativeGenus: return "negative-genus";
    case Rule::Unstable: return "unstable-vertex";
    case Rule::PointedNotUnivalent: return "pointed-not-univalent";
    case Rule::DecorationMismatch: return "decoration-mismatch";
    case Rule::Disconnected: return "disconnected";
    }
    return "unknown";
}

namespace
{

std::optional<Violation> structural_violation(const StableGraph &g)
{
    const int H = g.half_edge_count();
    const int V = g.vertex_count();
    if (g.tau.size() != g.sigma.size())
        return Violation{Rule::SizeMismatch, -1, -1, "sigma and tau have different lengths"};
    for (int h = 0; h < H; ++h) {
        const int s = g.sigma[static_cast<std::size_t>(h)];
        if (s < 0 || s >= H)
            return Violation{Rule::SigmaOutOfRange, -1, h, "sigma maps half-edge " + std::to_string(h) + " out of range"};
    }
    for (int h = 0; h < H; ++h)
        if (g.sigma[static_cast<std::size_t>(g.sigma[static_cast<std::size_t>(h)])] != h)
            return Violation{Rule::SigmaNotInvolution, -1, h, "sigma(sigma(" + std::to_string(h) + ")) != " + std::to_string(h)};
    for (int h = 0; h < H; ++h) {
        const int t = g.tau[static_cast<std::size_t>(h)];
        if (t < 0 || t >= V)
            return Violation{Rule::TauOutOfRange, -1, h, "half-edge " + std::to_string(h) + " attached to a missing vertex"};
    }
    for (int h = 0; h < H; ++h)
        if (g.is_leg(h) != g.legs.contains(h))
            return Violation{Rule::LegSetMismatch, g.tau[static_cast<std::size_t>(h)], h,
                             "leg table does not match the fixed points of sigma at half-edge " + std::to_string(h)};
    if (g.legs.size() != static_cast<std::size_t>(std::count_if(g.sigma.begin(), g.sigma.end(),
                                                                [&, h = 0](int s) mutable { return s == h++; })))
        return Violation{Rule::LegSetMismatch, -1, -1, "leg table names half-edges that are not legs"};
    std::set<int> labels;
    for (const auto &[h, label] : g.legs) {
        if (!label)
            continue;
        if (*label < 1)
            return Violation{Rule::BadLegLabel, g.tau[static_cast<std::size_t>(h)], h, "leg labels must be positive"};
        if (!labels.insert(*label).second)
            return Violation{Rule::DuplicateLegLabel, g.tau[static_cast<std::size_t>(h)], h,
                             "leg label " + std::to_string(*label) + " used twice"};
    }
    return std::nullopt;
}

std::optional<Violation> vertex_violation(const StableGraph &g, int v, int valence)
{
    const auto &data = g.vertices[static_cast<std::size_t>(v)];
    if (data.genus < 0)
        return Violation{Rule::NegativeGenus, v, -1, "vertex " + std::to_string(v) + " has negative genus"};
    if (data.pointed != data.decoration.has_value())
        return Violation{Rule::DecorationMismatch, v, -1, "vertex " + std::to_string(v) + ": decoration present iff pointed"};
    if (data.pointed && valence != 1)
        return Violation{Rule::PointedNotUnivalent, v, -1, "pointed vertex " + std::to_string(v) + " is not univalent"};
    if (valence < 3 && data.genus < 1)
        return Violation{Rule::Unstable, v, -1,
                         "vertex " + std::to_string(v) + " has valence " + std::to_string(valence) + " < 3 and genus 0"};
    if (valence == 0 && data.genus < 2)
        return Violation{Rule::Unstable, v, -1, "vertex " + std::to_string(v) + " has valence 0 and genus < 2"};
    return std::nullopt;
}

std::vector<int> valences(const StableGraph &g)
{
    std::vector<int> val(g.vertices.size(), 0);
    for (int t : g.tau)
        ++val[static_cast<std::size_t>(t)];
    return val;
}

// Resolves a list of half-edge indices naming edges into the set of
// half-edges (both halves) of those edges.
std::vector<bool> resolve_edge_set(const StableGraph &g, std::span<const int> K)
{
    std::vector<bool> marked(g.sigma.size(), false);
    for (int h : K) {
        if (h < 0 || h >= g.half_edge_count())
            throw ContractError("edge set names half-edge " + std::to_string(h) + ", which does not exist");
        if (g.is_leg(h))
            throw ContractError("edge set names half-edge " + std::to_string(h) + ", which is a leg");
        marked[static_cast<std::size_t>(h)] = true;
        marked[static_cast<std::size_t>(g.sigma[static_cast<std::size_t>(h)])] = true;
    }
    return marked;
}

// Drops the marked vertices and half-edges, renumbering the rest in order.
// Surviving half-edges must not point at dropped ones through sigma.
StableGraph compact(const StableGraph &g, const std::vector<bool> &drop_vertex, const std::vector<bool> &drop_half)
{
    std::vector<int> vmap(g.vertices.size(), -1), hmap(g.sigma.size(), -1);
    StableGraph out;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (!drop_vertex[v]) {
            vmap[v] = out.vertex_count();
            out.vertices.push_back(g.vertices[v]);
        }
    int next = 0;
    for (std::size_t h = 0; h < g.sigma.size(); ++h)
        if (!drop_half[h])
            hmap[h] = next++;
    out.sigma.resize(static_cast<std::size_t>(next));
    out.tau.resize(static_cast<std::size_t>(next));
    for (std::size_t h = 0; h < g.sigma.size(); ++h) {
        if (drop_half[h])
            continue;
        const int nh = hmap[h];
        out.sigma[static_cast<std::size_t>(nh)] = hmap[static_cast<std::size_t>(g.sigma[h])];
        out.tau[static_cast<std::size_t>(nh)] = vmap[static_cast<std::size_t>(g.tau[h])];
        if (auto it = g.legs.find(static_cast<int>(h)); it != g.legs.end())
            out.legs[nh] = it->second;
    }
    return out;
}

std::vector<ComponentInfo> component_info(const StableGraph &g)
{
    const auto val = valences(g);
    std::vector<ComponentInfo> out;
    for (auto &verts : connected_components(g)) {
        ComponentInfo info;
        for (int v : verts)
            if (!info.violation)
                info.violation = vertex_violation(g, v, val[static_cast<std::size_t>(v)]);
        info.vertices = std::move(verts);
        out.push_back(std::move(info));
    }
    return out;
}

} // namespace

std::optional<Violation> validate(const StableGraph &graph, ValidateOptions options)
{
    if (auto s = structural_violation(graph))
        return s;
    const auto val = valences(graph);
    for (int v = 0; v < graph.vertex_count(); ++v)
        if (auto s = vertex_violation(graph, v, val[static_cast<std::size_t>(v)]))
            return s;
    if (!options.allow_disconnected && !is_connected(graph))
        return Violation{Rule::Disconnected, -1, -1, "graph is not connected"};
    return std::nullopt;
}

void require_well_formed(const StableGraph &graph)
{
    if (auto s = structural_violation(graph))
        throw ContractError(std::string("malformed graph (") + rule_name(s->rule) + "): " + s->message);
}

std::vector<std::vector<int>> connected_components(const StableGraph &graph)
{
    const int V = graph.vertex_count();
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(V));
    for (int h = 0; h < graph.half_edge_count(); ++h)
        incident[static_cast<std::size_t>(graph.tau[static_cast<std::size_t>(h)])].push_back(h);
    std::vector<int> comp(static_cast<std::size_t>(V), -1);
    std::vector<std::vector<int>> out;
    for (int start = 0; start < V; ++start) {
        if (comp[static_cast<std::size_t>(start)] >= 0)
            continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{start};
        comp[static_cast<std::size_t>(start)] = id;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            out.back().push_back(v);
            for (int h : incident[static_cast<std::size_t>(v)]) {
                const int w = graph.tau[static_cast<std::size_t>(graph.sigma[static_cast<std::size_t>(h)])];
                if (comp[static_cast<std::size_t>(w)] < 0) {
                    comp[static_cast<std::size_t>(w)] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(out.back().begin(), out.back().end());
    }
    return out;
}

bool is_connected(const StableGraph &graph) { return connected_components(graph).size() <= 1; }

int genus(const StableGraph &graph)
{
    require_well_formed(graph);
    if (!is_connected(graph))
        throw ContractError("genus is only defined for connected graphs");
    int total = graph.edge_count() + 1;
    for (const auto &v : graph.vertices)
        total += v.genus - 1;
    return total;
}

bool SplitGraph::all_stable() const noexcept
{
    return std::all_of(components.begin(), components.end(), [](const ComponentInfo &c) { return c.stable(); });
}

StableGraph SplitGraph::component_graph(std::size_t i) const
{
    const auto &keep = components.at(i).vertices;
    std::vector<bool> drop_vertex(graph.vertices.size(), true), drop_half(graph.sigma.size(), true);
    for (int v : keep)
        drop_vertex[static_cast<std::size_t>(v)] = false;
    for (std::size_t h = 0; h < graph.sigma.size(); ++h)
        drop_half[h] = drop_vertex[static_cast<std::size_t>(graph.tau[h])];
    return compact(graph, drop_vertex, drop_half);
}

StableGraph contract_edges(const StableGraph &graph, std::span<const int> edge_half_edges)
{
    require_well_formed(graph);
    const auto marked = resolve_edge_set(graph, edge_half_edges);
    const int V = graph.vertex_count();

    std::vector<int> parent(static_cast<std::size_t>(V));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (const auto &e : graph.edges()) {
        if (!marked[static_cast<std::size_t>(e.h1)])
            continue;
        const int a = find(graph.tau[static_cast<std::size_t>(e.h1)]);
        const int b = find(graph.tau[static_cast<std::size_t>(e.h2)]);
        if (a != b)
            parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }

    // Each class of merged vertices keeps its smallest index as root. Its
    // genus is the sum of genera plus (contracted edges) - (vertices - 1).
    std::vector<int> class_size(static_cast<std::size_t>(V), 0), class_edges(static_cast<std::size_t>(V), 0);
    std::vector<int> class_genus(static_cast<std::size_t>(V), 0);
    for (int v = 0; v < V; ++v) {
        const int r = find(v);
        ++class_size[static_cast<std::size_t>(r)];
        class_genus[static_cast<std::size_t>(r)] += graph.vertices[static_cast<std::size_t>(v)].genus;
    }
    for (const auto &e : graph.edges())
        if (marked[static_cast<std::size_t>(e.h1)])
            ++class_edges[static_cast<std::size_t>(find(graph.tau[static_cast<std::size_t>(e.h1)]))];

    StableGraph merged = graph;
    std::vector<bool> drop_vertex(static_cast<std::size_t>(V), false);
    for (int v = 0; v < V; ++v) {
        const int r = find(v);
        if (r != v) {
            drop_vertex[static_cast<std::size_t>(v)] = true;
            continue;
        }
        auto &data = merged.vertices[static_cast<std::size_t>(v)];
        const int size = class_size[static_cast<std::size_t>(v)];
        data.genus = class_genus[static_cast<std::size_t>(v)] + class_edges[static_cast<std::size_t>(v)] - (size - 1);
        if (size > 1) {
            // A merged vertex is never univalent-pointed any more.
            data.pointed = false;
            data.decoration.reset();
        }
    }
    for (auto &t : merged.tau)
        t = find(t);
    return compact(merged, drop_vertex, marked);
}

SplitGraph cut_edges(const StableGraph &graph, std::span<const int> edge_half_edges)
{
    require_well_formed(graph);
    const auto marked = resolve_edge_set(graph, edge_half_edges);
    StableGraph out = graph;
    for (int h = 0; h < out.half_edge_count(); ++h)
        if (marked[static_cast<std::size_t>(h)]) {
            out.sigma[static_cast<std::size_t>(h)] = h;
            out.legs[h] = std::nullopt;
        }
    auto components = component_info(out);
    return {std::move(out), std::move(components)};
}

SplitGraph delete_edges(const StableGraph &graph, std::span<const int> edge_half_edges)
{
    require_well_formed(graph);
    const auto marked = resolve_edge_set(graph, edge_half_edges);
    StableGraph g = compact(graph, std::vector<bool>(graph.vertices.size(), false), marked);

    // Smooth bivalent genus-0 ordinary vertices until none remain that can be
    // smoothed. A genus-0 vertex carrying a single loop, or two legs, has no
    // edge to merge into and is left in place (flagged unstable below).
    for (bool changed = true; changed;) {
        changed = false;
        const auto val = valences(g);
        for (int v = 0; v < g.vertex_count() && !changed; ++v) {
            const auto &data = g.vertices[static_cast<std::size_t>(v)];
            if (data.genus != 0 || data.pointed || val[static_cast<std::size_t>(v)] != 2)
                continue;
            int a = -1, b = -1;
            for (int h = 0; h < g.half_edge_count(); ++h)
                if (g.tau[static_cast<std::size_t>(h)] == v)
                    (a < 0 ? a : b) = h;
            const int pa = g.sigma[static_cast<std::size_t>(a)];
            const int pb = g.sigma[static_cast<std::size_t>(b)];
            if (pa == b || (pa == a && pb == b))
                continue;
            if (pa == a)
                std::swap(a, b);
            // Now a is an edge half; b is either an edge half or a leg.
            const int partner_a = g.sigma[static_cast<std::size_t>(a)];
            if (g.is_leg(b)) {
                g.sigma[static_cast<std::size_t>(partner_a)] = partner_a;
                g.legs[partner_a] = g.legs.at(b);
            } else {
                const int partner_b = g.sigma[static_cast<std::size_t>(b)];
                g.sigma[static_cast<std::size_t>(partner_a)] = partner_b;
                g.sigma[static_cast<std::size_t>(partner_b)] = partner_a;
            }
            g.legs.erase(b);
            g.sigma[static_cast<std::size_t>(a)] = a;
            g.sigma[static_cast<std::size_t>(b)] = b;
            std::vector<bool> drop_vertex(g.vertices.size(), false), drop_half(g.sigma.size(), false);
            drop_vertex[static_cast<std::size_t>(v)] = true;
            drop_half[static_cast<std::size_t>(a)] = true;
            drop_half[static_cast<std::size_t>(b)] = true;
            g.legs.erase(a);
            g = compact(g, drop_vertex, drop_half);
            changed = true;
        }
    }
    auto components = component_info(g);
    return {std::move(g), std::move(components)};
}

void to_json(nlohmann::json &j, const StableGraph &graph)
{
    auto verts = nlohmann::json::array();
    for (const auto &v : graph.vertices) {
        nlohmann::json jv{{"genus", v.genus}, {"pointed", v.pointed}};
        if (v.decoration)
            jv["decoration"] = *v.decoration;
        verts.push_back(std::move(jv));
    }
    auto legs = nlohmann::json::object();
    for (const auto &[h, label] : graph.legs)
        legs[std::to_string(h)] = label ? nlohmann::json(*label) : nlohmann::json(nullptr);
    j = nlohmann::json{{"vertices", std::move(verts)},
                       {"half_edges", graph.half_edge_count()},
                       {"sigma", graph.sigma},
                       {"tau", graph.tau},
                       {"legs", std::move(legs)}};
}

StableGraph graph_from_json(const nlohmann::json &j)
{
    StableGraph g;
    for (const auto &jv : j.at("vertices")) {
        VertexData v;
        v.genus = jv.at("genus").get<int>();
        v.pointed = jv.value("pointed", false);
        if (jv.contains("decoration") && !jv.at("decoration").is_null())
            v.decoration = jv.at("decoration").get<std::int64_t>();
        g.vertices.push_back(v);
    }
    g.sigma = j.at("sigma").get<std::vector<int>>();
    g.tau = j.at("tau").get<std::vector<int>>();
    if (j.contains("half_edges") && j.at("half_edges").get<int>() != g.half_edge_count())
        throw ContractError("half_edges does not match the length of sigma");
    if (j.contains("legs"))
        for (const auto &[key, value] : j.at("legs").items()) {
            std::size_t pos = 0;
            const int h = std::stoi(key, &pos);
            if (pos != key.size())
                throw ContractError("leg key '" + key + "' is not a half-edge index");
            if (value.is_null())
                g.legs[h] = std::nullopt;
            else if (value.is_string())
                g.legs[h] = std::stoi(value.get<std::string>());
            else
                g.legs[h] = value.get<int>();
        }
    return g;
}

} // namespace mbar

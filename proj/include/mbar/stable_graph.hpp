#ifndef MBAR_STABLE_GRAPH_HPP
#define MBAR_STABLE_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <mbar/boundary.hpp>
#include <mbar/series.hpp>

namespace mbar
{

struct VertexData
{
    int genus = 0;
    bool pointed = false;
    std::optional<std::int64_t> decoration{}; // present iff pointed

    friend bool operator==(const VertexData &, const VertexData &) = default;
};

// A leg either carries a marked-point label in 1..n or is unlabeled
// (created by cutting an edge).
using LegLabel = std::optional<int>;

struct Edge
{
    int h1; // h1 < h2, sigma(h1) == h2
    int h2;

    friend bool operator==(const Edge &, const Edge &) = default;
};

// Half-edge presentation of a stable graph: `sigma` is an involution on the
// half-edges whose fixed points are the legs, `tau` attaches half-edges to
// vertices.
struct StableGraph
{
    std::vector<VertexData> vertices;
    std::vector<int> sigma;
    std::vector<int> tau;
    std::map<int, LegLabel> legs; // keyed by fixed points of sigma

    int vertex_count() const noexcept { return static_cast<int>(vertices.size()); }
    int half_edge_count() const noexcept { return static_cast<int>(sigma.size()); }
    bool is_leg(int h) const { return sigma.at(static_cast<std::size_t>(h)) == h; }
    int valence(int v) const;
    std::vector<Edge> edges() const;
    int edge_count() const;
    int labeled_leg_count() const;

    friend bool operator==(const StableGraph &, const StableGraph &) = default;
};

// Incremental construction helper; half-edges are numbered in creation order.
class GraphBuilder
{
public:
    int add_vertex(int genus);
    int add_pointed_vertex(int genus, std::int64_t decoration);
    void add_edge(int u, int v);
    void add_leg(int v, LegLabel label);

    StableGraph build() const { return graph_; }

private:
    int add_half_edge(int v);
    StableGraph graph_;
};

// ---------------------------------------------------------------- validation

enum class Rule {
    SizeMismatch,
    SigmaOutOfRange,
    SigmaNotInvolution,
    TauOutOfRange,
    LegSetMismatch,
    BadLegLabel,
    DuplicateLegLabel,
    NegativeGenus,
    Unstable,
    PointedNotUnivalent,
    DecorationMismatch,
    Disconnected,
};

const char *rule_name(Rule rule) noexcept;

struct Violation
{
    Rule rule;
    int vertex = -1;    // offending vertex, if any
    int half_edge = -1; // offending half-edge, if any
    std::string message;
};

struct ValidateOptions
{
    bool allow_disconnected = false;
};

// Reports the first violated invariant, or nothing when the graph is valid.
std::optional<Violation> validate(const StableGraph &graph, ValidateOptions options = {});

// Structural checks only (sizes, sigma, tau, legs); throws ContractError.
void require_well_formed(const StableGraph &graph);

std::vector<std::vector<int>> connected_components(const StableGraph &graph);
bool is_connected(const StableGraph &graph);

// ---------------------------------------------------------------- edge calculus

// Arithmetic genus sum(g(v) - 1) + |E| + 1 of a connected graph.
int genus(const StableGraph &graph);

struct ComponentInfo
{
    std::vector<int> vertices;
    std::optional<Violation> violation; // stability failure inside the component

    bool stable() const noexcept { return !violation.has_value(); }
};

// A graph together with connectivity metadata, for operations whose result
// may be disconnected.
struct SplitGraph
{
    StableGraph graph;
    std::vector<ComponentInfo> components;

    bool connected() const noexcept { return components.size() <= 1; }
    bool all_stable() const noexcept;
    // Component `i` as a standalone graph (vertices and half-edges renumbered).
    StableGraph component_graph(std::size_t i) const;
};

// Edge sets are given by half-edge indices; either half of an edge names it.
// A leg index or an out-of-range index raises ContractError.
StableGraph contract_edges(const StableGraph &graph, std::span<const int> edge_half_edges);
SplitGraph cut_edges(const StableGraph &graph, std::span<const int> edge_half_edges);
SplitGraph delete_edges(const StableGraph &graph, std::span<const int> edge_half_edges);

// ---------------------------------------------------------------- isomorphism

struct GraphIsoClass
{
    std::string canonical_encoding;

    friend auto operator<=>(const GraphIsoClass &, const GraphIsoClass &) = default;
};

GraphIsoClass canonical_form(const StableGraph &graph);
bool is_isomorphic(const StableGraph &a, const StableGraph &b);

struct Automorphism
{
    std::vector<int> half_edges; // h -> image
    std::vector<int> vertices;   // v -> image
};

struct AutGroup
{
    BigInt order;
    std::vector<Automorphism> generators;
};

AutGroup automorphisms(const StableGraph &graph);

// Whether `a` is an automorphism of `graph` in the stable-graph sense.
bool is_automorphism(const StableGraph &graph, const Automorphism &a);

// ---------------------------------------------------------------- enumeration

bool is_stable_type(int g, int n) noexcept;

struct Stratum
{
    GraphIsoClass iso;
    StableGraph representative;
};

// All connected stable graphs of genus g with legs 1..n and no pointed
// vertices, up to isomorphism, with at most min(max_edges, 3g-3+n) edges.
// Sorted by (edge count, canonical encoding).
std::vector<Stratum> enumerate_stable_graphs(int g, int n, std::optional<int> max_edges = std::nullopt, int jobs = 1);

// Irreducible boundary divisors of type (g, n).
std::vector<BoundaryComponent> enumerate_elementary(int g, int n);

// The one-edge graph indexing `alpha`; legs 1..n.
StableGraph elementary_graph(const BoundaryComponent &alpha, int g, int n);

// ---------------------------------------------------------------- json

void to_json(nlohmann::json &j, const StableGraph &graph);
StableGraph graph_from_json(const nlohmann::json &j);

} // namespace mbar

#endif // MBAR_STABLE_GRAPH_HPP

#ifndef MBAR_BOUNDS_HPP
#define MBAR_BOUNDS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include <nlohmann/json_fwd.hpp>

#include <mbar/boundary.hpp>
#include <mbar/dyer_lashof.hpp>
#include <mbar/series.hpp>
#include <mbar/stable_graph.hpp>
#include <mbar/target_spaces.hpp>

namespace mbar
{

using Rational = boost::rational<long long>;

// "p/q", or "p" when q = 1.
std::string to_string(const Rational &r);
long long floor_of(const Rational &r);

// Boundary divisors with nontrivial self-intersections: the non-separating
// divisor (when stable) and (h, {}) whenever 2h < g, or 2h = g and n >= 1.
std::vector<BoundaryComponent> d_plus(int g, int n);

// One member of A together with its level l(alpha) in {0, 1}.
struct Selection
{
    BoundaryComponent alpha;
    int level = 1;

    friend auto operator<=>(const Selection &, const Selection &) = default;
};

// The pair (A, l), kept sorted by component.
class LevelMap
{
public:
    LevelMap() = default;
    // Throws if a component repeats, a level is not 0 or 1, or the
    // non-separating divisor has level 0.
    explicit LevelMap(std::vector<Selection> selections);

    const std::vector<Selection> &selections() const noexcept { return sel_; }
    std::size_t size() const noexcept { return sel_.size(); }
    bool empty() const noexcept { return sel_.empty(); }

    // "irr,sep:2" and "irr=1,sep:2=0".
    std::string a_spec() const;
    std::string ell_spec() const;

    friend auto operator<=>(const LevelMap &, const LevelMap &) = default;

private:
    std::vector<Selection> sel_;
};

// Parses an A-selection ("irr,sep:2") with an optional l-assignment
// ("irr=1,sep:2=0"). Unassigned separating members default to level 1.
LevelMap parse_level_map(const std::string &a_spec, const std::string &ell_spec = "");

// G_alpha: N(2) for irr, T(2) for level 1, U(1) for level 0.
GroupKind group_of(const Selection &s) noexcept;

// Multiplicities m_alpha, aligned with LevelMap::selections().
using APartition = std::vector<int>;

// r = g - sum m_alpha g_alpha.
int residual_genus(int g, const LevelMap &A, const APartition &m);

// min{ r/2 - 1; m_alpha/2; g_alpha/2 - 1 for separating alpha at level 1 }.
Rational c_of_partition(int g, const LevelMap &A, const APartition &m);

struct BestPartition
{
    Rational c;
    APartition m;
};

// Exhaustive maximum of c over A-partitions; ties go to the
// lexicographically smallest m.
BestPartition c_best(int g, const LevelMap &A);

// Supremum of c over real-valued partitions:
// min{ (g-2) / (2 (1 + sum g_alpha)); g_alpha/2 - 1 for separating level-1 alpha }.
Rational c_real(int g, const LevelMap &A);

// Poincare series of the product of Q BG_alpha^V over A.
PoincareSeries target_series(const LevelMap &A, FieldSpec field, int cap, DLConvention conv = DLConvention::Strict);

struct BoundReport
{
    int g = 0;
    int n = 0;
    LevelMap A;
    FieldSpec field = FieldSpec::rationals();
    int cap = 0;
    DLConvention convention = DLConvention::Strict;
    Rational c;
    Rational c_real;
    APartition optimal_m;
    std::map<int, BigInt> bounds; // degree -> lower bound on dim H_i, 0 <= i <= c
};

// Throws if A is empty or not contained in d_plus(g, n), or if cap < floor(c).
BoundReport betti_lower_bounds(int g, int n, const LevelMap &A, FieldSpec field, int cap,
                               DLConvention conv = DLConvention::Strict);

struct DegreeBound
{
    int degree;
    BigInt bound;
    LevelMap witness;
    Rational witness_c;
};

struct BestBoundsReport
{
    int g = 0;
    int n = 0;
    FieldSpec field = FieldSpec::rationals();
    int cap = 0;
    DLConvention convention = DLConvention::Strict;
    std::optional<Rational> max_c; // empty when d_plus(g, n) is empty
    std::vector<DegreeBound> degrees;
    std::size_t pairs_considered = 0;
};

// Per-degree maxima over every admissible (A, l), restricted to degrees
// <= cap. Witnesses are the first maximizing pair in enumeration order.
BestBoundsReport best_bounds(int g, int n, FieldSpec field, int cap, DLConvention conv = DLConvention::Strict,
                             int jobs = 1);

// Central vertex of genus r with legs 1..n and m_irr loops, plus m_alpha
// univalent genus-g_alpha neighbours per separating alpha, pointed with a
// shared decoration when l(alpha) = 0.
StableGraph build_test_graph(int g, int n, const LevelMap &A, const APartition &m);

// 2^{m_irr} * prod m_alpha!
BigInt wreath_order(const LevelMap &A, const APartition &m);

struct SigmaQuotientRange
{
    Rational degree_bound; // (g-2)/(2h+2)
    long long min_n;       // least n >= |P| (g-2)/(2h+2)
};

// Throws unless 1 <= h < g/2.
SigmaQuotientRange sigma_quotient_range(int g, int h, int size_p);

void to_json(nlohmann::json &j, const BoundReport &r);
void to_json(nlohmann::json &j, const BestBoundsReport &r);

} // namespace mbar

#endif // MBAR_BOUNDS_HPP

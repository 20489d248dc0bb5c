#include <mbar/bounds.hpp>
#include <mbar/parallel.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mbar
{

std::string to_string(const Rational &r)
{
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1)
        os << "/" << r.denominator();
    return os.str();
}

long long floor_of(const Rational &r)
{
    const long long q = r.numerator() / r.denominator();
    return (r.numerator() % r.denominator() != 0 && r.numerator() < 0) ? q - 1 : q;
}

std::vector<BoundaryComponent> d_plus(int g, int n)
{
    std::vector<BoundaryComponent> out;
    if (!is_stable_type(g, n))
        return out;
    if (g >= 2 || (g == 1 && n >= 1))
        out.push_back(BoundaryComponent::irr());
    for (int h = 1; 2 * h <= g; ++h)
        if (2 * h < g || n >= 1)
            out.push_back(BoundaryComponent::separating(h));
    return out;
}

LevelMap::LevelMap(std::vector<Selection> selections) : sel_(std::move(selections))
{
    std::sort(sel_.begin(), sel_.end());
    for (std::size_t i = 0; i < sel_.size(); ++i) {
        const auto &s = sel_[i];
        if (s.level != 0 && s.level != 1)
            throw ContractError("level of " + s.alpha.name() + " must be 0 or 1");
        if (s.alpha.is_irr() && s.level != 1)
            throw ContractError("the non-separating divisor always has level 1");
        if (i > 0 && sel_[i - 1].alpha == s.alpha)
            throw ContractError("component " + s.alpha.name() + " is selected twice");
    }
}

std::string LevelMap::a_spec() const
{
    std::string out;
    for (const auto &s : sel_)
        out += (out.empty() ? "" : ",") + s.alpha.name();
    return out;
}

std::string LevelMap::ell_spec() const
{
    std::string out;
    for (const auto &s : sel_)
        out += (out.empty() ? "" : ",") + s.alpha.name() + "=" + std::to_string(s.level);
    return out;
}

namespace
{

// Splits on commas that are not inside braces.
std::vector<std::string> split_top_level(const std::string &text)
{
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '{')
            ++depth;
        else if (ch == '}')
            --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

} // namespace

LevelMap parse_level_map(const std::string &a_spec, const std::string &ell_spec)
{
    std::map<BoundaryComponent, int> levels;
    for (const auto &item : split_top_level(ell_spec)) {
        const auto eq = item.rfind('=');
        if (eq == std::string::npos)
            throw ContractError("level assignment '" + item + "' must look like name=0 or name=1");
        const std::string value = item.substr(eq + 1);
        if (value != "0" && value != "1")
            throw ContractError("level assignment '" + item + "' must be 0 or 1");
        levels[parse_boundary_component(item.substr(0, eq))] = value == "1" ? 1 : 0;
    }
    std::vector<Selection> sel;
    for (const auto &item : split_top_level(a_spec)) {
        const auto alpha = parse_boundary_component(item);
        auto it = levels.find(alpha);
        const int level = it == levels.end() ? 1 : it->second;
        if (it != levels.end())
            levels.erase(it);
        sel.push_back({alpha, level});
    }
    if (!levels.empty())
        throw ContractError("level assigned to " + levels.begin()->first.name() + ", which is not in A");
    return LevelMap(std::move(sel));
}

GroupKind group_of(const Selection &s) noexcept
{
    if (s.alpha.is_irr())
        return GroupKind::N2;
    return s.level == 1 ? GroupKind::T2 : GroupKind::U1;
}

int residual_genus(int g, const LevelMap &A, const APartition &m)
{
    if (m.size() != A.size())
        throw ContractError("partition has " + std::to_string(m.size()) + " entries for " + std::to_string(A.size()) +
                            " components");
    long r = g;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0)
            throw ContractError("partition entries must be nonnegative");
        r -= static_cast<long>(m[i]) * A.selections()[i].alpha.g_alpha();
    }
    return static_cast<int>(r);
}

namespace
{

// min over the partition-independent terms g_alpha/2 - 1, if any.
std::optional<Rational> level_one_limit(const LevelMap &A)
{
    std::optional<Rational> out;
    for (const auto &s : A.selections())
        if (s.level == 1 && !s.alpha.is_irr()) {
            const Rational v = Rational(s.alpha.g_alpha(), 2) - 1;
            out = out ? std::min(*out, v) : v;
        }
    return out;
}

Rational min_with(std::optional<Rational> a, Rational b) { return a ? std::min(*a, b) : b; }

} // namespace

Rational c_of_partition(int g, const LevelMap &A, const APartition &m)
{
    const int r = residual_genus(g, A, m);
    if (r < 0)
        throw ContractError("not an A-partition of g = " + std::to_string(g) + ": residual genus " + std::to_string(r));
    Rational c = Rational(r, 2) - 1;
    for (int mi : m)
        c = std::min(c, Rational(mi, 2));
    return min_with(level_one_limit(A), c);
}

BestPartition c_best(int g, const LevelMap &A)
{
    if (A.empty())
        throw ContractError("c_best needs a nonempty A");
    const auto limit = level_one_limit(A);
    const auto &sel = A.selections();
    const std::size_t k = sel.size();

    BestPartition best{Rational(0), {}};
    bool have = false;
    APartition m(k, 0);
    // Entries are tried in increasing order and only strict improvements are
    // kept, so the first optimum found is lexicographically smallest.
    std::function<void(std::size_t, int, std::optional<Rational>)> search = [&](std::size_t i, int remaining,
                                                                                std::optional<Rational> ub) {
        if (i == k) {
            const Rational c = min_with(ub, Rational(remaining, 2) - 1);
            if (!have || c > best.c) {
                best = {c, m};
                have = true;
            }
            return;
        }
        const int ga = sel[i].alpha.g_alpha();
        for (int mi = 0; mi * ga <= remaining; ++mi) {
            const auto next_ub = std::optional<Rational>(min_with(ub, Rational(mi, 2)));
            const int rest = remaining - mi * ga;
            if (have && min_with(next_ub, Rational(rest, 2) - 1) <= best.c)
                continue;
            m[i] = mi;
            search(i + 1, rest, next_ub);
            m[i] = 0;
        }
    };
    search(0, g, limit);
    return best;
}

Rational c_real(int g, const LevelMap &A)
{
    long total = 1;
    for (const auto &s : A.selections())
        total += s.alpha.g_alpha();
    return min_with(level_one_limit(A), Rational(g - 2, 2 * total));
}

namespace
{

class TargetCache
{
public:
    TargetCache(FieldSpec field, int cap, DLConvention conv) : field_(field), cap_(cap), conv_(conv) {}

    const PoincareSeries &factor(GroupKind group)
    {
        auto it = cache_.find(group);
        if (it == cache_.end())
            it = cache_.emplace(group, qx_homology_series(thom_generator_dims(group, field_, cap_), field_, cap_, conv_)).first;
        return it->second;
    }

    PoincareSeries product(const LevelMap &A)
    {
        PoincareSeries out = PoincareSeries::one(cap_);
        for (const auto &s : A.selections())
            out = series_mul(out, factor(group_of(s)));
        return out;
    }

private:
    FieldSpec field_;
    int cap_;
    DLConvention conv_;
    std::map<GroupKind, PoincareSeries> cache_;
};

} // namespace

PoincareSeries target_series(const LevelMap &A, FieldSpec field, int cap, DLConvention conv)
{
    return TargetCache(field, cap, conv).product(A);
}

BoundReport betti_lower_bounds(int g, int n, const LevelMap &A, FieldSpec field, int cap, DLConvention conv)
{
    if (A.empty())
        throw ContractError("A must be nonempty");
    const auto dp = d_plus(g, n);
    for (const auto &s : A.selections())
        if (std::find(dp.begin(), dp.end(), s.alpha) == dp.end())
            throw ContractError("component " + s.alpha.name() + " is not a self-intersecting boundary divisor of (g, n) = (" +
                                std::to_string(g) + ", " + std::to_string(n) + ")");
    BoundReport report;
    report.g = g;
    report.n = n;
    report.A = A;
    report.field = field;
    report.cap = cap;
    report.convention = conv;
    const auto best = c_best(g, A);
    report.c = best.c;
    report.c_real = c_real(g, A);
    report.optimal_m = best.m;
    if (best.c < 0)
        return report;
    const long long top = floor_of(best.c);
    if (cap < top)
        throw ContractError("cap " + std::to_string(cap) + " is below the surjectivity range " + to_string(best.c));
    const auto target = target_series(A, field, cap, conv);
    for (int i = 0; i <= top; ++i)
        report.bounds[i] = target[i];
    return report;
}

BestBoundsReport best_bounds(int g, int n, FieldSpec field, int cap, DLConvention conv, int jobs)
{
    BestBoundsReport report;
    report.g = g;
    report.n = n;
    report.field = field;
    report.cap = cap;
    report.convention = conv;
    const auto dp = d_plus(g, n);
    if (dp.empty())
        return report;

    // c only decreases when components are added or a level is raised, so
    // the overall maximum is attained by a singleton at its lowest level.
    std::optional<Selection> first_nonnegative;
    Rational max_c;
    for (const auto &alpha : dp) {
        const Selection s{alpha, alpha.is_irr() ? 1 : 0};
        const Rational c = c_best(g, LevelMap({s})).c;
        report.max_c = report.max_c ? std::max(*report.max_c, c) : c;
    }
    max_c = *report.max_c;
    for (const auto &alpha : dp)
        for (int level : {0, 1}) {
            if (alpha.is_irr() && level == 0)
                continue;
            const Selection s{alpha, level};
            if (!first_nonnegative && c_best(g, LevelMap({s})).c >= 0)
                first_nonnegative = s;
        }
    if (max_c < 0 || cap < 0)
        return report;
    const int top = static_cast<int>(std::min<long long>(cap, floor_of(max_c)));

    report.degrees.push_back({0, BigInt(1), LevelMap({*first_nonnegative}), c_best(g, LevelMap({*first_nonnegative})).c});
    if (top < 1)
        return report;

    // Every pair with c >= 1, found by extending selections in order and
    // pruning as soon as c drops below 1.
    struct Candidate
    {
        LevelMap A;
        Rational c;
    };
    std::vector<Candidate> candidates;
    std::vector<Selection> cur;
    std::function<void(std::size_t)> extend = [&](std::size_t start) {
        for (std::size_t i = start; i < dp.size(); ++i)
            for (int level : {0, 1}) {
                if (dp[i].is_irr() && level == 0)
                    continue;
                cur.push_back({dp[i], level});
                LevelMap A(cur);
                const Rational c = c_best(g, A).c;
                if (c >= 1) {
                    candidates.push_back({A, c});
                    extend(i + 1);
                }
                cur.pop_back();
            }
    };
    extend(0);
    std::sort(candidates.begin(), candidates.end(), [](const Candidate &a, const Candidate &b) { return a.A < b.A; });
    report.pairs_considered = candidates.size();

    // Factor series are shared; products are independent per candidate.
    TargetCache cache(field, top, conv);
    for (GroupKind gk : {GroupKind::U1, GroupKind::T2, GroupKind::N2})
        cache.factor(gk);
    std::vector<std::optional<PoincareSeries>> targets(candidates.size());
    parallel_for(candidates.size(), jobs, [&](std::size_t i) {
        PoincareSeries out = PoincareSeries::one(top);
        for (const auto &s : candidates[i].A.selections())
            out = series_mul(out, cache.factor(group_of(s)));
        targets[i] = std::move(out);
    });

    for (int d = 1; d <= top; ++d) {
        std::optional<std::size_t> witness;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (candidates[i].c < d)
                continue;
            if (!witness || (*targets[i])[d] > (*targets[*witness])[d])
                witness = i;
        }
        if (witness)
            report.degrees.push_back({d, (*targets[*witness])[d], candidates[*witness].A, candidates[*witness].c});
    }
    return report;
}

StableGraph build_test_graph(int g, int n, const LevelMap &A, const APartition &m)
{
    const int r = residual_genus(g, A, m);
    if (r < 0)
        throw ContractError("not an A-partition of g = " + std::to_string(g));
    GraphBuilder b;
    const int center = b.add_vertex(r);
    for (int i = 1; i <= n; ++i)
        b.add_leg(center, i);
    int valence = n;
    const auto &sel = A.selections();
    for (std::size_t i = 0; i < sel.size(); ++i) {
        const auto &s = sel[i];
        for (int k = 0; k < m[i]; ++k) {
            if (s.alpha.is_irr()) {
                b.add_edge(center, center);
                valence += 2;
            } else {
                const int outer = s.level == 0 ? b.add_pointed_vertex(s.alpha.g_alpha(), static_cast<std::int64_t>(i) + 1)
                                               : b.add_vertex(s.alpha.g_alpha());
                b.add_edge(center, outer);
                valence += 1;
            }
        }
    }
    if ((valence < 3 && r < 1) || (valence == 0 && r < 2))
        throw ContractError("test graph center of genus " + std::to_string(r) + " and valence " + std::to_string(valence) +
                            " is unstable");
    StableGraph graph = b.build();
    if (auto v = validate(graph))
        throw ContractError("test graph is not stable: " + v->message);
    return graph;
}

BigInt wreath_order(const LevelMap &A, const APartition &m)
{
    if (m.size() != A.size())
        throw ContractError("partition size does not match A");
    BigInt order = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (int k = 2; k <= m[i]; ++k)
            order *= k;
        if (A.selections()[i].alpha.is_irr())
            order <<= m[i];
    }
    return order;
}

SigmaQuotientRange sigma_quotient_range(int g, int h, int size_p)
{
    if (h < 1 || 2 * h >= g)
        throw ContractError("the symmetric quotient range needs 1 <= h < g/2");
    if (size_p < 0)
        throw ContractError("|P| must be nonnegative");
    const Rational bound(g - 2, 2 * h + 2);
    const Rational need = bound * size_p;
    long long min_n = -floor_of(-need);
    return {bound, std::max(0LL, min_n)};
}

namespace
{

nlohmann::json level_map_json(const LevelMap &A, nlohmann::json &ell)
{
    auto names = nlohmann::json::array();
    ell = nlohmann::json::object();
    for (const auto &s : A.selections()) {
        names.push_back(s.alpha.name());
        ell[s.alpha.name()] = s.level;
    }
    return names;
}

} // namespace

void to_json(nlohmann::json &j, const BoundReport &r)
{
    nlohmann::json ell;
    auto names = level_map_json(r.A, ell);
    auto m = nlohmann::json::object();
    for (std::size_t i = 0; i < r.optimal_m.size(); ++i)
        m[r.A.selections()[i].alpha.name()] = r.optimal_m[i];
    auto bounds = nlohmann::json::object();
    for (const auto &[d, b] : r.bounds)
        bounds[std::to_string(d)] = b.str();
    j = nlohmann::json{{"g", r.g},
                       {"n", r.n},
                       {"A", std::move(names)},
                       {"ell", std::move(ell)},
                       {"char", r.field.characteristic()},
                       {"cap", r.cap},
                       {"dl_convention", convention_name(r.convention)},
                       {"c", to_string(r.c)},
                       {"c_real", to_string(r.c_real)},
                       {"optimal_m", std::move(m)},
                       {"bounds", std::move(bounds)}};
}

void to_json(nlohmann::json &j, const BestBoundsReport &r)
{
    auto bounds = nlohmann::json::object();
    auto witnesses = nlohmann::json::object();
    for (const auto &d : r.degrees) {
        bounds[std::to_string(d.degree)] = d.bound.str();
        nlohmann::json ell;
        auto names = level_map_json(d.witness, ell);
        witnesses[std::to_string(d.degree)] = {{"A", std::move(names)}, {"ell", std::move(ell)}, {"c", to_string(d.witness_c)}};
    }
    j = nlohmann::json{{"g", r.g},
                       {"n", r.n},
                       {"char", r.field.characteristic()},
                       {"cap", r.cap},
                       {"dl_convention", convention_name(r.convention)},
                       {"max_c", r.max_c ? nlohmann::json(to_string(*r.max_c)) : nlohmann::json(nullptr)},
                       {"pairs_considered", r.pairs_considered},
                       {"bounds", std::move(bounds)},
                       {"witnesses", std::move(witnesses)}};
}

} // namespace mbar

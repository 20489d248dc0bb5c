#include <mbar/target_spaces.hpp>
#include <algorithm>

namespace mbar
{

const char *group_name(GroupKind g) noexcept
{
    switch (g) {
    case GroupKind::U1: return "U1";
    case GroupKind::T2: return "T2";
    case GroupKind::N2: return "N2";
    }
    return "?";
}

GroupKind parse_group(const std::string &name)
{
    if (name == "U1")
        return GroupKind::U1;
    if (name == "T2")
        return GroupKind::T2;
    if (name == "N2")
        return GroupKind::N2;
    throw ContractError("unknown group '" + name + "' (expected U1, T2 or N2)");
}

PoincareSeries classifying_space_series(GroupKind group, FieldSpec field, int cap)
{
    // Every presentation here is a polynomial algebra on even classes, so the
    // rationals produce the right series through free_graded_commutative.
    const FieldSpec q = FieldSpec::rationals();
    switch (group) {
    case GroupKind::U1:
        return free_graded_commutative(GradedDims(std::map<int, BigInt>{{2, 1}}), q, cap);
    case GroupKind::T2:
        return free_graded_commutative(GradedDims(std::map<int, BigInt>{{2, 2}}), q, cap);
    case GroupKind::N2: {
        PoincareSeries poly = free_graded_commutative(GradedDims(std::map<int, BigInt>{{2, 1}, {4, 1}}), q, cap);
        if (field.characteristic() != 2)
            return poly;
        // Truncated polynomial on w: 1 + t + t^2.
        std::vector<BigInt> w(static_cast<std::size_t>(cap) + 1);
        for (int d = 0; d <= std::min(cap, 2); ++d)
            w[static_cast<std::size_t>(d)] = 1;
        return series_mul(PoincareSeries(cap, std::move(w)), poly);
    }
    }
    throw ContractError("unknown group");
}

GradedDims thom_generator_dims(GroupKind group, FieldSpec field, int cap)
{
    if (cap < 0)
        throw ContractError("cap must be nonnegative");
    constexpr int thom_degree = 2;
    GradedDims out;
    if (cap < thom_degree)
        return out;
    const PoincareSeries base = classifying_space_series(group, field, cap - thom_degree);
    for (int d = 0; d <= base.cap(); ++d)
        out.add(d + thom_degree, base[d]);
    return out;
}

} // namespace mbar

#include <mbar/series.hpp>

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

namespace mbar
{

bool is_prime(int p) noexcept
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

FieldSpec::FieldSpec(int characteristic) : characteristic_(characteristic)
{
    if (characteristic != 0 && !is_prime(characteristic))
        throw ContractError("field characteristic must be 0 or a prime, got " + std::to_string(characteristic));
}

PoincareSeries::PoincareSeries(int cap) : cap_(cap)
{
    if (cap < 0)
        throw ContractError("series cap must be nonnegative");
    coeffs_.assign(static_cast<std::size_t>(cap) + 1, BigInt(0));
}

PoincareSeries::PoincareSeries(int cap, std::vector<BigInt> coeffs) : cap_(cap), coeffs_(std::move(coeffs))
{
    if (cap < 0)
        throw ContractError("series cap must be nonnegative");
    if (coeffs_.size() != static_cast<std::size_t>(cap) + 1)
        throw ContractError("series needs exactly cap+1 coefficients");
    for (const auto &c : coeffs_)
        if (c < 0)
            throw ContractError("series coefficients must be nonnegative");
}

PoincareSeries PoincareSeries::one(int cap)
{
    PoincareSeries s(cap);
    s.coeffs_[0] = 1;
    return s;
}

PoincareSeries PoincareSeries::shifted(int shift) const
{
    if (shift < 0)
        throw ContractError("negative shift");
    PoincareSeries out(cap_);
    for (int d = 0; d + shift <= cap_; ++d)
        out.coeffs_[static_cast<std::size_t>(d + shift)] = coeffs_[static_cast<std::size_t>(d)];
    return out;
}

PoincareSeries series_mul(const PoincareSeries &a, const PoincareSeries &b)
{
    if (a.cap() != b.cap())
        throw ContractError("series_mul: caps differ (" + std::to_string(a.cap()) + " vs " + std::to_string(b.cap()) + ")");
    const int cap = a.cap();
    std::vector<BigInt> out(static_cast<std::size_t>(cap) + 1);
    for (int i = 0; i <= cap; ++i) {
        if (a[i] == 0)
            continue;
        for (int j = 0; i + j <= cap; ++j)
            if (b[j] != 0)
                out[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
    return PoincareSeries(cap, std::move(out));
}

bool dominates(const PoincareSeries &a, const PoincareSeries &b)
{
    if (a.cap() != b.cap())
        throw ContractError("dominates: caps differ");
    for (int d = 0; d <= a.cap(); ++d)
        if (a[d] < b[d])
            return false;
    return true;
}

GradedDims::GradedDims(std::map<int, BigInt> dims)
{
    for (auto &[deg, count] : dims)
        add(deg, count);
}

void GradedDims::add(int degree, const BigInt &count)
{
    if (count < 0)
        throw ContractError("negative generator multiplicity");
    if (count == 0)
        return;
    if (degree <= 0)
        throw ContractError("generators must sit in positive degree, got degree " + std::to_string(degree));
    dims_[degree] += count;
}

BigInt GradedDims::at(int degree) const
{
    auto it = dims_.find(degree);
    return it == dims_.end() ? BigInt(0) : it->second;
}

GradedDims GradedDims::operator+(const GradedDims &other) const
{
    GradedDims out = *this;
    for (const auto &[deg, count] : other.dims_)
        out.add(deg, count);
    return out;
}

namespace
{

// Multiplies `acc` in place by (1 - t^d)^(-m) (polynomial) or (1 + t^d)^m
// (exterior), using binomial coefficients so that m may be huge.
void mul_generator_factor(std::vector<BigInt> &acc, int cap, int d, const BigInt &m, bool exterior)
{
    const int kmax = cap / d;
    std::vector<BigInt> factor(static_cast<std::size_t>(kmax) + 1);
    factor[0] = 1;
    for (int k = 1; k <= kmax; ++k) {
        // polynomial: C(m+k-1, k) = C(m+k-2, k-1) * (m+k-1) / k
        // exterior:   C(m, k)     = C(m, k-1) * (m-k+1) / k
        BigInt num = exterior ? BigInt(m - k + 1) : BigInt(m + k - 1);
        if (num <= 0)
            break;
        factor[static_cast<std::size_t>(k)] = factor[static_cast<std::size_t>(k - 1)] * num / k;
    }
    std::vector<BigInt> out(acc.size());
    for (int i = 0; i <= cap; ++i) {
        if (acc[static_cast<std::size_t>(i)] == 0)
            continue;
        for (int k = 0; k <= kmax && i + k * d <= cap; ++k)
            if (factor[static_cast<std::size_t>(k)] != 0)
                out[static_cast<std::size_t>(i + k * d)] += acc[static_cast<std::size_t>(i)] * factor[static_cast<std::size_t>(k)];
    }
    acc = std::move(out);
}

} // namespace

PoincareSeries free_graded_commutative(const GradedDims &gens, FieldSpec field, int cap)
{
    if (cap < 0)
        throw ContractError("cap must be nonnegative");
    std::vector<BigInt> acc(static_cast<std::size_t>(cap) + 1);
    acc[0] = 1;
    const bool char2 = field.characteristic() == 2;
    for (const auto &[deg, mult] : gens.entries()) {
        if (deg > cap)
            break;
        mul_generator_factor(acc, cap, deg, mult, !char2 && deg % 2 == 1);
    }
    return PoincareSeries(cap, std::move(acc));
}

void to_json(nlohmann::json &j, const PoincareSeries &s)
{
    auto coeffs = nlohmann::json::array();
    for (const auto &c : s.coeffs())
        coeffs.push_back(c.str());
    j = nlohmann::json{{"cap", s.cap()}, {"coeffs", std::move(coeffs)}};
}

PoincareSeries series_from_json(const nlohmann::json &j)
{
    const int cap = j.at("cap").get<int>();
    std::vector<BigInt> coeffs;
    for (const auto &c : j.at("coeffs")) {
        if (c.is_string())
            coeffs.emplace_back(c.get<std::string>());
        else
            coeffs.emplace_back(c.get<long long>());
    }
    return PoincareSeries(cap, std::move(coeffs));
}

} // namespace mbar

#ifndef MBAR_SERIES_HPP
#define MBAR_SERIES_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include <nlohmann/json_fwd.hpp>

namespace mbar
{

using BigInt = boost::multiprecision::cpp_int;

// Thrown when an operation's precondition on its arguments is violated.
class ContractError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Coefficient field, identified by its characteristic (0 or a prime).
class FieldSpec
{
public:
    explicit FieldSpec(int characteristic);

    static FieldSpec rationals() { return FieldSpec(0); }

    int characteristic() const noexcept { return characteristic_; }
    bool is_char_zero() const noexcept { return characteristic_ == 0; }

    friend bool operator==(FieldSpec, FieldSpec) = default;

private:
    int characteristic_;
};

bool is_prime(int p) noexcept;

// Truncated Poincare series: exact graded dimensions in degrees 0..cap.
class PoincareSeries
{
public:
    // Zero series.
    explicit PoincareSeries(int cap);
    PoincareSeries(int cap, std::vector<BigInt> coeffs);

    static PoincareSeries one(int cap);

    int cap() const noexcept { return cap_; }
    const BigInt &operator[](int degree) const { return coeffs_.at(static_cast<std::size_t>(degree)); }
    const std::vector<BigInt> &coeffs() const noexcept { return coeffs_; }

    // Series shifted up by `shift` degrees, still truncated at cap.
    PoincareSeries shifted(int shift) const;

    friend bool operator==(const PoincareSeries &, const PoincareSeries &) = default;

private:
    int cap_;
    std::vector<BigInt> coeffs_;
};

PoincareSeries series_mul(const PoincareSeries &a, const PoincareSeries &b);

// True iff a[d] >= b[d] for every degree; caps must agree.
bool dominates(const PoincareSeries &a, const PoincareSeries &b);

// Graded vector space of generators: degree -> multiplicity. Degrees are >= 1.
class GradedDims
{
public:
    GradedDims() = default;
    explicit GradedDims(std::map<int, BigInt> dims);

    void add(int degree, const BigInt &count);

    BigInt at(int degree) const;
    const std::map<int, BigInt> &entries() const noexcept { return dims_; }
    bool empty() const noexcept { return dims_.empty(); }
    int max_degree() const noexcept { return dims_.empty() ? 0 : dims_.rbegin()->first; }

    GradedDims operator+(const GradedDims &other) const;

    friend bool operator==(const GradedDims &, const GradedDims &) = default;

private:
    std::map<int, BigInt> dims_; // zero multiplicities are never stored
};

// Poincare series of the free graded-commutative algebra on `gens`.
// Characteristic 2: polynomial on every generator. Otherwise odd-degree
// generators are exterior.
PoincareSeries free_graded_commutative(const GradedDims &gens, FieldSpec field, int cap);

void to_json(nlohmann::json &j, const PoincareSeries &s);
PoincareSeries series_from_json(const nlohmann::json &j);

} // namespace mbar

#endif // MBAR_SERIES_HPP

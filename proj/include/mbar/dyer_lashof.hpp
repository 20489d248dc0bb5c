#ifndef MBAR_DYER_LASHOF_HPP
#define MBAR_DYER_LASHOF_HPP

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <mbar/series.hpp>

namespace mbar
{

// One operation beta^epsilon Q^s. For p = 2, epsilon is always 0.
struct DLOp
{
    int epsilon = 0;
    int s = 0;

    friend bool operator==(const DLOp &, const DLOp &) = default;
};

// Which words Q^I x count as basis elements of the free unstable module.
//   Weak:   e(I) + b(I) >= deg x
//   Strict: e(I) + b(I) >  deg x
// The empty word (x itself) is included under both.
enum class DLConvention { Strict, Weak };

const char *convention_name(DLConvention c) noexcept;
DLConvention parse_convention(const std::string &name); // "strict" | "paper"

// Excess of the empty word.
inline constexpr int kInfiniteExcess = std::numeric_limits<int>::max();

// An admissible sequence I = (op_1, ..., op_k), stored in the order written:
// p = 2 requires s_{i+1} <= 2 s_i, odd p requires s_{i+1} <= p s_i - eps_i.
class AdmissibleSeq
{
public:
    // Throws ContractError if p is not prime, an entry is malformed
    // (eps not in {0, 1}, s < eps, eps != 0 for p = 2) or I is inadmissible.
    AdmissibleSeq(int p, std::vector<DLOp> ops);

    static AdmissibleSeq mod2(const std::vector<int> &s);
    static bool admissible(int p, std::span<const DLOp> ops) noexcept;

    int prime() const noexcept { return p_; }
    const std::vector<DLOp> &ops() const noexcept { return ops_; }
    bool empty() const noexcept { return ops_.empty(); }

    // Throws if the concatenation is inadmissible.
    AdmissibleSeq concat(const AdmissibleSeq &rest) const;

    friend bool operator==(const AdmissibleSeq &, const AdmissibleSeq &) = default;

private:
    int p_;
    std::vector<DLOp> ops_;
};

// Degree raised by one operation: s for p = 2, 2s(p-1) - eps for odd p.
int op_shift(int p, DLOp op) noexcept;
int degree_shift(int p, std::span<const DLOp> ops) noexcept;

// odd p: 2 s_1 - eps_1 - sum_{i>=2} (2 s_i (p-1) - eps_i)
// p = 2: s_1 - sum_{i>=2} s_i
// Empty word: kInfiniteExcess.
int excess(const AdmissibleSeq &I) noexcept;
int b_of(const AdmissibleSeq &I) noexcept;
int degree_shift(const AdmissibleSeq &I) noexcept;

// Whether Q^I x is a basis element for deg x = `deg_x` under `conv`.
bool allowed_on(const AdmissibleSeq &I, int deg_x, DLConvention conv) noexcept;

struct DLWord
{
    AdmissibleSeq word;
    int degree; // deg x + degree_shift(word)
};

// Visits every basis word Q^I x (all s_i >= 1) with total degree <= cap by
// explicit depth-first search over admissible words.
void for_each_dl_word(int deg_x, int p, int cap, DLConvention conv, const std::function<void(const DLWord &)> &visit);
std::vector<DLWord> enumerate_dl_words(int deg_x, int p, int cap, DLConvention conv);

// Graded dimensions of the free unstable module on one class of degree
// deg_x, truncated at cap, counted by a recursion over admissible tails.
GradedDims enumerate_dl_basis(int deg_x, int p, int cap, DLConvention conv);

// The free unstable module generated by a graded vector space.
GradedDims dl_module_dims(const GradedDims &generators, int p, int cap, DLConvention conv);

// Poincare series of H_*(QX; F) from the reduced homology of X:
// char 0 gives the free graded-commutative algebra on X, char p the free
// graded-commutative algebra on the free unstable Dyer-Lashof module.
PoincareSeries qx_homology_series(const GradedDims &x_reduced, FieldSpec field, int cap,
                                  DLConvention conv = DLConvention::Strict);

// {"word": [...], "degree": d}; p = 2 words are lists of s, odd p words
// lists of [eps, s].
void to_json(nlohmann::json &j, const DLWord &w);

} // namespace mbar

#endif // MBAR_DYER_LASHOF_HPP

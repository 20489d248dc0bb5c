#include <mbar/dyer_lashof.hpp>

#include <algorithm>

#include <nlohmann/json.hpp>

namespace mbar
{

const char *convention_name(DLConvention c) noexcept { return c == DLConvention::Strict ? "strict" : "paper"; }

DLConvention parse_convention(const std::string &name)
{
    if (name == "strict")
        return DLConvention::Strict;
    if (name == "paper")
        return DLConvention::Weak;
    throw ContractError("unknown Dyer-Lashof convention '" + name + "' (expected strict or paper)");
}

AdmissibleSeq::AdmissibleSeq(int p, std::vector<DLOp> ops) : p_(p), ops_(std::move(ops))
{
    if (!is_prime(p))
        throw ContractError("Dyer-Lashof operations need a prime, got " + std::to_string(p));
    for (const auto &op : ops_) {
        if (op.epsilon != 0 && op.epsilon != 1)
            throw ContractError("epsilon must be 0 or 1");
        if (p == 2 && op.epsilon != 0)
            throw ContractError("p = 2 operations carry no Bockstein");
        if (op.s < op.epsilon)
            throw ContractError("operation index s must be >= epsilon");
    }
    if (!admissible(p, ops_))
        throw ContractError("sequence is not admissible");
}

AdmissibleSeq AdmissibleSeq::mod2(const std::vector<int> &s)
{
    std::vector<DLOp> ops;
    for (int x : s)
        ops.push_back({0, x});
    return AdmissibleSeq(2, std::move(ops));
}

bool AdmissibleSeq::admissible(int p, std::span<const DLOp> ops) noexcept
{
    for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
        const long bound = p == 2 ? 2L * ops[i].s : static_cast<long>(p) * ops[i].s - ops[i].epsilon;
        if (ops[i + 1].s > bound)
            return false;
    }
    return true;
}

AdmissibleSeq AdmissibleSeq::concat(const AdmissibleSeq &rest) const
{
    if (rest.p_ != p_)
        throw ContractError("cannot concatenate words for different primes");
    std::vector<DLOp> ops = ops_;
    ops.insert(ops.end(), rest.ops_.begin(), rest.ops_.end());
    return AdmissibleSeq(p_, std::move(ops));
}

int op_shift(int p, DLOp op) noexcept { return p == 2 ? op.s : 2 * op.s * (p - 1) - op.epsilon; }

int degree_shift(int p, std::span<const DLOp> ops) noexcept
{
    int total = 0;
    for (const auto &op : ops)
        total += op_shift(p, op);
    return total;
}

int degree_shift(const AdmissibleSeq &I) noexcept { return degree_shift(I.prime(), I.ops()); }

int excess(const AdmissibleSeq &I) noexcept
{
    if (I.empty())
        return kInfiniteExcess;
    const auto &ops = I.ops();
    const int p = I.prime();
    const int head = p == 2 ? ops[0].s : 2 * ops[0].s - ops[0].epsilon;
    return head - degree_shift(p, std::span(ops).subspan(1));
}

int b_of(const AdmissibleSeq &I) noexcept { return I.empty() || I.prime() == 2 ? 0 : I.ops()[0].epsilon; }

bool allowed_on(const AdmissibleSeq &I, int deg_x, DLConvention conv) noexcept
{
    if (I.empty())
        return true;
    const long eb = static_cast<long>(excess(I)) + b_of(I);
    return conv == DLConvention::Strict ? eb > deg_x : eb >= deg_x;
}

namespace
{

void require_generator_degree(int deg_x, int p)
{
    if (deg_x < 1)
        throw ContractError("Dyer-Lashof generators must have positive degree");
    if (!is_prime(p))
        throw ContractError("Dyer-Lashof operations need a prime, got " + std::to_string(p));
}

void dfs_words(int p, int deg_x, int budget, DLConvention conv, std::vector<DLOp> &word,
               const std::function<void(const DLWord &)> &visit)
{
    if (!word.empty()) {
        AdmissibleSeq I(p, word);
        if (allowed_on(I, deg_x, conv))
            visit({std::move(I), deg_x + degree_shift(p, word)});
    }
    const int eps_max = p == 2 ? 0 : 1;
    for (int eps = 0; eps <= eps_max; ++eps)
        for (int s = 1;; ++s) {
            const DLOp op{eps, s};
            const int shift = op_shift(p, op);
            if (shift > budget)
                break;
            if (!word.empty()) {
                const DLOp &last = word.back();
                const long bound = p == 2 ? 2L * last.s : static_cast<long>(p) * last.s - last.epsilon;
                if (s > bound)
                    break;
            }
            word.push_back(op);
            dfs_words(p, deg_x, budget - shift, conv, word, visit);
            word.pop_back();
        }
}

} // namespace

void for_each_dl_word(int deg_x, int p, int cap, DLConvention conv, const std::function<void(const DLWord &)> &visit)
{
    require_generator_degree(deg_x, p);
    if (cap < deg_x)
        return;
    visit({AdmissibleSeq(p, {}), deg_x});
    std::vector<DLOp> word;
    dfs_words(p, deg_x, cap - deg_x, conv, word, visit);
}

std::vector<DLWord> enumerate_dl_words(int deg_x, int p, int cap, DLConvention conv)
{
    std::vector<DLWord> out;
    for_each_dl_word(deg_x, p, cap, conv, [&](const DLWord &w) { out.push_back(w); });
    return out;
}

GradedDims enumerate_dl_basis(int deg_x, int p, int cap, DLConvention conv)
{
    require_generator_degree(deg_x, p);
    GradedDims out;
    if (cap < deg_x)
        return out;
    out.add(deg_x, 1);
    const int budget = cap - deg_x;
    if (budget <= 0)
        return out;

    const int eps_max = p == 2 ? 0 : 1;
    // Largest s whose operation still fits in the budget.
    const int s_max = p == 2 ? budget : (budget + 1) / (2 * (p - 1));
    if (s_max < 1)
        return out;
    auto idx = [&](int eps, int s) { return static_cast<std::size_t>(eps * (s_max + 1) + s); };
    const std::size_t states = static_cast<std::size_t>((eps_max + 1) * (s_max + 1));
    const std::size_t width = static_cast<std::size_t>(budget) + 1;

    // tails[state][R]: admissible words starting with op `state` whose total
    // shift is R. prefix[eps][s][R] sums tails over ops (eps, 1..s).
    std::vector<std::vector<BigInt>> tails(states, std::vector<BigInt>(width));
    std::vector<std::vector<std::vector<BigInt>>> prefix(
        static_cast<std::size_t>(eps_max + 1),
        std::vector<std::vector<BigInt>>(static_cast<std::size_t>(s_max + 1), std::vector<BigInt>(width)));
    auto next_bound = [&](int eps, int s) { return std::min(s_max, p == 2 ? 2 * s : p * s - eps); };
    auto tail_sum = [&](int bound, int R) {
        BigInt total = 0;
        for (int e2 = 0; e2 <= eps_max; ++e2)
            total += prefix[static_cast<std::size_t>(e2)][static_cast<std::size_t>(bound)][static_cast<std::size_t>(R)];
        return total;
    };

    for (int R = 1; R <= budget; ++R) {
        for (int eps = 0; eps <= eps_max; ++eps)
            for (int s = std::max(1, eps); s <= s_max; ++s) {
                const int shift = op_shift(p, {eps, s});
                if (shift > R)
                    continue;
                BigInt count = shift == R ? 1 : 0;
                const int bound = next_bound(eps, s);
                if (R - shift > 0 && bound >= 1)
                    count += tail_sum(bound, R - shift);
                tails[idx(eps, s)][static_cast<std::size_t>(R)] = std::move(count);
            }
        for (int eps = 0; eps <= eps_max; ++eps)
            for (int s = 1; s <= s_max; ++s)
                prefix[static_cast<std::size_t>(eps)][static_cast<std::size_t>(s)][static_cast<std::size_t>(R)] =
                    prefix[static_cast<std::size_t>(eps)][static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(R)] +
                    tails[idx(eps, s)][static_cast<std::size_t>(R)];
    }

    // Head op (eps1, s1) followed by a tail of shift R has e + b equal to
    // (head excess term) - R + b; keep those that pass the convention.
    const int strict = conv == DLConvention::Strict ? 1 : 0;
    for (int eps = 0; eps <= eps_max; ++eps)
        for (int s = std::max(1, eps); s <= s_max; ++s) {
            const int shift = op_shift(p, {eps, s});
            if (shift > budget)
                continue;
            const int head = p == 2 ? s : 2 * s; // (2s - eps) + b with b = eps
            const int bound = next_bound(eps, s);
            for (int R = 0; shift + R <= budget; ++R) {
                if (head - R < deg_x + strict)
                    break;
                BigInt count = R == 0 ? BigInt(1) : (bound >= 1 ? tail_sum(bound, R) : BigInt(0));
                out.add(deg_x + shift + R, count);
            }
        }
    return out;
}

GradedDims dl_module_dims(const GradedDims &generators, int p, int cap, DLConvention conv)
{
    GradedDims out;
    for (const auto &[deg, mult] : generators.entries()) {
        if (deg > cap)
            break;
        const GradedDims basis = enumerate_dl_basis(deg, p, cap, conv);
        for (const auto &[d, count] : basis.entries())
            out.add(d, count * mult);
    }
    return out;
}

PoincareSeries qx_homology_series(const GradedDims &x_reduced, FieldSpec field, int cap, DLConvention conv)
{
    if (field.is_char_zero())
        return free_graded_commutative(x_reduced, field, cap);
    return free_graded_commutative(dl_module_dims(x_reduced, field.characteristic(), cap, conv), field, cap);
}

void to_json(nlohmann::json &j, const DLWord &w)
{
    auto word = nlohmann::json::array();
    for (const auto &op : w.word.ops()) {
        if (w.word.prime() == 2)
            word.push_back(op.s);
        else
            word.push_back(nlohmann::json::array({op.epsilon, op.s}));
    }
    j = nlohmann::json{{"word", std::move(word)}, {"degree", w.degree}};
}

} // namespace mbar

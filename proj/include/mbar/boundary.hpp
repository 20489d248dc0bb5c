#ifndef MBAR_BOUNDARY_HPP
#define MBAR_BOUNDARY_HPP

#include <compare>
#include <string>
#include <vector>

namespace mbar
{

// An irreducible boundary divisor of the moduli stack of stable curves of
// type (g, n): either the non-separating node, or a separating node between
// a genus-h vertex carrying the legs `P` and a genus-(g-h) vertex carrying
// the rest.
struct BoundaryComponent
{
    enum class Kind { Irr, Separating };

    Kind kind = Kind::Irr;
    int h = 0;            // separating only; h <= g - h
    std::vector<int> P{}; // separating only; sorted labels on the genus-h side

    static BoundaryComponent irr() { return {}; }
    static BoundaryComponent separating(int h, std::vector<int> P = {});

    bool is_irr() const noexcept { return kind == Kind::Irr; }

    // g_alpha: 1 for the non-separating divisor, the lesser genus otherwise.
    int g_alpha() const noexcept { return is_irr() ? 1 : h; }

    // "irr", "sep:h" or "sep:h:{1,3}".
    std::string name() const;

    // Irr sorts first, then separating by (h, P).
    friend auto operator<=>(const BoundaryComponent &, const BoundaryComponent &) = default;
};

// Parses "irr", "sep:h" (P empty) or "sep:h:{1,2}".
BoundaryComponent parse_boundary_component(const std::string &text);

} // namespace mbar

#endif // MBAR_BOUNDARY_HPP

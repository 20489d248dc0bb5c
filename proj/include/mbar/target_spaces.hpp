#ifndef MBAR_TARGET_SPACES_HPP
#define MBAR_TARGET_SPACES_HPP

#include <string>

#include <mbar/series.hpp>

namespace mbar
{

// U(1); the maximal torus T(2) = U(1) x U(1) of U(2); its normalizer
// N(2) = U(1) wr Z/2.
enum class GroupKind { U1, T2, N2 };

const char *group_name(GroupKind g) noexcept;
GroupKind parse_group(const std::string &name);

// Graded dimensions of H^*(BG; F).
//   U1: F[c1], |c1| = 2
//   T2: F[x1, x2], |xi| = 2
//   N2, char 2: F[w, y1, y2]/(w^3), |w| = 1, |y1| = 2, |y2| = 4
//   N2, char != 2: the swap invariants F[s1, s2], |s1| = 2, |s2| = 4
PoincareSeries classifying_space_series(GroupKind group, FieldSpec field, int cap);

// Reduced homology of the Thom space BG^V of the line bundle V pulled back
// along BG -> BU(1). The Euler class of V is a non-zero-divisor in every
// case (for N2 in char 2 it is y1 + w^2), so the reduced Thom homology is a
// free module of rank one on the Thom class in degree 2.
GradedDims thom_generator_dims(GroupKind group, FieldSpec field, int cap);

} // namespace mbar

#endif // MBAR_TARGET_SPACES_HPP

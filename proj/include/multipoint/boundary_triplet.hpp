#pragma once

#include <optional>
#include <span>

#include "multipoint/linalg.hpp"
#include "multipoint/model.hpp"

namespace multipoint {

enum class TripletKind { outer, inner };

/// Boundary values of a function under the outer and/or inner triplet.
struct BoundaryValues {
    std::optional<CVector> gamma1;  ///< (u1(a1) + u3(a3)) / (i sqrt2)
    std::optional<CVector> gamma2;  ///< (u1(a1) - u3(a3)) / sqrt2
    std::optional<CVector> Gamma1;  ///< (u2(a2) + u2(b2)) / (i sqrt2)
    std::optional<CVector> Gamma2;  ///< (u2(a2) - u2(b2)) / sqrt2
};

/// Requires the outer_left and outer_right parts.
BoundaryValues outer_gamma(const TripleFunction& u);
/// Requires the inner part.
BoundaryValues inner_gamma(const TripleFunction& u);

/// u1(t) = e^{t-a1}(if+g)/sqrt2, u2 = 0, u3(t) = e^{a3-t}(if-g)/sqrt2 on the
/// problem's grids, so that outer_gamma returns (f, g).
TripleFunction construct_witness(std::span<const Complex> f, std::span<const Complex> g,
                                 const ProblemDefinition& problem);

/// u2 blends linearly from (if+g)/sqrt2 at a2 to (if-g)/sqrt2 at b2, so that
/// inner_gamma returns (f, g). Outer parts are zero.
TripleFunction construct_inner_witness(std::span<const Complex> f, std::span<const Complex> g,
                                       const ProblemDefinition& problem);

/// (b1(u), b2(v)) - (b2(u), b1(v)) for the selected pair of boundary maps.
Complex boundary_form(const BoundaryValues& u, const BoundaryValues& v, TripletKind which);

/// | <Lu,v> - <u,Lv> - s [(b1 u, b2 v) - (b2 u, b1 v)] | over the intervals of
/// the selected triplet, with Lu = iu' + Au by finite differences. The
/// orientation s is -1 for the outer pair and +1 for the inner pair: with the
/// outer maps as defined above, integration by parts gives
/// <Lu,v> - <u,Lv> = i[(u1(a1),v1(a1)) - (u3(a3),v3(a3))] = -[(g1 u, g2 v) - (g2 u, g1 v)].
double green_defect(const TripleFunction& u, const TripleFunction& v, const ProblemDefinition& problem,
                    TripletKind which);

/// || i(I - W1) gamma1 - (I + W1) gamma2 ||, which equals sqrt2 ||u3(a3) - W1 u1(a1)||.
double outer_condition_residual(const BoundaryValues& bv, const UnitaryMatrix& w1);

}  // namespace multipoint

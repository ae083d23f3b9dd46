#pragma once

#include "rigidity/derivation.hpp"

#include <map>

namespace rigidity {

/// GR(A) = C[X]/(f^) for the filtration induced by a weight vector, f^ = top_part(f, w).
struct GradedPresentation {
    PresentationPtr base;
    WeightVector weights;
    PresentationPtr graded;

    const Polynomial& gr_relation() const { return graded->relation(); }
};

/// Throws InvalidArgument when the top part of the relation is constant or the weight
/// length is wrong.
GradedPresentation gr_presentation(const PresentationPtr& ring, const WeightVector& w);

/// Split p by weighted degree; the components sum to p.
std::map<std::int64_t, Polynomial> homogeneous_components(const Polynomial& p, const WeightVector& w);

struct CosetDegree {
    /// nullopt is -infinity (the zero coset).
    Degree value;
    /// Reduction terminated; the value is then the minimum over the coset.
    bool exact = false;
    /// f^ was recognized as irreducible, so deg is additive on products in A.
    bool degree_function = false;
    /// Representative attaining the value.
    Polynomial representative;
};

inline constexpr int kCosetReductionCap = 10000;

/// Minimal weighted degree over u + (f), by repeatedly cancelling top parts divisible by f^.
CosetDegree coset_degree(const RingElement& u, const WeightVector& w);

/// Conservative irreducibility test over C for a few shapes: c*v*M + R with v free in M, R
/// and gcd(M, R) = 1; binomials with disjoint supports and coprime exponents;
/// c*v^d + h with h squarefree by the same tests. false means "not recognized".
bool irreducible_by_pattern(const Polynomial& p);

struct DegreeJump {
    /// max_i (deg D(x_i) - deg x_i) over nonzero images.
    std::int64_t d_l = 0;
    std::vector<Degree> jumps;
    GradedPresentation graded;
    Derivation gr_derivation;
};

/// Homogenize a nonzero derivation. Throws InvalidArgument for D = 0, Unsupported when a
/// coset degree is inexact or gr(D) fails to descend to the graded ring, InvariantViolation
/// when f^ is irreducible yet gr(D) is not a nonzero derivation.
DegreeJump derivation_degree_jump(const Derivation& d, const WeightVector& w);

}  // namespace rigidity

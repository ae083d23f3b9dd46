#pragma once

#include "rigidity/quotient_ring.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rigidity {

/// A derivation of A = C[X]/(f), determined by the images of the generators x_i.
class Derivation {
public:
    const PresentationPtr& presentation() const noexcept { return ring_; }
    const std::vector<RingElement>& images() const noexcept { return images_; }
    const RingElement& image(std::size_t i) const { return images_.at(i); }
    bool is_zero() const;

    friend bool operator==(const Derivation& a, const Derivation& b) {
        return *a.ring_ == *b.ring_ && a.images_ == b.images_;
    }

private:
    friend Derivation make_derivation(const PresentationPtr&, std::vector<RingElement>);
    Derivation(PresentationPtr ring, std::vector<RingElement> images)
        : ring_(std::move(ring)), images_(std::move(images)) {}

    PresentationPtr ring_;
    std::vector<RingElement> images_;
};

/// The class of sum_i lift(g_i) * df/dX_i modulo f; zero exactly when the images define a
/// derivation of the quotient.
RingElement well_definedness_residual(const PresentationPtr& ring,
                                      const std::vector<Polynomial>& images);

/// Validated constructor. Throws IllDefined when the images do not preserve (f),
/// InvalidArgument on a count mismatch, VariableMismatch on foreign elements.
Derivation make_derivation(const PresentationPtr& ring, std::vector<RingElement> images);
Derivation make_derivation(const PresentationPtr& ring, const std::vector<Polynomial>& images);

/// D(u), via any lift of u.
RingElement apply(const Derivation& d, const RingElement& u);
/// D applied to a polynomial lift; the result is reduced.
RingElement apply(const Derivation& d, const Polynomial& lift);

enum class NilpotencyStatus { CertifiedNilpotent, Inconclusive };
enum class CertificateKind { None, ByIteration, ByNegativeGrading };

struct NilpotencyReport {
    NilpotencyStatus status = NilpotencyStatus::Inconclusive;
    /// First k with D^k(x_i) = 0, or -1 where no such k was reached.
    std::vector<int> steps_per_generator;
    int bound_used = 0;
    CertificateKind certificate = CertificateKind::None;
    std::optional<WeightVector> weights;
    /// max_i (wdeg D(x_i) - w_i); nullopt means -infinity (all images zero).
    Degree jump;
    std::string reason;

    bool certified() const { return status == NilpotencyStatus::CertifiedNilpotent; }
    int max_steps() const;
};

inline constexpr int kDefaultProbeBound = 64;
inline constexpr std::size_t kDefaultTermCeiling = 100000;

/// Iterate D on each generator up to `bound` times. Requires bound >= 1.
NilpotencyReport probe_nilpotency(const Derivation& d, int bound = kDefaultProbeBound,
                                  std::size_t term_ceiling = kDefaultTermCeiling);

/// Certificate from a positive grading under which f is homogeneous and D lowers degree.
/// Throws InvalidArgument for nonpositive weights, a length mismatch, or an
/// inhomogeneous relation.
NilpotencyReport certify_by_negative_grading(const Derivation& d, const WeightVector& w);

/// For each factor f_i of the relation: does f_i divide D(f_i) in A?
/// Throws InvalidArgument when a factor does not divide the relation.
std::vector<bool> component_invariance_check(const Derivation& d,
                                             const std::vector<Polynomial>& factors);

/// D = d t^(d-1) (delta_x dx + delta_y dy + delta_z dz) - Q dt on X^a+Y^b+Z^c+T^d, with
/// every delta and Q free of t. The deltas are lifts in C[X,Y,Z] (t-reduced form).
struct Cb3Decomposition {
    std::vector<Polynomial> delta;
    Polynomial q;
    /// Whether the derivation delta of C[X,Y,Z] kills Q.
    bool delta_kills_q = false;
};

struct Cb3Result {
    std::optional<Cb3Decomposition> decomposition;
    /// Why the derivation is not in the normal form (empty on success).
    std::string reason;
};

/// Throws Unsupported unless the relation is X^a+Y^b+Z^c+T^d (monic, four variables,
/// T last).
Cb3Result cb3_decompose(const Derivation& d);

struct CommutatorRatio {
    enum class Kind { Indeterminate, NoConstantRatio, Ratio } kind;
    mpq_class h;
};

/// Constant h with f' g = h f g', for univariate f, g in one common variable.
/// Indeterminate when both are constant; h is then forced to equal deg f / deg g
/// (checked; 0 when only f is constant). Throws InvalidArgument for zero or
/// multivariate input.
CommutatorRatio qplus_commutator_ratio(const Polynomial& f, const Polynomial& g);

}  // namespace rigidity

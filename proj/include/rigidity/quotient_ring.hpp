#pragma once

#include "rigidity/polynomial.hpp"

#include <memory>

namespace rigidity {

/// A = C[X1..Xn]/(f) with the grlex order on the declared variables.
class RingPresentation {
public:
    /// Throws InvalidArgument when f is zero or constant.
    explicit RingPresentation(Polynomial relation);

    const Polynomial& relation() const noexcept { return relation_; }
    const Variables& variables() const noexcept { return relation_.variables(); }
    std::size_t arity() const noexcept { return relation_.arity(); }

    friend bool operator==(const RingPresentation& a, const RingPresentation& b) {
        return a.relation_ == b.relation_;
    }
    friend bool operator!=(const RingPresentation& a, const RingPresentation& b) { return !(a == b); }

private:
    Polynomial relation_;
};

using PresentationPtr = std::shared_ptr<const RingPresentation>;

PresentationPtr make_presentation(Polynomial relation);

/// A coset g + (f), stored as the remainder of g on division by f.
class RingElement {
public:
    RingElement(PresentationPtr ring, Polynomial rep, bool already_reduced = false);

    const PresentationPtr& presentation() const noexcept { return ring_; }
    const Polynomial& rep() const noexcept { return rep_; }
    bool is_zero() const noexcept { return rep_.is_zero(); }

    RingElement operator-() const;
    friend RingElement operator+(const RingElement& a, const RingElement& b);
    friend RingElement operator-(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    friend RingElement operator*(const GaussianRational& c, const RingElement& a);

    /// Identical representatives. Throws VariableMismatch across presentations.
    friend bool operator==(const RingElement& a, const RingElement& b);
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

private:
    PresentationPtr ring_;
    Polynomial rep_;
};

/// Canonical coset representative of g.
RingElement normal_form(const Polynomial& g, const PresentationPtr& ring);

/// Coset equality; throws VariableMismatch when presentations differ.
bool equals(const RingElement& u, const RingElement& v);

/// g in (f).
bool member(const Polynomial& g, const RingPresentation& ring);

/// The generator x_i = X_i + (f).
RingElement generator(const PresentationPtr& ring, std::size_t index);

}  // namespace rigidity

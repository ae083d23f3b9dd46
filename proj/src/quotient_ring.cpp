#include "rigidity/quotient_ring.hpp"

#include "rigidity/errors.hpp"

namespace rigidity {

RingPresentation::RingPresentation(Polynomial relation) : relation_(std::move(relation)) {
    if (relation_.is_constant()) {
        throw InvalidArgument("relation of a presentation must be nonconstant");
    }
}

PresentationPtr make_presentation(Polynomial relation) {
    return std::make_shared<const RingPresentation>(std::move(relation));
}

namespace {

void require_same(const PresentationPtr& a, const PresentationPtr& b) {
    if (a != b && *a != *b) throw VariableMismatch("elements belong to different presentations");
}

}  // namespace

RingElement::RingElement(PresentationPtr ring, Polynomial rep, bool already_reduced)
    : ring_(std::move(ring)), rep_(std::move(rep)) {
    if (!ring_) throw InvalidArgument("ring element without presentation");
    ring_->relation().require_same_ring(rep_, "normal form");
    if (!already_reduced) rep_ = divide(rep_, ring_->relation()).remainder;
}

RingElement RingElement::operator-() const { return RingElement(ring_, -rep_, true); }

RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same(a.ring_, b.ring_);
    // Sums of remainders are remainders: no term gains divisibility by lt(f).
    return RingElement(a.ring_, a.rep_ + b.rep_, true);
}

RingElement operator-(const RingElement& a, const RingElement& b) {
    require_same(a.ring_, b.ring_);
    return RingElement(a.ring_, a.rep_ - b.rep_, true);
}

RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same(a.ring_, b.ring_);
    return RingElement(a.ring_, a.rep_ * b.rep_);
}

RingElement operator*(const GaussianRational& c, const RingElement& a) {
    return RingElement(a.ring_, a.rep_ * c, true);
}

bool operator==(const RingElement& a, const RingElement& b) {
    require_same(a.ring_, b.ring_);
    return a.rep_ == b.rep_;
}

RingElement normal_form(const Polynomial& g, const PresentationPtr& ring) {
    return RingElement(ring, g);
}

bool equals(const RingElement& u, const RingElement& v) { return u == v; }

bool member(const Polynomial& g, const RingPresentation& ring) {
    return divides(ring.relation(), g);
}

RingElement generator(const PresentationPtr& ring, std::size_t index) {
    return normal_form(Polynomial::variable(ring->variables(), ring->variables()[index]), ring);
}

}  // namespace rigidity

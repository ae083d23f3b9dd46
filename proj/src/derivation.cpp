#include "rigidity/derivation.hpp"

#include "rigidity/errors.hpp"

#include <algorithm>

namespace rigidity {

bool Derivation::is_zero() const {
    return std::all_of(images_.begin(), images_.end(), [](const RingElement& e) { return e.is_zero(); });
}

namespace {

Polynomial apply_lift(const PresentationPtr& ring, const std::vector<Polynomial>& images,
                      const Polynomial& g) {
    ring->relation().require_same_ring(g, "apply derivation");
    Polynomial out(ring->variables());
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].is_zero() || !g.uses_variable(i)) continue;
        out += images[i] * diff(g, i);
    }
    return out;
}

std::vector<Polynomial> reps(const Derivation& d) {
    std::vector<Polynomial> out;
    out.reserve(d.images().size());
    for (const auto& e : d.images()) out.push_back(e.rep());
    return out;
}

}  // namespace

RingElement well_definedness_residual(const PresentationPtr& ring,
                                      const std::vector<Polynomial>& images) {
    if (images.size() != ring->arity()) {
        throw InvalidArgument("a derivation needs exactly one image per variable");
    }
    return normal_form(apply_lift(ring, images, ring->relation()), ring);
}

Derivation make_derivation(const PresentationPtr& ring, std::vector<RingElement> images) {
    if (images.size() != ring->arity()) {
        throw InvalidArgument("a derivation needs exactly one image per variable");
    }
    std::vector<Polynomial> lifts;
    for (const auto& e : images) {
        if (*e.presentation() != *ring) {
            throw VariableMismatch("derivation image belongs to another presentation");
        }
        lifts.push_back(e.rep());
    }
    if (!well_definedness_residual(ring, lifts).is_zero()) {
        throw IllDefined("images do not map the relation into the ideal it generates");
    }
    return Derivation(ring, std::move(images));
}

Derivation make_derivation(const PresentationPtr& ring, const std::vector<Polynomial>& images) {
    std::vector<RingElement> elems;
    elems.reserve(images.size());
    for (const auto& g : images) elems.push_back(normal_form(g, ring));
    return make_derivation(ring, std::move(elems));
}

RingElement apply(const Derivation& d, const Polynomial& lift) {
    return normal_form(apply_lift(d.presentation(), reps(d), lift), d.presentation());
}

RingElement apply(const Derivation& d, const RingElement& u) {
    if (*u.presentation() != *d.presentation()) {
        throw VariableMismatch("element belongs to another presentation");
    }
    return apply(d, u.rep());
}

int NilpotencyReport::max_steps() const {
    int m = 0;
    for (int s : steps_per_generator) m = std::max(m, s);
    return m;
}

NilpotencyReport probe_nilpotency(const Derivation& d, int bound, std::size_t term_ceiling) {
    if (bound < 1) throw InvalidArgument("nilpotency bound must be at least 1");
    const auto& ring = d.presentation();
    auto images = reps(d);

    NilpotencyReport report;
    report.bound_used = bound;
    report.steps_per_generator.assign(ring->arity(), -1);
    bool all = true;
    for (std::size_t i = 0; i < ring->arity(); ++i) {
        Polynomial cur = d.image(i).rep();
        int k = 1;
        while (!cur.is_zero() && k < bound) {
            cur = divide(apply_lift(ring, images, cur), ring->relation()).remainder;
            ++k;
            if (cur.term_count() > term_ceiling) {
                report.reason = "term count exceeded " + std::to_string(term_ceiling) +
                                " while iterating on " + ring->variables()[i];
                break;
            }
        }
        if (cur.is_zero()) {
            report.steps_per_generator[i] = k;
        } else {
            all = false;
            if (report.reason.empty()) {
                report.reason = "D^" + std::to_string(bound) + "(" + ring->variables()[i] +
                                ") is nonzero";
            }
        }
    }
    if (all) {
        report.status = NilpotencyStatus::CertifiedNilpotent;
        report.certificate = CertificateKind::ByIteration;
        report.reason.clear();
    }
    return report;
}

NilpotencyReport certify_by_negative_grading(const Derivation& d, const WeightVector& w) {
    const auto& f = d.presentation()->relation();
    if (w.size() != f.arity()) throw InvalidArgument("weight vector length does not match variable count");
    for (auto x : w.weights) {
        if (x <= 0) throw InvalidArgument("negative-grading certificate needs positive weights");
    }
    if (!is_homogeneous(f, w)) throw InvalidArgument("relation is not homogeneous for these weights");

    NilpotencyReport report;
    report.weights = w;
    for (std::size_t i = 0; i < f.arity(); ++i) {
        const auto& img = d.image(i).rep();
        if (img.is_zero()) continue;
        std::int64_t jump = *weighted_degree(img, w) - w[i];
        if (!report.jump || jump > *report.jump) report.jump = jump;
    }
    if (!report.jump || *report.jump < 0) {
        report.status = NilpotencyStatus::CertifiedNilpotent;
        report.certificate = CertificateKind::ByNegativeGrading;
    } else {
        report.reason = "degree jump " + std::to_string(*report.jump) + " is not negative";
    }
    return report;
}

std::vector<bool> component_invariance_check(const Derivation& d,
                                             const std::vector<Polynomial>& factors) {
    const auto& ring = d.presentation();
    std::vector<bool> out;
    for (const auto& fi : factors) {
        if (fi.is_zero() || !divides(fi, ring->relation())) {
            throw InvalidArgument("factor does not divide the relation");
        }
        // f_i divides D(f_i) in A iff D(f_i) lies in (f_i) + (f) = (f_i), as f_i | f.
        out.push_back(divides(fi, apply(d, fi).rep()));
    }
    return out;
}

namespace {

// Rewrite with t^d -> replacement until every t-exponent is below d.
Polynomial reduce_power(const Polynomial& p, std::size_t t, std::uint32_t d, const Polynomial& replacement) {
    Polynomial out(p.variables());
    std::vector<Polynomial> powers{Polynomial::constant(p.variables(), 1)};
    for (const auto& [e, c] : p.terms()) {
        ExponentVector low = e;
        std::uint32_t q = e[t] / d;
        low[t] = e[t] % d;
        while (powers.size() <= q) powers.push_back(powers.back() * replacement);
        out += Polynomial::monomial(p.variables(), low, c) * powers[q];
    }
    return out;
}

// Quotient by t^k when every term has t-exponent exactly k; nullopt otherwise.
std::optional<Polynomial> strip_t_power(const Polynomial& p, std::size_t t, std::uint32_t k) {
    Polynomial::TermMap out;
    for (const auto& [e, c] : p.terms()) {
        if (e[t] != k) return std::nullopt;
        ExponentVector f = e;
        f[t] = 0;
        out.emplace(std::move(f), c);
    }
    return Polynomial(p.variables(), std::move(out));
}

}  // namespace

Cb3Result cb3_decompose(const Derivation& d) {
    const auto& f = d.presentation()->relation();
    if (f.arity() != 4 || f.term_count() != 4) {
        throw Unsupported("decomposition needs a relation X^a+Y^b+Z^c+T^d");
    }
    std::vector<std::uint32_t> exps(4, 0);
    for (const auto& [e, c] : f.terms()) {
        auto used = Polynomial::monomial(f.variables(), e, 1).used_variables();
        if (!c.is_one() || used.size() != 1 || exps[used[0]] != 0) {
            throw Unsupported("decomposition needs a relation X^a+Y^b+Z^c+T^d");
        }
        exps[used[0]] = e[used[0]];
    }
    const std::size_t t = 3;
    const std::uint32_t dt = exps[t];
    Polynomial t_power = Polynomial::monomial(f.variables(), {0, 0, 0, dt}, 1);
    Polynomial g = f - t_power;  // x^a + y^b + z^c
    Polynomial minus_g = -g;

    auto t_reduced = [&](std::size_t i) { return reduce_power(d.image(i).rep(), t, dt, minus_g); };

    Cb3Result result;
    Cb3Decomposition dec;
    const GaussianRational inv_d = GaussianRational(static_cast<long>(dt)).inverse();
    for (std::size_t i = 0; i < 3; ++i) {
        Polynomial img = t_reduced(i);
        if (img.is_zero()) {
            dec.delta.push_back(img);
            continue;
        }
        auto stripped = dt >= 1 ? strip_t_power(img, t, dt - 1) : std::nullopt;
        if (!stripped) {
            result.reason = "D(" + f.variables()[i] + ") is not d*t^(d-1) times an element of C[x,y,z]";
            return result;
        }
        dec.delta.push_back(*stripped * inv_d);
    }
    Polynomial dtimg = t_reduced(t);
    if (dtimg.uses_variable(t)) {
        result.reason = "D(t) depends on t";
        return result;
    }
    dec.q = -dtimg;

    Polynomial delta_g(f.variables());
    for (std::size_t i = 0; i < 3; ++i) delta_g += dec.delta[i] * diff(g, i);
    if (delta_g != dec.q) {
        result.reason = "Q differs from delta(x^a+y^b+z^c)";
        return result;
    }
    Polynomial delta_q(f.variables());
    for (std::size_t i = 0; i < 3; ++i) delta_q += dec.delta[i] * diff(dec.q, i);
    dec.delta_kills_q = delta_q.is_zero();
    result.decomposition = std::move(dec);
    return result;
}

CommutatorRatio qplus_commutator_ratio(const Polynomial& f, const Polynomial& g) {
    f.require_same_ring(g, "commutator ratio");
    if (f.is_zero() || g.is_zero()) throw InvalidArgument("commutator ratio of a zero polynomial");
    auto vf = univariate_variable(f);
    auto vg = univariate_variable(g);
    if (!vf && !vg) return {CommutatorRatio::Kind::Indeterminate, 0};
    if (vf && vg && *vf != *vg) throw InvalidArgument("inputs are univariate in different variables");
    std::size_t v = vf ? *vf : *vg;

    Polynomial lhs = diff(f, v) * g;
    Polynomial rhs = f * diff(g, v);
    if (rhs.is_zero()) return {CommutatorRatio::Kind::NoConstantRatio, 0};
    GaussianRational h = lhs.is_zero() ? GaussianRational() : lhs.leading_term().second / rhs.leading_term().second;
    if (lhs != rhs * h) return {CommutatorRatio::Kind::NoConstantRatio, 0};

    mpq_class expected(static_cast<long>(f.degree_in(v)), static_cast<long>(g.degree_in(v)));
    expected.canonicalize();
    if (!h.is_real() || h.real() != expected) {
        throw InvariantViolation("commutator ratio differs from the degree quotient");
    }
    return {CommutatorRatio::Kind::Ratio, h.real()};
}

}  // namespace rigidity

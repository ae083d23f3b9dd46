#include "rigidity/grading.hpp"

#include "rigidity/errors.hpp"

#include <numeric>

namespace rigidity {

GradedPresentation gr_presentation(const PresentationPtr& ring, const WeightVector& w) {
    if (w.size() != ring->arity()) throw InvalidArgument("weight vector length does not match variable count");
    Polynomial fhat = top_part(ring->relation(), w);
    if (fhat.is_constant()) throw InvalidArgument("top part of the relation is constant");
    return {ring, w, make_presentation(std::move(fhat))};
}

std::map<std::int64_t, Polynomial> homogeneous_components(const Polynomial& p, const WeightVector& w) {
    if (w.size() != p.arity()) throw InvalidArgument("weight vector length does not match variable count");
    std::map<std::int64_t, Polynomial::TermMap> parts;
    for (const auto& [e, c] : p.terms()) parts[weighted_degree(e, w)].emplace(e, c);
    std::map<std::int64_t, Polynomial> out;
    for (auto& [d, terms] : parts) out.emplace(d, Polynomial(p.variables(), std::move(terms)));
    return out;
}

namespace {

bool is_monomial(const Polynomial& p) { return p.term_count() == 1; }

ExponentVector only_exponents(const Polynomial& p) { return p.terms().begin()->first; }

bool disjoint_binomial(const Polynomial& p) {
    if (p.term_count() != 2) return false;
    const auto& a = p.terms().begin()->first;
    const auto& b = std::next(p.terms().begin())->first;
    for (std::size_t v = 0; v < a.size(); ++v) {
        if (a[v] > 0 && b[v] > 0) return false;
    }
    return true;
}

bool squarefree_by_pattern(const Polynomial& p);

// c*v*M + R: degree one in v, M a monomial free of v, R != 0 free of v, gcd(M, R) = 1.
bool linear_shape(const Polynomial& p) {
    for (std::size_t v = 0; v < p.arity(); ++v) {
        if (p.degree_in(v) != 1) continue;
        Polynomial lead(p.variables());
        Polynomial rest(p.variables());
        for (const auto& [e, c] : p.terms()) {
            if (e[v] == 1) {
                ExponentVector f = e;
                f[v] = 0;
                lead += Polynomial::monomial(p.variables(), f, c);
            } else {
                rest += Polynomial::monomial(p.variables(), e, c);
            }
        }
        if (!is_monomial(lead) || rest.is_zero()) continue;
        bool coprime = true;
        for (auto u : lead.used_variables()) coprime = coprime && rest.min_degree_in(u) == 0;
        if (coprime) return true;
    }
    return false;
}

// c*v^d + h with h free of v and squarefree.
bool power_plus_squarefree(const Polynomial& p) {
    for (std::size_t v = 0; v < p.arity(); ++v) {
        std::uint32_t d = p.degree_in(v);
        if (d < 2) continue;
        Polynomial h(p.variables());
        bool shape = true;
        for (const auto& [e, c] : p.terms()) {
            if (e[v] == 0) {
                h += Polynomial::monomial(p.variables(), e, c);
            } else {
                auto used = Polynomial::monomial(p.variables(), e, 1).used_variables();
                shape = shape && e[v] == d && used.size() == 1;
            }
        }
        if (shape && !h.is_constant() && squarefree_by_pattern(h)) return true;
    }
    return false;
}

bool squarefree_by_pattern(const Polynomial& p) {
    if (p.is_constant()) return false;
    if (is_monomial(p)) {
        for (auto x : only_exponents(p)) {
            if (x > 1) return false;
        }
        return true;
    }
    return disjoint_binomial(p) || irreducible_by_pattern(p);
}

}  // namespace

bool irreducible_by_pattern(const Polynomial& p) {
    if (p.is_constant()) return false;
    if (is_monomial(p)) return p.used_variables().size() == 1 && *p.total_degree() == 1;
    if (linear_shape(p)) return true;
    if (disjoint_binomial(p)) {
        std::uint32_t g = 0;
        for (const auto& [e, c] : p.terms()) {
            for (auto x : e) g = std::gcd(g, x);
        }
        if (g == 1) return true;
    }
    return power_plus_squarefree(p);
}

CosetDegree coset_degree(const RingElement& u, const WeightVector& w) {
    const auto& f = u.presentation()->relation();
    if (w.size() != f.arity()) throw InvalidArgument("weight vector length does not match variable count");
    Polynomial fhat = top_part(f, w);
    CosetDegree out;
    out.degree_function = irreducible_by_pattern(fhat);
    Polynomial g = u.rep();
    for (int iter = 0;; ++iter) {
        if (g.is_zero()) {
            out.exact = true;
            break;
        }
        if (iter >= kCosetReductionCap) break;
        Polynomial t = top_part(g, w);
        auto [q, r] = divide(t, fhat);
        if (!r.is_zero()) {
            out.exact = true;
            break;
        }
        g -= q * f;
    }
    out.value = weighted_degree(g, w);
    out.representative = std::move(g);
    return out;
}

DegreeJump derivation_degree_jump(const Derivation& d, const WeightVector& w) {
    if (d.is_zero()) throw InvalidArgument("the zero derivation has no degree");
    const auto& ring = d.presentation();
    GradedPresentation graded = gr_presentation(ring, w);
    const std::size_t n = ring->arity();

    std::vector<Degree> jumps(n);
    std::vector<Polynomial> tops(n, Polynomial(ring->variables()));
    bool degree_function = true;
    std::optional<std::int64_t> dl;
    for (std::size_t i = 0; i < n; ++i) {
        if (d.image(i).is_zero()) continue;
        CosetDegree img = coset_degree(d.image(i), w);
        CosetDegree gen = coset_degree(generator(ring, i), w);
        if (!img.exact || !gen.exact) throw Unsupported("coset degree reduction did not terminate");
        degree_function = degree_function && img.degree_function;
        jumps[i] = *img.value - *gen.value;
        tops[i] = top_part(img.representative, w);
        if (!dl || *jumps[i] > *dl) dl = jumps[i];
    }
    std::vector<Polynomial> images(n, Polynomial(ring->variables()));
    for (std::size_t i = 0; i < n; ++i) {
        if (jumps[i] && *jumps[i] == *dl) images[i] = tops[i];
    }
    if (!well_definedness_residual(graded.graded, images).is_zero()) {
        if (degree_function) throw InvariantViolation("gr(D) does not descend to the graded ring");
        throw Unsupported("gr(D) does not descend to the graded ring (top part not recognized as irreducible)");
    }
    Derivation grd = make_derivation(graded.graded, images);
    if (grd.is_zero()) throw InvariantViolation("gr(D) vanishes for a nonzero D");
    return {*dl, std::move(jumps), std::move(graded), std::move(grd)};
}

}  // namespace rigidity

#include "rigidity/classifier.hpp"

#include "rigidity/errors.hpp"
#include "rigidity/expr.hpp"
#include "rigidity/mason.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace rigidity {

std::string to_string(Family f) {
    switch (f) {
        case Family::ThreeTermXY: return "ThreeTermXY";
        case Family::Fermat3: return "Fermat3";
        case Family::MixedFour: return "MixedFour";
        case Family::FermatN: return "FermatN";
        case Family::DanielewskiLike: return "DanielewskiLike";
        case Family::Unrecognized: return "Unrecognized";
    }
    return "?";
}

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Rigid: return "Rigid";
        case VerdictStatus::NotRigid: return "NotRigid";
        case VerdictStatus::Unknown: return "Unknown";
        case VerdictStatus::OutOfScope: return "OutOfScope";
    }
    return "?";
}

namespace {

struct Term {
    ExponentVector e;
    GaussianRational c;
    std::vector<std::size_t> support;
};

std::vector<Term> split_terms(const Polynomial& f) {
    std::vector<Term> out;
    for (const auto& [e, c] : f.terms()) {
        Term t{e, c, {}};
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] > 0) t.support.push_back(v);
        }
        out.push_back(std::move(t));
    }
    return out;
}

bool disjoint(const std::vector<Term>& ts) {
    std::vector<bool> seen(ts.empty() ? 0 : ts[0].e.size(), false);
    for (const auto& t : ts) {
        for (auto v : t.support) {
            if (seen[v]) return false;
            seen[v] = true;
        }
    }
    return true;
}

Polynomial unit_monomial(const Variables& vars, const ExponentVector& e) {
    return Polynomial::monomial(vars, e, GaussianRational(1));
}

Polynomial unit_sum(const Polynomial& f) {
    Polynomial out(f.variables());
    for (const auto& [e, c] : f.terms()) out += unit_monomial(f.variables(), e);
    return out;
}

void note_normalization(FamilyDescriptor& d) {
    if (d.normalized != d.relation) {
        d.notes.push_back("term coefficients absorbed by rescaling variables; normalized relation " +
                          format_poly(d.normalized));
    }
}

std::optional<FamilyDescriptor> as_three_term(const Polynomial& f) {
    if (f.arity() != 3 || f.term_count() != 2) return std::nullopt;
    auto ts = split_terms(f);
    if (!disjoint(ts)) return std::nullopt;
    if (ts[0].support.size() < ts[1].support.size()) std::swap(ts[0], ts[1]);
    const Term& big = ts[0];
    const Term& small = ts[1];
    if (big.support.size() > 2 || small.support.size() > 1) return std::nullopt;

    std::vector<std::size_t> free;
    for (std::size_t v = 0; v < 3; ++v) {
        if (!f.uses_variable(v)) free.push_back(v);
    }
    FamilyDescriptor d;
    d.family = Family::ThreeTermXY;
    d.relation = f;
    const Variables& vars = f.variables();
    if (big.support.size() == 2) {
        std::size_t u = big.support[0];
        std::size_t v = big.support[1];
        if (big.e[v] < big.e[u]) std::swap(u, v);
        std::size_t w = small.support.empty() ? free.at(0) : small.support[0];
        d.roles = {u, v, w};
        d.exponents = {big.e[u], big.e[v], small.support.empty() ? 0u : small.e[w]};
        d.normalized = unit_monomial(vars, big.e) - unit_monomial(vars, small.e);
    } else {
        // X^0 * Y^b - Z^c: the X slot is a free variable, the two terms are ordered by exponent.
        auto exp_of = [](const Term& t) { return t.support.empty() ? 0u : t.e[t.support[0]]; };
        const Term* lo = &big;
        const Term* hi = &small;
        if (exp_of(*hi) < exp_of(*lo)) std::swap(lo, hi);
        std::size_t next_free = 1;
        auto slot = [&](const Term& t) { return t.support.empty() ? free.at(next_free++) : t.support[0]; };
        std::size_t y = slot(*lo);
        std::size_t z = slot(*hi);
        d.roles = {free.at(0), y, z};
        d.exponents = {0, exp_of(*lo), exp_of(*hi)};
        d.normalized = unit_monomial(vars, lo->e) - unit_monomial(vars, hi->e);
    }
    note_normalization(d);
    return d;
}

// Pure powers of pairwise distinct variables, no constant term.
bool all_pure_powers(const std::vector<Term>& ts) {
    for (const auto& t : ts) {
        if (t.support.size() != 1) return false;
    }
    return disjoint(ts);
}

std::optional<FamilyDescriptor> as_fermat(const Polynomial& f) {
    const std::size_t n = f.arity();
    if (n < 3 || f.term_count() != n) return std::nullopt;
    auto ts = split_terms(f);
    if (!all_pure_powers(ts)) return std::nullopt;
    std::vector<std::size_t> vars(n);
    std::iota(vars.begin(), vars.end(), 0);
    std::stable_sort(vars.begin(), vars.end(), [&](std::size_t a, std::size_t b) {
        return f.degree_in(a) < f.degree_in(b);
    });
    FamilyDescriptor d;
    d.family = n == 3 ? Family::Fermat3 : Family::FermatN;
    d.relation = f;
    d.normalized = unit_sum(f);
    d.roles = vars;
    for (auto v : vars) d.exponents.push_back(f.degree_in(v));
    note_normalization(d);
    return d;
}

std::optional<FamilyDescriptor> as_mixed_four(const Polynomial& f) {
    if (f.arity() != 4 || f.term_count() != 3) return std::nullopt;
    auto ts = split_terms(f);
    if (!disjoint(ts)) return std::nullopt;
    std::sort(ts.begin(), ts.end(),
              [](const Term& a, const Term& b) { return a.support.size() > b.support.size(); });
    if (ts[0].support.size() != 2 || ts[1].support.size() != 1 || ts[2].support.size() != 1) {
        return std::nullopt;
    }
    std::size_t x = ts[0].support[0];
    std::size_t y = ts[0].support[1];
    if (ts[0].e[x] < ts[0].e[y]) std::swap(x, y);
    std::size_t z = ts[1].support[0];
    std::size_t t = ts[2].support[0];
    if (ts[2].e[t] < ts[1].e[z] || (ts[2].e[t] == ts[1].e[z] && t < z)) std::swap(z, t);

    FamilyDescriptor d;
    d.family = Family::MixedFour;
    d.relation = f;
    d.normalized = unit_sum(f);
    d.roles = {x, y, z, t};
    d.exponents = {f.degree_in(x), f.degree_in(y), f.degree_in(z), f.degree_in(t)};
    note_normalization(d);
    return d;
}

struct DanielewskiMatch {
    std::size_t x, y, z;
    std::uint32_t d;
    Polynomial p;
};

// f = c*X^d*Y + Z^d*R with X absent from R; then P = R / c.
std::optional<DanielewskiMatch> match_danielewski(const Polynomial& f, std::size_t x, std::size_t y,
                                                  std::size_t z) {
    const Term* lead = nullptr;
    auto ts = split_terms(f);
    for (const auto& t : ts) {
        if (t.e[x] == 0) continue;
        if (lead) return std::nullopt;
        lead = &t;
    }
    if (!lead || lead->e[y] != 1 || lead->e[z] != 0) return std::nullopt;
    const std::uint32_t d = lead->e[x];
    if (ts.size() < 2) return std::nullopt;
    Polynomial::TermMap p;
    const GaussianRational inv = lead->c.inverse();
    for (const auto& t : ts) {
        if (&t == lead) continue;
        if (t.e[z] < d) return std::nullopt;
        ExponentVector e = t.e;
        e[z] -= d;
        p.emplace(std::move(e), t.c * inv);
    }
    return DanielewskiMatch{x, y, z, d, Polynomial(f.variables(), std::move(p))};
}

std::optional<FamilyDescriptor> as_danielewski(const Polynomial& f) {
    if (f.arity() != 3) return std::nullopt;
    std::array<std::size_t, 3> perm{0, 1, 2};
    std::optional<DanielewskiMatch> best;
    do {
        auto m = match_danielewski(f, perm[0], perm[1], perm[2]);
        if (!m) continue;
        bool y_only = !m->p.uses_variable(m->z);
        if (!best || (y_only && best->p.uses_variable(best->z))) best = std::move(m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!best) return std::nullopt;

    FamilyDescriptor d;
    d.family = Family::DanielewskiLike;
    d.relation = f;
    d.normalized = f;
    d.roles = {best->x, best->y, best->z};
    d.exponents = {best->d};
    d.p = best->p;
    ExponentVector lead(3, 0);
    lead[best->x] = best->d;
    lead[best->y] = 1;
    if (!f.coefficient(lead).is_one()) {
        d.notes.push_back("P divided by the coefficient of the X^d*Y term");
    }
    return d;
}

Variables family_variables(std::size_t n) {
    if (n <= 4) {
        std::vector<std::string> names{"X", "Y", "Z", "T"};
        names.resize(n);
        return Variables(names);
    }
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
    return Variables(names);
}

Polynomial pure_power(const Variables& vars, std::size_t v, std::uint32_t e) {
    ExponentVector x(vars.size(), 0);
    x[v] = e;
    return unit_monomial(vars, x);
}

void require_positive(std::initializer_list<std::uint32_t> es) {
    for (auto e : es) {
        if (e == 0) throw InvalidArgument("family exponents must be positive");
    }
}

FamilyDescriptor expect(std::optional<FamilyDescriptor> d, Family family) {
    if (!d || d->family != family) throw InvariantViolation("factory relation not recognized as " + to_string(family));
    return std::move(*d);
}

// ---- rule predicates on canonical exponents ----

using Exps = std::vector<std::uint32_t>;

bool any_at_most_one(const Exps& e) {
    return std::any_of(e.begin(), e.end(), [](auto x) { return x <= 1; });
}
bool all_at_least_two(const Exps& e) {
    return std::all_of(e.begin(), e.end(), [](auto x) { return x >= 2; });
}
bool any_one(const Exps& e) {
    return std::any_of(e.begin(), e.end(), [](auto x) { return x == 1; });
}
bool two_squares(const Exps& e) { return std::count(e.begin(), e.end(), 2u) >= 2; }

bool f3_a_one(const Exps& e) { return e[0] == 1; }
bool f3_two_twos(const Exps& e) { return e[0] == 2 && e[1] == 2; }
bool f3_kalzai(const Exps& e) { return e[0] >= 2 && e[1] >= 3 && e[2] >= 3; }

bool m4_cd_two(const Exps& e) { return e[2] == 2 && e[3] == 2; }
bool m4_freudenburg(const Exps& e) { return e[1] == 2 && (e[2] == 2 || e[3] == 2) && e[0] % 2 == 0; }
bool m4_leftover_i(const Exps& e) { return e[0] % 6 == 0 && e[1] == 3 && e[2] == 2 && e[3] == 4; }
bool m4_leftover_ii(const Exps& e) { return e[0] % 6 == 0 && e[1] == 2 && e[2] == 3 && e[3] == 3; }
bool m4_abcd(const Exps& e) {
    return all_at_least_two(e) && !m4_cd_two(e) && !m4_freudenburg(e) && !m4_leftover_i(e) &&
           !m4_leftover_ii(e);
}

std::optional<std::array<std::uint32_t, 4>> cb4_ordering(const Exps& e) {
    if (e.size() != 4 || !all_at_least_two(e)) return std::nullopt;
    std::array<std::uint32_t, 4> p{e[0], e[1], e[2], e[3]};
    std::sort(p.begin(), p.end());
    do {
        const std::uint64_t a = p[0], b = p[1], c = p[2], d = p[3];
        const std::uint64_t g = std::gcd(a, b);
        if (std::gcd(a * b, c) == 1 && std::gcd(a * b * c, d) == 1 && g != a && g != b) return p;
    } while (std::next_permutation(p.begin(), p.end()));
    return std::nullopt;
}
bool fn_cb4(const Exps& e) { return cb4_ordering(e).has_value(); }

ObstructionVerdict ex1_check(const Exps& e) {
    Ex1Params p;
    for (auto x : e) p.ds.push_back(x);
    return obstruction_check(p);
}
bool fn_ex1(const Exps& e) { return ex1_check(e).status == ObstructionStatus::Obstructed; }

std::string join(const Exps& e) {
    std::string out;
    for (auto x : e) out += (out.empty() ? "" : ",") + std::to_string(x);
    return out;
}

}  // namespace

FamilyDescriptor recognize_family(const Polynomial& f) {
    if (f.is_constant()) throw InvalidArgument("cannot recognize a constant relation");
    if (auto d = as_three_term(f)) return *d;
    if (auto d = as_fermat(f)) return *d;
    if (auto d = as_mixed_four(f)) return *d;
    if (auto d = as_danielewski(f)) return *d;
    FamilyDescriptor d;
    d.relation = f;
    d.normalized = f;
    d.notes.push_back("relation matches none of the supported families");
    return d;
}

FamilyDescriptor three_term_xy(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    Variables vars = family_variables(3);
    if (a == 0 && b == 0 && c == 0) {
        FamilyDescriptor d;
        d.family = Family::ThreeTermXY;
        d.exponents = {0, 0, 0};
        d.relation = Polynomial(vars);
        d.normalized = d.relation;
        d.roles = {0, 1, 2};
        d.notes.push_back("X^0*Y^0 - Z^0 is the zero polynomial");
        return d;
    }
    ExponentVector xy{a, b, 0};
    Polynomial f = unit_monomial(vars, xy) - pure_power(vars, 2, c);
    return expect(as_three_term(f), Family::ThreeTermXY);
}

FamilyDescriptor fermat3(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    require_positive({a, b, c});
    Variables vars = family_variables(3);
    Polynomial f = pure_power(vars, 0, a) + pure_power(vars, 1, b) + pure_power(vars, 2, c);
    return expect(as_fermat(f), Family::Fermat3);
}

FamilyDescriptor mixed_four(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    require_positive({a, b, c, d});
    Variables vars = family_variables(4);
    Polynomial f = unit_monomial(vars, {a, b, 0, 0}) + pure_power(vars, 2, c) + pure_power(vars, 3, d);
    return expect(as_mixed_four(f), Family::MixedFour);
}

FamilyDescriptor fermat_n(const std::vector<std::uint32_t>& ds) {
    if (ds.size() < 4) throw InvalidArgument("FermatN needs at least 4 exponents");
    Variables vars = family_variables(ds.size());
    Polynomial f(vars);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        require_positive({ds[i]});
        f += pure_power(vars, i, ds[i]);
    }
    return expect(as_fermat(f), Family::FermatN);
}

FamilyDescriptor danielewski(std::uint32_t d, const std::vector<GaussianRational>& p_coeffs) {
    require_positive({d});
    Variables vars = family_variables(3);
    Polynomial p(vars);
    for (std::size_t k = 0; k < p_coeffs.size(); ++k) {
        if (p_coeffs[k].is_zero()) continue;
        p += Polynomial::monomial(vars, {0, static_cast<std::uint32_t>(k), 0}, p_coeffs[k]);
    }
    FamilyDescriptor out;
    out.family = Family::DanielewskiLike;
    out.exponents = {d};
    out.relation = unit_monomial(vars, {d, 1, 0}) + pure_power(vars, 2, d) * p;
    out.normalized = out.relation;
    out.roles = {0, 1, 2};
    out.p = p;
    return out;
}

const std::vector<Rule>& rule_table() {
    static const std::vector<Rule> rules{
        {Family::ThreeTermXY, "exponent 0 or 1", VerdictStatus::NotRigid, "Theorem case1 (trivial cases)",
         any_at_most_one},
        {Family::ThreeTermXY, "a, b, c >= 2", VerdictStatus::Rigid, "Theorem case1", all_at_least_two},

        {Family::Fermat3, "a = 1", VerdictStatus::NotRigid, "derived witness (linear variable)", f3_a_one},
        {Family::Fermat3, "a = b = 2", VerdictStatus::NotRigid, "derived witness (two squares)", f3_two_twos},
        {Family::Fermat3, "a >= 2 and b, c >= 3", VerdictStatus::Rigid, "Theorem KalZai", f3_kalzai},

        {Family::MixedFour, "exponent 1", VerdictStatus::NotRigid, "Remark Leftover (exponent 1)", any_one},
        {Family::MixedFour, "c = d = 2", VerdictStatus::NotRigid, "Remark Leftover (c = d = 2)", m4_cd_two},
        {Family::MixedFour, "b = 2, c or d = 2, a even", VerdictStatus::NotRigid,
         "Remark Leftover (Freudenburg witness)", m4_freudenburg},
        {Family::MixedFour, "a = 0 mod 6, b = 3, c = 2, d = 4", VerdictStatus::Unknown, "Remark Leftover (i)",
         m4_leftover_i},
        {Family::MixedFour, "a = 0 mod 6, b = 2, c = d = 3", VerdictStatus::Unknown, "Remark Leftover (ii)",
         m4_leftover_ii},
        {Family::MixedFour, "all other a, b, c, d >= 2", VerdictStatus::Rigid, "Theorem abcdTHM", m4_abcd},

        {Family::FermatN, "exponent 1", VerdictStatus::NotRigid, "derived witness (linear variable)", any_one},
        {Family::FermatN, "two exponents 2", VerdictStatus::NotRigid, "derived witness (two squares)",
         two_squares},
        {Family::FermatN, "gcd(ab,c) = gcd(abc,d) = 1, a and b not dividing each other", VerdictStatus::Rigid,
         "Theorem CB4", fn_cb4},
        {Family::FermatN, "sum of 1/d_i <= 1/(n-2), gcd 1", VerdictStatus::Rigid, "Lemma EX1", fn_ex1},
    };
    return rules;
}

std::vector<const Rule*> matching_rules(Family family, const std::vector<std::uint32_t>& exponents) {
    std::vector<const Rule*> out;
    for (const auto& r : rule_table()) {
        if (r.family == family && r.matches(exponents)) out.push_back(&r);
    }
    return out;
}

// ---- witnesses ----

namespace {

std::optional<std::vector<Polynomial>> free_variable_images(const Polynomial& f) {
    for (std::size_t v = 0; v < f.arity(); ++v) {
        if (f.uses_variable(v)) continue;
        std::vector<Polynomial> images(f.arity(), Polynomial(f.variables()));
        images[v] = Polynomial::constant(f.variables(), 1);
        return images;
    }
    return std::nullopt;
}

// f = c*v*M + R with v in neither M nor R; D(v) = -dR/dw, D(w) = c*M for some w in R, not in M.
std::optional<std::vector<Polynomial>> linear_images(const Polynomial& f) {
    const auto ts = split_terms(f);
    for (std::size_t v = 0; v < f.arity(); ++v) {
        const Term* lin = nullptr;
        bool ok = true;
        for (const auto& t : ts) {
            if (t.e[v] == 0) continue;
            if (lin || t.e[v] != 1) {
                ok = false;
                break;
            }
            lin = &t;
        }
        if (!ok || !lin) continue;
        ExponentVector m = lin->e;
        m[v] = 0;
        Polynomial r = f - Polynomial::monomial(f.variables(), lin->e, lin->c);
        for (std::size_t w = 0; w < f.arity(); ++w) {
            if (w == v || m[w] != 0 || !r.uses_variable(w)) continue;
            std::vector<Polynomial> images(f.arity(), Polynomial(f.variables()));
            images[v] = -diff(r, w);
            images[w] = Polynomial::monomial(f.variables(), m, lin->c);
            return images;
        }
    }
    return std::nullopt;
}

// Index of the term c*v^e, if v occurs in that term only.
std::optional<std::size_t> lone_power(const std::vector<Term>& ts, std::size_t v, std::uint32_t e) {
    std::optional<std::size_t> found;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (ts[k].e[v] == 0) continue;
        if (found || ts[k].support.size() != 1 || ts[k].e[v] != e) return std::nullopt;
        found = k;
    }
    return found;
}

// alpha*s^2 + beta*w^2 + R: D(s) = -R_r/2, D(w) = R_r/(2 mu), D(r) = alpha*(s + mu*w),
// mu^2 = -beta/alpha, so s + mu*w is in the kernel.
std::optional<std::vector<Polynomial>> two_squares_images(const Polynomial& f) {
    const auto ts = split_terms(f);
    std::vector<std::pair<std::size_t, std::size_t>> squares;
    for (std::size_t v = 0; v < f.arity(); ++v) {
        if (auto k = lone_power(ts, v, 2)) squares.emplace_back(v, *k);
    }
    const Variables& vars = f.variables();
    for (std::size_t i = 0; i < squares.size(); ++i) {
        for (std::size_t j = i + 1; j < squares.size(); ++j) {
            auto [s, ks] = squares[i];
            auto [w, kw] = squares[j];
            const GaussianRational& alpha = ts[ks].c;
            const GaussianRational& beta = ts[kw].c;
            auto mu = (-(beta / alpha)).sqrt();
            if (!mu) continue;
            Polynomial r = f - Polynomial::monomial(vars, ts[ks].e, alpha) -
                           Polynomial::monomial(vars, ts[kw].e, beta);
            auto used = r.used_variables();
            if (used.empty()) continue;
            std::size_t rv = used[0];
            Polynomial dr = diff(r, rv);
            const GaussianRational half(mpq_class(1, 2));
            std::vector<Polynomial> images(f.arity(), Polynomial(vars));
            images[s] = dr * -half;
            images[w] = dr * (half / *mu);
            images[rv] = (Polynomial::variable(vars, vars[s]) +
                          Polynomial::variable(vars, vars[w]) * *mu) * alpha;
            return images;
        }
    }
    return std::nullopt;
}

// alpha*X^(2k)*Y^2 + beta*Z^2 + gamma*T^d with mu^2 = -beta/alpha:
// D(y) = (gamma d/alpha) T^(d-1), D(z) = -(gamma d mu/beta) X^k T^(d-1), D(t) = -2 X^k (X^k Y - mu Z).
std::optional<std::vector<Polynomial>> freudenburg_images(const Polynomial& f) {
    if (f.term_count() != 3) return std::nullopt;
    const auto ts = split_terms(f);
    if (!disjoint(ts)) return std::nullopt;
    const Variables& vars = f.variables();
    for (const auto& mixed : ts) {
        if (mixed.support.size() != 2) continue;
        for (int flip = 0; flip < 2; ++flip) {
            std::size_t x = mixed.support[flip];
            std::size_t y = mixed.support[1 - flip];
            if (mixed.e[y] != 2 || mixed.e[x] % 2 != 0) continue;
            const std::uint32_t k = mixed.e[x] / 2;
            for (const auto& sq : ts) {
                if (sq.support.size() != 1 || sq.e[sq.support[0]] != 2) continue;
                for (const auto& last : ts) {
                    if (&last == &sq || last.support.size() != 1) continue;
                    std::size_t z = sq.support[0];
                    std::size_t t = last.support[0];
                    const std::uint32_t d = last.e[t];
                    const GaussianRational& alpha = mixed.c;
                    const GaussianRational& beta = sq.c;
                    const GaussianRational& gamma = last.c;
                    auto mu = (-(beta / alpha)).sqrt();
                    if (!mu) continue;
                    const GaussianRational gd = gamma * GaussianRational(static_cast<long>(d));
                    ExponentVector td(vars.size(), 0);
                    td[t] = d - 1;
                    ExponentVector xk_td = td;
                    xk_td[x] = k;
                    ExponentVector xk(vars.size(), 0);
                    xk[x] = k;
                    ExponentVector x2k_y(vars.size(), 0);
                    x2k_y[x] = 2 * k;
                    x2k_y[y] = 1;
                    ExponentVector xk_z(vars.size(), 0);
                    xk_z[x] = k;
                    xk_z[z] = 1;
                    std::vector<Polynomial> images(f.arity(), Polynomial(vars));
                    images[y] = Polynomial::monomial(vars, td, gd / alpha);
                    images[z] = Polynomial::monomial(vars, xk_td, -(gd * *mu / beta));
                    images[t] = Polynomial::monomial(vars, x2k_y, GaussianRational(-2)) +
                                Polynomial::monomial(vars, xk_z, GaussianRational(2) * *mu);
                    return images;
                }
            }
        }
    }
    return std::nullopt;
}

Verdict make_verdict(VerdictStatus s, std::string citation) {
    Verdict v;
    v.status = s;
    v.citation = std::move(citation);
    return v;
}

void attach_witness(Verdict& v, const FamilyDescriptor& d) {
    std::optional<Derivation> w = catalog_witness(d.relation);
    if (!w && d.normalized != d.relation && !d.normalized.is_constant()) {
        w = catalog_witness(d.normalized);
        if (w) {
            v.notes.push_back("witness is given on the normalized relation " + format_poly(d.normalized) +
                              "; the rescaling needs a root outside Q(i)");
        }
    }
    if (!w) throw InvariantViolation("no catalog witness for a NotRigid verdict on " + format_poly(d.relation));
    if (w->is_zero()) throw InvariantViolation("catalog witness is zero");
    NilpotencyReport report = probe_nilpotency(*w);
    if (!report.certified()) {
        throw InvariantViolation("catalog witness not certified nilpotent: " + report.reason);
    }
    v.witness = std::move(w);
    v.witness_report = std::move(report);
}

Verdict classify_by_rules(const FamilyDescriptor& d) {
    auto rules = matching_rules(d.family, d.exponents);
    const std::string tuple = to_string(d.family) + "(" + join(d.exponents) + ")";
    if (rules.empty()) {
        Verdict v = make_verdict(VerdictStatus::Unknown, "no rule applies");
        v.notes.push_back(tuple + " matches no rule");
        return v;
    }
    for (const Rule* r : rules) {
        if (r->status != rules[0]->status) {
            throw InvariantViolation(tuple + " matches rules with different verdicts");
        }
    }
    const Rule& rule = *rules[0];
    Verdict v = make_verdict(rule.status, rule.citation);
    v.notes.push_back(tuple + ": " + rule.name);
    return v;
}

void trace_fermat_n(Verdict& v, const FamilyDescriptor& d) {
    if (any_one(d.exponents) || two_squares(d.exponents)) return;
    if (auto p = cb4_ordering(d.exponents)) {
        v.notes.push_back("CB4 ordering (a,b,c,d) = (" + join(Exps(p->begin(), p->end())) + ")");
    } else if (d.exponents.size() == 4) {
        v.notes.push_back("CB4: no ordering with gcd(ab,c) = gcd(abc,d) = 1 and a, b not dividing each other");
    } else {
        v.notes.push_back("CB4: needs exactly 4 exponents");
    }
    auto ex1 = ex1_check(d.exponents);
    v.notes.push_back("EX1: " + to_string(ex1.status) + ", " + ex1.detail);
}

void trace_mixed_four(Verdict& v, const FamilyDescriptor& d) {
    if (v.status != VerdictStatus::Rigid) return;
    const auto& e = d.exponents;
    auto dm = obstruction_check(DoubleMasonParams{e[0], e[1], e[2], e[3]});
    v.notes.push_back("doublemason: " + to_string(dm.status) + ", " + dm.detail);
}

Verdict classify_danielewski(const FamilyDescriptor& d) {
    const Polynomial& p = *d.p;
    const std::size_t y = d.roles[1];
    const std::size_t z = d.roles[2];
    const std::uint32_t deg = d.exponents[0];
    const Variables& vars = p.variables();
    Verdict v;
    v.notes = d.notes;
    auto add = [&](Verdict out) {
        out.notes.insert(out.notes.begin(), v.notes.begin(), v.notes.end());
        return out;
    };
    v.notes.push_back("d = " + std::to_string(deg) + ", P = " + format_poly(p));

    if (divides(Polynomial::variable(vars, vars[y]), p)) {
        Verdict out = make_verdict(VerdictStatus::OutOfScope, "reducible relation");
        out.notes.push_back("Y divides P, so Y divides the relation");
        return add(std::move(out));
    }
    if (p.uses_variable(z)) {
        Verdict out = make_verdict(VerdictStatus::Unknown, "Proposition EX2 (outside its hypotheses)");
        out.notes.push_back("P involves the Z role; the parametrization argument gives no conclusion");
        return add(std::move(out));
    }
    if (deg == 1 || p.is_constant()) {
        Verdict out = make_verdict(VerdictStatus::NotRigid, "derived witness (linear variable)");
        out.notes.push_back(deg == 1 ? "d = 1" : "P is constant, so Q = 0");
        out = add(std::move(out));
        attach_witness(out, d);
        return out;
    }
    // P = P(0) + Y*Q(Y); Extended Mini-Mason on F^d + H^d*Q(H) = 1.
    const GaussianRational p0 = p.constant_term();
    Polynomial q = divide_exact(p - Polynomial::constant(vars, p0), Polynomial::variable(vars, vars[y]));
    const auto deg_q = static_cast<std::int64_t>(q.degree_in(y));
    auto ext = obstruction_check(ExtendedMiniMasonParams{deg, deg, deg_q});
    if (ext.status == ObstructionStatus::Obstructed) {
        Verdict out = make_verdict(VerdictStatus::Rigid, "Theorem EX2t");
        out.notes.push_back("Extended Mini-Mason: " + ext.detail);
        return add(std::move(out));
    }
    if (q.term_count() == 1) {
        auto mini = obstruction_check(MiniMasonParams{deg, deg + deg_q});
        if (mini.status == ObstructionStatus::Obstructed) {
            Verdict out = make_verdict(VerdictStatus::Rigid, "Proposition EX2 + Lemma MiniMason a)");
            out.notes.push_back("Q is a monomial; F^d + c*H^(d+e) = 1 with " + mini.detail);
            return add(std::move(out));
        }
    }
    Verdict out = make_verdict(VerdictStatus::Unknown, "Proposition EX2 (hypothesis not established)");
    out.notes.push_back("Extended Mini-Mason: " + ext.detail);
    return add(std::move(out));
}

}  // namespace

std::optional<Derivation> catalog_witness(const Polynomial& f) {
    if (f.is_constant()) throw InvalidArgument("catalog witness needs a nonconstant relation");
    using Builder = std::optional<std::vector<Polynomial>> (*)(const Polynomial&);
    for (Builder b : {free_variable_images, linear_images, two_squares_images, freudenburg_images}) {
        auto images = b(f);
        if (!images) continue;
        try {
            return make_derivation(make_presentation(f), *images);
        } catch (const IllDefined&) {
            throw InvariantViolation("catalog construction is not a derivation of " + format_poly(f));
        }
    }
    return std::nullopt;
}

Verdict classify(const FamilyDescriptor& d) {
    if (d.family == Family::Unrecognized) {
        Verdict v = make_verdict(VerdictStatus::OutOfScope, "unrecognized relation");
        v.notes = d.notes;
        return v;
    }
    if (d.family == Family::DanielewskiLike) return classify_danielewski(d);

    Verdict v = classify_by_rules(d);
    v.notes.insert(v.notes.begin(), d.notes.begin(), d.notes.end());
    if (d.family == Family::FermatN) trace_fermat_n(v, d);
    if (d.family == Family::MixedFour) trace_mixed_four(v, d);
    if (v.status == VerdictStatus::NotRigid) {
        if (d.relation.is_zero()) {
            v.notes.push_back("the ring is C[X,Y,Z], where d/dX is a nonzero LND; a zero relation is not "
                              "a presentation, so no witness object is attached");
        } else {
            attach_witness(v, d);
        }
    }
    return v;
}

Verdict classify_relation(const Polynomial& f) { return classify(recognize_family(f)); }

Derivation witness_for(const FamilyDescriptor& d) {
    Verdict v = classify(d);
    if (v.status != VerdictStatus::NotRigid || !v.witness) {
        throw InvalidArgument("no witness: verdict is " + to_string(v.status));
    }
    return *v.witness;
}

}  // namespace rigidity

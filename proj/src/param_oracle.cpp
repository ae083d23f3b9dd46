#include "rigidity/param_oracle.hpp"

#include "rigidity/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace rigidity {

// ---------------------------------------------------------------------------
// Verification

ParametrizationCheck verify_parametrization(const ParametrizationProblem& problem,
                                            const std::vector<Polynomial>& candidates) {
    if (candidates.size() != problem.relation.arity()) {
        throw InvalidArgument("need one candidate per relation variable (" +
                              std::to_string(problem.relation.arity()) + "), got " +
                              std::to_string(candidates.size()));
    }
    ParametrizationCheck out;
    out.value = substitute(problem.relation, candidates);
    if (problem.constraint == ConstraintKind::HomogeneousZero) {
        out.holds = out.value.is_zero();
        out.residual = out.value;
    } else {
        out.holds = !out.value.is_zero() && out.value.is_constant();
        out.residual = out.value - Polynomial::constant(out.value.variables(), out.value.constant_term());
    }
    return out;
}

bool is_primitive(const ParametrizationProblem& problem, const std::vector<Polynomial>& candidates) {
    if (candidates.size() != problem.relation.arity()) {
        throw InvalidArgument("need one candidate per relation variable");
    }
    std::vector<Polynomial> terms;
    for (const auto& [e, c] : problem.relation.terms()) {
        Polynomial t = substitute(Polynomial::monomial(problem.relation.variables(), e, c), candidates);
        if (!t.is_zero()) terms.push_back(std::move(t));
    }
    if (terms.empty()) return true;
    if (problem.constraint == ConstraintKind::UnitTarget) {
        Polynomial total(terms.front().variables());
        for (const auto& t : terms) total += t;
        if (!total.is_zero()) terms.push_back(-total);
    }
    const std::size_t n = terms.size();
    if (n > 20) throw Unsupported("too many terms for the subset check");
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        Polynomial s(terms.front().variables());
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) s += terms[i];
        }
        if (!s.is_zero()) continue;
        Polynomial g(s.variables());
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) g = gcd_univariate(g, terms[i]);
        }
        if (!g.is_constant()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Shape extraction

namespace {

struct TermShape {
    std::vector<std::size_t> vars;  // variables with positive exponent
    ExponentVector exps;
};

std::vector<TermShape> shapes_of(const Polynomial& p) {
    std::vector<TermShape> out;
    for (const auto& [e, c] : p.terms()) {
        TermShape t{{}, e};
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] > 0) t.vars.push_back(v);
        }
        out.push_back(std::move(t));
    }
    return out;
}

ObstructionVerdict unit_target_shape(const std::vector<TermShape>& terms) {
    if (terms.size() == 2) {
        const auto& s = terms[0];
        const auto& t = terms[1];
        if (s.vars.size() == 1 && t.vars.size() == 1 && s.vars[0] != t.vars[0]) {
            return obstruction_check(MiniMasonParams{s.exps[s.vars[0]], t.exps[t.vars[0]]});
        }
        for (int flip = 0; flip < 2; ++flip) {
            const auto& two = flip ? t : s;
            const auto& one = flip ? s : t;
            if (two.vars.size() == 2 && one.vars.size() == 1 && one.vars[0] != two.vars[0] &&
                one.vars[0] != two.vars[1]) {
                return obstruction_check(TwistedMasonParams{two.exps[two.vars[0]], two.exps[two.vars[1]],
                                                            one.exps[one.vars[0]]});
            }
        }
    }
    // u^a + v^b Q(v) with Q(0) != 0.
    for (const auto& t : terms) {
        if (t.vars.size() != 1) throw Unsupported("no supported unit-target shape matches the relation");
    }
    std::map<std::size_t, std::vector<std::uint32_t>> by_var;
    for (const auto& t : terms) by_var[t.vars[0]].push_back(t.exps[t.vars[0]]);
    if (by_var.size() == 2) {
        auto it = by_var.begin();
        auto u = it++;
        auto v = it;
        if (u->second.size() != 1) std::swap(u, v);
        if (u->second.size() == 1) {
            std::int64_t a = u->second[0];
            auto [lo, hi] = std::minmax_element(v->second.begin(), v->second.end());
            std::int64_t b = *lo;
            std::int64_t e = *hi - *lo;
            if (v->second.size() == 1) return obstruction_check(MiniMasonParams{a, b});
            return obstruction_check(ExtendedMiniMasonParams{a, b, e});
        }
    }
    throw Unsupported("no supported unit-target shape matches the relation");
}

ObstructionVerdict homogeneous_shape(const std::vector<TermShape>& terms, std::size_t arity) {
    std::vector<bool> seen(arity, false);
    for (const auto& t : terms) {
        for (auto v : t.vars) {
            if (seen[v]) throw Unsupported("variables repeat across terms; no supported shape matches");
            seen[v] = true;
        }
    }
    std::size_t pure = 0;
    const TermShape* mixed = nullptr;
    for (const auto& t : terms) {
        if (t.vars.size() == 1) {
            ++pure;
        } else if (t.vars.size() == 2 && !mixed) {
            mixed = &t;
        } else {
            throw Unsupported("no supported homogeneous shape matches the relation");
        }
    }
    if (!mixed && pure >= 3) {
        Ex1Params p;
        for (const auto& t : terms) p.ds.push_back(t.exps[t.vars[0]]);
        return obstruction_check(p);
    }
    if (mixed && terms.size() == 3) {
        std::vector<std::int64_t> cd;
        for (const auto& t : terms) {
            if (&t != mixed) cd.push_back(t.exps[t.vars[0]]);
        }
        return obstruction_check(
            DoubleMasonParams{mixed->exps[mixed->vars[0]], mixed->exps[mixed->vars[1]], cd[0], cd[1]});
    }
    throw Unsupported("no supported homogeneous shape matches the relation");
}

}  // namespace

ObstructionVerdict parametrization_obstructed(const ParametrizationProblem& problem) {
    const Polynomial& f = problem.relation;
    if (f.is_constant()) throw Unsupported("constant relation");
    if (!f.constant_term().is_zero()) {
        throw Unsupported("relation has a constant term; move it into the constraint");
    }
    if (f.used_variables().size() != f.arity()) {
        throw Unsupported("every relation variable must occur in the relation");
    }
    auto terms = shapes_of(f);
    if (problem.constraint == ConstraintKind::UnitTarget) {
        ObstructionVerdict v = unit_target_shape(terms);
        if (v.status == ObstructionStatus::Obstructed && v.rule == "Lemma MiniMason c)" &&
            !problem.nonzero_components) {
            v.status = ObstructionStatus::HypothesisNotMet;
            v.detail += "; a zero component in the product term leaves the remaining factors unconstrained";
        }
        return v;
    }
    ObstructionVerdict v = homogeneous_shape(terms, f.arity());
    if (v.status == ObstructionStatus::Obstructed && !problem.primitive_only) {
        v.status = ObstructionStatus::HypothesisNotMet;
        v.detail += "; weighted-homogeneous solutions f_i = c_i S^(k w_i) always exist, the certificate "
                    "covers primitive parametrizations only";
    }
    return v;
}

// ---------------------------------------------------------------------------
// Bounded search

namespace {

struct FastOverflow {};

struct GaussInt {
    std::int64_t re = 0;
    std::int64_t im = 0;
};

inline std::int64_t cadd(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw FastOverflow{};
    return r;
}
inline std::int64_t cmul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw FastOverflow{};
    return r;
}

struct FastArith {
    using C = GaussInt;
    static C from(const GaussianRational& q) {
        if (!q.is_gaussian_integer() || !q.real().get_num().fits_slong_p() ||
            !q.imag().get_num().fits_slong_p()) {
            throw FastOverflow{};
        }
        return {q.real().get_num().get_si(), q.imag().get_num().get_si()};
    }
    static C from_small(int re, int im) { return {re, im}; }
    static GaussianRational to_exact(const C& c) {
        return GaussianRational(mpq_class(static_cast<long>(c.re)), mpq_class(static_cast<long>(c.im)));
    }
    static bool is_zero(const C& c) { return c.re == 0 && c.im == 0; }
    static void add_to(C& a, const C& b) {
        a.re = cadd(a.re, b.re);
        a.im = cadd(a.im, b.im);
    }
    static C mul(const C& a, const C& b) {
        return {cadd(cmul(a.re, b.re), -cmul(a.im, b.im)), cadd(cmul(a.re, b.im), cmul(a.im, b.re))};
    }
    static C neg(const C& a) { return {cmul(a.re, -1), cmul(a.im, -1)}; }
    static bool eq(const C& a, const C& b) { return a.re == b.re && a.im == b.im; }
    static std::size_t hash(const C& c) {
        return std::hash<std::int64_t>()(c.re) * 1000003u ^ std::hash<std::int64_t>()(c.im);
    }
};

struct ExactArith {
    using C = GaussianRational;
    static C from(const GaussianRational& q) { return q; }
    static C from_small(int re, int im) { return GaussianRational(mpq_class(re), mpq_class(im)); }
    static GaussianRational to_exact(const C& c) { return c; }
    static bool is_zero(const C& c) { return c.is_zero(); }
    static void add_to(C& a, const C& b) { a += b; }
    static C mul(const C& a, const C& b) { return a * b; }
    static C neg(const C& a) { return -a; }
    static bool eq(const C& a, const C& b) { return a == b; }
    static std::size_t hash(const C& c) { return std::hash<std::string>()(c.to_string()); }
};

// Dense univariate polynomial, index = degree, no trailing zeros.
template <class A>
using Dense = std::vector<typename A::C>;

template <class A>
void trim(Dense<A>& p) {
    while (!p.empty() && A::is_zero(p.back())) p.pop_back();
}

template <class A>
void add_into(Dense<A>& acc, const Dense<A>& p) {
    if (acc.size() < p.size()) acc.resize(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) A::add_to(acc[k], p[k]);
    trim<A>(acc);
}

template <class A>
Dense<A> mul(const Dense<A>& p, const Dense<A>& q) {
    if (p.empty() || q.empty()) return {};
    Dense<A> r(p.size() + q.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (A::is_zero(p[i])) continue;
        for (std::size_t j = 0; j < q.size(); ++j) A::add_to(r[i + j], A::mul(p[i], q[j]));
    }
    trim<A>(r);
    return r;
}

template <class A>
Dense<A> negate(const Dense<A>& p) {
    Dense<A> r;
    r.reserve(p.size());
    for (const auto& c : p) r.push_back(A::neg(c));
    return r;
}

template <class A>
bool dense_eq(const Dense<A>& p, const Dense<A>& q) {
    if (p.size() != q.size()) return false;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (!A::eq(p[k], q[k])) return false;
    }
    return true;
}

template <class A>
std::size_t dense_hash(const Dense<A>& p) {
    std::size_t h = p.size();
    for (const auto& c : p) h = h * 0x9e3779b97f4a7c15ull + A::hash(c);
    return h;
}

template <class A>
Dense<A> nonconstant_part(Dense<A> p) {
    if (!p.empty()) p[0] = typename A::C{};
    trim<A>(p);
    return p;
}

template <class A>
struct Term {
    typename A::C coeff;
    ExponentVector exps;
};

struct Window {
    std::vector<std::pair<int, int>> values;  // values[0] is zero

    Window(int w, bool real_only) {
        for (int re = -w; re <= w; ++re) {
            for (int im = real_only ? 0 : -w; im <= (real_only ? 0 : w); ++im) values.emplace_back(re, im);
        }
        auto key = [](const std::pair<int, int>& v) {
            return std::make_tuple(v.first * v.first + v.second * v.second, -v.first, -v.second);
        };
        std::sort(values.begin(), values.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    }
    std::uint64_t size() const { return values.size(); }
};

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
    return r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
    return r;
}

// Candidate index range for one variable: [first, count).
struct VarRange {
    std::uint64_t first = 0;
    std::uint64_t count = 0;
    std::uint32_t bound = 0;
};

struct Plan {
    std::vector<VarRange> ranges;
    std::vector<std::vector<std::size_t>> groups;
    // Split strategy: variables on each side; empty side_a means exhaustive.
    std::vector<std::size_t> side_a;
    std::vector<std::size_t> side_b;
    std::uint64_t cost = 0;
    bool split = false;
};

std::uint64_t side_cost(const Plan& plan, const std::vector<std::size_t>& vars) {
    std::uint64_t c = 1;
    for (auto v : vars) c = sat_mul(c, plan.ranges[v].count - plan.ranges[v].first);
    return c;
}

Plan make_plan(const ParametrizationProblem& problem, const Window& window) {
    const Polynomial& f = problem.relation;
    const std::size_t n = f.arity();
    Plan plan;
    for (std::size_t v = 0; v < n; ++v) {
        VarRange r;
        r.bound = problem.degree_bounds[v];
        r.count = 1;
        for (std::uint32_t k = 0; k <= r.bound; ++k) r.count = sat_mul(r.count, window.size());
        r.first = problem.nonzero_components ? 1 : 0;
        plan.ranges.push_back(r);
    }
    // Variables sharing a term must be enumerated together.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& [e, c] : f.terms()) {
        std::optional<std::size_t> first;
        for (std::size_t v = 0; v < n; ++v) {
            if (e[v] == 0) continue;
            if (!first) {
                first = v;
            } else {
                parent[find(v)] = find(*first);
            }
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t v = 0; v < n; ++v) by_root[find(v)].push_back(v);
    for (auto& [root, vars] : by_root) plan.groups.push_back(vars);

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    plan.side_b = all;
    plan.cost = side_cost(plan, all);

    const std::size_t g = plan.groups.size();
    if (g >= 2 && g <= 20) {
        for (std::uint32_t mask = 1; mask + 1 < (1u << g); ++mask) {
            std::vector<std::size_t> a;
            std::vector<std::size_t> b;
            for (std::size_t k = 0; k < g; ++k) {
                auto& side = (mask & (1u << k)) ? a : b;
                side.insert(side.end(), plan.groups[k].begin(), plan.groups[k].end());
            }
            std::uint64_t ca = side_cost(plan, a);
            std::uint64_t cb = side_cost(plan, b);
            if (ca > cb) {
                std::swap(a, b);
                std::swap(ca, cb);
            }
            std::uint64_t cost = sat_add(ca, cb);
            if (cost < plan.cost) {
                plan.cost = cost;
                plan.split = true;
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                plan.side_a = std::move(a);
                plan.side_b = std::move(b);
            }
        }
    }
    return plan;
}

template <class A>
class Searcher {
public:
    Searcher(const ParametrizationProblem& problem, const SearchOptions& options, const Plan& plan,
             const Window& window)
        : problem_(problem), options_(options), plan_(plan), window_(window),
          param_(std::vector<std::string>{options.parameter}) {
        const Polynomial& f = problem.relation;
        GaussianRational scale(1);
        if constexpr (std::is_same_v<A, FastArith>) {
            mpz_class l = 1;
            for (const auto& [e, c] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator_lcm().get_mpz_t());
            scale = GaussianRational(mpq_class(l));
        }
        for (const auto& [e, c] : f.terms()) {
            auto coeff = A::from(c * scale);
            bool constant = std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
            if (constant) {
                constant_ = Dense<A>{coeff};
            } else {
                terms_.push_back({coeff, e});
            }
        }
        all_zero_bounds_ = std::all_of(problem.degree_bounds.begin(), problem.degree_bounds.end(),
                                       [](std::uint32_t b) { return b == 0; });
    }

    SearchResult run() {
        SearchResult r;
        r.cost = plan_.cost;
        r.strategy = plan_.split ? "split" : "exhaustive";
        std::optional<std::vector<std::uint64_t>> hit = plan_.split ? run_split() : run_exhaustive();
        if (hit) {
            r.found = true;
            r.candidates = to_polys(*hit);
        }
        return r;
    }

private:
    // Coefficients of candidate `index` for a variable with the given bound.
    Dense<A> candidate(std::uint64_t index, std::uint32_t bound) const {
        Dense<A> p(bound + 1);
        for (std::uint32_t k = 0; k <= bound; ++k) {
            auto [re, im] = window_.values[index % window_.size()];
            p[k] = A::from_small(re, im);
            index /= window_.size();
        }
        trim<A>(p);
        return p;
    }

    Polynomial to_poly(std::uint64_t index, std::uint32_t bound) const {
        Polynomial p(param_);
        for (std::uint32_t k = 0; k <= bound; ++k) {
            auto [re, im] = window_.values[index % window_.size()];
            p += Polynomial::monomial(param_, {k}, GaussianRational(mpq_class(re), mpq_class(im)));
            index /= window_.size();
        }
        return p;
    }

    std::vector<Polynomial> to_polys(const std::vector<std::uint64_t>& choice) const {
        std::vector<Polynomial> out;
        for (std::size_t v = 0; v < choice.size(); ++v) out.push_back(to_poly(choice[v], plan_.ranges[v].bound));
        return out;
    }

    // Terms whose variables all lie in `vars`.
    std::vector<const Term<A>*> terms_on(const std::vector<std::size_t>& vars) const {
        std::vector<bool> in(problem_.relation.arity(), false);
        for (auto v : vars) in[v] = true;
        std::vector<const Term<A>*> out;
        for (const auto& t : terms_) {
            bool inside = true;
            for (std::size_t v = 0; v < t.exps.size(); ++v) inside = inside && (t.exps[v] == 0 || in[v]);
            if (inside) out.push_back(&t);
        }
        return out;
    }

    // Enumerate the side's candidate tuples in a fixed order; `visit(choice, value)` returns
    // true to stop. choice is indexed by relation variable; entries outside the side are kept.
    template <class Visit>
    bool enumerate(const std::vector<std::size_t>& vars, std::vector<std::uint64_t>& choice, Visit&& visit) const {
        auto terms = terms_on(vars);
        std::vector<std::uint32_t> max_exp(problem_.relation.arity(), 0);
        for (const auto* t : terms) {
            for (std::size_t v = 0; v < t->exps.size(); ++v) max_exp[v] = std::max(max_exp[v], t->exps[v]);
        }
        // powers[v][k] = f_v^k
        std::vector<std::vector<Dense<A>>> powers(problem_.relation.arity());
        auto refresh = [&](std::size_t v) {
            auto& pw = powers[v];
            pw.assign(1, Dense<A>{A::from_small(1, 0)});
            Dense<A> base = candidate(choice[v], plan_.ranges[v].bound);
            for (std::uint32_t k = 1; k <= max_exp[v]; ++k) pw.push_back(mul<A>(pw.back(), base));
        };
        for (auto v : vars) {
            if (plan_.ranges[v].first >= plan_.ranges[v].count) return false;
            choice[v] = plan_.ranges[v].first;
            refresh(v);
        }
        for (;;) {
            Dense<A> value;
            for (const auto* t : terms) {
                Dense<A> prod{t->coeff};
                for (auto v : vars) {
                    if (t->exps[v] > 0) prod = mul<A>(prod, powers[v][t->exps[v]]);
                }
                add_into<A>(value, prod);
            }
            if (visit(choice, value)) return true;
            std::size_t pos = 0;
            for (; pos < vars.size(); ++pos) {
                std::size_t v = vars[pos];
                if (++choice[v] < plan_.ranges[v].count) {
                    refresh(v);
                    break;
                }
                choice[v] = plan_.ranges[v].first;
                refresh(v);
            }
            if (pos == vars.size()) return false;
        }
    }

    bool satisfies(const Dense<A>& total) const {
        if (problem_.constraint == ConstraintKind::HomogeneousZero) return total.empty();
        return total.size() == 1;
    }

    bool acceptable(const std::vector<std::uint64_t>& choice) const {
        if (!all_zero_bounds_) {
            bool nonconstant = false;
            for (std::size_t v = 0; v < choice.size(); ++v) {
                nonconstant = nonconstant || candidate(choice[v], plan_.ranges[v].bound).size() > 1;
            }
            if (!nonconstant) return false;
        }
        auto polys = to_polys(choice);
        if (problem_.primitive_only && !is_primitive(problem_, polys)) return false;
        if (!verify_parametrization(problem_, polys).holds) {
            throw InvariantViolation("search match failed exact verification");
        }
        return true;
    }

    std::optional<std::vector<std::uint64_t>> run_exhaustive() const {
        std::vector<std::uint64_t> choice(problem_.relation.arity(), 0);
        std::optional<std::vector<std::uint64_t>> hit;
        enumerate(plan_.side_b, choice, [&](const std::vector<std::uint64_t>& ch, const Dense<A>& value) {
            Dense<A> total = value;
            add_into<A>(total, constant_);
            if (satisfies(total) && acceptable(ch)) {
                hit = ch;
                return true;
            }
            return false;
        });
        return hit;
    }

    Dense<A> key_of(const Dense<A>& value) const {
        if (problem_.constraint == ConstraintKind::UnitTarget) return nonconstant_part<A>(value);
        Dense<A> k = value;
        add_into<A>(k, constant_);
        return k;
    }

    std::optional<std::vector<std::uint64_t>> run_split() const {
        const std::size_t n = problem_.relation.arity();
        // Side A: store (hash of key, packed choice) sorted by hash.
        std::vector<std::pair<std::size_t, std::vector<std::uint64_t>>> table;
        std::vector<std::uint64_t> choice(n, 0);
        enumerate(plan_.side_a, choice, [&](const std::vector<std::uint64_t>& ch, const Dense<A>& value) {
            std::vector<std::uint64_t> packed;
            packed.reserve(plan_.side_a.size());
            for (auto v : plan_.side_a) packed.push_back(ch[v]);
            table.emplace_back(dense_hash<A>(key_of(value)), std::move(packed));
            return false;
        });
        std::stable_sort(table.begin(), table.end(),
                         [](const auto& x, const auto& y) { return x.first < y.first; });

        auto terms_a = terms_on(plan_.side_a);
        auto value_a = [&](const std::vector<std::uint64_t>& packed) {
            Dense<A> value;
            for (const auto* t : terms_a) {
                Dense<A> prod{t->coeff};
                for (std::size_t k = 0; k < plan_.side_a.size(); ++k) {
                    std::size_t v = plan_.side_a[k];
                    if (t->exps[v] == 0) continue;
                    Dense<A> base = candidate(packed[k], plan_.ranges[v].bound);
                    for (std::uint32_t e = 0; e < t->exps[v]; ++e) prod = mul<A>(prod, base);
                }
                add_into<A>(value, prod);
            }
            return value;
        };

        std::optional<std::vector<std::uint64_t>> hit;
        std::fill(choice.begin(), choice.end(), 0);
        enumerate(plan_.side_b, choice, [&](const std::vector<std::uint64_t>& ch, const Dense<A>& value_b) {
            Dense<A> want = problem_.constraint == ConstraintKind::UnitTarget ? negate<A>(nonconstant_part<A>(value_b))
                                                                             : negate<A>(value_b);
            std::size_t h = dense_hash<A>(want);
            auto lo = std::lower_bound(table.begin(), table.end(), h,
                                       [](const auto& entry, std::size_t x) { return entry.first < x; });
            for (auto it = lo; it != table.end() && it->first == h; ++it) {
                Dense<A> va = value_a(it->second);
                if (!dense_eq<A>(key_of(va), want)) continue;
                Dense<A> total = va;
                add_into<A>(total, value_b);
                add_into<A>(total, constant_);
                if (!satisfies(total)) continue;
                std::vector<std::uint64_t> full = ch;
                for (std::size_t k = 0; k < plan_.side_a.size(); ++k) full[plan_.side_a[k]] = it->second[k];
                if (acceptable(full)) {
                    hit = std::move(full);
                    return true;
                }
            }
            return false;
        });
        return hit;
    }

    const ParametrizationProblem& problem_;
    const SearchOptions& options_;
    const Plan& plan_;
    const Window& window_;
    Variables param_;
    std::vector<Term<A>> terms_;
    Dense<A> constant_;
    bool all_zero_bounds_ = false;
};

}  // namespace

SearchResult bounded_search(const ParametrizationProblem& problem, const SearchOptions& options) {
    if (problem.degree_bounds.size() != problem.relation.arity()) {
        throw InvalidArgument("need one degree bound per relation variable");
    }
    if (options.window < 0) throw InvalidArgument("coefficient window must be nonnegative");
    if (options.parameter == "i" || options.parameter.empty()) {
        throw InvalidArgument("invalid parameter name '" + options.parameter + "'");
    }
    Window window(options.window, options.real_only);
    Plan plan = make_plan(problem, window);
    if (plan.cost > options.ceiling) {
        throw SearchTooLarge("search needs " +
                             (plan.cost == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                                     : std::to_string(plan.cost)) +
                             " candidates, ceiling is " + std::to_string(options.ceiling));
    }
    try {
        return Searcher<FastArith>(problem, options, plan, window).run();
    } catch (const FastOverflow&) {
        return Searcher<ExactArith>(problem, options, plan, window).run();
    }
}

}  // namespace rigidity

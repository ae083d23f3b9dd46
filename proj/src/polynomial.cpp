#include "rigidity/polynomial.hpp"

#include "rigidity/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace rigidity {

// ---------------------------------------------------------------------------
// Variables

Variables::Variables(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
    for (std::size_t i = 0; i < names_->size(); ++i) {
        for (std::size_t j = i + 1; j < names_->size(); ++j) {
            if ((*names_)[i] == (*names_)[j]) {
                throw InvalidArgument("duplicate variable name '" + (*names_)[i] + "'");
            }
        }
    }
}

std::optional<std::size_t> Variables::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i) {
        if ((*names_)[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t Variables::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw VariableMismatch("unknown variable '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Ordering and checked arithmetic

namespace {

std::uint64_t total(const ExponentVector& e) {
    std::uint64_t s = 0;
    for (auto x : e) s += x;
    return s;
}

std::uint32_t add_exp(std::uint32_t a, std::uint32_t b) {
    std::uint32_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("degree overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("degree overflow");
    return r;
}

ExponentVector add_exps(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = add_exp(a[i], b[i]);
    return r;
}

bool exps_divide(const ExponentVector& d, const ExponentVector& e) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] > e[i]) return false;
    }
    return true;
}

ExponentVector sub_exps(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

void accumulate(Polynomial::TermMap& terms, const ExponentVector& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

}  // namespace

bool GrlexGreater::operator()(const ExponentVector& a, const ExponentVector& b) const {
    auto ta = total(a);
    auto tb = total(b);
    if (ta != tb) return ta > tb;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(Variables vars, TermMap terms) : vars_(std::move(vars)) {
    for (auto& [e, c] : terms) {
        if (e.size() != vars_.size()) {
            throw InvalidArgument("exponent vector length does not match variable count");
        }
        if (!c.is_zero()) terms_.emplace(e, std::move(c));
    }
}

Polynomial Polynomial::constant(Variables vars, const GaussianRational& c) {
    Polynomial p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(ExponentVector(p.arity(), 0), c);
    return p;
}

Polynomial Polynomial::variable(Variables vars, std::string_view name) {
    auto idx = vars.index_of(name);
    ExponentVector e(vars.size(), 0);
    e[idx] = 1;
    return monomial(std::move(vars), std::move(e), GaussianRational(1));
}

Polynomial Polynomial::monomial(Variables vars, ExponentVector exps, const GaussianRational& c) {
    if (exps.size() != vars.size()) {
        throw InvalidArgument("exponent vector length does not match variable count");
    }
    Polynomial p(std::move(vars));
    if (!c.is_zero()) p.terms_.emplace(std::move(exps), c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

GaussianRational Polynomial::constant_term() const {
    return coefficient(ExponentVector(arity(), 0));
}

GaussianRational Polynomial::coefficient(const ExponentVector& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? GaussianRational{} : it->second;
}

const Polynomial::TermMap::value_type& Polynomial::leading_term() const {
    if (terms_.empty()) throw InvalidArgument("leading term of the zero polynomial");
    return *terms_.begin();
}

Degree Polynomial::total_degree() const {
    if (terms_.empty()) return std::nullopt;
    return static_cast<std::int64_t>(total(terms_.begin()->first));
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return d;
}

std::uint32_t Polynomial::min_degree_in(std::size_t var) const {
    if (terms_.empty()) return 0;
    std::uint32_t d = terms_.begin()->first.at(var);
    for (const auto& [e, c] : terms_) d = std::min(d, e[var]);
    return d;
}

bool Polynomial::uses_variable(std::size_t var) const {
    for (const auto& [e, c] : terms_) {
        if (e.at(var) > 0) return true;
    }
    return false;
}

std::vector<std::size_t> Polynomial::used_variables() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < arity(); ++v) {
        if (uses_variable(v)) out.push_back(v);
    }
    return out;
}

Polynomial Polynomial::with_variables(const Variables& target) const {
    if (target == vars_) return *this;
    std::vector<std::optional<std::size_t>> map(arity());
    for (std::size_t v = 0; v < arity(); ++v) map[v] = target.find(vars_[v]);
    Polynomial out(target);
    for (const auto& [e, c] : terms_) {
        ExponentVector f(target.size(), 0);
        for (std::size_t v = 0; v < arity(); ++v) {
            if (e[v] == 0) continue;
            if (!map[v]) {
                throw VariableMismatch("variable '" + vars_[v] + "' missing from target list");
            }
            f[*map[v]] = e[v];
        }
        out.terms_.emplace(std::move(f), c);
    }
    return out;
}

void Polynomial::require_same_ring(const Polynomial& o, std::string_view op) const {
    if (vars_ != o.vars_) {
        throw VariableMismatch(std::string(op) + ": operands have different variable lists");
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_same_ring(o, "add");
    for (const auto& [e, c] : o.terms_) accumulate(terms_, e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    require_same_ring(o, "subtract");
    for (const auto& [e, c] : o.terms_) accumulate(terms_, e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial& Polynomial::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_ring(b, "multiply");
    Polynomial r(a.vars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) accumulate(r.terms_, add_exps(ea, eb), ca * cb);
    }
    return r;
}

Polynomial Polynomial::pow(std::uint32_t n) const {
    Polynomial result = constant(vars_, GaussianRational(1));
    Polynomial base = *this;
    while (n > 0) {
        if (n & 1u) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Free operations

Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

DivisionResult divide(const Polynomial& p, const Polynomial& f) {
    p.require_same_ring(f, "divide");
    if (f.is_zero()) throw InvalidArgument("division by the zero polynomial");
    const auto& [lt_exp, lt_coeff] = f.leading_term();
    GaussianRational lt_inv = lt_coeff.inverse();

    Polynomial::TermMap work = p.terms();
    Polynomial::TermMap quotient;
    Polynomial::TermMap remainder;
    while (!work.empty()) {
        auto head = work.begin();
        if (!exps_divide(lt_exp, head->first)) {
            remainder.emplace(head->first, head->second);
            work.erase(head);
            continue;
        }
        ExponentVector shift = sub_exps(head->first, lt_exp);
        GaussianRational factor = head->second * lt_inv;
        accumulate(quotient, shift, factor);
        for (const auto& [e, c] : f.terms()) accumulate(work, add_exps(shift, e), -(factor * c));
    }
    return {Polynomial(p.variables(), std::move(quotient)),
            Polynomial(p.variables(), std::move(remainder))};
}

Polynomial divide_exact(const Polynomial& p, const Polynomial& f) {
    auto [q, r] = divide(p, f);
    if (!r.is_zero()) throw NotDivisible("polynomial is not divisible by the given divisor");
    return q;
}

bool divides(const Polynomial& f, const Polynomial& p) { return divide(p, f).remainder.is_zero(); }

Polynomial diff(const Polynomial& p, std::string_view var) {
    return diff(p, p.variables().index_of(var));
}

Polynomial diff(const Polynomial& p, std::size_t var) {
    if (var >= p.arity()) throw VariableMismatch("differentiation variable out of range");
    Polynomial::TermMap out;
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        ExponentVector f = e;
        --f[var];
        accumulate(out, f, c * GaussianRational(static_cast<long>(e[var])));
    }
    return Polynomial(p.variables(), std::move(out));
}

Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images) {
    if (images.size() != p.arity()) {
        throw InvalidArgument("substitution needs one image per variable");
    }
    std::optional<Variables> target;
    for (std::size_t v = 0; v < images.size(); ++v) {
        if (!p.uses_variable(v)) continue;
        if (!target) {
            target = images[v].variables();
        } else if (*target != images[v].variables()) {
            throw VariableMismatch("substitution images have different variable lists");
        }
    }
    if (!target) {
        // Constant p: any image list fixes the target ring.
        target = images.empty() ? Variables{} : images.front().variables();
    }

    // Powers are cached per variable; exponents are visited in increasing order.
    std::vector<std::vector<Polynomial>> powers(p.arity());
    auto power = [&](std::size_t v, std::uint32_t k) -> const Polynomial& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(Polynomial::constant(*target, GaussianRational(1)));
        while (cache.size() <= k) cache.push_back(cache.back() * images[v]);
        return cache[k];
    };

    Polynomial result(*target);
    for (const auto& [e, c] : p.terms()) {
        Polynomial term = Polynomial::constant(*target, c);
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] > 0) term = term * power(v, e[v]);
        }
        result += term;
    }
    return result;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images) {
    std::vector<Polynomial> positional;
    positional.reserve(p.arity());
    std::optional<Variables> target;
    for (const auto& [name, img] : images) {
        if (!p.variables().find(name)) {
            throw VariableMismatch("image given for unknown variable '" + name + "'");
        }
        if (!target) target = img.variables();
    }
    for (std::size_t v = 0; v < p.arity(); ++v) {
        auto it = images.find(p.variables()[v]);
        if (it != images.end()) {
            positional.push_back(it->second);
        } else if (p.uses_variable(v)) {
            throw InvalidArgument("missing image for variable '" + p.variables()[v] + "'");
        } else {
            positional.push_back(Polynomial(target ? *target : Variables{}));
        }
    }
    return substitute(p, positional);
}

std::int64_t weighted_degree(const ExponentVector& e, const WeightVector& w) {
    std::int64_t d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        d = checked_add(d, checked_mul(static_cast<std::int64_t>(e[i]), w[i]));
    }
    return d;
}

namespace {

void require_weights(const Polynomial& p, const WeightVector& w) {
    if (w.size() != p.arity()) {
        throw InvalidArgument("weight vector length does not match variable count");
    }
}

}  // namespace

Degree weighted_degree(const Polynomial& p, const WeightVector& w) {
    require_weights(p, w);
    Degree best;
    for (const auto& [e, c] : p.terms()) {
        auto d = weighted_degree(e, w);
        if (!best || d > *best) best = d;
    }
    return best;
}

Polynomial top_part(const Polynomial& p, const WeightVector& w) {
    if (p.is_zero()) throw InvalidArgument("top part of the zero polynomial");
    auto d = *weighted_degree(p, w);
    Polynomial::TermMap out;
    for (const auto& [e, c] : p.terms()) {
        if (weighted_degree(e, w) == d) out.emplace(e, c);
    }
    return Polynomial(p.variables(), std::move(out));
}

bool is_homogeneous(const Polynomial& p, const WeightVector& w) {
    require_weights(p, w);
    if (p.is_zero()) return true;
    auto d = weighted_degree(p.terms().begin()->first, w);
    for (const auto& [e, c] : p.terms()) {
        if (weighted_degree(e, w) != d) return false;
    }
    return true;
}

std::optional<std::size_t> univariate_variable(const Polynomial& p) {
    auto used = p.used_variables();
    if (used.size() > 1) throw InvalidArgument("polynomial is not univariate");
    if (used.empty()) return std::nullopt;
    return used.front();
}

Polynomial make_monic(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p * p.leading_term().second.inverse();
}

Polynomial gcd_univariate(const Polynomial& p, const Polynomial& q) {
    p.require_same_ring(q, "gcd");
    auto vp = univariate_variable(p);
    auto vq = univariate_variable(q);
    if (vp && vq && *vp != *vq) {
        throw InvalidArgument("gcd operands are univariate in different variables");
    }
    // Under grlex the leading term of a univariate polynomial is its top-degree term,
    // so `divide` is ordinary long division here.
    // Monic remainders keep the rational coefficients from swelling.
    Polynomial a = make_monic(p);
    Polynomial b = make_monic(q);
    while (!b.is_zero()) {
        Polynomial r = make_monic(divide(a, b).remainder);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

}  // namespace rigidity

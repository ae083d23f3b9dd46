#include "rigidity/mason.hpp"

#include "rigidity/errors.hpp"

#include <numeric>
#include <sstream>

namespace rigidity {

std::int64_t distinct_root_count(const Polynomial& h) {
    if (h.is_zero()) throw InvalidArgument("root count of the zero polynomial");
    auto v = univariate_variable(h);
    if (!v) return 0;
    Polynomial g = gcd_univariate(h, diff(h, *v));
    return static_cast<std::int64_t>(h.degree_in(*v)) - static_cast<std::int64_t>(g.degree_in(*v));
}

namespace {

Polynomial squarefree_part(const Polynomial& h, std::size_t var) {
    return divide(h, gcd_univariate(h, diff(h, var))).quotient;
}

// N(f_1 ... f_n) as the degree of the lcm of the squarefree parts, which avoids the
// gcd of the full product with its derivative.
std::int64_t product_root_count(const std::vector<Polynomial>& fs, std::optional<std::size_t> var) {
    if (!var) return 0;
    Polynomial rad = Polynomial::constant(fs[0].variables(), 1);
    for (const auto& f : fs) {
        if (f.is_constant()) continue;
        Polynomial s = squarefree_part(f, *var);
        rad = rad * divide(s, gcd_univariate(rad, s)).quotient;
    }
    return static_cast<std::int64_t>(rad.degree_in(*var));
}

std::string subset_text(unsigned mask, std::size_t n) {
    std::string out = "{";
    for (std::size_t i = 0; i < n; ++i) {
        if (!(mask & (1u << i))) continue;
        if (out.size() > 1) out += ",";
        out += std::to_string(i + 1);
    }
    return out + "}";
}

}  // namespace

MasonReport mason_check(const std::vector<Polynomial>& fs) {
    const std::size_t n = fs.size();
    if (n < 3 || n > kMasonMaxTerms) {
        throw InvalidArgument("Mason check needs between 3 and " + std::to_string(kMasonMaxTerms) +
                              " polynomials");
    }
    std::optional<std::size_t> var;
    Polynomial sum(fs[0].variables());
    for (const auto& f : fs) {
        fs[0].require_same_ring(f, "Mason check");
        if (f.is_zero()) throw InvalidArgument("Mason check entries must be nonzero");
        if (auto v = univariate_variable(f)) {
            if (var && *var != *v) throw InvalidArgument("entries are univariate in different variables");
            var = v;
        }
        sum += f;
    }
    if (!sum.is_zero()) throw InvalidArgument("entries do not sum to zero");

    MasonReport r;
    r.hypotheses_ok = true;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) < 2) continue;
        Polynomial s(sum.variables());
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) s += fs[i];
        }
        if (!s.is_zero()) continue;
        Polynomial g(sum.variables());
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) g = gcd_univariate(g, fs[i]);
        }
        if (!g.is_constant()) {
            r.hypotheses_ok = false;
            std::ostringstream os;
            os << "subset " << subset_text(mask, n) << " sums to zero but has a nonconstant gcd";
            r.violation = os.str();
            break;
        }
    }

    bool all_constant = true;
    mpz_class sum_n = 0;
    for (const auto& f : fs) {
        auto d = *f.total_degree();
        r.max_degree = std::max(r.max_degree, d);
        all_constant = all_constant && d == 0;
        sum_n += distinct_root_count(f);
    }
    mpz_class nn(static_cast<unsigned long>(n));
    r.bound_product = (nn - 1) * (nn - 2) / 2 * product_root_count(fs, var);
    r.bound_sum = (nn - 2) * sum_n;
    r.holds_product = r.max_degree < r.bound_product;
    r.holds_sum = r.max_degree < r.bound_sum;
    if (r.hypotheses_ok && !all_constant && !(r.holds_product && r.holds_sum)) {
        throw InvariantViolation("Mason inequality failed on a tuple satisfying its hypotheses");
    }
    return r;
}

std::string to_string(ObstructionStatus s) {
    switch (s) {
        case ObstructionStatus::Obstructed: return "Obstructed";
        case ObstructionStatus::NotObstructed: return "NotObstructed";
        case ObstructionStatus::HypothesisNotMet: return "HypothesisNotMet";
    }
    return "?";
}

namespace {

void require_positive(std::initializer_list<std::int64_t> xs) {
    for (auto x : xs) {
        if (x <= 0) throw InvalidArgument("exponents must be positive");
    }
}

ObstructionVerdict verdict(bool holds, std::string rule, std::string detail) {
    return {holds ? ObstructionStatus::Obstructed : ObstructionStatus::NotObstructed, std::move(rule),
            std::move(detail)};
}

std::string cmp(bool holds) { return holds ? " <= " : " > "; }

std::string sum_of_reciprocals(const std::vector<std::int64_t>& ds, mpq_class& total) {
    std::string text;
    total = 0;
    for (auto d : ds) {
        if (!text.empty()) text += " + ";
        text += "1/" + std::to_string(d);
        total += mpq_class(1, static_cast<unsigned long>(d));
    }
    return text + " = " + total.get_str();
}

ObstructionVerdict check(const MiniMasonParams& p) {
    require_positive({p.a, p.b});
    bool holds = p.a >= 2 && p.b >= 2;
    return verdict(holds, "Lemma MiniMason a)",
                   "a = " + std::to_string(p.a) + ", b = " + std::to_string(p.b) +
                       (holds ? ": a, b >= 2" : ": needs a, b >= 2"));
}

ObstructionVerdict check(const ExtendedMiniMasonParams& p) {
    require_positive({p.a, p.b});
    if (p.deg_q < 0) throw InvalidArgument("deg Q must be nonnegative");
    mpz_class lhs = mpz_class(static_cast<long>(p.deg_q)) + 1;
    mpz_class rhs = (mpz_class(static_cast<long>(p.a)) - 1) * (mpz_class(static_cast<long>(p.b)) - 1);
    bool holds = lhs <= rhs;
    return verdict(holds, "Lemma MiniMason b)",
                   "deg Q + 1 = " + lhs.get_str() + cmp(holds) + "(a-1)(b-1) = " + rhs.get_str());
}

ObstructionVerdict check(const TwistedMasonParams& p) {
    require_positive({p.a, p.b, p.c});
    bool holds = p.a >= 2 && p.b >= 2 && p.c >= 2;
    return verdict(holds, "Lemma MiniMason c)",
                   "a = " + std::to_string(p.a) + ", b = " + std::to_string(p.b) + ", c = " +
                       std::to_string(p.c) + (holds ? ": a, b, c >= 2" : ": needs a, b, c >= 2"));
}

ObstructionVerdict check(const DoubleMasonParams& p) {
    require_positive({p.a, p.b, p.c, p.d});
    mpq_class total;
    std::string text = sum_of_reciprocals({std::min(p.a, p.b), p.c, p.d}, total);
    bool holds = total <= 1;
    return verdict(holds, "Proposition doublemason", text + cmp(holds) + "1");
}

ObstructionVerdict check(const Ex1Params& p) {
    for (auto d : p.ds) require_positive({d});
    const std::int64_t n = static_cast<std::int64_t>(p.ds.size());
    ObstructionVerdict v{ObstructionStatus::HypothesisNotMet, "Lemma EX1", ""};
    if (n < 3) {
        v.detail = "needs at least 3 exponents";
        return v;
    }
    std::int64_t g = 0;
    for (auto d : p.ds) {
        if (d < 2) {
            v.detail = "needs every exponent >= 2";
            return v;
        }
        g = std::gcd(g, d);
    }
    if (g != 1) {
        v.detail = "needs gcd of the exponents = 1, got " + std::to_string(g);
        return v;
    }
    mpq_class total;
    std::string text = sum_of_reciprocals(p.ds, total);
    mpq_class limit(1, static_cast<unsigned long>(n - 2));
    bool holds = total <= limit;
    return verdict(holds, "Lemma EX1", text + cmp(holds) + limit.get_str());
}

}  // namespace

ObstructionVerdict obstruction_check(const ObstructionPattern& pattern) {
    return std::visit([](const auto& p) { return check(p); }, pattern);
}

}  // namespace rigidity

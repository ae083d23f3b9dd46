#pragma once

#include "rigidity/gaussian_rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rigidity {

/// Exponent of each ambient variable, in declared order.
using ExponentVector = std::vector<std::uint32_t>;

/// Weighted or total degree; std::nullopt stands for -infinity (the zero polynomial).
using Degree = std::optional<std::int64_t>;

/// Ordered list of variable names shared between polynomials over the same ring.
class Variables {
public:
    Variables() : names_(std::make_shared<const std::vector<std::string>>()) {}
    Variables(std::vector<std::string> names);  // NOLINT(implicit)
    Variables(std::initializer_list<std::string> names)
        : Variables(std::vector<std::string>(names)) {}

    const std::vector<std::string>& names() const noexcept { return *names_; }
    std::size_t size() const noexcept { return names_->size(); }
    const std::string& operator[](std::size_t i) const { return (*names_)[i]; }

    /// Position of a name; throws VariableMismatch when absent.
    std::size_t index_of(std::string_view name) const;
    std::optional<std::size_t> find(std::string_view name) const;

    friend bool operator==(const Variables& a, const Variables& b) {
        return a.names_ == b.names_ || *a.names_ == *b.names_;
    }
    friend bool operator!=(const Variables& a, const Variables& b) { return !(a == b); }

private:
    std::shared_ptr<const std::vector<std::string>> names_;
};

/// One integer weight per variable.
struct WeightVector {
    std::vector<std::int64_t> weights;

    WeightVector() = default;
    WeightVector(std::vector<std::int64_t> w) : weights(std::move(w)) {}  // NOLINT(implicit)
    WeightVector(std::initializer_list<std::int64_t> w) : weights(w) {}

    std::size_t size() const noexcept { return weights.size(); }
    std::int64_t operator[](std::size_t i) const { return weights[i]; }
    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// Graded lexicographic order, greatest first.
struct GrlexGreater {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

/// Sparse multivariate polynomial over Q(i).
///
/// Terms are kept in graded lexicographic order (greatest first) with the declared
/// variable order, no zero coefficient is ever stored, and the zero polynomial has no
/// terms. Values are immutable through the public interface.
class Polynomial {
public:
    using TermMap = std::map<ExponentVector, GaussianRational, GrlexGreater>;

    Polynomial() = default;
    explicit Polynomial(Variables vars) : vars_(std::move(vars)) {}
    /// Zero coefficients are dropped; exponent vectors must match the arity.
    Polynomial(Variables vars, TermMap terms);

    static Polynomial constant(Variables vars, const GaussianRational& c);
    static Polynomial variable(Variables vars, std::string_view name);
    static Polynomial monomial(Variables vars, ExponentVector exps, const GaussianRational& c);

    const Variables& variables() const noexcept { return vars_; }
    std::size_t arity() const noexcept { return vars_.size(); }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// Coefficient of the monomial 1.
    GaussianRational constant_term() const;
    GaussianRational coefficient(const ExponentVector& exps) const;

    /// Greatest term under grlex. Precondition: nonzero.
    const TermMap::value_type& leading_term() const;

    Degree total_degree() const;
    std::uint32_t degree_in(std::size_t var) const;
    /// Smallest exponent of the variable over all terms (0 for the zero polynomial).
    std::uint32_t min_degree_in(std::size_t var) const;
    bool uses_variable(std::size_t var) const;
    /// Indices of variables that occur with a positive exponent.
    std::vector<std::size_t> used_variables() const;

    /// Re-express over another variable list. Every variable used here must exist there.
    Polynomial with_variables(const Variables& target) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const GaussianRational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const GaussianRational& c) { return a *= c; }
    friend Polynomial operator*(const GaussianRational& c, Polynomial a) { return a *= c; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(std::uint32_t n) const;

    /// Throws VariableMismatch unless both operands share a variable list.
    void require_same_ring(const Polynomial& o, std::string_view op) const;

private:
    Variables vars_;
    TermMap terms_;
};

/// Exact product. Throws VariableMismatch for different variable lists.
Polynomial mul(const Polynomial& p, const Polynomial& q);

struct DivisionResult {
    Polynomial quotient;
    Polynomial remainder;
};

/// Multivariate division by a single divisor under grlex: p = quotient*f + remainder and
/// no term of the remainder is divisible by the leading term of f.
DivisionResult divide(const Polynomial& p, const Polynomial& f);

/// q with p = q*f. Throws NotDivisible when f does not divide p, InvalidArgument for f = 0.
Polynomial divide_exact(const Polynomial& p, const Polynomial& f);

/// Exact divisibility test.
bool divides(const Polynomial& f, const Polynomial& p);

/// Formal partial derivative.
Polynomial diff(const Polynomial& p, std::string_view var);
Polynomial diff(const Polynomial& p, std::size_t var);

/// Evaluate p with each variable replaced by its image. Images are keyed by variable name
/// and must share one target variable list.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images);
/// Same, with images given positionally.
Polynomial substitute(const Polynomial& p, const std::vector<Polynomial>& images);

std::int64_t weighted_degree(const ExponentVector& e, const WeightVector& w);
/// Max over terms of the weighted degree; nullopt (-infinity) exactly for p = 0.
Degree weighted_degree(const Polynomial& p, const WeightVector& w);
/// Sum of the terms attaining the weighted degree. Throws InvalidArgument for p = 0.
Polynomial top_part(const Polynomial& p, const WeightVector& w);
bool is_homogeneous(const Polynomial& p, const WeightVector& w);

/// Monic gcd of two polynomials in (at most) one common variable, via the Euclidean
/// algorithm. gcd(0, 0) = 0.
Polynomial gcd_univariate(const Polynomial& p, const Polynomial& q);

/// Index of the only variable occurring in p; nullopt for constants. Throws
/// InvalidArgument when p uses more than one variable.
std::optional<std::size_t> univariate_variable(const Polynomial& p);

/// Divide by the leading coefficient (zero stays zero).
Polynomial make_monic(const Polynomial& p);

}  // namespace rigidity

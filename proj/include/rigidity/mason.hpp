#pragma once

#include "rigidity/polynomial.hpp"

#include <string>
#include <variant>
#include <vector>

namespace rigidity {

/// N(h): distinct roots of a nonzero univariate h in the algebraic closure,
/// computed as deg h - deg gcd(h, h'). Throws InvalidArgument for zero or
/// multivariate input.
std::int64_t distinct_root_count(const Polynomial& h);

struct MasonReport {
    bool hypotheses_ok = false;
    std::string violation;
    std::int64_t max_degree = 0;
    /// (n-1)(n-2)/2 * N(f_1 ... f_n)
    mpz_class bound_product;
    /// (n-2) * sum N(f_i)
    mpz_class bound_sum;
    bool holds_product = false;
    bool holds_sum = false;
};

inline constexpr std::size_t kMasonMaxTerms = 12;

/// Check the generalized Mason inequality for f_1 + ... + f_n = 0. Every zero-sum subset
/// must have gcd 1. Throws InvalidArgument unless 3 <= n <= 12, every f_i is nonzero,
/// univariate in one shared variable, and the sum vanishes.
MasonReport mason_check(const std::vector<Polynomial>& fs);

/// f^a + g^b = const.
struct MiniMasonParams {
    std::int64_t a, b;
};
/// f^a + g^b Q(g) = const with deg Q = deg_q.
struct ExtendedMiniMasonParams {
    std::int64_t a, b, deg_q;
};
/// f^a g^b + h^c = const.
struct TwistedMasonParams {
    std::int64_t a, b, c;
};
/// f^a g^b + h^c + k^d = 0.
struct DoubleMasonParams {
    std::int64_t a, b, c, d;
};
/// f_1^d_1 + ... + f_n^d_n = 0.
struct Ex1Params {
    std::vector<std::int64_t> ds;
};

using ObstructionPattern = std::variant<MiniMasonParams, ExtendedMiniMasonParams, TwistedMasonParams,
                                        DoubleMasonParams, Ex1Params>;

enum class ObstructionStatus { Obstructed, NotObstructed, HypothesisNotMet };

struct ObstructionVerdict {
    ObstructionStatus status = ObstructionStatus::NotObstructed;
    std::string rule;
    /// The inequality with the parameters substituted.
    std::string detail;
};

/// Obstructed exactly when the closed-form inequality holds, so no nonconstant
/// parametrization exists. NotObstructed says nothing about existence.
/// Throws InvalidArgument on nonpositive exponents or a negative deg_q.
ObstructionVerdict obstruction_check(const ObstructionPattern& pattern);

std::string to_string(ObstructionStatus s);

}  // namespace rigidity

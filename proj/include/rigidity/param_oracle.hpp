#pragma once

#include "rigidity/mason.hpp"
#include "rigidity/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rigidity {

enum class ConstraintKind {
    /// P(f_1, ..., f_n) = 0
    HomogeneousZero,
    /// P(f_1, ..., f_n) is a nonzero constant
    UnitTarget,
};

struct ParametrizationProblem {
    Polynomial relation;
    ConstraintKind constraint = ConstraintKind::HomogeneousZero;
    /// Per relation variable, the largest degree tried by bounded_search.
    std::vector<std::uint32_t> degree_bounds;
    /// Search only tuples whose components are all nonzero.
    bool nonzero_components = true;
    /// Search only tuples whose nonzero evaluated terms satisfy Mason's hypothesis
    /// (every vanishing subsum has coprime summands).
    bool primitive_only = false;
};

struct ParametrizationCheck {
    bool holds = false;
    /// P(f_1, ..., f_n).
    Polynomial value;
    /// Part of the value violating the constraint: all of it for HomogeneousZero, the
    /// nonconstant part (or 0 when the value is 0) for UnitTarget.
    Polynomial residual;
};

/// Substitute the candidates (one per relation variable, in order) and test the
/// constraint. Throws InvalidArgument on an arity mismatch.
ParametrizationCheck verify_parametrization(const ParametrizationProblem& problem,
                                            const std::vector<Polynomial>& candidates);

/// Whether the nonzero evaluated terms of the relation satisfy Mason's subset-gcd
/// hypothesis (the constant target counts as one more term for UnitTarget).
bool is_primitive(const ParametrizationProblem& problem, const std::vector<Polynomial>& candidates);

/// Extract a pattern from the exponent structure and run the matching certificate.
/// UnitTarget: u^a + v^b (plain), u^a + v^b Q(v) (extended), u^a v^b + w^c (twisted).
/// HomogeneousZero: u^a v^b + w^c + t^d and sums of at least three pure powers.
/// Throws Unsupported for any other shape.
ObstructionVerdict parametrization_obstructed(const ParametrizationProblem& problem);

struct SearchOptions {
    /// Coefficients a + bi with |a|, |b| <= window.
    int window = 2;
    /// Restrict coefficients to integers in [-window, window].
    bool real_only = false;
    /// Largest number of candidates the search may enumerate.
    std::uint64_t ceiling = 10'000'000;
    std::string parameter = "S";
};

struct SearchResult {
    bool found = false;
    std::vector<Polynomial> candidates;
    /// Candidates the chosen strategy enumerates.
    std::uint64_t cost = 0;
    /// "exhaustive" or "split" (meet in the middle over additively separated variable groups).
    std::string strategy;
};

/// Exhaustive search for a parametrization with the given degree bounds. Returns the
/// first match in a fixed enumeration order. A found tuple is nonconstant unless every
/// bound is zero, honours the problem's filters and passes verify_parametrization.
/// Throws SearchTooLarge when the cost exceeds the ceiling.
SearchResult bounded_search(const ParametrizationProblem& problem, const SearchOptions& options = {});

}  // namespace rigidity

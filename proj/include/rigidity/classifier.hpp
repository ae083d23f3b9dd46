#pragma once

#include "rigidity/derivation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rigidity {

enum class Family { ThreeTermXY, Fermat3, MixedFour, FermatN, DanielewskiLike, Unrecognized };

std::string to_string(Family f);

/// A relation matched against one of the hypersurface families, up to a variable
/// permutation and nonzero term coefficients.
///
/// Canonical exponents per family:
///   ThreeTermXY(a,b,c)   X^a*Y^b - Z^c, with a <= b, and b <= c when a = 0
///   Fermat3(a,b,c)       X^a + Y^b + Z^c, sorted ascending
///   MixedFour(a,b,c,d)   X^a*Y^b + Z^c + T^d, with a >= b and c <= d
///   FermatN(d1..dn)      sum of n >= 4 pure powers, sorted ascending
///   DanielewskiLike(d)   X^d*Y + Z^d*P(Y,Z); P is kept in `p`
struct FamilyDescriptor {
    Family family = Family::Unrecognized;
    std::vector<std::uint32_t> exponents;
    /// The relation as given. Zero only for the degenerate ThreeTermXY(0,0,0).
    Polynomial relation;
    /// The same monomials with unit coefficients (X^a*Y^b - Z^c for ThreeTermXY).
    /// Equal to `relation` for DanielewskiLike.
    Polynomial normalized;
    /// roles[k] is the variable index playing canonical slot k (X, Y, Z, T, ...).
    std::vector<std::size_t> roles;
    /// DanielewskiLike only: P over the relation's variables, in the Y and Z roles.
    std::optional<Polynomial> p;
    std::vector<std::string> notes;
};

/// Throws InvalidArgument on a constant relation.
FamilyDescriptor recognize_family(const Polynomial& f);

/// Descriptors for the canonical relation of each family over X,Y,Z[,T] (or X1..Xn).
/// Exponents are given in any order and canonicalized.
FamilyDescriptor three_term_xy(std::uint32_t a, std::uint32_t b, std::uint32_t c);
FamilyDescriptor fermat3(std::uint32_t a, std::uint32_t b, std::uint32_t c);
FamilyDescriptor mixed_four(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d);
FamilyDescriptor fermat_n(const std::vector<std::uint32_t>& ds);
/// X^d*Y + Z^d*P(Y), with P given by coefficients of Y^0, Y^1, ...
FamilyDescriptor danielewski(std::uint32_t d, const std::vector<GaussianRational>& p_coeffs);

enum class VerdictStatus { Rigid, NotRigid, Unknown, OutOfScope };

std::string to_string(VerdictStatus s);

struct Verdict {
    VerdictStatus status = VerdictStatus::OutOfScope;
    std::string citation;
    /// Present on NotRigid verdicts, validated and certified nilpotent.
    std::optional<Derivation> witness;
    std::optional<NilpotencyReport> witness_report;
    std::vector<std::string> notes;
};

/// One row of a family's verdict table.
struct Rule {
    Family family;
    std::string name;
    VerdictStatus status;
    std::string citation;
    bool (*matches)(const std::vector<std::uint32_t>& exponents);
};

/// The exponent-pattern rules of ThreeTermXY, Fermat3, MixedFour and FermatN, in
/// evaluation order.
const std::vector<Rule>& rule_table();

/// Every rule of the family whose pattern matches the canonical exponents.
std::vector<const Rule*> matching_rules(Family family, const std::vector<std::uint32_t>& exponents);

/// Verdict per the family's rules. NotRigid verdicts carry a witness that has been
/// validated and probed; a failure there throws InvariantViolation.
Verdict classify(const FamilyDescriptor& d);

/// recognize_family followed by classify.
Verdict classify_relation(const Polynomial& f);

/// Try the explicit LND constructions on f directly: a free variable, a variable
/// occurring linearly, two pure squares, and X^(2k)*Y^2 + Z^2 + T^d. Each result is
/// validated; nilpotency is left to the caller.
std::optional<Derivation> catalog_witness(const Polynomial& f);

/// The certified witness for a NotRigid descriptor. Throws InvalidArgument otherwise.
Derivation witness_for(const FamilyDescriptor& d);

}  // namespace rigidity

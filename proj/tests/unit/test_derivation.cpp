#include "test_support.hpp"

#include "rigidity/derivation.hpp"
#include "rigidity/errors.hpp"

#include <doctest.h>

using namespace rigidity;
using testsupport::P;

namespace {
const Variables XY{"X", "Y"};
const Variables XYZ{"X", "Y", "Z"};
const Variables XYZT{"X", "Y", "Z", "T"};
const Variables S{"S"};

Derivation danielewski() {
    auto A = make_presentation(P("X*Y - Z^2", XYZ));
    return make_derivation(A, std::vector<Polynomial>{P("0", XYZ), P("2*Z", XYZ), P("X", XYZ)});
}

Derivation freudenburg() {
    auto A = make_presentation(P("X^2*Y^2 + Z^2 + T^3", XYZT));
    return make_derivation(A, std::vector<Polynomial>{P("0", XYZT), P("3*T^2", XYZT),
                                                      P("-3i*X*T^2", XYZT),
                                                      P("-2*X*(X*Y - i*Z)", XYZT)});
}
}  // namespace

TEST_CASE("derivation validation") {
    CHECK_NOTHROW(freudenburg());
    auto A = make_presentation(P("X*Y - Z^2", XYZ));
    CHECK_THROWS_AS(make_derivation(A, std::vector<Polynomial>{P("1", XYZ), P("0", XYZ), P("0", XYZ)}),
                    IllDefined);
    auto zero = make_derivation(A, std::vector<Polynomial>(3, Polynomial(XYZ)));
    CHECK(zero.is_zero());
    CHECK_THROWS_AS(make_derivation(A, std::vector<Polynomial>(2, Polynomial(XYZ))), InvalidArgument);
}

TEST_CASE("applying derivations") {
    auto D = danielewski();
    auto A = D.presentation();
    CHECK(apply(D, normal_form(P("Y^2", XYZ), A)) == normal_form(P("4*Y*Z", XYZ), A));
    CHECK(apply(D, normal_form(P("5 + 2i", XYZ), A)).is_zero());
    auto F = freudenburg();
    CHECK(apply(F, P("X*Y - i*Z", XYZT)).is_zero());
    CHECK(apply(F, P("X", XYZT)).is_zero());
}

TEST_CASE("nilpotency by iteration") {
    auto r = probe_nilpotency(danielewski());
    CHECK(r.certified());
    CHECK(r.certificate == CertificateKind::ByIteration);
    CHECK(r.steps_per_generator == std::vector<int>{1, 3, 2});

    auto f = probe_nilpotency(freudenburg());
    CHECK(f.certified());
    CHECK(f.max_steps() == 4);
    CHECK(f.steps_per_generator[1] == 4);
    CHECK(f.steps_per_generator[2] == 4);
    CHECK(f.steps_per_generator[3] == 2);

    auto B = make_presentation(P("Y", XY));
    auto euler = make_derivation(B, std::vector<Polynomial>{P("X", XY), P("0", XY)});
    for (int bound : {1, 5, 64}) CHECK_FALSE(probe_nilpotency(euler, bound).certified());
    CHECK_THROWS_AS(probe_nilpotency(euler, 0), InvalidArgument);
}

TEST_CASE("nilpotency reports replay") {
    for (const auto& D : {danielewski(), freudenburg()}) {
        auto r = probe_nilpotency(D);
        REQUIRE(r.certified());
        for (std::size_t i = 0; i < D.images().size(); ++i) {
            RingElement cur = generator(D.presentation(), i);
            for (int k = 0; k < r.steps_per_generator[i]; ++k) {
                CHECK_FALSE(cur.is_zero());
                cur = apply(D, cur);
            }
            CHECK(cur.is_zero());
        }
    }
}

TEST_CASE("negative grading certificate") {
    auto B = make_presentation(P("Y", XY));
    auto dx = make_derivation(B, std::vector<Polynomial>{P("1", XY), P("0", XY)});
    auto r = certify_by_negative_grading(dx, {1, 1});
    CHECK(r.certified());
    CHECK(r.jump == -1);
    CHECK(probe_nilpotency(dx).certified());

    auto dan = certify_by_negative_grading(danielewski(), {2, 2, 2});
    CHECK_FALSE(dan.certified());
    CHECK(dan.jump == 0);

    auto euler = make_derivation(B, std::vector<Polynomial>{P("X", XY), P("0", XY)});
    CHECK_FALSE(certify_by_negative_grading(euler, {1, 1}).certified());
    CHECK_THROWS_AS(certify_by_negative_grading(dx, {1, 0}), InvalidArgument);
    CHECK_THROWS_AS(certify_by_negative_grading(danielewski(), {1, 2, 3}), InvalidArgument);
}

TEST_CASE("component invariance") {
    auto A = make_presentation(P("X*Y", XY));
    auto D = make_derivation(A, std::vector<Polynomial>{P("X", XY), P("-Y", XY)});
    CHECK(component_invariance_check(D, {P("X", XY), P("Y", XY)}) == std::vector<bool>{true, true});
    auto zero = make_derivation(A, std::vector<Polynomial>(2, Polynomial(XY)));
    CHECK(component_invariance_check(zero, {P("X", XY), P("Y", XY)}) == std::vector<bool>{true, true});
    CHECK_THROWS_AS(make_derivation(A, std::vector<Polynomial>{P("1", XY), P("0", XY)}), IllDefined);
    CHECK_THROWS_AS(component_invariance_check(D, {P("X + 1", XY)}), InvalidArgument);
}

TEST_CASE("normal form decomposition on sums of four powers") {
    auto A = make_presentation(P("X^2 + Y^2 + Z^2 + T^3", XYZT));
    auto D = make_derivation(A, std::vector<Polynomial>{P("3*T^2", XYZT), P("0", XYZT), P("0", XYZT),
                                                        P("-2*X", XYZT)});
    auto res = cb3_decompose(D);
    REQUIRE(res.decomposition);
    CHECK(res.decomposition->delta[0] == P("1", XYZT));
    CHECK(res.decomposition->delta[1].is_zero());
    CHECK(res.decomposition->q == P("2*X", XYZT));
    CHECK_FALSE(res.decomposition->delta_kills_q);

    auto zero = make_derivation(A, std::vector<Polynomial>(4, Polynomial(XYZT)));
    auto z = cb3_decompose(zero);
    REQUIRE(z.decomposition);
    CHECK(z.decomposition->q.is_zero());
    CHECK(z.decomposition->delta_kills_q);

    // Rotation in the (X, Y) plane has D(x) = -y, not divisible by t^2.
    auto rot = make_derivation(A, std::vector<Polynomial>{P("-Y", XYZT), P("X", XYZT), P("0", XYZT),
                                                          P("0", XYZT)});
    auto nr = cb3_decompose(rot);
    CHECK_FALSE(nr.decomposition);
    CHECK_FALSE(nr.reason.empty());

    CHECK_THROWS_AS(cb3_decompose(freudenburg()), Unsupported);
}

TEST_CASE("commutator ratio") {
    auto r = qplus_commutator_ratio(P("S^2", S), P("S^3", S));
    CHECK(r.kind == CommutatorRatio::Kind::Ratio);
    CHECK(r.h == mpq_class(2, 3));
    CHECK(qplus_commutator_ratio(P("S", S), P("S", S)).h == 1);
    CHECK(qplus_commutator_ratio(P("2", S), P("3i", S)).kind == CommutatorRatio::Kind::Indeterminate);
    CHECK(qplus_commutator_ratio(P("S^2 + 1", S), P("S", S)).kind ==
          CommutatorRatio::Kind::NoConstantRatio);
    CHECK_THROWS_AS(qplus_commutator_ratio(Polynomial(S), P("S", S)), InvalidArgument);
}

TEST_CASE("Leibniz rule and constants on random elements") {
    std::mt19937_64 rng(5);
    for (const auto& D : {danielewski(), freudenburg()}) {
        const auto& vars = D.presentation()->variables();
        for (int trial = 0; trial < 200; ++trial) {
            auto u = normal_form(testsupport::random_poly(rng, vars, 3, 3), D.presentation());
            auto v = normal_form(testsupport::random_poly(rng, vars, 3, 3), D.presentation());
            REQUIRE(apply(D, u * v) == u * apply(D, v) + apply(D, u) * v);
            auto c = testsupport::random_coeff(rng);
            REQUIRE(apply(D, Polynomial::constant(vars, c)).is_zero());
        }
    }
}

TEST_CASE("kernels of catalog derivations are factorially closed on products") {
    // Danielewski kernel is C[x]; products of kernel elements stay in it and each
    // nonzero factor of such a product is in the kernel.
    auto D = danielewski();
    std::mt19937_64 rng(11);
    const Variables x1{"X"};
    for (int trial = 0; trial < 100; ++trial) {
        Polynomial a = testsupport::random_nonzero(rng, x1, 3, 3).with_variables(XYZ);
        Polynomial b = testsupport::random_nonzero(rng, XYZ, 2, 3);
        auto prod = apply(D, a * b);
        if (prod.is_zero()) {
            REQUIRE(apply(D, a).is_zero());
            REQUIRE(apply(D, b).is_zero());
        }
    }
}

TEST_CASE("no eigenvalues for catalog derivations") {
    std::mt19937_64 rng(13);
    for (const auto& D : {danielewski(), freudenburg()}) {
        const auto& ring = D.presentation();
        for (int trial = 0; trial < 50; ++trial) {
            auto a = normal_form(testsupport::random_nonzero(rng, ring->variables(), 3, 3), ring);
            if (a.is_zero() || apply(D, a).is_zero()) continue;
            auto cur = apply(D, a);
            for (int k = 1; k <= 16 && !cur.is_zero(); ++k) {
                // D^k(a) = lambda * a with lambda != 0 would force equal leading monomials.
                const auto& [ea, ca] = a.rep().leading_term();
                const auto& [ec, cc] = cur.rep().leading_term();
                if (ea == ec) REQUIRE(cur != (cc / ca) * a);
                cur = apply(D, cur);
            }
            REQUIRE(cur.is_zero());
        }
    }
}

#include "test_support.hpp"

#include "rigidity/classifier.hpp"
#include "rigidity/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace rigidity;
using testsupport::P;

namespace {
const Variables XYZ{"X", "Y", "Z"};
const Variables XYZT{"X", "Y", "Z", "T"};

using Exps = std::vector<std::uint32_t>;

std::vector<Polynomial> images_of(const Derivation& d) {
    std::vector<Polynomial> out;
    for (const auto& e : d.images()) out.push_back(e.rep());
    return out;
}

void check_certified(const Verdict& v) {
    REQUIRE(v.status == VerdictStatus::NotRigid);
    REQUIRE(v.witness.has_value());
    CHECK_FALSE(v.witness->is_zero());
    CHECK(probe_nilpotency(*v.witness).certified());
}

// Brute force over all 24 orderings, written independently of the library rule.
bool cb4_oracle(const Exps& e) {
    for (auto x : e) {
        if (x < 2) return false;
    }
    std::vector<int> idx{0, 1, 2, 3};
    do {
        std::uint64_t a = e[idx[0]], b = e[idx[1]], c = e[idx[2]], d = e[idx[3]];
        bool ok = std::gcd(a * b, c) == 1 && std::gcd(a * b * c, d) == 1 && b % a != 0 && a % b != 0;
        if (ok) return true;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return false;
}
}  // namespace

TEST_CASE("recognize_family examples") {
    auto d = recognize_family(P("X^2*Y^3 - Z^5", XYZ));
    CHECK(d.family == Family::ThreeTermXY);
    CHECK(d.exponents == Exps{2, 3, 5});
    CHECK(d.notes.empty());

    auto f = recognize_family(P("2*X^3 + 5*Y^4 + Z^5 + T^6", XYZT));
    CHECK(f.family == Family::FermatN);
    CHECK(f.exponents == Exps{3, 4, 5, 6});
    REQUIRE(f.notes.size() == 1);
    CHECK(f.notes[0].find("absorbed") != std::string::npos);
    CHECK(f.normalized == P("X^3 + Y^4 + Z^5 + T^6", XYZT));

    CHECK(recognize_family(P("X^2 + X*Y", Variables{"X", "Y"})).family == Family::Unrecognized);
    CHECK_THROWS_AS(recognize_family(P("3", XYZ)), InvalidArgument);
    CHECK_THROWS_AS(recognize_family(Polynomial(XYZ)), InvalidArgument);
}

TEST_CASE("recognition canonicalizes exponents") {
    CHECK(recognize_family(P("Z^7 - X^3*Y^2", XYZ)).exponents == Exps{2, 3, 7});
    CHECK(recognize_family(P("X^2 - Y^3", XYZ)).exponents == Exps{0, 2, 3});
    CHECK(recognize_family(P("Z^5 - 1", XYZ)).exponents == Exps{0, 0, 5});
    CHECK(recognize_family(P("X^2*Y^3 + 7", XYZ)).exponents == Exps{2, 3, 0});
    CHECK(recognize_family(P("Z^5 + X^2 + Y^3", XYZ)).exponents == Exps{2, 3, 5});
    auto m = recognize_family(P("Z^3*T^6 + X^4 + Y^2", XYZT));
    CHECK(m.family == Family::MixedFour);
    CHECK(m.exponents == Exps{6, 3, 2, 4});
    CHECK(m.roles == std::vector<std::size_t>{3, 2, 1, 0});
    CHECK(mixed_four(2, 4, 2, 3).exponents == Exps{4, 2, 2, 3});
    CHECK(fermat3(5, 2, 3).exponents == Exps{2, 3, 5});
    CHECK(fermat_n({7, 2, 42, 3}).exponents == Exps{2, 3, 7, 42});
    CHECK(fermat_n({2, 3, 5, 7, 11}).relation.arity() == 5);
    CHECK_THROWS_AS(fermat_n({2, 3, 5}), InvalidArgument);
    CHECK_THROWS_AS(mixed_four(0, 2, 3, 4), InvalidArgument);
}

TEST_CASE("recognition is invariant under permutation and scaling") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        Exps e{static_cast<std::uint32_t>(1 + rng() % 6), static_cast<std::uint32_t>(1 + rng() % 6),
               static_cast<std::uint32_t>(1 + rng() % 6), static_cast<std::uint32_t>(1 + rng() % 6)};
        std::vector<std::size_t> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), rng);
        auto mono = [&](std::initializer_list<std::pair<std::size_t, std::uint32_t>> ps) {
            ExponentVector x(4, 0);
            for (auto [v, k] : ps) x[perm[v]] = k;
            return Polynomial::monomial(XYZT, x, testsupport::random_coeff(rng));
        };
        Polynomial mixed = mono({{0, e[0]}, {1, e[1]}}) + mono({{2, e[2]}}) + mono({{3, e[3]}});
        auto dm = recognize_family(mixed);
        REQUIRE(dm.family == Family::MixedFour);
        CHECK(dm.exponents == mixed_four(e[0], e[1], e[2], e[3]).exponents);

        Polynomial fermat = mono({{0, e[0]}}) + mono({{1, e[1]}}) + mono({{2, e[2]}}) + mono({{3, e[3]}});
        auto df = recognize_family(fermat);
        REQUIRE(df.family == Family::FermatN);
        Exps sorted = e;
        std::sort(sorted.begin(), sorted.end());
        CHECK(df.exponents == sorted);
    }
}

TEST_CASE("classify examples") {
    auto r = classify(three_term_xy(2, 3, 5));
    CHECK(r.status == VerdictStatus::Rigid);
    CHECK(r.citation == "Theorem case1");
    CHECK_FALSE(r.witness.has_value());

    auto n = classify(three_term_xy(1, 2, 3));
    check_certified(n);
    CHECK(images_of(*n.witness) == std::vector<Polynomial>{P("3*Z^2", XYZ), P("0", XYZ), P("Y^2", XYZ)});

    auto u = classify(mixed_four(6, 3, 2, 4));
    CHECK(u.status == VerdictStatus::Unknown);
    CHECK(u.citation.rfind("Remark Leftover", 0) == 0);
    CHECK(classify(mixed_four(6, 2, 3, 3)).status == VerdictStatus::Unknown);
    CHECK(classify(mixed_four(12, 3, 4, 2)).status == VerdictStatus::Unknown);

    auto f = classify(fermat3(2, 2, 5));
    check_certified(f);
    CHECK(images_of(*f.witness) ==
          std::vector<Polynomial>{P("-5/2*Z^4", XYZ), P("-5/2i*Z^4", XYZ), P("X + i*Y", XYZ)});
    // z^4 needs five more applications after D(x) = -5/2*z^4.
    CHECK(probe_nilpotency(*f.witness).max_steps() == 6);
}

TEST_CASE("FermatN(2,3,7,42) rule trace") {
    auto d = fermat_n({2, 3, 7, 42});
    CHECK_FALSE(cb4_oracle(d.exponents));
    auto v = classify(d);
    CHECK(v.status == VerdictStatus::Unknown);
    bool ex1_noted = false;
    bool cb4_noted = false;
    for (const auto& note : v.notes) {
        ex1_noted = ex1_noted || note.find("1/2 + 1/3 + 1/7 + 1/42 = 1 > 1/2") != std::string::npos;
        cb4_noted = cb4_noted || note.rfind("CB4:", 0) == 0;
    }
    CHECK(ex1_noted);
    CHECK(cb4_noted);

    auto cb4 = classify(fermat_n({2, 3, 5, 7}));
    CHECK(cb4.status == VerdictStatus::Rigid);
    CHECK(cb4.citation == "Theorem CB4");
    auto ex1 = classify(fermat_n({3, 4, 6, 6, 6}));
    CHECK(ex1.status == VerdictStatus::Unknown);
    auto big = classify(fermat_n({14, 15, 16, 17, 18}));
    CHECK(big.status == VerdictStatus::Rigid);
    CHECK(big.citation == "Lemma EX1");
}

TEST_CASE("witness_for examples") {
    auto w = witness_for(mixed_four(2, 2, 2, 3));
    CHECK(images_of(w) == std::vector<Polynomial>{P("0", XYZT), P("3*T^2", XYZT), P("-3i*X*T^2", XYZT),
                                                  P("-2*X^2*Y + 2i*X*Z", XYZT)});
    auto rep = probe_nilpotency(w);
    CHECK(rep.certified());
    CHECK(rep.max_steps() <= 4);

    for (std::uint32_t b = 1; b <= 5; ++b) {
        for (std::uint32_t c = b; c <= 5; ++c) {
            auto d = three_term_xy(0, b, c);
            auto free = witness_for(d);
            std::vector<Polynomial> expect(3, Polynomial(XYZ));
            expect[d.roles[0]] = P("1", XYZ);
            CHECK(images_of(free) == expect);
        }
    }
    for (std::uint32_t b = 1; b <= 5; ++b) {
        for (std::uint32_t c = b; c <= 5; ++c) {
            auto wit = witness_for(fermat3(1, b, c));
            auto imgs = images_of(wit);
            CHECK(imgs[0] == P(std::to_string(-static_cast<int>(b)) + "*Y^" + std::to_string(b - 1), XYZ));
            CHECK(imgs[1] == P("1", XYZ));
            CHECK(imgs[2].is_zero());
        }
    }
    CHECK_THROWS_AS(witness_for(three_term_xy(2, 3, 5)), InvalidArgument);
    CHECK_THROWS_AS(witness_for(mixed_four(6, 3, 2, 4)), InvalidArgument);
}

TEST_CASE("rule table is disjoint and covers the exponent boxes") {
    for (std::uint32_t a = 0; a <= 10; ++a) {
        for (std::uint32_t b = 0; b <= 10; ++b) {
            for (std::uint32_t c = 0; c <= 10; ++c) {
                auto rules = matching_rules(Family::ThreeTermXY, {a, b, c});
                REQUIRE(rules.size() == 1);
                bool rigid = a >= 2 && b >= 2 && c >= 2;
                CHECK((rules[0]->status == VerdictStatus::Rigid) == rigid);
            }
        }
    }
    for (std::uint32_t a = 1; a <= 10; ++a) {
        for (std::uint32_t b = a; b <= 10; ++b) {
            for (std::uint32_t c = b; c <= 10; ++c) {
                auto rules = matching_rules(Family::Fermat3, {a, b, c});
                REQUIRE_FALSE(rules.empty());
                for (auto* r : rules) CHECK(r->status == rules[0]->status);
                bool not_rigid = a == 1 || (a == 2 && b == 2);
                CHECK((rules[0]->status == VerdictStatus::NotRigid) == not_rigid);
            }
        }
    }
    for (std::uint32_t a = 1; a <= 10; ++a) {
        for (std::uint32_t b = 1; b <= a; ++b) {
            for (std::uint32_t c = 1; c <= 10; ++c) {
                for (std::uint32_t d = c; d <= 10; ++d) {
                    auto rules = matching_rules(Family::MixedFour, {a, b, c, d});
                    REQUIRE(rules.size() >= 1);
                    for (auto* r : rules) CHECK(r->status == rules[0]->status);
                }
            }
        }
    }
    std::size_t rigid = 0;
    std::size_t unknown = 0;
    for (std::uint32_t a = 1; a <= 10; ++a) {
        for (std::uint32_t b = a; b <= 10; ++b) {
            for (std::uint32_t c = b; c <= 10; ++c) {
                for (std::uint32_t d = c; d <= 10; ++d) {
                    Exps e{a, b, c, d};
                    auto rules = matching_rules(Family::FermatN, e);
                    for (auto* r : rules) CHECK(r->status == rules[0]->status);
                    bool not_rigid = a == 1 || (a == 2 && b == 2);
                    if (not_rigid) {
                        REQUIRE_FALSE(rules.empty());
                        CHECK(rules[0]->status == VerdictStatus::NotRigid);
                        continue;
                    }
                    bool any_rigid = !rules.empty() && rules[0]->status == VerdictStatus::Rigid;
                    CHECK(any_rigid == (cb4_oracle(e) || !rules.empty()));
                    rigid += any_rigid;
                    unknown += rules.empty();
                }
            }
        }
    }
    CHECK(rigid > 0);
    CHECK(unknown > 0);
}

TEST_CASE("NotRigid witnesses are sound and Rigid verdicts have no catalog witness") {
    auto check = [](const FamilyDescriptor& d) {
        auto v = classify(d);
        if (v.status == VerdictStatus::NotRigid) {
            if (!d.relation.is_zero()) check_certified(v);
        } else {
            CHECK_FALSE(catalog_witness(d.relation).has_value());
        }
    };
    for (std::uint32_t a = 0; a <= 6; ++a) {
        for (std::uint32_t b = 0; b <= 6; ++b) {
            for (std::uint32_t c = 0; c <= 6; ++c) check(three_term_xy(a, b, c));
        }
    }
    for (std::uint32_t a = 1; a <= 6; ++a) {
        for (std::uint32_t b = a; b <= 6; ++b) {
            for (std::uint32_t c = b; c <= 6; ++c) check(fermat3(a, b, c));
        }
    }
    for (std::uint32_t a = 1; a <= 6; ++a) {
        for (std::uint32_t b = 1; b <= 6; ++b) {
            for (std::uint32_t c = 1; c <= 6; ++c) {
                for (std::uint32_t d = 1; d <= 6; ++d) check(mixed_four(a, b, c, d));
            }
        }
    }
    for (std::uint32_t a = 1; a <= 4; ++a) {
        for (std::uint32_t b = a; b <= 5; ++b) {
            for (std::uint32_t c = b; c <= 6; ++c) {
                for (std::uint32_t d = c; d <= 7; ++d) check(fermat_n({a, b, c, d}));
            }
        }
    }
}

TEST_CASE("zero relation") {
    auto v = classify(three_term_xy(0, 0, 0));
    CHECK(v.status == VerdictStatus::NotRigid);
    CHECK_FALSE(v.witness.has_value());
    CHECK_FALSE(v.notes.empty());
}

TEST_CASE("gcd of the exponents above one stays Rigid") {
    for (auto e : std::vector<Exps>{{2, 4, 6}, {3, 3, 3}, {2, 2, 2}, {4, 6, 8}}) {
        auto v = classify(three_term_xy(e[0], e[1], e[2]));
        CHECK(v.status == VerdictStatus::Rigid);
        CHECK(v.citation == "Theorem case1");
    }
}

TEST_CASE("non-monic input") {
    auto v = classify_relation(P("2*X*Y^2 + 3*Z^3", XYZ));
    check_certified(v);
    CHECK(*v.witness->presentation() == RingPresentation(P("2*X*Y^2 + 3*Z^3", XYZ)));

    auto t = classify_relation(P("X^2 - 4*Y^2 + Z^3", XYZ));
    check_certified(t);
    CHECK(t.witness->presentation()->relation() == P("X^2 - 4*Y^2 + Z^3", XYZ));

    // sqrt(-2) is not in Q(i): the witness lives on the normalized relation.
    auto s = classify_relation(P("X^2 + 2*Y^2 + Z^3", XYZ));
    check_certified(s);
    CHECK(s.witness->presentation()->relation() == P("X^2 + Y^2 + Z^3", XYZ));
    bool noted = false;
    for (const auto& n : s.notes) noted = noted || n.find("normalized relation") != std::string::npos;
    CHECK(noted);

    auto fr = classify_relation(P("3*Y^2*X^4 + 5*T^2 - Z^3", XYZT));
    check_certified(fr);
}

TEST_CASE("DanielewskiLike") {
    auto ex2t = classify(danielewski(2, {GaussianRational(1), GaussianRational(1)}));
    CHECK(ex2t.status == VerdictStatus::Rigid);
    CHECK(ex2t.citation == "Theorem EX2t");

    auto ex2t_edge = classify(danielewski(3, {1, 2, 0, 0, 1}));
    CHECK(ex2t_edge.status == VerdictStatus::Rigid);
    CHECK(ex2t_edge.citation == "Theorem EX2t");

    auto mono = classify(danielewski(3, {1, 0, 0, 0, 0, 1}));
    CHECK(mono.status == VerdictStatus::Rigid);
    CHECK(mono.citation == "Proposition EX2 + Lemma MiniMason a)");

    auto unknown = classify(danielewski(2, {1, 1, 1}));
    CHECK(unknown.status == VerdictStatus::Unknown);

    CHECK(classify(danielewski(2, {0, 1})).status == VerdictStatus::OutOfScope);
    check_certified(classify(danielewski(1, {1, 1})));
    check_certified(classify(danielewski(3, {5})));

    auto remark = recognize_family(P("X^3*Y + Z^3*Y + Z^4", XYZ));
    CHECK(remark.family == Family::DanielewskiLike);
    CHECK(remark.exponents == Exps{3});
    CHECK(classify(remark).status == VerdictStatus::Unknown);

    auto permuted = recognize_family(P("Y^2*Z + X^2*(1 + Z)", XYZ));
    CHECK(permuted.family == Family::DanielewskiLike);
    CHECK(classify(permuted).status == VerdictStatus::Rigid);
}

TEST_CASE("open list classifies to Unknown") {
    const std::vector<std::pair<std::string, Variables>> open{
        {"X^3*Y + Z^3*Y + Z^4", XYZ},      {"X^6*Y^3 + Z^2 + T^4", XYZT},
        {"X^6*Y^2 + Z^3 + T^3", XYZT},     {"X^2 + Y^3 + Z^3 + T^3", XYZT},
        {"X^3 + Y^3 + Z^3 + T^3", XYZT},   {"X^2 + Y^3 + Z^5 + T^15", XYZT},
    };
    for (const auto& [text, vars] : open) {
        auto d = recognize_family(P(text, vars));
        CHECK(d.family != Family::Unrecognized);
        auto v = classify(d);
        CHECK_MESSAGE(v.status == VerdictStatus::Unknown, text);
    }
}

TEST_CASE("citations are stable") {
    CHECK(classify(fermat3(2, 3, 4)).citation == "Theorem KalZai");
    CHECK(classify(fermat3(2, 2, 7)).citation == "derived witness (two squares)");
    CHECK(classify(fermat3(1, 3, 4)).citation == "derived witness (linear variable)");
    CHECK(classify(mixed_four(3, 2, 4, 5)).citation == "Theorem abcdTHM");
    CHECK(classify(mixed_four(3, 2, 2, 2)).citation == "Remark Leftover (c = d = 2)");
    CHECK(classify(mixed_four(4, 2, 2, 5)).citation == "Remark Leftover (Freudenburg witness)");
    CHECK(classify(mixed_four(1, 2, 4, 5)).citation == "Remark Leftover (exponent 1)");
    CHECK(classify(mixed_four(6, 3, 2, 4)).citation == "Remark Leftover (i)");
    CHECK(classify(mixed_four(6, 2, 3, 3)).citation == "Remark Leftover (ii)");
    CHECK(classify(fermat_n({2, 3, 3, 3})).citation == "no rule applies");
    CHECK(classify_relation(P("X^2 + X*Y + Z", XYZ)).status == VerdictStatus::OutOfScope);
}

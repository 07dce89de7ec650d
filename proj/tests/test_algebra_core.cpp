#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "etnckit/abelian_group.hpp"
#include "etnckit/cyclotomic.hpp"
#include "etnckit/rng.hpp"

using namespace etnckit;

static CyclotomicNumber random_cyclo(Rng& rng, uint64_t order) {
    std::vector<Rational> cs(euler_phi_u64(order));
    for (auto& c : cs) c = rng.rational(6, 4);
    return CyclotomicNumber(order, std::move(cs));
}

TEST_CASE("cyclotomic polynomial table") {
    // deg Phi_N = phi(N)
    for (uint64_t N : {1ull, 2ull, 3ull, 8ull, 12ull, 30ull, 105ull, 128ull})
        CHECK(CyclotomicNumber::cyclotomic_polynomial(N).size() == euler_phi_u64(N) + 1);

    // Phi_7 = 1 + x + ... + x^6
    const auto& p7 = CyclotomicNumber::cyclotomic_polynomial(7);
    for (const auto& c : p7) CHECK(c == 1);

    // Phi_12 = x^4 - x^2 + 1
    const auto& p12 = CyclotomicNumber::cyclotomic_polynomial(12);
    CHECK(p12 == std::vector<Integer>{1, 0, -1, 0, 1});

    // first index with a coefficient outside {-1,0,1}: Phi_105, coeff of x^7 is -2
    const auto& p105 = CyclotomicNumber::cyclotomic_polynomial(105);
    CHECK(p105[7] == -2);
}

TEST_CASE("roots of unity") {
    auto z5 = CyclotomicNumber::root_of_unity(5, 1);
    CHECK(z5.pow(5) == CyclotomicNumber::one());
    CyclotomicNumber s = CyclotomicNumber::zero();
    for (int k = 0; k < 5; ++k) s += z5.pow(k);
    CHECK(s.is_zero());

    // (1+z3)(1+z3^2) = 1
    auto z3 = CyclotomicNumber::root_of_unity(3, 1);
    CHECK((CyclotomicNumber::one() + z3) * (CyclotomicNumber::one() + z3.pow(2)) ==
          CyclotomicNumber::one());

    // zeta_2 = -1 through the reduction path
    CHECK(CyclotomicNumber::root_of_unity(2, 1) == CyclotomicNumber(Rational(-1)));
}

TEST_CASE("field arithmetic in Q(zeta_7)") {
    Rng rng(1001);
    for (int it = 0; it < 25; ++it) {
        CyclotomicNumber x = random_cyclo(rng, 7);
        if (x.is_zero()) continue;
        CHECK(x * x.inverse() == CyclotomicNumber::one());
        CyclotomicNumber y = random_cyclo(rng, 7);
        CyclotomicNumber z = random_cyclo(rng, 7);
        CHECK((x + y) * z == x * z + y * z);
    }
}

TEST_CASE("mixed order promotion and normalization") {
    auto z6 = CyclotomicNumber::root_of_unity(6, 1);
    CHECK(z6.normalized().order() == 3);
    // zeta_6 = 1 + zeta_3
    CHECK(z6 == CyclotomicNumber::one() + CyclotomicNumber::root_of_unity(3, 1));

    Rng rng(1002);
    for (int it = 0; it < 10; ++it) {
        CyclotomicNumber x = random_cyclo(rng, 5);
        CyclotomicNumber e = x.embed_to_order(15);
        CHECK(e == x);
        CHECK(e.normalized().order() == x.normalized().order());
    }

    // sqrt(5) = 2(z5 + z5^4) + 1 lives in Q(zeta_5); it is not rational
    auto z5 = CyclotomicNumber::root_of_unity(5, 1);
    auto r5 = Rational(2) * (z5 + z5.pow(4)) + CyclotomicNumber::one();
    CHECK(r5 * r5 == CyclotomicNumber(Rational(5)));
    CHECK(!r5.is_rational());
    // but z5 * z5^4 = 1 is
    CHECK((z5 * z5.pow(4)).rational_value() == 1);
}

TEST_CASE("galois action") {
    Rng rng(1003);
    for (int it = 0; it < 10; ++it) {
        CyclotomicNumber x = random_cyclo(rng, 9);
        CyclotomicNumber y = random_cyclo(rng, 9);
        CHECK((x * y).galois(2) == x.galois(2) * y.galois(2));
        CHECK((x + y).galois(4) == x.galois(4) + y.galois(4));
        CHECK(x.galois(2).galois(5) == x.galois(10));  // 2*5 = 10 mod 9 -> 1... exercised below
    }
    auto z9 = CyclotomicNumber::root_of_unity(9, 1);
    CHECK(z9.galois(2) == z9.pow(2));
    CHECK(z9.conj() == z9.pow(-1));
    CHECK(z9.galois(2).galois(5) == z9);  // 10 = 1 mod 9
}

TEST_CASE("complex embedding") {
    Rng rng(1004);
    for (int it = 0; it < 10; ++it) {
        CyclotomicNumber x = random_cyclo(rng, 12);
        CyclotomicNumber y = random_cyclo(rng, 12);
        std::complex<double> lhs = (x * y).to_complex();
        std::complex<double> rhs = x.to_complex() * y.to_complex();
        CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("json round trip") {
    Rng rng(1005);
    for (int it = 0; it < 5; ++it) {
        CyclotomicNumber x = random_cyclo(rng, 8);
        CHECK(CyclotomicNumber::from_json(x.to_json()) == x);
    }
}

TEST_CASE("smith normal form") {
    IntMatrix A = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    IntMatrix U, S, V;
    smith_normal_form(A, U, S, V);
    CHECK(S[0][0] == 2);
    CHECK(S[1][1] == 6);
    CHECK(S[2][2] == 12);

    Rng rng(1006);
    for (int it = 0; it < 30; ++it) {
        size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
        IntMatrix M(r, std::vector<Integer>(c));
        for (auto& row : M)
            for (auto& x : row) x = Integer(static_cast<long>(rng.range(-9, 9)));
        smith_normal_form(M, U, S, V);
        // U M V = S, S diagonal with chained divisibility
        IntMatrix P(r, std::vector<Integer>(c, Integer(0)));
        for (size_t i = 0; i < r; ++i)
            for (size_t k = 0; k < r; ++k)
                for (size_t j = 0; j < c; ++j) P[i][j] += U[i][k] * M[k][j];
        IntMatrix Q(r, std::vector<Integer>(c, Integer(0)));
        for (size_t i = 0; i < r; ++i)
            for (size_t k = 0; k < c; ++k)
                for (size_t j = 0; j < c; ++j) Q[i][j] += P[i][k] * V[k][j];
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < c; ++j) {
                if (i != j) CHECK(Q[i][j] == 0);
                else CHECK(Q[i][j] == S[i][j]);
            }
        for (size_t i = 0; i + 1 < std::min(r, c); ++i) {
            CHECK(S[i][i] >= 0);
            if (S[i][i] != 0) CHECK(S[i + 1][i + 1] % S[i][i] == 0);
            else CHECK(S[i + 1][i + 1] == 0);
        }
    }
}

TEST_CASE("group basics") {
    FiniteAbelianGroup G({2, 4});
    CHECK(G.size() == 8);
    CHECK(G.exponent() == 4);
    for (uint64_t i = 0; i < G.size(); ++i) CHECK(G.index_of(G.element_at(i)) == i);
    CHECK(G.element_order({1, 2}) == 2);
    CHECK(G.element_order({0, 1}) == 4);
    CHECK(G.element_order({0, 0}) == 1);
    CHECK(G.add({1, 3}, {1, 2}) == GroupElt{0, 1});
    CHECK(G.neg({1, 3}) == GroupElt{1, 1});
    CHECK(G.scalar({1, 3}, -1) == GroupElt{1, 1});
}

TEST_CASE("subgroup membership via smith form") {
    FiniteAbelianGroup G({2, 4});
    Subgroup H(G, {{1, 2}});
    CHECK(H.contains({0, 0}));
    CHECK(H.contains({1, 2}));
    CHECK(!H.contains({1, 0}));
    CHECK(!H.contains({0, 2}));
    CHECK(H.size() == 2);

    QuotientGroup Q = quotient(G, H);
    CHECK(Q.group.size() == 4);
    // the image of (0,1) generates the quotient
    GroupElt img = Q.project({0, 1});
    CHECK(Q.group.element_order(img) == 4);
    // projection kills exactly H
    for (uint64_t i = 0; i < G.size(); ++i) {
        GroupElt g = G.element_at(i);
        bool killed = Q.project(g) == Q.group.identity();
        CHECK(killed == H.contains(g));
    }
    // projection is a homomorphism
    Rng rng(1007);
    for (int it = 0; it < 20; ++it) {
        GroupElt a = G.element_at(rng.below(G.size()));
        GroupElt b = G.element_at(rng.below(G.size()));
        CHECK(Q.project(G.add(a, b)) == Q.group.add(Q.project(a), Q.project(b)));
    }
}

TEST_CASE("random subgroups agree with closure enumeration") {
    Rng rng(1008);
    for (int it = 0; it < 20; ++it) {
        std::vector<uint64_t> orders;
        size_t rank = 1 + rng.below(3);
        for (size_t i = 0; i < rank; ++i) orders.push_back(1 + rng.below(6));
        FiniteAbelianGroup G(orders);
        size_t ngens = rng.below(3);
        std::vector<GroupElt> gens;
        for (size_t i = 0; i < ngens; ++i) gens.push_back(G.element_at(rng.below(G.size())));
        Subgroup H(G, gens);
        // closure by repeated addition
        std::vector<bool> in(G.size(), false);
        in[G.index_of(G.identity())] = true;
        bool grew = true;
        while (grew) {
            grew = false;
            for (uint64_t i = 0; i < G.size(); ++i) {
                if (!in[i]) continue;
                for (const auto& g : gens) {
                    uint64_t k = G.index_of(G.add(G.element_at(i), g));
                    if (!in[k]) {
                        in[k] = true;
                        grew = true;
                    }
                }
            }
        }
        for (uint64_t i = 0; i < G.size(); ++i) CHECK(H.contains(G.element_at(i)) == in[i]);
    }
}

TEST_CASE("characters") {
    FiniteAbelianGroup G({2, 3});
    auto chars = all_characters(G);
    CHECK(chars.size() == 6);
    CHECK(chars[0].is_trivial());
    // lex order, last coordinate fastest
    CHECK(chars[1].exponents() == std::vector<uint64_t>{0, 1});
    CHECK(chars[3].exponents() == std::vector<uint64_t>{1, 0});

    // column orthogonality
    for (const auto& chi : chars) {
        CyclotomicNumber s = CyclotomicNumber::zero();
        for (uint64_t i = 0; i < G.size(); ++i) s += chi(G.element_at(i));
        if (chi.is_trivial())
            CHECK(s.rational_value() == 6);
        else
            CHECK(s.is_zero());
    }
    // row orthogonality
    for (uint64_t i = 0; i < G.size(); ++i) {
        CyclotomicNumber s = CyclotomicNumber::zero();
        for (const auto& chi : chars) s += chi(G.element_at(i));
        if (i == 0)
            CHECK(s.rational_value() == 6);
        else
            CHECK(s.is_zero());
    }
    // multiplicativity
    Rng rng(1009);
    for (const auto& chi : chars)
        for (int it = 0; it < 5; ++it) {
            GroupElt a = G.element_at(rng.below(G.size()));
            GroupElt b = G.element_at(rng.below(G.size()));
            CHECK(chi(G.add(a, b)) == chi(a) * chi(b));
        }
    CHECK(chars[4].order() == 6);
}

TEST_CASE("idempotents resolve the identity") {
    FiniteAbelianGroup G({4});
    auto chars = all_characters(G);
    GroupRingElt sum = GroupRingElt::zero(G);
    for (const auto& chi : chars) {
        GroupRingElt e = character_idempotent(chi);
        CHECK(e * e == e);
        sum += e;
        for (const auto& chi2 : chars) {
            if (chi == chi2) continue;
            CHECK((e * character_idempotent(chi2)).is_zero());
        }
        // chi(e_chi) = 1, chi'(e_chi) = 0
        CHECK(e.chi_component(chi) == CyclotomicNumber::one());
    }
    CHECK(sum == GroupRingElt::one(G));

    Subgroup H(G, {{2}});
    GroupRingElt eH = subgroup_idempotent(G, H.elements());
    CHECK(eH * eH == eH);
    // h * e_H = e_H
    CHECK(GroupRingElt::basis(G, {2}) * eH == eH);
}

TEST_CASE("group ring arithmetic") {
    FiniteAbelianGroup G({2, 3});
    Rng rng(1010);
    auto chars = all_characters(G);
    for (int it = 0; it < 10; ++it) {
        GroupRingElt x(G), y(G);
        for (int t = 0; t < 4; ++t) {
            x.add_term(G.element_at(rng.below(G.size())), CyclotomicNumber(rng.rational(5, 3)));
            y.add_term(G.element_at(rng.below(G.size())), CyclotomicNumber(rng.rational(5, 3)));
        }
        CHECK((x * y).sharp() == x.sharp() * y.sharp());
        CHECK(x.sharp().sharp() == x);
        for (const auto& chi : chars) {
            CHECK((x * y).chi_component(chi) == x.chi_component(chi) * y.chi_component(chi));
            CHECK((x + y).chi_component(chi) == x.chi_component(chi) + y.chi_component(chi));
            // sharp pairs with the inverse character
            CHECK(x.sharp().chi_component(chi) == x.chi_component(chi.inverse_char()));
        }
        // Fourier inversion: sum_chi e_chi chi(x) = x
        GroupRingElt rec = GroupRingElt::zero(G);
        for (const auto& chi : chars)
            rec += character_idempotent(chi).scale(x.chi_component(chi));
        CHECK(rec == x);
    }
}

TEST_CASE("group ring determinants") {
    FiniteAbelianGroup G({6});
    Rng rng(1011);
    auto rand_elt = [&](int terms) {
        GroupRingElt x(G);
        for (int t = 0; t < terms; ++t)
            x.add_term(G.element_at(rng.below(G.size())), CyclotomicNumber(rng.rational(4, 2)));
        return x;
    };
    for (int it = 0; it < 8; ++it) {
        GroupRingElt a = rand_elt(3);
        CHECK(group_ring_det(G, {{a}}) == a);
        GroupRingElt b = rand_elt(3), c = rand_elt(3), d = rand_elt(3);
        CHECK(group_ring_det(G, {{a, b}, {c, d}}) == a * d - b * c);
        // multiplicativity on 2x2
        GroupRingElt e = rand_elt(2), f = rand_elt(2), g = rand_elt(2), h = rand_elt(2);
        GroupRingElt m11 = a * e + b * g, m12 = a * f + b * h;
        GroupRingElt m21 = c * e + d * g, m22 = c * f + d * h;
        CHECK(group_ring_det(G, {{m11, m12}, {m21, m22}}) ==
              group_ring_det(G, {{a, b}, {c, d}}) * group_ring_det(G, {{e, f}, {g, h}}));
    }
}

TEST_CASE("cyclotomic determinant") {
    Rng rng(1012);
    for (int it = 0; it < 10; ++it) {
        std::vector<std::vector<CyclotomicNumber>> m(3, std::vector<CyclotomicNumber>(3));
        for (auto& row : m)
            for (auto& x : row) x = random_cyclo(rng, 4);
        // cofactor expansion along the first row
        auto minor = [&](size_t i, size_t j) {
            std::vector<std::vector<CyclotomicNumber>> s;
            for (size_t a = 0; a < 3; ++a) {
                if (a == i) continue;
                std::vector<CyclotomicNumber> row;
                for (size_t b = 0; b < 3; ++b)
                    if (b != j) row.push_back(m[a][b]);
                s.push_back(row);
            }
            return s[0][0] * s[1][1] - s[0][1] * s[1][0];
        };
        CyclotomicNumber ref = m[0][0] * minor(0, 0) - m[0][1] * minor(0, 1) + m[0][2] * minor(0, 2);
        CHECK(cyclotomic_det(m) == ref);
    }
}

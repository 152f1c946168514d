#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "factoriza/field.hpp"

#include <set>

using namespace factoriza;

// independent oracle: least primitive root mod p by brute force over residues
static uint32_t least_primitive_root(uint32_t p) {
    for (uint32_t a = 2; a < p; a++) {
        uint32_t v = a % p, ord = 1;
        while (v != 1) { v = (uint64_t)v * a % p; ord++; }
        if (ord == p - 1) return a;
    }
    return 1;
}

TEST_CASE("make_field basics") {
    const FieldTable& F7 = make_field(7, 1);
    CHECK(F7.q == 7);
    CHECK(F7.generator == 3);
    CHECK(F7.generator == least_primitive_root(7));

    const FieldTable& F2 = make_field(2, 1);
    CHECK(F2.q == 2);
    CHECK(F2.generator == 1);

    const FieldTable& F9 = make_field(3, 2);
    CHECK(F9.q == 9);
    // oracle: enumerate x^2 over all 8 nonzero elements
    std::set<felt> squares;
    for (felt x = 1; x < 9; x++) squares.insert(F9.mul(x, x));
    CHECK(squares.size() == 4);

    CHECK_THROWS(make_field(6, 1));
    CHECK_THROWS(make_field(2, 17));
}

TEST_CASE("field axioms exhaustively for q <= 512") {
    for (auto [p, f] : std::vector<std::pair<uint32_t, uint32_t>>{
             {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 6}, {2, 9}, {3, 1}, {3, 2}, {3, 4},
             {5, 1}, {5, 2}, {7, 2}, {11, 1}, {13, 1}, {19, 1}, {23, 1}, {2, 8}, {3, 5}}) {
        const FieldTable& F = make_field(p, f);
        REQUIRE(F.q <= 512);
        // x^(q-1) = 1 for all x != 0
        for (felt x = 1; x < F.q; x++) CHECK(F.pow(x, F.q - 1) == 1);
        // distributivity spot-grid and associativity on a subgrid
        for (felt a = 0; a < F.q; a += (F.q > 64 ? 7 : 1))
            for (felt b = 0; b < F.q; b += (F.q > 64 ? 5 : 1))
                for (felt c = 0; c < F.q; c += (F.q > 64 ? 11 : 1)) {
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                }
        // frobenius(.,1) additive and multiplicative, exhaustive
        for (felt a = 0; a < F.q; a++)
            for (felt b = 0; b < F.q; b++) {
                CHECK(F.frobenius(F.add(a, b), 1) == F.add(F.frobenius(a, 1), F.frobenius(b, 1)));
                CHECK(F.frobenius(F.mul(a, b), 1) == F.mul(F.frobenius(a, 1), F.frobenius(b, 1)));
            }
        // multiplicative group generated by the primitive element
        std::set<felt> seen;
        felt v = 1;
        for (uint32_t k = 0; k < F.q - 1; k++) { seen.insert(v); v = F.mul(v, F.generator); }
        CHECK(seen.size() == F.q - 1);
    }
}

TEST_CASE("frobenius") {
    const FieldTable& F4 = make_field(2, 2);
    CHECK(F4.frobenius(0, 3) == 0);
    // the nontrivial automorphism of GF(4) swaps the two non-subfield elements
    felt w = F4.generator;
    CHECK(F4.frobenius(w, 1) == F4.mul(w, w));
    CHECK(F4.frobenius(F4.mul(w, w), 1) == w);

    const FieldTable& F9 = make_field(3, 2);
    for (felt x = 0; x < 9; x++) CHECK(F9.frobenius(x, 2) == x);
}

TEST_CASE("primitive prime divisor") {
    CHECK(!primitive_prime_divisor(2, 6).has_value());
    CHECK(!primitive_prime_divisor(3, 2).has_value());
    CHECK(!primitive_prime_divisor(7, 2).has_value());
    CHECK(!primitive_prime_divisor(31, 2).has_value());
    CHECK(primitive_prime_divisor(2, 4) == 5);
    CHECK(primitive_prime_divisor(2, 3) == 7);
    CHECK(primitive_prime_divisor(3, 3) == 13);
    CHECK(primitive_prime_divisor(5, 2) == 3);
    CHECK(primitive_prime_divisor(5, 4) == 13);
    // whenever defined, r > m
    for (uint64_t q : {2, 3, 4, 5, 7, 8, 9})
        for (uint32_t m = 2; m <= 8; m++) {
            auto r = primitive_prime_divisor(q, m);
            if (r) CHECK(*r > m);
        }
}

TEST_CASE("is_square") {
    const FieldTable& F7 = make_field(7, 1);
    CHECK(F7.is_square(2));  // 3^2 = 2 mod 7
    CHECK(F7.is_square(0));
    const FieldTable& F3 = make_field(3, 1);
    CHECK(!F3.is_square(2));
    // square classes have equal size (q-1)/2 for odd q
    for (auto [p, f] : std::vector<std::pair<uint32_t, uint32_t>>{{3, 2}, {5, 1}, {7, 1}, {3, 3}, {11, 1}}) {
        const FieldTable& F = make_field(p, f);
        uint32_t sq = 0, nsq = 0;
        for (felt x = 1; x < F.q; x++) (F.is_square(x) ? sq : nsq)++;
        CHECK(sq == (F.q - 1) / 2);
        CHECK(nsq == (F.q - 1) / 2);
    }
    // even q: everything is a square
    const FieldTable& F8 = make_field(2, 3);
    for (felt x = 0; x < 8; x++) CHECK(F8.is_square(x));
}

TEST_CASE("polynomial arithmetic and factorization") {
    const FieldTable& F2 = make_field(2, 1);
    // x^23 - 1 over GF(2) factors as (x+1) g1 g2 with deg g1 = deg g2 = 11
    poly::P x23(24, 0);
    x23[23] = 1;
    x23[0] = 1;  // -1 == 1
    auto fac = poly::factor(F2, x23);
    REQUIRE(fac.size() == 3);
    CHECK(poly::deg(fac[0].first) == 1);
    CHECK(poly::deg(fac[1].first) == 11);
    CHECK(poly::deg(fac[2].first) == 11);
    // product of the factors reconstructs the polynomial
    poly::P prod = {1};
    for (auto& [g, e] : fac)
        for (int i = 0; i < e; i++) prod = poly::mul(F2, prod, g);
    CHECK(prod == poly::trim(x23));

    const FieldTable& F9 = make_field(3, 2);
    poly::P a = {2, 0, 1};  // x^2 + 2: reducible over GF(9)? x^2 = -2 = 1 -> roots
    bool irr = poly::is_irreducible(F9, a);
    // oracle: root search
    bool has_root = false;
    for (felt x = 0; x < 9; x++)
        if (poly::eval(F9, a, x) == 0) has_root = true;
    CHECK(irr == !has_root);
}

TEST_CASE("extension field GF(q^n)") {
    // GF(4)^2 = GF(16): x has order 15
    const FieldTable& F4 = make_field(2, 2);
    ExtField E(F4, 2);
    CHECK(E.qn == 16);
    ExtField::elt v = E.x();
    std::set<ExtField::elt> seen;
    ExtField::elt w = 1;
    for (int i = 0; i < 15; i++) { seen.insert(w); w = E.mul(w, v); }
    CHECK(w == 1);
    CHECK(seen.size() == 15);
    // frobenius a -> a^q is additive
    for (ExtField::elt a = 0; a < 16; a++)
        for (ExtField::elt b = 0; b < 16; b++)
            CHECK(E.frob(E.add(a, b)) == E.add(E.frob(a), E.frob(b)));
    // GF(9)^2 = GF(81)
    const FieldTable& F9 = make_field(3, 2);
    ExtField E81(F9, 2);
    CHECK(E81.qn == 81);
    CHECK(E81.pow(E81.x(), 80) == 1);
    CHECK(E81.pow(E81.x(), 40) != 1);
    CHECK(E81.pow(E81.x(), 16) != 1);
}

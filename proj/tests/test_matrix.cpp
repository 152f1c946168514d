#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "factoriza/matrix.hpp"

#include <random>
#include <set>

using namespace factoriza;

// independent oracle: det(tI - A) by cofactor expansion with polynomial entries
static poly::P charpoly_oracle(const Mat& A) {
    const FieldTable& F = *A.F;
    uint32_t n = A.rows;
    std::vector<std::vector<poly::P>> M(n, std::vector<poly::P>(n));
    for (uint32_t i = 0; i < n; i++)
        for (uint32_t j = 0; j < n; j++) {
            poly::P e;
            if (A.at(i, j)) e = {F.neg(A.at(i, j))};
            if (i == j) e = poly::add(F, e, poly::P{0, 1});
            M[i][j] = e;
        }
    // recursive cofactor along first row
    std::function<poly::P(std::vector<std::vector<poly::P>>&)> det =
        [&](std::vector<std::vector<poly::P>>& m) -> poly::P {
        size_t k = m.size();
        if (k == 1) return m[0][0];
        poly::P acc;
        for (size_t j = 0; j < k; j++) {
            std::vector<std::vector<poly::P>> sub(k - 1, std::vector<poly::P>(k - 1));
            for (size_t r = 1; r < k; r++) {
                size_t cc = 0;
                for (size_t c = 0; c < k; c++) {
                    if (c == j) continue;
                    sub[r - 1][cc++] = m[r][c];
                }
            }
            poly::P term = poly::mul(F, m[0][j], det(sub));
            if (j % 2)
                acc = poly::sub(F, acc, term);
            else
                acc = poly::add(F, acc, term);
        }
        return acc;
    };
    return poly::monic(F, det(M));
}

static Mat random_invertible(const FieldTable& F, uint32_t n, std::mt19937_64& rng) {
    while (true) {
        Mat m(F, n, n);
        for (auto& x : m.a) x = static_cast<felt>(rng() % F.q);
        if (rank(m) == n) return m;
    }
}

TEST_CASE("rank, rref, kernel") {
    const FieldTable& F = make_field(2, 1);
    Mat I = Mat::identity(F, 5);
    CHECK(rank(I) == 5);
    CHECK(row_kernel(I).dim() == 0);
    Mat Z(F, 4, 4);
    CHECK(rank(Z) == 0);
    CHECK(row_kernel(Z).dim() == 4);

    // rank-nullity on random matrices over several fields
    std::mt19937_64 rng(7);
    for (auto [p, f] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 1}}) {
        const FieldTable& Fq = make_field(p, f);
        for (int t = 0; t < 20; t++) {
            uint32_t r = 1 + rng() % 5, c = 1 + rng() % 5;
            Mat m(Fq, r, c);
            for (auto& x : m.a) x = static_cast<felt>(rng() % Fq.q);
            CHECK(rank(m) + row_kernel(m).dim() == r);
            // kernel rows actually annihilate
            Subspace K = row_kernel(m);
            for (uint32_t i = 0; i < K.dim(); i++) {
                std::vector<felt> v(r);
                for (uint32_t j = 0; j < r; j++) v[j] = K.basis.at(i, j);
                auto w = m.apply_row(v);
                for (felt x : w) CHECK(x == 0);
            }
        }
    }
}

TEST_CASE("charpoly against cofactor oracle") {
    std::mt19937_64 rng(11);
    for (auto [p, f] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        const FieldTable& F = make_field(p, f);
        for (int t = 0; t < 15; t++) {
            uint32_t n = 1 + rng() % 4;
            Mat m(F, n, n);
            for (auto& x : m.a) x = static_cast<felt>(rng() % F.q);
            CHECK(charpoly(m) == charpoly_oracle(m));
        }
    }
}

TEST_CASE("singer cycles") {
    // (2,5): c of order 24; smallest power that is scalar is 6
    const FieldTable& F5 = make_field(5, 1);
    SingerData s25 = singer(F5, 2);
    CHECK(element_order(s25.c, 24) == 24);
    uint32_t k = 1;
    Mat pw = s25.c;
    while (!pw.is_scalar()) { pw = pw * s25.c; k++; }
    CHECK(k == 6);

    // (1, q): c = [primitive element] of order q-1
    SingerData s1 = singer(F5, 1);
    CHECK(element_order(s1.c, 4) == 4);

    // (3, 2): order 7, irreducible; oracle enumerates all 1- and 2-subspaces
    const FieldTable& F2 = make_field(2, 1);
    SingerData s32 = singer(F2, 3);
    CHECK(element_order(s32.c, 7) == 7);
    int invariant_proper = 0;
    for (uint32_t mask = 1; mask < 8; mask++) {
        // 1-subspace spanned by v=mask bits
        std::vector<felt> v = {(felt)(mask & 1), (felt)((mask >> 1) & 1), (felt)((mask >> 2) & 1)};
        auto w = s32.c.apply_row(v);
        bool prop = (w == v);  // over GF(2) invariance of <v> means w == v (only scalar is 1)
        if (prop) invariant_proper++;
    }
    CHECK(invariant_proper == 0);
    CHECK(invariant_summands(s32.c, Subspace::full(F2, 3), 1).empty());
    CHECK(invariant_summands(s32.c, Subspace::full(F2, 3), 2).empty());
    auto whole = invariant_summands(s32.c, Subspace::full(F2, 3), 3);
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].dim() == 3);

    // phi conjugates c to c^q
    for (auto [p, f, n] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{
             {2, 1, 3}, {2, 1, 4}, {3, 1, 2}, {2, 2, 2}, {3, 1, 4}, {5, 1, 2}}) {
        const FieldTable& F = make_field(p, f);
        SingerData s = singer(F, n);
        CHECK(element_order(s.c, s.order) == s.order);
        Mat lhs = s.phi.inverse() * s.c * s.phi;
        CHECK(lhs == s.c.pow(F.q));
    }
}

TEST_CASE("jordan partition of unipotent matrices") {
    const FieldTable& F = make_field(2, 1);
    Mat I6 = Mat::identity(F, 6);
    auto part = jordan_partition_unipotent(I6);
    CHECK(part == std::vector<uint32_t>(6, 1));

    // block J2+J2+J1+J1 built by hand
    Mat u = Mat::identity(F, 6);
    u.at(0, 1) = 1;
    u.at(2, 3) = 1;
    auto p2 = jordan_partition_unipotent(u);
    CHECK(p2 == std::vector<uint32_t>{2, 2, 1, 1});

    // partition sums to the dimension; involutions over even q give [2^s, 1^(n-2s)]
    const FieldTable& F4 = make_field(2, 2);
    Mat v = Mat::identity(F4, 5);
    v.at(0, 2) = 3;
    v.at(1, 4) = 1;
    REQUIRE((v * v).is_identity());
    auto p3 = jordan_partition_unipotent(v);
    uint32_t sum = 0;
    for (auto b : p3) sum += b;
    CHECK(sum == 5);
    uint32_t s = rank(v - Mat::identity(F4, 5));
    CHECK(p3 == std::vector<uint32_t>{2, 2, 1});
    CHECK(s == 2);

    // over GF(2) the swap is unipotent (a transvection); over GF(3) it is not
    Mat sw2(F, 2, 2);
    sw2.at(0, 1) = 1;
    sw2.at(1, 0) = 1;
    CHECK(jordan_partition_unipotent(sw2) == std::vector<uint32_t>{2});
    const FieldTable& F3 = make_field(3, 1);
    Mat notu(F3, 2, 2);
    notu.at(0, 1) = 1;
    notu.at(1, 0) = 1;
    CHECK_THROWS(jordan_partition_unipotent(notu));
}

TEST_CASE("exterior square") {
    const FieldTable& F = make_field(3, 1);
    Mat I4 = Mat::identity(F, 4);
    CHECK(exterior_square(I4).is_identity());

    Mat d(F, 2, 2);
    d.at(0, 0) = 2;
    d.at(1, 1) = 2;
    Mat w = exterior_square(d);
    REQUIRE(w.rows == 1);
    CHECK(w.at(0, 0) == F.mul(2, 2));

    // multiplicative on >= 100 random pairs
    std::mt19937_64 rng(3);
    for (auto [p, f, n] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{{2, 1, 4}, {3, 1, 3}, {2, 2, 3}}) {
        const FieldTable& Fq = make_field(p, f);
        for (int t = 0; t < 40; t++) {
            Mat g = random_invertible(Fq, n, rng), h = random_invertible(Fq, n, rng);
            CHECK(exterior_square(g * h) == exterior_square(g) * exterior_square(h));
        }
    }
}

TEST_CASE("twisted tensor") {
    const FieldTable& F4 = make_field(2, 2);
    CHECK(twisted_tensor(Mat::identity(F4, 2)).is_identity());

    // scalar lambda on dim 1 -> [lambda^(q+1)] (norm)
    for (felt lam = 1; lam < 4; lam++) {
        Mat m(F4, 1, 1);
        m.at(0, 0) = lam;
        Mat t = twisted_tensor(m);
        CHECK(t.at(0, 0) == F4.mul(lam, F4.frobenius(lam, 1)));
    }

    std::mt19937_64 rng(5);
    for (int t = 0; t < 60; t++) {
        Mat g = random_invertible(F4, 2, rng), h = random_invertible(F4, 2, rng);
        CHECK(twisted_tensor(g * h) == twisted_tensor(g) * twisted_tensor(h));
    }
    const FieldTable& F9 = make_field(3, 2);
    for (int t = 0; t < 40; t++) {
        Mat g = random_invertible(F9, 2, rng), h = random_invertible(F9, 2, rng);
        CHECK(twisted_tensor(g * h) == twisted_tensor(g) * twisted_tensor(h));
    }
    const FieldTable& F3 = make_field(3, 1);
    CHECK_THROWS(twisted_tensor(Mat::identity(F3, 2)));
}

TEST_CASE("invariant summands degenerate case: identity") {
    const FieldTable& F = make_field(2, 1);
    Mat I3 = Mat::identity(F, 3);
    auto subs = invariant_summands(I3, Subspace::full(F, 3), 1);
    CHECK(subs.size() == 7);  // all 1-spaces of GF(2)^3
    const FieldTable& F3 = make_field(3, 1);
    auto subs3 = invariant_summands(Mat::identity(F3, 2), Subspace::full(F3, 2), 1);
    CHECK(subs3.size() == 4);  // (9-1)/2
}

TEST_CASE("mult and frobenius matrices of an extension") {
    const FieldTable& F2 = make_field(2, 1);
    ExtField E(F2, 4);
    // mult_matrix is a ring homomorphism and mult_matrix(x) is the companion matrix
    SingerData s = singer(F2, 4);
    CHECK(mult_matrix(E, E.x()) == s.c);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; t++) {
        ExtField::elt a = rng() % E.qn, b = rng() % E.qn;
        CHECK(mult_matrix(E, E.mul(a, b)) == mult_matrix(E, a) * mult_matrix(E, b));
    }
    // frobenius matrix conjugates mult(a) to mult(a^q)
    Mat Fr = frobenius_matrix(E, 1);
    for (int t = 0; t < 20; t++) {
        ExtField::elt a = rng() % E.qn;
        CHECK(Fr.inverse() * mult_matrix(E, a) * Fr == mult_matrix(E, E.frob(a)));
    }
}

TEST_CASE("jordan partitions of radical involutions") {
    // u(A) with A = I_3 in a 6-dimensional symplectic-style block form:
    // rank 3 gives [J2^3]
    const FieldTable& F2 = make_field(2, 1);
    Mat u = Mat::identity(F2, 6);
    for (uint32_t i = 0; i < 3; i++) u.at(3 + i, i) = 1;
    CHECK(jordan_partition_unipotent(u) == std::vector<uint32_t>{2, 2, 2});
    // an alternating A of rank 2 on an 8-dimensional space: [J2^2, J1^4]
    Mat v = Mat::identity(F2, 8);
    v.at(4, 1) = 1;
    v.at(5, 0) = 1;  // A = E12 + E21
    CHECK(jordan_partition_unipotent(v) == std::vector<uint32_t>{2, 2, 1, 1, 1, 1});
    // involutions over even q have partition [2^s, 1^(dim-2s)] with
    // s = rank(u - 1)
    uint32_t s = rank(v - Mat::identity(F2, 8));
    CHECK(s == 2);
}

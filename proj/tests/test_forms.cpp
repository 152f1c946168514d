#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "factoriza/forms.hpp"

#include <random>

using namespace factoriza;

static std::shared_ptr<const ClassicalForm> make(FormKind k, uint32_t dim, const FieldTable& F, TypeSign s) {
    return std::make_shared<const ClassicalForm>(standard_form(k, dim, F, s));
}

// orthogonal transvection for even q: v -> v + (B(v,a)/Q(a)) a, a nonsingular
static Mat orth_transvection(const ClassicalForm& f, const std::vector<felt>& a) {
    const FieldTable& F = *f.F;
    felt qa = f.qval(a);
    REQUIRE(qa != 0);
    Mat t = Mat::identity(F, f.dim);
    std::vector<felt> e(f.dim, 0);
    for (uint32_t i = 0; i < f.dim; i++) {
        e.assign(f.dim, 0);
        e[i] = 1;
        felt c = F.div(f.bil(e, a), qa);
        for (uint32_t j = 0; j < f.dim; j++) t.at(i, j) = F.add(t.at(i, j), F.mul(c, a[j]));
    }
    return t;
}

TEST_CASE("standard forms are what they claim") {
    const FieldTable& F2 = make_field(2, 1);
    auto sp4 = standard_form(FormKind::symplectic, 4, F2, TypeSign::none);
    std::vector<felt> e1 = {1, 0, 0, 0}, f1 = {0, 0, 1, 0}, e2 = {0, 1, 0, 0}, f2 = {0, 0, 0, 1};
    CHECK(sp4.bil(e1, f1) == 1);
    CHECK(sp4.bil(e2, f2) == 1);
    CHECK(sp4.bil(e1, e2) == 0);
    CHECK(rank(sp4.gram) == 4);

    auto qp8 = standard_form(FormKind::quadratic, 8, F2, TypeSign::plus);
    for (uint32_t i = 0; i < 8; i++) CHECK(qp8.qdiag[i] == 0);
    CHECK(qp8.gram == standard_form(FormKind::symplectic, 8, F2, TypeSign::none).gram);

    const FieldTable& F3 = make_field(3, 1);
    auto q5 = make(FormKind::quadratic, 5, F3, TypeSign::odd_dim);
    CHECK(rank(q5->gram) == 5);
    // <e_2 + mu f_2> with mu = 2 (the non-square mod 3) is a minus-type point
    auto dom = enumerate_domain(q5, DomainKind::minus_nondegenerate_points);
    CHECK(dom.size() == 36);  // q^m (q^m - 1) / 2 at m = 2, q = 3
    std::vector<felt> w = {0, 1, 0, 2, 0};
    CHECK_NOTHROW(dom.point_of(w));
}

TEST_CASE("domain counts match the index formulas") {
    // hermitian dim 4 over GF(4): 40 nondegenerate points, 45 isotropic
    const FieldTable& F4 = make_field(2, 2);
    auto h4 = make(FormKind::hermitian, 4, F4, TypeSign::none);
    CHECK(enumerate_domain(h4, DomainKind::nondegenerate_points).size() == 40);
    CHECK(enumerate_domain(h4, DomainKind::singular_points).size() == 45);
    CHECK(enumerate_domain(h4, DomainKind::totally_singular_kspaces, 2).size() == 27);

    // quadratic dim 8 q=2 type +: 120 nonsingular points
    const FieldTable& F2 = make_field(2, 1);
    auto q8 = make(FormKind::quadratic, 8, F2, TypeSign::plus);
    CHECK(enumerate_domain(q8, DomainKind::nonsingular_points).size() == 120);
    CHECK(enumerate_domain(q8, DomainKind::singular_points).size() == 135);

    // hermitian dim 3 over GF(9): 28 isotropic, 63 nondegenerate
    const FieldTable& F9 = make_field(3, 2);
    auto h3 = make(FormKind::hermitian, 3, F9, TypeSign::none);
    CHECK(enumerate_domain(h3, DomainKind::singular_points).size() == 28);
    CHECK(enumerate_domain(h3, DomainKind::nondegenerate_points).size() == 63);

    // plus-type dim 8 over GF(3): nondegenerate points split into two classes
    const FieldTable& F3 = make_field(3, 1);
    auto q83 = make(FormKind::quadratic, 8, F3, TypeSign::plus);
    auto nd = enumerate_domain(q83, DomainKind::nondegenerate_points);
    CHECK(nd.size() == 2160);  // 1080 in each square class
    uint32_t sq = 0;
    for (auto& v : nd.points)
        if (F3.is_square(q83->qval(v))) sq++;
    CHECK(sq == 1080);

    // minus-type quadratic spaces have the minus-type singular point counts
    auto qm6 = make(FormKind::quadratic, 6, F2, TypeSign::minus);
    CHECK(enumerate_domain(qm6, DomainKind::singular_points).size() == 27);
    auto qm4 = make(FormKind::quadratic, 4, F4, TypeSign::minus);
    CHECK(enumerate_domain(qm4, DomainKind::singular_points).size() == 17);
}

TEST_CASE("is_isometry") {
    const FieldTable& F2 = make_field(2, 1);
    auto sp6 = standard_form(FormKind::symplectic, 6, F2, TypeSign::none);
    CHECK(sp6.is_isometry(Mat::identity(F2, 6)));
    // u(A): f_i -> f_i + sum A_ij e_j is symplectic iff A is symmetric (even q)
    Mat u = Mat::identity(F2, 6);
    u.at(3, 0) = 1;  // f1 -> f1 + e1
    CHECK(sp6.is_isometry(u));
    Mat bad = Mat::identity(F2, 6);
    bad.at(3, 1) = 1;  // f1 -> f1 + e2 alone
    CHECK(!sp6.is_isometry(bad));
}

TEST_CASE("dickson invariant: transvections and additivity") {
    const FieldTable& F2 = make_field(2, 1);
    auto q6 = standard_form(FormKind::quadratic, 6, F2, TypeSign::minus);
    CHECK(dickson_invariant(Mat::identity(F2, 6), q6) == 0);

    std::vector<std::vector<felt>> nonsing;
    for (uint32_t mask = 1; mask < 64; mask++) {
        std::vector<felt> v(6);
        for (uint32_t i = 0; i < 6; i++) v[i] = (mask >> i) & 1;
        if (q6.qval(v) != 0) nonsing.push_back(v);
    }
    REQUIRE(nonsing.size() > 10);
    for (auto& a : nonsing) {
        Mat t = orth_transvection(q6, a);
        REQUIRE(q6.is_isometry(t));
        CHECK(dickson_invariant(t, q6) == 1);
    }
    std::mt19937_64 rng(17);
    auto random_isom = [&]() {
        Mat g = Mat::identity(F2, 6);
        int len = 1 + rng() % 5;
        for (int i = 0; i < len; i++) g = g * orth_transvection(q6, nonsing[rng() % nonsing.size()]);
        return g;
    };
    for (int t = 0; t < 120; t++) {
        Mat g = random_isom(), h = random_isom();
        CHECK(dickson_invariant(g * h, q6) == (dickson_invariant(g, q6) ^ dickson_invariant(h, q6)));
    }
}

TEST_CASE("involution types in Sp") {
    const FieldTable& F2 = make_field(2, 1);
    auto sp6 = standard_form(FormKind::symplectic, 6, F2, TypeSign::none);
    auto uA = [&](std::initializer_list<std::initializer_list<felt>> rowsA) {
        Mat u = Mat::identity(F2, 6);
        uint32_t i = 0;
        for (auto& r : rowsA) {
            uint32_t j = 0;
            for (felt x : r) u.at(3 + i, j++) = x;
            i++;
        }
        REQUIRE(sp6.is_isometry(u));
        REQUIRE((u * u).is_identity());
        return u;
    };
    Mat a2 = uA({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
    auto t1 = involution_type(a2, sp6);
    CHECK(t1.letter == 'a');
    CHECK(t1.s == 2);
    Mat b1 = uA({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    auto t2 = involution_type(b1, sp6);
    CHECK(t2.letter == 'b');
    CHECK(t2.s == 1);
    Mat b3 = uA({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto t3 = involution_type(b3, sp6);
    CHECK(t3.letter == 'b');
    CHECK(t3.s == 3);
    Mat c2 = uA({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
    auto t4 = involution_type(c2, sp6);
    CHECK(t4.letter == 'c');
    CHECK(t4.s == 2);

    // letter is invariant under a change of symplectic basis
    const FieldTable& F4 = make_field(2, 2);
    auto sp4 = standard_form(FormKind::symplectic, 4, F4, TypeSign::none);
    Mat z = Mat::identity(F4, 4);
    z.at(2, 0) = 1;
    z.at(3, 1) = 3;
    REQUIRE(sp4.is_isometry(z));
    auto tz = involution_type(z, sp4);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; t++) {
        Mat g = Mat::identity(F4, 4);
        felt x = 1 + rng() % 3, y = 1 + rng() % 3, w = 1 + rng() % 3;
        g.at(2, 0) = x;
        g.at(3, 1) = y;
        g.at(2, 1) = w;
        g.at(3, 0) = w;
        REQUIRE(sp4.is_isometry(g));
        Mat conj = g.inverse() * z * g;
        auto tc = involution_type(conj, sp4);
        CHECK(tc.letter == tz.letter);
        CHECK(tc.s == tz.s);
    }
}

TEST_CASE("arf criterion against singular-vector counting") {
    for (auto [p, f, dim] : std::vector<std::tuple<uint32_t, uint32_t, uint32_t>>{{2, 1, 4}, {2, 1, 6}, {2, 2, 4}}) {
        const FieldTable& F = make_field(p, f);
        auto sp = standard_form(FormKind::symplectic, dim, F, TypeSign::none);
        uint32_t m = dim / 2;
        uint64_t qm = 1, qm1 = 1;
        for (uint32_t i = 0; i < m; i++) qm *= F.q;
        for (uint32_t i = 0; i + 1 < m; i++) qm1 *= F.q;
        uint64_t total = 1;
        for (uint32_t i = 0; i < dim; i++) total *= F.q;
        uint64_t minus_count = 0;
        for (uint64_t t = 0; t < total; t++) {
            std::vector<felt> qv(dim);
            uint64_t tt = t;
            for (uint32_t i = 0; i < dim; i++) { qv[i] = static_cast<felt>(tt % F.q); tt /= F.q; }
            uint64_t sing = 0;  // singular vectors including 0
            for (uint64_t vv = 0; vv < total; vv++) {
                std::vector<felt> v(dim);
                uint64_t vt = vv;
                for (uint32_t i = 0; i < dim; i++) { v[i] = static_cast<felt>(vt % F.q); vt /= F.q; }
                felt val = 0;
                for (uint32_t i = 0; i < dim; i++) {
                    if (!v[i]) continue;
                    val = F.add(val, F.mul(F.mul(v[i], v[i]), qv[i]));
                    for (uint32_t j = i + 1; j < dim; j++)
                        if (v[j] && sp.gram.at(i, j)) val = F.add(val, F.mul(F.mul(v[i], v[j]), sp.gram.at(i, j)));
                }
                if (val == 0) sing++;
            }
            bool minus_by_count = sing == (qm + 1) * (qm1 - 1) + 1;
            bool plus_by_count = sing == (qm - 1) * (qm1 + 1) + 1;
            REQUIRE((minus_by_count || plus_by_count));
            CHECK(arf_minus(F, qv, sp.gram) == minus_by_count);
            if (minus_by_count) minus_count++;
        }
        CHECK(minus_count == qm * (qm - 1) / 2);
    }
}

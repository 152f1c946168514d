#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "factoriza/groups.hpp"
#include "factoriza/verify.hpp"

using namespace factoriza;

TEST_CASE("case 1 instances") {
    auto i32 = build_case1(3, 2);
    auto r32 = verify(i32);
    INFO(r32.text());
    CHECK(r32.pass);
    CHECK(r32.h_order == 7);
    CHECK(*r32.exact);

    auto i25 = build_case1(2, 5);
    auto r25 = verify(i25);
    CHECK(r25.pass);
    CHECK(r25.h_order == 6);

    auto i42 = build_case1(4, 2);
    auto r42 = verify(i42);
    CHECK(r42.pass);
    CHECK(r42.h_order == 15);

    auto d = divisibility_check(i32);
    CHECK(d.holds);  // 7 divides 7
}

TEST_CASE("case 2 at q = 2 and 3, with the partial-radical control") {
    auto i2 = build_case2(2);
    auto r2 = verify(i2);
    INFO(r2.text());
    CHECK(r2.pass);
    CHECK(r2.h_order == 56);
    CHECK(r2.delta == 28);
    CHECK(r2.stab_order == 2);

    auto i3 = build_case2(3);
    auto r3 = verify(i3);
    INFO(r3.text());
    CHECK(r3.pass);
    CHECK(r3.h_order == 351);
    CHECK(r3.delta == 117);
    CHECK(r3.stab_order == 3);
    // exactness is impossible: |H meet G0| does not divide |G0 : K meet G0|
    auto d = divisibility_check(i3);
    CHECK(!d.holds);
    CHECK(d.socle_H == 351);
    CHECK(d.socle_index == 117);

    auto c = control_case2_partial_radical(3);
    auto rc = verify(c);
    CHECK(rc.pass);
    CHECK(!rc.transitive);
}

TEST_CASE("case 3 exactness pattern") {
    // (3, 2): at m = 3 the radical has two 3-dimensional summands (the X-type
    // and the exterior-square one); the verifier tests each, and the X-type
    // candidate (all ranks m, type b3) passes with an exact factorization
    auto v32 = build_case3(3, 2);
    REQUIRE(v32.size() >= 1);
    bool found_pass = false;
    for (auto& inst : v32) {
        auto r = verify(inst);
        INFO(r.text());
        if (r.pass) {
            found_pass = true;
            CHECK(r.h_order == 56);
            CHECK(*r.exact);
            for (auto& d : inst.W_desc) CHECK(d == "rank 3 (b3)");
        }
    }
    CHECK(found_pass);

    // (2, 2): transitive on 6 minus forms, NOT exact on the labeled domain
    auto v22 = build_case3(2, 2);
    REQUIRE(!v22.empty());
    auto r22 = verify(v22[0]);
    INFO(r22.text());
    CHECK(r22.pass);
    CHECK(r22.transitive);
    CHECK(!*r22.exact);
    for (auto& d : v22[0].W_desc) CHECK(d == "rank 2 (c2)");

    // (2, 4)
    auto v24 = build_case3(2, 4);
    auto r24 = verify(v24[0]);
    INFO(r24.text());
    CHECK(r24.pass);
    CHECK(r24.h_order == 240);
    CHECK(!*r24.exact);

    // case 4 delegates to case 3 at m = 2
    auto v4 = build_case4(2);
    CHECK(verify(v4[0]).pass);

    // control: W alone has q^m - 1 orbits on the labeled domain
    auto c = control_case3_radical_only(3, 2);
    auto rc = verify(c);
    INFO(rc.text());
    CHECK(rc.pass);
    CHECK(!rc.transitive);
}

TEST_CASE("case 6 at (2,2) and (2,3)") {
    auto v22 = build_case6(2, 2);
    REQUIRE(v22.size() == 1);  // m^2 = 2m: W is the whole radical
    auto r = verify(v22[0]);
    INFO(r.text());
    CHECK(r.pass);
    CHECK(r.h_order == 80);
    CHECK(r.delta == 40);
    // rank census: exactly 5 rank-1 elements
    uint32_t rank1 = 0;
    for (auto& d : v22[0].W_desc)
        if (d == "rank 1") rank1++;
    CHECK(rank1 == 5);

    auto v23 = build_case6(2, 3);
    auto r23 = verify(v23[0]);
    INFO(r23.text());
    CHECK(r23.pass);
    CHECK(r23.h_order == 1620);
    CHECK(r23.delta == 540);
}

TEST_CASE("case 7 at (2,3) and the even-torus control") {
    auto i = build_case7(2, 3);
    auto r = verify(i);
    INFO(r.text());
    CHECK(r.pass);
    CHECK(r.h_order == 216);
    CHECK(r.delta == 36);

    auto c = control_case7_even_torus(2, 3);
    auto rc = verify(c);
    INFO(rc.text());
    CHECK(rc.pass);
    CHECK(!rc.transitive);
    CHECK(rc.orbit_sizes.size() == 2);
}

TEST_CASE("case 8 at (4,2): rank census and orbit counting") {
    auto v = build_case8(4, 2);
    REQUIRE(!v.empty());
    auto r = verify(v[0]);
    INFO(r.text());
    CHECK(r.pass);
    CHECK(r.h_order == 240);
    CHECK(r.delta == 120);
    uint32_t rank2 = 0, rank4 = 0;
    for (auto& d : v[0].W_desc) {
        if (d == "rank 2") rank2++;
        if (d == "rank 4") rank4++;
    }
    CHECK(rank2 == 5);
    CHECK(rank4 == 10);
    // orbit-count identity (120 + 5*24 + 10*0)/240 = 1
    CHECK(*r.orbit_count_lemma == 1);
}

TEST_CASE("verify flags mismatches rather than aborting") {
    auto i = build_case1(3, 2);
    i.expect.ell = 8;           // wrong on purpose
    i.expect.stab_order = 5;    // wrong on purpose
    auto r = verify(i);
    CHECK(!r.pass);
    CHECK(r.mismatches.size() == 2);
}

TEST_CASE("orbit_count_check basics") {
    // trivial H on a domain: n = |Delta|
    PermGroup triv(7, {});
    CHECK(orbit_count_check(triv, {}) == 7);
}

TEST_CASE("the labeled minus-form domain is the coset action of Sp on G/Omega") {
    // build Sp_2m(q) on the labeled domain, take the stabilizer of the base
    // point (an Omega^- image), and match the coset action against the
    // geometric model by an equivariant BFS labeling
    for (auto [m, q] : std::vector<std::pair<uint32_t, uint32_t>>{{2, 2}, {3, 2}}) {
        const FieldTable& F = make_field(2, 1);
        (void)q;
        auto sp = std::make_shared<const ClassicalForm>(
            standard_form(FormKind::symplectic, 2 * m, F, TypeSign::none));
        auto gens = symplectic_gens(*sp);
        auto om = make_omega_forms_domain(sp, gens);
        std::vector<Perm> lab;
        for (const auto& g : gens) {
            Perm p;
            p.img = om.action_images(g);
            lab.push_back(p);
        }
        PermGroup G(om.size(), lab);
        REQUIRE(G.order() == order_sp(2 * m, q));
        PermGroup K = G.point_stabilizer(0);
        CHECK(K.order() == order_omega_even(2 * m, q, -1));
        CosetAction ca = coset_action(G, K);
        REQUIRE(ca.degree == om.size());
        // equivariant bijection: map the base points and propagate by BFS;
        // any conflict would refute the isomorphism of G-sets
        std::vector<Perm> cos;
        for (const auto& g : G.gens) cos.push_back(ca.act(g));
        std::vector<uint32_t> map(om.size(), UINT32_MAX);
        map[0] = 0;
        std::vector<uint32_t> work = {0};
        bool consistent = true;
        while (!work.empty() && consistent) {
            uint32_t x = work.back();
            work.pop_back();
            for (size_t gi = 0; gi < lab.size(); gi++) {
                uint32_t y = lab[gi].img[x];
                uint32_t target = cos[gi].img[map[x]];
                if (map[y] == UINT32_MAX) {
                    map[y] = target;
                    work.push_back(y);
                } else if (map[y] != target) {
                    consistent = false;
                    break;
                }
            }
        }
        CHECK(consistent);
        std::vector<bool> hit(om.size(), false);
        bool bijective = true;
        for (uint32_t v : map) {
            if (v == UINT32_MAX || hit[v]) bijective = false;
            else hit[v] = true;
        }
        CHECK(bijective);
    }
}

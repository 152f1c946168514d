#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "factoriza/groups.hpp"

using namespace factoriza;

TEST_CASE("order formulas") {
    CHECK(order_sl(2, 7) == 336);
    CHECK(order_psl(2, 7) == 168);
    CHECK(order_psl(4, 2) == 20160);
    CHECK(order_psl(4, 3) == 6065280);
    CHECK(order_sp(4, 3) == 51840);
    CHECK(order_sp(6, 2) == 1451520);
    CHECK(order_su(4, 2) == 25920);
    CHECK(order_psu(3, 3) == 6048);
    CHECK(order_psu(3, 8) == 5515776);
    CHECK(order_so_odd(5, 3) == 51840);
    CHECK(order_o_even(6, 2, -1) == 2 * 25920);
    CHECK(order_psp(4, 3) == 25920);
    CHECK(u128_str(order_gl(4, 3)) == "24261120");
}

TEST_CASE("projective groups") {
    PermGroup g1 = psl_projective(2, 7);
    CHECK(g1.degree == 8);
    CHECK(g1.order() == 168);
    PermGroup g2 = pgl_projective(2, 5);
    CHECK(g2.degree == 6);
    CHECK(g2.order() == 120);
    PermGroup g3 = psl_projective(3, 2);
    CHECK(g3.order() == 168);
    CHECK(g3.degree == 7);
    PermGroup g4 = psl_projective(5, 2);
    CHECK(g4.degree == 31);
    CHECK(g4.order() == 9999360);
}

TEST_CASE("classical generator sets reach the full groups") {
    const FieldTable& F2 = make_field(2, 1);
    auto sp6 = std::make_shared<const ClassicalForm>(
        standard_form(FormKind::symplectic, 6, F2, TypeSign::none));
    auto dom = enumerate_domain(sp6, DomainKind::projective_points);
    CHECK(dom.size() == 63);
    PermGroup Sp = perm_image(symplectic_gens(*sp6), dom);
    CHECK(Sp.order() == 1451520);

    auto om6 = std::make_shared<const ClassicalForm>(
        standard_form(FormKind::quadratic, 6, F2, TypeSign::minus));
    auto sdom = enumerate_domain(om6, DomainKind::singular_points);
    PermGroup O6m = perm_image(orthogonal_gens_even(*om6), sdom);
    CHECK(O6m.order() == order_o_even(6, 2, -1));

    const FieldTable& F3 = make_field(3, 1);
    auto q5 = std::make_shared<const ClassicalForm>(
        standard_form(FormKind::quadratic, 5, F3, TypeSign::odd_dim));
    auto mdom = enumerate_domain(q5, DomainKind::minus_nondegenerate_points);
    PermGroup SO5 = perm_image(so_gens_odd(*q5), mdom);
    CHECK(SO5.order() == order_so_odd(5, 3));
    CHECK(SO5.is_transitive());

    const FieldTable& F4 = make_field(2, 2);
    auto h4 = std::make_shared<const ClassicalForm>(
        standard_form(FormKind::hermitian, 4, F4, TypeSign::none));
    auto ndom = enumerate_domain(h4, DomainKind::nondegenerate_points);
    PermGroup SU = perm_image(su_gens(*h4), ndom);
    CHECK(SU.order() == 25920);
}

TEST_CASE("mathieu chain") {
    CHECK(mathieu("M24").order() == 244823040);
    CHECK(mathieu("M23").order() == 10200960);
    CHECK(mathieu("M22").order() == 443520);
    CHECK(mathieu("M22.2").order() == 887040);
    CHECK(mathieu("M12").order() == 95040);
    CHECK(mathieu("M12.2").order() == 190080);
    CHECK(mathieu("M11").order() == 7920);
    CHECK(mathieu("M11").is_transitive());
    CHECK(mathieu("M12").is_transitive());
    CHECK(mathieu("M22.2").is_transitive());
    CHECK(mathieu("M12.2").is_transitive());
    auto& M24 = mathieu("M24");
    RandomWalk rw(M24, 3);
    for (int i = 0; i < 3; i++) {
        Perm x = rw.next();
        if (x.is_identity()) continue;
        CHECK(normal_closure(M24, {x}).order() == M24.order());
    }
    CHECK(mathieu("M24").point_stabilizer(5).order() == 10200960);
    CHECK_THROWS(mathieu("M25"));
    CHECK_THROWS(sporadic_optional("J2.2@100"));
}

TEST_CASE("psp43 models") {
    auto& G27 = psp43_deg27();
    CHECK(G27.order() == 25920);
    CHECK(G27.degree == 27);
    PermGroup G40 = psp43_deg40();
    CHECK(G40.order() == 25920);
    CHECK(G40.degree == 40);
    PermGroup PG40 = pgsp43_deg40();
    CHECK(PG40.order() == 51840);
    CHECK(G27.point_stabilizer(3).order() == 960);
}

TEST_CASE("gammaL1 subgroups") {
    PermGroup amb = gammaL1_group(7, 2);
    CHECK(amb.degree == 48);
    CHECK(amb.order() == 96);
    CHECK(amb.is_nilpotent());

    auto fc = gammaL1_nilpotent(7, 2, "full-cycle");
    CHECK(fc.group.order() == 48);
    CHECK(fc.group.is_regular());
    CHECK(fc.tag == "C48");

    auto sd = gammaL1_nilpotent(7, 2, "SD");
    CHECK(sd.group.order() == 96);
    CHECK(sd.nilpotent);
    CHECK(sd.group.is_transitive());
    CHECK(sd.tag == "C3xSD32");

    auto qq = gammaL1_nilpotent(7, 2, "Q");
    CHECK(qq.group.order() == 48);
    CHECK(qq.nilpotent);
    CHECK(qq.group.is_regular());
    CHECK(qq.tag == "C3xQ16");

    auto dt = gammaL1_nilpotent(7, 2, "D-transitive");
    CHECK(dt.group.degree == 8);
    CHECK(dt.group.order() == 8);
    CHECK(dt.group.is_transitive());
    auto di = gammaL1_nilpotent(7, 2, "D-intransitive");
    CHECK(di.group.order() == 8);
    CHECK(!di.group.is_transitive());

    auto tm = gammaL1_nilpotent(8, 2, "3^{1+2}-minus");
    CHECK(tm.group.degree == 9);
    CHECK(tm.group.order() == 27);
    CHECK(tm.group.is_transitive());
    CHECK(tm.extraspecial == "-");

    CHECK_THROWS(gammaL1_nilpotent(5, 2, "SD"));
    CHECK_THROWS(gammaL1_nilpotent(7, 2, "bogus"));
}

TEST_CASE("example54 small cases") {
    auto e1 = example54(1, 0);
    CHECK(e1.degree == 27);
    CHECK(e1.order == 27);
    CHECK(e1.regular);
    auto e2 = example54(2, 0);
    CHECK(e2.degree == 729);
    CHECK(e2.order == 729);
    CHECK(e2.regular);
    auto em = example54_minus_square();
    CHECK(em.degree == 729);
    CHECK(em.order == 729);
    CHECK(em.regular);
    CHECK_THROWS(example54(4, 0));
}

TEST_CASE("regular search on the degree-27 model") {
    auto res = regular_subgroup_search(psp43_deg27(), true, 0);
    CHECK(res.exhaustive);
    REQUIRE(res.classes.size() == 2);
    CHECK(res.classes[0].tag == "3+^(1+2)");
    CHECK(res.classes[1].tag == "3-^(1+2)");
    CHECK(res.classes[0].extraspecial == "+");
    CHECK(res.classes[1].extraspecial == "-");
    for (auto& w : res.classes) {
        CHECK(w.group.is_regular());
        CHECK(w.nilpotent);
    }
}

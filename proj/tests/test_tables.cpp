#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "factoriza/tables.hpp"

using namespace factoriza;

TEST_CASE("every row of the six source tables is present") {
    CHECK(table_rows("T1").size() == 9);
    CHECK(table_rows("T2").size() == 9);
    CHECK(table_rows("T3").size() == 25);
    CHECK(table_rows("T4").size() == 47);
    CHECK(table_rows("T5").size() == 4);
    CHECK(table_rows("T6").size() == 28);
    CHECK(table_rows("T7").size() == 12);
    CHECK_THROWS(table_rows("T9"));
    CHECK_THROWS(lookup_row("T4", 48));
}

TEST_CASE("formula objects evaluate to the table values") {
    // (T2, case 3) at (m,q) = (3,2): ell = q^m(q^m - 1) = 56
    Expr::Params p;
    p.m = 3;
    p.q = 2;
    CHECK(lookup_row("T2", 3).ell_formula->eval(p) == 56);
    p.m = 2;
    p.q = 4;
    CHECK(lookup_row("T2", 3).ell_formula->eval(p) == 240);
    Expr::Params p1;
    p1.n = 3;
    p1.q = 2;
    CHECK(lookup_row("T2", 1).ell_formula->eval(p1) == 7);
    p1.n = 2;
    p1.q = 5;
    CHECK(lookup_row("T2", 1).ell_formula->eval(p1) == 6);
    Expr::Params p2;
    p2.q = 3;
    CHECK(lookup_row("T2", 2).ell_formula->eval(p2) == 351);
    p2.q = 2;
    CHECK(lookup_row("T2", 2).ell_formula->eval(p2) == 56);
    Expr::Params p6;
    p6.m = 2;
    p6.q = 2;
    CHECK(lookup_row("T2", 6).ell_formula->eval(p6) == 80);
    // T7 row 8 carries the PSU3(8).3^2 data
    const TableRow& r8 = lookup_row("T7", 8);
    CHECK(r8.ell_value == 513);
    CHECK(r8.g1 == "PSU_3(8).3^2");
    CHECK(r8.h1 == "57:9");
    // T6 row 24 is intractable with a reason
    const TableRow& r24 = lookup_row("T6", 24);
    CHECK(!r24.tractable);
    CHECK(!r24.reason.empty());
    // pretty printing exists
    CHECK(!lookup_row("T2", 3).ell_formula->str().empty());
}

TEST_CASE("order arithmetic is consistent for every T4/T6/T7 row") {
    auto checks = order_arithmetic_checks();
    CHECK(checks.size() == 47 + 28 + 11);  // T7 row 0 is parameterized
    for (auto& c : checks) {
        INFO(c.table << " row " << c.row << ": " << c.detail);
        CHECK(c.ok);
    }
    // spot value: T6 row 18 implies |H cap K| = 6
    for (auto& c : checks)
        if (c.table == "T6" && c.row == 18) CHECK(c.detail.find("= 6") != std::string::npos);
}

TEST_CASE("coverage report") {
    auto cov = coverage_report();
    REQUIRE(cov.size() == 7);
    for (auto& l : cov) {
        if (l.table == "T2") CHECK(l.tractable == 9);
        if (l.table == "T4") CHECK(l.tractable >= 16);
        if (l.table == "T6") {
            CHECK(l.tractable_rows == std::vector<int>{1, 2, 3, 4, 5, 9, 10, 11, 18});
        }
        if (l.table == "T7") CHECK(l.tractable == 11);
    }
    auto text = export_tables_text();
    CHECK(text.find("T4 row 44") != std::string::npos);
    CHECK(text.find("tables-export v1") != std::string::npos);
}

TEST_CASE("instantiate wires rows to builders") {
    auto s = instantiate("T2", 1, 3, 0, 2);
    REQUIRE(s.tractable);
    auto r = verify(s.instances[0]);
    CHECK(r.pass);
    auto sk = instantiate("T6", 24);
    CHECK(!sk.tractable);
    CHECK(!sk.reason.empty());
    CHECK_THROWS(instantiate("T2", 77));
}

TEST_CASE("pgammal2_16 and psu33 helpers") {
    CHECK(pgammal2_16().order() == 16320);
    CHECK(psu33_deg28().order() == 6048);
    CHECK(pairs_action(psu33_deg28()).degree == 28 * 27 / 2);
}

TEST_CASE("ell witness check wrapper") {
    auto an = ell_witness_check(1, 8);
    REQUIRE(an.built);
    CHECK(an.reports[0].pass);
    CHECK(an.reports[0].h_order == 8);
    auto skip = ell_witness_check(22);  // J2 row
    CHECK(!skip.built);
    CHECK(!skip.skip_reason.empty());
    auto psl28 = ell_witness_check(2, 0, 0, 8);
    REQUIRE(psl28.built);
    CHECK(psl28.reports[0].pass);
    CHECK(psl28.reports[0].h_order == 9);
}

// Acceptance suite: one test case per criterion, each printing a pass/fail
// line.  Tolerances are exact integer equalities throughout.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "factoriza/tables.hpp"

#include <chrono>
#include <iostream>
#include <map>

using namespace factoriza;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void line(int crit, const std::string& what, bool ok) {
    std::cout << "criterion " << crit << " [" << what << "]: " << (ok ? "PASS" : "FAIL") << "\n";
}

struct TypeIPoint {
    int row;
    int64_t n, m, q;
};

const std::vector<TypeIPoint>& type1_points() {
    static std::vector<TypeIPoint> pts = {
        {1, 2, 0, 5}, {1, 3, 0, 2}, {1, 3, 0, 3}, {1, 3, 0, 4}, {1, 4, 0, 2}, {1, 5, 0, 2},
        {2, 0, 0, 2}, {2, 0, 0, 3},
        {3, 0, 2, 2}, {3, 0, 2, 4}, {3, 0, 3, 2},
        {4, 0, 0, 2}, {4, 0, 0, 4},
        {6, 0, 2, 2}, {6, 0, 2, 3},
        {7, 0, 2, 3}, {7, 0, 2, 5}, {7, 0, 3, 3},
        {8, 0, 4, 2}, {8, 0, 4, 3}};
    return pts;
}

// the Type I instances are shared between criteria 1, 2, 3 and 6
struct TypeIOutcome {
    std::string key;
    bool pass = false;
    VerificationReport passing_report;
    FactorizationInstance passing_instance;
};

const std::vector<TypeIOutcome>& type1_outcomes() {
    static std::vector<TypeIOutcome> out = [] {
        std::vector<TypeIOutcome> v;
        for (const auto& p : type1_points()) {
            TypeIOutcome o;
            o.key = "case" + std::to_string(p.row) + "(n=" + std::to_string(p.n) +
                    ",m=" + std::to_string(p.m) + ",q=" + std::to_string(p.q) + ")";
            auto s = instantiate("T2", p.row, p.n, p.m, p.q);
            for (auto& inst : s.instances) {
                auto r = verify(inst);
                if (r.pass) {
                    o.pass = true;
                    o.passing_report = r;
                    o.passing_instance = inst;
                    break;
                }
            }
            v.push_back(std::move(o));
        }
        return v;
    }();
    return out;
}

}  // namespace

TEST_CASE("criterion 1: Type I witnesses at the smallest legal parameters") {
    auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    for (const auto& o : type1_outcomes()) {
        INFO(o.key);
        CHECK(o.pass);
        if (!o.pass) {
            all = false;
            continue;
        }
        CHECK(o.passing_report.transitive);
        CHECK(o.passing_report.h_order == o.passing_instance.expect.ell);
    }
    double el = seconds_since(t0);
    CHECK(el < 300.0);
    line(1, "Type I witnesses, |H| = ell, transitive; " + std::to_string(el) + "s", all && el < 300.0);
}

TEST_CASE("criterion 2: fixed point formulas and orbit counting") {
    bool all = true;
    for (const auto& o : type1_outcomes()) {
        int row = o.key[4] - '0';
        if (row != 3 && row != 6 && row != 8 && o.key.rfind("case4", 0) != 0) continue;
        INFO(o.key);
        REQUIRE(o.pass);
        // the fix classes are part of the expectations; a pass certifies them
        CHECK(!o.passing_instance.expect.fix_classes.empty());
        REQUIRE(o.passing_report.orbit_count_lemma.has_value());
        CHECK(*o.passing_report.orbit_count_lemma == 1);
        if (!o.pass || *o.passing_report.orbit_count_lemma != 1) all = false;
    }
    line(2, "fix(z) formulas for cases 3/6/8 and n = 1 exactly", all);
}

TEST_CASE("criterion 3: rank censuses") {
    bool ok = true;
    {
        auto v = build_case6(2, 2);
        uint32_t rank1 = 0, rankother = 0;
        for (auto& d : v[0].W_desc) (d == "rank 1" ? rank1 : rankother)++;
        CHECK(rank1 == 5);
        CHECK(rankother == 10);
        ok = ok && rank1 == 5;
    }
    {
        auto v = build_case8(4, 2);
        uint32_t rank2 = 0, rank4 = 0;
        for (auto& d : v[0].W_desc) {
            if (d == "rank 2") rank2++;
            if (d == "rank 4") rank4++;
        }
        CHECK(rank2 == 5);
        CHECK(rank4 == 10);
        ok = ok && rank2 == 5 && rank4 == 10;
    }
    line(3, "case 6 (2,2): 5 rank-1; case 8 (4,2): 5 rank-2 and 10 rank-4", ok);
}

TEST_CASE("criterion 4: negative controls") {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    // (a) case 7 at (3,3) with an even-order torus part is intransitive
    {
        auto c = control_case7_even_torus(3, 3);
        auto r = verify(c);
        INFO(r.text());
        CHECK(r.pass);
        CHECK(!r.transitive);
        ok = ok && r.pass && !r.transitive;
    }
    // (b) case 2 with W a proper subgroup of the radical is intransitive
    {
        auto c = control_case2_partial_radical(3);
        auto r = verify(c);
        CHECK(r.pass);
        CHECK(!r.transitive);
        ok = ok && r.pass && !r.transitive;
    }
    // (c) as stated this control is impossible: the case 3 (3,2) factor
    // 2^3:7 has abelianization C_7 of odd order, so it has no index-2
    // subgroup.  That impossibility is proved computationally here, and the
    // documented substitute (the radical W alone) is verified intransitive
    // with orbit count q^m - 1 = 7 > 1.
    {
        auto insts = build_case3(3, 2);
        const FactorizationInstance* passing = nullptr;
        for (auto& inst : insts)
            if (verify(inst).pass) passing = &inst;
        REQUIRE(passing != nullptr);
        auto subs = all_subgroups(passing->H);
        bool has_index2 = false;
        for (auto& s : subs)
            if (s.order() == 28) has_index2 = true;
        CHECK(!has_index2);
        std::cout << "  note: the 56-element case 3 factor has " << subs.size()
                  << " subgroups and none of index 2 (odd abelianization), so the stated\n"
                     "  index-2 control cannot exist; the radical-only substitute runs instead\n";
        auto c = control_case3_radical_only(3, 2);
        auto r = verify(c);
        CHECK(r.pass);
        CHECK(!r.transitive);
        CHECK(r.orbit_sizes.size() == 7);
        ok = ok && !has_index2 && r.pass && !r.transitive && r.orbit_sizes.size() == 7;
    }
    double el = seconds_since(t0);
    CHECK(el < 60.0);
    line(4, "negative controls (substituted 4c, see ledger); " + std::to_string(el) + "s", ok);
}

TEST_CASE("criterion 5: exactness") {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    // case 3: exact at (3,2), not exact at (2,2) and (2,4)
    for (const auto& o : type1_outcomes()) {
        if (o.key.rfind("case3", 0) != 0) continue;
        REQUIRE(o.pass);
        bool expect_exact = o.key.find("m=3") != std::string::npos;
        CHECK(*o.passing_report.exact == expect_exact);
        if (*o.passing_report.exact != expect_exact) ok = false;
    }
    // table rows 12, 14, 31, 32, 36..44 verified exact, with the socle
    // divisibility identity on every exact pass
    std::map<std::string, int> shape_count;
    for (int row : {12, 14, 31, 32, 36, 37, 38, 39, 40, 41, 42, 43, 44}) {
        auto s = instantiate("T4", row);
        REQUIRE(s.tractable);
        REQUIRE(!s.instances.empty());
        for (auto& inst : s.instances) {
            auto r = verify(inst);
            INFO(inst.label << "\n" << r.text());
            CHECK(r.pass);
            REQUIRE(r.exact.has_value());
            CHECK(*r.exact);
            if (!r.pass || !*r.exact) ok = false;
            auto d = divisibility_check(inst);
            INFO(inst.label << " divisibility " << u128_str(d.socle_H) << " | "
                            << u128_str(d.socle_index));
            CHECK(d.holds);
            if (!d.holds) ok = false;
            if (row == 39 || row == 40 || row == 44) {
                auto b = inst.label.find(": ");
                auto e = inst.label.find(" vs");
                shape_count[std::to_string(row) + "/" + inst.label.substr(b + 2, e - b - 2)]++;
            }
        }
    }
    // all listed H-shapes present for rows 39, 40 and 44
    for (const std::string& want :
         {"39/C6xC2", "39/A4", "39/D12", "40/S4", "40/D24", "40/D8xC3", "40/C3:D8", "44/S4",
          "44/D24", "44/D8xC3", "44/C3:D8", "44/A4xC2"}) {
        INFO(want);
        CHECK(shape_count.count(want));
        if (!shape_count.count(want)) ok = false;
    }
    double el = seconds_since(t0);
    CHECK(el < 300.0);
    line(5, "exact factorizations incl. all listed H-shapes; " + std::to_string(el) + "s", ok);
}

TEST_CASE("criterion 6: ell(G0) witnesses") {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    // A_n rows for n <= 10: S_n = C_n S_{n-1}
    for (uint32_t n = 5; n <= 10; n++) {
        Perm c = Perm::identity(n);
        for (uint32_t i = 0; i < n; i++) c.img[i] = (i + 1) % n;
        PermGroup H(n, {c});
        CHECK(H.is_regular());
        if (!H.is_regular()) ok = false;
    }
    // PSL2(q) rows at q = 8, 13 (and 11 through its own row)
    for (uint32_t q : {8u, 13u}) {
        auto inst = build_case1(2, q);
        auto r = verify(inst);
        CHECK(r.pass);
        CHECK(r.h_order == q + 1);
        if (!r.pass) ok = false;
    }
    {
        auto s = instantiate("T4", 12);  // PSL2(11): ell = 11
        auto r = verify(s.instances[0]);
        CHECK(r.pass);
        if (!r.pass) ok = false;
    }
    // PSL_n(q), PSU_2m at (2,2), Sp at (2,4) and (3,2), PSp4(3)-odd at q=3:
    // reuse the Type I outcomes
    for (const auto& o : type1_outcomes()) {
        bool relevant = o.key.rfind("case1", 0) == 0 || o.key == "case6(n=0,m=2,q=2)" ||
                        o.key == "case3(n=0,m=2,q=4)" || o.key == "case3(n=0,m=3,q=2)" ||
                        o.key == "case7(n=0,m=2,q=3)";
        if (!relevant) continue;
        CHECK(o.pass);
        if (!o.pass) ok = false;
    }
    // Mathieu rows and the PSp4(3) row
    for (int row : {36, 42}) {
        auto s = instantiate("T4", row);
        auto r = verify(s.instances[0]);
        CHECK(r.pass);
        if (!r.pass) ok = false;
    }
    {
        // M12 row: ell = 12 with H = D12; M24 row: ell = 24 with H = S4;
        // M22 row: ell = 22 with H = D22 in M22.2
        auto m12 = instantiate("T4", 39);
        bool d12 = false;
        for (auto& inst : m12.instances)
            if (inst.label.find("D12") != std::string::npos && verify(inst).pass) d12 = true;
        CHECK(d12);
        auto m24 = instantiate("T4", 44);
        bool s4 = false;
        for (auto& inst : m24.instances)
            if (inst.label.find("S4") != std::string::npos && verify(inst).pass) s4 = true;
        CHECK(s4);
        auto m22 = instantiate("T4", 41);
        bool d22 = false;
        for (auto& inst : m22.instances)
            if (inst.label.find("D22") != std::string::npos && verify(inst).pass) d22 = true;
        CHECK(d22);
        ok = ok && d12 && s4 && d22;
    }
    {
        // PSp4(3) row: ell = 27 at degree 27
        auto s = instantiate("T4", 31);
        bool plus = false;
        for (auto& inst : s.instances)
            if (verify(inst).pass) plus = true;
        CHECK(plus);
        if (!plus) ok = false;
    }
    {
        // PSU3(3) row: ell = 216 with K = PSL2(7) found by seeded search
        auto s = instantiate("T6", 18);
        REQUIRE(s.tractable);
        auto r = verify(s.instances[0]);
        INFO(r.text());
        CHECK(r.pass);
        CHECK(r.h_order == 216);
        if (!r.pass) ok = false;
    }
    double el = seconds_since(t0);
    CHECK(el < 600.0);
    line(6, "ell(G0) witnesses; " + std::to_string(el) + "s", ok);
}

TEST_CASE("criterion 7: nilpotent regular subgroup searches") {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    auto expect_tags = [&](const PermGroup& G, std::vector<std::string> want,
                           const std::string& name) {
        auto res = regular_subgroup_search(G, true, 0);
        std::vector<std::string> got;
        for (auto& w : res.classes) got.push_back(w.tag);
        INFO(name);
        CHECK(res.exhaustive);
        CHECK(got == want);
        if (got != want || !res.exhaustive) ok = false;
        return res;
    };
    expect_tags(mathieu("M11"), {"C11"}, "M11@11");
    expect_tags(mathieu("M12"), {"C6xC2"}, "M12@12");
    expect_tags(mathieu("M23"), {"C23"}, "M23@23");
    expect_tags(mathieu("M24"), {"D8xC3"}, "M24@24");
    auto res = expect_tags(psp43_deg27(), {"3+^(1+2)", "3-^(1+2)"}, "PSp4(3)@27");
    if (res.classes.size() == 2) {
        CHECK(res.classes[0].extraspecial == "+");
        CHECK(res.classes[1].extraspecial == "-");
    }
    double el = seconds_since(t0);
    CHECK(el < 600.0);
    line(7, "nilpotent-only searches, exact class sets; " + std::to_string(el) + "s", ok);
}

TEST_CASE("criterion 8: the product action example") {
    auto t0 = std::chrono::steady_clock::now();
    auto e01 = example54(0, 1);
    CHECK(e01.degree == 19683);
    CHECK(e01.order == 19683);
    CHECK(e01.regular);
    auto e20 = example54(2, 0);
    CHECK(e20.order == 729);
    CHECK(e20.regular);
    auto em = example54_minus_square();
    CHECK(em.order == 729);
    CHECK(em.regular);
    double el = seconds_since(t0);
    CHECK(el < 120.0);
    line(8, "3^6:3+^{1+2} regular on 27^3; both squares regular on 729; " + std::to_string(el) + "s",
         e01.regular && e20.regular && em.regular && el < 120.0);
}

TEST_CASE("criterion 9: the GammaL1 oracles") {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    // exhaustive subgroup enumeration of GammaL1(49), order 96
    PermGroup amb = gammaL1_group(7, 2);
    REQUIRE(amb.order() == 96);
    auto subs = all_subgroups(amb);
    std::vector<PermGroup> nt;
    for (auto& s : subs)
        if (s.is_transitive() && s.is_nilpotent()) nt.push_back(s);
    // dedupe up to conjugacy in the ambient group
    auto aels = amb.elements(200);
    std::vector<PermGroup> classes;
    for (auto& s : nt) {
        bool dup = false;
        auto sels = s.elements(200);
        std::set<Perm> sset(sels.begin(), sels.end());
        for (auto& r : classes) {
            if (r.order() != s.order()) continue;
            auto rels = r.elements(200);
            std::set<Perm> rset(rels.begin(), rels.end());
            for (auto& g : aels) {
                std::set<Perm> conj;
                for (auto& x : rels) conj.insert(g.inverse() * x * g);
                if (conj == sset) {
                    dup = true;
                    break;
                }
            }
            if (dup) break;
        }
        if (!dup) classes.push_back(s);
    }
    std::vector<std::string> tags;
    for (auto& c : classes) tags.push_back(small_group_tag(c));
    std::sort(tags.begin(), tags.end());
    std::vector<std::string> want = {"C3xQ16", "C3xSD32", "C48"};
    CHECK(tags == want);
    if (tags != want) ok = false;

    // the projective dihedral split at q = 7 and the extraspecial at q = 8
    auto dt = gammaL1_nilpotent(7, 2, "D-transitive");
    auto di = gammaL1_nilpotent(7, 2, "D-intransitive");
    CHECK(dt.group.is_transitive());
    CHECK(!di.group.is_transitive());
    auto tm = gammaL1_nilpotent(8, 2, "3^{1+2}-minus");
    CHECK(tm.group.is_transitive());
    CHECK(tm.extraspecial == "-");
    ok = ok && dt.group.is_transitive() && !di.group.is_transitive() &&
         tm.group.is_transitive() && tm.extraspecial == "-";
    double el = seconds_since(t0);
    CHECK(el < 60.0);
    line(9, "GammaL1(49) exhaustive oracle and projective variants; " + std::to_string(el) + "s", ok);
}

TEST_CASE("criterion 10: always-on property suites") {
    bool ok = true;
    // orbit-stabilizer identity is asserted inside every point_stabilizer call
    for (const auto& name : {"M11", "M12", "M22.2"}) {
        auto& G = mathieu(name);
        CHECK_NOTHROW(G.point_stabilizer(0));
    }
    CHECK_NOTHROW(psp43_deg27().point_stabilizer(1));
    // Dickson additivity on >= 100 random isometry pairs
    {
        const FieldTable& F2 = make_field(2, 1);
        auto q6 = standard_form(FormKind::quadratic, 6, F2, TypeSign::minus);
        auto gens = orthogonal_gens_even(q6);
        RandomWalk rw(PermGroup(1, {}), 5);  // unused; use a simple LCG below
        uint64_t state = 12345;
        auto rnd = [&]() { return state = state * 6364136223846793005ull + 1442695040888963407ull; };
        auto rand_isom = [&]() {
            Mat g = Mat::identity(F2, 6);
            int len = 1 + rnd() % 5;
            for (int i = 0; i < len; i++) g = g * gens[rnd() % gens.size()];
            return g;
        };
        for (int t = 0; t < 110; t++) {
            Mat a = rand_isom(), b = rand_isom();
            uint32_t lhs = dickson_invariant(a * b, q6);
            uint32_t rhs = dickson_invariant(a, q6) ^ dickson_invariant(b, q6);
            CHECK(lhs == rhs);
            if (lhs != rhs) ok = false;
        }
    }
    // BSGS order invariance under 5 generator shuffles per group
    {
        uint64_t state = 99;
        auto rnd = [&]() { return state = state * 2862933555777941757ull + 3037000493ull; };
        for (const PermGroup* Gp : {&psp43_deg27(), &mathieu("M11"), &mathieu("M12")}) {
            u128 expected = Gp->order();
            std::vector<Perm> gens = Gp->gens;
            for (int s = 0; s < 5; s++) {
                for (size_t i = gens.size(); i > 1; i--) std::swap(gens[i - 1], gens[rnd() % i]);
                PermGroup S(Gp->degree, gens);
                CHECK(S.order() == expected);
                if (S.order() != expected) ok = false;
            }
        }
    }
    // orbit counting lemma equals the BFS orbit count on every Type I instance
    for (const auto& o : type1_outcomes()) {
        if (!o.passing_report.orbit_count_lemma) continue;
        CHECK(*o.passing_report.orbit_count_lemma == o.passing_report.orbit_sizes.size());
        if (*o.passing_report.orbit_count_lemma != o.passing_report.orbit_sizes.size()) ok = false;
    }
    line(10, "orbit-stabilizer, Dickson additivity, BSGS shuffles, counting lemma", ok);
}

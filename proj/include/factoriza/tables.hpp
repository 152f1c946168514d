#pragma once

#include "factoriza/groups.hpp"
#include "factoriza/verify.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace factoriza {

// tiny expression trees over {n, m, q, d, e} with gcd and powers
struct Expr;
using ExprP = std::shared_ptr<const Expr>;
struct Expr {
    enum Kind { Const, Var, Add, Sub, Mul, Div, Pow, Gcd } kind;
    int64_t cval = 0;
    char var = 0;
    ExprP a, b;

    struct Params {
        int64_t n = 0, m = 0, q = 0;
        int64_t lookup(char v) const;
    };
    u128 eval(const Params& p) const;  // exact; throws on inexact division
    std::string str() const;
};
ExprP E(int64_t c);
ExprP V(char v);
ExprP operator+(ExprP a, ExprP b);
ExprP operator-(ExprP a, ExprP b);
ExprP operator*(ExprP a, ExprP b);
ExprP operator/(ExprP a, ExprP b);
ExprP epow(ExprP a, ExprP b);
ExprP egcd(ExprP a, ExprP b);

struct TableRow {
    std::string table;  // T1..T7
    int row = 0;
    std::string g1, h1, k1;       // structure strings as printed in the source tables
    std::string conditions;
    ExprP ell_formula;            // when parameterized
    u128 ell_value = 0;           // literal ell for fixed rows
    u128 g_order = 0, k_order = 0;  // for the arithmetic consistency checks
    bool exact = false;           // row claims an exact factorization
    bool tractable = false;
    std::string reason;           // why not tractable, or the verification route
    std::string citation;
};

const std::vector<TableRow>& table_rows(const std::string& id);
const TableRow& lookup_row(const std::string& id, int row);
std::vector<std::string> table_ids();  // T1..T7

// wiring of rows to builders; params only used by parameterized rows
struct InstanceSet {
    bool tractable = false;
    std::string reason;
    std::vector<FactorizationInstance> instances;
};
InstanceSet instantiate(const std::string& table, int row, int64_t n = 0, int64_t m = 0,
                        int64_t q = 0, uint64_t seed = 0);

// pure integer consistency of the order data in T4 (exactness: |H||K| = |G|)
// and T6/T7 (implied |H meet K| is a positive integer dividing |H| and |K|)
struct ArithmeticCheck {
    std::string table;
    int row = 0;
    bool ok = false;
    std::string detail;
};
std::vector<ArithmeticCheck> order_arithmetic_checks();

struct CoverageLine {
    std::string table;
    int total = 0, tractable = 0;
    std::vector<int> tractable_rows;
};
std::vector<CoverageLine> coverage_report();

// structured export of the table data, one record per row
std::string export_tables_text();

// builds the witness of one ell(G_0) row (the minimal solvable factor table)
// and verifies |H| = ell(G_0) together with G = HK; minimality itself is not
// attempted.  Intractable rows return a skip report.
struct EllWitnessOutcome {
    bool built = false;
    std::string skip_reason;
    std::vector<VerificationReport> reports;
};
EllWitnessOutcome ell_witness_check(int t3_row, int64_t n = 0, int64_t m = 0, int64_t q = 0,
                                    uint64_t seed = 0);

// helpers shared by the witness constructions
PermGroup pairs_action(const PermGroup& G);  // induced action on unordered pairs
PermGroup psu33_deg28();                     // PSU3(3) on 28 isotropic points
PermGroup pgammal2_16();                     // PGammaL2(16) on 17 points
struct Psu38Model {
    PermGroup G;      // PSU3(8).3^2 on 513 isotropic points
    PermGroup H;      // 57:9, regular on the 513 points
    PermGroup socle;  // the PSU3(8) image
};
const Psu38Model& psu38_model();

}  // namespace factoriza

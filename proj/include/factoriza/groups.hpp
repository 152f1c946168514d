#pragma once

#include "factoriza/forms.hpp"
#include "factoriza/perm.hpp"
#include "factoriza/verify.hpp"

#include <memory>
#include <string>
#include <vector>

namespace factoriza {

// standard order formulas (KL conventions)
u128 order_gl(uint32_t n, uint64_t q);
u128 order_sl(uint32_t n, uint64_t q);
u128 order_sp(uint32_t dim, uint64_t q);       // Sp_dim(q), dim = 2m
u128 order_gu(uint32_t n, uint64_t q);
u128 order_su(uint32_t n, uint64_t q);
u128 order_so_odd(uint32_t dim, uint64_t q);   // SO_dim(q), dim = 2m+1, q odd
u128 order_o_even(uint32_t dim, uint64_t q, int eps);   // O^eps_dim(q), q even
u128 order_omega_even(uint32_t dim, uint64_t q, int eps);
u128 order_so_pm_odd(uint32_t dim, uint64_t q, int eps);  // SO^eps_dim(q), q odd
u128 order_psl(uint32_t n, uint64_t q);
u128 order_pgl(uint32_t n, uint64_t q);
u128 order_psu(uint32_t n, uint64_t q);
u128 order_pgu(uint32_t n, uint64_t q);
u128 order_psp(uint32_t dim, uint64_t q);

// matrix generator sets, each validated by is_isometry and a BSGS order
// check against the formulas above
std::vector<Mat> sl_gens(const FieldTable& F, uint32_t n);
std::vector<Mat> symplectic_gens(const ClassicalForm& f);
std::vector<Mat> su_gens(const ClassicalForm& f);
std::vector<Mat> gu_gens(const ClassicalForm& f);
std::vector<Mat> orthogonal_gens_even(const ClassicalForm& f);  // full O^eps, q even
std::vector<Mat> so_gens_odd(const ClassicalForm& f);           // SO, q odd

// permutation image of matrix generators on a geometric domain
PermGroup perm_image(const std::vector<Mat>& gens, const GeometricDomain& dom);

// projective groups in their natural actions
PermGroup pgl_projective(uint32_t n, uint32_t q);  // on (q^n-1)/(q-1) points
PermGroup psl_projective(uint32_t n, uint32_t q);
PermGroup psl2_projective(uint32_t q) /* degree q+1 */;

// --- Type I builders (Table "Type I factorizations") ------------------------
FactorizationInstance build_case1(uint32_t n, uint32_t q);
FactorizationInstance build_case2(uint32_t q);
// all m-dimensional irreducible summand candidates are built; index selects one
std::vector<FactorizationInstance> build_case3(uint32_t m, uint32_t q);
std::vector<FactorizationInstance> build_case4(uint32_t q);  // case 3 at m = 2, relabeled
std::vector<FactorizationInstance> build_case6(uint32_t m, uint32_t q);
FactorizationInstance build_case7(uint32_t m, uint32_t q);   // covers case 5 at m = 2
std::vector<FactorizationInstance> build_case8(uint32_t m, uint32_t q);  // covers case 9 at m = 4

// negative controls
FactorizationInstance control_case2_partial_radical(uint32_t q);
FactorizationInstance control_case7_even_torus(uint32_t m, uint32_t q);
// there is no index-2 subgroup of the Case 3 factor (odd abelianization);
// the documented substitute is W alone, with orbit count q^m - 1 > 1
FactorizationInstance control_case3_radical_only(uint32_t m, uint32_t q);

// --- sporadic and special groups -------------------------------------------
const PermGroup& mathieu(const std::string& name);  // M11 M12 M22 M23 M24 M12.2 M22.2
PermGroup sporadic_optional(const std::string& name);  // J2.2@100, HS.2@100: not embedded
const PermGroup& psp43_deg27();  // PSU4(2) on the 27 totally isotropic 2-spaces

// PSp4(3) on 40 projective points of the Sp4(3) geometry, and PGSp4(3) there
PermGroup psp43_deg40();
PermGroup pgsp43_deg40();

// nilpotent transitive subgroups of GammaL1-type groups; which is one of
// full-cycle | SD | Q | D-transitive | D-intransitive | 3^{1+2}-minus
SubgroupWitness gammaL1_nilpotent(uint32_t q, uint32_t m, const std::string& which);
// the ambient group GammaL1(q^m) on the nonzero vectors
PermGroup gammaL1_group(uint32_t q, uint32_t m);

// Example of the product-action regular subgroups: (3+^{1+2})^e x (3^6:3+^{1+2})^f
// inside PSp4(3) wr Sym(e+3f) at degree 27^(e+3f).  Verified in compressed
// wreath coordinates.
struct Example54 {
    uint64_t degree = 0;
    std::vector<Perm> gens;  // flat permutations on 27^d points
    uint64_t order = 0;
    bool regular = false;
};
Example54 example54(uint32_t e, uint32_t f);
Example54 example54_minus_square();  // the (3-^{1+2})^2 variant on 729

}  // namespace factoriza

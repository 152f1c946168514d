#pragma once

#include "factoriza/matrix.hpp"

#include <memory>
#include <unordered_map>

namespace factoriza {

enum class FormKind { symplectic, hermitian, quadratic };
enum class TypeSign { none, plus, minus, odd_dim };

// A classical form in the standard basis conventions: symplectic and odd
// orthogonal bases e_1..e_m, f_1..f_m(, v); hermitian e_1..e_m, f_1..f_m(, v).
// gram is the bilinear (for quadratic: polarization) or sesquilinear matrix;
// qdiag holds Q(basis vector) for quadratic forms.
struct ClassicalForm {
    FormKind kind;
    TypeSign sign = TypeSign::none;
    const FieldTable* F = nullptr;
    uint32_t dim = 0;
    Mat gram;
    std::vector<felt> qdiag;

    uint32_t conj_power() const { return F->f / 2; }  // hermitian conjugation exponent
    felt conj(felt x) const { return F->frobenius(x, conj_power()); }

    felt bil(const std::vector<felt>& v, const std::vector<felt>& w) const;
    felt qval(const std::vector<felt>& v) const;
    bool is_isometry(const Mat& g) const;
};

ClassicalForm standard_form(FormKind kind, uint32_t dim, const FieldTable& F, TypeSign sign);

// rank(g - 1) mod 2 for an isometry g of a quadratic form over even q;
// the kernel of this map is Omega
uint32_t dickson_invariant(const Mat& g, const ClassicalForm& form);

struct InvolutionType {
    char letter;  // 'a', 'b' or 'c'
    uint32_t s;   // rank(x - 1)
};
// Aschbacher-Seitz class of an involution in Sp_2m(q), q even
InvolutionType involution_type(const Mat& x, const ClassicalForm& symp);

enum class DomainKind {
    projective_points,
    singular_points,
    nondegenerate_points,
    nonsingular_points,
    minus_nondegenerate_points,   // nondegenerate 1-spaces with perp of minus type (odd q, odd dim)
    totally_singular_kspaces,
};

// Enumerated geometric domain of 1-spaces (canonical rep: first nonzero
// coordinate 1) or totally singular k-spaces (canonical rref basis).
struct GeometricDomain {
    std::shared_ptr<const ClassicalForm> form;
    DomainKind kind;
    uint32_t k = 1;
    std::vector<std::vector<felt>> points;  // rep vectors, or flattened k x dim rref bases
    std::unordered_map<uint64_t, uint32_t> index;

    uint32_t size() const { return static_cast<uint32_t>(points.size()); }
    uint64_t key_of(const std::vector<felt>& rep) const;
    uint32_t point_of(std::vector<felt> vec) const;              // canonicalize a vector, look up
    uint32_t image_of(uint32_t pt, const Mat& g) const;          // act on the right
    // semilinear action: entrywise x -> x^(p^frob_k), then the matrix
    uint32_t image_of_semilinear(uint32_t pt, uint32_t frob_k, const Mat& g) const;
    std::vector<uint32_t> action_images(const Mat& g) const;
    std::vector<uint32_t> action_images_semilinear(uint32_t frob_k, const Mat& g) const;
};

GeometricDomain enumerate_domain(std::shared_ptr<const ClassicalForm> form, DomainKind kind,
                                 uint32_t k = 1, uint64_t cap = 200000);

// Case 3 domain: pairs (Q', eps) with Q' a minus-type quadratic form whose
// polarization is the given symplectic form and eps a spinor label moved by
// the Dickson invariant along a fixed transversal.  Realizes Sp/Omega^-
// without coset enumeration.  Point id = 2*form_index + eps.
struct OmegaFormsDomain {
    std::shared_ptr<const ClassicalForm> symp;
    ClassicalForm base_form;                      // the standard minus form Q0
    std::vector<std::vector<felt>> form_qvals;    // Q(b_i) vectors of the minus forms
    std::unordered_map<uint64_t, uint32_t> form_index;
    std::vector<Mat> transversal;                 // t with Q0^t = form

    uint32_t num_forms() const { return static_cast<uint32_t>(form_qvals.size()); }
    uint32_t size() const { return 2 * num_forms(); }
    felt qval_of(uint32_t fi, const std::vector<felt>& v) const;
    uint32_t form_image(uint32_t fi, const Mat& ginv) const;
    std::vector<uint32_t> action_images(const Mat& g) const;        // labeled, degree 2*num_forms
    std::vector<uint32_t> action_images_forms(const Mat& g) const;  // unlabeled, degree num_forms
};

OmegaFormsDomain make_omega_forms_domain(std::shared_ptr<const ClassicalForm> symp,
                                         const std::vector<Mat>& sp_gens);

// Arf invariant trace criterion for a quadratic form given by its values on
// the standard symplectic basis pairs (even q): returns true for minus type.
bool arf_minus(const FieldTable& F, const std::vector<felt>& qvals, const Mat& gram);

}  // namespace factoriza

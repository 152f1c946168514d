#pragma once

#include "factoriza/field.hpp"

#include <cstdint>
#include <vector>

namespace factoriza {

// Row-vector convention throughout: a matrix acts on the right, v -> v*M,
// and composition "g then h" is the product g*h.
struct Mat {
    const FieldTable* F = nullptr;
    uint32_t rows = 0, cols = 0;
    std::vector<felt> a;

    Mat() = default;
    Mat(const FieldTable& Fq, uint32_t r, uint32_t c) : F(&Fq), rows(r), cols(c), a((size_t)r * c, 0) {}
    static Mat identity(const FieldTable& Fq, uint32_t n);

    felt& at(uint32_t r, uint32_t c) { return a[(size_t)r * cols + c]; }
    felt at(uint32_t r, uint32_t c) const { return a[(size_t)r * cols + c]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator<(const Mat& o) const { return a < o.a; }

    Mat pow(uint64_t e) const;
    Mat inverse() const;
    Mat transpose() const;
    Mat frob_entries(uint32_t k) const;  // entrywise x -> x^(p^k)
    Mat scale(felt c) const;
    bool is_identity() const;
    bool is_zero() const;
    bool is_scalar() const;  // nonzero scalar multiple of identity

    std::vector<felt> apply_row(const std::vector<felt>& v) const;  // v*M
    std::string to_string() const;
};

uint32_t rank(const Mat& A);
Mat rref(const Mat& A);  // reduced row echelon form, zero rows dropped
felt det(const Mat& A);

// Canonical subspace: basis in reduced row echelon form (unique representative).
struct Subspace {
    const FieldTable* F = nullptr;
    uint32_t ambient = 0;
    Mat basis;  // rref, no zero rows
    uint32_t dim() const { return basis.rows; }
    static Subspace from_rows(const Mat& rows);
    static Subspace full(const FieldTable& Fq, uint32_t n);
    bool contains(const std::vector<felt>& v) const;
    // coordinates of v in the rref basis; throws if v is outside
    std::vector<felt> coordinates(const std::vector<felt>& v) const;
    bool operator==(const Subspace& o) const { return basis == o.basis; }
    bool operator<(const Subspace& o) const { return basis.a < o.basis.a; }
};

// {v : v*A = 0}, the kernel of the row action
Subspace row_kernel(const Mat& A);

poly::P charpoly(const Mat& A);
Mat eval_poly(const poly::P& p, const Mat& A);

// multiplicative order of M given a known multiple of it
uint64_t element_order(const Mat& M, uint64_t multiple);

// Singer cycle data for GL_n(q): c is the companion matrix of the degree-n
// primitive polynomial over GF(q), so |c| = q^n - 1 and <c> is irreducible;
// phi is the matrix of the q-power Frobenius in the power basis, and
// phi^-1 c phi = c^q.
struct SingerData {
    uint32_t n = 0;
    const FieldTable* F = nullptr;
    Mat c;
    Mat phi;
    uint64_t order = 0;          // q^n - 1
    std::vector<felt> minpoly;   // the defining primitive polynomial
};
SingerData singer(const FieldTable& F, uint32_t n);

// Jordan block sizes (descending) of a unipotent matrix, from ranks of
// powers of u - 1.  Throws on non-unipotent input.
std::vector<uint32_t> jordan_partition_unipotent(const Mat& u);

// action on Lambda^2(X) with basis x_i ^ x_j, i < j, lexicographic
Mat exterior_square(const Mat& g);

// action on X tensor X^(q) for g over a field of square order, basis
// x_i tensor x_j lexicographic; throws if the field order is not a square
Mat twisted_tensor(const Mat& g);

// All <c>-irreducible c-invariant subspaces of V of dimension target_dim,
// via factorization of the characteristic polynomial of c restricted to V
// and kernels of the factor evaluations.  Deterministic order.
std::vector<Subspace> invariant_summands(const Mat& c, const Subspace& V, uint32_t target_dim);

// matrix of multiplication by a on GF(q^n) in the power basis (over GF(q))
Mat mult_matrix(const ExtField& E, ExtField::elt a);
// matrix of x -> x^(q^k) on GF(q^n) in the power basis
Mat frobenius_matrix(const ExtField& E, uint32_t k = 1);

}  // namespace factoriza

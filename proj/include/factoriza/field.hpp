#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace factoriza {

// Field element: the integer index sum c_i * p^i of the coefficient vector
// of the element written in the power basis of the defining polynomial.
// 0 is zero, 1 is one.
using felt = uint32_t;

struct PrimePower {
    uint32_t p = 0;
    uint32_t f = 0;
    uint32_t q = 0;
};

bool is_prime_u64(uint64_t n);
std::vector<std::pair<uint64_t, int>> factorize_u64(uint64_t n);

// Arithmetic tables for GF(p^f).  Multiplication runs on log/antilog tables
// with respect to the root of the defining primitive polynomial; addition is
// digitwise mod p (tabulated for small q).  Immutable after construction.
class FieldTable {
public:
    PrimePower spec;
    uint32_t p, f, q;
    std::vector<uint32_t> poly;  // defining primitive polynomial, monic, coeffs over GF(p), degree f
    felt generator;              // fixed primitive element (the class of x; the least primitive root if f=1)

    felt add(felt a, felt b) const {
        if (!addtab_.empty()) return addtab_[a * q + b];
        return add_slow(a, b);
    }
    felt neg(felt a) const { return negtab_[a]; }
    felt sub(felt a, felt b) const { return add(a, neg(b)); }
    felt mul(felt a, felt b) const {
        if (a == 0 || b == 0) return 0;
        uint32_t s = log_[a] + log_[b];
        if (s >= q - 1) s -= q - 1;
        return exp_[s];
    }
    felt inv(felt a) const {
        if (a == 0) throw std::domain_error("field inverse of zero");
        return exp_[(q - 1 - log_[a]) % (q - 1)];
    }
    felt div(felt a, felt b) const { return mul(a, inv(b)); }
    felt pow(felt a, int64_t e) const;
    // x^(p^k)
    felt frobenius(felt a, uint64_t k) const;
    bool is_square(felt a) const {
        if (a == 0 || p == 2) return true;
        return log_[a] % 2 == 0;
    }
    uint32_t log(felt a) const {
        if (a == 0) throw std::domain_error("log of zero");
        return log_[a];
    }
    felt exp(uint64_t k) const { return exp_[k % (q - 1)]; }
    felt from_int(uint64_t n) const { return static_cast<felt>(n % p); }  // prime subfield embedding

    // digit view of an element (coefficients over GF(p), little-endian)
    void digits(felt a, uint32_t* out) const {
        for (uint32_t i = 0; i < f; i++) { out[i] = a % p; a /= p; }
    }

    static const FieldTable& get(uint32_t p, uint32_t f);

private:
    FieldTable(uint32_t p, uint32_t f);
    felt add_slow(felt a, felt b) const;
    std::vector<felt> exp_;       // size q-1
    std::vector<uint32_t> log_;   // size q
    std::vector<felt> negtab_;    // size q
    std::vector<felt> addtab_;    // size q*q if q small
    friend const FieldTable& make_field(uint32_t, uint32_t);
};

// make_field(p, f): defining polynomial is the lexicographically least
// primitive polynomial of degree f over GF(p), coefficient vectors compared
// low-degree-first.  For f = 1 the defining polynomial is x - a with a the
// least primitive root mod p.  Cached; the returned reference stays valid.
const FieldTable& make_field(uint32_t p, uint32_t f);

// Least prime r dividing q^m - 1 but none of q^i - 1 for i < m, or nullopt
// in the Zsigmondy exception cases.
std::optional<uint64_t> primitive_prime_divisor(uint64_t q, uint32_t m);

// Polynomials over a FieldTable, little-endian coefficient vectors.
// Normalized form has no trailing zeros (zero polynomial = empty vector).
namespace poly {
using P = std::vector<felt>;
P trim(P a);
int deg(const P& a);  // -1 for zero
P add(const FieldTable& F, const P& a, const P& b);
P sub(const FieldTable& F, const P& a, const P& b);
P mul(const FieldTable& F, const P& a, const P& b);
P rem(const FieldTable& F, P a, const P& b);
P quot(const FieldTable& F, P a, const P& b);
P gcd(const FieldTable& F, P a, P b);
P monic(const FieldTable& F, P a);
felt eval(const FieldTable& F, const P& a, felt x);
bool is_irreducible(const FieldTable& F, const P& a);
// irreducible factors with multiplicity, sorted by (degree, coeff vector)
std::vector<std::pair<P, int>> factor(const FieldTable& F, const P& a);
std::string to_string(const FieldTable& F, const P& a);
}  // namespace poly

// GF(q^n) in the power basis over GF(q), modulo the lexicographically least
// primitive polynomial of degree n over GF(q).  Elements are packed base-q
// digit vectors.  Used for Singer cycles and extension-field embeddings.
class ExtField {
public:
    const FieldTable* base;
    uint32_t n;
    uint64_t qn;                  // q^n
    std::vector<felt> minpoly;    // length n+1, monic, primitive over GF(q)

    ExtField(const FieldTable& base_field, uint32_t n);

    using elt = uint64_t;
    elt x() const { return base->q; }  // the class of x, a generator of the multiplicative group
    elt one() const { return 1; }
    elt add(elt a, elt b) const;
    elt mul(elt a, elt b) const;
    elt pow(elt a, uint64_t e) const;
    elt inv(elt a) const;
    uint64_t log(elt a) const;
    elt exp(uint64_t k) const;
    felt digit(elt a, uint32_t i) const;
    elt from_digits(const std::vector<felt>& d) const;
    // a^(q^k): Frobenius over the base field
    elt frob(elt a, uint32_t k = 1) const;

private:
    std::vector<uint64_t> exp_, log_;
};

}  // namespace factoriza

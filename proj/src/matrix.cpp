#include "factoriza/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace factoriza {

Mat Mat::identity(const FieldTable& Fq, uint32_t n) {
    Mat m(Fq, n, n);
    for (uint32_t i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols != o.rows || F != o.F) throw std::invalid_argument("Mat mul shape");
    Mat r(*F, rows, o.cols);
    for (uint32_t i = 0; i < rows; i++)
        for (uint32_t k = 0; k < cols; k++) {
            felt x = at(i, k);
            if (!x) continue;
            for (uint32_t j = 0; j < o.cols; j++) {
                felt y = o.at(k, j);
                if (y) r.at(i, j) = F->add(r.at(i, j), F->mul(x, y));
            }
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    Mat r(*F, rows, cols);
    for (size_t i = 0; i < a.size(); i++) r.a[i] = F->add(a[i], o.a[i]);
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    Mat r(*F, rows, cols);
    for (size_t i = 0; i < a.size(); i++) r.a[i] = F->sub(a[i], o.a[i]);
    return r;
}

Mat Mat::pow(uint64_t e) const {
    Mat r = identity(*F, rows), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Mat Mat::transpose() const {
    Mat r(*F, cols, rows);
    for (uint32_t i = 0; i < rows; i++)
        for (uint32_t j = 0; j < cols; j++) r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::frob_entries(uint32_t k) const {
    Mat r(*F, rows, cols);
    for (size_t i = 0; i < a.size(); i++) r.a[i] = F->frobenius(a[i], k);
    return r;
}

Mat Mat::scale(felt c) const {
    Mat r(*F, rows, cols);
    for (size_t i = 0; i < a.size(); i++) r.a[i] = F->mul(a[i], c);
    return r;
}

bool Mat::is_identity() const {
    for (uint32_t i = 0; i < rows; i++)
        for (uint32_t j = 0; j < cols; j++)
            if (at(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

bool Mat::is_zero() const {
    for (felt x : a)
        if (x) return false;
    return true;
}

bool Mat::is_scalar() const {
    if (rows != cols || rows == 0) return false;
    felt d = at(0, 0);
    if (d == 0) return false;
    for (uint32_t i = 0; i < rows; i++)
        for (uint32_t j = 0; j < cols; j++)
            if (at(i, j) != (i == j ? d : 0u)) return false;
    return true;
}

std::vector<felt> Mat::apply_row(const std::vector<felt>& v) const {
    std::vector<felt> r(cols, 0);
    for (uint32_t i = 0; i < rows; i++) {
        felt x = v[i];
        if (!x) continue;
        for (uint32_t j = 0; j < cols; j++) {
            felt y = at(i, j);
            if (y) r[j] = F->add(r[j], F->mul(x, y));
        }
    }
    return r;
}

std::string Mat::to_string() const {
    std::ostringstream os;
    for (uint32_t i = 0; i < rows; i++) {
        os << "[";
        for (uint32_t j = 0; j < cols; j++) os << at(i, j) << (j + 1 < cols ? " " : "");
        os << "]";
        if (i + 1 < rows) os << "\n";
    }
    return os.str();
}

namespace {
// in-place Gaussian elimination to rref; returns pivot columns
std::vector<uint32_t> rref_inplace(Mat& A) {
    const FieldTable& F = *A.F;
    std::vector<uint32_t> pivots;
    uint32_t r = 0;
    for (uint32_t c = 0; c < A.cols && r < A.rows; c++) {
        uint32_t pr = r;
        while (pr < A.rows && A.at(pr, c) == 0) pr++;
        if (pr == A.rows) continue;
        if (pr != r)
            for (uint32_t j = 0; j < A.cols; j++) std::swap(A.at(pr, j), A.at(r, j));
        felt inv = F.inv(A.at(r, c));
        for (uint32_t j = 0; j < A.cols; j++) A.at(r, j) = F.mul(A.at(r, j), inv);
        for (uint32_t i = 0; i < A.rows; i++) {
            if (i == r) continue;
            felt x = A.at(i, c);
            if (!x) continue;
            for (uint32_t j = 0; j < A.cols; j++)
                A.at(i, j) = F.sub(A.at(i, j), F.mul(x, A.at(r, j)));
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}
}  // namespace

uint32_t rank(const Mat& A) {
    Mat B = A;
    return static_cast<uint32_t>(rref_inplace(B).size());
}

Mat rref(const Mat& A) {
    Mat B = A;
    auto piv = rref_inplace(B);
    Mat R(*A.F, static_cast<uint32_t>(piv.size()), A.cols);
    for (uint32_t i = 0; i < R.rows; i++)
        for (uint32_t j = 0; j < A.cols; j++) R.at(i, j) = B.at(i, j);
    return R;
}

felt det(const Mat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("det of non-square");
    const FieldTable& F = *A.F;
    Mat B = A;
    felt d = 1;
    uint32_t n = B.rows;
    for (uint32_t c = 0; c < n; c++) {
        uint32_t pr = c;
        while (pr < n && B.at(pr, c) == 0) pr++;
        if (pr == n) return 0;
        if (pr != c) {
            for (uint32_t j = 0; j < n; j++) std::swap(B.at(pr, j), B.at(c, j));
            d = F.neg(d);
        }
        d = F.mul(d, B.at(c, c));
        felt inv = F.inv(B.at(c, c));
        for (uint32_t i = c + 1; i < n; i++) {
            felt x = F.mul(B.at(i, c), inv);
            if (!x) continue;
            for (uint32_t j = c; j < n; j++) B.at(i, j) = F.sub(B.at(i, j), F.mul(x, B.at(c, j)));
        }
    }
    return d;
}

Subspace Subspace::from_rows(const Mat& rows) {
    Subspace s;
    s.F = rows.F;
    s.ambient = rows.cols;
    s.basis = rref(rows);
    return s;
}

Subspace Subspace::full(const FieldTable& Fq, uint32_t n) {
    return from_rows(Mat::identity(Fq, n));
}

bool Subspace::contains(const std::vector<felt>& v) const {
    std::vector<felt> w = v;
    const FieldTable& Fq = *F;
    for (uint32_t i = 0; i < basis.rows; i++) {
        uint32_t p = 0;
        while (p < ambient && basis.at(i, p) == 0) p++;
        if (p == ambient) continue;
        felt x = w[p];
        if (x)
            for (uint32_t j = 0; j < ambient; j++) w[j] = Fq.sub(w[j], Fq.mul(x, basis.at(i, j)));
    }
    for (felt x : w)
        if (x) return false;
    return true;
}

std::vector<felt> Subspace::coordinates(const std::vector<felt>& v) const {
    std::vector<felt> w = v, coords(basis.rows, 0);
    const FieldTable& Fq = *F;
    for (uint32_t i = 0; i < basis.rows; i++) {
        uint32_t p = 0;
        while (p < ambient && basis.at(i, p) == 0) p++;
        felt x = w[p];
        coords[i] = x;
        if (x)
            for (uint32_t j = 0; j < ambient; j++) w[j] = Fq.sub(w[j], Fq.mul(x, basis.at(i, j)));
    }
    for (felt x : w)
        if (x) throw std::invalid_argument("vector not in subspace");
    return coords;
}

Subspace row_kernel(const Mat& A) {
    // kernel of v -> v*A equals kernel of A^T acting on columns; do elimination
    // on A^T augmented with identity
    const FieldTable& F = *A.F;
    Mat T = A.transpose();  // cols x rows
    // solve x*A = 0  <=>  A^T x^T = 0; row-reduce T and read nullspace of columns
    Mat W(F, T.rows, T.cols + T.rows);
    for (uint32_t i = 0; i < T.rows; i++)
        for (uint32_t j = 0; j < T.cols; j++) W.at(i, j) = T.at(i, j);
    // standard right-nullspace of T via column view: instead compute rref of T
    // and extract free columns
    Mat R = T;
    auto piv = rref_inplace(R);
    std::vector<bool> is_pivot(T.cols, false);
    for (uint32_t c : piv) is_pivot[c] = true;
    uint32_t k = T.cols - static_cast<uint32_t>(piv.size());
    Mat basis(F, k, T.cols);
    uint32_t row = 0;
    for (uint32_t c = 0; c < T.cols; c++) {
        if (is_pivot[c]) continue;
        basis.at(row, c) = 1;
        for (uint32_t i = 0; i < piv.size(); i++)
            basis.at(row, piv[i]) = F.neg(R.at(i, c));
        row++;
    }
    return Subspace::from_rows(basis);
}

Mat Mat::inverse() const {
    if (rows != cols) throw std::invalid_argument("inverse of non-square");
    const FieldTable& Fq = *F;
    Mat W(Fq, rows, 2 * rows);
    for (uint32_t i = 0; i < rows; i++) {
        for (uint32_t j = 0; j < rows; j++) W.at(i, j) = at(i, j);
        W.at(i, rows + i) = 1;
    }
    auto piv = rref_inplace(W);
    if (piv.size() != rows || piv.back() != rows - 1)
        throw std::invalid_argument("matrix not invertible");
    Mat R(Fq, rows, rows);
    for (uint32_t i = 0; i < rows; i++)
        for (uint32_t j = 0; j < rows; j++) R.at(i, j) = W.at(i, rows + j);
    return R;
}

poly::P charpoly(const Mat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("charpoly of non-square");
    const FieldTable& F = *A.F;
    uint32_t n = A.rows;
    // spinning算法: product of relative minimal polynomials on a filtration
    std::vector<std::vector<felt>> ech;        // semi-echelon rows (invariant subspace so far)
    std::vector<uint32_t> ech_piv;
    auto reduce = [&](std::vector<felt> v) {
        for (size_t i = 0; i < ech.size(); i++) {
            felt x = v[ech_piv[i]];
            if (x)
                for (uint32_t j = 0; j < n; j++) v[j] = F.sub(v[j], F.mul(x, ech[i][j]));
        }
        return v;
    };
    auto add_ech = [&](std::vector<felt> v) -> bool {
        v = reduce(std::move(v));
        uint32_t p = 0;
        while (p < n && v[p] == 0) p++;
        if (p == n) return false;
        felt inv = F.inv(v[p]);
        for (uint32_t j = 0; j < n; j++) v[j] = F.mul(v[j], inv);
        ech.push_back(std::move(v));
        ech_piv.push_back(p);
        return true;
    };

    poly::P result = {1};
    for (uint32_t seed = 0; seed < n && ech.size() < n; seed++) {
        std::vector<felt> v(n, 0);
        v[seed] = 1;
        std::vector<felt> w = reduce(v);
        bool zero = true;
        for (felt x : w)
            if (x) { zero = false; break; }
        if (zero) continue;
        // local augmented echelon: rows (vector, poly coeffs)
        std::vector<std::vector<felt>> lv;
        std::vector<uint32_t> lp;
        std::vector<poly::P> lc;
        std::vector<felt> cur = v;  // un-reduced Krylov vector
        poly::P curpoly = {1};      // t^0
        while (true) {
            std::vector<felt> r = reduce(cur);
            poly::P rp = curpoly;
            for (size_t i = 0; i < lv.size(); i++) {
                felt x = r[lp[i]];
                if (x) {
                    for (uint32_t j = 0; j < n; j++) r[j] = F.sub(r[j], F.mul(x, lv[i][j]));
                    poly::P scaled = lc[i];
                    for (auto& cc : scaled) cc = F.mul(cc, x);
                    rp = poly::sub(F, rp, scaled);
                }
            }
            uint32_t p = 0;
            while (p < n && r[p] == 0) p++;
            if (p == n) {
                // relation found: rp is the relative minimal polynomial (monic up to lead)
                poly::P mp = poly::monic(F, rp);
                result = poly::mul(F, result, mp);
                break;
            }
            felt inv = F.inv(r[p]);
            for (uint32_t j = 0; j < n; j++) r[j] = F.mul(r[j], inv);
            poly::P rpn = rp;
            for (auto& cc : rpn) cc = F.mul(cc, inv);
            lv.push_back(r);
            lp.push_back(p);
            lc.push_back(rpn);
            // advance
            cur = A.apply_row(cur);
            poly::P shifted(curpoly.size() + 1, 0);
            for (size_t i = 0; i < curpoly.size(); i++) shifted[i + 1] = curpoly[i];
            curpoly = shifted;
        }
        // absorb the chain into the global echelon
        {
            std::vector<felt> kv = v;
            for (size_t step = 0; step < lv.size(); step++) {
                add_ech(kv);
                kv = A.apply_row(kv);
            }
        }
    }
    return result;
}

Mat eval_poly(const poly::P& p, const Mat& A) {
    const FieldTable& F = *A.F;
    Mat r(F, A.rows, A.cols);
    for (size_t i = p.size(); i-- > 0;) {
        r = r * A;
        if (p[i])
            for (uint32_t d = 0; d < A.rows; d++) r.at(d, d) = F.add(r.at(d, d), p[i]);
    }
    return r;
}

uint64_t element_order(const Mat& M, uint64_t multiple) {
    if (!M.pow(multiple).is_identity()) throw std::invalid_argument("element_order: multiple is wrong");
    uint64_t ord = multiple;
    for (auto& [r, e] : factorize_u64(multiple)) {
        (void)e;
        while (ord % r == 0 && M.pow(ord / r).is_identity()) ord /= r;
    }
    return ord;
}

SingerData singer(const FieldTable& F, uint32_t n) {
    ExtField E(F, n);
    SingerData s;
    s.n = n;
    s.F = &F;
    s.order = E.qn - 1;
    s.minpoly = E.minpoly;
    s.c = Mat(F, n, n);
    for (uint32_t i = 0; i + 1 < n; i++) s.c.at(i, i + 1) = 1;
    for (uint32_t j = 0; j < n; j++) s.c.at(n - 1, j) = F.neg(E.minpoly[j]);
    if (n == 1) s.c.at(0, 0) = F.neg(E.minpoly[0]);
    s.phi = frobenius_matrix(E, 1);
    return s;
}

std::vector<uint32_t> jordan_partition_unipotent(const Mat& u) {
    if (u.rows != u.cols) throw std::invalid_argument("jordan: non-square");
    const FieldTable& F = *u.F;
    uint32_t n = u.rows;
    Mat N = u - Mat::identity(F, n);
    Mat Nk = Mat::identity(F, n);
    std::vector<uint32_t> ranks;  // ranks[k] = rank(N^k)
    ranks.push_back(n);
    for (uint32_t k = 1; k <= n; k++) {
        Nk = Nk * N;
        ranks.push_back(rank(Nk));
        if (ranks.back() == 0) break;
    }
    if (ranks.back() != 0) throw std::invalid_argument("jordan_partition_unipotent: input not unipotent");
    // number of blocks of size >= k is ranks[k-1] - ranks[k]
    std::vector<uint32_t> part;
    uint32_t maxk = static_cast<uint32_t>(ranks.size()) - 1;
    for (uint32_t k = 1; k <= maxk; k++) {
        uint32_t ge_k = ranks[k - 1] - ranks[k];
        uint32_t ge_k1 = k < maxk ? ranks[k] - ranks[k + 1] : 0;
        for (uint32_t i = 0; i < ge_k - ge_k1; i++) part.push_back(k);
    }
    std::sort(part.rbegin(), part.rend());
    return part;
}

Mat exterior_square(const Mat& g) {
    if (g.rows != g.cols) throw std::invalid_argument("exterior_square: non-square");
    const FieldTable& F = *g.F;
    uint32_t m = g.rows;
    std::vector<std::pair<uint32_t, uint32_t>> idx;
    for (uint32_t i = 0; i < m; i++)
        for (uint32_t j = i + 1; j < m; j++) idx.push_back({i, j});
    uint32_t d = static_cast<uint32_t>(idx.size());
    Mat r(F, d, d);
    for (uint32_t a = 0; a < d; a++) {
        auto [i, j] = idx[a];
        for (uint32_t b = 0; b < d; b++) {
            auto [k, l] = idx[b];
            r.at(a, b) = F.sub(F.mul(g.at(i, k), g.at(j, l)), F.mul(g.at(i, l), g.at(j, k)));
        }
    }
    return r;
}

Mat twisted_tensor(const Mat& g) {
    const FieldTable& F = *g.F;
    if (F.f % 2 != 0) throw std::invalid_argument("twisted_tensor: field order is not a square");
    uint32_t h = F.f / 2;
    uint32_t m = g.rows;
    Mat r(F, m * m, m * m);
    for (uint32_t i = 0; i < m; i++)
        for (uint32_t j = 0; j < m; j++)
            for (uint32_t k = 0; k < m; k++)
                for (uint32_t l = 0; l < m; l++)
                    r.at(i * m + j, k * m + l) = F.mul(g.at(i, k), F.frobenius(g.at(j, l), h));
    return r;
}

std::vector<Subspace> invariant_summands(const Mat& c, const Subspace& V, uint32_t target_dim) {
    const FieldTable& F = *c.F;
    uint32_t k = V.dim();
    // restriction of c to V
    Mat A(F, k, k);
    for (uint32_t i = 0; i < k; i++) {
        std::vector<felt> row(V.ambient);
        for (uint32_t j = 0; j < V.ambient; j++) row[j] = V.basis.at(i, j);
        std::vector<felt> img = c.apply_row(row);
        std::vector<felt> coords;
        try {
            coords = V.coordinates(img);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("invariant_summands: V is not c-invariant");
        }
        for (uint32_t j = 0; j < k; j++) A.at(i, j) = coords[j];
    }
    poly::P cp = charpoly(A);
    auto facs = poly::factor(F, cp);
    std::set<Subspace> found;
    for (auto& [h, mult] : facs) {
        (void)mult;
        if (static_cast<uint32_t>(poly::deg(h)) != target_dim) continue;
        Mat hA = eval_poly(h, A);
        Subspace K = row_kernel(hA);
        uint32_t kd = K.dim();
        if (kd == 0) continue;
        unsigned __int128 count = 1;
        for (uint32_t i = 0; i < kd; i++) count *= F.q;
        if (count > (1u << 20)) throw std::runtime_error("invariant_summands: kernel too large to enumerate");
        uint64_t total = static_cast<uint64_t>(count);
        for (uint64_t w = 1; w < total; w++) {
            // vector in K-coordinates
            std::vector<felt> kc(kd);
            uint64_t t = w;
            for (uint32_t i = 0; i < kd; i++) { kc[i] = static_cast<felt>(t % F.q); t /= F.q; }
            // lift to V-coordinates
            std::vector<felt> vc(k, 0);
            for (uint32_t i = 0; i < kd; i++)
                if (kc[i])
                    for (uint32_t j = 0; j < k; j++)
                        vc[j] = F.add(vc[j], F.mul(kc[i], K.basis.at(i, j)));
            // cyclic module span{vc * A^t}
            Mat gens(F, target_dim, k);
            std::vector<felt> cur = vc;
            for (uint32_t t2 = 0; t2 < target_dim; t2++) {
                for (uint32_t j = 0; j < k; j++) gens.at(t2, j) = cur[j];
                cur = A.apply_row(cur);
            }
            Subspace mod = Subspace::from_rows(gens);
            if (mod.dim() != target_dim) continue;  // can happen only in degenerate scalar cases
            // lift to ambient coordinates
            Mat amb(F, mod.dim(), V.ambient);
            for (uint32_t i = 0; i < mod.dim(); i++) {
                std::vector<felt> row(k);
                for (uint32_t j = 0; j < k; j++) row[j] = mod.basis.at(i, j);
                std::vector<felt> lifted(V.ambient, 0);
                for (uint32_t j = 0; j < k; j++)
                    if (row[j])
                        for (uint32_t jj = 0; jj < V.ambient; jj++)
                            lifted[jj] = F.add(lifted[jj], F.mul(row[j], V.basis.at(j, jj)));
                for (uint32_t jj = 0; jj < V.ambient; jj++) amb.at(i, jj) = lifted[jj];
            }
            found.insert(Subspace::from_rows(amb));
        }
    }
    return std::vector<Subspace>(found.begin(), found.end());
}

Mat mult_matrix(const ExtField& E, ExtField::elt a) {
    const FieldTable& F = *E.base;
    Mat r(F, E.n, E.n);
    ExtField::elt xi = 1;
    for (uint32_t i = 0; i < E.n; i++) {
        ExtField::elt v = E.mul(xi, a);
        for (uint32_t j = 0; j < E.n; j++) r.at(i, j) = E.digit(v, j);
        xi = E.mul(xi, E.x());
    }
    return r;
}

Mat frobenius_matrix(const ExtField& E, uint32_t k) {
    const FieldTable& F = *E.base;
    Mat r(F, E.n, E.n);
    ExtField::elt xi = 1;
    for (uint32_t i = 0; i < E.n; i++) {
        ExtField::elt v = E.frob(xi, k);
        for (uint32_t j = 0; j < E.n; j++) r.at(i, j) = E.digit(v, j);
        xi = E.mul(xi, E.x());
    }
    return r;
}

}  // namespace factoriza

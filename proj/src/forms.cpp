#include "factoriza/forms.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace factoriza {

felt ClassicalForm::bil(const std::vector<felt>& v, const std::vector<felt>& w) const {
    const FieldTable& Fq = *F;
    felt r = 0;
    bool herm = kind == FormKind::hermitian;
    for (uint32_t i = 0; i < dim; i++) {
        if (!v[i]) continue;
        felt acc = 0;
        for (uint32_t j = 0; j < dim; j++) {
            felt g = gram.at(i, j);
            if (!g || !w[j]) continue;
            acc = Fq.add(acc, Fq.mul(g, herm ? conj(w[j]) : w[j]));
        }
        r = Fq.add(r, Fq.mul(v[i], acc));
    }
    return r;
}

felt ClassicalForm::qval(const std::vector<felt>& v) const {
    if (kind != FormKind::quadratic) throw std::logic_error("qval on non-quadratic form");
    const FieldTable& Fq = *F;
    felt r = 0;
    for (uint32_t i = 0; i < dim; i++) {
        if (!v[i]) continue;
        r = Fq.add(r, Fq.mul(Fq.mul(v[i], v[i]), qdiag[i]));
        for (uint32_t j = i + 1; j < dim; j++)
            if (v[j] && gram.at(i, j)) r = Fq.add(r, Fq.mul(Fq.mul(v[i], v[j]), gram.at(i, j)));
    }
    return r;
}

bool ClassicalForm::is_isometry(const Mat& g) const {
    if (g.rows != dim || g.cols != dim) return false;
    Mat rhs = g * gram;
    if (kind == FormKind::hermitian)
        rhs = rhs * g.frob_entries(conj_power()).transpose();
    else
        rhs = rhs * g.transpose();
    if (!(rhs == gram)) return false;
    if (kind == FormKind::quadratic) {
        std::vector<felt> row(dim);
        for (uint32_t i = 0; i < dim; i++) {
            for (uint32_t j = 0; j < dim; j++) row[j] = g.at(i, j);
            if (qval(row) != qdiag[i]) return false;
        }
    }
    return true;
}

ClassicalForm standard_form(FormKind kind, uint32_t dim, const FieldTable& F, TypeSign sign) {
    ClassicalForm c;
    c.kind = kind;
    c.sign = sign;
    c.F = &F;
    c.dim = dim;
    c.gram = Mat(F, dim, dim);
    bool even = F.p == 2;
    switch (kind) {
        case FormKind::symplectic: {
            if (dim % 2 || sign != TypeSign::none)
                throw std::invalid_argument("standard_form: symplectic needs even dim, no sign");
            uint32_t m = dim / 2;
            for (uint32_t i = 0; i < m; i++) {
                c.gram.at(i, m + i) = 1;
                c.gram.at(m + i, i) = even ? 1 : F.neg(1);
            }
            break;
        }
        case FormKind::hermitian: {
            if (F.f % 2) throw std::invalid_argument("standard_form: hermitian needs a square field order");
            uint32_t m = dim / 2;
            for (uint32_t i = 0; i < m; i++) {
                c.gram.at(i, m + i) = 1;
                c.gram.at(m + i, i) = 1;
            }
            if (dim % 2) c.gram.at(dim - 1, dim - 1) = 1;
            break;
        }
        case FormKind::quadratic: {
            c.qdiag.assign(dim, 0);
            if (sign == TypeSign::plus) {
                if (dim % 2) throw std::invalid_argument("plus type needs even dim");
                uint32_t m = dim / 2;
                for (uint32_t i = 0; i < m; i++) {
                    c.gram.at(i, m + i) = 1;
                    c.gram.at(m + i, i) = 1;
                }
            } else if (sign == TypeSign::odd_dim) {
                if (dim % 2 == 0) throw std::invalid_argument("odd_dim type needs odd dim");
                if (even) throw std::invalid_argument("odd-dimensional orthogonal over even q not supported");
                uint32_t m = dim / 2;
                for (uint32_t i = 0; i < m; i++) {
                    c.gram.at(i, m + i) = 1;
                    c.gram.at(m + i, i) = 1;
                }
                c.qdiag[dim - 1] = 1;
                c.gram.at(dim - 1, dim - 1) = F.add(1, 1);  // B(v,v) = 2 Q(v)
            } else if (sign == TypeSign::minus) {
                if (dim % 2) throw std::invalid_argument("minus type needs even dim");
                uint32_t m = dim / 2;
                // hyperbolic pairs (e_i, f_i) for i < m-1; the (e_m, f_m) block is
                // replaced by an anisotropic 2-space
                for (uint32_t i = 0; i + 1 < m; i++) {
                    c.gram.at(i, m + i) = 1;
                    c.gram.at(m + i, i) = 1;
                }
                uint32_t a = m - 1, b = dim - 1;
                if (even) {
                    // Q(e)=1, Q(f)=delta, (e,f)=1 with x^2+x+delta irreducible, delta least
                    felt delta = 0;
                    for (felt d = 1; d < F.q && !delta; d++) {
                        poly::P pp = {d, 1, 1};
                        if (poly::is_irreducible(F, pp)) delta = d;
                    }
                    if (!delta) throw std::logic_error("no irreducible x^2+x+delta");
                    c.qdiag[a] = 1;
                    c.qdiag[b] = delta;
                    c.gram.at(a, b) = 1;
                    c.gram.at(b, a) = 1;
                } else {
                    // Q(x e + y f) = x^2 - delta y^2, delta the least non-square
                    felt delta = 0;
                    for (felt d = 2; d < F.q && !delta; d++)
                        if (!F.is_square(d)) delta = d;
                    if (!delta) throw std::logic_error("no non-square");
                    c.qdiag[a] = 1;
                    c.qdiag[b] = F.neg(delta);
                    c.gram.at(a, a) = F.add(1, 1);
                    c.gram.at(b, b) = F.mul(F.neg(delta), F.add(1, 1));
                }
            } else {
                throw std::invalid_argument("quadratic form needs a type sign");
            }
            break;
        }
    }
    return c;
}

uint32_t dickson_invariant(const Mat& g, const ClassicalForm& form) {
    if (form.kind != FormKind::quadratic || form.F->p != 2)
        throw std::invalid_argument("dickson_invariant: quadratic form over even q required");
    if (!form.is_isometry(g)) throw std::invalid_argument("dickson_invariant: not an isometry");
    return rank(g - Mat::identity(*form.F, form.dim)) & 1;
}

InvolutionType involution_type(const Mat& x, const ClassicalForm& symp) {
    if (symp.kind != FormKind::symplectic || symp.F->p != 2)
        throw std::invalid_argument("involution_type: symplectic form over even q required");
    if (!symp.is_isometry(x)) throw std::invalid_argument("involution_type: not an isometry");
    if (x.is_identity() || !(x * x).is_identity())
        throw std::invalid_argument("involution_type: not an involution");
    uint32_t n = symp.dim;
    uint32_t s = rank(x - Mat::identity(*symp.F, n));
    // type a iff (v, v^x) = 0 for all v; the map v -> (v, v^x) is additive in
    // char 2 and quadratic in scalars, so vanishing on a basis suffices
    bool type_a = true;
    std::vector<felt> e(n, 0);
    for (uint32_t i = 0; i < n && type_a; i++) {
        e.assign(n, 0);
        e[i] = 1;
        auto ex = x.apply_row(e);
        if (symp.bil(e, ex) != 0) type_a = false;
    }
    if (type_a) return {'a', s};
    return {static_cast<char>(s % 2 ? 'b' : 'c'), s};
}

// ---------------------------------------------------------------------------
// geometric domains

uint64_t GeometricDomain::key_of(const std::vector<felt>& rep) const {
    const FieldTable& F = *form->F;
    unsigned __int128 key = 0;
    for (size_t i = rep.size(); i-- > 0;) key = key * F.q + rep[i];
    if (key > UINT64_MAX) throw std::runtime_error("domain key overflow");
    return static_cast<uint64_t>(key);
}

namespace {
void canonicalize_point(const FieldTable& F, std::vector<felt>& v) {
    uint32_t p = 0;
    while (p < v.size() && v[p] == 0) p++;
    if (p == v.size()) throw std::invalid_argument("zero vector has no projective point");
    if (v[p] != 1) {
        felt inv = F.inv(v[p]);
        for (auto& x : v) x = F.mul(x, inv);
    }
}
}  // namespace

uint32_t GeometricDomain::point_of(std::vector<felt> vec) const {
    const FieldTable& F = *form->F;
    if (kind == DomainKind::totally_singular_kspaces) throw std::logic_error("point_of is for 1-space domains");
    canonicalize_point(F, vec);
    auto it = index.find(key_of(vec));
    if (it == index.end()) throw std::out_of_range("vector is not in the domain");
    return it->second;
}

uint32_t GeometricDomain::image_of(uint32_t pt, const Mat& g) const {
    return image_of_semilinear(pt, 0, g);
}

uint32_t GeometricDomain::image_of_semilinear(uint32_t pt, uint32_t frob_k, const Mat& g) const {
    const FieldTable& F = *form->F;
    uint32_t n = form->dim;
    if (kind == DomainKind::totally_singular_kspaces) {
        Mat b(F, k, n);
        for (uint32_t i = 0; i < k; i++)
            for (uint32_t j = 0; j < n; j++)
                b.at(i, j) = frob_k ? F.frobenius(points[pt][i * n + j], frob_k) : points[pt][i * n + j];
        Mat img = rref(b * g);
        auto it = index.find(key_of(img.a));
        if (it == index.end()) throw std::out_of_range("k-space image not in domain");
        return it->second;
    }
    std::vector<felt> v = points[pt];
    if (frob_k)
        for (auto& x : v) x = F.frobenius(x, frob_k);
    std::vector<felt> w(n, 0);
    for (uint32_t i = 0; i < n; i++) {
        if (!v[i]) continue;
        for (uint32_t j = 0; j < n; j++) {
            felt y = g.at(i, j);
            if (y) w[j] = F.add(w[j], F.mul(v[i], y));
        }
    }
    return point_of(std::move(w));
}

std::vector<uint32_t> GeometricDomain::action_images(const Mat& g) const {
    return action_images_semilinear(0, g);
}

std::vector<uint32_t> GeometricDomain::action_images_semilinear(uint32_t frob_k, const Mat& g) const {
    std::vector<uint32_t> img(points.size());
    for (uint32_t i = 0; i < points.size(); i++) img[i] = image_of_semilinear(i, frob_k, g);
    return img;
}

GeometricDomain enumerate_domain(std::shared_ptr<const ClassicalForm> form, DomainKind kind,
                                 uint32_t k, uint64_t cap) {
    const ClassicalForm& f = *form;
    const FieldTable& F = *f.F;
    GeometricDomain d;
    d.form = form;
    d.kind = kind;
    d.k = kind == DomainKind::totally_singular_kspaces ? k : 1;

    uint32_t n = f.dim;
    auto accept_point = [&](const std::vector<felt>& v) -> bool {
        switch (kind) {
            case DomainKind::projective_points: return true;
            case DomainKind::singular_points:
                if (f.kind == FormKind::quadratic) return f.qval(v) == 0;
                if (f.kind == FormKind::hermitian) return f.bil(v, v) == 0;
                return true;  // symplectic: all points isotropic
            case DomainKind::nondegenerate_points:
                if (f.kind == FormKind::hermitian) return f.bil(v, v) != 0;
                if (f.kind == FormKind::quadratic) {
                    if (F.p == 2) throw std::invalid_argument("use nonsingular_points for even q");
                    return f.qval(v) != 0;
                }
                throw std::invalid_argument("nondegenerate points need hermitian or quadratic form");
            case DomainKind::nonsingular_points:
                if (f.kind != FormKind::quadratic || F.p != 2)
                    throw std::invalid_argument("nonsingular points need quadratic form, even q");
                return f.qval(v) != 0;
            case DomainKind::minus_nondegenerate_points: {
                if (f.kind != FormKind::quadratic || F.p == 2 || n % 2 == 0)
                    throw std::invalid_argument("minus nondegenerate points need odd-dim quadratic, odd q");
                if (f.qval(v) == 0) return false;
                // perp of v: kernel of w -> B(w, v)
                Mat col(F, n, 1);
                for (uint32_t i = 0; i < n; i++) {
                    felt acc = 0;
                    for (uint32_t j = 0; j < n; j++) acc = F.add(acc, F.mul(f.gram.at(i, j), v[j]));
                    col.at(i, 0) = acc;
                }
                Subspace perp = row_kernel(col);
                uint32_t pd = perp.dim();
                Mat G(F, pd, pd);
                std::vector<felt> bi(n), bj(n);
                for (uint32_t i = 0; i < pd; i++)
                    for (uint32_t j = 0; j < pd; j++) {
                        for (uint32_t t = 0; t < n; t++) {
                            bi[t] = perp.basis.at(i, t);
                            bj[t] = perp.basis.at(j, t);
                        }
                        G.at(i, j) = f.bil(bi, bj);
                    }
                felt dd = det(G);
                uint32_t m = pd / 2;
                felt tw = F.pow(F.neg(1), m);
                return !F.is_square(F.mul(dd, tw));  // minus type iff (-1)^m det is a non-square
            }
            case DomainKind::totally_singular_kspaces: return false;  // handled below
        }
        return false;
    };

    if (kind != DomainKind::totally_singular_kspaces) {
        std::vector<felt> v(n, 0);
        for (uint32_t pivot = 0; pivot < n; pivot++) {
            uint64_t free = 1;
            for (uint32_t i = pivot + 1; i < n; i++) free *= F.q;
            for (uint64_t t = 0; t < free; t++) {
                std::fill(v.begin(), v.end(), 0);
                v[pivot] = 1;
                uint64_t tt = t;
                for (uint32_t i = pivot + 1; i < n; i++) {
                    v[i] = static_cast<felt>(tt % F.q);
                    tt /= F.q;
                }
                if (!accept_point(v)) continue;
                if (d.points.size() >= cap) throw std::runtime_error("enumerate_domain: cap exceeded");
                d.index.emplace(d.key_of(v), static_cast<uint32_t>(d.points.size()));
                d.points.push_back(v);
            }
        }
        return d;
    }

    // totally singular k-spaces, built by extending singular point spans
    auto singular = enumerate_domain(form, DomainKind::singular_points, 1, cap);
    auto is_ts = [&](const Mat& basis) {
        std::vector<std::vector<felt>> rows(basis.rows, std::vector<felt>(n));
        for (uint32_t i = 0; i < basis.rows; i++)
            for (uint32_t j = 0; j < n; j++) rows[i][j] = basis.at(i, j);
        for (uint32_t i = 0; i < basis.rows; i++) {
            if (f.kind == FormKind::quadratic && f.qval(rows[i]) != 0) return false;
            if (f.kind == FormKind::hermitian && f.bil(rows[i], rows[i]) != 0) return false;
            for (uint32_t j = i + 1; j < basis.rows; j++)
                if (f.bil(rows[i], rows[j]) != 0 || f.bil(rows[j], rows[i]) != 0) return false;
        }
        return true;
    };
    std::vector<Mat> layer;
    for (auto& p : singular.points) {
        Mat b(F, 1, n);
        for (uint32_t j = 0; j < n; j++) b.at(0, j) = p[j];
        layer.push_back(b);
    }
    for (uint32_t level = 2; level <= k; level++) {
        std::vector<Mat> next;
        std::unordered_map<uint64_t, bool> seen;
        for (auto& b : layer)
            for (auto& p : singular.points) {
                Mat ext(F, b.rows + 1, n);
                for (uint32_t i = 0; i < b.rows; i++)
                    for (uint32_t j = 0; j < n; j++) ext.at(i, j) = b.at(i, j);
                for (uint32_t j = 0; j < n; j++) ext.at(b.rows, j) = p[j];
                Mat r = rref(ext);
                if (r.rows != level) continue;
                if (!is_ts(r)) continue;
                unsigned __int128 key = 0;
                for (size_t i = r.a.size(); i-- > 0;) key = key * F.q + r.a[i];
                uint64_t k64 = static_cast<uint64_t>(key);
                if (seen.count(k64)) continue;
                seen[k64] = true;
                next.push_back(r);
                if (next.size() > cap) throw std::runtime_error("enumerate_domain: cap exceeded");
            }
        layer = std::move(next);
    }
    std::vector<std::vector<felt>> flat;
    for (auto& b : layer) flat.push_back(b.a);
    std::sort(flat.begin(), flat.end());
    for (auto& a : flat) {
        d.index.emplace(d.key_of(a), static_cast<uint32_t>(d.points.size()));
        d.points.push_back(a);
    }
    return d;
}

// ---------------------------------------------------------------------------
// minus-type quadratic forms with Omega label

bool arf_minus(const FieldTable& F, const std::vector<felt>& qvals, const Mat& gram) {
    // Arf invariant w.r.t. the standard hyperbolic pairing: sum Q(e_i) Q(f_i);
    // minus type iff the absolute trace is 1
    uint32_t n = static_cast<uint32_t>(qvals.size());
    uint32_t m = n / 2;
    felt arf = 0;
    for (uint32_t i = 0; i < m; i++) {
        if (gram.at(i, m + i) != 1) throw std::logic_error("arf_minus: unexpected gram");
        arf = F.add(arf, F.mul(qvals[i], qvals[m + i]));
    }
    felt tr = 0, cur = arf;
    for (uint32_t i = 0; i < F.f; i++) {
        tr = F.add(tr, cur);
        cur = F.mul(cur, cur);
    }
    return tr == 1;
}

felt OmegaFormsDomain::qval_of(uint32_t fi, const std::vector<felt>& v) const {
    const FieldTable& F = *symp->F;
    const auto& qv = form_qvals[fi];
    uint32_t n = symp->dim;
    felt r = 0;
    for (uint32_t i = 0; i < n; i++) {
        if (!v[i]) continue;
        r = F.add(r, F.mul(F.mul(v[i], v[i]), qv[i]));
        for (uint32_t j = i + 1; j < n; j++)
            if (v[j] && symp->gram.at(i, j)) r = F.add(r, F.mul(F.mul(v[i], v[j]), symp->gram.at(i, j)));
    }
    return r;
}

uint32_t OmegaFormsDomain::form_image(uint32_t fi, const Mat& ginv) const {
    const FieldTable& F = *symp->F;
    uint32_t n = symp->dim;
    std::vector<felt> newq(n), row(n);
    for (uint32_t i = 0; i < n; i++) {
        for (uint32_t j = 0; j < n; j++) row[j] = ginv.at(i, j);
        newq[i] = qval_of(fi, row);
    }
    unsigned __int128 key = 0;
    for (size_t i = newq.size(); i-- > 0;) key = key * F.q + newq[i];
    auto it = form_index.find(static_cast<uint64_t>(key));
    if (it == form_index.end()) throw std::logic_error("form image left the minus-form set");
    return it->second;
}

std::vector<uint32_t> OmegaFormsDomain::action_images_forms(const Mat& g) const {
    Mat ginv = g.inverse();
    std::vector<uint32_t> img(num_forms());
    for (uint32_t fi = 0; fi < num_forms(); fi++) img[fi] = form_image(fi, ginv);
    return img;
}

std::vector<uint32_t> OmegaFormsDomain::action_images(const Mat& g) const {
    const FieldTable& F = *symp->F;
    Mat ginv = g.inverse();
    uint32_t nf = num_forms();
    std::vector<uint32_t> img(2 * nf);
    Mat I = Mat::identity(F, symp->dim);
    for (uint32_t fi = 0; fi < nf; fi++) {
        uint32_t fj = form_image(fi, ginv);
        Mat sigma = transversal[fi] * g * transversal[fj].inverse();
        uint32_t flip = rank(sigma - I) & 1;  // Dickson invariant w.r.t. the base form
        for (uint32_t eps = 0; eps < 2; eps++) img[2 * fi + eps] = 2 * fj + (eps ^ flip);
    }
    return img;
}

OmegaFormsDomain make_omega_forms_domain(std::shared_ptr<const ClassicalForm> symp,
                                         const std::vector<Mat>& sp_gens) {
    const ClassicalForm& s = *symp;
    const FieldTable& F = *s.F;
    if (s.kind != FormKind::symplectic || F.p != 2)
        throw std::invalid_argument("omega forms domain needs a symplectic form over even q");
    uint32_t n = s.dim;

    OmegaFormsDomain d;
    d.symp = symp;
    d.base_form = standard_form(FormKind::quadratic, n, F, TypeSign::minus);
    if (!(d.base_form.gram == s.gram)) throw std::logic_error("minus form polarization mismatch");

    uint64_t total = 1;
    for (uint32_t i = 0; i < n; i++) total *= F.q;
    auto pack = [&](const std::vector<felt>& q) {
        unsigned __int128 key = 0;
        for (size_t i = q.size(); i-- > 0;) key = key * F.q + q[i];
        return static_cast<uint64_t>(key);
    };
    for (uint64_t t = 0; t < total; t++) {
        std::vector<felt> qv(n);
        uint64_t tt = t;
        for (uint32_t i = 0; i < n; i++) {
            qv[i] = static_cast<felt>(tt % F.q);
            tt /= F.q;
        }
        if (!arf_minus(F, qv, s.gram)) continue;
        d.form_index.emplace(pack(qv), static_cast<uint32_t>(d.form_qvals.size()));
        d.form_qvals.push_back(qv);
    }

    // transversal by BFS over the symplectic generators
    uint32_t base = d.form_index.at(pack(d.base_form.qdiag));
    d.transversal.assign(d.num_forms(), Mat());
    std::vector<bool> seen(d.num_forms(), false);
    d.transversal[base] = Mat::identity(F, n);
    seen[base] = true;
    std::deque<uint32_t> queue = {base};
    std::vector<Mat> invs;
    for (auto& g : sp_gens) invs.push_back(g.inverse());
    while (!queue.empty()) {
        uint32_t fi = queue.front();
        queue.pop_front();
        for (size_t gi = 0; gi < sp_gens.size(); gi++) {
            uint32_t fj = d.form_image(fi, invs[gi]);
            if (seen[fj]) continue;
            seen[fj] = true;
            d.transversal[fj] = d.transversal[fi] * sp_gens[gi];
            queue.push_back(fj);
        }
    }
    for (bool b : seen)
        if (!b) throw std::logic_error("Sp generators are not transitive on minus forms");
    return d;
}

}  // namespace factoriza

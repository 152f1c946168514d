#include "factoriza/groups.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace factoriza {

namespace {
void req(bool cond, const std::string& msg) {
    if (!cond) throw std::logic_error("construction check failed: " + msg);
}

u128 ipow(uint64_t b, uint32_t e) {
    u128 r = 1;
    for (uint32_t i = 0; i < e; i++) r *= b;
    return r;
}

uint64_t upow(uint64_t b, uint32_t e) {
    uint64_t r = 1;
    for (uint32_t i = 0; i < e; i++) r *= b;
    return r;
}

const FieldTable& field_of(uint32_t q) {
    auto fac = factorize_u64(q);
    if (fac.size() != 1) throw std::invalid_argument("prime power expected");
    return make_field((uint32_t)fac[0].first, (uint32_t)fac[0].second);
}
}  // namespace

// ---------------------------------------------------------------------------
// order formulas

u128 order_gl(uint32_t n, uint64_t q) {
    u128 r = ipow(q, n * (n - 1) / 2);
    for (uint32_t i = 1; i <= n; i++) r *= ipow(q, i) - 1;
    return r;
}
u128 order_sl(uint32_t n, uint64_t q) { return order_gl(n, q) / (q - 1); }
u128 order_sp(uint32_t dim, uint64_t q) {
    uint32_t m = dim / 2;
    u128 r = ipow(q, m * m);
    for (uint32_t i = 1; i <= m; i++) r *= ipow(q, 2 * i) - 1;
    return r;
}
u128 order_gu(uint32_t n, uint64_t q) {
    u128 r = ipow(q, n * (n - 1) / 2);
    for (uint32_t i = 1; i <= n; i++) {
        u128 t = ipow(q, i);
        r *= (i % 2) ? t + 1 : t - 1;
    }
    return r;
}
u128 order_su(uint32_t n, uint64_t q) { return order_gu(n, q) / (q + 1); }
u128 order_so_odd(uint32_t dim, uint64_t q) {
    uint32_t m = dim / 2;
    u128 r = ipow(q, m * m);
    for (uint32_t i = 1; i <= m; i++) r *= ipow(q, 2 * i) - 1;
    return r;
}
u128 order_o_even(uint32_t dim, uint64_t q, int eps) {
    uint32_t m = dim / 2;
    u128 r = 2 * ipow(q, m * (m - 1));
    r *= eps > 0 ? ipow(q, m) - 1 : ipow(q, m) + 1;
    for (uint32_t i = 1; i < m; i++) r *= ipow(q, 2 * i) - 1;
    return r;
}
u128 order_omega_even(uint32_t dim, uint64_t q, int eps) { return order_o_even(dim, q, eps) / 2; }
u128 order_so_pm_odd(uint32_t dim, uint64_t q, int eps) {
    uint32_t m = dim / 2;
    u128 r = ipow(q, m * (m - 1));
    r *= eps > 0 ? ipow(q, m) - 1 : ipow(q, m) + 1;
    for (uint32_t i = 1; i < m; i++) r *= ipow(q, 2 * i) - 1;
    return r;
}
u128 order_psl(uint32_t n, uint64_t q) { return order_sl(n, q) / std::gcd<uint64_t>(n, q - 1); }
u128 order_pgl(uint32_t n, uint64_t q) { return order_gl(n, q) / (q - 1); }
u128 order_psu(uint32_t n, uint64_t q) { return order_su(n, q) / std::gcd<uint64_t>(n, q + 1); }
u128 order_pgu(uint32_t n, uint64_t q) { return order_gu(n, q) / (q + 1); }
u128 order_psp(uint32_t dim, uint64_t q) { return order_sp(dim, q) / std::gcd<uint64_t>(2, q - 1); }

// ---------------------------------------------------------------------------
// generator sets

std::vector<Mat> sl_gens(const FieldTable& F, uint32_t n) {
    std::vector<Mat> out;
    std::vector<felt> lambdas = {1};
    for (uint32_t i = 1; i < F.f; i++) lambdas.push_back(F.pow(F.generator, i));
    for (uint32_t i = 0; i < n; i++)
        for (uint32_t j = 0; j < n; j++) {
            if (i == j) continue;
            for (felt l : lambdas) {
                Mat e = Mat::identity(F, n);
                e.at(i, j) = l;
                out.push_back(e);
            }
        }
    return out;
}

namespace {
Mat symp_transvection(const ClassicalForm& f, const std::vector<felt>& v, felt lambda) {
    const FieldTable& F = *f.F;
    Mat t = Mat::identity(F, f.dim);
    std::vector<felt> e(f.dim, 0);
    for (uint32_t i = 0; i < f.dim; i++) {
        e.assign(f.dim, 0);
        e[i] = 1;
        felt c = F.mul(lambda, f.bil(e, v));
        if (c)
            for (uint32_t j = 0; j < f.dim; j++) t.at(i, j) = F.add(t.at(i, j), F.mul(c, v[j]));
    }
    return t;
}

std::vector<std::vector<felt>> small_support_vectors(const FieldTable& F, uint32_t n) {
    std::vector<std::vector<felt>> out;
    for (uint32_t i = 0; i < n; i++) {
        std::vector<felt> v(n, 0);
        v[i] = 1;
        out.push_back(v);
        for (uint32_t j = i + 1; j < n; j++)
            for (felt c = 1; c < F.q; c++) {
                std::vector<felt> w(n, 0);
                w[i] = 1;
                w[j] = c;
                out.push_back(w);
            }
    }
    return out;
}
}  // namespace

std::vector<Mat> symplectic_gens(const ClassicalForm& f) {
    const FieldTable& F = *f.F;
    std::vector<Mat> out;
    std::vector<felt> lambdas = {1};
    for (uint32_t i = 1; i < F.f; i++) lambdas.push_back(F.pow(F.generator, i));
    if (F.q > 2 && F.f == 1) lambdas.push_back(F.generator);
    for (auto& v : small_support_vectors(F, f.dim))
        for (felt l : lambdas) {
            Mat t = symp_transvection(f, v, l);
            if (!t.is_identity()) {
                req(f.is_isometry(t), "symplectic transvection");
                out.push_back(t);
            }
        }
    return out;
}

std::vector<Mat> su_gens(const ClassicalForm& f) {
    const FieldTable& F = *f.F;
    uint32_t h = f.conj_power();
    std::vector<felt> tr0;
    for (felt l = 1; l < F.q; l++)
        if (F.add(l, F.frobenius(l, h)) == 0) tr0.push_back(l);
    // transvection directions: all isotropic points when the space is small
    // enough to enumerate, else the small-support ones
    std::vector<std::vector<felt>> dirs;
    u128 total = ipow(F.q, f.dim);
    if (total <= 300000) {
        auto dom = enumerate_domain(std::make_shared<const ClassicalForm>(f),
                                    DomainKind::singular_points);
        dirs = dom.points;
    } else {
        dirs = small_support_vectors(F, f.dim);
    }
    std::vector<Mat> out;
    for (auto& v : dirs) {
        if (f.bil(v, v) != 0) continue;
        for (felt l : tr0) {
            Mat t = Mat::identity(F, f.dim);
            std::vector<felt> e(f.dim, 0);
            for (uint32_t i = 0; i < f.dim; i++) {
                e.assign(f.dim, 0);
                e[i] = 1;
                felt c = F.mul(l, f.bil(e, v));
                if (c)
                    for (uint32_t j = 0; j < f.dim; j++) t.at(i, j) = F.add(t.at(i, j), F.mul(c, v[j]));
            }
            if (!t.is_identity()) {
                req(f.is_isometry(t), "unitary transvection");
                out.push_back(t);
            }
        }
    }
    return out;
}

std::vector<Mat> gu_gens(const ClassicalForm& f) {
    const FieldTable& F = *f.F;
    auto out = su_gens(f);
    uint32_t m = f.dim / 2;
    felt nu = F.generator;
    Mat d = Mat::identity(F, f.dim);
    d.at(0, 0) = nu;
    d.at(m, m) = F.inv(F.frobenius(nu, f.conj_power()));
    req(f.is_isometry(d), "GU torus generator");
    out.push_back(d);
    return out;
}

std::vector<Mat> orthogonal_gens_even(const ClassicalForm& f) {
    const FieldTable& F = *f.F;
    req(F.p == 2 && f.kind == FormKind::quadratic, "orthogonal_gens_even wants quadratic, even q");
    std::vector<Mat> out;
    auto addgen = [&](const std::vector<felt>& a) {
        felt qa = f.qval(a);
        if (!qa) return;
        Mat t = Mat::identity(F, f.dim);
        std::vector<felt> e(f.dim, 0);
        for (uint32_t i = 0; i < f.dim; i++) {
            e.assign(f.dim, 0);
            e[i] = 1;
            felt c = F.div(f.bil(e, a), qa);
            if (c)
                for (uint32_t j = 0; j < f.dim; j++) t.at(i, j) = F.add(t.at(i, j), F.mul(c, a[j]));
        }
        if (!t.is_identity()) {
            req(f.is_isometry(t), "orthogonal transvection");
            out.push_back(t);
        }
    };
    for (auto& a : small_support_vectors(F, f.dim)) addgen(a);
    for (uint32_t i = 0; i + 2 < f.dim; i++) {
        std::vector<felt> a(f.dim, 0);
        a[i] = 1;
        a[i + 1] = 1;
        a[i + 2] = 1;
        addgen(a);
    }
    return out;
}

std::vector<Mat> so_gens_odd(const ClassicalForm& f) {
    const FieldTable& F = *f.F;
    req(F.p != 2 && f.kind == FormKind::quadratic, "so_gens_odd wants quadratic, odd q");
    auto reflection = [&](const std::vector<felt>& a) {
        felt qa = f.qval(a);
        Mat t = Mat::identity(F, f.dim);
        std::vector<felt> e(f.dim, 0);
        for (uint32_t i = 0; i < f.dim; i++) {
            e.assign(f.dim, 0);
            e[i] = 1;
            felt c = F.div(f.bil(e, a), qa);
            if (c)
                for (uint32_t j = 0; j < f.dim; j++) t.at(i, j) = F.sub(t.at(i, j), F.mul(c, a[j]));
        }
        return t;
    };
    std::vector<std::vector<felt>> aniso;
    for (auto& a : small_support_vectors(F, f.dim))
        if (f.qval(a) != 0) aniso.push_back(a);
    std::vector<Mat> out;
    Mat r0 = reflection(aniso[0]);
    for (size_t i = 1; i < aniso.size(); i++) {
        Mat t = r0 * reflection(aniso[i]);
        if (!t.is_identity()) {
            req(f.is_isometry(t), "reflection pair");
            out.push_back(t);
        }
    }
    return out;
}

PermGroup perm_image(const std::vector<Mat>& gens, const GeometricDomain& dom) {
    std::vector<Perm> pg;
    for (const auto& g : gens) {
        Perm p;
        p.img = dom.action_images(g);
        pg.push_back(p);
    }
    return PermGroup(dom.size(), pg);
}

// ---------------------------------------------------------------------------
// projective groups

namespace {
std::shared_ptr<const ClassicalForm> carrier_form(const FieldTable& F, uint32_t dim) {
    ClassicalForm c;
    c.kind = FormKind::symplectic;
    c.F = &F;
    c.dim = dim;
    c.gram = Mat(F, dim, dim);
    return std::make_shared<const ClassicalForm>(c);
}

GeometricDomain projective_domain(const FieldTable& F, uint32_t n) {
    return enumerate_domain(carrier_form(F, n), DomainKind::projective_points);
}
}  // namespace

PermGroup pgl_projective(uint32_t n, uint32_t q) {
    const FieldTable& F = field_of(q);
    auto dom = projective_domain(F, n);
    auto gens = sl_gens(F, n);
    Mat d = Mat::identity(F, n);
    d.at(0, 0) = F.generator;
    gens.push_back(d);
    PermGroup G = perm_image(gens, dom);
    req(G.order() == order_pgl(n, q), "PGL order");
    return G;
}

PermGroup psl_projective(uint32_t n, uint32_t q) {
    const FieldTable& F = field_of(q);
    auto dom = projective_domain(F, n);
    PermGroup G = perm_image(sl_gens(F, n), dom);
    req(G.order() == order_psl(n, q), "PSL order");
    return G;
}

PermGroup psl2_projective(uint32_t q) { return psl_projective(2, q); }

// ---------------------------------------------------------------------------
// abelian unipotent radicals as GF(p)-spaces

namespace {

struct RadicalSpace {
    const FieldTable* F = nullptr;  // matrix field
    uint32_t dim_p = 0;             // GF(p) dimension
    std::function<Mat(const std::vector<felt>&)> make;
    std::function<std::vector<felt>(const Mat&)> params;
};

// Sp_2m / O+_2m radicals: u(A) with A symmetric (Sp, even q) or alternating
RadicalSpace radical_sp_or_oplus(const ClassicalForm& form, bool symmetric) {
    RadicalSpace R;
    const FieldTable& F = *form.F;
    R.F = &F;
    uint32_t m = form.dim / 2;
    uint32_t fpd = F.f;
    std::vector<std::pair<uint32_t, uint32_t>> slots;
    for (uint32_t i = 0; i < m; i++)
        for (uint32_t j = symmetric ? i : i + 1; j < m; j++) slots.push_back({i, j});
    R.dim_p = static_cast<uint32_t>(slots.size()) * fpd;
    R.make = [&F, m, slots, fpd, symmetric](const std::vector<felt>& par) {
        Mat u = Mat::identity(F, 2 * m);
        for (size_t s = 0; s < slots.size(); s++) {
            felt x = 0;
            uint32_t mul = 1;
            for (uint32_t k = 0; k < fpd; k++) {
                x += par[s * fpd + k] * mul;
                mul *= F.p;
            }
            auto [i, j] = slots[s];
            u.at(m + i, j) = x;
            if (i != j) u.at(m + j, i) = symmetric ? x : F.neg(x);
        }
        return u;
    };
    R.params = [&F, m, slots, fpd](const Mat& u) {
        std::vector<felt> par(slots.size() * fpd, 0);
        for (size_t s = 0; s < slots.size(); s++) {
            auto [i, j] = slots[s];
            felt x = u.at(m + i, j);
            for (uint32_t k = 0; k < fpd; k++) {
                par[s * fpd + k] = x % F.p;
                x /= F.p;
            }
        }
        return par;
    };
    return R;
}

// GU_2m radical: u(A) with A anti-hermitian over GF(q^2)
RadicalSpace radical_gu(const ClassicalForm& form) {
    RadicalSpace R;
    const FieldTable& F = *form.F;  // GF(q^2)
    R.F = &F;
    uint32_t m = form.dim / 2;
    uint32_t h = form.conj_power();
    const FieldTable& Fp = make_field(F.p, 1);
    // GF(p)-basis of the trace-zero line {a : a + conj(a) = 0}
    std::vector<felt> tz_basis;
    {
        std::vector<std::vector<felt>> ech;
        for (felt a = 1; a < F.q && tz_basis.size() < F.f / 2; a++) {
            if (F.add(a, F.frobenius(a, h)) != 0) continue;
            std::vector<felt> w(F.f);
            felt x = a;
            for (uint32_t k = 0; k < F.f; k++) {
                w[k] = x % F.p;
                x /= F.p;
            }
            for (auto& r : ech) {
                uint32_t piv = 0;
                while (piv < F.f && r[piv] == 0) piv++;
                if (piv < F.f && w[piv]) {
                    felt sc = Fp.div(w[piv], r[piv]);
                    for (uint32_t k = 0; k < F.f; k++) w[k] = Fp.sub(w[k], Fp.mul(sc, r[k]));
                }
            }
            bool nz = false;
            for (felt c : w)
                if (c) nz = true;
            if (nz) {
                ech.push_back(w);
                tz_basis.push_back(a);
            }
        }
    }
    req(tz_basis.size() == F.f / 2, "trace-zero dimension");
    uint32_t tzd = static_cast<uint32_t>(tz_basis.size());
    uint32_t offd = F.f;
    std::vector<std::pair<uint32_t, uint32_t>> slots;
    for (uint32_t i = 0; i < m; i++) slots.push_back({i, i});
    for (uint32_t i = 0; i < m; i++)
        for (uint32_t j = i + 1; j < m; j++) slots.push_back({i, j});
    R.dim_p = m * tzd + (m * (m - 1) / 2) * offd;
    R.make = [&F, m, h, slots, tz_basis, tzd, offd](const std::vector<felt>& par) {
        Mat u = Mat::identity(F, 2 * m);
        size_t pos = 0;
        for (auto [i, j] : slots) {
            felt x = 0;
            if (i == j) {
                for (uint32_t k = 0; k < tzd; k++)
                    if (par[pos + k]) x = F.add(x, F.mul(par[pos + k], tz_basis[k]));
                pos += tzd;
                u.at(m + i, i) = x;
            } else {
                uint32_t mul = 1;
                for (uint32_t k = 0; k < offd; k++) {
                    x += par[pos + k] * mul;
                    mul *= F.p;
                }
                pos += offd;
                u.at(m + i, j) = x;
                u.at(m + j, i) = F.neg(F.frobenius(x, h));
            }
        }
        return u;
    };
    R.params = [&F, &Fp, m, slots, tz_basis, tzd, offd](const Mat& u) {
        std::vector<felt> par;
        for (auto [i, j] : slots) {
            felt x = u.at(m + i, j);
            if (i == j) {
                // solve x = sum c_k tz_basis[k] over GF(p)
                uint32_t rows = F.f;
                std::vector<std::vector<felt>> M(rows, std::vector<felt>(tzd + 1, 0));
                for (uint32_t k = 0; k < tzd; k++) {
                    felt b = tz_basis[k];
                    for (uint32_t r = 0; r < rows; r++) {
                        M[r][k] = b % F.p;
                        b /= F.p;
                    }
                }
                felt xx = x;
                for (uint32_t r = 0; r < rows; r++) {
                    M[r][tzd] = xx % F.p;
                    xx /= F.p;
                }
                uint32_t rr = 0;
                std::vector<int> pivcol(rows, -1);
                for (uint32_t c = 0; c < tzd && rr < rows; c++) {
                    uint32_t pr = rr;
                    while (pr < rows && M[pr][c] == 0) pr++;
                    if (pr == rows) continue;
                    std::swap(M[pr], M[rr]);
                    felt inv = Fp.inv(M[rr][c]);
                    for (auto& v : M[rr]) v = Fp.mul(v, inv);
                    for (uint32_t r2 = 0; r2 < rows; r2++) {
                        if (r2 == rr) continue;
                        felt cc = M[r2][c];
                        if (cc)
                            for (uint32_t c2 = 0; c2 <= tzd; c2++)
                                M[r2][c2] = Fp.sub(M[r2][c2], Fp.mul(cc, M[rr][c2]));
                    }
                    pivcol[rr] = static_cast<int>(c);
                    rr++;
                }
                std::vector<felt> coef(tzd, 0);
                for (uint32_t r = 0; r < rr; r++)
                    if (pivcol[r] >= 0) coef[pivcol[r]] = M[r][tzd];
                for (uint32_t k = 0; k < tzd; k++) par.push_back(coef[k]);
            } else {
                felt xx = x;
                for (uint32_t k = 0; k < offd; k++) {
                    par.push_back(xx % F.p);
                    xx /= F.p;
                }
            }
        }
        return par;
    };
    return R;
}

Mat conj_action_matrix(const RadicalSpace& R, const Mat& chat) {
    const FieldTable& Fp = make_field(R.F->p, 1);
    Mat T(Fp, R.dim_p, R.dim_p);
    Mat cinv = chat.inverse();
    for (uint32_t i = 0; i < R.dim_p; i++) {
        std::vector<felt> e(R.dim_p, 0);
        e[i] = 1;
        Mat u = R.make(e);
        Mat v = cinv * u * chat;
        auto par = R.params(v);
        for (uint32_t j = 0; j < R.dim_p; j++) T.at(i, j) = par[j];
    }
    return T;
}

std::vector<Mat> radical_subgroup_gens(const RadicalSpace& R, const Subspace& W) {
    std::vector<Mat> out;
    for (uint32_t i = 0; i < W.dim(); i++) {
        std::vector<felt> par(R.dim_p);
        for (uint32_t j = 0; j < R.dim_p; j++) par[j] = W.basis.at(i, j);
        out.push_back(R.make(par));
    }
    return out;
}

std::vector<Mat> radical_subgroup_elements(const RadicalSpace& R, const Subspace& W) {
    const FieldTable& Fp = make_field(R.F->p, 1);
    uint32_t k = W.dim();
    uint64_t total = 1;
    for (uint32_t i = 0; i < k; i++) total *= Fp.q;
    std::vector<Mat> out;
    for (uint64_t t = 1; t < total; t++) {
        std::vector<felt> coord(k);
        uint64_t tt = t;
        for (uint32_t i = 0; i < k; i++) {
            coord[i] = static_cast<felt>(tt % Fp.q);
            tt /= Fp.q;
        }
        std::vector<felt> par(R.dim_p, 0);
        for (uint32_t i = 0; i < k; i++)
            if (coord[i])
                for (uint32_t j = 0; j < R.dim_p; j++)
                    par[j] = Fp.add(par[j], Fp.mul(coord[i], W.basis.at(i, j)));
        out.push_back(R.make(par));
    }
    return out;
}

Mat levi_blockdiag(const FieldTable& F, const Mat& M, bool hermitian, uint32_t conj_k) {
    uint32_t m = M.rows;
    Mat inv = M.inverse();
    Mat dual = hermitian ? inv.frob_entries(conj_k).transpose() : inv.transpose();
    Mat g(F, 2 * m, 2 * m);
    for (uint32_t i = 0; i < m; i++)
        for (uint32_t j = 0; j < m; j++) {
            g.at(i, j) = M.at(i, j);
            g.at(m + i, m + j) = dual.at(i, j);
        }
    return g;
}

}  // namespace

// ---------------------------------------------------------------------------
// Case 1

FactorizationInstance build_case1(uint32_t n, uint32_t q) {
    req(n >= 2, "case 1 needs n >= 2");
    const FieldTable& F = field_of(q);
    auto dom = projective_domain(F, n);
    uint64_t delta = (upow(q, n) - 1) / (q - 1);
    req(dom.size() == delta, "projective point count");

    SingerData s = singer(F, n);
    req(element_order(s.c, s.order) == s.order, "Singer order");
    Perm cimg;
    cimg.img = dom.action_images(s.c);
    PermGroup H(dom.size(), {cimg});
    PermGroup G0 = psl_projective(n, q);

    FactorizationInstance inst;
    inst.label = "T2.case1[n=" + std::to_string(n) + ",q=" + std::to_string(q) + "]";
    inst.H = H;
    inst.matrix_kernel = q - 1;
    inst.socle_H_order = normal_intersection_order(H, G0);
    inst.socle_index = delta;
    inst.expect.ell = delta;
    inst.expect.delta = delta;
    inst.expect.transitive = true;
    inst.expect.exact = true;
    inst.expect.stab_order = 1;
    inst.expect.orbit_count = 1;
    inst.expect.citations = {"Singer image regular on the projective points"};
    return inst;
}

// ---------------------------------------------------------------------------
// Case 2

namespace {
struct Case2Parts {
    PermGroup G1, Kimg, G0;
    std::vector<Perm> Himg_gens, Hctrl_gens;
    u128 h_matrix_order = 0;
};

Case2Parts case2_parts(uint32_t q) {
    const FieldTable& F = field_of(q);
    auto dom = projective_domain(F, 4);
    auto slg = sl_gens(F, 4);
    PermGroup G0 = perm_image(slg, dom);
    req(G0.order() == order_psl(4, q), "PSL4 order");

    Case2Parts P;
    P.G0 = G0;
    if (q % 4 != 1) {
        P.G1 = G0;
    } else {
        // PSL4(q).2 < PGL4(q): adjoin diag(nu, nu, 1, 1), determinant a square
        // that is not a fourth power
        Mat t = Mat::identity(F, 4);
        t.at(0, 0) = F.generator;
        t.at(1, 1) = F.generator;
        Perm timg;
        timg.img = dom.action_images(t);
        auto gens = G0.gens;
        gens.push_back(timg);
        P.G1 = PermGroup(dom.size(), gens);
        req(P.G1.order() == 2 * order_psl(4, q), "PSL4(q).2 order");
    }

    auto spf = standard_form(FormKind::symplectic, 4, F, TypeSign::none);
    auto spg = symplectic_gens(spf);
    {
        std::vector<Perm> kgens;
        for (auto& g : spg) {
            Perm p;
            p.img = dom.action_images(g);
            kgens.push_back(p);
        }
        if (F.p != 2) {
            Mat tau = Mat::identity(F, 4);
            tau.at(0, 0) = F.generator;
            tau.at(1, 1) = F.generator;  // similitude with factor nu
            Perm p;
            p.img = dom.action_images(tau);
            kgens.push_back(p);
        }
        P.Kimg = PermGroup(dom.size(), kgens);
        req(P.Kimg.order() == order_sp(4, q), "PGSp4 image order");
        req(P.G1.contains(P.Kimg.gens.back()), "K lies in G1");
    }

    SingerData s3 = singer(F, 3);
    Mat shat(F, 4, 4);
    {
        felt al = F.inv(det(s3.c));
        shat.at(0, 0) = al;
        for (uint32_t i = 0; i < 3; i++)
            for (uint32_t j = 0; j < 3; j++) shat.at(1 + i, 1 + j) = s3.c.at(i, j);
    }
    std::vector<Mat> ugens;
    for (uint32_t k = 1; k < 4; k++) {
        Mat u = Mat::identity(F, 4);
        u.at(k, 0) = 1;
        ugens.push_back(u);
    }
    for (auto& u : ugens) {
        Perm p;
        p.img = dom.action_images(u);
        P.Himg_gens.push_back(p);
    }
    {
        Perm p;
        p.img = dom.action_images(shat);
        P.Himg_gens.push_back(p);
    }
    P.h_matrix_order = ipow(q, 3) * (ipow(q, 3) - 1);
    P.Hctrl_gens = {P.Himg_gens[0], P.Himg_gens[1]};
    return P;
}
}  // namespace

FactorizationInstance build_case2(uint32_t q) {
    auto P = case2_parts(q);
    uint32_t d2 = (q % 2) ? 2 : 1;
    CosetAction ca = coset_action(P.G1, P.Kimg);
    std::vector<Perm> hg;
    for (const auto& g : P.Himg_gens) hg.push_back(ca.act(g));
    PermGroup H(ca.degree, hg);

    FactorizationInstance inst;
    inst.label = "T2.case2[q=" + std::to_string(q) + "]";
    inst.H = H;
    PermGroup Hpts(P.G1.degree, P.Himg_gens);
    inst.matrix_kernel = P.h_matrix_order / Hpts.order();
    inst.socle_H_order = normal_intersection_order(Hpts, P.G0);
    inst.socle_index = P.G0.order() / normal_intersection_order(P.Kimg, P.G0);
    inst.expect.ell = ipow(q, 3) * (ipow(q, 3) - 1) / d2;
    inst.expect.delta = static_cast<uint64_t>(P.G1.order() / P.Kimg.order());
    inst.expect.transitive = true;
    inst.expect.exact = false;
    inst.expect.stab_order = q;
    inst.expect.orbit_count = 1;
    inst.expect.citations = {"point stabilizer in H of order q"};
    return inst;
}

FactorizationInstance control_case2_partial_radical(uint32_t q) {
    auto P = case2_parts(q);
    CosetAction ca = coset_action(P.G1, P.Kimg);
    std::vector<Perm> hg;
    for (const auto& g : P.Hctrl_gens) hg.push_back(ca.act(g));
    PermGroup H(ca.degree, hg);
    FactorizationInstance inst;
    inst.label = "control.case2-partialU[q=" + std::to_string(q) + "]";
    inst.H = H;
    inst.expect.ell = ipow(q, 2);
    inst.expect.delta = ca.degree;
    inst.expect.transitive = false;
    inst.expect.citations = {"proper part of the radical cannot be transitive"};
    return inst;
}

// ---------------------------------------------------------------------------
// Case 3 (and 4)

namespace {
struct Case3Parts {
    std::shared_ptr<const ClassicalForm> spform;
    OmegaFormsDomain omega;
    RadicalSpace R;
    Mat chat;
    std::vector<Subspace> summands;
};

Case3Parts case3_parts(uint32_t m, uint32_t q) {
    const FieldTable& F = field_of(q);
    req(F.p == 2, "case 3 needs even q");
    req(m >= 2, "case 3 needs m >= 2");
    Case3Parts P;
    P.spform = std::make_shared<const ClassicalForm>(
        standard_form(FormKind::symplectic, 2 * m, F, TypeSign::none));
    auto spg = symplectic_gens(*P.spform);
    {
        GeometricDomain pts = enumerate_domain(P.spform, DomainKind::projective_points);
        PermGroup Sp = perm_image(spg, pts);
        req(Sp.order() == order_sp(2 * m, q), "Sp order");
    }
    P.omega = make_omega_forms_domain(P.spform, spg);
    req(P.omega.num_forms() == upow(q, m) * (upow(q, m) - 1) / 2, "minus form count");

    P.R = radical_sp_or_oplus(*P.spform, /*symmetric=*/true);
    SingerData s = singer(F, m);
    P.chat = levi_blockdiag(F, s.c, false, 0);
    req(P.spform->is_isometry(P.chat), "Levi Singer is symplectic");
    Mat T = conj_action_matrix(P.R, P.chat);
    const FieldTable& Fp = make_field(F.p, 1);
    P.summands = invariant_summands(T, Subspace::full(Fp, P.R.dim_p), m * F.f);
    req(!P.summands.empty(), "case 3: no m-dimensional summand");
    return P;
}

FactorizationInstance case3_instance(uint32_t m, uint32_t q, const Case3Parts& P, size_t wi,
                                     const std::string& label_prefix) {
    const FieldTable& F = *P.spform->F;
    auto wgens = radical_subgroup_gens(P.R, P.summands[wi]);
    std::vector<Mat> hmats = wgens;
    hmats.push_back(P.chat);

    std::vector<Perm> hforms, hlab;
    for (const auto& g : hmats) {
        Perm a;
        a.img = P.omega.action_images_forms(g);
        hforms.push_back(a);
        Perm b;
        b.img = P.omega.action_images(g);
        hlab.push_back(b);
    }
    FactorizationInstance inst;
    inst.label = label_prefix + "[m=" + std::to_string(m) + ",q=" + std::to_string(q) +
                 ",W=" + std::to_string(wi) + "]";
    inst.H = PermGroup(P.omega.num_forms(), hforms);
    inst.H_refined = PermGroup(P.omega.size(), hlab);

    auto wel = radical_subgroup_elements(P.R, P.summands[wi]);
    for (const auto& z : wel) {
        Perm zp;
        zp.img = P.omega.action_images_forms(z);
        inst.W_elements.push_back(zp);
        uint32_t s = rank(z - Mat::identity(F, 2 * m));
        auto it = involution_type(z, *P.spform);
        inst.W_desc.push_back("rank " + std::to_string(s) + " (" + std::string(1, it.letter) +
                              std::to_string(it.s) + ")");
    }
    uint64_t qm = upow(q, m);
    inst.expect.ell = (u128)qm * (qm - 1);
    inst.expect.delta = static_cast<uint64_t>(qm * (qm - 1) / 2);
    inst.expect.transitive = true;
    inst.expect.exact = (m >= 3) && (m % 2 == 1);
    inst.expect.stab_order = 2;
    inst.expect.orbit_count = 1;
    std::string letter = (m % 2) ? "b" : "c";
    inst.expect.fix_classes = {
        {"rank " + std::to_string(m) + " (" + letter + std::to_string(m) + ")", qm - 1, qm / 2}};
    inst.expect.citations = {"fix(z) = q^m/2 on the minus forms",
                             "rank census: every nontrivial W-element has rank m"};
    inst.socle_H_order = inst.H.order();
    inst.socle_index = P.omega.size();
    return inst;
}
}  // namespace

std::vector<FactorizationInstance> build_case3(uint32_t m, uint32_t q) {
    auto P = case3_parts(m, q);
    std::vector<FactorizationInstance> out;
    for (size_t wi = 0; wi < P.summands.size(); wi++)
        out.push_back(case3_instance(m, q, P, wi, "T2.case3"));
    return out;
}

std::vector<FactorizationInstance> build_case4(uint32_t q) {
    auto P = case3_parts(2, q);
    std::vector<FactorizationInstance> out;
    for (size_t wi = 0; wi < P.summands.size(); wi++) {
        auto inst = case3_instance(2, q, P, wi, "T2.case4");
        inst.expect.citations.push_back("case 3 at m = 2, seen through a graph automorphism");
        out.push_back(inst);
    }
    return out;
}

FactorizationInstance control_case3_radical_only(uint32_t m, uint32_t q) {
    auto P = case3_parts(m, q);
    // pick the X-type summand: all nontrivial elements of rank m
    size_t pick = 0;
    for (size_t wi = 0; wi < P.summands.size(); wi++) {
        bool all_m = true;
        for (const auto& z : radical_subgroup_elements(P.R, P.summands[wi]))
            if (rank(z - Mat::identity(*P.spform->F, 2 * m)) != m) all_m = false;
        if (all_m) {
            pick = wi;
            break;
        }
    }
    auto wgens = radical_subgroup_gens(P.R, P.summands[pick]);
    std::vector<Perm> hlab;
    for (const auto& g : wgens) {
        Perm b;
        b.img = P.omega.action_images(g);
        hlab.push_back(b);
    }
    FactorizationInstance inst;
    inst.label = "control.case3-radical-only[m=" + std::to_string(m) + ",q=" + std::to_string(q) + "]";
    inst.H = PermGroup(P.omega.size(), hlab);
    inst.expect.ell = upow(q, m);
    inst.expect.delta = P.omega.size();
    inst.expect.transitive = false;
    inst.expect.orbit_count = static_cast<uint64_t>(upow(q, m)) - 1;
    inst.expect.citations = {"proper subfactor control"};
    return inst;
}

// ---------------------------------------------------------------------------
// Case 6

std::vector<FactorizationInstance> build_case6(uint32_t m, uint32_t q) {
    req(m >= 2, "case 6 needs m >= 2");
    auto facq = factorize_u64(q);
    const FieldTable& F2 = make_field((uint32_t)facq[0].first, 2 * (uint32_t)facq[0].second);
    auto huf = std::make_shared<const ClassicalForm>(
        standard_form(FormKind::hermitian, 2 * m, F2, TypeSign::none));
    auto dom = enumerate_domain(huf, DomainKind::nondegenerate_points);
    uint64_t q2m = upow(q, 2 * m);
    req(dom.size() == upow(q, 2 * m - 1) * (q2m - 1) / (q + 1), "nondegenerate point count");

    RadicalSpace R = radical_gu(*huf);
    SingerData s = singer(F2, m);
    Mat chat = levi_blockdiag(F2, s.c, true, huf->conj_power());
    req(huf->is_isometry(chat), "Levi Singer is unitary");
    req(element_order(chat, q2m - 1) == q2m - 1, "Singer torus order");

    Mat T = conj_action_matrix(R, chat);
    const FieldTable& Fp = make_field(F2.p, 1);
    auto summands =
        invariant_summands(T, Subspace::full(Fp, R.dim_p), 2 * m * (uint32_t)facq[0].second);
    req(!summands.empty(), "case 6: no 2m-dimensional summand");

    std::vector<FactorizationInstance> out;
    for (size_t wi = 0; wi < summands.size(); wi++) {
        auto wgens = radical_subgroup_gens(R, summands[wi]);
        std::vector<Mat> hmats = wgens;
        hmats.push_back(chat);
        PermGroup H = perm_image(hmats, dom);

        FactorizationInstance inst;
        inst.label = "T2.case6[m=" + std::to_string(m) + ",q=" + std::to_string(q) +
                     ",W=" + std::to_string(wi) + "]";
        inst.H = H;
        inst.matrix_kernel = (u128)q2m * (q2m - 1) / H.order();
        auto wel = radical_subgroup_elements(R, summands[wi]);
        for (const auto& z : wel) {
            Perm zp;
            zp.img = dom.action_images(z);
            inst.W_elements.push_back(zp);
            Mat A(F2, m, m);
            for (uint32_t i = 0; i < m; i++)
                for (uint32_t j = 0; j < m; j++) A.at(i, j) = z.at(m + i, j);
            inst.W_desc.push_back("rank " + std::to_string(rank(A)));
        }
        uint64_t ell_count = (q2m - 1) / (q + 1);
        inst.expect.ell = (u128)q2m * (q2m - 1) / (q + 1);
        inst.expect.delta = dom.size();
        inst.expect.transitive = true;
        inst.expect.exact = false;
        inst.expect.stab_order = (uint64_t)(inst.expect.ell / inst.expect.delta);
        inst.expect.orbit_count = 1;
        inst.expect.fix_classes = {
            {"rank " + std::to_string(m - 1), ell_count, upow(q, 2 * m - 1) * (q - 1)},
            {"rank " + std::to_string(m), (q2m - 1) - ell_count, 0}};
        inst.expect.citations = {"fix(z) = q^(2m-1)(q-1) for the rank m-1 class",
                                 "rank census: (q^2m-1)/(q+1) elements of rank m-1"};
        out.push_back(inst);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Case 7 (covers case 5 at m = 2)

namespace {
struct Case7Parts {
    std::shared_ptr<const ClassicalForm> form;
    GeometricDomain dom;
    std::vector<Mat> ugens;
    Mat chat;
    uint32_t e = 1;
};

Mat case7_u(const ClassicalForm& f, const std::vector<felt>& dvec, const Mat& A) {
    // e_i fixed; f_i -> f_i + sum_j (A_ij - d_i d_j) e_j + d_i v; v -> v - 2 sum d_j e_j
    const FieldTable& F = *f.F;
    uint32_t m = f.dim / 2;
    Mat u = Mat::identity(F, f.dim);
    for (uint32_t i = 0; i < m; i++) {
        for (uint32_t j = 0; j < m; j++)
            u.at(m + i, j) = F.sub(A.at(i, j), F.mul(dvec[i], dvec[j]));
        u.at(m + i, 2 * m) = dvec[i];
    }
    for (uint32_t j = 0; j < m; j++) u.at(2 * m, j) = F.neg(F.mul(F.add(1, 1), dvec[j]));
    return u;
}

Case7Parts case7_parts(uint32_t m, uint32_t q) {
    const FieldTable& F = field_of(q);
    req(F.p != 2, "case 7 needs odd q");
    req(m >= 2, "case 7 needs m >= 2");
    Case7Parts P;
    P.form = std::make_shared<const ClassicalForm>(
        standard_form(FormKind::quadratic, 2 * m + 1, F, TypeSign::odd_dim));
    P.dom = enumerate_domain(P.form, DomainKind::minus_nondegenerate_points);
    uint64_t qm = upow(q, m);
    req(P.dom.size() == qm * (qm - 1) / 2, "minus nondegenerate point count");

    Mat zero(F, m, m);
    for (uint32_t k = 0; k < m; k++) {
        std::vector<felt> d(m, 0);
        d[k] = 1;
        Mat u = case7_u(*P.form, d, zero);
        req(P.form->is_isometry(u), "case 7 radical generator");
        P.ugens.push_back(u);
    }
    for (uint32_t i = 0; i < m; i++)
        for (uint32_t j = i + 1; j < m; j++) {
            Mat A(F, m, m);
            A.at(i, j) = 1;
            A.at(j, i) = F.neg(1);
            std::vector<felt> d(m, 0);
            Mat u = case7_u(*P.form, d, A);
            req(P.form->is_isometry(u), "y_{i,j} generator");
            P.ugens.push_back(u);
        }
    // closure check: |U| = q^(m(m+1)/2), |Z(U)| = q^(m(m-1)/2)
    {
        std::set<Mat> els;
        std::deque<Mat> work;
        Mat id = Mat::identity(F, 2 * m + 1);
        els.insert(id);
        work.push_back(id);
        while (!work.empty()) {
            Mat x = work.front();
            work.pop_front();
            for (const auto& g : P.ugens) {
                Mat y = x * g;
                if (els.insert(y).second) work.push_back(y);
            }
        }
        req(els.size() == upow(q, m * (m + 1) / 2), "radical order q^(m(m+1)/2)");
        uint64_t zc = 0;
        for (const auto& x : els) {
            bool central = true;
            for (const auto& g : P.ugens)
                if (!(x * g == g * x)) {
                    central = false;
                    break;
                }
            if (central) zc++;
        }
        req(zc == upow(q, m * (m - 1) / 2), "|Z(U)| = q^(m(m-1)/2)");
    }
    SingerData s = singer(F, m);
    Mat l = levi_blockdiag(F, s.c, false, 0);
    Mat chat(F, 2 * m + 1, 2 * m + 1);
    for (uint32_t i = 0; i < 2 * m; i++)
        for (uint32_t j = 0; j < 2 * m; j++) chat.at(i, j) = l.at(i, j);
    chat.at(2 * m, 2 * m) = 1;
    req(P.form->is_isometry(chat), "Levi Singer in SO");
    P.chat = chat;
    P.e = (qm % 4 == 3) ? 2 : 1;
    return P;
}
}  // namespace

FactorizationInstance build_case7(uint32_t m, uint32_t q) {
    auto P = case7_parts(m, q);
    uint64_t qm = upow(q, m);
    std::vector<Mat> hmats = P.ugens;
    hmats.push_back(P.chat.pow(P.e));
    PermGroup H = perm_image(hmats, P.dom);

    FactorizationInstance inst;
    inst.label = "T2.case7[m=" + std::to_string(m) + ",q=" + std::to_string(q) +
                 ",e=" + std::to_string(P.e) + "]";
    inst.H = H;
    inst.expect.ell = ipow(q, m * (m + 1) / 2) * (qm - 1) / P.e;
    inst.expect.delta = P.dom.size();
    inst.expect.transitive = true;
    inst.expect.exact = false;
    inst.expect.stab_order = (uint64_t)(inst.expect.ell / inst.expect.delta);
    inst.expect.orbit_count = 1;
    inst.expect.citations = {"transitive exactly when the torus part has odd order",
                             "center of the radical generated by the y_{i,j}(lambda)"};
    return inst;
}

FactorizationInstance control_case7_even_torus(uint32_t m, uint32_t q) {
    // an even-order D: the index-2 torus subgroup when (q^m-1)/2 is even,
    // otherwise U extended by the central torus involution alone
    auto P = case7_parts(m, q);
    uint64_t qm = upow(q, m);
    std::vector<Mat> hmats = P.ugens;
    uint64_t expected_orbits;
    u128 ell;
    if (((qm - 1) / 2) % 2 == 0) {
        hmats.push_back(P.chat.pow(2));
        expected_orbits = 2;
        ell = ipow(q, m * (m + 1) / 2) * ((qm - 1) / 2);
    } else {
        hmats.push_back(P.chat.pow((qm - 1) / 2));
        expected_orbits = (qm - 1) / 2;
        ell = ipow(q, m * (m + 1) / 2) * 2;
    }
    PermGroup H = perm_image(hmats, P.dom);
    FactorizationInstance inst;
    inst.label = "control.case7-evenD[m=" + std::to_string(m) + ",q=" + std::to_string(q) + "]";
    inst.H = H;
    inst.expect.ell = ell;
    inst.expect.delta = P.dom.size();
    inst.expect.transitive = false;
    inst.expect.orbit_count = expected_orbits;
    inst.expect.citations = {"an even-order torus part keeps the central involution in the block kernel"};
    return inst;
}

// ---------------------------------------------------------------------------
// Case 8 (covers case 9 at m = 4)

std::vector<FactorizationInstance> build_case8(uint32_t m, uint32_t q) {
    req(m >= 4, "case 8 needs m >= 4");
    const FieldTable& F = field_of(q);
    bool even = F.p == 2;
    auto of = std::make_shared<const ClassicalForm>(
        standard_form(FormKind::quadratic, 2 * m, F, TypeSign::plus));
    RadicalSpace R = radical_sp_or_oplus(*of, /*symmetric=*/false);
    SingerData s = singer(F, m);
    Mat chat = levi_blockdiag(F, s.c, false, 0);
    req(of->is_isometry(chat), "Levi Singer preserves the plus form");
    Mat T = conj_action_matrix(R, chat);
    const FieldTable& Fp = make_field(F.p, 1);
    auto summands = invariant_summands(T, Subspace::full(Fp, R.dim_p), m * F.f);
    req(!summands.empty(), "case 8: no m-dimensional summand");

    uint64_t qm = upow(q, m);
    GeometricDomain dom;
    if (even) {
        dom = enumerate_domain(of, DomainKind::nonsingular_points);
        req(dom.size() == upow(q, m - 1) * (qm - 1), "nonsingular point count");
    } else {
        auto all = enumerate_domain(of, DomainKind::nondegenerate_points);
        GeometricDomain sq, nsq;
        sq.form = of;
        nsq.form = of;
        sq.kind = nsq.kind = DomainKind::nondegenerate_points;
        for (auto& v : all.points) {
            GeometricDomain& tgt = F.is_square(of->qval(v)) ? sq : nsq;
            tgt.index.emplace(tgt.key_of(v), tgt.size());
            tgt.points.push_back(v);
        }
        req(sq.size() == nsq.size() && sq.size() == upow(q, m - 1) * (qm - 1) / 2,
            "square class sizes");
        auto wg0 = radical_subgroup_gens(R, summands[0]);
        std::vector<Mat> hm = wg0;
        hm.push_back(chat);
        PermGroup Hsq = perm_image(hm, sq);
        dom = Hsq.is_transitive() ? sq : nsq;  // the verified square class
    }

    std::vector<FactorizationInstance> out;
    for (size_t wi = 0; wi < summands.size(); wi++) {
        auto wgens = radical_subgroup_gens(R, summands[wi]);
        std::vector<Mat> hmats = wgens;
        hmats.push_back(chat);
        PermGroup H = perm_image(hmats, dom);

        FactorizationInstance inst;
        inst.label = "T2.case8[m=" + std::to_string(m) + ",q=" + std::to_string(q) +
                     ",W=" + std::to_string(wi) + "]";
        inst.H = H;
        inst.matrix_kernel = (u128)qm * (qm - 1) / H.order();
        auto wel = radical_subgroup_elements(R, summands[wi]);
        for (const auto& z : wel) {
            Perm zp;
            zp.img = dom.action_images(z);
            inst.W_elements.push_back(zp);
            uint32_t rk = rank(z - Mat::identity(F, 2 * m));
            inst.W_desc.push_back("rank " + std::to_string(rk));
        }
        uint32_t d2 = even ? 1 : 2;
        inst.expect.ell = (u128)qm * (qm - 1) / d2;
        inst.expect.delta = dom.size();
        inst.expect.transitive = true;
        inst.expect.exact = false;
        inst.expect.stab_order = (uint64_t)(inst.expect.ell / inst.expect.delta);
        inst.expect.orbit_count = 1;
        if (m % 2 == 0) {
            uint64_t lc = (qm - 1) / (q + 1);
            uint64_t fx = upow(q, m - 1) * ((uint64_t)q * q - 1) / d2;
            inst.expect.fix_classes = {{"rank " + std::to_string(m - 2), lc, fx},
                                       {"rank " + std::to_string(m), (qm - 1) - lc, 0}};
        } else {
            uint64_t fx = upow(q, m - 1) * (q - 1) / d2;
            inst.expect.fix_classes = {{"rank " + std::to_string(m - 1), qm - 1, fx}};
        }
        inst.expect.citations = {"fix(z) = q^(m-1)(q^2-1)/(2,q-1) for the rank m-2 class",
                                 "rank census: (q^m-1)/(q+1) elements of rank m-2"};
        out.push_back(inst);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mathieu groups

namespace {

PermGroup restrict_to(const PermGroup& G, const std::vector<uint32_t>& pts) {
    std::vector<uint32_t> pos(G.degree, UINT32_MAX);
    for (uint32_t i = 0; i < pts.size(); i++) pos[pts[i]] = i;
    std::vector<Perm> gens;
    for (const auto& g : G.gens) {
        Perm h;
        h.img.resize(pts.size());
        for (uint32_t i = 0; i < pts.size(); i++) {
            uint32_t im = g.img[pts[i]];
            req(pos[im] != UINT32_MAX, "restriction: set not invariant");
            h.img[i] = pos[im];
        }
        gens.push_back(h);
    }
    return PermGroup(static_cast<uint32_t>(pts.size()), gens);
}

uint64_t mask_orbit_size_capped(const PermGroup& G, uint32_t mask, uint64_t cap) {
    uint32_t n = G.degree;
    auto apply = [&](uint32_t m, const Perm& g) {
        uint32_t r = 0;
        for (uint32_t i = 0; i < n; i++)
            if (m & (1u << i)) r |= 1u << g.img[i];
        return r;
    };
    std::unordered_set<uint32_t> seen = {mask};
    std::deque<uint32_t> work = {mask};
    while (!work.empty()) {
        uint32_t m = work.front();
        work.pop_front();
        for (const auto& g : G.gens) {
            uint32_t y = apply(m, g);
            if (seen.insert(y).second) {
                if (seen.size() > cap) return cap + 1;
                work.push_back(y);
            }
        }
    }
    return seen.size();
}

PermGroup mask_stabilizer(const PermGroup& G, uint32_t mask, bool up_to_complement) {
    uint32_t n = G.degree;
    req(n <= 32, "mask_stabilizer degree cap");
    uint32_t full = n == 32 ? 0xffffffffu : ((1u << n) - 1);
    auto apply = [&](uint32_t m, const Perm& g) {
        uint32_t r = 0;
        for (uint32_t i = 0; i < n; i++)
            if (m & (1u << i)) r |= 1u << g.img[i];
        return r;
    };
    auto canon = [&](uint32_t m) { return up_to_complement ? std::min(m, full & ~m) : m; };
    std::unordered_map<uint32_t, uint32_t> index;
    std::vector<uint32_t> orb = {canon(mask)}, parent = {0}, pgen = {UINT32_MAX};
    index.emplace(orb[0], 0);
    for (size_t qi = 0; qi < orb.size(); qi++)
        for (size_t gi = 0; gi < G.gens.size(); gi++) {
            uint32_t y = canon(apply(orb[qi], G.gens[gi]));
            if (!index.count(y)) {
                index.emplace(y, static_cast<uint32_t>(orb.size()));
                orb.push_back(y);
                parent.push_back(static_cast<uint32_t>(qi));
                pgen.push_back(static_cast<uint32_t>(gi));
            }
        }
    u128 target = G.order() / orb.size();
    auto uword = [&](uint32_t i) {
        std::vector<uint32_t> chain;
        while (pgen[i] != UINT32_MAX) {
            chain.push_back(pgen[i]);
            i = parent[i];
        }
        Perm u = Perm::identity(n);
        for (size_t k = chain.size(); k-- > 0;) u = u * G.gens[chain[k]];
        return u;
    };
    std::vector<Perm> sgens;
    PermGroup S(n, sgens);
    std::vector<Perm> uw(orb.size());
    std::vector<bool> have(orb.size(), false);
    auto getu = [&](uint32_t i) -> const Perm& {
        if (!have[i]) {
            uw[i] = uword(i);
            have[i] = true;
        }
        return uw[i];
    };
    for (size_t qi = 0; qi < orb.size() && S.order() < target; qi++)
        for (size_t gi = 0; gi < G.gens.size() && S.order() < target; gi++) {
            uint32_t y = canon(apply(orb[qi], G.gens[gi]));
            Perm s = getu(static_cast<uint32_t>(qi)) * G.gens[gi] * getu(index.at(y)).inverse();
            if (s.is_identity() || S.contains(s)) continue;
            sgens.push_back(s);
            S = PermGroup(n, sgens);
        }
    req(S.order() == target, "mask stabilizer order");
    return S;
}

struct MathieuChain {
    PermGroup M24, M23, M22, M222, M12, M122, M11;
};

const MathieuChain& mathieu_chain() {
    static MathieuChain chain;
    static std::once_flag once;
    std::call_once(once, [] {
        const FieldTable& F23 = make_field(23, 1);
        auto dom = projective_domain(F23, 2);
        req(dom.size() == 24, "projective line of GF(23)");
        // alpha: t -> t+1 and gamma: t -> -1/t generate PSL2(23); delta is the
        // quadratic-residue cube map t -> t^3/9 (t a square), 9t^3 (else),
        // fixing 0 and infinity.  Point t <-> <(1, t)>, infinity <-> <(0, 1)>.
        Mat ma(F23, 2, 2), mg(F23, 2, 2);
        ma.at(0, 0) = 1;
        ma.at(0, 1) = 1;
        ma.at(1, 1) = 1;
        mg.at(0, 1) = F23.neg(1);
        mg.at(1, 0) = 1;
        Perm alpha, gamma;
        alpha.img = dom.action_images(ma);
        gamma.img = dom.action_images(mg);
        Perm delta = Perm::identity(24);
        for (felt t = 1; t < 23; t++) {
            felt c = F23.mul(t, F23.mul(t, t));
            delta.img[t] = F23.is_square(t) ? F23.div(c, 9) : F23.mul(9, c);
        }
        chain.M24 = PermGroup(24, {alpha, gamma, delta});
        req(chain.M24.order() == 244823040, "M24 order");

        {
            PermGroup s = chain.M24.point_stabilizer(0);
            std::vector<uint32_t> rest;
            for (uint32_t i = 1; i < 24; i++) rest.push_back(i);
            chain.M23 = restrict_to(s, rest);
            req(chain.M23.order() == 10200960, "M23 order");
        }
        {
            PermGroup s = mask_stabilizer(chain.M24, 0b11u, false);
            std::vector<uint32_t> rest;
            for (uint32_t i = 2; i < 24; i++) rest.push_back(i);
            chain.M222 = restrict_to(s, rest);
            req(chain.M222.order() == 887040, "M22.2 order");
            chain.M22 = chain.M222.derived_subgroup();
            req(chain.M22.order() == 443520, "M22 order");
        }
        {
            // the fixed point set of a 2A involution (type 1^8 2^8) is an
            // octad; the symmetric difference of two octads meeting in two
            // points is a dodecad, confirmed by its set orbit of length 2576
            RandomWalk rw(chain.M24, 7);
            uint32_t oct = 0;
            for (int it = 0; it < 100000 && !oct; it++) {
                Perm x = rw.next();
                uint64_t o = x.order();
                if (o % 2) continue;
                Perm y = x;
                for (uint64_t k = 1; k < o / 2; k++) y = y * x;  // x^(o/2)
                uint32_t fixed = 0, cnt = 0;
                for (uint32_t i = 0; i < 24; i++)
                    if (y.img[i] == i) {
                        fixed |= 1u << i;
                        cnt++;
                    }
                if (cnt == 8) oct = fixed;
            }
            req(oct != 0, "octad found");
            auto apply_mask = [&](uint32_t m, const Perm& g) {
                uint32_t r = 0;
                for (uint32_t i = 0; i < 24; i++)
                    if (m & (1u << i)) r |= 1u << g.img[i];
                return r;
            };
            uint32_t mask = 0;
            for (int it = 0; it < 100000 && !mask; it++) {
                uint32_t oct2 = apply_mask(oct, rw.next());
                if (__builtin_popcount(oct & oct2) != 2) continue;
                uint32_t cand = oct ^ oct2;
                if (mask_orbit_size_capped(chain.M24, cand, 2576) == 2576) mask = cand;
            }
            req(mask != 0, "dodecad found");
            PermGroup stabD = mask_stabilizer(chain.M24, mask, false);
            std::vector<uint32_t> dpts;
            for (uint32_t i = 0; i < 24; i++)
                if (mask & (1u << i)) dpts.push_back(i);
            chain.M12 = restrict_to(stabD, dpts);
            req(chain.M12.order() == 95040, "M12 order");
            chain.M122 = mask_stabilizer(chain.M24, mask, true);
            req(chain.M122.order() == 190080, "M12.2 order");
            req(chain.M122.is_transitive(), "M12.2 transitive on 24");
        }
        {
            PermGroup s = chain.M12.point_stabilizer(0);
            std::vector<uint32_t> rest;
            for (uint32_t i = 1; i < 12; i++) rest.push_back(i);
            chain.M11 = restrict_to(s, rest);
            req(chain.M11.order() == 7920, "M11 order");
        }
    });
    return chain;
}

}  // namespace

const PermGroup& mathieu(const std::string& name) {
    const auto& c = mathieu_chain();
    if (name == "M24") return c.M24;
    if (name == "M23") return c.M23;
    if (name == "M22") return c.M22;
    if (name == "M22.2") return c.M222;
    if (name == "M12") return c.M12;
    if (name == "M12.2") return c.M122;
    if (name == "M11") return c.M11;
    throw std::invalid_argument("mathieu: unknown name " + name);
}

PermGroup sporadic_optional(const std::string& name) {
    throw std::runtime_error("sporadic_optional: " + name +
                             " generators are not embedded in this build (optional feature)");
}

// ---------------------------------------------------------------------------
// PSp4(3) models

const PermGroup& psp43_deg27() {
    static PermGroup G;
    static std::once_flag once;
    std::call_once(once, [] {
        const FieldTable& F4 = make_field(2, 2);
        auto hf = std::make_shared<const ClassicalForm>(
            standard_form(FormKind::hermitian, 4, F4, TypeSign::none));
        auto dom = enumerate_domain(hf, DomainKind::totally_singular_kspaces, 2);
        req(dom.size() == 27, "27 totally isotropic 2-spaces");
        G = perm_image(su_gens(*hf), dom);
        req(G.order() == 25920, "PSU4(2) = PSp4(3) order");
        req(G.is_transitive(), "transitive on 27");
        req(G.point_stabilizer(0).order() == 960, "stabilizer 2^4:A5");
    });
    return G;
}

PermGroup psp43_deg40() {
    const FieldTable& F3 = make_field(3, 1);
    auto sp = standard_form(FormKind::symplectic, 4, F3, TypeSign::none);
    auto dom = projective_domain(F3, 4);
    PermGroup G = perm_image(symplectic_gens(sp), dom);
    req(G.order() == 25920, "PSp4(3) order");
    return G;
}

PermGroup pgsp43_deg40() {
    const FieldTable& F3 = make_field(3, 1);
    auto sp = standard_form(FormKind::symplectic, 4, F3, TypeSign::none);
    auto dom = projective_domain(F3, 4);
    auto gens = symplectic_gens(sp);
    Mat tau = Mat::identity(F3, 4);
    tau.at(0, 0) = 2;
    tau.at(1, 1) = 2;
    gens.push_back(tau);
    PermGroup G = perm_image(gens, dom);
    req(G.order() == 51840, "PGSp4(3) order");
    return G;
}

// ---------------------------------------------------------------------------
// GammaL1 subgroups

namespace {
struct GL1World {
    std::shared_ptr<ExtField> E;
    std::vector<ExtField::elt> reps;
    std::unordered_map<uint64_t, uint32_t> rep_index;

    Perm vec_perm(const std::function<ExtField::elt(ExtField::elt)>& f) const {
        Perm p;
        p.img.resize(E->qn - 1);
        for (ExtField::elt a = 1; a < E->qn; a++) p.img[a - 1] = static_cast<uint32_t>(f(a) - 1);
        return p;
    }
    void build_proj() {
        uint64_t scal_step = (E->qn - 1) / (E->base->q - 1);
        std::vector<bool> seen(E->qn, false);
        for (ExtField::elt a = 1; a < E->qn; a++) {
            if (seen[a]) continue;
            uint32_t idx = static_cast<uint32_t>(reps.size());
            reps.push_back(a);
            for (uint64_t k = 0; k < E->base->q - 1u; k++) {
                ExtField::elt b = E->mul(a, E->exp(k * scal_step));
                seen[b] = true;
                rep_index.emplace(b, idx);
            }
        }
    }
    Perm proj_perm(const std::function<ExtField::elt(ExtField::elt)>& f) const {
        Perm p;
        p.img.resize(reps.size());
        for (uint32_t i = 0; i < reps.size(); i++) p.img[i] = rep_index.at(f(reps[i]));
        return p;
    }
};

GL1World gl1_world(uint32_t q, uint32_t m) {
    GL1World W;
    W.E = std::make_shared<ExtField>(field_of(q), m);
    return W;
}
}  // namespace

PermGroup gammaL1_group(uint32_t q, uint32_t m) {
    auto W = gl1_world(q, m);
    auto& E = *W.E;
    Perm x = W.vec_perm([&](ExtField::elt a) { return E.mul(a, E.x()); });
    Perm y = W.vec_perm([&](ExtField::elt a) { return E.frob(a, 1); });
    return PermGroup(static_cast<uint32_t>(E.qn - 1), {x, y});
}

SubgroupWitness gammaL1_nilpotent(uint32_t q, uint32_t m, const std::string& which) {
    auto W = gl1_world(q, m);
    auto& E = *W.E;
    uint64_t qm = E.qn;
    auto xpow = [&](uint64_t k) {
        return W.vec_perm([&, k](ExtField::elt a) { return E.mul(a, E.exp(k)); });
    };
    SubgroupWitness w;
    if (which == "full-cycle") {
        w.group = PermGroup(static_cast<uint32_t>(qm - 1), {xpow(1)});
        req(w.group.order() == qm - 1, "full cycle order");
    } else if (which == "SD" || which == "Q") {
        req(m == 2 && is_prime_u64(q) && ((q + 1) & q) == 0, "SD/Q need m = 2, q a Mersenne prime");
        Perm x1 = xpow(2 * (q + 1));
        Perm y = W.vec_perm([&](ExtField::elt a) { return E.frob(a, 1); });
        if (which == "SD") {
            Perm x2 = xpow((q - 1) / 2);
            w.group = PermGroup(static_cast<uint32_t>(qm - 1), {x1, x2, y});
            req(w.group.order() == 2 * (qm - 1), "C x SD order");
        } else {
            Perm x2sq = xpow(q - 1);
            Perm x2y = xpow((q - 1) / 2) * y;
            w.group = PermGroup(static_cast<uint32_t>(qm - 1), {x1, x2sq, x2y});
            req(w.group.order() == qm - 1, "C x Q order");
        }
    } else if (which == "D-transitive" || which == "D-intransitive") {
        req(m == 2, "dihedral variants need m = 2");
        W.build_proj();
        Perm xb = W.proj_perm([&](ExtField::elt a) { return E.mul(a, E.x()); });
        Perm yb = W.proj_perm([&](ExtField::elt a) { return E.frob(a, 1); });
        Perm xb2 = xb * xb;
        w.group = which == "D-transitive"
                      ? PermGroup(static_cast<uint32_t>(W.reps.size()), {xb2, xb * yb})
                      : PermGroup(static_cast<uint32_t>(W.reps.size()), {xb2, yb});
        req(w.group.order() == q + 1, "D_{q+1} order");
    } else if (which == "3^{1+2}-minus") {
        req(q == 8 && m == 2, "3^{1+2}-minus lives at (q, m) = (8, 2)");
        W.build_proj();
        Perm xb = W.proj_perm([&](ExtField::elt a) { return E.mul(a, E.x()); });
        Perm f2 = W.proj_perm([&](ExtField::elt a) { return E.pow(a, 4); });
        w.group = PermGroup(static_cast<uint32_t>(W.reps.size()), {xb, f2});
        req(w.group.order() == 27, "3^{1+2} order");
    } else {
        throw std::invalid_argument("gammaL1_nilpotent: unknown variant " + which);
    }
    w.nilpotent = w.group.is_nilpotent();
    w.extraspecial = w.group.extraspecial_type();
    w.tag = small_group_tag(w.group);
    return w;
}

// ---------------------------------------------------------------------------
// Example 5.4 in compressed wreath coordinates

namespace {
struct WreathElt {
    std::vector<Perm> coords;
    Perm top;
    bool operator==(const WreathElt& o) const { return top == o.top && coords == o.coords; }
};
struct WreathHash {
    size_t operator()(const WreathElt& w) const {
        size_t h = 14695981039346656037ull;
        PermHash ph;
        for (const auto& c : w.coords) h = h * 1099511628211ull ^ ph(c);
        return h * 1099511628211ull ^ ph(w.top);
    }
};
WreathElt wmul(const WreathElt& a, const WreathElt& b) {
    uint32_t d = a.top.degree();
    WreathElt r;
    r.top = a.top * b.top;
    r.coords.resize(d);
    for (uint32_t j = 0; j < d; j++) r.coords[j] = a.coords[j] * b.coords[a.top.img[j]];
    return r;
}
bool w_has_fixed_point(const WreathElt& w) {
    uint32_t d = w.top.degree();
    std::vector<bool> seen(d, false);
    for (uint32_t i = 0; i < d; i++) {
        if (seen[i]) continue;
        Perm prod = Perm::identity(w.coords[0].degree());
        uint32_t x = i;
        do {
            seen[x] = true;
            prod = prod * w.coords[x];
            x = w.top.img[x];
        } while (x != i);
        bool has_fix = false;
        for (uint32_t p = 0; p < prod.degree(); p++)
            if (prod.img[p] == p) {
                has_fix = true;
                break;
            }
        if (!has_fix) return false;
    }
    return true;
}

Example54 example54_build(const std::vector<WreathElt>& gens, uint32_t d) {
    Example54 out;
    uint64_t deg = 1;
    for (uint32_t i = 0; i < d; i++) deg *= 27;
    out.degree = deg;
    for (const auto& g : gens) out.gens.push_back(product_point_perm(27, d, g.coords, g.top));
    std::unordered_set<WreathElt, WreathHash> els;
    std::deque<WreathElt> work;
    WreathElt id;
    id.top = Perm::identity(d);
    id.coords.assign(d, Perm::identity(27));
    els.insert(id);
    work.push_back(id);
    bool all_fpf = true;
    while (!work.empty()) {
        WreathElt x = work.front();
        work.pop_front();
        for (const auto& g : gens) {
            WreathElt y = wmul(x, g);
            if (els.insert(y).second) {
                if (els.size() > deg) throw std::runtime_error("example54: closure exceeded the degree");
                if (w_has_fixed_point(y)) all_fpf = false;
                work.push_back(y);
            }
        }
    }
    out.order = els.size();
    std::vector<bool> seen(deg, false);
    std::vector<uint32_t> orb = {0};
    seen[0] = true;
    for (size_t qi = 0; qi < orb.size(); qi++)
        for (const auto& g : out.gens) {
            uint32_t y = g.img[orb[qi]];
            if (!seen[y]) {
                seen[y] = true;
                orb.push_back(y);
            }
        }
    out.regular = orb.size() == deg && all_fpf && out.order == deg;
    return out;
}

struct XYDecomp {
    Perm a, b, z;
};
XYDecomp psp43_extraspecial_xy(bool plus) {
    auto res = regular_subgroup_search(psp43_deg27(), true, 0);
    for (const auto& w : res.classes) {
        if ((plus && w.extraspecial == "+") || (!plus && w.extraspecial == "-")) {
            auto els = w.group.elements(100);
            for (const auto& a : els) {
                if (a.is_identity()) continue;
                for (const auto& b : els) {
                    if (b.is_identity()) continue;
                    Perm z = a.inverse() * b.inverse() * a * b;
                    if (!z.is_identity()) return {a, b, z};
                }
            }
        }
    }
    throw std::logic_error("no extraspecial regular subgroup found at degree 27");
}
}  // namespace

Example54 example54(uint32_t e, uint32_t f) {
    uint32_t d = e + 3 * f;
    if (d < 1 || d > 3) throw std::runtime_error("example54: degree cap (e + 3f <= 3)");
    static XYDecomp xy = psp43_extraspecial_xy(true);
    std::vector<WreathElt> gens;
    Perm id27 = Perm::identity(27);
    auto coordelt = [&](uint32_t pos, const Perm& g) {
        WreathElt w;
        w.top = Perm::identity(d);
        w.coords.assign(d, id27);
        w.coords[pos] = g;
        return w;
    };
    uint32_t pos = 0;
    for (uint32_t i = 0; i < e; i++, pos++) {
        gens.push_back(coordelt(pos, xy.a));
        gens.push_back(coordelt(pos, xy.b));
    }
    for (uint32_t blk = 0; blk < f; blk++, pos += 3) {
        uint32_t c0 = pos, c1 = pos + 1, c2 = pos + 2;
        for (uint32_t c : {c0, c1, c2}) {
            gens.push_back(coordelt(c, xy.a));
            gens.push_back(coordelt(c, xy.z));
        }
        WreathElt y12 = coordelt(c0, xy.b);
        y12.coords[c1] = xy.b.inverse();
        gens.push_back(y12);
        WreathElt y23 = coordelt(c1, xy.b);
        y23.coords[c2] = xy.b.inverse();
        gens.push_back(y23);
        // the twisting element y1 y2 y3^-1 pi: its coordinate cycle product is
        // y, not 1, so it is fixed point free (with y1 y2 y3 pi the product
        // would be y^3 = 1, which fixes points)
        WreathElt w = coordelt(c0, xy.b);
        w.coords[c1] = xy.b;
        w.coords[c2] = xy.b.inverse();
        w.top.img[c0] = c1;
        w.top.img[c1] = c2;
        w.top.img[c2] = c0;
        gens.push_back(w);
    }
    return example54_build(gens, d);
}

Example54 example54_minus_square() {
    static XYDecomp xy = psp43_extraspecial_xy(false);
    std::vector<WreathElt> gens;
    Perm id27 = Perm::identity(27);
    for (uint32_t pos = 0; pos < 2; pos++)
        for (const Perm& g : {xy.a, xy.b}) {
            WreathElt w;
            w.top = Perm::identity(2);
            w.coords.assign(2, id27);
            w.coords[pos] = g;
            gens.push_back(w);
        }
    return example54_build(gens, 2);
}

}  // namespace factoriza

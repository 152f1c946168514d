#include "factoriza/field.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <mutex>

namespace factoriza {

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; d++)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<uint64_t, int>> factorize_u64(uint64_t n) {
    std::vector<std::pair<uint64_t, int>> out;
    for (uint64_t d = 2; d * d <= n; d++) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) { n /= d; e++; }
        out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

namespace {

// order of x in GF(p)[x]/(g) for monic g of degree f over GF(p); 0 if x is
// a zero divisor or the walk degenerates.  pow_limit bounds the walk.
uint64_t order_of_x_mod(uint32_t p, const std::vector<uint32_t>& g, uint64_t pow_limit) {
    uint32_t f = static_cast<uint32_t>(g.size()) - 1;
    if (g[0] == 0) return 0;  // x divides g
    std::vector<uint32_t> cur(f, 0);
    if (f == 1) {
        // x = -g[0] mod p
        uint32_t a = (p - g[0] % p) % p;
        if (a == 0) return 0;
        uint64_t ord = 1;
        uint32_t v = a;
        while (v != 1) { v = static_cast<uint32_t>((uint64_t)v * a % p); ord++; if (ord > pow_limit) return 0; }
        return ord;
    }
    cur[1] = 1;  // the element x
    std::vector<uint32_t> start = cur;
    uint64_t ord = 0;
    auto is_one = [&](const std::vector<uint32_t>& v) {
        if (v[0] != 1) return false;
        for (uint32_t i = 1; i < f; i++) if (v[i]) return false;
        return true;
    };
    do {
        // cur *= x, reduce mod g
        uint32_t top = cur[f - 1];
        for (uint32_t i = f - 1; i >= 1; i--) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top) {
            for (uint32_t i = 0; i < f; i++) {
                uint32_t s = cur[i] + (p - static_cast<uint32_t>((uint64_t)top * g[i] % p)) % p;
                cur[i] = s >= p ? s - p : s;
            }
        }
        ord++;
        if (ord > pow_limit) return 0;
    } while (!is_one(cur));
    return ord + 1;  // the walk starts at x^1
}

}  // namespace

FieldTable::FieldTable(uint32_t p_, uint32_t f_) : p(p_), f(f_) {
    if (!is_prime_u64(p)) throw std::invalid_argument("make_field: p must be prime");
    if (f < 1) throw std::invalid_argument("make_field: f must be >= 1");
    uint64_t qq = 1;
    for (uint32_t i = 0; i < f; i++) {
        qq *= p;
        if (qq > (1u << 16)) throw std::invalid_argument("make_field: p^f exceeds the 2^16 cap");
    }
    q = static_cast<uint32_t>(qq);
    spec = {p, f, q};

    // defining polynomial
    poly.assign(f + 1, 0);
    poly[f] = 1;
    if (f == 1) {
        uint32_t a = (p == 2) ? 1 : 2;
        for (;; a++) {
            std::vector<uint32_t> g = {(p - a % p) % p, 1};
            if (order_of_x_mod(p, g, q) == q - 1) break;
            if (a >= p) throw std::logic_error("no primitive root found");
        }
        poly[0] = (p - a) % p;
        generator = a;
    } else {
        bool found = false;
        std::vector<uint32_t> c(f, 0);
        // lexicographic on (c_0, c_1, ..., c_{f-1}), c_0 most significant
        for (uint64_t k = 0; k < qq && !found; k++) {
            uint64_t t = k;
            for (uint32_t i = 0; i < f; i++) {
                uint64_t div = 1;
                for (uint32_t j = i + 1; j < f; j++) div *= p;
                c[i] = static_cast<uint32_t>(t / div);
                t %= div;
            }
            std::vector<uint32_t> g(f + 1);
            for (uint32_t i = 0; i < f; i++) g[i] = c[i];
            g[f] = 1;
            if (order_of_x_mod(p, g, q) == q - 1) {
                for (uint32_t i = 0; i < f; i++) poly[i] = c[i];
                found = true;
            }
        }
        if (!found) throw std::logic_error("no primitive polynomial found");
        generator = p;  // the element x
    }

    // exp/log via repeated multiplication by the generator's representation
    exp_.assign(q - 1, 0);
    log_.assign(q, 0);
    std::vector<uint32_t> cur(f, 0), gen(f, 0);
    if (f == 1) gen[0] = generator;
    else gen[1] = 1;
    cur[0] = 1;
    auto pack = [&](const std::vector<uint32_t>& v) {
        felt r = 0;
        for (uint32_t i = f; i-- > 0;) r = r * p + v[i];
        return r;
    };
    for (uint32_t k = 0; k < q - 1; k++) {
        felt idx = pack(cur);
        exp_[k] = idx;
        if (k && idx == 1) throw std::logic_error("generator is not primitive");
        log_[idx] = k;
        // cur *= gen (schoolbook, reduce by poly)
        std::vector<uint32_t> prod(2 * f, 0);
        for (uint32_t i = 0; i < f; i++)
            if (cur[i])
                for (uint32_t j = 0; j < f; j++)
                    prod[i + j] = static_cast<uint32_t>((prod[i + j] + (uint64_t)cur[i] * gen[j]) % p);
        for (uint32_t d = 2 * f - 1; d >= f; d--) {
            if (prod[d]) {
                uint32_t top = prod[d];
                for (uint32_t i = 0; i <= f; i++) {
                    uint32_t pos = d - f + i;
                    uint32_t s = prod[pos] + (p - static_cast<uint32_t>((uint64_t)top * poly[i] % p)) % p;
                    prod[pos] = s >= p ? s - p : s;
                }
            }
            if (d == f) break;
        }
        cur.assign(prod.begin(), prod.begin() + f);
    }

    negtab_.assign(q, 0);
    for (felt a = 0; a < q; a++) {
        felt r = 0;
        felt t = a;
        for (uint32_t i = 0, mul = 1; i < f; i++, mul *= p) {
            uint32_t d = t % p;
            t /= p;
            r += ((p - d) % p) * mul;
        }
        negtab_[a] = r;
    }
    if (q <= 1024) {
        addtab_.assign((size_t)q * q, 0);
        for (felt a = 0; a < q; a++)
            for (felt b = 0; b < q; b++) addtab_[(size_t)a * q + b] = add_slow(a, b);
    }
}

felt FieldTable::add_slow(felt a, felt b) const {
    felt r = 0, mul = 1;
    for (uint32_t i = 0; i < f; i++) {
        uint32_t s = a % p + b % p;
        if (s >= p) s -= p;
        r += s * mul;
        a /= p;
        b /= p;
        mul *= p;
    }
    return r;
}

felt FieldTable::pow(felt a, int64_t e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw std::domain_error("0^negative");
        return 0;
    }
    int64_t m = q - 1;
    int64_t k = ((int64_t)log_[a] * (e % m)) % m;
    if (k < 0) k += m;
    return exp_[k];
}

felt FieldTable::frobenius(felt a, uint64_t k) const {
    if (a == 0) return 0;
    // exponent p^k mod (q-1)
    uint64_t e = 1, m = q - 1;
    for (uint64_t i = 0; i < k % (f == 1 ? 1 : f * 64); i++) {
        e = e * p % m;
        if (i > 64) break;  // p^k mod m cycles; 64 steps is ample at our sizes
    }
    // recompute cleanly: e = p^k mod m with k reduced mod ord_m(p) is overkill; do modpow
    e = 1;
    uint64_t base = p % m, kk = k;
    while (kk) {
        if (kk & 1) e = e * base % m;
        base = base * base % m;
        kk >>= 1;
    }
    return exp_[(uint64_t)log_[a] * e % m];
}

namespace {
std::mutex field_cache_mutex;
std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<FieldTable>>& field_cache() {
    static std::map<std::pair<uint32_t, uint32_t>, std::unique_ptr<FieldTable>> c;
    return c;
}
}  // namespace

const FieldTable& make_field(uint32_t p, uint32_t f) {
    std::lock_guard<std::mutex> lk(field_cache_mutex);
    auto& c = field_cache();
    auto key = std::make_pair(p, f);
    auto it = c.find(key);
    if (it == c.end()) it = c.emplace(key, std::unique_ptr<FieldTable>(new FieldTable(p, f))).first;
    return *it->second;
}

const FieldTable& FieldTable::get(uint32_t p, uint32_t f) { return make_field(p, f); }

std::optional<uint64_t> primitive_prime_divisor(uint64_t q, uint32_t m) {
    if (q < 2 || m < 2) throw std::invalid_argument("primitive_prime_divisor: need q >= 2, m >= 2");
    unsigned __int128 qm = 1;
    for (uint32_t i = 0; i < m; i++) {
        qm *= q;
        if (qm > (unsigned __int128)1 << 63) throw std::invalid_argument("primitive_prime_divisor: q^m too large");
    }
    uint64_t n = static_cast<uint64_t>(qm) - 1;
    for (auto& [r, e] : factorize_u64(n)) {
        (void)e;
        bool divides_lower = false;
        uint64_t qi = 1;
        for (uint32_t i = 1; i < m && !divides_lower; i++) {
            qi *= q;
            if ((qi - 1) % r == 0) divides_lower = true;
        }
        if (!divides_lower) return r;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// polynomials over GF(q)

namespace poly {

P trim(P a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

int deg(const P& a) { return static_cast<int>(a.size()) - 1; }

P add(const FieldTable& F, const P& a, const P& b) {
    P r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); i++) {
        felt x = i < a.size() ? a[i] : 0;
        felt y = i < b.size() ? b[i] : 0;
        r[i] = F.add(x, y);
    }
    return trim(r);
}

P sub(const FieldTable& F, const P& a, const P& b) {
    P r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); i++) {
        felt x = i < a.size() ? a[i] : 0;
        felt y = i < b.size() ? b[i] : 0;
        r[i] = F.sub(x, y);
    }
    return trim(r);
}

P mul(const FieldTable& F, const P& a, const P& b) {
    if (a.empty() || b.empty()) return {};
    P r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); i++)
        if (a[i])
            for (size_t j = 0; j < b.size(); j++)
                if (b[j]) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    return trim(r);
}

P rem(const FieldTable& F, P a, const P& b) {
    if (b.empty()) throw std::domain_error("poly division by zero");
    felt lead_inv = F.inv(b.back());
    while (static_cast<int>(a.size()) >= static_cast<int>(b.size())) {
        felt c = F.mul(a.back(), lead_inv);
        size_t shift = a.size() - b.size();
        if (c)
            for (size_t i = 0; i < b.size(); i++)
                a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.size() < b.size()) break;
    }
    return a;
}

P quot(const FieldTable& F, P a, const P& b) {
    if (b.empty()) throw std::domain_error("poly division by zero");
    if (a.size() < b.size()) return {};
    felt lead_inv = F.inv(b.back());
    P qout(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size() && !a.empty()) {
        felt c = F.mul(a.back(), lead_inv);
        size_t shift = a.size() - b.size();
        qout[shift] = c;
        for (size_t i = 0; i < b.size(); i++)
            a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.empty() || a.size() < b.size()) break;
    }
    return trim(qout);
}

P gcd(const FieldTable& F, P a, P b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        P r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}

P monic(const FieldTable& F, P a) {
    a = trim(std::move(a));
    if (a.empty() || a.back() == 1) return a;
    felt c = F.inv(a.back());
    for (auto& x : a) x = F.mul(x, c);
    return a;
}

felt eval(const FieldTable& F, const P& a, felt x) {
    felt r = 0;
    for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

namespace {
// enumerate monic polys of given degree in lex order (c_0 major)
bool next_monic(const FieldTable& F, P& c) {
    // c has size deg+1 with c.back()==1; increment (c_{d-1}, ..., c_0) with c_0 most significant
    for (size_t i = 0; i + 1 < c.size(); i++) {
        if (c[i] + 1 < F.q) { c[i]++; for (size_t j = 0; j < i; j++) c[j] = 0; return true; }
    }
    return false;
}
}  // namespace

bool is_irreducible(const FieldTable& F, const P& a0) {
    P a = monic(F, a0);
    int d = deg(a);
    if (d <= 0) return false;
    if (d == 1) return true;
    // trial division by monic irreducibles of degree <= d/2, enumerated by degree
    for (int e = 1; e <= d / 2; e++) {
        P c(e + 1, 0);
        c[e] = 1;
        // lex enumeration over (c_0..c_{e-1}); order irrelevant for irreducibility
        while (true) {
            if (e == 1 || is_irreducible(F, c)) {
                if (rem(F, a, c).empty()) return false;
            }
            if (!next_monic(F, c)) break;
        }
    }
    return true;
}

std::vector<std::pair<P, int>> factor(const FieldTable& F, const P& a0) {
    P a = monic(F, a0);
    std::vector<std::pair<P, int>> out;
    if (deg(a) <= 0) return out;
    for (int e = 1; deg(a) > 0 && e <= deg(a); e++) {
        if (2 * e > deg(a)) break;
        P c(e + 1, 0);
        c[e] = 1;
        while (deg(a) > 0) {
            if (rem(F, a, c).empty()) {
                int mult = 0;
                while (rem(F, a, c).empty()) { a = quot(F, a, c); mult++; }
                out.push_back({c, mult});
            }
            if (!next_monic(F, c)) break;
        }
    }
    if (deg(a) > 0) out.push_back({a, 1});
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
        return x.first < y.first;
    });
    return out;
}

std::string to_string(const FieldTable& F, const P& a) {
    (void)F;
    if (a.empty()) return "0";
    std::string s;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || a[i] != 1) s += std::to_string(a[i]);
        if (i >= 1) {
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace poly

// ---------------------------------------------------------------------------
// ExtField

ExtField::ExtField(const FieldTable& base_field, uint32_t n_) : base(&base_field), n(n_) {
    if (n < 1) throw std::invalid_argument("ExtField: n >= 1");
    unsigned __int128 qq = 1;
    for (uint32_t i = 0; i < n; i++) {
        qq *= base->q;
        if (qq > ((unsigned __int128)1 << 40)) throw std::invalid_argument("ExtField: q^n too large");
    }
    qn = static_cast<uint64_t>(qq);

    // lex-least primitive polynomial of degree n over GF(q)
    const FieldTable& F = *base;
    uint64_t group = qn - 1;
    auto x_order = [&](const std::vector<felt>& g) -> uint64_t {
        // walk powers of x mod g
        if (g[0] == 0) return 0;
        if (n == 1) {
            felt a = F.neg(g[0]);
            if (a == 0) return 0;
            uint64_t ord = 1;
            felt v = a;
            while (v != 1) { v = F.mul(v, a); ord++; if (ord > group) return 0; }
            return ord;
        }
        std::vector<felt> cur(n, 0);
        cur[1] = 1;
        uint64_t ord = 0;
        auto is_one = [&](const std::vector<felt>& v) {
            if (v[0] != 1) return false;
            for (uint32_t i = 1; i < n; i++) if (v[i]) return false;
            return true;
        };
        do {
            felt top = cur[n - 1];
            for (uint32_t i = n - 1; i >= 1; i--) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (top)
                for (uint32_t i = 0; i < n; i++) cur[i] = F.sub(cur[i], F.mul(top, g[i]));
            ord++;
            if (ord > group) return 0;
        } while (!is_one(cur));
        return ord + 1;  // the walk starts at x^1
    };

    minpoly.assign(n + 1, 0);
    minpoly[n] = 1;
    bool found = false;
    std::vector<felt> c(n, 0);
    std::vector<felt> g(n + 1, 0);
    g[n] = 1;
    // lex order, c_0 most significant
    std::vector<uint64_t> place(n, 1);
    for (uint32_t i = 0; i < n; i++)
        for (uint32_t j = i + 1; j < n; j++) place[i] *= F.q;
    for (uint64_t k = 0; k < qn && !found; k++) {
        uint64_t t = k;
        for (uint32_t i = 0; i < n; i++) { c[i] = static_cast<felt>(t / place[i]); t %= place[i]; }
        for (uint32_t i = 0; i < n; i++) g[i] = c[i];
        if (x_order(g) == group) {
            for (uint32_t i = 0; i < n; i++) minpoly[i] = c[i];
            found = true;
        }
    }
    if (!found) throw std::logic_error("ExtField: no primitive polynomial");

    // log tables
    if (qn <= (1ull << 21)) {
        exp_.assign(qn - 1, 0);
        log_.assign(qn, 0);
        std::vector<felt> cur(n, 0);
        cur[0] = 1;
        auto pack = [&](const std::vector<felt>& v) {
            uint64_t r = 0;
            for (uint32_t i = n; i-- > 0;) r = r * F.q + v[i];
            return r;
        };
        for (uint64_t k = 0; k < qn - 1; k++) {
            uint64_t idx = pack(cur);
            exp_[k] = idx;
            log_[idx] = k;
            if (n == 1) {
                cur[0] = F.mul(cur[0], F.neg(minpoly[0]));
            } else {
                felt top = cur[n - 1];
                for (uint32_t i = n - 1; i >= 1; i--) cur[i] = cur[i - 1];
                cur[0] = 0;
                if (top)
                    for (uint32_t i = 0; i < n; i++) cur[i] = F.sub(cur[i], F.mul(top, minpoly[i]));
            }
        }
    }
}

ExtField::elt ExtField::add(elt a, elt b) const {
    elt r = 0, mul = 1;
    for (uint32_t i = 0; i < n; i++) {
        felt x = static_cast<felt>(a % base->q);
        felt y = static_cast<felt>(b % base->q);
        r += static_cast<elt>(base->add(x, y)) * mul;
        a /= base->q;
        b /= base->q;
        mul *= base->q;
    }
    return r;
}

ExtField::elt ExtField::mul(elt a, elt b) const {
    if (a == 0 || b == 0) return 0;
    if (!exp_.empty()) {
        uint64_t s = log_[a] + log_[b];
        uint64_t m = qn - 1;
        if (s >= m) s -= m;
        return exp_[s];
    }
    // schoolbook fallback
    const FieldTable& F = *base;
    std::vector<felt> da(n), db(n);
    for (uint32_t i = 0; i < n; i++) { da[i] = a % F.q; a /= F.q; db[i] = b % F.q; b /= F.q; }
    std::vector<felt> prod(2 * n, 0);
    for (uint32_t i = 0; i < n; i++)
        if (da[i])
            for (uint32_t j = 0; j < n; j++)
                if (db[j]) prod[i + j] = F.add(prod[i + j], F.mul(da[i], db[j]));
    for (uint32_t d = 2 * n - 1; d >= n; d--) {
        felt top = prod[d];
        if (top) {
            prod[d] = 0;
            for (uint32_t i = 0; i < n; i++)
                prod[d - n + i] = F.sub(prod[d - n + i], F.mul(top, minpoly[i]));
        }
        if (d == n) break;
    }
    elt r = 0;
    for (uint32_t i = n; i-- > 0;) r = r * F.q + prod[i];
    return r;
}

ExtField::elt ExtField::pow(elt a, uint64_t e) const {
    elt r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

ExtField::elt ExtField::inv(elt a) const {
    if (a == 0) throw std::domain_error("ExtField inverse of zero");
    return pow(a, qn - 2);
}

uint64_t ExtField::log(elt a) const {
    if (a == 0) throw std::domain_error("ExtField log of zero");
    if (!log_.empty()) return log_[a];
    throw std::logic_error("ExtField log tables unavailable at this size");
}

ExtField::elt ExtField::exp(uint64_t k) const {
    if (!exp_.empty()) return exp_[k % (qn - 1)];
    return pow(x(), k % (qn - 1));
}

felt ExtField::digit(elt a, uint32_t i) const {
    for (uint32_t j = 0; j < i; j++) a /= base->q;
    return static_cast<felt>(a % base->q);
}

ExtField::elt ExtField::from_digits(const std::vector<felt>& d) const {
    elt r = 0;
    for (uint32_t i = n; i-- > 0;) r = r * base->q + (i < d.size() ? d[i] : 0);
    return r;
}

ExtField::elt ExtField::frob(elt a, uint32_t k) const {
    uint64_t e = 1, m = qn - 1;
    uint64_t b = base->q % m, kk = k;
    while (kk) {
        if (kk & 1) e = e * b % m;
        b = b * b % m;
        kk >>= 1;
    }
    if (a == 0) return 0;
    return pow(a, e);
}

}  // namespace factoriza

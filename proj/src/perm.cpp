#include "factoriza/perm.hpp"

#include "factoriza/field.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace factoriza {

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s += static_cast<char>('0' + (int)(v % 10));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

uint64_t Perm::order() const {
    std::vector<bool> seen(img.size(), false);
    uint64_t ord = 1;
    for (uint32_t i = 0; i < img.size(); i++) {
        if (seen[i]) continue;
        uint64_t len = 0;
        uint32_t x = i;
        while (!seen[x]) {
            seen[x] = true;
            x = img[x];
            len++;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

std::vector<uint32_t> Perm::cycle_type() const {
    std::vector<bool> seen(img.size(), false);
    std::vector<uint32_t> cyc;
    for (uint32_t i = 0; i < img.size(); i++) {
        if (seen[i]) continue;
        uint32_t len = 0, x = i;
        while (!seen[x]) {
            seen[x] = true;
            x = img[x];
            len++;
        }
        cyc.push_back(len);
    }
    std::sort(cyc.rbegin(), cyc.rend());
    return cyc;
}

bool Perm::is_fixed_point_free() const {
    for (uint32_t i = 0; i < img.size(); i++)
        if (img[i] == i) return false;
    return true;
}

bool Perm::is_semiregular() const {
    std::vector<bool> seen(img.size(), false);
    uint32_t first = 0;
    bool have = false;
    for (uint32_t i = 0; i < img.size(); i++) {
        if (seen[i]) continue;
        uint32_t len = 0, x = i;
        while (!seen[x]) {
            seen[x] = true;
            x = img[x];
            len++;
        }
        if (!have) {
            first = len;
            have = true;
        } else if (len != first) {
            return false;
        }
    }
    return true;
}

std::string Perm::to_cycles() const {
    std::vector<bool> seen(img.size(), false);
    std::ostringstream os;
    bool any = false;
    for (uint32_t i = 0; i < img.size(); i++) {
        if (seen[i] || img[i] == i) {
            seen[i] = true;
            continue;
        }
        os << "(";
        uint32_t x = i;
        bool firstel = true;
        while (!seen[x]) {
            seen[x] = true;
            if (!firstel) os << ",";
            os << x;
            firstel = false;
            x = img[x];
        }
        os << ")";
        any = true;
    }
    if (!any) return "()";
    return os.str();
}

// ---------------------------------------------------------------------------
// BSGS

namespace {
constexpr uint64_t kTransversalCacheEntries = 4000000;

uint32_t smallest_moved(const Perm& g) {
    for (uint32_t i = 0; i < g.degree(); i++)
        if (g.img[i] != i) return i;
    throw std::logic_error("smallest_moved of identity");
}

void compute_orbit(BSGS::Level& lv, uint32_t degree) {
    lv.sv_gen.assign(degree, -2);
    lv.sv_from.assign(degree, 0);
    lv.orbit.clear();
    lv.transversal.clear();
    lv.sv_gen[lv.base] = -1;
    lv.orbit.push_back(lv.base);
    for (size_t qi = 0; qi < lv.orbit.size(); qi++) {
        uint32_t p = lv.orbit[qi];
        for (size_t gi = 0; gi < lv.gens.size(); gi++) {
            uint32_t q = lv.gens[gi].img[p];
            if (lv.sv_gen[q] == -2) {
                lv.sv_gen[q] = static_cast<int32_t>(gi);
                lv.sv_from[q] = p;
                lv.orbit.push_back(q);
            }
        }
    }
    if (static_cast<uint64_t>(lv.orbit.size()) * degree <= kTransversalCacheEntries) {
        lv.transversal.assign(degree, Perm());
        lv.transversal[lv.base] = Perm::identity(degree);
        for (size_t k = 1; k < lv.orbit.size(); k++) {
            uint32_t b = lv.orbit[k];
            lv.transversal[b] = lv.transversal[lv.sv_from[b]] * lv.gens[lv.sv_gen[b]];
        }
    }
}
}  // namespace

Perm BSGS::Level::coset_rep(uint32_t beta) const {
    if (sv_gen[beta] == -2) throw std::logic_error("coset_rep outside orbit");
    if (!transversal.empty()) return transversal[beta];
    std::vector<int32_t> chain;
    uint32_t x = beta;
    while (sv_gen[x] != -1) {
        chain.push_back(sv_gen[x]);
        x = sv_from[x];
    }
    Perm u = Perm::identity(static_cast<uint32_t>(sv_gen.size()));
    for (size_t i = chain.size(); i-- > 0;) u = u * gens[chain[i]];
    return u;
}

std::pair<size_t, Perm> BSGS::strip(Perm g) const {
    for (size_t i = 0; i < levels.size(); i++) {
        uint32_t beta = g.img[levels[i].base];
        if (levels[i].sv_gen[beta] == -2) return {i, std::move(g)};
        if (beta != levels[i].base) g = g * levels[i].coset_rep(beta).inverse();
    }
    return {levels.size(), std::move(g)};
}

namespace {

// deterministic Schreier-Sims; forced_prefix pins the first base points
// (used for point stabilizers)
std::shared_ptr<BSGS> build_bsgs(uint32_t degree, const std::vector<Perm>& raw_gens,
                                 const std::vector<uint32_t>& forced_prefix) {
    auto B = std::make_shared<BSGS>();
    B->degree = degree;
    std::vector<Perm> gens;
    for (const auto& g : raw_gens) {
        if (g.degree() != degree) throw std::invalid_argument("generator degree mismatch");
        if (!g.is_identity()) gens.push_back(g);
    }
    auto& L = B->levels;
    for (uint32_t b : forced_prefix) {
        BSGS::Level lv;
        lv.base = b;
        L.push_back(lv);
    }
    // every generator must move some base point
    for (const auto& g : gens) {
        bool moves = false;
        for (auto& lv : L)
            if (g.img[lv.base] != lv.base) {
                moves = true;
                break;
            }
        if (!moves) {
            BSGS::Level lv;
            lv.base = smallest_moved(g);
            L.push_back(lv);
        }
    }
    if (L.empty()) {
        B->order = 1;
        return B;
    }
    // distribute: level i holds the generators fixing bases 0..i-1
    for (size_t i = 0; i < L.size(); i++) {
        L[i].gens.clear();
        for (const auto& g : gens) {
            bool fixes = true;
            for (size_t j = 0; j < i; j++)
                if (g.img[L[j].base] != L[j].base) {
                    fixes = false;
                    break;
                }
            if (fixes) L[i].gens.push_back(g);
        }
    }
    for (auto& lv : L) compute_orbit(lv, degree);

    auto strip_from = [&](Perm g, size_t start) -> std::pair<size_t, Perm> {
        for (size_t i = start; i < L.size(); i++) {
            uint32_t beta = g.img[L[i].base];
            if (L[i].sv_gen[beta] == -2) return {i, std::move(g)};
            if (beta != L[i].base) g = g * L[i].coset_rep(beta).inverse();
        }
        return {L.size(), std::move(g)};
    };

    int i = static_cast<int>(L.size()) - 1;
    while (i >= 0) {
        auto& lv = L[i];
        bool added = false;
        for (size_t k = 0; k < lv.orbit.size() && !added; k++) {
            uint32_t beta = lv.orbit[k];
            Perm u_beta = lv.coset_rep(beta);
            for (size_t gi = 0; gi < lv.gens.size() && !added; gi++) {
                uint32_t q = lv.gens[gi].img[beta];
                Perm h = u_beta * lv.gens[gi] * lv.coset_rep(q).inverse();
                if (h.is_identity()) continue;
                auto [l, r] = strip_from(std::move(h), i + 1);
                if (r.is_identity()) continue;
                if (l == L.size()) {
                    BSGS::Level nl;
                    nl.base = smallest_moved(r);
                    L.push_back(nl);
                }
                for (size_t j = i + 1; j <= l && j < L.size(); j++) {
                    L[j].gens.push_back(r);
                    compute_orbit(L[j], degree);
                }
                i = static_cast<int>(l);
                added = true;
            }
        }
        if (!added) i--;
    }

    B->order = 1;
    for (auto& lv : L) B->order *= lv.orbit.size();

    // randomized consistency check: products of the input generators must
    // sift to the identity
    {
        uint64_t state = 0x243f6a8885a308d3ull ^ (degree * 2654435761u);
        for (int t = 0; t < 5 && !gens.empty(); t++) {
            Perm w = Perm::identity(degree);
            int len = 2 + (int)(state % 5);
            for (int i = 0; i < len; i++) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                w = w * gens[state % gens.size()];
            }
            auto [lvl, r] = B->strip(w);
            (void)lvl;
            if (!r.is_identity()) throw std::logic_error("BSGS inconsistent with generator closure");
        }
    }
    return B;
}

}  // namespace

PermGroup::PermGroup(uint32_t deg, std::vector<Perm> g) : degree(deg), gens(std::move(g)) {
    for (auto& x : gens)
        if (x.degree() != degree) throw std::invalid_argument("PermGroup: generator degree mismatch");
}

const BSGS& PermGroup::bsgs() const {
    std::lock_guard<std::mutex> lk(mu_);
    if (!bsgs_) bsgs_ = build_bsgs(degree, gens, {});
    return *bsgs_;
}

bool PermGroup::contains(const Perm& p) const {
    if (p.degree() != degree) return false;
    auto [lvl, r] = bsgs().strip(p);
    (void)lvl;
    return r.is_identity();
}

std::vector<uint32_t> PermGroup::orbit(uint32_t pt) const {
    if (pt >= degree) throw std::out_of_range("orbit: point out of range");
    std::vector<bool> seen(degree, false);
    std::vector<uint32_t> orb = {pt};
    seen[pt] = true;
    for (size_t qi = 0; qi < orb.size(); qi++)
        for (const auto& g : gens) {
            uint32_t q = g.img[orb[qi]];
            if (!seen[q]) {
                seen[q] = true;
                orb.push_back(q);
            }
        }
    return orb;
}

std::vector<std::vector<uint32_t>> PermGroup::orbits() const {
    std::vector<bool> seen(degree, false);
    std::vector<std::vector<uint32_t>> out;
    for (uint32_t p = 0; p < degree; p++) {
        if (seen[p]) continue;
        auto orb = orbit(p);
        for (uint32_t x : orb) seen[x] = true;
        out.push_back(std::move(orb));
    }
    return out;
}

bool PermGroup::is_transitive() const { return degree > 0 && orbit(0).size() == degree; }

PermGroup PermGroup::point_stabilizer(uint32_t pt) const {
    auto B = build_bsgs(degree, gens, {pt});
    std::vector<Perm> sg;
    std::unordered_set<Perm, PermHash> seen;
    for (size_t i = 1; i < B->levels.size(); i++)
        for (const auto& g : B->levels[i].gens)
            if (seen.insert(g).second) sg.push_back(g);
    PermGroup S(degree, sg);
    u128 orb = B->levels.empty() ? 1 : B->levels[0].orbit.size();
    if (orb * S.order() != B->order) throw std::logic_error("orbit-stabilizer identity violated");
    return S;
}

std::vector<Perm> PermGroup::elements(uint64_t cap) const {
    const BSGS& B = bsgs();
    if (B.order > cap) throw std::runtime_error("elements: order exceeds cap");
    std::vector<Perm> cur = {Perm::identity(degree)};
    for (size_t i = B.levels.size(); i-- > 0;) {
        const auto& lv = B.levels[i];
        std::vector<Perm> next;
        next.reserve(cur.size() * lv.orbit.size());
        for (uint32_t beta : lv.orbit) {
            Perm u = lv.coset_rep(beta);
            for (const auto& s : cur) next.push_back(s * u);
        }
        cur = std::move(next);
    }
    return cur;
}

bool PermGroup::is_semiregular() const {
    u128 n = order();
    if (n <= 100000 && n * degree <= 200000000) {
        for (const auto& e : elements(100000))
            if (!e.is_identity() && !e.is_fixed_point_free()) return false;
        return true;
    }
    for (const auto& orb : orbits())
        if (point_stabilizer(orb[0]).order() != 1) return false;
    return true;
}

bool PermGroup::is_regular() const { return is_transitive() && order() == degree; }

// ---------------------------------------------------------------------------
// closures and series

PermGroup normal_closure(const PermGroup& G, const std::vector<Perm>& seeds) {
    // add one strictly-enlarging generator at a time; the generating set stays
    // within the subgroup chain length
    std::vector<Perm> kg;
    PermGroup K(G.degree, kg);
    std::deque<Perm> work(seeds.begin(), seeds.end());
    while (!work.empty()) {
        Perm s = std::move(work.front());
        work.pop_front();
        if (s.is_identity() || K.contains(s)) continue;
        kg.push_back(s);
        K = PermGroup(G.degree, kg);
        for (const auto& g : G.gens) work.push_back(g.inverse() * s * g);
    }
    return K;
}

PermGroup PermGroup::derived_subgroup() const {
    std::vector<Perm> seeds;
    for (const auto& a : gens)
        for (const auto& b : gens) {
            Perm c = a.inverse() * b.inverse() * a * b;
            if (!c.is_identity()) seeds.push_back(c);
        }
    return normal_closure(*this, seeds);
}

std::vector<u128> PermGroup::derived_series_orders() const {
    std::vector<u128> out = {order()};
    PermGroup cur = *this;
    while (true) {
        PermGroup d = cur.derived_subgroup();
        u128 o = d.order();
        out.push_back(o);
        if (o == 1 || o == out[out.size() - 2]) break;
        cur = std::move(d);
    }
    return out;
}

std::vector<u128> PermGroup::lower_central_series_orders() const {
    std::vector<u128> out = {order()};
    PermGroup cur = *this;
    while (true) {
        std::vector<Perm> seeds;
        for (const auto& a : cur.gens)
            for (const auto& b : gens) {
                Perm c = a.inverse() * b.inverse() * a * b;
                if (!c.is_identity()) seeds.push_back(c);
            }
        PermGroup nxt = normal_closure(*this, seeds);
        u128 o = nxt.order();
        out.push_back(o);
        if (o == 1 || o == out[out.size() - 2]) break;
        cur = std::move(nxt);
    }
    return out;
}

bool PermGroup::is_solvable() const { return derived_series_orders().back() == 1; }
bool PermGroup::is_nilpotent() const { return lower_central_series_orders().back() == 1; }

std::string PermGroup::extraspecial_type() const {
    u128 n = order();
    if (n > 10000) return "not";
    auto els = elements(10000);
    // |G| = p^(1+2m) for an odd prime p
    uint64_t n64 = static_cast<uint64_t>(n);
    auto fac = factorize_u64(n64);
    if (fac.size() != 1) return "not";
    uint64_t p = fac[0].first;
    int e = fac[0].second;
    if (p == 2 || e < 3 || e % 2 == 0) return "not";
    // center
    std::vector<Perm> zel;
    for (const auto& x : els) {
        bool central = true;
        for (const auto& g : gens)
            if (!(x * g == g * x)) {
                central = false;
                break;
            }
        if (central) zel.push_back(x);
    }
    if (zel.size() != p) return "not";
    // G/Z elementary abelian: x^p central and [x, y] central for all x, y
    auto is_central = [&](const Perm& x) {
        for (const auto& g : gens)
            if (!(x * g == g * x)) return false;
        return true;
    };
    uint64_t expo = 1;
    for (const auto& x : els) {
        expo = std::max(expo, x.order());
        Perm xp = x;
        for (uint64_t i = 1; i < p; i++) xp = xp * x;
        if (!is_central(xp)) return "not";
    }
    for (const auto& a : gens)
        for (const auto& b : gens)
            if (!is_central(a.inverse() * b.inverse() * a * b)) return "not";
    if (expo == p) return "+";
    if (expo == p * p) return "-";
    return "not";
}

// ---------------------------------------------------------------------------
// random walk

RandomWalk::RandomWalk(const PermGroup& G, uint64_t seed) : rng_(seed ^ 0x5851f42d4c957f2dull) {
    acc_ = Perm::identity(G.degree);
    for (const auto& g : G.gens)
        if (!g.is_identity()) slots_.push_back(g);
    if (slots_.empty()) slots_.push_back(Perm::identity(G.degree));
    while (slots_.size() < 10) slots_.push_back(slots_[slots_.size() % std::max<size_t>(1, G.gens.size())]);
    for (int i = 0; i < 60; i++) next();
}

Perm RandomWalk::next() {
    size_t i = rng_() % slots_.size(), j = rng_() % slots_.size();
    while (j == i) j = rng_() % slots_.size();
    if (rng_() & 1)
        slots_[i] = slots_[i] * slots_[j];
    else
        slots_[i] = slots_[i] * slots_[j].inverse();
    acc_ = acc_ * slots_[i];
    return acc_;
}

// ---------------------------------------------------------------------------
// coset action

namespace {
struct CosetState {
    PermGroup K;
    std::vector<Perm> reps;
    std::map<std::vector<uint32_t>, uint32_t> index;  // base-image tuple -> coset

    // the unique element of Kh with lexicographically least images of K's base
    // points; its full image vector is the coset key
    std::pair<std::vector<uint32_t>, Perm> canon(Perm h) const {
        const BSGS& B = K.bsgs();
        for (const auto& lv : B.levels) {
            uint32_t best = UINT32_MAX, besto = 0;
            for (uint32_t o : lv.orbit) {
                uint32_t v = h.img[o];
                if (v < best) {
                    best = v;
                    besto = o;
                }
            }
            if (besto != lv.base) h = lv.coset_rep(besto) * h;
        }
        std::vector<uint32_t> key = h.img;
        return {std::move(key), std::move(h)};
    }
};
}  // namespace

CosetAction coset_action(const PermGroup& G, const PermGroup& K, uint32_t cap) {
    if (K.degree != G.degree) throw std::invalid_argument("coset_action: degree mismatch");
    u128 idx = G.order() / K.order();
    if (idx > cap) throw std::runtime_error("coset_action: cap exceeded");
    auto st = std::make_shared<CosetState>();
    st->K = K;
    {
        auto [key, rep] = st->canon(Perm::identity(G.degree));
        st->index.emplace(key, 0);
        st->reps.push_back(rep);
    }
    for (size_t qi = 0; qi < st->reps.size(); qi++)
        for (const auto& g : G.gens) {
            auto [key, rep] = st->canon(st->reps[qi] * g);
            if (!st->index.count(key)) {
                st->index.emplace(key, static_cast<uint32_t>(st->reps.size()));
                st->reps.push_back(rep);
            }
        }
    uint32_t deg = static_cast<uint32_t>(st->reps.size());
    if (deg != static_cast<uint64_t>(idx))
        throw std::logic_error("coset enumeration disagrees with the index");
    auto act = [st, deg](const Perm& g) {
        Perm r;
        r.img.resize(deg);
        for (uint32_t i = 0; i < deg; i++) {
            auto [key, rep] = st->canon(st->reps[i] * g);
            (void)rep;
            r.img[i] = st->index.at(key);
        }
        return r;
    };
    std::vector<Perm> igens;
    for (const auto& g : G.gens) igens.push_back(act(g));
    CosetAction ca;
    ca.degree = deg;
    ca.image = PermGroup(deg, igens);
    ca.kernel_order = G.order() / ca.image.order();
    ca.coset_reps = st->reps;
    ca.act = act;
    return ca;
}

// ---------------------------------------------------------------------------
// product action

Perm product_point_perm(uint32_t m, uint32_t d, const std::vector<Perm>& coords, const Perm& top) {
    uint64_t n = 1;
    for (uint32_t i = 0; i < d; i++) n *= m;
    Perm r;
    r.img.resize(n);
    std::vector<uint32_t> digits(d), out(d);
    for (uint64_t x = 0; x < n; x++) {
        uint64_t t = x;
        for (uint32_t i = d; i-- > 0;) {
            digits[i] = static_cast<uint32_t>(t % m);
            t /= m;
        }
        for (uint32_t i = 0; i < d; i++) digits[i] = coords[i].img[digits[i]];
        for (uint32_t j = 0; j < d; j++) out[top.img[j]] = digits[j];
        uint64_t y = 0;
        for (uint32_t i = 0; i < d; i++) y = y * m + out[i];
        r.img[x] = static_cast<uint32_t>(y);
    }
    return r;
}

PermGroup product_action(const PermGroup& G1, uint32_t d, const PermGroup& top) {
    uint64_t n = 1;
    for (uint32_t i = 0; i < d; i++) {
        n *= G1.degree;
        if (n > 100000) throw std::runtime_error("product_action: degree cap exceeded");
    }
    if (top.degree != d) throw std::invalid_argument("product_action: top degree must be d");
    std::vector<Perm> gens;
    std::vector<Perm> id_coords(d, Perm::identity(G1.degree));
    Perm id_top = Perm::identity(d);
    for (uint32_t i = 0; i < d; i++)
        for (const auto& g : G1.gens) {
            auto coords = id_coords;
            coords[i] = g;
            gens.push_back(product_point_perm(G1.degree, d, coords, id_top));
        }
    for (const auto& s : top.gens) gens.push_back(product_point_perm(G1.degree, d, id_coords, s));
    return PermGroup(static_cast<uint32_t>(n), gens);
}

// ---------------------------------------------------------------------------
// conjugacy classes, centralizers, Sylow subgroups

std::vector<Perm> conjugacy_class(const PermGroup& G, const Perm& x, size_t cap) {
    std::vector<Perm> orb = {x};
    std::unordered_set<Perm, PermHash> seen = {x};
    std::vector<Perm> ginv;
    for (const auto& g : G.gens) ginv.push_back(g.inverse());
    for (size_t qi = 0; qi < orb.size(); qi++)
        for (size_t gi = 0; gi < G.gens.size(); gi++) {
            Perm y = ginv[gi] * orb[qi] * G.gens[gi];
            if (seen.insert(y).second) {
                if (orb.size() + 1 > cap) throw std::runtime_error("conjugacy_class: cap exceeded");
                orb.push_back(std::move(y));
            }
        }
    return orb;
}

PermGroup centralizer(const PermGroup& G, const Perm& x, size_t class_cap) {
    // orbit-stabilizer on the conjugation action
    std::vector<Perm> ginv;
    for (const auto& g : G.gens) ginv.push_back(g.inverse());
    std::unordered_map<Perm, uint32_t, PermHash> index;
    std::vector<uint32_t> parent, pgen;
    std::vector<Perm> orb = {x};
    index.emplace(x, 0);
    parent.push_back(0);
    pgen.push_back(UINT32_MAX);
    for (size_t qi = 0; qi < orb.size(); qi++)
        for (size_t gi = 0; gi < G.gens.size(); gi++) {
            Perm y = ginv[gi] * orb[qi] * G.gens[gi];
            if (!index.count(y)) {
                if (orb.size() + 1 > class_cap) throw std::runtime_error("centralizer: class cap exceeded");
                index.emplace(y, static_cast<uint32_t>(orb.size()));
                parent.push_back(static_cast<uint32_t>(qi));
                pgen.push_back(static_cast<uint32_t>(gi));
                orb.push_back(std::move(y));
            }
        }
    u128 target = G.order() / orb.size();
    auto word = [&](uint32_t i) {
        std::vector<uint32_t> chain;
        while (pgen[i] != UINT32_MAX) {
            chain.push_back(pgen[i]);
            i = parent[i];
        }
        Perm u = Perm::identity(G.degree);
        for (size_t k = chain.size(); k-- > 0;) u = u * G.gens[chain[k]];
        return u;
    };
    std::vector<Perm> cgens;
    PermGroup C(G.degree, cgens);
    if (C.order() == target) return C;
    std::vector<Perm> uw(orb.size());
    std::vector<bool> have_u(orb.size(), false);
    auto get_u = [&](uint32_t i) -> const Perm& {
        if (!have_u[i]) {
            uw[i] = word(i);
            have_u[i] = true;
        }
        return uw[i];
    };
    for (size_t qi = 0; qi < orb.size(); qi++) {
        for (size_t gi = 0; gi < G.gens.size(); gi++) {
            Perm y = ginv[gi] * orb[qi] * G.gens[gi];
            uint32_t yi = index.at(y);
            Perm s = get_u(static_cast<uint32_t>(qi)) * G.gens[gi] * get_u(yi).inverse();
            if (s.is_identity() || C.contains(s)) continue;
            cgens.push_back(s);
            C = PermGroup(G.degree, cgens);
            if (C.order() == target) return C;
        }
    }
    if (C.order() != target) throw std::logic_error("centralizer: Schreier generation incomplete");
    return C;
}

PermGroup sylow_subgroup(const PermGroup& G, uint32_t p, uint64_t seed) {
    u128 n = G.order();
    u128 target = 1;
    while (n % p == 0) {
        n /= p;
        target *= p;
    }
    if (target == 1) return PermGroup(G.degree, {});
    RandomWalk rw(G, seed ^ 0x9e3779b9ull);
    std::vector<Perm> sgens;
    PermGroup S(G.degree, sgens);
    auto p_part = [&](Perm x) -> std::optional<Perm> {
        uint64_t o = x.order();
        uint64_t q = 1;
        while (o % p == 0) {
            o /= p;
            q *= p;
        }
        if (q == 1) return std::nullopt;
        // x^o has order q
        Perm y = Perm::identity(G.degree);
        Perm b = x;
        uint64_t e = o;
        while (e) {
            if (e & 1) y = y * b;
            b = b * b;
            e >>= 1;
        }
        return y;
    };
    auto is_p_group = [&](const PermGroup& H) {
        u128 o = H.order();
        while (o % p == 0) o /= p;
        return o == 1;
    };
    for (int it = 0; it < 4000 && S.order() < target; it++) {
        auto t = p_part(rw.next());
        if (!t || S.contains(*t)) continue;
        auto trial = sgens;
        trial.push_back(*t);
        PermGroup T(G.degree, trial);
        if (is_p_group(T)) {
            sgens = std::move(trial);
            S = std::move(T);
            continue;
        }
        // try conjugating into the current group's normalizer neighborhood
        for (int k = 0; k < 20; k++) {
            Perm c = rw.next();
            Perm t2 = c.inverse() * (*t) * c;
            if (S.contains(t2)) continue;
            auto tr2 = sgens;
            tr2.push_back(t2);
            PermGroup T2(G.degree, tr2);
            if (is_p_group(T2)) {
                sgens = std::move(tr2);
                S = std::move(T2);
                break;
            }
        }
    }
    if (S.order() != target) throw std::runtime_error("sylow_subgroup: search failed");
    return S;
}

// ---------------------------------------------------------------------------
// small-group utilities

namespace {
struct SmallGroupTable {
    std::vector<Perm> els;                              // sorted, els[0] = id
    std::unordered_map<Perm, uint32_t, PermHash> idx;
    std::vector<std::vector<uint32_t>> mul;

    explicit SmallGroupTable(std::vector<Perm> elements) {
        std::sort(elements.begin(), elements.end());
        els = std::move(elements);
        for (uint32_t i = 0; i < els.size(); i++) idx.emplace(els[i], i);
        mul.assign(els.size(), std::vector<uint32_t>(els.size()));
        for (uint32_t i = 0; i < els.size(); i++)
            for (uint32_t j = 0; j < els.size(); j++) mul[i][j] = idx.at(els[i] * els[j]);
    }
};
}  // namespace

std::string small_group_tag(const PermGroup& G) {
    u128 o = G.order();
    if (o > 10000) return "order=" + u128_str(o);
    auto els = G.elements(10000);
    uint64_t n = els.size();
    std::map<uint64_t, uint64_t> prof;
    uint64_t expo = 1, maxord = 1;
    for (const auto& x : els) {
        uint64_t ord = x.order();
        prof[ord]++;
        expo = std::lcm(expo, ord);
        maxord = std::max(maxord, ord);
    }
    bool abelian = true;
    for (const auto& a : G.gens) {
        for (const auto& b : G.gens)
            if (!(a * b == b * a)) {
                abelian = false;
                break;
            }
        if (!abelian) break;
    }
    uint64_t zorder = 0;
    for (const auto& x : els) {
        bool central = true;
        for (const auto& g : G.gens)
            if (!(x * g == g * x)) {
                central = false;
                break;
            }
        if (central) zorder++;
    }
    uint64_t inv = prof.count(2) ? prof[2] : 0;

    // friendly names for the isomorphism types this project meets
    if (maxord == n) return "C" + std::to_string(n);
    if (abelian) {
        if (n == 12 && expo == 6) return "C6xC2";
        if (n == 24 && expo == 12) return "C12xC2";
        if (n == 24 && expo == 6) return "C6xC2xC2";
        if (n == 27 && expo == 3) return "C3^3";
        if (n == 27 && expo == 9) return "C9xC3";
        if (n == 8 && expo == 2) return "C2^3";
        if (n == 4 && expo == 2) return "C2^2";
        if (n == 9 && expo == 3) return "C3^2";
    } else {
        if (n == 6) return "S3";
        if (n == 8 && inv == 1) return "Q8";
        if (n == 8 && inv == 5) return "D8";
        if (n == 12 && inv == 1) return "Dic3";
        if (n == 12 && inv == 3) return "A4";
        if (n == 12 && inv == 7) return "D12";
        if (n == 16 && inv == 1 && expo == 8) return "Q16";
        if (n == 16 && inv == 9) return "D16";
        if (n == 16 && expo == 8 && inv == 5) return "SD16";
        if (n == 24 && zorder == 1 && inv == 9) return "S4";
        if (n == 24 && inv == 7 && expo == 6) return "A4xC2";
        if (n == 24 && zorder == 6 && inv == 5) return "D8xC3";
        if (n == 24 && zorder == 2 && expo == 12 && inv == 9) return "C3:D8";  // 3:D8
        if (n == 24 && zorder == 4 && inv == 7) return "C4xS3";
        if (maxord == n / 2 && (inv == n / 2 || inv == n / 2 + 1) && n >= 6)
            return "D" + std::to_string(n);  // dihedral
        if (n == 24 && inv == 1) return "Dic6_or_SL23";
        if (n == 60 && zorder == 1 && inv == 15) return "A5";
        if (n == 120 && zorder == 1 && inv == 25) return "S5";
        if (n == 168 && zorder == 1 && inv == 21) return "PSL(2,7)";
        if (n == 27 && expo == 3) return "3+^(1+2)";
        if (n == 27 && expo == 9) return "3-^(1+2)";
        if (n == 32 && expo == 16 && inv == 9) return "SD32";
        if (n == 48 && inv == 1 && expo == 24) return "C3xQ16";
        if (n == 96 && expo == 48) return "C3xSD32";
    }
    std::ostringstream os;
    os << "ord" << n << ";exp" << expo << ";z" << zorder << ";inv" << inv << (abelian ? ";ab" : "");
    return os.str();
}

std::vector<PermGroup> all_subgroups(const PermGroup& G) {
    auto els = G.elements(10000);
    SmallGroupTable T(els);
    uint32_t n = static_cast<uint32_t>(els.size());
    // subgroups as sorted index vectors
    std::set<std::vector<uint32_t>> found;
    std::deque<std::vector<uint32_t>> queue;
    auto closure = [&](std::vector<uint32_t> seed) {
        std::set<uint32_t> s(seed.begin(), seed.end());
        s.insert(T.idx.at(Perm::identity(G.degree)));
        std::deque<uint32_t> work(s.begin(), s.end());
        while (!work.empty()) {
            uint32_t a = work.front();
            work.pop_front();
            for (uint32_t b : s) {
                for (uint32_t c : {T.mul[a][b], T.mul[b][a]}) {
                    if (!s.count(c)) {
                        s.insert(c);
                        work.push_back(c);
                    }
                }
            }
        }
        return std::vector<uint32_t>(s.begin(), s.end());
    };
    std::vector<uint32_t> triv = {T.idx.at(Perm::identity(G.degree))};
    found.insert(triv);
    queue.push_back(triv);
    // cyclic subgroups first
    for (uint32_t i = 0; i < n; i++) {
        auto c = closure({i});
        if (found.insert(c).second) queue.push_back(c);
    }
    while (!queue.empty()) {
        auto s = queue.front();
        queue.pop_front();
        for (uint32_t x = 0; x < n; x++) {
            if (std::binary_search(s.begin(), s.end(), x)) continue;
            auto t = s;
            t.push_back(x);
            auto c = closure(t);
            if (found.insert(c).second) queue.push_back(c);
        }
    }
    std::vector<PermGroup> out;
    for (const auto& s : found) {
        std::vector<Perm> sg;
        for (uint32_t i : s)
            if (!T.els[i].is_identity()) sg.push_back(T.els[i]);
        out.push_back(PermGroup(G.degree, sg));
    }
    return out;
}

// ---------------------------------------------------------------------------
// conjugacy of regular subgroups

namespace {
// minimal generating sequence of a small group given by its elements
std::vector<Perm> greedy_gens(const std::vector<Perm>& els, uint32_t degree) {
    std::vector<Perm> sorted = els;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Perm> gens;
    std::unordered_set<Perm, PermHash> closed;
    closed.insert(Perm::identity(degree));
    auto close_over = [&]() {
        std::vector<Perm> work(closed.begin(), closed.end());
        for (size_t qi = 0; qi < work.size(); qi++)
            for (const auto& g : gens) {
                Perm y = work[qi] * g;
                if (closed.insert(y).second) work.push_back(y);
            }
    };
    while (closed.size() < els.size()) {
        for (const auto& x : sorted)
            if (!closed.count(x)) {
                gens.push_back(x);
                break;
            }
        close_over();
    }
    return gens;
}
}  // namespace

bool regular_subgroups_conjugate(const PermGroup& G, const std::vector<Perm>& h1,
                                 const std::vector<Perm>& h2) {
    if (h1.size() != h2.size()) return false;
    uint32_t deg = G.degree;
    SmallGroupTable T1(h1), T2(h2);
    uint32_t n = static_cast<uint32_t>(h1.size());
    std::vector<Perm> gens1 = greedy_gens(h1, deg);

    // express each element of H1 as a word index sequence: store for each
    // element a (parent, gen) pair from a BFS over gens1
    std::vector<int32_t> par(n, -1), pgen(n, -1);
    uint32_t id1 = T1.idx.at(Perm::identity(deg));
    std::vector<uint32_t> order_bfs = {id1};
    std::vector<bool> seen(n, false);
    seen[id1] = true;
    std::vector<uint32_t> gidx;
    for (const auto& g : gens1) gidx.push_back(T1.idx.at(g));
    for (size_t qi = 0; qi < order_bfs.size(); qi++)
        for (size_t gi = 0; gi < gidx.size(); gi++) {
            uint32_t y = T1.mul[order_bfs[qi]][gidx[gi]];
            if (!seen[y]) {
                seen[y] = true;
                par[y] = static_cast<int32_t>(order_bfs[qi]);
                pgen[y] = static_cast<int32_t>(gi);
                order_bfs.push_back(y);
            }
        }

    // enumerate candidate images of gens1 in H2 by element order; build the
    // induced map and test homomorphism + point map membership
    std::vector<std::vector<uint32_t>> candidates(gens1.size());
    for (size_t gi = 0; gi < gens1.size(); gi++) {
        uint64_t o = gens1[gi].order();
        for (uint32_t j = 0; j < n; j++)
            if (h2[0].degree() && T2.els[j].order() == o) candidates[gi].push_back(j);
    }
    std::vector<uint32_t> phi_of_gen(gens1.size());
    std::vector<uint32_t> phi(n);
    std::function<bool(size_t)> rec = [&](size_t gi) -> bool {
        if (gi == gens1.size()) {
            // build phi on all elements via the BFS words
            phi[id1] = T2.idx.at(Perm::identity(deg));
            for (size_t k = 1; k < order_bfs.size(); k++) {
                uint32_t y = order_bfs[k];
                phi[y] = T2.mul[phi[par[y]]][phi_of_gen[pgen[y]]];
            }
            // homomorphism check
            std::vector<bool> hit(n, false);
            for (uint32_t i = 0; i < n; i++) {
                if (hit[phi[i]]) return false;  // not bijective
                hit[phi[i]] = true;
            }
            for (uint32_t i = 0; i < n; i++)
                for (uint32_t j = 0; j < n; j++)
                    if (phi[T1.mul[i][j]] != T2.mul[phi[i]][phi[j]]) return false;
            // point maps: pi(0^h) = 0^(t phi(h)), t in H2
            for (uint32_t ti = 0; ti < n; ti++) {
                Perm pi;
                pi.img.assign(deg, UINT32_MAX);
                bool ok = true;
                for (uint32_t i = 0; i < n && ok; i++) {
                    uint32_t from = T1.els[i].img[0];
                    uint32_t to = T2.els[T2.mul[ti][phi[i]]].img[0];
                    if (pi.img[from] != UINT32_MAX) ok = false;
                    pi.img[from] = to;
                }
                if (!ok) continue;
                for (uint32_t x = 0; x < deg; x++)
                    if (pi.img[x] == UINT32_MAX) ok = false;
                if (!ok) continue;
                if (G.contains(pi)) return true;
            }
            return false;
        }
        for (uint32_t cand : candidates[gi]) {
            phi_of_gen[gi] = cand;
            if (rec(gi + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

// ---------------------------------------------------------------------------
// regular subgroup searches

namespace {

// closure of a set of perms, aborting above cap or when an element violates
// the pool predicate
std::optional<std::vector<Perm>> bounded_closure(const std::vector<Perm>& seed, uint32_t degree,
                                                 uint64_t cap,
                                                 const std::function<bool(const Perm&)>& valid) {
    std::unordered_set<Perm, PermHash> s;
    std::vector<Perm> work;
    Perm id = Perm::identity(degree);
    s.insert(id);
    work.push_back(id);
    for (const auto& g : seed) {
        if (s.insert(g).second) {
            if (!valid(g)) return std::nullopt;
            work.push_back(g);
        }
    }
    for (size_t qi = 0; qi < work.size(); qi++) {
        for (const auto& g : seed) {
            for (const Perm& y : {work[qi] * g, g * work[qi]}) {
                if (s.count(y)) continue;
                if (s.size() + 1 > cap) return std::nullopt;
                if (!y.is_identity() && !valid(y)) return std::nullopt;
                s.insert(y);
                work.push_back(y);
            }
        }
    }
    return std::vector<Perm>(work.begin(), work.end());
}

struct FoundSet {
    std::vector<std::vector<Perm>> groups;  // element lists
    std::set<std::vector<uint32_t>> hashes;

    static std::vector<uint32_t> key_of(const std::vector<Perm>& els) {
        // base-point images sorted: cheap exact key for a subgroup as a set
        std::vector<uint32_t> key;
        PermHash H;
        for (const auto& e : els) key.push_back(static_cast<uint32_t>(H(e)));
        std::sort(key.begin(), key.end());
        return key;
    }
    bool add(std::vector<Perm> els) {
        auto k = key_of(els);
        if (!hashes.insert(k).second) return false;
        groups.push_back(std::move(els));
        return true;
    }
};

RegularSearchResult finalize_classes(const PermGroup& G, std::vector<std::vector<Perm>> groups,
                                     bool nilpotent_only, const std::string& method, bool exhaustive) {
    // conjugacy dedupe with the regular transporter test, bucketed by the
    // isomorphism fingerprint first
    std::map<std::string, std::vector<std::vector<Perm>>> reps_by_tag;
    std::map<std::string, std::vector<Perm>> gens_cache;
    for (auto& els : groups) {
        std::vector<Perm> gens = greedy_gens(els, G.degree);
        PermGroup g(G.degree, gens);
        std::string tag = small_group_tag(g);
        bool dup = false;
        for (auto& r : reps_by_tag[tag])
            if (r.size() == els.size() && regular_subgroups_conjugate(G, els, r)) {
                dup = true;
                break;
            }
        if (!dup) reps_by_tag[tag].push_back(std::move(els));
    }
    RegularSearchResult out;
    out.method = method;
    out.exhaustive = exhaustive;
    for (auto& [tag, reps] : reps_by_tag)
        for (auto& els : reps) {
            std::vector<Perm> gens = greedy_gens(els, G.degree);
            SubgroupWitness w;
            w.group = PermGroup(G.degree, gens);
            if (w.group.order() != els.size()) throw std::logic_error("regular search closure mismatch");
            w.nilpotent = w.group.is_nilpotent();
            if (nilpotent_only && !w.nilpotent) continue;
            w.extraspecial = w.group.extraspecial_type();
            w.tag = tag;
            out.classes.push_back(std::move(w));
        }
    std::sort(out.classes.begin(), out.classes.end(),
              [](const SubgroupWitness& a, const SubgroupWitness& b) { return a.tag < b.tag; });
    return out;
}

}  // namespace

// all automorphisms of a small group, as index maps on the sorted elements
std::vector<std::vector<uint32_t>> small_group_automorphisms(const std::vector<Perm>& els,
                                                             uint32_t degree) {
    SmallGroupTable T(els);
    uint32_t n = static_cast<uint32_t>(els.size());
    std::vector<Perm> gens = greedy_gens(els, degree);
    std::vector<uint32_t> gidx;
    for (const auto& g : gens) gidx.push_back(T.idx.at(g));
    // BFS words
    std::vector<int32_t> par(n, -1), pgen(n, -1);
    uint32_t id = T.idx.at(Perm::identity(degree));
    std::vector<uint32_t> bfs = {id};
    std::vector<bool> seen(n, false);
    seen[id] = true;
    for (size_t qi = 0; qi < bfs.size(); qi++)
        for (size_t gi = 0; gi < gidx.size(); gi++) {
            uint32_t y = T.mul[bfs[qi]][gidx[gi]];
            if (!seen[y]) {
                seen[y] = true;
                par[y] = static_cast<int32_t>(bfs[qi]);
                pgen[y] = static_cast<int32_t>(gi);
                bfs.push_back(y);
            }
        }
    std::vector<std::vector<uint32_t>> cands(gens.size());
    for (size_t gi = 0; gi < gens.size(); gi++) {
        uint64_t o = gens[gi].order();
        for (uint32_t j = 0; j < n; j++)
            if (T.els[j].order() == o) cands[gi].push_back(j);
    }
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> phi_of_gen(gens.size()), phi(n);
    std::function<void(size_t)> rec = [&](size_t gi) {
        if (gi == gens.size()) {
            phi[id] = id;
            for (size_t k = 1; k < bfs.size(); k++) {
                uint32_t y = bfs[k];
                phi[y] = T.mul[phi[par[y]]][phi_of_gen[pgen[y]]];
            }
            std::vector<bool> hit(n, false);
            for (uint32_t i = 0; i < n; i++) {
                if (hit[phi[i]]) return;
                hit[phi[i]] = true;
            }
            for (uint32_t i = 0; i < n; i++)
                for (uint32_t j = 0; j < n; j++)
                    if (phi[T.mul[i][j]] != T.mul[phi[i]][phi[j]]) return;
            out.push_back(phi);
            return;
        }
        for (uint32_t cand : cands[gi]) {
            phi_of_gen[gi] = cand;
            rec(gi + 1);
        }
    };
    rec(0);
    return out;
}

namespace {

// exhaustive search by full element enumeration
std::vector<std::vector<Perm>> search_by_enumeration(const PermGroup& G, uint64_t enum_cap) {
    uint32_t n = G.degree;
    auto els = G.elements(enum_cap);
    std::vector<Perm> pool;
    for (auto& e : els) {
        if (e.is_identity()) continue;
        if (!e.is_semiregular()) continue;
        auto ct = e.cycle_type();
        if (ct[0] < 2 || n % ct[0]) continue;
        pool.push_back(std::move(e));
    }
    std::sort(pool.begin(), pool.end());
    // conjugacy classes of pool elements under G
    std::unordered_map<Perm, uint32_t, PermHash> cls;
    std::vector<Perm> reps;
    std::vector<Perm> ginv;
    for (const auto& g : G.gens) ginv.push_back(g.inverse());
    for (const auto& x : pool) {
        if (cls.count(x)) continue;
        uint32_t c = static_cast<uint32_t>(reps.size());
        reps.push_back(x);
        std::vector<Perm> orb = {x};
        cls.emplace(x, c);
        for (size_t qi = 0; qi < orb.size(); qi++)
            for (size_t gi = 0; gi < G.gens.size(); gi++) {
                Perm y = ginv[gi] * orb[qi] * G.gens[gi];
                if (!cls.count(y)) {
                    cls.emplace(y, c);
                    orb.push_back(std::move(y));
                }
            }
    }
    auto valid = [&](const Perm& e) {
        if (!e.is_semiregular()) return false;
        auto ct = e.cycle_type();
        return ct[0] >= 2 && n % ct[0] == 0;
    };
    FoundSet found, partials;
    std::function<void(const std::vector<Perm>&, const std::vector<Perm>&, int)> dfs =
        [&](const std::vector<Perm>& closure_els, const std::vector<Perm>& gens, int depth) {
            if (closure_els.size() == n) {
                found.add(closure_els);
                return;
            }
            if (depth >= 4) return;
            if (n % closure_els.size()) return;
            // quick product filter against a couple of closure elements
            for (const auto& b : pool) {
                bool quick_ok = true;
                for (size_t t = 1; t < closure_els.size() && t <= 2; t++)
                    if (!valid(closure_els[t] * b)) {
                        quick_ok = false;
                        break;
                    }
                if (!quick_ok) continue;
                auto g2 = gens;
                g2.push_back(b);
                auto cl = bounded_closure(g2, n, n, valid);
                if (!cl || cl->size() <= closure_els.size() || n % cl->size()) continue;
                if (cl->size() == n) {
                    found.add(*cl);
                    continue;
                }
                // only grow through large partials after two generators
                if (depth >= 2 && cl->size() * 3 < n) continue;
                if (partials.add(*cl)) dfs(*cl, g2, depth + 1);
            }
        };
    for (const auto& r : reps) {
        auto cl = bounded_closure({r}, n, n, valid);
        if (!cl || n % cl->size()) continue;
        if (cl->size() == n) {
            found.add(*cl);
            continue;
        }
        dfs(*cl, {r}, 1);
    }
    return std::move(found.groups);
}

}  // namespace

RegularSearchResult regular_subgroup_search(const PermGroup& G, bool nilpotent_only, uint64_t seed,
                                            uint64_t enum_cap) {
    if (!G.is_transitive()) throw std::invalid_argument("regular_subgroup_search: G must be transitive");
    uint32_t n = G.degree;
    u128 go = G.order();

    // prime degree with p exactly dividing |G|: every regular subgroup is a
    // Sylow p-subgroup, so there is a single class
    if (is_prime_u64(n)) {
        u128 o = go;
        int e = 0;
        while (o % n == 0) {
            o /= n;
            e++;
        }
        if (e == 1) {
            // power a random element down to order n
            Perm gen;
            bool ok = false;
            RandomWalk rw2(G, seed);
            for (int it = 0; it < 100000 && !ok; it++) {
                Perm x = rw2.next();
                uint64_t ord = x.order();
                if (ord % n) continue;
                uint64_t e2 = ord / n;
                Perm y = Perm::identity(G.degree);
                Perm b = x;
                while (e2) {
                    if (e2 & 1) y = y * b;
                    b = b * b;
                    e2 >>= 1;
                }
                gen = y;
                ok = true;
            }
            if (!ok) throw std::runtime_error("regular_subgroup_search: no order-p element found");
            std::vector<Perm> els;
            Perm cur = Perm::identity(G.degree);
            for (uint32_t i = 0; i < n; i++) {
                els.push_back(cur);
                cur = cur * gen;
            }
            return finalize_classes(G, {els}, nilpotent_only, "sylow-prime-degree", true);
        }
    }

    if (go <= enum_cap)
        return finalize_classes(G, search_by_enumeration(G, enum_cap), nilpotent_only,
                                "full-enumeration", true);

    if (nilpotent_only) {
        // nilpotent H of order n with an odd prime r || n: the Sylow r-subgroup
        // <t> of H is central in H, so H lies in the centralizer of t, and t is
        // semiregular.  Candidates t are covered by a Sylow r-subgroup of G.
        uint32_t r = 0;
        for (auto& [p, e] : factorize_u64(n))
            if (p % 2 == 1 && e == 1) {
                r = static_cast<uint32_t>(p);
                break;
            }
        if (r == 0) throw std::runtime_error("regular_subgroup_search: no strategy for this size");
        PermGroup R = sylow_subgroup(G, r, seed);
        auto rels = R.elements(100000);
        std::vector<Perm> cands;
        std::unordered_set<Perm, PermHash> cseen;
        for (const auto& t : rels) {
            if (t.is_identity() || t.order() != r) continue;
            if (!t.is_semiregular() || !t.is_fixed_point_free()) continue;
            // dedupe generated subgroups <t>
            Perm mn = t;
            Perm cur = t;
            for (uint32_t k = 2; k < r; k++) {
                cur = cur * t;
                if (cur < mn) mn = cur;
            }
            if (cseen.insert(mn).second) cands.push_back(t);
        }
        std::vector<std::vector<Perm>> groups;
        for (const auto& t : cands) {
            PermGroup C = centralizer(G, t);
            if (!C.is_transitive()) continue;
            if (C.order() > enum_cap) throw std::runtime_error("centralizer too large to enumerate");
            for (auto& els : search_by_enumeration(C, enum_cap)) groups.push_back(std::move(els));
        }
        return finalize_classes(G, std::move(groups), true, "sylow-centralizer", true);
    }
    throw std::runtime_error("regular_subgroup_search: no exhaustive strategy; use regular_witness_search");
}

std::optional<PermGroup> random_subgroup_of_order(const PermGroup& G, u128 target, int budget,
                                                  uint64_t seed,
                                                  const std::function<bool(const PermGroup&)>& filter) {
    if (target == G.order()) return G;
    if (G.order() % target) return std::nullopt;  // Lagrange
    RandomWalk rw(G, seed);
    for (int it = 0; it < budget; it++) {
        Perm a = rw.next(), b = rw.next();
        PermGroup H(G.degree, {a, b});
        if (H.order() != target) continue;
        if (filter && !filter(H)) continue;
        return H;
    }
    return std::nullopt;
}

RegularSearchResult regular_witness_search(const PermGroup& G, uint64_t seed) {
    uint32_t n = G.degree;
    if (!G.is_transitive()) throw std::invalid_argument("regular_witness_search: G must be transitive");
    // pools: conjugacy classes of semiregular elements of prime order p | n
    std::vector<uint32_t> primes;
    for (auto& [p, e] : factorize_u64(n)) {
        (void)e;
        primes.push_back(static_cast<uint32_t>(p));
    }
    std::vector<Perm> reps;
    RandomWalk rw(G, seed);
    for (uint32_t p : primes) {
        Perm found;
        bool ok = false;
        for (int it = 0; it < 200000 && !ok; it++) {
            Perm x = rw.next();
            uint64_t ord = x.order();
            if (ord % p) continue;
            uint64_t e = ord / p;
            Perm y = Perm::identity(n);
            Perm b = x;
            while (e) {
                if (e & 1) y = y * b;
                b = b * b;
                e >>= 1;
            }
            if (y.is_semiregular() && y.is_fixed_point_free()) {
                found = y;
                ok = true;
            }
        }
        if (ok) reps.push_back(found);
    }
    std::vector<Perm> pool;
    {
        std::unordered_set<Perm, PermHash> pseen;
        for (const auto& r : reps)
            for (auto& x : conjugacy_class(G, r, 1200000))
                if (pseen.insert(x).second) pool.push_back(std::move(x));
    }
    auto valid = [&](const Perm& e) {
        if (!e.is_semiregular()) return false;
        auto ct = e.cycle_type();
        return ct[0] >= 2 && n % ct[0] == 0;
    };
    FoundSet found, partials;
    for (const auto& a : reps) {
        for (const auto& b : pool) {
            if (!valid(a * b)) continue;
            auto cl = bounded_closure({a, b}, n, n, valid);
            if (!cl || n % cl->size()) continue;
            if (cl->size() == n)
                found.add(*cl);
            else if (cl->size() * 2 == n)
                partials.add(*cl);
        }
    }
    // extend the index-2 partials S: a regular overgroup H = <S, w> has S
    // normal, so w is determined by its image of the base point, the induced
    // automorphism of S and the value of w^2 in S; every candidate is a
    // single membership test
    for (const auto& part : partials.groups) {
        // split the two S-orbits, indexed by S-elements
        const Perm* id = nullptr;
        for (const auto& s : part)
            if (s.is_identity()) id = &s;
        if (!id) continue;
        uint32_t base0 = 0;
        std::vector<uint32_t> o0(part.size());  // point of orbit 0 for each S-element index
        auto autos = small_group_automorphisms(part, n);
        std::vector<Perm> sorted = part;
        std::sort(sorted.begin(), sorted.end());
        std::unordered_map<Perm, uint32_t, PermHash> sidx;
        for (uint32_t i = 0; i < sorted.size(); i++) sidx.emplace(sorted[i], i);
        for (uint32_t i = 0; i < sorted.size(); i++) o0[i] = sorted[i].img[base0];
        std::vector<bool> in_o0(n, false);
        for (uint32_t p : o0) in_o0[p] = true;
        for (uint32_t beta = 0; beta < n; beta++) {
            if (in_o0[beta]) continue;
            for (const auto& phi : autos) {
                // w: base^s -> beta^phi(s); w: beta^s -> (base^gamma)^phi(s)
                for (uint32_t gi = 0; gi < sorted.size(); gi++) {
                    Perm w;
                    w.img.assign(n, UINT32_MAX);
                    bool ok = true;
                    for (uint32_t i = 0; i < sorted.size() && ok; i++) {
                        uint32_t from = sorted[i].img[base0];
                        uint32_t to = sorted[phi[i]].img[beta];
                        if (w.img[from] != UINT32_MAX) ok = false;
                        w.img[from] = to;
                        uint32_t from2 = sorted[i].img[beta];
                        uint32_t to2 = sorted[phi[i]].img[sorted[gi].img[base0]];
                        if (ok && w.img[from2] != UINT32_MAX) ok = false;
                        w.img[from2] = to2;
                    }
                    if (!ok) continue;
                    for (uint32_t x = 0; x < n && ok; x++)
                        if (w.img[x] == UINT32_MAX) ok = false;
                    if (!ok || !valid(w)) continue;
                    if (!G.contains(w)) continue;
                    std::vector<Perm> g2 = greedy_gens(part, n);
                    g2.push_back(w);
                    auto cl = bounded_closure(g2, n, n, valid);
                    if (cl && cl->size() == n) found.add(*cl);
                }
            }
        }
    }
    // merge the exhaustive nilpotent classes (they can need three generators,
    // which the pools scan does not attempt)
    try {
        auto nil = regular_subgroup_search(G, true, seed);
        for (const auto& w : nil.classes) found.add(w.group.elements(n));
    } catch (const std::exception&) {
        // no exhaustive nilpotent strategy at this size; witnesses only
    }
    return finalize_classes(G, std::move(found.groups), false, "witness-pools", false);
}

}  // namespace factoriza

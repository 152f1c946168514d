#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace factoriza {

using u128 = unsigned __int128;
std::string u128_str(u128 v);

struct Perm {
    std::vector<uint32_t> img;

    Perm() = default;
    explicit Perm(uint32_t n) : img(n) {
        for (uint32_t i = 0; i < n; i++) img[i] = i;
    }
    static Perm identity(uint32_t n) { return Perm(n); }
    uint32_t degree() const { return static_cast<uint32_t>(img.size()); }
    uint32_t operator[](uint32_t x) const { return img[x]; }

    Perm operator*(const Perm& o) const {  // x^(ab) = (x^a)^b
        Perm r;
        r.img.resize(img.size());
        for (size_t i = 0; i < img.size(); i++) r.img[i] = o.img[img[i]];
        return r;
    }
    Perm inverse() const {
        Perm r;
        r.img.resize(img.size());
        for (uint32_t i = 0; i < img.size(); i++) r.img[img[i]] = i;
        return r;
    }
    bool is_identity() const {
        for (uint32_t i = 0; i < img.size(); i++)
            if (img[i] != i) return false;
        return true;
    }
    bool operator==(const Perm& o) const { return img == o.img; }
    bool operator!=(const Perm& o) const { return img != o.img; }
    bool operator<(const Perm& o) const { return img < o.img; }

    uint64_t order() const;
    std::vector<uint32_t> cycle_type() const;  // descending, fixed points included
    bool is_fixed_point_free() const;
    bool is_semiregular() const;  // all cycle lengths equal
    std::string to_cycles() const;
};

struct PermHash {
    size_t operator()(const Perm& p) const {
        size_t h = 1469598103934665603ull;
        for (uint32_t x : p.img) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

// Base and strong generating set with Schreier vectors; transversal perms are
// cached per level when the orbit is small enough.
struct BSGS {
    uint32_t degree = 0;
    struct Level {
        uint32_t base = 0;
        std::vector<Perm> gens;
        std::vector<int32_t> sv_gen;    // generator index, -1 root, -2 outside orbit
        std::vector<uint32_t> sv_from;
        std::vector<uint32_t> orbit;    // BFS order
        std::vector<Perm> transversal;  // parallel to orbit when cached, else empty
        Perm coset_rep(uint32_t beta) const;  // u with base^u = beta
    };
    std::vector<Level> levels;
    u128 order = 1;

    // returns (level reached, residue); residue trivial iff membership
    std::pair<size_t, Perm> strip(Perm g) const;
};

class PermGroup {
public:
    uint32_t degree = 0;
    std::vector<Perm> gens;

    PermGroup() = default;
    PermGroup(uint32_t deg, std::vector<Perm> g);
    PermGroup(const PermGroup& o) : degree(o.degree), gens(o.gens), bsgs_(o.shared_bsgs()) {}
    PermGroup(PermGroup&& o) noexcept : degree(o.degree), gens(std::move(o.gens)), bsgs_(o.shared_bsgs()) {}
    PermGroup& operator=(const PermGroup& o) {
        if (this != &o) {
            degree = o.degree;
            gens = o.gens;
            std::lock_guard<std::mutex> lk(mu_);
            bsgs_ = o.shared_bsgs();
        }
        return *this;
    }
    PermGroup& operator=(PermGroup&& o) noexcept {
        if (this != &o) {
            degree = o.degree;
            gens = std::move(o.gens);
            std::lock_guard<std::mutex> lk(mu_);
            bsgs_ = o.shared_bsgs();
        }
        return *this;
    }

    const BSGS& bsgs() const;
    u128 order() const { return bsgs().order; }
    bool contains(const Perm& p) const;

    std::vector<uint32_t> orbit(uint32_t pt) const;  // BFS, FIFO, generators in list order
    std::vector<std::vector<uint32_t>> orbits() const;
    bool is_transitive() const;

    // stabilizer of a point, generators obtained by sifted Schreier generators;
    // asserts the orbit-stabilizer identity
    PermGroup point_stabilizer(uint32_t pt) const;

    // full element list in deterministic order; throws above the cap
    std::vector<Perm> elements(uint64_t cap = 2000000) const;

    bool is_semiregular() const;
    bool is_regular() const;  // transitive and |G| = degree

    PermGroup derived_subgroup() const;
    std::vector<u128> derived_series_orders() const;
    std::vector<u128> lower_central_series_orders() const;
    bool is_solvable() const;
    bool is_nilpotent() const;

    // "+", "-" or "not": extraspecial type of a p-group of order p^(1+2m), p odd
    std::string extraspecial_type() const;

private:
    std::shared_ptr<BSGS> shared_bsgs() const {
        std::lock_guard<std::mutex> lk(mu_);
        return bsgs_;
    }
    mutable std::shared_ptr<BSGS> bsgs_;
    mutable std::mutex mu_;
};

// normal closure of <seeds> under conjugation by G
PermGroup normal_closure(const PermGroup& G, const std::vector<Perm>& seeds);

// deterministic pseudo-random walk (product replacement), seeded
class RandomWalk {
public:
    RandomWalk(const PermGroup& G, uint64_t seed);
    Perm next();

private:
    std::vector<Perm> slots_;
    Perm acc_;
    std::mt19937_64 rng_;
};

// coset action of G on the right cosets of K (a subgroup given on the same
// points); canonical coset representatives are the lexicographically least
// base-image elements found by descent through K's stabilizer chain
struct CosetAction {
    uint32_t degree = 0;            // |G : K|
    PermGroup image;                // the permutation image
    u128 kernel_order = 1;          // |G| / |image|; 1 means faithful
    std::vector<Perm> coset_reps;
    std::function<Perm(const Perm&)> act;  // quotient map on arbitrary elements
};
CosetAction coset_action(const PermGroup& G, const PermGroup& K, uint32_t cap = 20000);

// product action of G1 wr top on [m]^d, mixed-radix point encoding with
// coordinate 0 most significant
PermGroup product_action(const PermGroup& G1, uint32_t d, const PermGroup& top);
Perm product_point_perm(uint32_t m, uint32_t d, const std::vector<Perm>& coords, const Perm& top);

// conjugacy class of x in G by BFS; throws if it exceeds cap
std::vector<Perm> conjugacy_class(const PermGroup& G, const Perm& x, size_t cap = 2000000);
// centralizer of x via orbit-stabilizer on the conjugation action
PermGroup centralizer(const PermGroup& G, const Perm& x, size_t class_cap = 2000000);
// Sylow p-subgroup by seeded random growth; validated by order
PermGroup sylow_subgroup(const PermGroup& G, uint32_t p, uint64_t seed = 0);

// exact conjugacy test for regular subgroups: H1^g = H2 for some g in G iff
// some isomorphism H1 -> H2 induces a point map lying in G
bool regular_subgroups_conjugate(const PermGroup& G, const std::vector<Perm>& h1,
                                 const std::vector<Perm>& h2);

struct SubgroupWitness {
    PermGroup group;
    std::string tag;  // isomorphism-type fingerprint label
    bool nilpotent = false;
    std::string extraspecial;  // "+", "-" or "not"
};

struct RegularSearchResult {
    std::vector<SubgroupWitness> classes;  // up to conjugacy, deterministic order
    std::string method;
    bool exhaustive = false;
};

// all regular subgroups of the transitive group G on its full domain, up to
// conjugacy.  Strategy by size: prime degree (Sylow argument), full element
// enumeration (|G| <= enum_cap), or -- nilpotent_only, with an exactly
// divisible odd prime in the degree -- reduction to centralizers of
// semiregular elements.  Throws if no exhaustive strategy applies.
RegularSearchResult regular_subgroup_search(const PermGroup& G, bool nilpotent_only,
                                            uint64_t seed = 0, uint64_t enum_cap = 2000000);

// witness-mode search used where exhaustive enumeration is not claimed:
// regular subgroups of order n generated by (semiregular) involutions and
// 3-elements, plus index-2 extensions of the order-n/2 subgroups found
RegularSearchResult regular_witness_search(const PermGroup& G, uint64_t seed = 0);

// seeded 2-generator subgroup search; returns the first subgroup of exact
// order found within the budget (a none-result is inconclusive)
std::optional<PermGroup> random_subgroup_of_order(const PermGroup& G, u128 target, int budget,
                                                  uint64_t seed = 0,
                                                  const std::function<bool(const PermGroup&)>& filter = {});

// isomorphism-type fingerprint for small groups: order, abelian flag,
// exponent, center order, element-order profile
std::string small_group_tag(const PermGroup& G);

// all automorphisms of a small group given by its element list, each returned
// as an index map on the sorted element list
std::vector<std::vector<uint32_t>> small_group_automorphisms(const std::vector<Perm>& els,
                                                             uint32_t degree);

// all subgroups of a small group (full enumeration; |G| <= 10^4)
std::vector<PermGroup> all_subgroups(const PermGroup& G);

}  // namespace factoriza

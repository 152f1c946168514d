#pragma once

#include "factoriza/forms.hpp"
#include "factoriza/perm.hpp"

#include <optional>
#include <string>
#include <vector>

namespace factoriza {

// expected fixed-point behaviour of one W-class
struct FixClass {
    std::string desc;            // e.g. "rank 2" or "rank 3 (b3)"
    uint64_t count_expected;     // number of W-elements in the class
    uint64_t fix_expected;       // predicted fixed points of each on the domain
};

struct Expectations {
    u128 ell = 0;                          // expected |H| at the acting level
    uint64_t delta = 0;                    // expected domain size
    bool transitive = true;
    std::optional<bool> exact;             // regularity claim, when stated
    std::optional<uint64_t> stab_order;    // expected point stabilizer order in H
    std::optional<uint64_t> orbit_count;   // expected number of H-orbits (controls)
    std::vector<FixClass> fix_classes;
    std::vector<std::string> citations;
};

// A built (G, H, K, Delta) quadruple reduced to its acting data: H as a
// permutation group on the materialized domain, the W-elements used by the
// orbit-counting reduction, and an optional refined action (Case 3's
// Omega-labeled domain) on which exactness is decided.
struct FactorizationInstance {
    std::string label;
    PermGroup H;                         // on the primary domain
    std::vector<Perm> W_elements;        // images of the nontrivial W-elements
    std::vector<std::string> W_desc;     // parallel rank/type descriptors
    std::optional<PermGroup> H_refined;  // refinement deciding exactness (else primary)
    u128 matrix_kernel = 1;              // kernel order of the matrix-to-perm projection
    u128 socle_H_order = 0;              // |H meet G0|, 0 if not computed
    u128 socle_index = 0;                // |G0 : K meet G0|, 0 if not computed
    Expectations expect;
};

struct VerificationReport {
    std::string label;
    u128 h_order = 0;
    uint64_t delta = 0;
    std::vector<uint64_t> orbit_sizes;
    bool transitive = false;
    uint64_t stab_order = 0;
    std::optional<bool> exact;
    std::optional<uint64_t> orbit_count_lemma;
    std::vector<std::string> fix_observed;
    std::vector<std::string> mismatches;  // itemized expectation failures
    bool pass = false;
    std::string text() const;
};

VerificationReport verify(const FactorizationInstance& inst);

// orbit counting lemma, exactly: n = (1/|H|) sum_h fix(h).  Enumerates H
// (cap on the order) and verifies fix(h) = 0 off W when W is supplied.
// Throws if the sum is not divisible by |H|.
uint64_t orbit_count_check(const PermGroup& H, const std::vector<Perm>& W, uint64_t cap = 20000);

struct DivisibilityResult {
    bool holds = false;
    u128 socle_H = 0, socle_index = 0;
};
DivisibilityResult divisibility_check(const FactorizationInstance& inst);

// |H meet N| for a normal subgroup N via |H||N|/|<H,N>|
u128 normal_intersection_order(const PermGroup& H, const PermGroup& N);

// per-class fixed point profile of the W-elements on the domain
std::vector<std::string> fixpoint_profile(const std::vector<Perm>& W,
                                          const std::vector<std::string>& desc);

}  // namespace factoriza

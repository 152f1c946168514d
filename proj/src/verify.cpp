#include "factoriza/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace factoriza {

u128 normal_intersection_order(const PermGroup& H, const PermGroup& N) {
    std::vector<Perm> all = H.gens;
    for (const auto& g : N.gens) all.push_back(g);
    PermGroup HN(H.degree, all);
    return H.order() * N.order() / HN.order();
}

uint64_t orbit_count_check(const PermGroup& H, const std::vector<Perm>& W, uint64_t cap) {
    auto els = H.elements(cap);
    std::unordered_set<Perm, PermHash> wset(W.begin(), W.end());
    u128 sum = 0;
    for (const auto& h : els) {
        uint64_t fix = 0;
        for (uint32_t i = 0; i < h.degree(); i++)
            if (h.img[i] == i) fix++;
        if (!W.empty() && !h.is_identity() && !wset.count(h) && fix != 0)
            throw std::logic_error("orbit_count_check: fix(h) != 0 off W");
        sum += fix;
    }
    if (sum % els.size()) throw std::logic_error("orbit_count_check: sum not divisible by |H|");
    return static_cast<uint64_t>(sum / els.size());
}

DivisibilityResult divisibility_check(const FactorizationInstance& inst) {
    DivisibilityResult r;
    r.socle_H = inst.socle_H_order;
    r.socle_index = inst.socle_index;
    if (r.socle_H == 0 || r.socle_index == 0) {
        r.holds = false;
        return r;
    }
    r.holds = (r.socle_index % r.socle_H) == 0;
    return r;
}

std::vector<std::string> fixpoint_profile(const std::vector<Perm>& W,
                                          const std::vector<std::string>& desc) {
    // group by descriptor, count members and the (uniform) fixed point count
    std::map<std::string, std::pair<uint64_t, std::map<uint64_t, uint64_t>>> agg;
    for (size_t i = 0; i < W.size(); i++) {
        uint64_t fix = 0;
        for (uint32_t p = 0; p < W[i].degree(); p++)
            if (W[i].img[p] == p) fix++;
        auto& slot = agg[desc[i]];
        slot.first++;
        slot.second[fix]++;
    }
    std::vector<std::string> out;
    for (auto& [d, v] : agg) {
        std::ostringstream os;
        os << d << ": count=" << v.first << " fix=";
        bool first = true;
        for (auto& [f, c] : v.second) {
            if (!first) os << ",";
            os << f;
            if (v.second.size() > 1) os << "(x" << c << ")";
            first = false;
        }
        out.push_back(os.str());
    }
    return out;
}

VerificationReport verify(const FactorizationInstance& inst) {
    VerificationReport r;
    r.label = inst.label;
    r.h_order = inst.H.order();
    r.delta = inst.H.degree;
    auto orbs = inst.H.orbits();
    for (auto& o : orbs) r.orbit_sizes.push_back(o.size());
    std::sort(r.orbit_sizes.rbegin(), r.orbit_sizes.rend());
    r.transitive = orbs.size() == 1;
    r.stab_order = static_cast<uint64_t>(inst.H.point_stabilizer(0).order());
    if (inst.H_refined)
        r.exact = inst.H_refined->is_regular();
    else
        r.exact = inst.H.is_regular();

    auto mism = [&](const std::string& s) { r.mismatches.push_back(s); };
    const Expectations& e = inst.expect;
    if (e.ell && r.h_order != e.ell)
        mism("|H| = " + u128_str(r.h_order) + ", expected " + u128_str(e.ell));
    if (e.delta && r.delta != e.delta)
        mism("|Delta| = " + std::to_string(r.delta) + ", expected " + std::to_string(e.delta));
    if (r.transitive != e.transitive)
        mism(std::string("transitive = ") + (r.transitive ? "true" : "false") + ", expected " +
             (e.transitive ? "true" : "false"));
    if (e.exact && *r.exact != *e.exact)
        mism(std::string("exact = ") + (*r.exact ? "true" : "false") + ", expected " +
             (*e.exact ? "true" : "false"));
    if (e.stab_order && r.transitive && r.stab_order != *e.stab_order)
        mism("stabilizer order = " + std::to_string(r.stab_order) + ", expected " +
             std::to_string(*e.stab_order));
    if (e.orbit_count && orbs.size() != *e.orbit_count)
        mism("orbit count = " + std::to_string(orbs.size()) + ", expected " +
             std::to_string(*e.orbit_count));

    // orbit counting lemma, exact; must agree with the BFS orbit count
    if (inst.H.order() <= 25000) {
        try {
            uint64_t n = orbit_count_check(inst.H, inst.W_elements, 25000);
            r.orbit_count_lemma = n;
            if (n != orbs.size()) mism("counting lemma n = " + std::to_string(n) +
                                       " disagrees with BFS orbit count " + std::to_string(orbs.size()));
        } catch (const std::logic_error& ex) {
            mism(std::string("counting lemma: ") + ex.what());
        }
    }

    // fixed point profile vs the predicted class data
    if (!inst.W_elements.empty()) {
        r.fix_observed = fixpoint_profile(inst.W_elements, inst.W_desc);
        for (const auto& fc : e.fix_classes) {
            uint64_t count = 0;
            std::map<uint64_t, uint64_t> fixes;
            for (size_t i = 0; i < inst.W_elements.size(); i++) {
                if (inst.W_desc[i].rfind(fc.desc, 0) != 0) continue;
                count++;
                uint64_t fix = 0;
                for (uint32_t p = 0; p < inst.W_elements[i].degree(); p++)
                    if (inst.W_elements[i].img[p] == p) fix++;
                fixes[fix]++;
            }
            if (count != fc.count_expected)
                mism("class '" + fc.desc + "': count " + std::to_string(count) + ", expected " +
                     std::to_string(fc.count_expected));
            if (fixes.size() != 1 || fixes.begin()->first != fc.fix_expected) {
                std::ostringstream os;
                os << "class '" << fc.desc << "': fix ";
                for (auto& [f, c] : fixes) os << f << "(x" << c << ") ";
                os << "expected " << fc.fix_expected;
                mism(os.str());
            }
        }
    }
    r.pass = r.mismatches.empty();
    return r;
}

std::string VerificationReport::text() const {
    std::ostringstream os;
    os << "instance " << label << "\n";
    os << "  |H| = " << u128_str(h_order) << "  |Delta| = " << delta << "\n";
    os << "  orbits =";
    size_t shown = 0;
    for (auto s : orbit_sizes) {
        os << " " << s;
        if (++shown >= 12 && orbit_sizes.size() > 12) {
            os << " ... (" << orbit_sizes.size() << " total)";
            break;
        }
    }
    os << "\n  transitive = " << (transitive ? "yes" : "no") << "  stabilizer = " << stab_order;
    if (exact) os << "  exact = " << (*exact ? "yes" : "no");
    if (orbit_count_lemma) os << "  counting-lemma n = " << *orbit_count_lemma;
    os << "\n";
    for (const auto& f : fix_observed) os << "  fix profile: " << f << "\n";
    for (const auto& m : mismatches) os << "  MISMATCH: " << m << "\n";
    os << "  verdict: " << (pass ? "pass" : "fail") << "\n";
    return os.str();
}

}  // namespace factoriza

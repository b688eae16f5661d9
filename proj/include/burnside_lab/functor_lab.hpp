#pragma once

// Numerical checks of the presentation of the dual of B^x: the subspace L(G)
// of F2 B(G) spanned by the Indinf images of epsilon-bar, the dimension
// identity dim F2B(G) = dim L(G) + rank B^x(G), and identities satisfied by
// the epsilon elements under restriction and the faithful idempotent.

#include <string>
#include <vector>

#include "burnside_lab/bisets.hpp"
#include "burnside_lab/burnside.hpp"
#include "burnside_lab/errors.hpp"
#include "burnside_lab/units.hpp"

namespace burnside_lab {

struct KernelReport {
    std::string group;
    std::size_t dim_F2B = 0;
    std::size_t dim_L = 0;
    std::size_t rank_units = 0;
    /// Quotient labels of the sections whose epsilon images span L(G).
    std::vector<std::string> generators_used;
    bool exactness_ok = false;
    /// Method that supplied rank_units: oracle, or yoshida when the oracle guard trips.
    UnitMethod rank_source = UnitMethod::Oracle;
};

struct KernelResult {
    std::vector<BitVector> basis;  // reduced row echelon
    KernelReport report;
};

inline KernelResult kernel_L(const RingPtr& r, const std::string& name, const Guards& guards = {}) {
    KernelResult out;
    Gf2RowSpace span(r->rank());
    for (const auto& c : section_conditions(r, guards)) {
        out.report.generators_used.push_back(c.label.str());
        span.insert(c.row);
    }
    out.basis = span.rows();
    out.report.group = name;
    out.report.dim_F2B = r->rank();
    out.report.dim_L = span.rank();
    try {
        out.report.rank_units = units_oracle(*r, guards).rank;
        out.report.rank_source = UnitMethod::Oracle;
    } catch (const guard_error&) {
        out.report.rank_units = yoshida_rank(*r).rank;
        out.report.rank_source = UnitMethod::Yoshida;
    }
    out.report.exactness_ok = out.report.dim_F2B == out.report.dim_L + out.report.rank_units;
    return out;
}

struct IdentityCheck {
    std::string name;
    bool ok = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;

    bool all_ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

/// Presets of the class R of order at most `max_order`.
inline std::vector<std::string> class_r_presets(std::size_t max_order = 32) {
    std::vector<std::string> out;
    for (std::size_t p = 3; p <= max_order; p += 2)
        if (is_prime(p)) out.push_back("C" + std::to_string(p));
    if (max_order >= 4) {
        out.push_back("C4");
        out.push_back("C2^2");
    }
    for (std::size_t n = 8; n <= max_order; n *= 2) out.push_back("D" + std::to_string(n));
    for (std::size_t n = 16; n <= max_order; n *= 2) out.push_back("SD" + std::to_string(n));
    return out;
}

/// Restriction of epsilon-bar of `r` to the subgroup with index `sub` is
/// epsilon-bar of that subgroup.
inline bool restriction_preserves_epsilon(const RingPtr& r, std::size_t sub, const Guards& guards = {}) {
    SubRing h = subgroup_ring(*r, sub, guards);
    return apply(matrix(restriction(r, h)), epsilon_bar(*r)) == epsilon_bar(*h.ring);
}

/// Class representatives (subgroup indices) of the given order whose isomorphism label satisfies `pred`.
template <class Pred>
std::vector<std::size_t> subgroup_classes_where(const Ring& r, std::size_t order, Pred pred) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < r.rank(); ++c) {
        const Subgroup& s = r.table.rep(c);
        if (s.order != order) continue;
        if (pred(classify(subgroup_as_group(r.group, s.members).group))) out.push_back(r.table.class_reps[c]);
    }
    return out;
}

inline IdentityReport epsilon_identities(const Guards& guards = {}) {
    using K = IsoClassLabel::Kind;
    IdentityReport rep;
    for (std::size_t n : {16u, 32u}) {
        auto r = make_ring(semidihedral_group(n), guards);
        auto subs = subgroup_classes_where(*r, n / 2, [](const IsoClassLabel& l) { return l.kind == K::Dihedral; });
        bool ok = subs.size() == 1 && restriction_preserves_epsilon(r, subs[0], guards);
        rep.checks.push_back({"Res SD" + std::to_string(n) + " -> D" + std::to_string(n / 2) + " epsilon-bar", ok});
    }
    {
        auto r = make_ring(dihedral_group(8), guards);
        auto subs = subgroup_classes_where(*r, 4, [](const IsoClassLabel& l) { return l.kind == K::Klein4; });
        for (std::size_t i = 0; i < subs.size(); ++i)
            rep.checks.push_back({"Res D8 -> Klein4 #" + std::to_string(i + 1) + " epsilon-bar",
                                  restriction_preserves_epsilon(r, subs[i], guards)});
        if (subs.size() != 2) rep.checks.push_back({"D8 has two classes of Klein subgroups", false});
    }
    for (const auto& name : class_r_presets()) {
        auto r = make_ring(build_preset(name, guards), guards);
        auto e = epsilon(*r);
        rep.checks.push_back({"f1 fixes epsilon of " + name, f1_apply(*r, e) == e});
    }
    return rep;
}

/// The element whose f_1-projection is epsilon: R/I - R/J for dihedral R,
/// R/I for semidihedral R, R/1 otherwise.
inline IntElem epsilon_seed(const Ring& r) {
    using K = IsoClassLabel::Kind;
    IntElem x{std::vector<std::int64_t>(r.rank(), 0)};
    switch (classify(r.group).kind) {
        case K::Dihedral: {
            auto d = reflection_data(r);
            x.coeffs[d.I] = 1;
            x.coeffs[d.J] = -1;
            break;
        }
        case K::Semidihedral: x.coeffs[reflection_data(r).I] = 1; break;
        default: x.coeffs[r.trivial_class()] = 1; break;
    }
    return x;
}

inline IdentityReport remark_invariant_forms(const Guards& guards = {}) {
    IdentityReport rep;
    for (const auto& name : class_r_presets()) {
        auto r = make_ring(build_preset(name, guards), guards);
        rep.checks.push_back({"f1 of seed is epsilon for " + name, f1_apply(*r, epsilon_seed(*r)) == epsilon(*r)});
    }
    return rep;
}

}  // namespace burnside_lab

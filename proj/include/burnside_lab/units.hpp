#pragma once

// The unit group of the Burnside ring, computed four ways: brute force over
// mark sign vectors, Yoshida's homomorphism criterion, the epsilon conditions
// over sections with quotient in the class R, and the inverse limit over
// sections with quotient in the class T. All methods describe the image of
// iota: u -> (G/H -> 1 iff the mark of u at H is -1) inside Hom(B(G), F2).

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "burnside_lab/bisets.hpp"
#include "burnside_lab/burnside.hpp"
#include "burnside_lab/errors.hpp"
#include "burnside_lab/f2.hpp"
#include "burnside_lab/lattice.hpp"

namespace burnside_lab {

enum class UnitMethod { Oracle, Yoshida, Sections, Limit };

inline const char* to_string(UnitMethod m) {
    switch (m) {
        case UnitMethod::Oracle: return "oracle";
        case UnitMethod::Yoshida: return "yoshida";
        case UnitMethod::Sections: return "sections";
        case UnitMethod::Limit: return "limit";
    }
    return "?";
}

struct UnitGroupDescription {
    UnitMethod method = UnitMethod::Oracle;
    std::size_t rank = 0;
    /// Basis of iota(B^x(G)) inside the forms on B(G). Empty for the limit
    /// method, whose unknowns live on the sections rather than on G.
    std::vector<LinearForm> form_basis;
    /// Oracle only: iota of every unit, in discovery order.
    std::vector<LinearForm> unit_forms;
    /// Yoshida and section methods: the linear conditions cutting out the image.
    std::vector<BitVector> conditions;
    /// Oracle: search nodes visited. Limit: number of unknowns.
    std::size_t work = 0;
};

// ---------------------------------------------------------------------------
// iota and back

inline LinearForm iota(const Ring& r, const IntElem& u) {
    auto m = marks(r, u);
    LinearForm phi{BitVector(r.rank())};
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == -1)
            phi.values.set(k);
        else if (m[k] != 1)
            throw precondition_error("iota: element is not a unit");
    }
    return phi;
}

inline std::vector<int> signs_of(const LinearForm& phi) {
    std::vector<int> s(phi.values.size(), 1);
    phi.values.for_each_set([&](std::size_t k) { s[k] = -1; });
    return s;
}

/// The unit whose marks are (-1)^phi, if there is one.
inline std::optional<IntElem> unit_from_form(const Ring& r, const LinearForm& phi) {
    auto s = signs_of(phi);
    return ghost_to_burnside(r, s);
}

inline IntElem minus_one(const Ring& r) {
    IntElem x{std::vector<std::int64_t>(r.rank(), 0)};
    x.coeffs[r.whole_class()] = -1;
    return x;
}

inline std::vector<LinearForm> basis_forms(const std::vector<BitVector>& rows) {
    std::vector<LinearForm> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(LinearForm{r});
    return out;
}

// ---------------------------------------------------------------------------
// Oracle

/// Enumerates every sign vector with an integral preimage under the marks.
/// Coefficients are fixed from the top class down, so a branch dies as soon
/// as one coefficient fails to be integral. Throws guard_error once more than
/// 2^oracle_bits search nodes have been visited.
inline UnitGroupDescription units_oracle(const Ring& r, const Guards& guards = {}) {
    const std::size_t n = r.rank();
    const std::size_t node_cap = std::size_t{1} << guards.oracle_bits;
    // above[k]: classes h > k with a nonzero mark at k
    std::vector<std::vector<std::size_t>> above(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t h = k + 1; h < n; ++h)
            if (r.marks(h, k)) above[k].push_back(h);

    UnitGroupDescription d;
    d.method = UnitMethod::Oracle;
    std::vector<std::int64_t> x(n, 0);
    BitVector sign(n);
    Gf2RowSpace span(n);
    std::size_t nodes = 0;

    auto dfs = [&](auto&& self, std::size_t depth) -> void {
        if (depth == 0) {
            d.unit_forms.push_back(LinearForm{sign});
            span.insert(sign);
            return;
        }
        const std::size_t k = depth - 1;
        std::int64_t acc = 0;
        for (auto h : above[k]) acc += x[h] * r.marks(h, k);
        const std::int64_t diag = r.marks(k, k);
        for (int s : {1, -1}) {
            if (++nodes > node_cap)
                throw guard_error("oracle search exceeded 2^" + std::to_string(guards.oracle_bits) + " nodes");
            std::int64_t num = s - acc;
            if (num % diag != 0) continue;
            x[k] = num / diag;
            sign.assign(k, s < 0);
            self(self, depth - 1);
        }
        x[k] = 0;
        sign.reset(k);
    };
    dfs(dfs, n);

    d.rank = span.rank();
    if (d.unit_forms.size() != (std::size_t{1} << d.rank))
        throw precondition_error("oracle: unit set is not an elementary abelian 2-group");
    d.form_basis = basis_forms(span.rows());
    d.work = nodes;
    return d;
}

// ---------------------------------------------------------------------------
// Yoshida's criterion

/// For each class rep H, x -> phi(G/H<x>) + phi(G/H) must be a homomorphism
/// N_G(H)/H -> F2, where H<x> is generated by H and any lift of x.
inline std::vector<BitVector> yoshida_conditions(const Ring& r) {
    const Group& g = r.group;
    const SubgroupTable& t = r.table;
    const std::size_t n = r.rank();
    std::unordered_set<BitVector, BitVectorHash> seen;
    std::vector<BitVector> rows;

    for (std::size_t c = 0; c < n; ++c) {
        const Subgroup& H = t.rep(c);
        const Subgroup& N = t.normalizers[c];
        std::vector<std::int32_t> coset_of(g.order, kNoImage);
        std::vector<Elem> reps;
        N.members.for_each_set([&](std::size_t e) {
            if (coset_of[e] != kNoImage) return;
            auto id = static_cast<std::int32_t>(reps.size());
            reps.push_back(static_cast<Elem>(e));
            H.members.for_each_set([&](std::size_t h) { coset_of[g.mul(static_cast<Elem>(e), static_cast<Elem>(h))] = id; });
        });
        std::vector<std::size_t> gen_cls(reps.size());
        for (std::size_t i = 0; i < reps.size(); ++i) {
            auto gens = H.gens;
            gens.push_back(reps[i]);
            gen_cls[i] = t.class_of_set(closure(g, gens));
            if (!H.gens.empty()) {
                auto alt = H.gens;
                alt.push_back(g.mul(reps[i], H.gens.front()));
                if (t.class_of_set(closure(g, alt)) != gen_cls[i])
                    throw precondition_error("yoshida: H<x> depends on the lift of x");
            }
        }
        for (std::size_t i = 0; i < reps.size(); ++i)
            for (std::size_t j = i; j < reps.size(); ++j) {
                auto k = static_cast<std::size_t>(coset_of[g.mul(reps[i], reps[j])]);
                BitVector row(n);
                row.flip(gen_cls[k]);
                row.flip(gen_cls[i]);
                row.flip(gen_cls[j]);
                row.flip(c);
                if (row.none() || !seen.insert(row).second) continue;
                rows.push_back(std::move(row));
            }
    }
    return rows;
}

inline UnitGroupDescription null_space_description(UnitMethod m, std::size_t n, std::vector<BitVector> rows) {
    Gf2RowSpace space(n);
    for (const auto& row : rows) space.insert(row);
    UnitGroupDescription d;
    d.method = m;
    d.rank = n - space.rank();
    d.form_basis = basis_forms(space.null_space());
    d.conditions = std::move(rows);
    return d;
}

inline UnitGroupDescription yoshida_rank(const Ring& r) {
    return null_space_description(UnitMethod::Yoshida, r.rank(), yoshida_conditions(r));
}

// ---------------------------------------------------------------------------
// Epsilon conditions over sections in the class R

struct SectionCondition {
    std::size_t T = 0;
    std::size_t S = 0;
    IsoClassLabel label;
    /// Indinf_{T/S}^G of epsilon-bar of T/S: phi must vanish on it.
    BitVector row;
};

inline std::vector<SectionCondition> section_conditions(const RingPtr& r, const Guards& guards = {}) {
    SectionList sections = enumerate_sections(r->group, r->table, SectionFilter::class_r());
    std::vector<SectionCondition> out;
    out.reserve(sections.classes.size());
    for (const Section& s : sections.classes) {
        SubRing q = section_ring(s, guards);
        F2BurnsideElem img = apply(matrix(indinf(r, q)), epsilon_bar(*q.ring));
        out.push_back(SectionCondition{s.T, s.S, s.label, std::move(img.coeffs)});
    }
    return out;
}

inline UnitGroupDescription theorem_image_rank(const RingPtr& r, const Guards& guards = {}) {
    std::vector<BitVector> rows;
    for (auto& c : section_conditions(r, guards)) rows.push_back(std::move(c.row));
    return null_space_description(UnitMethod::Sections, r->rank(), std::move(rows));
}

// ---------------------------------------------------------------------------
// Inverse limit over sections in the class T

/// Unknowns: for every class of sections (T, S) with T/S in the class T, the
/// coordinates of a unit of B(T/S) in an oracle basis of its iota-image.
/// Constraints: compatibility with Defres to every nested section, and
/// invariance under N_G(T, S). Returns the dimension of the solution space.
inline UnitGroupDescription sectional_limit_rank(const RingPtr& r, const Guards& guards = {}) {
    const Group& g = r->group;
    const SubgroupTable& t = r->table;
    SectionList sections = enumerate_sections(g, t, SectionFilter::class_t());
    const std::size_t nsec = sections.classes.size();

    std::vector<RingPtr> rings(nsec);
    std::vector<std::vector<LinearForm>> basis(nsec);
    std::vector<std::size_t> offset(nsec + 1, 0);
    for (std::size_t i = 0; i < nsec; ++i) {
        rings[i] = make_ring(sections.classes[i].quotient, guards);
        basis[i] = units_oracle(*rings[i], guards).form_basis;
        offset[i + 1] = offset[i] + basis[i].size();
    }
    const std::size_t nvars = offset[nsec];

    // Adds to `row` the linear functional l_i -> l_i(class of V/S) on section rep i.
    auto add_eval = [&](BitVector& row, std::size_t i, const BitVector& v) {
        const Section& s = sections.classes[i];
        BitVector img(rings[i]->group.order);
        v.for_each_set([&](std::size_t e) { img.set(static_cast<std::size_t>(s.projection[e])); });
        std::size_t cls = rings[i]->table.class_of_set(img);
        for (std::size_t b = 0; b < basis[i].size(); ++b)
            if (basis[i][b].values.test(cls)) row.flip(offset[i] + b);
    };

    std::unordered_set<BitVector, BitVectorHash> seen;
    std::vector<BitVector> rows;
    auto push = [&](BitVector row) {
        if (row.none() || !seen.insert(row).second) return;
        rows.push_back(std::move(row));
    };

    // subgroups V with S <= V <= T, by index
    auto between = [&](std::size_t S, std::size_t T) {
        std::vector<std::size_t> out;
        const BitVector& lo = t.subgroups[S].members;
        const BitVector& hi = t.subgroups[T].members;
        for (std::size_t v = S; v <= T; ++v)
            if (lo.is_subset_of(t.subgroups[v].members) && t.subgroups[v].members.is_subset_of(hi)) out.push_back(v);
        return out;
    };

    for (std::size_t i = 0; i < nsec; ++i) {
        const Section& s = sections.classes[i];
        const BitVector& Tm = t.subgroups[s.T].members;
        const BitVector& Sm = t.subgroups[s.S].members;

        for (const SectionMember& m : sections.all) {
            const BitVector& T2 = t.subgroups[m.T].members;
            const BitVector& S2 = t.subgroups[m.S].members;
            if (!Sm.is_subset_of(S2) || !T2.is_subset_of(Tm)) continue;
            for (std::size_t v : between(m.S, m.T)) {
                BitVector row(nvars);
                const BitVector& V = t.subgroups[v].members;
                add_eval(row, i, V);
                add_eval(row, m.rep, conjugate_set(g, m.conjugator, V));
                push(std::move(row));
            }
        }

        auto inner = between(s.S, s.T);
        for (Elem x = 0; x < g.order; ++x) {
            if (Tm.test(x)) continue;
            if (conjugate_set(g, x, Tm) != Tm || conjugate_set(g, x, Sm) != Sm) continue;
            for (std::size_t v : inner) {
                BitVector row(nvars);
                add_eval(row, i, t.subgroups[v].members);
                add_eval(row, i, conjugate_set(g, x, t.subgroups[v].members));
                push(std::move(row));
            }
        }
    }

    UnitGroupDescription d;
    d.method = UnitMethod::Limit;
    d.rank = nvars - gf2_rank(rows, nvars);
    d.conditions = std::move(rows);
    d.work = nvars;
    return d;
}

inline UnitGroupDescription compute_units(UnitMethod m, const RingPtr& r, const Guards& guards = {}) {
    switch (m) {
        case UnitMethod::Oracle: return units_oracle(*r, guards);
        case UnitMethod::Yoshida: return yoshida_rank(*r);
        case UnitMethod::Sections: return theorem_image_rank(r, guards);
        case UnitMethod::Limit: return sectional_limit_rank(r, guards);
    }
    throw precondition_error("unknown unit method");
}

// ---------------------------------------------------------------------------
// Faithful units

/// Transpose action of f_1 on forms; f_1 is its own opposite.
inline LinearForm f1_dual(const Ring& r, const std::vector<std::int64_t>& f1, const LinearForm& phi) {
    const std::size_t n = r.rank();
    LinearForm out{BitVector(n)};
    for (std::size_t col = 0; col < n; ++col) {
        bool bit = false;
        for (std::size_t row = 0; row < n; ++row)
            if (f1[row * n + col] % 2 && phi.values.test(row)) bit = !bit;
        out.values.assign(col, bit);
    }
    return out;
}

inline LinearForm f1_dual(const Ring& r, const LinearForm& phi) { return f1_dual(r, f1_matrix(r), phi); }

/// Units u with f_1 u = u, i.e. killed by every proper deflation.
inline std::vector<IntElem> faithful_units(const Ring& r, const Guards& guards = {}) {
    auto f1 = f1_matrix(r);
    std::vector<IntElem> out;
    for (const auto& phi : units_oracle(r, guards).unit_forms)
        if (f1_dual(r, f1, phi) == phi) out.push_back(*unit_from_form(r, phi));
    return out;
}

}  // namespace burnside_lab

#pragma once

// Subgroup enumeration, conjugacy classes, Möbius functions and sections.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "burnside_lab/errors.hpp"
#include "burnside_lab/f2.hpp"
#include "burnside_lab/groups.hpp"

namespace burnside_lab {

struct Subgroup {
    BitVector members;
    std::size_t order = 0;
    std::vector<Elem> gens;

    bool contains(Elem x) const { return members.test(x); }
    bool is_subgroup_of(const Subgroup& o) const {
        return order <= o.order && o.order % order == 0 && members.is_subset_of(o.members);
    }
};

inline Subgroup make_subgroup(const Group& g, BitVector members) {
    Subgroup s;
    s.order = members.count();
    s.gens = generating_set(g, members);
    s.members = std::move(members);
    return s;
}

inline Subgroup generate_subgroup(const Group& g, std::vector<Elem> gens) {
    Subgroup s;
    s.members = closure(g, gens);
    s.order = s.members.count();
    std::erase(gens, g.id);
    if (gens.empty()) gens.push_back(g.id);
    s.gens = std::move(gens);
    return s;
}

struct SubgroupTable {
    /// Sorted by (order, sorted member list).
    std::vector<Subgroup> subgroups;
    std::vector<std::size_t> class_of;
    /// Smallest subgroup index of each class; hence sorted by order.
    std::vector<std::size_t> class_reps;
    std::vector<std::size_t> class_size;
    /// Per class, N_G of the representative.
    std::vector<Subgroup> normalizers;
    /// Per class, row H holds every class K with H subconjugate to K.
    std::vector<BitVector> poset_leq;
    /// Per subgroup K, an element g with g K g^-1 equal to its class representative.
    std::vector<Elem> conjugators;
    /// gen_conj[i][k]: index of g_i K g_i^-1 for the i-th generator of the group.
    std::vector<std::vector<std::size_t>> gen_conj;
    /// Indices of the normal subgroups, increasing.
    std::vector<std::size_t> normal;

    std::unordered_map<BitVector, std::size_t, BitVectorHash> index;

    std::size_t size() const noexcept { return subgroups.size(); }
    std::size_t class_count() const noexcept { return class_reps.size(); }
    const Subgroup& rep(std::size_t cls) const { return subgroups[class_reps[cls]]; }

    std::size_t find(const BitVector& members) const {
        auto it = index.find(members);
        if (it == index.end()) throw precondition_error("set is not a subgroup of this group");
        return it->second;
    }
    std::size_t class_of_set(const BitVector& members) const { return class_of[find(members)]; }
    bool subconjugate(std::size_t h_cls, std::size_t k_cls) const { return poset_leq[h_cls].test(k_cls); }
    bool is_normal(std::size_t sub) const { return class_size[class_of[sub]] == 1; }
};

/// All subgroups: cyclic subgroups first, then joins <H, x> layer by layer
/// until no new subgroup appears.
inline SubgroupTable all_subgroups(const Group& g, const Guards& guards = {}) {
    if (g.order > guards.max_elements) throw guard_error("group exceeds element guard");
    std::unordered_map<BitVector, std::size_t, BitVectorHash> seen;
    std::vector<Subgroup> found;
    auto add = [&](Subgroup s) -> bool {
        auto [it, fresh] = seen.emplace(s.members, found.size());
        if (!fresh) return false;
        found.push_back(std::move(s));
        if (found.size() > guards.max_subgroups)
            throw guard_error("subgroup count exceeds " + std::to_string(guards.max_subgroups));
        return true;
    };

    std::vector<Elem> cyclic_gens;
    for (Elem x = 0; x < g.order; ++x)
        if (add(generate_subgroup(g, {x}))) cyclic_gens.push_back(x);

    std::vector<std::size_t> layer(found.size());
    std::iota(layer.begin(), layer.end(), std::size_t{0});
    while (!layer.empty()) {
        std::vector<std::size_t> next;
        for (auto h : layer) {
            for (auto x : cyclic_gens) {
                if (found[h].members.test(x)) continue;
                std::vector<Elem> gens = found[h].gens;
                gens.push_back(x);
                if (add(generate_subgroup(g, gens))) next.push_back(found.size() - 1);
            }
        }
        layer = std::move(next);
    }

    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order != b.order) return a.order < b.order;
        return lex_less(a.members, b.members);
    });

    SubgroupTable t;
    t.subgroups = std::move(found);
    const std::size_t n = t.subgroups.size();
    for (std::size_t i = 0; i < n; ++i) t.index.emplace(t.subgroups[i].members, i);

    t.gen_conj.assign(g.generators.size(), std::vector<std::size_t>(n));
    for (std::size_t gi = 0; gi < g.generators.size(); ++gi)
        for (std::size_t k = 0; k < n; ++k)
            t.gen_conj[gi][k] = t.find(conjugate_set(g, g.generators[gi], t.subgroups[k].members));

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    t.class_of.assign(n, unset);
    std::vector<Elem> from_rep(n, g.id);  // from_rep[k] K = ^c rep
    for (std::size_t s = 0; s < n; ++s) {
        if (t.class_of[s] != unset) continue;
        std::size_t cls = t.class_reps.size();
        t.class_reps.push_back(s);
        std::vector<std::size_t> orbit{s};
        t.class_of[s] = cls;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            std::size_t k = orbit[head];
            for (std::size_t gi = 0; gi < g.generators.size(); ++gi) {
                std::size_t k2 = t.gen_conj[gi][k];
                if (t.class_of[k2] != unset) continue;
                t.class_of[k2] = cls;
                from_rep[k2] = g.mul(g.generators[gi], from_rep[k]);
                orbit.push_back(k2);
            }
        }
        t.class_size.push_back(orbit.size());
    }
    t.conjugators.resize(n);
    for (std::size_t k = 0; k < n; ++k) t.conjugators[k] = g.inv[from_rep[k]];

    for (std::size_t c = 0; c < t.class_count(); ++c) {
        const Subgroup& h = t.rep(c);
        BitVector norm(g.order);
        for (Elem x = 0; x < g.order; ++x) {
            bool ok = true;
            for (auto s : h.gens) ok = ok && h.members.test(g.conj(x, s));
            if (ok) norm.set(x);
        }
        t.normalizers.push_back(make_subgroup(g, std::move(norm)));
    }

    const std::size_t nc = t.class_count();
    t.poset_leq.assign(nc, BitVector(nc));
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t lc = t.class_of[l];
        for (std::size_t kc = 0; kc < nc; ++kc)
            if (t.subgroups[l].is_subgroup_of(t.rep(kc))) t.poset_leq[lc].set(kc);
    }

    for (std::size_t k = 0; k < n; ++k)
        if (t.is_normal(k)) t.normal.push_back(k);
    return t;
}

// ---------------------------------------------------------------------------
// Möbius functions

/// Möbius function of the normal-subgroup poset, mu(1, N), parallel to table.normal.
inline std::vector<std::int64_t> normal_moebius(const SubgroupTable& t) {
    std::vector<std::int64_t> mu(t.normal.size(), 0);
    for (std::size_t i = 0; i < t.normal.size(); ++i) {
        if (i == 0) {
            mu[i] = 1;  // trivial subgroup sorts first
            continue;
        }
        std::int64_t s = 0;
        for (std::size_t j = 0; j < i; ++j)
            if (t.subgroups[t.normal[j]].is_subgroup_of(t.subgroups[t.normal[i]])) s += mu[j];
        mu[i] = -s;
    }
    return mu;
}

struct MoebiusTable {
    std::size_t n = 0;
    /// Dense over subgroup pairs; zero unless a <= b.
    std::vector<std::int64_t> mu;
    std::vector<std::int64_t> mu_normal;

    std::int64_t operator()(std::size_t a, std::size_t b) const { return mu[a * n + b]; }
};

/// mu(A, A) = 1, mu(A, B) = -sum_{A <= C < B} mu(A, C) over literal inclusion.
inline MoebiusTable moebius(const SubgroupTable& t) {
    MoebiusTable m;
    m.n = t.size();
    m.mu.assign(m.n * m.n, 0);
    for (std::size_t a = 0; a < m.n; ++a) {
        std::vector<std::size_t> above;
        for (std::size_t b = a; b < m.n; ++b)
            if (t.subgroups[a].is_subgroup_of(t.subgroups[b])) above.push_back(b);
        m.mu[a * m.n + a] = 1;
        for (std::size_t i = 1; i < above.size(); ++i) {
            std::size_t b = above[i];
            std::int64_t s = 0;
            for (std::size_t j = 0; j < i; ++j) {
                std::size_t c = above[j];
                if (t.subgroups[c].order < t.subgroups[b].order && t.subgroups[c].is_subgroup_of(t.subgroups[b]))
                    s += m.mu[a * m.n + c];
            }
            m.mu[a * m.n + b] = -s;
        }
    }
    m.mu_normal = normal_moebius(t);
    return m;
}

// ---------------------------------------------------------------------------
// Sections

struct Section {
    std::size_t T = 0;
    std::size_t S = 0;
    Group quotient;
    std::vector<std::int32_t> projection;  // parent index -> quotient index, kNoImage off T
    IsoClassLabel label;
};

struct SectionMember {
    std::size_t T = 0;
    std::size_t S = 0;
    /// Index into SectionList::classes.
    std::size_t rep = 0;
    /// Element x with (^x T, ^x S) equal to the representative pair.
    Elem conjugator = 0;
};

struct SectionList {
    std::vector<Section> classes;
    /// Every section in a retained class, in (T, S) index order.
    std::vector<SectionMember> all;
};

struct SectionFilter {
    std::function<bool(std::size_t)> order_ok;
    std::function<bool(const IsoClassLabel&)> label_ok;

    static SectionFilter any() { return {}; }
    static SectionFilter class_r() {
        return {[](std::size_t n) { return n == 4 || (n % 2 && is_prime(n)) || (n >= 8 && detail::is_power_of_two(n)); },
                in_class_r};
    }
    static SectionFilter class_t() {
        return {[](std::size_t n) { return (n % 2 && is_prime(n)) || detail::is_power_of_two(n); }, in_class_t};
    }
};

/// One Section per G-conjugacy class of pairs (T, S), S normal in T, whose
/// quotient passes the filter. Representatives are the first pair of each
/// orbit in (T, S) index order.
inline SectionList enumerate_sections(const Group& g, const SubgroupTable& t, const SectionFilter& filter = {}) {
    const std::size_t n = t.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::unordered_map<std::uint64_t, std::size_t> pair_index;
    for (std::size_t T = 0; T < n; ++T) {
        const Subgroup& top = t.subgroups[T];
        for (std::size_t S = 0; S <= T; ++S) {
            const Subgroup& bot = t.subgroups[S];
            if (!bot.is_subgroup_of(top)) continue;
            if (filter.order_ok && !filter.order_ok(top.order / bot.order)) continue;
            if (!normalizes(g, top.gens, bot.members, bot.gens)) continue;
            pair_index.emplace(static_cast<std::uint64_t>(T) * n + S, pairs.size());
            pairs.emplace_back(T, S);
        }
    }

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> orbit_of(pairs.size(), unset);
    std::vector<Elem> from_rep(pairs.size(), g.id);
    std::vector<std::vector<std::size_t>> orbits;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (orbit_of[p] != unset) continue;
        std::size_t o = orbits.size();
        orbits.push_back({p});
        orbit_of[p] = o;
        auto& orbit = orbits.back();
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            auto [T, S] = pairs[orbit[head]];
            for (std::size_t gi = 0; gi < g.generators.size(); ++gi) {
                std::uint64_t key = static_cast<std::uint64_t>(t.gen_conj[gi][T]) * n + t.gen_conj[gi][S];
                std::size_t q = pair_index.at(key);
                if (orbit_of[q] != unset) continue;
                orbit_of[q] = o;
                from_rep[q] = g.mul(g.generators[gi], from_rep[orbit[head]]);
                orbit.push_back(q);
            }
        }
    }

    SectionList out;
    std::vector<std::size_t> kept(orbits.size(), unset);
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        auto [T, S] = pairs[orbits[o].front()];
        Quotient q = quotient(g, t.subgroups[T].members, t.subgroups[S].members);
        IsoClassLabel label = classify(q.group);
        if (filter.label_ok && !filter.label_ok(label)) continue;
        kept[o] = out.classes.size();
        out.classes.push_back(Section{T, S, std::move(q.group), std::move(q.projection), label});
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        std::size_t o = orbit_of[p];
        if (kept[o] == unset) continue;
        out.all.push_back(SectionMember{pairs[p].first, pairs[p].second, kept[o], g.inv[from_rep[p]]});
    }
    return out;
}

}  // namespace burnside_lab

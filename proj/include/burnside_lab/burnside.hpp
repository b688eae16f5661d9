#pragma once

// Burnside ring arithmetic over the basis of transitive G-sets G/H, H running
// through conjugacy class representatives sorted by order.

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "burnside_lab/errors.hpp"
#include "burnside_lab/f2.hpp"
#include "burnside_lab/groups.hpp"
#include "burnside_lab/lattice.hpp"

namespace burnside_lab {

using Rational = boost::rational<std::int64_t>;

/// m(H, K) = |(G/H)^K|, rows H and columns K over class representatives.
struct MarkMatrix {
    std::size_t n = 0;
    std::vector<std::int64_t> m;

    std::int64_t operator()(std::size_t h, std::size_t k) const { return m[h * n + k]; }
};

/// Counts cosets xH with x^-1 K x <= H, by scanning coset representatives.
inline MarkMatrix mark_matrix(const Group& g, const SubgroupTable& t) {
    MarkMatrix mm;
    mm.n = t.class_count();
    mm.m.assign(mm.n * mm.n, 0);
    for (std::size_t h = 0; h < mm.n; ++h) {
        const Subgroup& H = t.rep(h);
        std::vector<Elem> coset_reps;
        BitVector covered(g.order);
        for (Elem x = 0; x < g.order; ++x) {
            if (covered.test(x)) continue;
            coset_reps.push_back(x);
            H.members.for_each_set([&](std::size_t y) { covered.set(g.mul(x, static_cast<Elem>(y))); });
        }
        for (std::size_t k = 0; k <= h; ++k) {
            const Subgroup& K = t.rep(k);
            if (H.order % K.order) continue;
            std::int64_t count = 0;
            for (auto x : coset_reps) {
                bool fixed = true;
                for (auto s : K.gens) fixed = fixed && H.members.test(g.conj(g.inv[x], s));
                if (fixed) ++count;
            }
            mm.m[h * mm.n + k] = count;
        }
    }
    return mm;
}

/// A group bundled with its subgroup table and table of marks.
struct Ring {
    Group group;
    SubgroupTable table;
    MarkMatrix marks;

    std::size_t rank() const noexcept { return table.class_count(); }
    std::size_t trivial_class() const noexcept { return 0; }
    std::size_t whole_class() const noexcept { return rank() - 1; }
};
using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(Group g, const Guards& guards = {}) {
    auto r = std::make_shared<Ring>();
    r->table = all_subgroups(g, guards);
    r->marks = mark_matrix(g, r->table);
    r->group = std::move(g);
    return r;
}

template <class T>
struct BurnsideElem {
    std::vector<T> coeffs;

    friend bool operator==(const BurnsideElem&, const BurnsideElem&) = default;
};
using IntElem = BurnsideElem<std::int64_t>;
using RatElem = BurnsideElem<Rational>;

struct F2BurnsideElem {
    BitVector coeffs;

    friend bool operator==(const F2BurnsideElem&, const F2BurnsideElem&) = default;
};

/// phi in Hom(B(G), F2), stored by its values phi(G/H) on basis classes.
struct LinearForm {
    BitVector values;

    friend bool operator==(const LinearForm&, const LinearForm&) = default;

    /// phi(x) for x in F2 B(G).
    bool operator()(const F2BurnsideElem& x) const { return values.dot(x.coeffs); }
};

template <class T>
BurnsideElem<T> basis_elem(const Ring& r, std::size_t cls, T coeff = T(1)) {
    BurnsideElem<T> x{std::vector<T>(r.rank(), T(0))};
    x.coeffs[cls] = coeff;
    return x;
}

template <class T>
BurnsideElem<T> one(const Ring& r) {
    return basis_elem<T>(r, r.whole_class());
}

inline RatElem to_rational(const IntElem& x) {
    RatElem y;
    for (auto c : x.coeffs) y.coeffs.emplace_back(c);
    return y;
}

inline F2BurnsideElem mod2(const IntElem& x) {
    F2BurnsideElem y{BitVector(x.coeffs.size())};
    for (std::size_t i = 0; i < x.coeffs.size(); ++i)
        if (x.coeffs[i] % 2) y.coeffs.set(i);
    return y;
}

template <class T>
BurnsideElem<T> operator+(BurnsideElem<T> a, const BurnsideElem<T>& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
    return a;
}

template <class T>
BurnsideElem<T> operator-(BurnsideElem<T> a, const BurnsideElem<T>& b) {
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
    return a;
}

template <class T>
BurnsideElem<T> scale(BurnsideElem<T> a, const T& s) {
    for (auto& c : a.coeffs) c *= s;
    return a;
}

template <class T>
std::vector<T> marks(const Ring& r, const BurnsideElem<T>& x) {
    const std::size_t n = r.rank();
    std::vector<T> out(n, T(0));
    for (std::size_t h = 0; h < n; ++h) {
        if (x.coeffs[h] == T(0)) continue;
        for (std::size_t k = 0; k <= h; ++k) out[k] += x.coeffs[h] * T(r.marks(h, k));
    }
    return out;
}

/// Solves marks(x) = ghost by back-substitution from the top class down.
/// Integer instantiation throws if the solution is not integral.
template <class T>
BurnsideElem<T> from_marks(const Ring& r, std::span<const T> ghost) {
    const std::size_t n = r.rank();
    BurnsideElem<T> x{std::vector<T>(n, T(0))};
    for (std::size_t k = n; k-- > 0;) {
        T acc = ghost[k];
        for (std::size_t h = k + 1; h < n; ++h) acc -= x.coeffs[h] * T(r.marks(h, k));
        T d(r.marks(k, k));
        if constexpr (std::is_integral_v<T>) {
            if (acc % d != 0) throw precondition_error("ghost vector has no integral preimage");
        }
        x.coeffs[k] = acc / d;
    }
    return x;
}

template <class T>
BurnsideElem<T> mul(const Ring& r, const BurnsideElem<T>& x, const BurnsideElem<T>& y) {
    auto mx = marks(r, x);
    auto my = marks(r, y);
    for (std::size_t i = 0; i < mx.size(); ++i) mx[i] *= my[i];
    return from_marks<T>(r, mx);
}

/// e_H = 1/|N_G(H)| sum_{L <= H} |L| mu(L, H) G/L.
inline RatElem idempotent(const Ring& r, const MoebiusTable& mu, std::size_t cls) {
    const SubgroupTable& t = r.table;
    const std::size_t h = t.class_reps[cls];
    RatElem e{std::vector<Rational>(r.rank(), Rational(0))};
    for (std::size_t l = 0; l <= h; ++l) {
        std::int64_t m = mu(l, h);
        if (m == 0) continue;
        e.coeffs[t.class_of[l]] += Rational(static_cast<std::int64_t>(t.subgroups[l].order) * m);
    }
    Rational norm(static_cast<std::int64_t>(t.normalizers[cls].order));
    for (auto& c : e.coeffs) c /= norm;
    return e;
}

/// The unique integral x with marks(x) = signs, if any.
inline std::optional<IntElem> ghost_to_burnside(const Ring& r, std::span<const int> signs) {
    if (signs.size() != r.rank()) throw precondition_error("sign vector length mismatch");
    std::vector<std::int64_t> ghost(signs.begin(), signs.end());
    try {
        return from_marks<std::int64_t>(r, ghost);
    } catch (const precondition_error&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Distinguished elements of groups in the class R

/// Non-central subgroups of order 2 and the center, for dihedral and
/// semidihedral groups. I is the class of the lowest-indexed non-central
/// involution; for dihedral groups J is the other class (absent otherwise).
struct ReflectionData {
    static constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::size_t I = none, J = none, Z = none, IZ = none, JZ = none;
};

inline ReflectionData reflection_data(const Ring& r) {
    const Group& g = r.group;
    const SubgroupTable& t = r.table;
    BitVector z = center(g);
    ReflectionData d;
    d.Z = t.class_of_set(z);
    std::vector<std::size_t> classes;
    for (Elem x = 0; x < g.order; ++x) {
        if (z.test(x) || g.element_order(x) != 2) continue;
        std::size_t c = t.class_of_set(closure(g, {x}));
        if (std::find(classes.begin(), classes.end(), c) == classes.end()) classes.push_back(c);
    }
    const auto& zgens = t.subgroups[t.find(z)].gens;
    auto with_center = [&](std::size_t c) {
        auto gens = t.rep(c).gens;
        gens.insert(gens.end(), zgens.begin(), zgens.end());
        return t.class_of_set(closure(g, gens));
    };
    if (!classes.empty()) {
        d.I = classes[0];
        d.IZ = with_center(d.I);
    }
    if (classes.size() > 1) {
        d.J = classes[1];
        d.JZ = with_center(d.J);
    }
    return d;
}

inline std::vector<std::size_t> classes_of_order(const Ring& r, std::size_t order) {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < r.rank(); ++c)
        if (r.table.rep(c).order == order) out.push_back(c);
    return out;
}

inline IntElem epsilon(const Ring& r) {
    using K = IsoClassLabel::Kind;
    IsoClassLabel label = classify(r.group);
    if (!in_class_r(label)) throw precondition_error("epsilon: group " + label.str() + " is not in the class R");
    IntElem e{std::vector<std::int64_t>(r.rank(), 0)};
    const std::size_t one_cls = r.trivial_class(), top = r.whole_class();
    switch (label.kind) {
        case K::OddPrimeCyclic:
            e.coeffs[one_cls] = 1;
            e.coeffs[top] = -1;
            break;
        case K::Cyclic: {  // C4
            e.coeffs[one_cls] = 1;
            e.coeffs[classes_of_order(r, 2).at(0)] = -1;
            break;
        }
        case K::Klein4:
            e.coeffs[one_cls] = 1;
            for (auto c : classes_of_order(r, 2)) e.coeffs[c] = -1;
            e.coeffs[top] = 2;
            break;
        case K::Dihedral: {
            auto d = reflection_data(r);
            e.coeffs[d.I] += 1;
            e.coeffs[d.IZ] -= 1;
            e.coeffs[d.J] -= 1;
            e.coeffs[d.JZ] += 1;
            break;
        }
        case K::Semidihedral: {
            auto d = reflection_data(r);
            e.coeffs[d.I] += 1;
            e.coeffs[d.IZ] -= 1;
            break;
        }
        default: break;
    }
    return e;
}

inline F2BurnsideElem epsilon_bar(const Ring& r) { return mod2(epsilon(r)); }

// ---------------------------------------------------------------------------
// Faithful idempotent

/// Matrix of f_1 = sum_N mu_normal(1, N) Inf_{G/N} Def_{G/N}, which sends G/K
/// to sum_N mu_normal(1, N) G/KN. Column K, row = class of KN.
inline std::vector<std::int64_t> f1_matrix(const Ring& r) {
    const SubgroupTable& t = r.table;
    const std::size_t n = r.rank();
    auto mu = normal_moebius(t);
    std::vector<std::int64_t> m(n * n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < t.normal.size(); ++i) {
            if (mu[i] == 0) continue;
            auto gens = t.rep(k).gens;
            for (auto s : t.subgroups[t.normal[i]].gens) gens.push_back(s);
            std::size_t kn = t.class_of_set(closure(r.group, gens));
            m[kn * n + k] += mu[i];
        }
    }
    return m;
}

template <class T>
BurnsideElem<T> f1_apply(const Ring& r, const BurnsideElem<T>& x) {
    const std::size_t n = r.rank();
    auto m = f1_matrix(r);
    BurnsideElem<T> y{std::vector<T>(n, T(0))};
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t col = 0; col < n; ++col)
            if (m[row * n + col]) y.coeffs[row] += T(m[row * n + col]) * x.coeffs[col];
    return y;
}

inline F2BurnsideElem f1_apply(const Ring& r, const F2BurnsideElem& x) {
    const std::size_t n = r.rank();
    auto m = f1_matrix(r);
    F2BurnsideElem y{BitVector(n)};
    for (std::size_t row = 0; row < n; ++row) {
        bool bit = false;
        for (std::size_t col = 0; col < n; ++col)
            if (m[row * n + col] % 2 && x.coeffs.test(col)) bit = !bit;
        y.coeffs.assign(row, bit);
    }
    return y;
}

// ---------------------------------------------------------------------------
// Naming

/// Deterministic class names: iso-type label of the representative plus an
/// ordinal among classes with that label, e.g. "C2#2".
inline std::vector<std::string> class_names(const Ring& r) {
    std::vector<std::string> names;
    std::map<std::string, int> seen;
    for (std::size_t c = 0; c < r.rank(); ++c) {
        auto sub = subgroup_as_group(r.group, r.table.rep(c).members);
        std::string label = classify(sub.group).str();
        names.push_back(label + "#" + std::to_string(++seen[label]));
    }
    return names;
}

}  // namespace burnside_lab

#pragma once

// Biset operations materialized as integer matrices on Burnside-ring bases,
// their action on F2-valued linear forms, and the factorization of transitive
// bisets (H x G)/X.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "burnside_lab/burnside.hpp"
#include "burnside_lab/errors.hpp"
#include "burnside_lab/groups.hpp"
#include "burnside_lab/lattice.hpp"

namespace burnside_lab {

enum class BisetKind { Ind, Res, Inf, Def, Iso, Indinf, Defres };

inline const char* to_string(BisetKind k) {
    switch (k) {
        case BisetKind::Ind: return "Ind";
        case BisetKind::Res: return "Res";
        case BisetKind::Inf: return "Inf";
        case BisetKind::Def: return "Def";
        case BisetKind::Iso: return "Iso";
        case BisetKind::Indinf: return "Indinf";
        case BisetKind::Defres: return "Defres";
    }
    return "?";
}

/// Ind, Inf and Indinf go from a subquotient up to the ambient group; Res,
/// Def and Defres go down. All six are determined by a partial surjective
/// homomorphism from the ambient group onto the subquotient, defined on the
/// numerator T with kernel S: Ind/Res use S = 1, Inf/Def use T = G.
inline bool goes_up(BisetKind k) { return k == BisetKind::Ind || k == BisetKind::Inf || k == BisetKind::Indinf; }
inline bool goes_down(BisetKind k) { return k == BisetKind::Res || k == BisetKind::Def || k == BisetKind::Defres; }

struct Biset {
    BisetKind kind = BisetKind::Iso;
    RingPtr source;
    RingPtr target;
    /// Section kinds: ambient element -> subquotient element (kNoImage off T).
    /// Iso: source element -> target element.
    std::vector<std::int32_t> map;
};

/// Rows indexed by target classes, columns by source classes.
struct BisetMatrix {
    RingPtr source;
    RingPtr target;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int64_t> m;

    std::int64_t operator()(std::size_t r, std::size_t c) const { return m[r * cols + c]; }
    std::int64_t& at(std::size_t r, std::size_t c) { return m[r * cols + c]; }

    friend bool operator==(const BisetMatrix& a, const BisetMatrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.m == b.m;
    }
};

inline BisetMatrix zero_matrix(RingPtr source, RingPtr target) {
    BisetMatrix b;
    b.rows = target->rank();
    b.cols = source->rank();
    b.m.assign(b.rows * b.cols, 0);
    b.source = std::move(source);
    b.target = std::move(target);
    return b;
}

inline BisetMatrix identity_matrix(const RingPtr& r) {
    BisetMatrix b = zero_matrix(r, r);
    for (std::size_t i = 0; i < b.rows; ++i) b.at(i, i) = 1;
    return b;
}

/// Composition: `after` applied after `before`.
inline BisetMatrix operator*(const BisetMatrix& after, const BisetMatrix& before) {
    if (after.cols != before.rows) throw precondition_error("biset composition: dimension mismatch");
    BisetMatrix c = zero_matrix(before.source, after.target);
    for (std::size_t i = 0; i < c.rows; ++i)
        for (std::size_t k = 0; k < after.cols; ++k) {
            std::int64_t a = after(i, k);
            if (!a) continue;
            for (std::size_t j = 0; j < c.cols; ++j) c.at(i, j) += a * before(k, j);
        }
    return c;
}

inline IntElem apply(const BisetMatrix& b, const IntElem& x) {
    if (x.coeffs.size() != b.cols) throw precondition_error("biset action: dimension mismatch");
    IntElem y{std::vector<std::int64_t>(b.rows, 0)};
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) y.coeffs[i] += b(i, j) * x.coeffs[j];
    return y;
}

inline F2BurnsideElem apply(const BisetMatrix& b, const F2BurnsideElem& x) {
    if (x.coeffs.size() != b.cols) throw precondition_error("biset action: dimension mismatch");
    F2BurnsideElem y{BitVector(b.rows)};
    for (std::size_t i = 0; i < b.rows; ++i) {
        bool bit = false;
        for (std::size_t j = 0; j < b.cols; ++j)
            if ((b(i, j) & 1) && x.coeffs.test(j)) bit = !bit;
        y.coeffs.assign(i, bit);
    }
    return y;
}

// ---------------------------------------------------------------------------
// Subquotient rings

struct SubRing {
    RingPtr ring;
    /// Ambient element -> element of the subquotient, kNoImage off the numerator.
    std::vector<std::int32_t> map;
};

inline SubRing quotient_ring(const Group& ambient, const BitVector& top, const BitVector& bottom,
                             const Guards& guards = {}) {
    Quotient q = quotient(ambient, top, bottom);
    return SubRing{make_ring(std::move(q.group), guards), std::move(q.projection)};
}

inline SubRing subgroup_ring(const Ring& g, std::size_t subgroup, const Guards& guards = {}) {
    return quotient_ring(g.group, g.table.subgroups[subgroup].members, g.table.subgroups[0].members, guards);
}

inline SubRing normal_quotient_ring(const Ring& g, std::size_t normal, const Guards& guards = {}) {
    return quotient_ring(g.group, g.group.all_elements(), g.table.subgroups[normal].members, guards);
}

inline SubRing section_ring(const Section& s, const Guards& guards = {}) {
    return SubRing{make_ring(s.quotient, guards), s.projection};
}

inline Biset section_biset(BisetKind kind, const RingPtr& ambient, const SubRing& sub) {
    if (goes_up(kind)) return Biset{kind, sub.ring, ambient, sub.map};
    if (goes_down(kind)) return Biset{kind, ambient, sub.ring, sub.map};
    throw precondition_error("section_biset: Iso is not a section biset");
}

inline Biset induction(const RingPtr& g, const SubRing& h) { return section_biset(BisetKind::Ind, g, h); }
inline Biset restriction(const RingPtr& g, const SubRing& h) { return section_biset(BisetKind::Res, g, h); }
inline Biset inflation(const RingPtr& g, const SubRing& q) { return section_biset(BisetKind::Inf, g, q); }
inline Biset deflation(const RingPtr& g, const SubRing& q) { return section_biset(BisetKind::Def, g, q); }
inline Biset indinf(const RingPtr& g, const SubRing& s) { return section_biset(BisetKind::Indinf, g, s); }
inline Biset defres(const RingPtr& g, const SubRing& s) { return section_biset(BisetKind::Defres, g, s); }

inline Biset iso(const RingPtr& from, const RingPtr& to, std::vector<std::int32_t> map) {
    if (map.size() != from->group.order || from->group.order != to->group.order)
        throw precondition_error("iso: orders differ");
    return Biset{BisetKind::Iso, from, to, std::move(map)};
}

inline Biset opposite(const Biset& b) {
    switch (b.kind) {
        case BisetKind::Ind: return Biset{BisetKind::Res, b.target, b.source, b.map};
        case BisetKind::Res: return Biset{BisetKind::Ind, b.target, b.source, b.map};
        case BisetKind::Inf: return Biset{BisetKind::Def, b.target, b.source, b.map};
        case BisetKind::Def: return Biset{BisetKind::Inf, b.target, b.source, b.map};
        case BisetKind::Indinf: return Biset{BisetKind::Defres, b.target, b.source, b.map};
        case BisetKind::Defres: return Biset{BisetKind::Indinf, b.target, b.source, b.map};
        case BisetKind::Iso: {
            std::vector<std::int32_t> inv(b.map.size());
            for (std::size_t i = 0; i < b.map.size(); ++i) inv[b.map[i]] = static_cast<std::int32_t>(i);
            return Biset{BisetKind::Iso, b.target, b.source, std::move(inv)};
        }
    }
    throw precondition_error("opposite: unknown kind");
}

namespace detail {

inline BitVector image(const std::vector<std::int32_t>& map, const BitVector& set, std::size_t target_order) {
    BitVector out(target_order);
    set.for_each_set([&](std::size_t x) {
        if (map[x] == kNoImage) throw precondition_error("image: element outside the domain");
        out.set(static_cast<std::size_t>(map[x]));
    });
    return out;
}

inline BitVector preimage(const std::vector<std::int32_t>& map, const BitVector& set) {
    BitVector out(map.size());
    for (std::size_t x = 0; x < map.size(); ++x)
        if (map[x] != kNoImage && set.test(static_cast<std::size_t>(map[x]))) out.set(x);
    return out;
}

// (T/S)/(V) -> G/U with U the preimage of V.
inline BisetMatrix up_matrix(const Biset& b) {
    BisetMatrix mat = zero_matrix(b.source, b.target);
    const Ring& g = *b.target;
    const Ring& q = *b.source;
    for (std::size_t c = 0; c < q.rank(); ++c)
        mat.at(g.table.class_of_set(preimage(b.map, q.table.rep(c).members)), c) = 1;
    return mat;
}

// G/K -> sum over double cosets T x K of (T/S)/pi(T cap ^x K).
inline BisetMatrix down_matrix(const Biset& b) {
    BisetMatrix mat = zero_matrix(b.source, b.target);
    const Ring& g = *b.source;
    const Ring& q = *b.target;
    const Group& G = g.group;
    BitVector domain(G.order);
    for (std::size_t x = 0; x < G.order; ++x)
        if (b.map[x] != kNoImage) domain.set(x);
    for (std::size_t k = 0; k < g.rank(); ++k) {
        const Subgroup& K = g.table.rep(k);
        BitVector seen(G.order);
        for (Elem x = 0; x < G.order; ++x) {
            if (seen.test(x)) continue;
            domain.for_each_set([&](std::size_t t) {
                Elem tx = G.mul(static_cast<Elem>(t), x);
                K.members.for_each_set([&](std::size_t s) { seen.set(G.mul(tx, static_cast<Elem>(s))); });
            });
            BitVector meet = conjugate_set(G, x, K.members) & domain;
            mat.at(q.table.class_of_set(image(b.map, meet, q.group.order)), k) += 1;
        }
    }
    return mat;
}

inline BisetMatrix iso_matrix(const Biset& b) {
    BisetMatrix mat = zero_matrix(b.source, b.target);
    for (std::size_t k = 0; k < b.source->rank(); ++k)
        mat.at(b.target->table.class_of_set(image(b.map, b.source->table.rep(k).members, b.target->group.order)), k) = 1;
    return mat;
}

}  // namespace detail

inline BisetMatrix matrix(const Biset& b) {
    if (goes_up(b.kind)) return detail::up_matrix(b);
    if (goes_down(b.kind)) return detail::down_matrix(b);
    return detail::iso_matrix(b);
}

/// Action of `op` on the F2-dual of B: the transpose of the element-level
/// matrix of the opposite biset. Defres on forms is thus the transpose of
/// Indinf on elements, Res of Ind, Def of Inf. `phi` lives on op.source.
inline LinearForm dual_action(const Biset& op, const LinearForm& phi) {
    if (phi.values.size() != op.source->rank()) throw precondition_error("dual_action: form lives on another group");
    BisetMatrix m = matrix(opposite(op));  // op.target -> op.source on elements
    LinearForm out{BitVector(m.cols)};
    for (std::size_t c = 0; c < m.cols; ++c) {
        bool bit = false;
        for (std::size_t r = 0; r < m.rows; ++r)
            if ((m(r, c) & 1) && phi.values.test(r)) bit = !bit;
        out.values.assign(c, bit);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Transitive bisets (H x G)/X

struct ProductGroup {
    RingPtr left;   // H
    RingPtr right;  // G
    Group group;    // (h, g) at h * |G| + g
    SubgroupTable table;

    Elem pair(Elem h, Elem g) const { return static_cast<Elem>(h * right->group.order + g); }
    Elem first(Elem x) const { return static_cast<Elem>(x / right->group.order); }
    Elem second(Elem x) const { return static_cast<Elem>(x % right->group.order); }
};

inline ProductGroup make_product(RingPtr h, RingPtr g, const Guards& guards = {}) {
    ProductGroup p;
    p.group = direct_product(h->group, g->group, guards);
    p.table = all_subgroups(p.group, guards);
    p.left = std::move(h);
    p.right = std::move(g);
    return p;
}

struct SubgroupOfProduct {
    std::size_t X = 0;
    BitVector p1, k1;  // in H
    BitVector p2, k2;  // in G
};

inline SubgroupOfProduct analyze(const ProductGroup& p, std::size_t x) {
    const Group& H = p.left->group;
    const Group& G = p.right->group;
    SubgroupOfProduct s{x, BitVector(H.order), BitVector(H.order), BitVector(G.order), BitVector(G.order)};
    p.table.subgroups[x].members.for_each_set([&](std::size_t e) {
        Elem h = p.first(static_cast<Elem>(e)), g = p.second(static_cast<Elem>(e));
        s.p1.set(h);
        s.p2.set(g);
        if (g == G.id) s.k1.set(h);
        if (h == H.id) s.k2.set(g);
    });
    return s;
}

/// Action of (H x G)/X on B(G) computed from the biset itself: (H x G)/X
/// composed with G/K is the H-set of right K-orbits on (H x G)/X.
inline BisetMatrix transitive_biset(const ProductGroup& p, std::size_t x) {
    const Group& P = p.group;
    const Group& H = p.left->group;
    const Group& G = p.right->group;
    const BitVector& xm = p.table.subgroups[x].members;

    std::vector<std::int32_t> coset(P.order, kNoImage);
    std::vector<Elem> reps;
    for (Elem e = 0; e < P.order; ++e) {
        if (coset[e] != kNoImage) continue;
        auto id = static_cast<std::int32_t>(reps.size());
        reps.push_back(e);
        xm.for_each_set([&](std::size_t y) { coset[P.mul(e, static_cast<Elem>(y))] = id; });
    }
    const std::size_t ncos = reps.size();

    BisetMatrix mat = zero_matrix(p.right, p.left);
    for (std::size_t k = 0; k < p.right->rank(); ++k) {
        const auto& kgens = p.right->table.rep(k).gens;
        // right action (a, b)X . g = (a, g^-1 b)X
        std::vector<std::int32_t> korb(ncos, kNoImage);
        std::int32_t norb = 0;
        for (std::size_t c = 0; c < ncos; ++c) {
            if (korb[c] != kNoImage) continue;
            std::vector<std::size_t> queue{c};
            korb[c] = norb;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                Elem e = reps[queue[head]];
                for (auto s : kgens) {
                    auto d = static_cast<std::size_t>(coset[p.pair(p.first(e), G.mul(G.inv[s], p.second(e)))]);
                    if (korb[d] == kNoImage) {
                        korb[d] = norb;
                        queue.push_back(d);
                    }
                }
            }
            ++norb;
        }
        // left H action on K-orbits
        std::vector<bool> done(static_cast<std::size_t>(norb), false);
        for (std::size_t c = 0; c < ncos; ++c) {
            auto o = static_cast<std::size_t>(korb[c]);
            if (done[o]) continue;
            Elem e = reps[c];
            BitVector stab(H.order);
            for (Elem h = 0; h < H.order; ++h) {
                auto d = static_cast<std::size_t>(coset[p.pair(H.mul(h, p.first(e)), p.second(e))]);
                auto o2 = static_cast<std::size_t>(korb[d]);
                done[o2] = true;
                if (o2 == o) stab.set(h);
            }
            mat.at(p.left->table.class_of_set(stab), k) += 1;
        }
    }
    return mat;
}

/// Memoizes subquotient rings of one ambient ring by (numerator, denominator).
class SubquotientCache {
public:
    explicit SubquotientCache(RingPtr ambient, Guards guards = {}) : ambient_(std::move(ambient)), guards_(guards) {}

    const SubRing& get(const BitVector& top, const BitVector& bottom) {
        auto key = std::make_pair(ambient_->table.find(top), ambient_->table.find(bottom));
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, quotient_ring(ambient_->group, top, bottom, guards_)).first;
        return it->second;
    }

private:
    RingPtr ambient_;
    Guards guards_;
    std::map<std::pair<std::size_t, std::size_t>, SubRing> cache_;
};

struct Factorization {
    SubgroupOfProduct parts;
    Biset indinf;  // p1/k1 -> H
    Biset iso;     // p2/k2 -> p1/k1
    Biset defres;  // G -> p2/k2

    BisetMatrix product() const { return matrix(indinf) * matrix(iso) * matrix(defres); }
};

/// (H x G)/X = Indinf_{p1/k1}^H Iso(f) Defres_{p2/k2}^G with f(g k2) = h k1 for (h, g) in X.
inline Factorization factorize(const ProductGroup& p, std::size_t x, SubquotientCache& left_cache,
                               SubquotientCache& right_cache) {
    SubgroupOfProduct parts = analyze(p, x);
    const SubRing& q1 = left_cache.get(parts.p1, parts.k1);
    const SubRing& q2 = right_cache.get(parts.p2, parts.k2);
    std::vector<std::int32_t> f(q2.ring->group.order, kNoImage);
    p.table.subgroups[x].members.for_each_set([&](std::size_t e) {
        auto a = q2.map[p.second(static_cast<Elem>(e))];
        auto b = q1.map[p.first(static_cast<Elem>(e))];
        if (f[a] != kNoImage && f[a] != b) throw precondition_error("factorize: induced map is not well defined");
        f[a] = b;
    });
    return Factorization{std::move(parts), indinf(p.left, q1), iso(q2.ring, q1.ring, std::move(f)),
                         defres(p.right, q2)};
}

inline Factorization factorize(const ProductGroup& p, std::size_t x) {
    SubquotientCache l(p.left), r(p.right);
    return factorize(p, x, l, r);
}

}  // namespace burnside_lab

#include <gtest/gtest.h>

#include <random>

#include "burnside_lab/bisets.hpp"
#include "oracles.hpp"

using namespace burnside_lab;

namespace {

BisetMatrix from_columns(RingPtr src, RingPtr dst, std::vector<std::vector<std::int64_t>> cols) {
    BisetMatrix m = zero_matrix(src, dst);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < cols[c].size(); ++r) m.at(r, c) = cols[c][r];
    return m;
}

std::size_t subgroup_of_order(const Ring& r, std::size_t order) {
    for (std::size_t i = 0; i < r.table.size(); ++i)
        if (r.table.subgroups[i].order == order) return i;
    throw std::logic_error("no subgroup of that order");
}

std::size_t image_index(const Ring& inner, const std::vector<std::int32_t>& map, const BitVector& set) {
    BitVector img(inner.group.order);
    set.for_each_set([&](std::size_t x) { img.set(static_cast<std::size_t>(map[x])); });
    return inner.table.find(img);
}

/// Iso between two realizations of one subquotient of `ambient` elements.
Biset relabel(const SubRing& from, const std::vector<std::int32_t>& to_map, const RingPtr& to, std::size_t ambient_order) {
    std::vector<std::int32_t> f(from.ring->group.order, kNoImage);
    for (std::size_t g = 0; g < ambient_order; ++g)
        if (from.map[g] != kNoImage) f[from.map[g]] = to_map[g];
    return iso(from.ring, to, f);
}

std::vector<Elem> inverse_map(const SubRing& s) {
    std::vector<Elem> inv(s.ring->group.order);
    for (std::size_t g = 0; g < s.map.size(); ++g)
        if (s.map[g] != kNoImage) inv[s.map[g]] = static_cast<Elem>(g);
    return inv;
}

LinearForm random_form(std::mt19937_64& rng, std::size_t n) {
    LinearForm f{BitVector(n)};
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1) f.values.set(i);
    return f;
}

}  // namespace

TEST(Elementary, RestrictionC4ToC2) {
    auto c4 = make_ring(build_preset("C4"));
    auto c2 = subgroup_ring(*c4, 1);
    EXPECT_EQ(matrix(restriction(c4, c2)), from_columns(c4, c2.ring, {{2, 0}, {0, 2}, {0, 1}}));
    EXPECT_EQ(matrix(induction(c4, c2)), from_columns(c2.ring, c4, {{1, 0, 0}, {0, 1, 0}}));
}

TEST(Elementary, IdentityIso) {
    auto r = make_ring(build_preset("D8"));
    std::vector<std::int32_t> id(r->group.order);
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<std::int32_t>(i);
    EXPECT_EQ(matrix(iso(r, r, id)), identity_matrix(r));
}

TEST(Elementary, RestrictionMatchesOrbitDecomposition) {
    for (const char* s : {"S4", "D8", "SD16", "A4", "D8xC3"}) {
        auto g = make_ring(build_preset(s));
        for (std::size_t hc = 0; hc < g->rank(); ++hc) {
            auto h = subgroup_ring(*g, g->table.class_reps[hc]);
            auto res = matrix(restriction(g, h));
            auto embed = inverse_map(h);
            for (std::size_t k = 0; k < g->rank(); ++k) {
                auto want = oracle::decompose(*h.ring, oracle::restricted_coset_action(g->group, oracle::to_set(g->table.rep(k).members), embed));
                ASSERT_EQ(apply(res, basis_elem<std::int64_t>(*g, k)), want) << s << " H#" << hc << " K#" << k;
            }
        }
    }
}

TEST(Elementary, DeflationMatchesOrbitDecomposition) {
    for (const char* s : {"S4", "D8", "Q16", "C2^3"}) {
        auto g = make_ring(build_preset(s));
        for (std::size_t n : g->table.normal) {
            auto q = normal_quotient_ring(*g, n);
            auto def = matrix(deflation(g, q));
            auto lift = inverse_map(q);
            for (std::size_t k = 0; k < g->rank(); ++k) {
                auto want = oracle::decompose(*q.ring, oracle::deflated_coset_action(g->group, oracle::to_set(g->table.rep(k).members),
                                                                                     oracle::to_set(g->table.subgroups[n].members), lift));
                ASSERT_EQ(apply(def, basis_elem<std::int64_t>(*g, k)), want) << s;
            }
            // Inf then Def is the identity on B(G/N)
            EXPECT_EQ(def * matrix(inflation(g, q)), identity_matrix(q.ring));
        }
    }
}

TEST(Sections, IndinfExamples) {
    auto c4 = make_ring(build_preset("C4"));
    auto q = quotient_ring(c4->group, c4->table.subgroups[2].members, c4->table.subgroups[1].members);
    auto m = matrix(indinf(c4, q));
    EXPECT_EQ(apply(m, basis_elem<std::int64_t>(*q.ring, 0)), basis_elem<std::int64_t>(*c4, 1));

    for (const char* s : {"S4", "D8"}) {
        auto g = make_ring(build_preset(s));
        for (std::size_t t = 0; t < g->table.size(); ++t) {
            auto tt = quotient_ring(g->group, g->table.subgroups[t].members, g->table.subgroups[t].members);
            EXPECT_EQ(apply(matrix(indinf(g, tt)), basis_elem<std::int64_t>(*tt.ring, 0)),
                      basis_elem<std::int64_t>(*g, g->table.class_of[t]));
        }
        auto whole = quotient_ring(g->group, g->group.all_elements(), g->table.subgroups[0].members);
        EXPECT_EQ(matrix(defres(g, whole)) * matrix(indinf(g, whole)), identity_matrix(whole.ring));
    }
}

TEST(Composition, RestrictionIsTransitive) {
    auto g = make_ring(build_preset("S4"));
    std::size_t hi = subgroup_of_order(*g, 8);
    auto h = subgroup_ring(*g, hi);
    for (std::size_t ki = 0; ki < g->table.size(); ++ki) {
        if (!g->table.subgroups[ki].is_subgroup_of(g->table.subgroups[hi])) continue;
        auto k_in_h = subgroup_ring(*h.ring, image_index(*h.ring, h.map, g->table.subgroups[ki].members));
        auto k = subgroup_ring(*g, ki);
        std::vector<std::int32_t> via(g->group.order, kNoImage);
        for (std::size_t x = 0; x < via.size(); ++x)
            if (h.map[x] != kNoImage) via[x] = k_in_h.map[h.map[x]];
        auto relabel_k = relabel(k, via, k_in_h.ring, g->group.order);
        EXPECT_EQ(matrix(relabel_k) * matrix(restriction(g, k)), matrix(restriction(h.ring, k_in_h)) * matrix(restriction(g, h)));
        EXPECT_EQ(matrix(induction(g, k)), matrix(induction(g, h)) * matrix(induction(h.ring, k_in_h)) * matrix(relabel_k));
    }
}

TEST(Composition, IndinfAndDefresFactorThroughTheNumerator) {
    for (const char* s : {"S4", "D16", "D8xC3"}) {
        auto g = make_ring(build_preset(s));
        auto sections = enumerate_sections(g->group, g->table);
        for (const auto& sec : sections.classes) {
            auto direct = section_ring(sec);
            auto t = subgroup_ring(*g, sec.T);
            auto q = normal_quotient_ring(*t.ring, image_index(*t.ring, t.map, g->table.subgroups[sec.S].members));
            std::vector<std::int32_t> via(g->group.order, kNoImage);
            for (std::size_t x = 0; x < via.size(); ++x)
                if (t.map[x] != kNoImage) via[x] = q.map[t.map[x]];
            auto r = relabel(direct, via, q.ring, g->group.order);
            EXPECT_EQ(matrix(indinf(g, direct)), matrix(induction(g, t)) * matrix(inflation(t.ring, q)) * matrix(r));
            EXPECT_EQ(matrix(r) * matrix(defres(g, direct)), matrix(deflation(t.ring, q)) * matrix(restriction(g, t)));
        }
    }
}

TEST(Dual, ActionExamples) {
    std::mt19937_64 rng(3);
    auto g = make_ring(build_preset("D8xC3"));
    auto sections = enumerate_sections(g->group, g->table);
    for (int trial = 0; trial < 20; ++trial) {
        auto phi = random_form(rng, g->rank());
        for (const auto& sec : sections.classes) {
            auto q = section_ring(sec);
            auto psi = dual_action(defres(g, q), phi);
            for (std::size_t u = 0; u < g->table.size(); ++u) {
                const auto& U = g->table.subgroups[u].members;
                if (!g->table.subgroups[sec.S].members.is_subset_of(U) || !U.is_subset_of(g->table.subgroups[sec.T].members)) continue;
                EXPECT_EQ(psi.values.test(q.ring->table.class_of[image_index(*q.ring, q.map, U)]), phi.values.test(g->table.class_of[u]));
            }
        }
        for (std::size_t hc = 0; hc < g->rank(); ++hc) {
            auto h = subgroup_ring(*g, g->table.class_reps[hc]);
            auto psi = dual_action(restriction(g, h), phi);
            for (std::size_t k = 0; k < h.ring->table.size(); ++k) {
                auto embed = inverse_map(h);
                BitVector up(g->group.order);
                h.ring->table.subgroups[k].members.for_each_set([&](std::size_t x) { up.set(embed[x]); });
                EXPECT_EQ(psi.values.test(h.ring->table.class_of[k]), phi.values.test(g->table.class_of_set(up)));
            }
        }
        std::vector<std::int32_t> id(g->group.order);
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<std::int32_t>(i);
        EXPECT_EQ(dual_action(iso(g, g, id), phi), phi);
    }
}

TEST(Transitive, DiagonalFullAndTwisted) {
    for (const char* s : {"S3", "D8", "C4"}) {
        auto g = make_ring(build_preset(s));
        auto p = make_product(g, g);
        const std::size_t n = g->group.order;
        BitVector diag(p.group.order), full = p.group.all_elements();
        for (Elem x = 0; x < n; ++x) diag.set(p.pair(x, x));
        EXPECT_EQ(transitive_biset(p, p.table.find(diag)), identity_matrix(g));
        BisetMatrix to_top = zero_matrix(g, g);
        for (std::size_t k = 0; k < g->rank(); ++k) to_top.at(g->whole_class(), k) = 1;
        EXPECT_EQ(transitive_biset(p, p.table.find(full)), to_top);

        // twisted diagonal {(f(x), x)} for conjugation f by a fixed element
        Elem c = g->group.generators.back();
        BitVector twisted(p.group.order);
        std::vector<std::int32_t> f(n);
        for (Elem x = 0; x < n; ++x) {
            f[x] = static_cast<std::int32_t>(g->group.conj(c, x));
            twisted.set(p.pair(g->group.conj(c, x), x));
        }
        auto x = p.table.find(twisted);
        EXPECT_EQ(transitive_biset(p, x), matrix(iso(g, g, f)));
        EXPECT_EQ(transitive_biset(p, x), factorize(p, x).product());
    }
}

TEST(Transitive, FactorizationSmallPairs) {
    for (auto [hs, gs] : std::vector<std::pair<const char*, const char*>>{{"C2", "C3"}, {"C3", "S3"}, {"C4", "C2^2"}}) {
        auto p = make_product(make_ring(build_preset(hs)), make_ring(build_preset(gs)));
        for (std::size_t x = 0; x < p.table.size(); ++x) {
            auto f = factorize(p, x);
            EXPECT_EQ(f.parts.k1.count() * f.iso.target->group.order, f.parts.p1.count());
            EXPECT_EQ(f.parts.k2.count() * f.iso.source->group.order, f.parts.p2.count());
            EXPECT_EQ(transitive_biset(p, x), f.product()) << hs << " x " << gs << " X#" << x;
        }
    }
}

TEST(Transitive, FaithfulIdempotentKillsBisetsThroughTheCenter) {
    auto r = make_ring(build_preset("SD16"));
    BitVector z = center(r->group);
    auto f1 = f1_matrix(*r);
    const std::size_t n = r->rank();
    for (const char* hs : {"C1", "C2", "C4"}) {
        auto p = make_product(r, make_ring(build_preset(hs)));
        std::size_t tested = 0;
        for (std::size_t x = 0; x < p.table.size(); ++x) {
            auto parts = analyze(p, x);
            if (!z.is_subset_of(parts.k1)) continue;
            ++tested;
            auto m = transitive_biset(p, x);
            for (std::size_t c = 0; c < m.cols; ++c)
                for (std::size_t row = 0; row < n; ++row) {
                    std::int64_t v = 0;
                    for (std::size_t k = 0; k < n; ++k) v += f1[row * n + k] * m(k, c);
                    ASSERT_EQ(v, 0) << hs << " X#" << x;
                }
        }
        EXPECT_GT(tested, 0u);
    }
}

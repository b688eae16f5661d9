#include <gtest/gtest.h>

#include <random>

#include "burnside_lab/bisets.hpp"
#include "burnside_lab/burnside.hpp"
#include "oracles.hpp"

using namespace burnside_lab;

namespace {

IntElem elem(std::vector<std::int64_t> c) { return IntElem{std::move(c)}; }

RatElem ratelem(std::vector<Rational> c) { return RatElem{std::move(c)}; }

std::size_t class_of_order(const Ring& r, std::size_t order, std::size_t nth = 0) { return classes_of_order(r, order).at(nth); }

}  // namespace

TEST(Marks, SmallTables) {
    auto c2 = make_ring(build_preset("C2"));
    EXPECT_EQ(c2->marks.m, (std::vector<std::int64_t>{2, 0, 1, 1}));
    auto c1 = make_ring(build_preset("C1"));
    EXPECT_EQ(c1->marks.m, (std::vector<std::int64_t>{1}));
}

TEST(Marks, AgreeWithFixedPointCount) {
    for (const char* s : {"D8", "S4", "Q8", "A4", "C2^3", "D8xC3", "SD16"}) {
        auto r = make_ring(build_preset(s));
        const auto& t = r->table;
        for (std::size_t h = 0; h < r->rank(); ++h)
            for (std::size_t k = 0; k < r->rank(); ++k)
                ASSERT_EQ(r->marks(h, k), oracle::fixed_points(r->group, oracle::to_set(t.rep(h).members),
                                                               oracle::to_set(t.rep(k).members)))
                    << s << " " << h << " " << k;
    }
}

TEST(Marks, TriangularWithNormalizerDiagonal) {
    for (const char* s : {"D16", "S4", "C2^4", "Q16", "SD32", "C3xC3"}) {
        auto r = make_ring(build_preset(s));
        const auto& t = r->table;
        for (std::size_t h = 0; h < r->rank(); ++h) {
            EXPECT_EQ(r->marks(h, h) * static_cast<std::int64_t>(t.rep(h).order),
                      static_cast<std::int64_t>(t.normalizers[h].order));
            EXPECT_EQ(r->marks(r->whole_class(), h), 1);
            for (std::size_t k = 0; k < r->rank(); ++k) EXPECT_EQ(r->marks(h, k) != 0, t.subconjugate(k, h)) << s;
        }
    }
}

TEST(Multiplication, Examples) {
    auto c2 = make_ring(build_preset("C2"));
    auto x = elem({1, 0});
    EXPECT_EQ(mul(*c2, x, x), elem({2, 0}));
    auto one_ = one<std::int64_t>(*c2);
    EXPECT_EQ(mul(*c2, one_, x), x);
}

TEST(Multiplication, RingAxiomsOnRandomElements) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> d(-4, 4);
    for (const char* s : {"D8", "S4", "A4", "Q8", "C12"}) {
        auto r = make_ring(build_preset(s));
        auto rnd = [&] {
            IntElem x{std::vector<std::int64_t>(r->rank())};
            for (auto& c : x.coeffs) c = d(rng);
            return x;
        };
        for (int i = 0; i < 30; ++i) {
            auto a = rnd(), b = rnd(), c = rnd();
            EXPECT_EQ(mul(*r, mul(*r, a, b), c), mul(*r, a, mul(*r, b, c)));
            EXPECT_EQ(mul(*r, a, b), mul(*r, b, a));
            EXPECT_EQ(mul(*r, a, b + c), mul(*r, a, b) + mul(*r, a, c));
            EXPECT_EQ(mul(*r, one<std::int64_t>(*r), a), a);
        }
    }
}

TEST(Multiplication, BasisProductCountsDoubleCosets) {
    // G/H x G/K decomposes into orbits on pairs of cosets
    for (const char* s : {"S3", "D8", "A4"}) {
        auto r = make_ring(build_preset(s));
        const Group& g = r->group;
        for (std::size_t h = 0; h < r->rank(); ++h)
            for (std::size_t k = 0; k < r->rank(); ++k) {
                auto ch = oracle::left_cosets(g, oracle::to_set(r->table.rep(h).members));
                auto ck = oracle::left_cosets(g, oracle::to_set(r->table.rep(k).members));
                std::map<oracle::ElemSet, std::size_t> ih, ik;
                for (std::size_t i = 0; i < ch.size(); ++i) ih[ch[i]] = i;
                for (std::size_t i = 0; i < ck.size(); ++i) ik[ck[i]] = i;
                oracle::Action a;
                a.act.assign(g.order, std::vector<std::size_t>(ch.size() * ck.size()));
                for (Elem y = 0; y < g.order; ++y)
                    for (std::size_t i = 0; i < ch.size(); ++i)
                        for (std::size_t j = 0; j < ck.size(); ++j) {
                            oracle::ElemSet mi, mj;
                            for (auto e : ch[i]) mi.insert(g.mul(y, e));
                            for (auto e : ck[j]) mj.insert(g.mul(y, e));
                            a.act[y][i * ck.size() + j] = ih.at(mi) * ck.size() + ik.at(mj);
                        }
                EXPECT_EQ(mul(*r, basis_elem<std::int64_t>(*r, h), basis_elem<std::int64_t>(*r, k)), oracle::decompose(*r, a));
            }
    }
}

TEST(Idempotents, C2Values) {
    auto r = make_ring(build_preset("C2"));
    auto mu = moebius(r->table);
    EXPECT_EQ(idempotent(*r, mu, 1), ratelem({Rational(-1, 2), Rational(1)}));
    EXPECT_EQ(idempotent(*r, mu, 0), ratelem({Rational(1, 2), Rational(0)}));
}

TEST(Idempotents, OrthogonalIndicatorsSummingToOne) {
    for (const char* s : {"D8", "S4", "A4", "Q8", "C12", "C2^3", "SD16"}) {
        auto r = make_ring(build_preset(s));
        auto mu = moebius(r->table);
        const std::size_t n = r->rank();
        std::vector<RatElem> es;
        RatElem sum{std::vector<Rational>(n, Rational(0))};
        for (std::size_t c = 0; c < n; ++c) {
            es.push_back(idempotent(*r, mu, c));
            sum = sum + es.back();
            auto m = marks(*r, es.back());
            for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(m[k], Rational(k == c ? 1 : 0)) << s;
        }
        EXPECT_EQ(sum, one<Rational>(*r));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                auto p = mul(*r, es[a], es[b]);
                EXPECT_EQ(p, a == b ? es[a] : RatElem{std::vector<Rational>(n, Rational(0))});
            }
    }
}

TEST(Ghost, C4Examples) {
    auto r = make_ring(build_preset("C4"));
    std::vector<int> all_plus{1, 1, 1};
    EXPECT_EQ(ghost_to_burnside(*r, all_plus), one<std::int64_t>(*r));
    std::vector<int> s1{1, 1, -1};
    EXPECT_EQ(ghost_to_burnside(*r, s1), elem({0, 1, -1}));
    std::vector<int> s2{1, -1, -1};
    EXPECT_FALSE(ghost_to_burnside(*r, s2).has_value());
}

TEST(Ghost, RoundTripOnUnits) {
    for (const char* s : {"D8", "C2^3", "S3"}) {
        auto r = make_ring(build_preset(s));
        for (auto mask : oracle::units_by_enumeration(*r)) {
            std::vector<int> signs(r->rank());
            for (std::size_t k = 0; k < signs.size(); ++k) signs[k] = mask >> k & 1 ? -1 : 1;
            auto x = ghost_to_burnside(*r, signs);
            ASSERT_TRUE(x.has_value());
            auto m = marks(*r, *x);
            EXPECT_EQ(std::vector<std::int64_t>(signs.begin(), signs.end()), m);
            EXPECT_EQ(ghost_to_burnside(*r, signs), x);
        }
    }
}

TEST(Epsilon, KleinAndCyclic) {
    auto v = make_ring(build_preset("C2^2"));
    EXPECT_EQ(epsilon(*v), elem({1, -1, -1, -1, 2}));
    BitVector bar(5);
    for (std::size_t i : {0, 1, 2, 3}) bar.set(i);
    EXPECT_EQ(epsilon_bar(*v).coeffs, bar);

    auto c5 = make_ring(build_preset("C5"));
    EXPECT_EQ(epsilon(*c5), elem({1, -1}));

    auto c4 = make_ring(build_preset("C4"));
    EXPECT_EQ(epsilon(*c4), elem({1, -1, 0}));
}

TEST(Epsilon, DihedralAndSemidihedral) {
    auto sd = make_ring(build_preset("SD16"));
    auto d = reflection_data(*sd);
    ASSERT_NE(d.I, ReflectionData::none);
    EXPECT_EQ(d.J, ReflectionData::none);
    IntElem want{std::vector<std::int64_t>(sd->rank(), 0)};
    want.coeffs[d.I] = 1;
    want.coeffs[d.IZ] = -1;
    EXPECT_EQ(epsilon(*sd), want);
    EXPECT_EQ(sd->table.rep(d.I).order, 2u);
    EXPECT_EQ(sd->table.rep(d.IZ).order, 4u);

    auto d8 = make_ring(build_preset("D8"));
    auto dd = reflection_data(*d8);
    ASSERT_NE(dd.J, ReflectionData::none);
    EXPECT_NE(dd.I, dd.J);
    EXPECT_EQ(d8->table.rep(dd.IZ).order, 4u);
    EXPECT_EQ(d8->table.rep(dd.JZ).order, 4u);
    EXPECT_NE(dd.IZ, dd.JZ);
}

TEST(Epsilon, RejectsGroupsOutsideClassR) {
    for (const char* s : {"C2", "Q8", "S3", "C8"}) EXPECT_THROW(epsilon(*make_ring(build_preset(s))), precondition_error) << s;
}

TEST(FaithfulIdempotent, C2AndCp) {
    auto c2 = make_ring(build_preset("C2"));
    EXPECT_EQ(f1_apply(*c2, elem({1, 0})), elem({1, -1}));
    EXPECT_EQ(f1_apply(*c2, elem({0, 1})), elem({0, 0}));
    auto c7 = make_ring(build_preset("C7"));
    EXPECT_EQ(f1_apply(*c7, elem({1, 0})), epsilon(*c7));
}

TEST(FaithfulIdempotent, IdempotentAndKillsInflations) {
    for (const char* s : {"D8", "S4", "C12", "Q8", "SD16", "C2^3"}) {
        auto r = make_ring(build_preset(s));
        for (std::size_t c = 0; c < r->rank(); ++c) {
            auto x = basis_elem<std::int64_t>(*r, c);
            auto y = f1_apply(*r, x);
            EXPECT_EQ(f1_apply(*r, y), y) << s;
        }
        for (std::size_t i : r->table.normal) {
            if (r->table.subgroups[i].order == 1) continue;
            auto q = normal_quotient_ring(*r, i);
            auto inf = matrix(inflation(r, q));
            for (std::size_t c = 0; c < q.ring->rank(); ++c) {
                auto img = apply(inf, basis_elem<std::int64_t>(*q.ring, c));
                EXPECT_EQ(f1_apply(*r, img), (IntElem{std::vector<std::int64_t>(r->rank(), 0)})) << s;
            }
        }
    }
}

TEST(Naming, ClassNamesAreLabelAndOrdinal) {
    auto r = make_ring(build_preset("C2^2"));
    EXPECT_EQ(class_names(*r), (std::vector<std::string>{"C1#1", "C2#1", "C2#2", "C2#3", "C2^2#1"}));
    EXPECT_EQ(class_of_order(*r, 2, 2), 3u);
}

#pragma once

// Finite groups as full multiplication tables: preset families, permutation
// closures, direct products, quotients and family classification.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "burnside_lab/errors.hpp"
#include "burnside_lab/f2.hpp"

namespace burnside_lab {

using Elem = std::uint32_t;
inline constexpr std::int32_t kNoImage = -1;

struct Group {
    std::size_t order = 1;
    std::vector<Elem> mul_table{0};  // row-major, order x order
    std::vector<Elem> inv{0};
    Elem id = 0;
    std::vector<Elem> generators{0};
    std::vector<std::string> element_labels;

    Elem mul(Elem a, Elem b) const noexcept { return mul_table[std::size_t{a} * order + b]; }
    Elem conj(Elem g, Elem x) const noexcept { return mul(mul(g, x), inv[g]); }  // g x g^-1

    bool is_abelian() const {
        for (auto a : generators)
            for (auto b : generators)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    std::size_t element_order(Elem x) const {
        std::size_t k = 1;
        for (Elem y = x; y != id; y = mul(y, x)) ++k;
        return k;
    }

    BitVector all_elements() const {
        BitVector b(order);
        for (std::size_t i = 0; i < order; ++i) b.set(i);
        return b;
    }
};

/// Builds a group from a closed binary operation on 0..n-1.
template <class Op>
Group group_from_operation(std::size_t n, Op op, std::vector<Elem> generators) {
    Group g;
    g.order = n;
    g.mul_table.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            g.mul_table[a * n + b] = static_cast<Elem>(op(static_cast<Elem>(a), static_cast<Elem>(b)));
    g.id = n;
    for (std::size_t e = 0; e < n && g.id == n; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) ok = g.mul(e, a) == a && g.mul(a, e) == a;
        if (ok) g.id = static_cast<Elem>(e);
    }
    if (g.id == n) throw precondition_error("operation has no identity");
    g.inv.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < n && !found; ++b)
            if (g.mul(a, b) == g.id) {
                g.inv[a] = static_cast<Elem>(b);
                found = true;
            }
        if (!found) throw precondition_error("operation has an element without inverse");
    }
    if (generators.empty()) generators.push_back(g.id);
    g.generators = std::move(generators);
    return g;
}

/// Exhaustive associativity/identity/inverse check; samples triples above 256 elements.
inline bool check_group_axioms(const Group& g, std::uint64_t seed = 1, std::size_t samples = 200000) {
    for (std::size_t x = 0; x < g.order; ++x) {
        if (g.mul(x, g.id) != x || g.mul(g.id, x) != x) return false;
        if (g.mul(x, g.inv[x]) != g.id || g.mul(g.inv[x], x) != g.id) return false;
    }
    auto assoc = [&](Elem x, Elem y, Elem z) { return g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)); };
    if (g.order <= 256) {
        for (Elem x = 0; x < g.order; ++x)
            for (Elem y = 0; y < g.order; ++y)
                for (Elem z = 0; z < g.order; ++z)
                    if (!assoc(x, y, z)) return false;
        return true;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order - 1));
    for (std::size_t i = 0; i < samples; ++i)
        if (!assoc(pick(rng), pick(rng), pick(rng))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Preset families

inline Group cyclic_group(std::size_t n) {
    if (n == 0) throw unsupported_error("cyclic group of order 0");
    return group_from_operation(
        n, [n](Elem a, Elem b) { return (a + b) % n; }, {static_cast<Elem>(n > 1 ? 1 : 0)});
}

inline Group elementary_abelian_2(unsigned k) {
    if (k > 13) throw guard_error("C2^k too large");
    std::vector<Elem> gens;
    for (unsigned i = 0; i < k; ++i) gens.push_back(Elem{1} << i);
    return group_from_operation(std::size_t{1} << k, [](Elem a, Elem b) { return a ^ b; }, gens);
}

namespace detail {

// Elements r^i s^j stored at i + m*j, with |r| = m, s r s^-1 = r^a, s^2 = r^b.
inline Group metacyclic_group(std::size_t m, std::size_t a, std::size_t b) {
    auto op = [=](Elem x, Elem y) {
        std::size_t i = x % m, j = x / m, k = y % m, l = y / m;
        std::size_t twisted = (j ? a * k : k) % m;
        std::size_t r = (i + twisted + ((j & l) ? b : 0)) % m;
        return static_cast<Elem>(r + m * (j ^ l));
    };
    return group_from_operation(2 * m, op, {1, static_cast<Elem>(m)});
}

inline bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

}  // namespace detail

inline Group dihedral_group(std::size_t n) {
    if (n < 4 || n % 2) throw unsupported_error("dihedral order must be even and >= 4");
    std::size_t m = n / 2;
    return detail::metacyclic_group(m, m - 1, 0);
}

inline Group semidihedral_group(std::size_t n) {
    if (n < 16 || !detail::is_power_of_two(n))
        throw unsupported_error("semidihedral order must be 2^m with m >= 4");
    std::size_t m = n / 2;
    return detail::metacyclic_group(m, m / 2 - 1, 0);
}

inline Group quaternion_group(std::size_t n) {
    if (n < 8 || !detail::is_power_of_two(n))
        throw unsupported_error("quaternion order must be 2^m with m >= 3");
    std::size_t m = n / 2;
    return detail::metacyclic_group(m, m - 1, m / 2);
}

// ---------------------------------------------------------------------------
// Permutation input

using Permutation = std::vector<std::uint16_t>;  // images of 0..degree-1

inline Group group_from_permutations(std::size_t degree, const std::vector<Permutation>& gens,
                                     const Guards& guards = {}) {
    Permutation identity(degree);
    std::iota(identity.begin(), identity.end(), std::uint16_t{0});
    auto key = [](const Permutation& p) { return std::string(p.begin(), p.end()); };
    // x^(pq) = (x^p)^q
    auto compose = [degree](const Permutation& p, const Permutation& q) {
        Permutation r(degree);
        for (std::size_t x = 0; x < degree; ++x) r[x] = q[p[x]];
        return r;
    };
    std::vector<Permutation> elems{identity};
    std::unordered_map<std::string, Elem> index{{key(identity), 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : gens) {
            Permutation p = compose(elems[head], g);
            auto [it, fresh] = index.emplace(key(p), static_cast<Elem>(elems.size()));
            if (fresh) {
                elems.push_back(std::move(p));
                if (elems.size() > guards.max_elements)
                    throw guard_error("permutation closure exceeds " + std::to_string(guards.max_elements) +
                                      " elements");
            }
        }
    }
    std::vector<Elem> gen_idx;
    for (const auto& g : gens) gen_idx.push_back(index.at(key(g)));
    Group grp = group_from_operation(
        elems.size(), [&](Elem a, Elem b) { return index.at(key(compose(elems[a], elems[b]))); }, gen_idx);
    for (const auto& p : elems) {
        std::string s;
        std::vector<bool> seen(degree, false);
        for (std::size_t x = 0; x < degree; ++x) {
            if (seen[x] || p[x] == x) continue;
            s += "(";
            for (std::size_t y = x; !seen[y]; y = p[y]) {
                seen[y] = true;
                if (y != x) s += " ";
                s += std::to_string(y + 1);
            }
            s += ")";
        }
        grp.element_labels.push_back(s.empty() ? "()" : s);
    }
    return grp;
}

/// Parses "(1 2)(3 4 5)" into a permutation of 1..degree (stored 0-based).
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
    Permutation p(degree);
    std::iota(p.begin(), p.end(), std::uint16_t{0});
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    std::vector<bool> used(degree, false);
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw parse_error("expected '(' in cycle notation: " + std::string(text));
        ++i;
        std::vector<std::size_t> cycle;
        while (true) {
            skip_ws();
            if (i >= text.size()) throw parse_error("unterminated cycle: " + std::string(text));
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (text[i] == ',') {
                ++i;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw parse_error("bad character in cycle: " + std::string(text));
            std::size_t v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
            if (v < 1 || v > degree) throw parse_error("point " + std::to_string(v) + " outside 1.." +
                                                       std::to_string(degree));
            if (used[v - 1]) throw parse_error("point repeated in cycles: " + std::to_string(v));
            used[v - 1] = true;
            cycle.push_back(v - 1);
        }
        for (std::size_t c = 0; c < cycle.size(); ++c)
            p[cycle[c]] = static_cast<std::uint16_t>(cycle[(c + 1) % cycle.size()]);
        skip_ws();
    }
    return p;
}

inline Group symmetric_group(std::size_t n) {
    if (n == 0 || n > 6) throw unsupported_error("S<n> supported for 1 <= n <= 6");
    if (n == 1) return cyclic_group(1);
    Permutation t(n), c(n);
    std::iota(t.begin(), t.end(), std::uint16_t{0});
    std::swap(t[0], t[1]);
    for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint16_t>((i + 1) % n);
    return group_from_permutations(n, {t, c});
}

inline Group alternating_group(std::size_t n) {
    if (n == 0 || n > 6) throw unsupported_error("A<n> supported for 1 <= n <= 6");
    if (n < 3) return cyclic_group(1);
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i + 2 < n; ++i) {
        Permutation p(n);
        std::iota(p.begin(), p.end(), std::uint16_t{0});
        p[i] = static_cast<std::uint16_t>(i + 1);
        p[i + 1] = static_cast<std::uint16_t>(i + 2);
        p[i + 2] = static_cast<std::uint16_t>(i);
        gens.push_back(p);
    }
    return group_from_permutations(n, gens);
}

/// A x B with (a, b) stored at a * |B| + b.
inline Group direct_product(const Group& a, const Group& b, const Guards& guards = {}) {
    std::size_t n = a.order * b.order;
    if (n > guards.max_elements)
        throw guard_error("direct product of order " + std::to_string(n) + " exceeds element guard");
    std::vector<Elem> gens;
    for (auto g : a.generators)
        if (g != a.id) gens.push_back(static_cast<Elem>(g * b.order + b.id));
    for (auto h : b.generators)
        if (h != b.id) gens.push_back(static_cast<Elem>(a.id * b.order + h));
    Group g;
    g.order = n;
    g.mul_table.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            g.mul_table[x * n + y] = static_cast<Elem>(a.mul(x / b.order, y / b.order) * b.order +
                                                       b.mul(x % b.order, y % b.order));
    g.id = static_cast<Elem>(a.id * b.order + b.id);
    g.inv.resize(n);
    for (std::size_t x = 0; x < n; ++x)
        g.inv[x] = static_cast<Elem>(a.inv[x / b.order] * b.order + b.inv[x % b.order]);
    if (gens.empty()) gens.push_back(g.id);
    g.generators = std::move(gens);
    return g;
}

// ---------------------------------------------------------------------------
// Subsets, closures and quotients

/// Subgroup generated by the given elements (right-multiplication closure).
inline BitVector closure(const Group& g, const std::vector<Elem>& gens) {
    BitVector members(g.order);
    std::vector<Elem> queue{g.id};
    members.set(g.id);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (auto s : gens) {
            Elem y = g.mul(queue[head], s);
            if (!members.test(y)) {
                members.set(y);
                queue.push_back(y);
            }
        }
    }
    return members;
}

/// Greedy generating set for a subgroup given by its members.
inline std::vector<Elem> generating_set(const Group& g, const BitVector& members) {
    std::vector<Elem> gens;
    BitVector span(g.order);
    span.set(g.id);
    members.for_each_set([&](std::size_t x) {
        if (!span.test(x)) {
            gens.push_back(static_cast<Elem>(x));
            span = closure(g, gens);
        }
    });
    if (gens.empty()) gens.push_back(g.id);
    return gens;
}

inline BitVector conjugate_set(const Group& g, Elem x, const BitVector& set) {
    BitVector out(g.order);
    set.for_each_set([&](std::size_t e) { out.set(g.conj(x, static_cast<Elem>(e))); });
    return out;
}

/// True when every generator of `top` normalizes `sub`.
inline bool normalizes(const Group& g, const std::vector<Elem>& top_gens, const BitVector& sub,
                       const std::vector<Elem>& sub_gens) {
    for (auto t : top_gens)
        for (auto s : sub_gens)
            if (!sub.test(g.conj(t, s))) return false;
    return true;
}

struct Quotient {
    Group group;
    /// Image of each element of the parent group; kNoImage outside the numerator.
    std::vector<std::int32_t> projection;
};

/// T/S for S normal in T, both given as member sets of g.
inline Quotient quotient(const Group& g, const BitVector& top, const BitVector& bottom) {
    if (!bottom.is_subset_of(top)) throw precondition_error("quotient: denominator not contained in numerator");
    std::vector<Elem> top_gens = generating_set(g, top);
    std::vector<Elem> bottom_gens = generating_set(g, bottom);
    if (!normalizes(g, top_gens, bottom, bottom_gens)) throw precondition_error("quotient: subgroup is not normal");
    Quotient q;
    q.projection.assign(g.order, kNoImage);
    std::vector<Elem> reps;
    top.for_each_set([&](std::size_t t) {
        if (q.projection[t] != kNoImage) return;
        auto id = static_cast<std::int32_t>(reps.size());
        reps.push_back(static_cast<Elem>(t));
        bottom.for_each_set([&](std::size_t s) { q.projection[g.mul(static_cast<Elem>(t), static_cast<Elem>(s))] = id; });
    });
    std::vector<Elem> gens;
    for (auto t : top_gens) {
        auto img = static_cast<Elem>(q.projection[t]);
        if (img != static_cast<Elem>(q.projection[g.id]) && std::find(gens.begin(), gens.end(), img) == gens.end()) gens.push_back(img);
    }
    q.group = group_from_operation(
        reps.size(), [&](Elem a, Elem b) { return static_cast<Elem>(q.projection[g.mul(reps[a], reps[b])]); }, gens);
    return q;
}

inline Quotient quotient_group(const Group& g, const BitVector& normal) { return quotient(g, g.all_elements(), normal); }

struct Embedded {
    Group group;
    std::vector<Elem> to_parent;          // element of the subgroup -> parent index
    std::vector<std::int32_t> from_parent;  // parent index -> element or kNoImage
};

inline Embedded subgroup_as_group(const Group& g, const BitVector& members) {
    Embedded e;
    e.from_parent.assign(g.order, kNoImage);
    members.for_each_set([&](std::size_t x) {
        e.from_parent[x] = static_cast<std::int32_t>(e.to_parent.size());
        e.to_parent.push_back(static_cast<Elem>(x));
    });
    std::vector<Elem> gens;
    for (auto x : generating_set(g, members))
        if (x != g.id) gens.push_back(static_cast<Elem>(e.from_parent[x]));
    e.group = group_from_operation(
        e.to_parent.size(),
        [&](Elem a, Elem b) { return static_cast<Elem>(e.from_parent[g.mul(e.to_parent[a], e.to_parent[b])]); }, gens);
    return e;
}

inline BitVector center(const Group& g) {
    BitVector z(g.order);
    for (Elem x = 0; x < g.order; ++x) {
        bool central = true;
        for (auto s : g.generators) central = central && g.mul(x, s) == g.mul(s, x);
        if (central) z.set(x);
    }
    return z;
}

// ---------------------------------------------------------------------------
// Classification

struct IsoClassLabel {
    enum class Kind { Trivial, Cyclic, Klein4, ElemAbelian2, Dihedral, Semidihedral, Quaternion, OddPrimeCyclic, Other };
    Kind kind = Kind::Other;
    /// Order for Cyclic/Dihedral/Semidihedral/Quaternion/Other, p for OddPrimeCyclic, k for ElemAbelian2.
    std::size_t param = 0;

    friend bool operator==(const IsoClassLabel&, const IsoClassLabel&) = default;

    std::string str() const {
        switch (kind) {
            case Kind::Trivial: return "C1";
            case Kind::Cyclic: return "C" + std::to_string(param);
            case Kind::OddPrimeCyclic: return "C" + std::to_string(param);
            case Kind::Klein4: return "C2^2";
            case Kind::ElemAbelian2: return "C2^" + std::to_string(param);
            case Kind::Dihedral: return "D" + std::to_string(param);
            case Kind::Semidihedral: return "SD" + std::to_string(param);
            case Kind::Quaternion: return "Q" + std::to_string(param);
            case Kind::Other: return "G" + std::to_string(param);
        }
        return "?";
    }
};

inline bool is_prime(std::size_t n) {
    if (n < 2) return false;
    for (std::size_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline IsoClassLabel classify(const Group& g) {
    using K = IsoClassLabel::Kind;
    const std::size_t n = g.order;
    if (n == 1) return {K::Trivial, 1};
    std::size_t max_order = 0, involutions = 0;
    for (Elem x = 0; x < n; ++x) {
        std::size_t o = g.element_order(x);
        max_order = std::max(max_order, o);
        if (o == 2) ++involutions;
    }
    if (max_order == n) {
        if (n % 2 && is_prime(n)) return {K::OddPrimeCyclic, n};
        return {K::Cyclic, n};
    }
    bool abelian = g.is_abelian();
    if (abelian && max_order == 2) {
        unsigned k = static_cast<unsigned>(std::countr_zero(n));
        if (k == 2) return {K::Klein4, 2};
        return {K::ElemAbelian2, k};
    }
    // Non-abelian 2-groups with a cyclic maximal subgroup are D, SD, Q or the
    // modular group; the involution count separates them.
    if (!abelian && detail::is_power_of_two(n) && n >= 8 && max_order == n / 2) {
        if (involutions == 1) return {K::Quaternion, n};
        if (involutions == n / 2 + 1) return {K::Dihedral, n};
        if (n >= 16 && involutions == n / 4 + 1) return {K::Semidihedral, n};
    }
    return {K::Other, n};
}

inline bool in_class_r(const IsoClassLabel& l) {
    using K = IsoClassLabel::Kind;
    return l.kind == K::OddPrimeCyclic || (l.kind == K::Cyclic && l.param == 4) || l.kind == K::Klein4 ||
           (l.kind == K::Dihedral && l.param >= 8) || (l.kind == K::Semidihedral && l.param >= 16);
}

inline bool in_class_t(const IsoClassLabel& l) {
    using K = IsoClassLabel::Kind;
    if (in_class_r(l)) return true;
    return l.kind == K::Trivial || (l.kind == K::Cyclic && detail::is_power_of_two(l.param)) ||
           l.kind == K::Quaternion;
}

// ---------------------------------------------------------------------------
// Group-spec grammar

namespace detail {

inline std::size_t parse_number(std::string_view s, std::string_view whole) {
    if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw parse_error("bad number in group spec: " + std::string(whole));
    return std::stoul(std::string(s));
}

inline Group parse_factor(std::string_view f, std::string_view whole, const Guards& guards) {
    auto starts = [&](std::string_view p) { return f.substr(0, p.size()) == p; };
    if (starts("SD")) return semidihedral_group(parse_number(f.substr(2), whole));
    if (starts("C2^")) {
        std::size_t k = parse_number(f.substr(3), whole);
        if ((k < 63 && (std::size_t{1} << k) > guards.max_elements) || k >= 63)
            throw guard_error("C2^" + std::to_string(k) + " exceeds element guard");
        return elementary_abelian_2(static_cast<unsigned>(k));
    }
    std::size_t n = 0;
    if (f.empty()) throw parse_error("empty factor in group spec: " + std::string(whole));
    char head = f[0];
    if (head != 'C' && head != 'D' && head != 'Q' && head != 'S' && head != 'A')
        throw parse_error("unknown family in group spec: " + std::string(whole));
    n = parse_number(f.substr(1), whole);
    if ((head == 'C' || head == 'D' || head == 'Q') && n > guards.max_elements)
        throw guard_error("order " + std::to_string(n) + " exceeds element guard");
    switch (head) {
        case 'C': return cyclic_group(n);
        case 'D': return dihedral_group(n);
        case 'Q': return quaternion_group(n);
        case 'S': return symmetric_group(n);
        case 'A': return alternating_group(n);
    }
    throw parse_error("unknown family in group spec: " + std::string(whole));
}

}  // namespace detail

/// `C<n>`, `D<n>`, `SD<n>`, `Q<n>`, `C2^<k>`, `S<n>`, `A<n>`, products joined by
/// `x`, or `perm:<degree>:<cycles;...>`.
inline Group build_preset(std::string_view spec, const Guards& guards = {}) {
    std::string s(spec);
    if (s.rfind("perm:", 0) != 0) std::erase_if(s, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (s.empty()) throw parse_error("empty group spec");
    if (s.rfind("perm:", 0) == 0) {
        auto rest = std::string_view(s).substr(5);
        auto colon = rest.find(':');
        if (colon == std::string_view::npos) throw parse_error("perm spec needs perm:<degree>:<cycles>");
        std::size_t degree = detail::parse_number(rest.substr(0, colon), spec);
        if (degree == 0 || degree > 64) throw unsupported_error("perm degree must be in 1..64");
        std::vector<Permutation> gens;
        std::string_view cycles = rest.substr(colon + 1);
        std::size_t start = 0;
        while (start <= cycles.size()) {
            auto end = cycles.find(';', start);
            if (end == std::string_view::npos) end = cycles.size();
            auto part = cycles.substr(start, end - start);
            if (part.find_first_not_of(" \t") != std::string_view::npos) gens.push_back(parse_cycles(part, degree));
            start = end + 1;
        }
        return group_from_permutations(degree, gens, guards);
    }
    Group result;
    bool first = true;
    std::size_t start = 0;
    std::string_view sv(s);
    while (start <= sv.size()) {
        auto end = sv.find('x', start);
        if (end == std::string_view::npos) end = sv.size();
        Group factor = detail::parse_factor(sv.substr(start, end - start), spec, guards);
        result = first ? std::move(factor) : direct_product(result, factor, guards);
        first = false;
        start = end + 1;
    }
    if (result.order > guards.max_elements)
        throw guard_error("group of order " + std::to_string(result.order) + " exceeds element guard");
    return result;
}

}  // namespace burnside_lab

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "burnside_lab/burnside_lab.hpp"

using namespace burnside_lab;

namespace {

struct GroupRun {
    std::string name;
    RingPtr ring;
    UnitGroupDescription oracle, yoshida, sections, limit;
    KernelReport kernel;
};

std::vector<std::string> corpus() {
    std::vector<std::string> out;
    for (int n = 1; n <= 32; ++n) out.push_back("C" + std::to_string(n));
    for (const char* s : {"C2^2", "C2^3", "C2^4", "D8", "D16", "D32", "Q8", "Q16", "SD16", "SD32", "S3", "S4", "A4", "C3xC3", "D8xC3"})
        out.push_back(s);
    return out;
}

bool report(int id, const std::string& title, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s -- %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    return ok;
}

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
    return out.empty() ? "none" : out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<GroupRun> runs;
    std::map<std::string, const GroupRun*> by_name;
    std::vector<std::string> setup_errors;
    for (const auto& name : corpus()) {
        try {
            GroupRun g;
            g.name = name;
            g.ring = make_ring(build_preset(name));
            g.oracle = units_oracle(*g.ring);
            g.yoshida = yoshida_rank(*g.ring);
            g.sections = theorem_image_rank(g.ring);
            g.limit = sectional_limit_rank(g.ring);
            g.kernel = kernel_L(g.ring, name).report;
            runs.push_back(std::move(g));
        } catch (const std::exception& e) {
            setup_errors.push_back(name + ": " + e.what());
        }
    }
    for (const auto& g : runs) by_name[g.name] = &g;
    const double corpus_time = seconds_since(t0);
    bool all = true;

    // 1. four-way rank agreement
    {
        std::vector<std::string> bad = setup_errors;
        for (const auto& g : runs) {
            std::size_t r = g.oracle.rank;
            if (g.yoshida.rank != r || g.sections.rank != r || g.limit.rank != r)
                bad.push_back(g.name + " (" + std::to_string(r) + "/" + std::to_string(g.yoshida.rank) + "/" +
                              std::to_string(g.sections.rank) + "/" + std::to_string(g.limit.rank) + ")");
        }
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu groups, all four methods in %.1fs; mismatches: ", runs.size(), corpus_time);
        all &= report(1, "oracle, Yoshida, section and limit ranks agree", bad.empty() && runs.size() == corpus().size(),
                      buf + join(bad));
    }

    // 2. odd order
    {
        std::vector<std::string> bad;
        for (const char* s : {"C3", "C5", "C7", "C9", "C15", "C21", "C27", "C3xC3"}) {
            auto it = by_name.find(s);
            if (it == by_name.end() || it->second->oracle.rank != 1 || it->second->limit.rank != 1) bad.push_back(s);
        }
        all &= report(2, "groups of odd order have exactly the units +1 and -1", bad.empty(), "8 groups; failures: " + join(bad));
    }

    // 3. dimension identity
    {
        std::vector<std::string> bad;
        for (const auto& g : runs)
            if (g.kernel.dim_F2B != g.kernel.dim_L + g.oracle.rank || g.kernel.rank_source != UnitMethod::Oracle)
                bad.push_back(g.name);
        all &= report(3, "#classes = dim L(G) + rank of units", bad.empty() && !runs.empty(),
                      std::to_string(runs.size()) + " groups; failures: " + join(bad));
    }

    // 4. epsilon identities
    {
        auto a = epsilon_identities();
        auto b = remark_invariant_forms();
        std::vector<std::string> bad;
        for (const auto* rep : {&a, &b})
            for (const auto& c : rep->checks)
                if (!c.ok) bad.push_back(c.name);
        all &= report(4, "restriction and faithful-idempotent identities for epsilon", bad.empty(),
                      std::to_string(a.checks.size() + b.checks.size()) + " identities; failures: " + join(bad));
    }

    // 5. faithful units
    {
        std::vector<std::string> bad;
        for (const char* s : {"D8", "D16"}) {
            auto r = make_ring(build_preset(s));
            auto f = faithful_units(*r);
            auto d = reflection_data(*r);
            IntElem upsilon{std::vector<std::int64_t>(r->rank(), 0)};
            upsilon.coeffs[r->whole_class()] += 1;
            upsilon.coeffs[r->trivial_class()] += 1;
            upsilon.coeffs[d.I] -= 1;
            upsilon.coeffs[d.J] -= 1;
            bool ok = f.size() == 2 && std::count(f.begin(), f.end(), one<std::int64_t>(*r)) == 1 &&
                      std::count(f.begin(), f.end(), upsilon) == 1;
            if (!ok) bad.push_back(s);
        }
        for (const char* s : {"SD16", "Q8", "C2^2", "C4"}) {
            auto r = make_ring(build_preset(s));
            auto f = faithful_units(*r);
            if (f.size() != 1 || f[0] != one<std::int64_t>(*r)) bad.push_back(s);
        }
        all &= report(5, "faithful units: {1, upsilon} for D8 and D16, trivial for SD16, Q8, C2^2, C4", bad.empty(),
                      "failures: " + join(bad));
    }

    // 6. idempotents
    {
        std::vector<std::string> bad;
        std::size_t checked = 0;
        for (const auto& g : runs) {
            if (g.ring->group.order > 24) continue;
            ++checked;
            const Ring& r = *g.ring;
            const std::size_t n = r.rank();
            auto mu = moebius(r.table);
            std::vector<RatElem> es;
            RatElem sum{std::vector<Rational>(n, Rational(0))};
            bool ok = true;
            for (std::size_t c = 0; c < n; ++c) {
                es.push_back(idempotent(r, mu, c));
                sum = sum + es.back();
                auto m = marks(r, es.back());
                for (std::size_t k = 0; k < n; ++k) ok = ok && m[k] == Rational(k == c ? 1 : 0);
            }
            ok = ok && sum == one<Rational>(r);
            const RatElem zero{std::vector<Rational>(n, Rational(0))};
            for (std::size_t a = 0; a < n && ok; ++a)
                for (std::size_t b = 0; b < n && ok; ++b) ok = mul(r, es[a], es[b]) == (a == b ? es[a] : zero);
            if (!ok) bad.push_back(g.name);
        }
        all &= report(6, "idempotents are orthogonal mark indicators summing to 1", bad.empty() && checked > 0,
                      std::to_string(checked) + " groups of order <= 24; failures: " + join(bad));
    }

    // 7. transitive biset factorization
    {
        auto start = std::chrono::steady_clock::now();
        const std::vector<std::string> names{"C2", "C3", "C4", "C2^2", "D8"};
        std::vector<RingPtr> rings;
        for (const auto& s : names) rings.push_back(make_ring(build_preset(s)));
        std::size_t total = 0;
        std::vector<std::string> bad;
        for (std::size_t i = 0; i < names.size(); ++i) {
            SubquotientCache left(rings[i]);
            for (std::size_t j = 0; j < names.size(); ++j) {
                SubquotientCache right(rings[j]);
                auto p = make_product(rings[i], rings[j]);
                std::size_t mismatches = 0;
                for (std::size_t x = 0; x < p.table.size(); ++x, ++total)
                    if (!(transitive_biset(p, x) == factorize(p, x, left, right).product())) ++mismatches;
                if (mismatches) bad.push_back(names[i] + "x" + names[j] + " (" + std::to_string(mismatches) + ")");
            }
        }
        double secs = seconds_since(start);
        char buf[160];
        std::snprintf(buf, sizeof buf, "25 pairs, %zu subgroups X in %.2fs; mismatches: ", total, secs);
        all &= report(7, "(H x G)/X equals Indinf . Iso . Defres", bad.empty() && secs < 60.0, buf + join(bad));
    }

    // 8. units satisfy every condition
    {
        std::vector<std::string> bad;
        std::size_t pairs = 0;
        for (const auto& g : runs) {
            bool ok = true;
            for (const auto& phi : g.oracle.unit_forms) {
                for (const auto& row : g.sections.conditions) ok = ok && !row.dot(phi.values);
                for (const auto& row : g.yoshida.conditions) ok = ok && !row.dot(phi.values);
                pairs += g.sections.conditions.size() + g.yoshida.conditions.size();
            }
            if (!ok) bad.push_back(g.name);
        }
        all &= report(8, "iota of every unit satisfies every section and Yoshida condition", bad.empty() && !runs.empty(),
                      std::to_string(pairs) + " unit/condition pairs; failures: " + join(bad));
    }

    std::printf("acceptance: %s (%.1fs)\n", all ? "all criteria pass" : "FAILURES", seconds_since(t0));
    return all ? 0 : 1;
}

#pragma once

// Command-line front end. All logic lives in run() so tests can drive it
// in-process; main.cpp only forwards argv.
//
// Exit codes: 0 success, 1 internal error, 2 parse error, 3 guard exceeded,
// 4 cross-check failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "burnside_lab/burnside_lab.hpp"

namespace burnside_lab::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kInternal = 1, kParse = 2, kGuard = 3, kMismatch = 4 };

enum class Format { Plain, Json, Csv };

struct RunConfig {
    std::string command;
    std::vector<std::string> specs;
    std::string method = "oracle";
    std::string family;
    std::size_t max_order = 32;
    Format format = Format::Plain;
    Guards guards;
    bool skip_oracle = false;
    bool witnesses = false;
    std::uint64_t seed = 1;
};

/// A command's result in every output format. csv_rows[0] is the header.
struct Output {
    Json doc;
    std::string plain;
    std::vector<std::vector<std::string>> csv_rows;
    int code = kOk;
};

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline void emit(const Output& o, Format f, std::ostream& out) {
    switch (f) {
        case Format::Json: out << o.doc.dump(2) << "\n"; break;
        case Format::Plain: out << o.plain; break;
        case Format::Csv:
            for (const auto& row : o.csv_rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
                out << "\n";
            }
            break;
    }
}

inline Json header(const std::string& spec, const Ring& r) {
    Json doc;
    doc["group"] = spec;
    doc["order"] = r.group.order;
    doc["classes"] = class_names(r);
    return doc;
}

inline Json elem_json(const std::vector<std::string>& names, const IntElem& x) {
    Json j = Json::object();
    for (std::size_t k = 0; k < x.coeffs.size(); ++k)
        if (x.coeffs[k]) j[names[k]] = x.coeffs[k];
    return j;
}

inline std::string elem_text(const std::vector<std::string>& names, const IntElem& x) {
    std::ostringstream s;
    bool first = true;
    for (std::size_t k = x.coeffs.size(); k-- > 0;) {
        auto c = x.coeffs[k];
        if (!c) continue;
        s << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (std::abs(c) != 1) s << std::abs(c) << "*";
        s << "G/" << names[k];
        first = false;
    }
    return first ? "0" : s.str();
}

inline std::vector<std::string> support(const std::vector<std::string>& names, const BitVector& v) {
    std::vector<std::string> out;
    v.for_each_set([&](std::size_t k) { out.push_back(names[k]); });
    return out;
}

inline std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
    return out;
}

inline std::string size_text(std::size_t rank) {
    return rank < 63 ? std::to_string(std::uint64_t{1} << rank) : "2^" + std::to_string(rank);
}

// ---------------------------------------------------------------------------
// Commands

inline Output cmd_marks(const std::string& spec, const RunConfig& cfg) {
    auto r = make_ring(build_preset(spec, cfg.guards), cfg.guards);
    auto names = class_names(*r);
    const std::size_t n = r->rank();
    Output o;
    o.doc = header(spec, *r);
    Json rows = Json::array();
    std::ostringstream plain;
    std::size_t width = 4;
    for (const auto& s : names) width = std::max(width, s.size() + 1);
    plain << std::string(width, ' ');
    for (const auto& s : names) plain << std::string(width - s.size(), ' ') << s;
    plain << "\n";
    o.csv_rows.push_back({"G/H"});
    for (const auto& s : names) o.csv_rows[0].push_back(s);
    for (std::size_t h = 0; h < n; ++h) {
        Json row = Json::array();
        std::vector<std::string> csv{names[h]};
        plain << names[h] << std::string(width - names[h].size(), ' ');
        for (std::size_t k = 0; k < n; ++k) {
            row.push_back(r->marks(h, k));
            auto cell = std::to_string(r->marks(h, k));
            csv.push_back(cell);
            plain << std::string(width - cell.size(), ' ') << cell;
        }
        plain << "\n";
        rows.push_back(std::move(row));
        o.csv_rows.push_back(std::move(csv));
    }
    o.doc["result"]["marks"] = std::move(rows);
    o.plain = plain.str();
    return o;
}

inline Output cmd_subgroups(const std::string& spec, const RunConfig& cfg) {
    auto r = make_ring(build_preset(spec, cfg.guards), cfg.guards);
    auto names = class_names(*r);
    const SubgroupTable& t = r->table;
    Output o;
    o.doc = header(spec, *r);
    Json classes = Json::array();
    std::ostringstream plain;
    plain << spec << ": order " << r->group.order << ", " << t.size() << " subgroups in " << t.class_count()
          << " classes\n";
    o.csv_rows.push_back({"class", "order", "conjugates", "normalizer_order", "normal"});
    for (std::size_t c = 0; c < t.class_count(); ++c) {
        const std::size_t ord = t.rep(c).order, size = t.class_size[c], norm = t.normalizers[c].order;
        bool normal = size == 1;
        classes.push_back({{"name", names[c]}, {"order", ord}, {"conjugates", size}, {"normalizer_order", norm}, {"normal", normal}});
        o.csv_rows.push_back({names[c], std::to_string(ord), std::to_string(size), std::to_string(norm), normal ? "true" : "false"});
        plain << "  " << names[c] << "  order " << ord << "  conjugates " << size << "  |N| " << norm << (normal ? "  normal" : "")
              << "\n";
    }
    o.doc["result"]["subgroup_count"] = t.size();
    o.doc["result"]["classes"] = std::move(classes);
    o.plain = plain.str();
    return o;
}

inline std::optional<UnitMethod> parse_method(const std::string& m) {
    if (m == "oracle") return UnitMethod::Oracle;
    if (m == "yoshida") return UnitMethod::Yoshida;
    if (m == "sections") return UnitMethod::Sections;
    if (m == "limit") return UnitMethod::Limit;
    return std::nullopt;
}

inline Output cmd_units(const std::string& spec, const RunConfig& cfg) {
    auto r = make_ring(build_preset(spec, cfg.guards), cfg.guards);
    auto names = class_names(*r);
    Output o;
    o.doc = header(spec, *r);
    std::ostringstream plain;
    plain << spec << ": order " << r->group.order << ", " << r->rank() << " classes\n";
    o.csv_rows.push_back({"method", "rank", "units"});

    if (cfg.method == "all") {
        Json ranks;
        std::optional<std::size_t> common;
        bool match = true;
        for (auto m : {UnitMethod::Oracle, UnitMethod::Yoshida, UnitMethod::Sections, UnitMethod::Limit}) {
            if (m == UnitMethod::Oracle && cfg.skip_oracle) {
                ranks[to_string(m)] = nullptr;
                plain << "  " << to_string(m) << ": skipped\n";
                o.csv_rows.push_back({to_string(m), "", ""});
                continue;
            }
            auto d = compute_units(m, r, cfg.guards);
            ranks[to_string(m)] = d.rank;
            if (common && *common != d.rank) match = false;
            common = d.rank;
            plain << "  " << to_string(m) << ": rank " << d.rank << "\n";
            o.csv_rows.push_back({to_string(m), std::to_string(d.rank), size_text(d.rank)});
        }
        o.doc["result"]["ranks"] = ranks;
        o.doc["result"]["match"] = match;
        plain << "  match: " << (match ? "true" : "false") << "\n";
        if (!match) o.code = kMismatch;
        o.plain = plain.str();
        return o;
    }

    auto m = parse_method(cfg.method);
    if (!m) throw parse_error("unknown method '" + cfg.method + "'");
    auto d = compute_units(*m, r, cfg.guards);
    o.doc["result"]["method"] = to_string(*m);
    o.doc["result"]["rank"] = d.rank;
    o.doc["result"]["units"] = size_text(d.rank);
    plain << "  " << to_string(*m) << ": rank " << d.rank << ", |B^x| = " << size_text(d.rank) << "\n";
    o.csv_rows.push_back({to_string(*m), std::to_string(d.rank), size_text(d.rank)});
    if (cfg.witnesses) {
        Json w = Json::array();
        if (*m == UnitMethod::Oracle) {
            for (const auto& phi : d.unit_forms) {
                auto u = *unit_from_form(*r, phi);
                w.push_back(elem_json(names, u));
                plain << "    " << elem_text(names, u) << "\n";
            }
            o.doc["result"]["unit_list"] = std::move(w);
        } else {
            for (const auto& phi : d.form_basis) {
                auto s = support(names, phi.values);
                w.push_back(s);
                plain << "    phi = 1 on {" << join(s, ", ") << "}\n";
            }
            o.doc["result"]["form_basis"] = std::move(w);
        }
    }
    o.plain = plain.str();
    return o;
}

inline Output cmd_kernel(const std::string& spec, const RunConfig& cfg) {
    auto r = make_ring(build_preset(spec, cfg.guards), cfg.guards);
    auto names = class_names(*r);
    auto k = kernel_L(r, spec, cfg.guards);
    const KernelReport& rep = k.report;
    Output o;
    o.doc = header(spec, *r);
    Json basis = Json::array();
    for (const auto& b : k.basis) basis.push_back(support(names, b));
    o.doc["result"] = {{"dim_F2B", rep.dim_F2B},
                       {"dim_L", rep.dim_L},
                       {"rank_units", rep.rank_units},
                       {"rank_source", to_string(rep.rank_source)},
                       {"generators_used", rep.generators_used},
                       {"exactness_ok", rep.exactness_ok},
                       {"basis", std::move(basis)}};
    std::ostringstream plain;
    plain << spec << ": dim F2B = " << rep.dim_F2B << ", dim L = " << rep.dim_L << ", rank B^x = " << rep.rank_units
          << " (" << to_string(rep.rank_source) << "), exact: " << (rep.exactness_ok ? "true" : "false") << "\n";
    plain << "  generators from sections: " << join(rep.generators_used) << "\n";
    for (const auto& b : k.basis) plain << "  {" << join(support(names, b), ", ") << "}\n";
    o.csv_rows = {{"group", "dim_F2B", "dim_L", "rank_units", "exactness_ok"},
                  {spec, std::to_string(rep.dim_F2B), std::to_string(rep.dim_L), std::to_string(rep.rank_units),
                   rep.exactness_ok ? "true" : "false"}};
    if (!rep.exactness_ok) o.code = kMismatch;
    o.plain = plain.str();
    return o;
}

/// Every per-group check: ring axioms on random elements, idempotents, the
/// four unit methods, exactness, image containment, and the epsilon
/// identities that apply to this group.
inline IdentityReport verify_group(const RingPtr& r, const Guards& guards, std::uint64_t seed) {
    using K = IsoClassLabel::Kind;
    IdentityReport rep;
    auto add = [&](std::string name, bool ok) { rep.checks.push_back({std::move(name), ok}); };
    const std::size_t n = r->rank();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> coef(-3, 3);
    auto random_elem = [&] {
        IntElem x{std::vector<std::int64_t>(n)};
        for (auto& c : x.coeffs) c = coef(rng);
        return x;
    };
    bool ring_ok = true;
    for (int i = 0; i < 8 && ring_ok; ++i) {
        auto a = random_elem(), b = random_elem(), c = random_elem();
        ring_ok = mul(*r, mul(*r, a, b), c) == mul(*r, a, mul(*r, b, c)) && mul(*r, a, b) == mul(*r, b, a) &&
                  mul(*r, a, b + c) == mul(*r, a, b) + mul(*r, a, c);
    }
    add("ring axioms on random elements", ring_ok);

    if (n <= 64) {
        auto mu = moebius(r->table);
        bool ok = true;
        RatElem sum{std::vector<Rational>(n, Rational(0))};
        for (std::size_t c = 0; c < n && ok; ++c) {
            auto e = idempotent(*r, mu, c);
            auto m = marks(*r, e);
            for (std::size_t k = 0; k < n; ++k) ok = ok && m[k] == Rational(k == c ? 1 : 0);
            sum = sum + e;
        }
        add("idempotents are mark indicators summing to 1", ok && sum == one<Rational>(*r));
    }

    std::optional<UnitGroupDescription> oracle;
    try {
        oracle = units_oracle(*r, guards);
    } catch (const guard_error&) {
    }
    auto yosh = yoshida_rank(*r);
    auto thm = theorem_image_rank(r, guards);
    auto lim = sectional_limit_rank(r, guards);
    bool agree = yosh.rank == thm.rank && thm.rank == lim.rank && (!oracle || oracle->rank == yosh.rank);
    add(std::string("unit ranks agree") + (oracle ? "" : " (oracle skipped by guard)"), agree);

    auto k = kernel_L(r, "", guards);
    add("dim F2B = dim L + rank B^x", k.report.exactness_ok);

    if (oracle) {
        bool ok = true;
        for (const auto& phi : oracle->unit_forms) {
            for (const auto& row : thm.conditions) ok = ok && !row.dot(phi.values);
            for (const auto& row : yosh.conditions) ok = ok && !row.dot(phi.values);
            auto u = unit_from_form(*r, phi);
            ok = ok && u && mul(*r, *u, *u) == one<std::int64_t>(*r);
        }
        add("every unit satisfies the section and Yoshida conditions", ok);
    }

    IsoClassLabel label = classify(r->group);
    if (in_class_r(label)) {
        auto e = epsilon(*r);
        add("f1 fixes epsilon", f1_apply(*r, e) == e);
        add("f1 of seed is epsilon", f1_apply(*r, epsilon_seed(*r)) == e);
    }
    if (label.kind == K::Semidihedral) {
        for (auto s : subgroup_classes_where(*r, r->group.order / 2, [](const IsoClassLabel& l) { return l.kind == K::Dihedral; }))
            add("Res to the dihedral subgroup preserves epsilon-bar", restriction_preserves_epsilon(r, s, guards));
    }
    if (label.kind == K::Dihedral) {
        for (auto s : subgroup_classes_where(*r, 4, [](const IsoClassLabel& l) { return l.kind == K::Klein4; }))
            add("Res to a Klein subgroup preserves epsilon-bar", restriction_preserves_epsilon(r, s, guards));
    }
    return rep;
}

inline Output cmd_verify(const std::string& spec, const RunConfig& cfg) {
    auto r = make_ring(build_preset(spec, cfg.guards), cfg.guards);
    auto rep = verify_group(r, cfg.guards, cfg.seed);
    auto k = kernel_L(r, spec, cfg.guards).report;
    Output o;
    o.doc = header(spec, *r);
    Json checks = Json::array();
    std::ostringstream plain;
    plain << spec << ": rank " << k.rank_units << ", dim_L " << k.dim_L << "\n";
    o.csv_rows.push_back({"check", "ok"});
    for (const auto& c : rep.checks) {
        checks.push_back({{"name", c.name}, {"ok", c.ok}});
        plain << "  [" << (c.ok ? "PASS" : "FAIL") << "] " << c.name << "\n";
        o.csv_rows.push_back({c.name, c.ok ? "true" : "false"});
    }
    o.doc["result"] = {{"rank", k.rank_units}, {"dim_L", k.dim_L}, {"exactness_ok", k.exactness_ok},
                       {"checks", std::move(checks)}, {"pass", rep.all_ok()}};
    plain << (rep.all_ok() ? "pass\n" : "FAIL\n");
    if (!rep.all_ok()) o.code = kMismatch;
    o.plain = plain.str();
    return o;
}

inline std::vector<std::string> family_members(const std::string& family, std::size_t max_order) {
    std::vector<std::string> out;
    if (family == "cyclic") {
        for (std::size_t n = 1; n <= max_order; ++n) out.push_back("C" + std::to_string(n));
    } else if (family == "dihedral") {
        for (std::size_t n = 8; n <= max_order; n *= 2) out.push_back("D" + std::to_string(n));
    } else if (family == "semidihedral") {
        for (std::size_t n = 16; n <= max_order; n *= 2) out.push_back("SD" + std::to_string(n));
    } else if (family == "quaternion") {
        for (std::size_t n = 8; n <= max_order; n *= 2) out.push_back("Q" + std::to_string(n));
    } else if (family == "elementary-abelian") {
        for (std::size_t k = 1; (std::size_t{1} << k) <= max_order; ++k) out.push_back("C2^" + std::to_string(k));
    } else {
        throw parse_error("unknown family '" + family + "'");
    }
    return out;
}

struct TableRow {
    std::string group;
    std::size_t classes = 0;
    std::size_t rank = 0;
    std::size_t dim_L = 0;
    bool methods_agree = false;
};

inline TableRow table_row(const std::string& spec, const RunConfig& cfg) {
    auto r = make_ring(build_preset(spec, cfg.guards), cfg.guards);
    auto k = kernel_L(r, spec, cfg.guards).report;
    std::size_t y = yoshida_rank(*r).rank;
    std::size_t t = theorem_image_rank(r, cfg.guards).rank;
    std::size_t l = sectional_limit_rank(r, cfg.guards).rank;
    bool agree = y == t && t == l && k.rank_units == y && k.exactness_ok;
    return TableRow{spec, r->rank(), k.rank_units, k.dim_L, agree};
}

inline std::size_t thread_budget() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BURNSIDE_LAB_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) n = v;
    }
    return n;
}

inline Output cmd_table(const RunConfig& cfg) {
    auto specs = family_members(cfg.family, cfg.max_order);
    std::vector<std::optional<TableRow>> rows(specs.size());
    std::vector<std::exception_ptr> errors(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < specs.size();) {
            try {
                rows[i] = table_row(specs[i], cfg);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t nthreads = std::min(thread_budget(), specs.size());
    for (std::size_t i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    Output o;
    o.doc["group"] = "family:" + cfg.family;
    o.doc["order"] = nullptr;
    o.doc["classes"] = Json::array();
    Json jrows = Json::array();
    std::ostringstream plain;
    o.csv_rows.push_back({"group", "classes", "rank", "dim_L", "methods_agree"});
    char line[96];
    std::snprintf(line, sizeof line, "%-10s %7s %5s %6s  %s\n", "group", "classes", "rank", "dim_L", "methods_agree");
    plain << line;
    bool all = true;
    for (const auto& row : rows) {
        jrows.push_back({{"group", row->group}, {"classes", row->classes}, {"rank", row->rank}, {"dim_L", row->dim_L},
                         {"methods_agree", row->methods_agree}});
        o.csv_rows.push_back({row->group, std::to_string(row->classes), std::to_string(row->rank),
                              std::to_string(row->dim_L), row->methods_agree ? "true" : "false"});
        std::snprintf(line, sizeof line, "%-10s %7zu %5zu %6zu  %s\n", row->group.c_str(), row->classes, row->rank,
                      row->dim_L, row->methods_agree ? "true" : "false");
        plain << line;
        all = all && row->methods_agree;
    }
    o.doc["result"] = {{"family", cfg.family}, {"max_order", cfg.max_order}, {"rows", std::move(jrows)}};
    if (!all) o.code = kMismatch;
    o.plain = plain.str();
    return o;
}

inline Output cmd_factorize(const std::string& hspec, const std::string& gspec, const RunConfig& cfg) {
    auto h = make_ring(build_preset(hspec, cfg.guards), cfg.guards);
    auto g = make_ring(build_preset(gspec, cfg.guards), cfg.guards);
    auto p = make_product(h, g, cfg.guards);
    SubquotientCache lc(h, cfg.guards), rc(g, cfg.guards);
    Output o;
    o.doc["group"] = hspec + " x " + gspec;
    o.doc["order"] = p.group.order;
    o.doc["classes"] = Json::array();
    Json xs = Json::array();
    std::ostringstream plain;
    o.csv_rows.push_back({"X", "order", "p1", "k1", "p2", "k2", "quotient", "matches"});
    std::size_t bad = 0;
    for (std::size_t x = 0; x < p.table.size(); ++x) {
        auto f = factorize(p, x, lc, rc);
        bool ok = transitive_biset(p, x) == f.product();
        bad += !ok;
        const auto& s = f.parts;
        std::string q = classify(f.iso.target->group).str();
        std::size_t ord = p.table.subgroups[x].order;
        xs.push_back({{"X", x}, {"order", ord}, {"p1", s.p1.count()}, {"k1", s.k1.count()}, {"p2", s.p2.count()},
                      {"k2", s.k2.count()}, {"quotient", q}, {"matches", ok}});
        o.csv_rows.push_back({std::to_string(x), std::to_string(ord), std::to_string(s.p1.count()), std::to_string(s.k1.count()),
                              std::to_string(s.p2.count()), std::to_string(s.k2.count()), q, ok ? "true" : "false"});
    }
    plain << hspec << " x " << gspec << ": " << p.table.size() << " subgroups X, " << (p.table.size() - bad)
          << " factorizations match the direct biset action\n";
    o.doc["result"] = {{"subgroups", p.table.size()}, {"mismatches", bad}, {"factorizations", std::move(xs)}};
    if (bad) o.code = kMismatch;
    o.plain = plain.str();
    return o;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string format = "plain";
    CLI::App app{"Units of Burnside rings of finite groups", "burnside-lab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "json", "csv"}));
    app.add_option("--max-elements", cfg.guards.max_elements, "Largest group order accepted")->check(CLI::PositiveNumber);
    app.add_option("--max-subgroups", cfg.guards.max_subgroups, "Largest subgroup count accepted")->check(CLI::PositiveNumber);
    app.add_option("--oracle-bits", cfg.guards.oracle_bits, "Oracle search visits at most 2^N nodes")->check(CLI::Range(1u, 40u));
    app.add_option("--seed", cfg.seed, "Seed for randomized checks");

    std::string spec, hspec, gspec;
    auto* marks_cmd = app.add_subcommand("marks", "Table of marks");
    marks_cmd->add_option("group", spec)->required();
    auto* subs_cmd = app.add_subcommand("subgroups", "Conjugacy classes of subgroups");
    subs_cmd->add_option("group", spec)->required();
    auto* units_cmd = app.add_subcommand("units", "Rank of the unit group");
    units_cmd->add_option("group", spec)->required();
    units_cmd->add_option("--method", cfg.method)->check(CLI::IsMember({"oracle", "yoshida", "sections", "limit", "all"}));
    units_cmd->add_flag("--witnesses", cfg.witnesses, "List units (oracle) or a form basis");
    units_cmd->add_flag("--skip-oracle", cfg.skip_oracle, "Leave the oracle out of --method all");
    auto* kernel_cmd = app.add_subcommand("kernel", "Subspace L(G) and the dimension identity");
    kernel_cmd->add_option("group", spec)->required();
    auto* verify_cmd = app.add_subcommand("verify", "Run every check for one group");
    verify_cmd->add_option("group", spec)->required();
    auto* table_cmd = app.add_subcommand(
        "table", "Sweep a family; CSV columns: group,classes,rank,dim_L,methods_agree");
    table_cmd->add_option("--family", cfg.family)
        ->required()
        ->check(CLI::IsMember({"cyclic", "dihedral", "semidihedral", "quaternion", "elementary-abelian"}));
    table_cmd->add_option("--max-order", cfg.max_order)->check(CLI::PositiveNumber);
    auto* fact_cmd = app.add_subcommand("factorize", "Factor every transitive biset (H x G)/X");
    fact_cmd->add_option("H", hspec)->required();
    fact_cmd->add_option("G", gspec)->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        std::ostream& sink = e.get_exit_code() == 0 ? out : err;
        int code = app.exit(e, sink, sink);
        return code == 0 ? kOk : kParse;
    }
    cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Plain;

    try {
        Output o;
        if (marks_cmd->parsed()) o = cmd_marks(spec, cfg);
        else if (subs_cmd->parsed()) o = cmd_subgroups(spec, cfg);
        else if (units_cmd->parsed()) o = cmd_units(spec, cfg);
        else if (kernel_cmd->parsed()) o = cmd_kernel(spec, cfg);
        else if (verify_cmd->parsed()) o = cmd_verify(spec, cfg);
        else if (table_cmd->parsed()) o = cmd_table(cfg);
        else o = cmd_factorize(hspec, gspec, cfg);
        emit(o, cfg.format, out);
        return o.code;
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    } catch (const unsupported_error& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    } catch (const guard_error& e) {
        err << "guard exceeded: " << e.what() << "\n";
        return kGuard;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

}  // namespace burnside_lab::cli

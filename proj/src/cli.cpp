/*
   Copyright 2026 The ay-surfaces Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ay/cli.hpp"

#include "ay/binseq.hpp"
#include "ay/builders.hpp"
#include "ay/iet.hpp"
#include "ay/io.hpp"
#include "ay/numfield.hpp"
#include "ay/surface.hpp"
#include "ay/veech.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <ostream>
#include <random>

namespace ay::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Report {
    std::string command;
    bool ok = true;
    std::string summary;
    Json result = Json::object();
};

Rational rational_arg(const std::string& text, const char* what) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + ": expected p/q, got '" + text + "'");
    }
}

BinSeq binseq_arg(const std::string& text) {
    try {
        return BinSeq::parse(text);
    } catch (const std::exception& e) {
        throw UsageError("--point: " + std::string(e.what()));
    }
}

Json integer_json(const Integer& n) {
    if (n.fits_slong_p()) return Json(n.get_si());
    return Json(n.get_str());
}

std::string signed_str(const Integer& n) { return (sgn(n) > 0 ? "+" : "") + n.get_str(); }

Json check_json(const CheckItem& c) { return Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}}; }

// ---------------------------------------------------------------------------
// build

struct BuildOpts {
    std::string genus = "3";
    int truncation = 6;
    std::string presentation = "staircase";
    std::string format = "json";
    std::string path;
};

Report do_build(const BuildOpts& o, std::ostream& out) {
    Surface s(NumberField::get(1));
    std::string name;
    if (o.genus == "inf") {
        if (o.truncation < 1) throw UsageError("--truncation must be >= 1");
        s = build_limit_truncation(o.truncation);
        name = "ay_inf_N" + std::to_string(o.truncation);
    } else {
        int g = 0;
        try {
            g = std::stoi(o.genus);
        } catch (const std::exception&) {
            throw UsageError("--genus: expected an integer or 'inf'");
        }
        if (g < 1) throw UsageError("--genus must be >= 1");
        if (o.presentation == "triangles") {
            if (g < 3) throw UsageError("the triangle presentation needs genus >= 3");
            s = build_triangulation(g);
        } else {
            s = g == 1 ? build_unit_torus() : build_staircase(g);
        }
        name = "ay_g" + o.genus + "_" + o.presentation;
    }
    std::string content = o.format == "svg" ? to_svg(s, name) : to_json(s).dump(2) + "\n";
    std::string path = o.path;
    if (path.empty())
        if (const char* dir = std::getenv(output_dir_env); dir && *dir)
            path = (std::filesystem::path(dir) / (name + "." + o.format)).string();
    Report r;
    r.command = "build";
    Topology top = euler_genus(s);
    Json windings = Json::array();
    for (int w : singular_windings(s)) windings.push_back(w);
    Json genera = Json::array();
    for (const auto& c : top.components) genera.push_back(c.genus);
    r.result = Json{{"name", name},
                    {"format", o.format},
                    {"path", path.empty() ? Json() : Json(path)},
                    {"triangles", s.size()},
                    {"component_genera", genera},
                    {"genus", top.genus},
                    {"cone_windings", windings},
                    {"area", to_json(area(s))}};
    r.summary = "built " + name + " (" + std::to_string(s.size()) + " triangles)";
    if (path.empty()) {
        out << content;
        r.result = Json();
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw UsageError("cannot write " + path);
        f << content;
        r.summary += " -> " + path;
    }
    return r;
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
    std::string name;
    std::vector<CheckItem> checks;
};

std::vector<CheckItem> suite_bounds(int g, std::uint64_t) {
    std::vector<CheckItem> c;
    c.push_back({"half_bound", check_half_bound(g), "1/2^(g+2) < alpha - 1/2 < 1/2^(g+1)"});
    RootInterval iv = alpha_root(g, Rational(1, 1 << 20));
    Rational lo = Rational(1, 2) + Rational(1) / (Integer(1) << (g + 2));
    Rational hi = Rational(1, 2) + Rational(1) / (Integer(1) << (g + 1));
    c.push_back({"isolating_interval", lo < iv.lo && iv.hi < hi,
                 "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "]"});
    return c;
}

std::vector<CheckItem> suite_iet(int g, std::uint64_t seed) {
    std::vector<CheckItem> c;
    IntervalExchange f = build_f_g(g);
    IntervalExchange finv = iet_inverse(f);
    c.push_back({"bijection", f.is_bijection(), std::to_string(f.size()) + " pieces"});
    c.push_back({"inverse", iet_compose(f, finv) == IntervalExchange::identity(f.length()), "f o f^-1 = id"});
    IntervalExchange half = build_half_rotation(g);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(0, (1L << 20) - 1);
    const NumberField& F = f.field();
    bool ok_round = true, ok_rho = true;
    std::string bad;
    for (int k = 0; k < 200; ++k) {
        NFElem x(F, Rational(num(rng), 1L << 20));
        if (!(finv.apply(f.apply(x)) == x)) ok_round = false, bad = to_string(x.rational_value());
        if (!(half.apply(f.apply(half.apply(x))) == finv.apply(x))) ok_rho = false, bad = to_string(x.rational_value());
    }
    c.push_back({"random_round_trip", ok_round, ok_round ? "200 seeded points" : "x = " + bad});
    c.push_back({"random_r_conjugacy", ok_rho, ok_rho ? "r f r = f^-1 on seeded points" : "x = " + bad});
    c.push_back({"half_rotation_involution", iet_compose(half, half) == IntervalExchange::identity(half.length()),
                 "x -> x +- 1/2 squared"});
    return c;
}

std::vector<CheckItem> suite_surface(int g, std::uint64_t) {
    std::vector<CheckItem> c;
    Surface st = build_staircase(g);
    Topology ts = euler_genus(st);
    c.push_back({"staircase_valid", validate(st).ok, std::to_string(st.size()) + " triangles"});
    c.push_back({"staircase_genus", ts.genus == g, "genus " + std::to_string(ts.genus)});
    c.push_back({"staircase_cones", singular_windings(st) == std::vector<int>{g, g}, "two cone points of winding g"});
    Section bottom = section_from_edges(st, staircase_bottom(st));
    IntervalExchange fg = build_f_g(g);
    c.push_back({"staircase_first_return", first_return_iet(st, bottom) == fg, "vertical first return = f_g"});
    Surface tr = build_triangulation(g);
    Topology tt = euler_genus(tr);
    c.push_back({"triangles_valid", validate(tr).ok && static_cast<int>(tr.size()) == 4 * g,
                 std::to_string(tr.size()) + " triangles"});
    c.push_back({"triangles_euler", tt.euler == 2 - 2 * g, "euler " + std::to_string(tt.euler)});
    c.push_back({"triangles_cones", tt.vertices == 2 && singular_windings(tr) == std::vector<int>{g, g},
                 std::to_string(tt.vertices) + " vertex classes"});
    c.push_back({"areas_equal", area(st) == area(tr), "staircase vs triangles"});
    TranslationMap m = find_translation_equivalence(st, tr);
    c.push_back({"translation_equivalent", m.ok, m.ok ? "staircase -> triangles" : m.reason});
    if (m.ok)
        c.push_back({"triangles_first_return", first_return_iet(tr, map_section(st, tr, m, bottom)) == fg,
                     "image of the staircase bottom"});
    return c;
}

std::vector<CheckItem> suite_psi(int g, std::uint64_t) { return verify_psi(g).items; }
std::vector<CheckItem> suite_rho(int g, std::uint64_t) { return verify_rho(g).items; }

using SuiteFn = std::function<std::vector<CheckItem>(int, std::uint64_t)>;

const std::map<std::string, std::pair<int, SuiteFn>>& suites() {
    // name -> (minimum genus, suite)
    static const std::map<std::string, std::pair<int, SuiteFn>> s{
        {"bounds", {2, suite_bounds}}, {"iet", {2, suite_iet}},   {"psi", {3, suite_psi}},
        {"rho", {3, suite_rho}},       {"surface", {3, suite_surface}},
    };
    return s;
}

Report do_verify(int g, const std::string& suite, std::uint64_t seed) {
    if (g < 2) throw UsageError("--genus must be >= 2");
    std::vector<std::string> names;
    if (suite == "all") {
        for (const auto& [name, entry] : suites())
            if (g >= entry.first) names.push_back(name);
    } else {
        auto it = suites().find(suite);
        if (it == suites().end()) throw UsageError("unknown suite " + suite);
        if (g < it->second.first)
            throw UsageError("suite " + suite + " needs genus >= " + std::to_string(it->second.first));
        names.push_back(suite);
    }
    std::vector<std::future<SuiteResult>> jobs;
    for (const auto& n : names)
        jobs.push_back(std::async(std::launch::async, [n, g, seed] {
            return SuiteResult{n, suites().at(n).second(g, seed)};
        }));
    std::vector<SuiteResult> results;
    for (auto& j : jobs) results.push_back(j.get());
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    Report r;
    r.command = "verify";
    Json arr = Json::array();
    Json first = Json();
    std::size_t total = 0, passed = 0;
    for (const auto& s : results) {
        Json checks = Json::array();
        bool ok = true;
        for (const auto& c : s.checks) {
            checks.push_back(check_json(c));
            ++total;
            passed += c.ok;
            if (!c.ok) {
                ok = false;
                if (first.is_null()) first = Json{{"suite", s.name}, {"check", c.name}, {"detail", c.detail}};
            }
        }
        arr.push_back(Json{{"name", s.name}, {"ok", ok}, {"checks", checks}});
    }
    r.ok = first.is_null();
    r.result = Json{{"genus", g}, {"suites", arr}, {"first_failure", first}};
    r.summary = "genus " + std::to_string(g) + ": " + std::to_string(passed) + "/" + std::to_string(total) +
                " checks passed";
    if (!r.ok) r.summary += "; first failure " + first["suite"].get<std::string>() + "/" +
                            first["check"].get<std::string>();
    return r;
}

// ---------------------------------------------------------------------------
// iet, infinite, trace, veech2

Report do_iet_orbit(int g, const std::string& start, long steps) {
    if (g < 2) throw UsageError("--genus must be >= 2");
    Rational x0 = rational_arg(start, "--start");
    if (x0 < 0 || x0 >= 1) throw UsageError("--start must lie in [0, 1)");
    IntervalExchange f = build_f_g(g);
    NFElem x(f.field(), x0);
    auto pts = orbit(f, x, steps);
    Json arr = Json::array();
    for (const auto& p : pts) arr.push_back(to_json(p));
    Json period = Json();
    for (std::size_t k = 1; k < pts.size(); ++k)
        if (pts[k] == x) {
            period = static_cast<long>(k);
            break;
        }
    Report r;
    r.command = "iet orbit";
    r.result = Json{{"genus", g}, {"start", to_string(x0)}, {"steps", steps}, {"first_return_to_start", period},
                    {"points", arr}};
    r.summary = "orbit of " + to_string(x0) + " under f_" + std::to_string(g) + ", " + std::to_string(pts.size()) +
                " points";
    return r;
}

Report do_infinite(const std::string& action, const std::string& point, const std::string& map, long power,
                   std::size_t samples, std::uint64_t seed) {
    Report r;
    r.command = "infinite " + action;
    if (action == "conjugacies") {
        ConjugacyReport c = verify_conjugacies(samples, seed);
        r.ok = c.ok;
        r.result = Json{{"samples", c.samples},
                        {"ok", c.ok},
                        {"failed_identity", c.ok ? Json() : Json(c.failed_identity)},
                        {"counterexample", c.counterexample ? Json(c.counterexample->str()) : Json()}};
        r.summary = c.ok ? "4 identities hold on " + std::to_string(c.samples) + " samples"
                         : "identity " + c.failed_identity + " fails";
        return r;
    }
    if (point.empty()) throw UsageError("--point is required");
    BinSeq a = binseq_arg(point);
    if (action == "apply") {
        std::optional<BinSeq> b;
        try {
            if (map == "f") {
                b = f_inf_pow(a, power);
            } else if (map == "finv") {
                b = f_inf_pow(a, -power);
            } else if (map == "F") {
                b = F_inf(a);
            } else if (map == "Finv") {
                b = F_inf_inv(a);
            } else if (auto gen = parse_generator(map)) {
                b = apply_generator(a, *gen);
            } else {
                throw UsageError("unknown map " + map);
            }
        } catch (const NoPreimage&) {
            b.reset();
        }
        r.result = Json{{"input", a.str()},
                        {"input_value", to_string(a.value())},
                        {"map", map},
                        {"power", power},
                        {"output", b ? Json(b->str()) : Json()},
                        {"output_value", b ? Json(to_string(b->value())) : Json()},
                        {"no_preimage", !b}};
        r.summary = map + "(" + a.str() + ") = " + (b ? b->str() : std::string("no preimage"));
        return r;
    }
    if (action == "classify" || action == "orbit-index") {
        if (!a.is_dyadic()) throw UsageError("--point must be dyadic (period 0)");
        OrbitClassification c = classify_orbit(a);
        std::string base = c.base == OrbitBase::zero ? "0" : "1/2";
        r.result = Json{{"point", a.str()}, {"value", to_string(a.value())}, {"base", base}, {"n", integer_json(c.n)}};
        if (action == "orbit-index") {
            r.result["ind"] = ind(a);
            Integer absn = abs(c.n);
            if (absn <= 65536) {
                BinSeq b = f_inf_pow(BinSeq::parse(c.base == OrbitBase::zero ? "(0)" : "1(0)"), c.n.get_si());
                r.ok = b == a;
                r.result["verified_by_iteration"] = r.ok;
            } else {
                r.result["verified_by_iteration"] = Json();
            }
        }
        r.summary = "base=" + base + ", n=" + signed_str(c.n);
        return r;
    }
    throw UsageError("unknown infinite action " + action);
}

Report do_trace(int g, const std::string& xs, const std::string& direction, std::size_t budget) {
    if (g < 2) throw UsageError("--genus must be >= 2");
    if (direction != "vertical") throw UsageError("--direction: only 'vertical' is supported");
    Rational x0 = rational_arg(xs, "--x");
    if (x0 < 0 || x0 >= 1) throw UsageError("--x must lie in [0, 1)");
    Surface st = build_staircase(g);
    Section bottom = section_from_edges(st, staircase_bottom(st));
    NFElem x(st.field(), x0);
    auto [tri, p] = bottom.locate(x);
    TraceOptions opt;
    opt.budget = budget;
    opt.section = &bottom;
    const Vec up{NFElem(st.field()), NFElem(st.field(), Rational(1))};
    TraceResult t = trace(st, tri, p, up, opt);
    NFElem expect = build_f_g(g).apply(x);
    Report r;
    r.command = "trace";
    r.result = Json{{"genus", g},
                    {"x", to_string(x0)},
                    {"direction", direction},
                    {"kind", to_string(t.kind)},
                    {"length", to_json(t.length)},
                    {"crossings", t.crossings.size()},
                    {"return_position", t.section_position ? to_json(*t.section_position) : Json()},
                    {"f_g", to_json(expect)}};
    if (t.kind == TraceKind::returns_to_section) {
        r.ok = *t.section_position == expect;
        r.result["matches_f_g"] = r.ok;
        r.summary = "returns at " + std::to_string(t.section_position->to_double()) + " after length " +
                    std::to_string(t.length.to_double()) + (r.ok ? " (= f_g(x))" : " (differs from f_g(x))");
    } else {
        r.result["matches_f_g"] = Json();
        r.summary = to_string(t.kind) + " after length " + std::to_string(t.length.to_double());
    }
    return r;
}

Json mat_json(const Mat2& m) {
    auto e = [](const NFElem& x) { return x.is_rational() ? Json(to_string(x.rational_value())) : to_json(x); };
    return Json::array({Json::array({e(m.a), e(m.b)}), Json::array({e(m.c), e(m.d)})});
}

Report do_veech_check(const std::vector<long>& v) {
    if (v.size() != 4) throw UsageError("check needs X Y Z W");
    IntMat2 m{v[0], v[1], v[2], v[3]};
    if (m.det() != 1) throw UsageError("XW - YZ must be 1");
    bool crit = in_intersection(m);
    Mat2 c = conjugation_entries(m);
    bool integral = is_integral(c);
    bool agree = c == direct_conjugation(m) && integral == crit;
    Report r;
    r.command = "veech2 check";
    r.ok = agree;
    r.result = Json{{"matrix", Json::array({m.X, m.Y, m.Z, m.W})},
                    {"criterion", (m.X + 3 * m.Y + 3 * m.Z + 4 * m.W)},
                    {"in_intersection", crit},
                    {"conjugate", mat_json(c)},
                    {"integral", integral},
                    {"oracle_agrees", agree}};
    r.summary = crit ? "in intersection" : "not in intersection";
    if (!agree) r.summary += " (oracle disagrees)";
    return r;
}

Report do_veech_sweep(int range) {
    if (range < 0 || range > 40) throw UsageError("--range must be in [0, 40]");
    SweepResult s = sweep(range);
    Json ce = Json::array();
    for (const auto& m : s.counterexamples) ce.push_back(Json::array({m.X, m.Y, m.Z, m.W}));
    SublatticeReport sub = sublattice_index5();
    Json checks = Json::array();
    for (const auto& c : sub.checks) checks.push_back(Json{{"name", c.name}, {"ok", c.pass}, {"detail", c.detail}});
    Report r;
    r.command = "veech2 sweep";
    r.ok = s.disagreements == 0 && sub.ok;
    r.result = Json{{"range", range},         {"candidates", s.candidates}, {"members", s.members},
                    {"disagreements", s.disagreements}, {"counterexamples", ce}, {"sublattice", checks}};
    r.summary = std::to_string(s.candidates) + " matrices, " + std::to_string(s.members) + " in intersection, " +
                std::to_string(s.disagreements) + " disagreements";
    return r;
}

void emit(const Report& r, const std::vector<std::string>& args, std::uint64_t seed, int code, std::ostream& out,
          std::ostream& err) {
    err << r.summary << "\n";
    if (r.result.is_null()) return;
    Json j{{"tool", "ay"}, {"command", r.command}, {"args", args},          {"seed", seed},
           {"ok", r.ok},   {"exit_code", code},    {"summary", r.summary}, {"result", r.result}};
    out << j.dump(2) << "\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Arnoux-Yoccoz surfaces and interval exchanges", "ay"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = default_seed;
    app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();

    BuildOpts bo;
    auto* build = app.add_subcommand("build", "build a surface and write JSON or SVG");
    build->add_option("--genus", bo.genus, "genus, or 'inf' for the limit surface")->capture_default_str();
    build->add_option("--truncation", bo.truncation, "truncation depth for --genus inf")->capture_default_str();
    build->add_option("--presentation", bo.presentation)
        ->check(CLI::IsMember({"staircase", "triangles"}))
        ->capture_default_str();
    build->add_option("--out", bo.format)->check(CLI::IsMember({"json", "svg"}))->capture_default_str();
    build->add_option("--path", bo.path, "output file (default: $AY_OUTPUT_DIR or stdout)");

    int vg = 3;
    std::string vsuite = "all";
    auto* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--genus", vg)->capture_default_str();
    verify->add_option("--suite", vsuite)
        ->check(CLI::IsMember({"bounds", "iet", "surface", "psi", "rho", "all"}))
        ->capture_default_str();

    int ig = 3;
    std::string istart = "0";
    long isteps = 16;
    auto* iet = app.add_subcommand("iet", "orbits of f_g");
    auto* iorbit = iet->add_subcommand("orbit", "exact orbit of a rational point");
    iet->require_subcommand(1);
    iorbit->add_option("--genus", ig)->capture_default_str();
    iorbit->add_option("--start", istart, "p/q in [0, 1)")->capture_default_str();
    iorbit->add_option("--steps", isteps, "negative for backward iterates")->capture_default_str();

    std::string action, point, map = "f";
    long power = 1;
    std::size_t samples = 10000;
    auto* inf = app.add_subcommand("infinite", "the exchange f_inf on binary sequences");
    inf->add_option("action", action)
        ->required()
        ->check(CLI::IsMember({"apply", "classify", "orbit-index", "conjugacies"}));
    inf->add_option("--point", point, "binary sequence u(v), e.g. 11(0)");
    inf->add_option("--map", map, "f, finv, F, Finv, r, h1, h2, hinf")->capture_default_str();
    inf->add_option("--power", power, "iterate count for f and finv")->capture_default_str();
    inf->add_option("--samples", samples, "sample count for conjugacies")->capture_default_str();

    int tg = 3;
    std::string tx, tdir = "vertical";
    std::size_t tbudget = 100000;
    auto* tr = app.add_subcommand("trace", "vertical flow on the staircase from a bottom point");
    tr->add_option("--genus", tg)->capture_default_str();
    tr->add_option("--x", tx, "p/q in [0, 1)")->required();
    tr->add_option("--direction", tdir)->capture_default_str();
    tr->add_option("--budget", tbudget, "maximum triangle crossings")->capture_default_str();

    std::vector<long> quad;
    int range = 10;
    auto* veech = app.add_subcommand("veech2", "genus-2 lattice computation");
    veech->require_subcommand(1);
    auto* vcheck = veech->add_subcommand("check", "test one matrix (X Y Z W)");
    vcheck->add_option("entries", quad)->expected(4)->required()->allow_extra_args(false);
    auto* vsweep = veech->add_subcommand("sweep", "compare criterion and integrality over a box");
    vsweep->add_option("--range", range)->capture_default_str();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        Report r;
        if (*build) r = do_build(bo, out);
        else if (*verify) r = do_verify(vg, vsuite, seed);
        else if (*iorbit) r = do_iet_orbit(ig, istart, isteps);
        else if (*inf) r = do_infinite(action, point, map, power, samples, seed);
        else if (*tr) r = do_trace(tg, tx, tdir, tbudget);
        else if (*vcheck) r = do_veech_check(quad);
        else if (*vsweep) r = do_veech_sweep(range);
        int code = r.ok ? 0 : 1;
        emit(r, args, seed, code, out, err);
        return code;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace ay::cli

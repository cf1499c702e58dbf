// Acceptance run: one line per criterion, exact unless a tolerance is shown.

#include "ay/binseq.hpp"
#include "ay/builders.hpp"
#include "ay/iet.hpp"
#include "ay/numfield.hpp"
#include "ay/surface.hpp"
#include "ay/veech.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>

using namespace ay;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double limit_s;  // 0 = no runtime bound
    std::function<Outcome()> run;
};

bool power_of_two(const Rational& q) {
    if (sgn(q) <= 0) return false;
    Integer n = q.get_num(), d = q.get_den();
    return (n & (n - 1)) == 0 && (d & (d - 1)) == 0 && (n == 1 || d == 1);
}

Outcome root_bounds() {
    for (int g = 2; g <= 64; ++g)
        if (!check_half_bound(g)) return {false, "fails at g=" + std::to_string(g)};
    return {true, "g=2..64"};
}

Outcome self_similarity() {
    for (int g = 3; g <= 12; ++g) {
        IntervalExchange f = build_f_g(g);
        IntervalExchange induced = first_return(f, NFElem::alpha(g));
        if (!(conjugate(induced, build_h_g(g).inverse()) == f)) return {false, "fails at g=" + std::to_string(g)};
    }
    return {true, "g=3..12, IET equality"};
}

Outcome involution() {
    for (int g = 3; g <= 12; ++g) {
        IntervalExchange f = build_f_g(g), r = build_half_rotation(g);
        if (!(iet_compose(r, iet_compose(f, r)) == iet_inverse(f)))
            return {false, "fails at g=" + std::to_string(g)};
    }
    return {true, "g=3..12"};
}

Outcome surface_integrity() {
    for (int g = 3; g <= 8; ++g) {
        Surface tr = build_triangulation(g);
        std::string at = " at g=" + std::to_string(g);
        if (!validate(tr).ok || static_cast<int>(tr.size()) != 4 * g) return {false, "invalid complex" + at};
        Topology t = euler_genus(tr);
        if (t.euler != 2 - 2 * g) return {false, "euler " + std::to_string(t.euler) + at};
        if (t.vertices != 2 || singular_windings(tr) != std::vector<int>{g, g}) return {false, "cone points" + at};
        if (!(area(tr) == area(build_staircase(g)))) return {false, "area" + at};
    }
    return {true, "g=3..8: 4g triangles, euler 2-2g, windings (g,g), areas equal"};
}

Outcome suspension() {
    for (int g = 3; g <= 8; ++g) {
        Surface st = build_staircase(g);
        Section bottom = section_from_edges(st, staircase_bottom(st));
        if (!(first_return_iet(st, bottom) == build_f_g(g))) return {false, "fails at g=" + std::to_string(g)};
    }
    return {true, "g=3..8"};
}

Outcome non_hyperelliptic() {
    for (int g = 3; g <= 8; ++g) {
        Surface s = build_triangulation(g);
        auto pts = triangulation_points(g);
        std::string i = std::to_string(g - 1);
        Vec v = pts.at("Q" + i) - pts.at("P" + i);
        int same = 0;
        for (const auto& c : saddle_connections_within(s, norm2(v))) same += c.vector == v || c.vector == -v;
        Vec w = pts.at("Q1") - pts.at("P0");
        bool ok = g == 3 ? same == 2 && (w == v || w == -v) : same == 1;
        if (!ok) return {false, "g=" + std::to_string(g) + ": " + std::to_string(same) + " parallel equal vectors"};
    }
    return {true, "g=4..8: only the glued image; g=3: P0Q1"};
}

Outcome infinite_conjugacies() {
    ConjugacyReport r = verify_conjugacies(10000, 20260101);
    if (!r.ok) return {false, r.failed_identity + " at " + (r.counterexample ? r.counterexample->str() : "?")};
    return {true, std::to_string(r.samples) + " seeded samples, 0 counterexamples"};
}

Outcome orbit_partition() {
    const long steps = 1L << 16;
    std::map<BinSeq, std::pair<OrbitBase, long>> visited;
    for (OrbitBase base : {OrbitBase::zero, OrbitBase::half}) {
        BinSeq start = BinSeq::parse(base == OrbitBase::zero ? "(0)" : "1(0)");
        for (int dir : {1, -1}) {
            BinSeq a = start;
            for (long n = 0; n <= steps; ++n) {
                if (ind(a) <= 12) {
                    auto [it, fresh] = visited.emplace(a, std::pair{base, dir * n});
                    if (!fresh && !(n == 0 && it->second.second == 0)) return {false, "visited twice: " + a.str()};
                }
                a = dir > 0 ? f_inf(a) : f_inf_inv(a);
            }
        }
    }
    if (visited.size() != (1u << 13)) return {false, std::to_string(visited.size()) + " dyadics reached"};
    for (const auto& [a, where] : visited) {
        OrbitClassification c = classify_orbit(a);
        if (c.base != where.first || c.n != where.second) return {false, "classification differs at " + a.str()};
        if (a.preperiod().size() >= 2) {
            bool forward = c.n > 0;
            bool want = ay::tm(a) == 0 ? ind(a) % 2 == 1 : ind(a) % 2 == 0;
            if (forward != want) return {false, "table direction differs at " + a.str()};
        }
    }
    return {true, "8192 dyadics with Ind <= 12, 2^16 steps each way"};
}

Outcome F_gaps() {
    std::set<std::string> missing;
    long count = 0;
    for (std::size_t total = 1; total <= 16; ++total)
        for (std::size_t pl = 0; pl < total; ++pl) {
            std::size_t ql = total - pl;
            for (unsigned long bits = 0; bits < (1ul << total); ++bits) {
                std::string pre, per;
                for (std::size_t i = 0; i < total; ++i) (i < pl ? pre : per).push_back((bits >> i) & 1 ? '1' : '0');
                if (per.find('0') == std::string::npos) continue;
                BinSeq b(pre, per);
                if (b.preperiod().size() != pl || b.period().size() != ql) continue;
                ++count;
                try {
                    BinSeq a = F_inf_inv(b);
                    if (a == BinSeq() || !(F_inf(a) == b)) return {false, "bad preimage of " + b.str()};
                } catch (const NoPreimage&) {
                    missing.insert(to_string(b.value()));
                }
            }
        }
    bool ok = missing == std::set<std::string>{"1/3", "2/3"};
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    return {ok, std::to_string(count) + " canonical sequences; no preimage: {" + list + "}"};
}

Outcome powers_of_two() {
    long total = 0;
    for (int N = 1; N <= 10; ++N) {
        VerticalSaddleScan s = limit_vertical_saddles(N, 8);
        for (const auto& c : s.found) {
            ++total;
            if (!power_of_two(c.length))
                return {false, "N=" + std::to_string(N) + " x=" + to_string(c.x) + " length " + to_string(c.length)};
        }
    }
    return {total > 0, std::to_string(total) + " connections, N=1..10, x = k/2^8"};
}

Outcome vertex_convergence() {
    VertexConvergenceReport r = vertex_convergence_check(12);
    double worst = 0;
    for (const auto& row : r.rows)
        if (row.g >= 4 && row.g <= 12 && !row.within) return {false, "g=" + std::to_string(row.g) + " " + row.label};
    for (const auto& [g, d] : r.max_by_genus)
        if (g == 12) worst = d;
    char buf[96];
    std::snprintf(buf, sizeof buf, "bound 8*2^-g, g=4..12, max at g=12: %.3g", worst);
    return {r.ok && r.monotone, std::string(buf) + (r.monotone ? ", monotone" : ", not monotone")};
}

Outcome veech_genus2() {
    SweepResult s = sweep(10);
    SublatticeReport sub = sublattice_index5();
    return {s.disagreements == 0 && sub.ok,
            std::to_string(s.candidates) + " det-1 matrices in [-10,10], " + std::to_string(s.disagreements) +
                " disagreements; M1^-1 (sqrt5 M2) = [2,-1;1,2], det 5"};
}

Outcome degenerate() {
    Surface t = build_unit_torus();
    Topology tt = euler_genus(t);
    if (tt.genus != 1 || !(area(t) == NFElem(t.field(), Rational(1)))) return {false, "g=1 torus"};
    Surface s2 = build_staircase(2);
    Topology t2 = euler_genus(s2);
    if (t2.components.size() != 2) return {false, "g=2 has " + std::to_string(t2.components.size()) + " components"};
    for (const auto& c : t2.components)
        if (c.genus != 1) return {false, "g=2 component of genus " + std::to_string(c.genus)};
    IntervalExchange f2 = build_f_g(2);
    NFElem a = NFElem::alpha(2);
    std::vector<Arc> arcs{{a * Rational(1, 2), (a + Rational(1)) * Rational(1, 2)}};
    if (!is_invariant_union(f2, arcs)) return {false, "f_2 arcs not invariant"};
    return {true, "torus area 1; g=2: two genus-1 components, [alpha/2, (1+alpha)/2) invariant under f_2"};
}

Outcome trace_classes() {
    for (int g = 2; g <= 12; ++g)
        if (trace_classify(psi_derivative(g)) != TraceClass::pseudo_anosov)
            return {false, "diag(1/alpha, alpha) at g=" + std::to_string(g)};
    const NumberField& Q = NumberField::get(1);
    auto q = [&](long n, long d = 1) { return NFElem(Q, Rational(n, d)); };
    bool ok = trace_classify(Mat2::diag(q(2), q(1, 2))) == TraceClass::pseudo_anosov &&
              trace_classify(Mat2{q(0), q(-1), q(1), q(0)}) == TraceClass::finite_order &&
              trace_classify(Mat2{q(1), q(1), q(0), q(1)}) == TraceClass::parabolic_cylinder;
    return {ok, "g=2..12 pseudo-Anosov; diag(2,1/2), rotation by 90 degrees, [1,1;0,1]"};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "root bounds", 5, root_bounds},
        {2, "self-similarity", 30, self_similarity},
        {3, "involution", 0, involution},
        {4, "surface integrity", 0, surface_integrity},
        {5, "suspension first return", 120, suspension},
        {6, "non-hyperellipticity witness", 0, non_hyperelliptic},
        {7, "infinite conjugacies", 0, infinite_conjugacies},
        {8, "orbit partition", 60, orbit_partition},
        {9, "F_inf gaps", 0, F_gaps},
        {10, "powers of 2", 0, powers_of_two},
        {11, "vertex convergence", 0, vertex_convergence},
        {12, "genus-2 Veech computation", 60, veech_genus2},
        {13, "degenerate builders", 0, degenerate},
        {14, "trace classification", 0, trace_classes},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = c.limit_s == 0 || secs < c.limit_s;
        bool pass = o.pass && in_time;
        failed += !pass;
        char timing[64];
        if (c.limit_s > 0) std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", secs, c.limit_s);
        else std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::printf("%s %2d %-30s %s [exact; %s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                    timing);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

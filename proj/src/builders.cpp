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

#include "ay/builders.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ay {

namespace {

struct ValueLess {
    bool operator()(const NFElem& a, const NFElem& b) const { return a < b; }
};
using ValueSet = std::set<NFElem, ValueLess>;

std::string key(const Point& p) { return p.x.key() + "," + p.y.key(); }
std::string key(const Point& p, const Point& q) { return key(p) + ";" + key(q); }

// A vertical piece of a strip side.  of_left: it is the right side of the
// strip to the left of the line (the region lies to its left).  tau maps it
// onto its partner; no tau means the piece is boundary.
struct VSeg {
    NFElem x;
    bool of_left;
    NFElem y0, y1;
    std::optional<Vec> tau;
};

// Top of the strips over [x0, x1) is glued to the bottom (y = 0) by x -> x + shift.
struct TopPiece {
    NFElem x0, x1;
    std::optional<NFElem> shift;
};

/*
 * The region is a row of vertical strips [xs[j], xs[j+1]] x [bottom[j], top[j]].
 * Sides not covered by a VSeg are shared with the neighbouring strip.  Every
 * strip is fanned from its centre, after subdividing its boundary so that all
 * gluings match edge to edge.
 */
struct StripPlan {
    const NumberField* F;
    std::vector<NFElem> xs, bottom, top;
    std::vector<TopPiece> top_pieces;
    std::vector<VSeg> vsegs;
    std::string name;
};

enum class Tag { interior, glued, free };

struct PendingEdge {
    EdgeRef ref;
    Point p, q;
    Tag tag;
    Vec tau;
};

int line_index(const StripPlan& plan, const NFElem& x) {
    for (std::size_t j = 0; j < plan.xs.size(); ++j)
        if (plan.xs[j] == x) return static_cast<int>(j);
    return -1;
}

Surface assemble(const StripPlan& plan) {
    const NumberField& F = *plan.F;
    const int m = static_cast<int>(plan.xs.size()) - 1;
    NFElem zero(F);

    // Top and bottom subdivision, closed under the top/bottom gluing.
    ValueSet tv(plan.xs.begin(), plan.xs.end()), bv(plan.xs.begin(), plan.xs.end());
    for (const auto& tp : plan.top_pieces) {
        tv.insert(tp.x0);
        tv.insert(tp.x1);
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& tp : plan.top_pieces) {
            if (!tp.shift) continue;
            for (auto it = tv.lower_bound(tp.x0); it != tv.end() && *it <= tp.x1; ++it)
                changed |= bv.insert(*it + *tp.shift).second;
            for (auto it = bv.lower_bound(tp.x0 + *tp.shift); it != bv.end() && *it <= tp.x1 + *tp.shift; ++it)
                changed |= tv.insert(*it - *tp.shift).second;
        }
    }

    // Side subdivision: heights[j][0] on the left strip's right side of line
    // j, heights[j][1] on the right strip's left side.
    std::vector<std::array<ValueSet, 2>> heights(m + 1);
    auto range_of = [&](int j, int side, NFElem& lo, NFElem& hi) {
        int strip = side == 0 ? j - 1 : j;
        if (strip < 0 || strip >= m) return false;
        lo = plan.bottom[strip];
        hi = plan.top[strip];
        return true;
    };
    auto strictly_inside_own_seg = [&](int j, int side, const NFElem& y) {
        for (const auto& v : plan.vsegs)
            if (v.x == plan.xs[j] && v.of_left == (side == 0) && v.y0 < y && y < v.y1) return true;
        return false;
    };
    for (int j = 0; j <= m; ++j)
        for (int side = 0; side < 2; ++side) {
            NFElem lo, hi;
            if (!range_of(j, side, lo, hi)) continue;
            std::vector<NFElem> cand;
            for (int s2 = 0; s2 < 2; ++s2) {
                NFElem l2, h2;
                if (range_of(j, s2, l2, h2)) {
                    cand.push_back(l2);
                    cand.push_back(h2);
                }
            }
            for (const auto& v : plan.vsegs)
                if (v.x == plan.xs[j]) {
                    cand.push_back(v.y0);
                    cand.push_back(v.y1);
                }
            for (const auto& y : cand) {
                if (y < lo || y > hi) continue;
                bool own_endpoint = false;
                for (const auto& v : plan.vsegs)
                    if (v.x == plan.xs[j] && v.of_left == (side == 0) && (v.y0 == y || v.y1 == y)) own_endpoint = true;
                if (own_endpoint || !strictly_inside_own_seg(j, side, y) || y == lo || y == hi)
                    heights[j][side].insert(y);
            }
        }
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& v : plan.vsegs) {
            if (!v.tau) continue;
            int j = line_index(plan, v.x), j2 = line_index(plan, v.x + v.tau->x);
            if (j < 0 || j2 < 0) throw BuildError("vertical gluing lands off the strip lines");
            int side = v.of_left ? 0 : 1;
            std::vector<NFElem> add;
            for (auto it = heights[j][side].lower_bound(v.y0); it != heights[j][side].end() && *it <= v.y1; ++it)
                add.push_back(*it + v.tau->y);
            for (auto& y : add) changed |= heights[j2][1 - side].insert(y).second;
        }
    }

    Surface s(F);
    s.name = plan.name;
    std::vector<PendingEdge> pending;
    auto strip_of = [&](const NFElem& u, const NFElem& v) {
        for (int j = 0; j < m; ++j)
            if (plan.xs[j] <= u && v <= plan.xs[j + 1]) return j;
        return -1;
    };
    auto side_tag = [&](const NFElem& x, bool of_left, const NFElem& y0, const NFElem& y1, Vec& tau) {
        for (const auto& v : plan.vsegs)
            if (v.x == x && v.of_left == of_left && v.y0 <= y0 && y1 <= v.y1) {
                if (!v.tau) return Tag::free;
                tau = *v.tau;
                return Tag::glued;
            }
        return Tag::interior;
    };
    for (int j = 0; j < m; ++j) {
        const NFElem &xl = plan.xs[j], &xr = plan.xs[j + 1], &yb = plan.bottom[j], &yt = plan.top[j];
        std::vector<Point> poly;
        std::vector<Tag> tags;
        std::vector<Vec> taus;
        // Bottom, left to right.
        std::vector<NFElem> bx(bv.lower_bound(xl), bv.upper_bound(xr));
        for (std::size_t i = 0; i + 1 < bx.size(); ++i) {
            poly.push_back({bx[i], yb});
            Vec tau{zero, zero};
            Tag tag = Tag::free;
            if (yb.is_zero())
                for (const auto& tp : plan.top_pieces) {
                    if (!tp.shift) continue;
                    if (tp.x0 + *tp.shift <= bx[i] && bx[i + 1] <= tp.x1 + *tp.shift) {
                        int src = strip_of(bx[i] - *tp.shift, bx[i + 1] - *tp.shift);
                        if (src < 0) throw BuildError("top piece straddles strips");
                        tau = {-*tp.shift, plan.top[src]};
                        tag = Tag::glued;
                        break;
                    }
                }
            tags.push_back(tag);
            taus.push_back(tau);
        }
        // Right side, upwards.
        std::vector<NFElem> ry(heights[j + 1][0].begin(), heights[j + 1][0].end());
        for (std::size_t i = 0; i + 1 < ry.size(); ++i) {
            poly.push_back({xr, ry[i]});
            Vec tau{zero, zero};
            tags.push_back(side_tag(xr, true, ry[i], ry[i + 1], tau));
            taus.push_back(tau);
        }
        // Top, right to left.
        std::vector<NFElem> tx(tv.lower_bound(xl), tv.upper_bound(xr));
        for (std::size_t i = tx.size() - 1; i > 0; --i) {
            poly.push_back({tx[i], yt});
            Vec tau{zero, zero};
            Tag tag = Tag::free;
            for (const auto& tp : plan.top_pieces)
                if (tp.x0 <= tx[i - 1] && tx[i] <= tp.x1) {
                    if (tp.shift) {
                        tau = {*tp.shift, -yt};
                        tag = Tag::glued;
                    }
                    break;
                }
            tags.push_back(tag);
            taus.push_back(tau);
        }
        // Left side, downwards.
        std::vector<NFElem> ly(heights[j][1].begin(), heights[j][1].end());
        for (std::size_t i = ly.size() - 1; i > 0; --i) {
            poly.push_back({xl, ly[i]});
            Vec tau{zero, zero};
            tags.push_back(side_tag(xl, false, ly[i - 1], ly[i], tau));
            taus.push_back(tau);
        }
        Point centre{(xl + xr) * Rational(1, 2), (yb + yt) * Rational(1, 2)};
        const int n = static_cast<int>(poly.size());
        const int base = static_cast<int>(s.size());
        for (int i = 0; i < n; ++i) {
            const Point& p = poly[i];
            const Point& q = poly[(i + 1) % n];
            int t = s.add_triangle(centre, p, q);
            pending.push_back({{t, 1}, p, q, tags[i], taus[i]});
        }
        for (int i = 0; i < n; ++i) s.glue({base + i, 2}, {base + (i + 1) % n, 0});
    }

    std::map<std::string, EdgeRef> interior, boundary;
    for (const auto& e : pending) {
        if (e.tag == Tag::interior) interior[key(e.p, e.q)] = e.ref;
        if (e.tag == Tag::glued) boundary[key(e.p, e.q)] = e.ref;
    }
    bool any_free = false;
    for (const auto& e : pending) {
        if (e.tag == Tag::free) {
            any_free = true;
            continue;
        }
        auto& table = e.tag == Tag::interior ? interior : boundary;
        auto it = table.find(key(e.q + e.tau, e.p + e.tau));
        if (it == table.end())
            throw BuildError("no partner for edge " + to_string(e.p) + " -> " + to_string(e.q) + " in " + plan.name);
        s.glue(e.ref, it->second);
    }
    s.allow_boundary = any_free;
    return s;
}

NFElem alpha_pow(const NumberField& F, int k) { return NFElem::alpha(F).pow(static_cast<unsigned>(k)); }

} // namespace

// ---------------------------------------------------------------------------

Surface build_unit_torus(int g) {
    const NumberField& F = NumberField::get(g);
    Surface s(F);
    s.name = "torus";
    auto P = [&](int x, int y) { return make_point(F, x, y); };
    int a = s.add_triangle(P(0, 0), P(1, 0), P(1, 1));
    int b = s.add_triangle(P(0, 0), P(1, 1), P(0, 1));
    s.glue({a, 0}, {b, 1});
    s.glue({a, 1}, {b, 2});
    s.glue({a, 2}, {b, 0});
    return s;
}

std::vector<NFElem> slit_lengths(int g) {
    if (g < 2) throw BuildError("slit_lengths needs g >= 2");
    const NumberField& F = NumberField::get(g);
    NFElem one(F, Rational(1)), inv = (one - NFElem::alpha(F)).inverse();
    std::vector<NFElem> out;
    for (int i = 1; i <= g; ++i) out.push_back(alpha_pow(F, i + 1) * inv);
    return out;
}

StaircaseSpec staircase_spec(int g, SlitOrder order) {
    if (g < 2) throw BuildError("staircase_spec needs g >= 2");
    const NumberField& F = NumberField::get(g);
    StaircaseSpec sp;
    sp.g = g;
    NFElem acc(F);
    for (int k = 1; k <= g + 1; ++k) {
        sp.a.push_back(acc);
        acc += alpha_pow(F, k);
    }
    for (int k = 1; k <= g; ++k) {
        NFElem h(F);
        for (int j = 1; j <= g - k + 1; ++j) h += alpha_pow(F, j);
        sp.top.push_back(h);
    }
    IntervalExchange f = build_f_g(g);
    for (int i = 1; i <= g; ++i) {
        int src = 0;
        switch (order) {
        case SlitOrder::direct: src = i; break;
        case SlitOrder::reversed: src = g + 1 - i; break;
        case SlitOrder::shifted: src = i < g ? i + 1 : 1; break;
        }
        sp.slit_x.push_back(f.apply(sp.a[src - 1]));
    }
    sp.slit_len = slit_lengths(g);
    return sp;
}

Surface build_staircase(int g, SlitOrder order) {
    if (g < 1) throw BuildError("build_staircase needs g >= 1");
    if (g == 1) {
        Surface s = build_unit_torus(1);
        s.name = "staircase g=1";
        return s;
    }
    const NumberField& F = NumberField::get(g);
    StaircaseSpec sp = staircase_spec(g, order);
    NFElem zero(F), one(F, Rational(1)), a = NFElem::alpha(F);
    auto A = [&](int k) { return alpha_pow(F, k); };
    StripPlan plan;
    plan.F = &F;
    plan.name = "staircase g=" + std::to_string(g);
    ValueSet xs(sp.a.begin(), sp.a.end());
    for (const auto& x : sp.slit_x) xs.insert(x);
    if (xs.size() != sp.a.size() + sp.slit_x.size()) throw BuildError("slits collide with step boundaries");
    plan.xs.assign(xs.begin(), xs.end());
    for (std::size_t j = 0; j + 1 < plan.xs.size(); ++j) {
        plan.bottom.push_back(zero);
        int k = 0;
        while (!(plan.xs[j] < sp.a[k + 1])) ++k;
        plan.top.push_back(sp.top[k]);
    }
    IntervalExchange f = build_f_g(g);
    for (std::size_t k = 0; k < f.size(); ++k) plan.top_pieces.push_back({f.pieces()[k].left, f.right(k), f.pieces()[k].translation});

    const auto& x = sp.slit_x;
    const auto& len = sp.slit_len;
    auto& vs = plan.vsegs;
    // Outer edges.
    vs.push_back({zero, false, zero, a, Vec{one, zero}});
    vs.push_back({zero, false, a, one, Vec{x[0], -a}});
    vs.push_back({one, true, zero, a, Vec{-one, zero}});
    // Left faces of the slits.
    vs.push_back({x[0], true, zero, one - a, Vec{-x[0], a}});
    vs.push_back({x[0], true, one - a, len[0], Vec{x[g - 1] - x[0], -(one - a)}});
    for (int i = 2; i <= g; ++i) vs.push_back({x[i - 1], true, zero, len[i - 1], Vec{x[i - 2] - x[i - 1], A(i)}});
    // Right faces.
    for (int i = 1; i <= g - 1; ++i) {
        int k = g - i;
        vs.push_back({x[i - 1], false, zero, A(i + 1), Vec{sp.a[k] - x[i - 1], sp.top[k]}});
        vs.push_back({x[i - 1], false, A(i + 1), len[i - 1], Vec{x[i] - x[i - 1], -A(i + 1)}});
    }
    vs.push_back({x[g - 1], false, zero, len[g - 1], Vec{x[0] - x[g - 1], one - a}});
    // Drops between step k and k + 1, at x = a_{k+1}.
    for (int k = 1; k <= g - 1; ++k) {
        int i = g - k;
        vs.push_back({sp.a[k], true, sp.top[k], sp.top[k - 1], Vec{x[i - 1] - sp.a[k], -sp.top[k]}});
    }
    return assemble(plan);
}

std::vector<EdgeRef> staircase_bottom(const Surface& s) {
    std::vector<EdgeRef> out;
    for (int t = 0; t < static_cast<int>(s.size()); ++t)
        for (int k = 0; k < 3; ++k) {
            const Point &p = s.vertex(t, k), &q = s.vertex(t, k + 1);
            if (p.y.is_zero() && q.y.is_zero() && p.x < q.x) out.push_back({t, k});
        }
    std::sort(out.begin(), out.end(), [&](EdgeRef a, EdgeRef b) { return s.vertex(a.tri, a.edge).x < s.vertex(b.tri, b.edge).x; });
    return out;
}

// ---------------------------------------------------------------------------
// Triangle presentation

namespace {

std::string P(int i) { return "P" + std::to_string(i); }
std::string Q(int i) { return "Q" + std::to_string(i); }
std::string prime(const std::string& l) { return l + "'"; }

struct Triangulation {
    Surface surface;
    std::vector<std::array<std::string, 3>> labels;
};

EdgeRef find_edge(const Triangulation& T, const std::string& from, const std::string& to) {
    for (std::size_t t = 0; t < T.labels.size(); ++t)
        for (int k = 0; k < 3; ++k)
            if (T.labels[t][k] == from && T.labels[t][(k + 1) % 3] == to) return {static_cast<int>(t), k};
    throw BuildError("no edge " + from + " -> " + to);
}

EdgeRef find_unordered(const Triangulation& T, const std::string& a, const std::string& b) {
    for (std::size_t t = 0; t < T.labels.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            const auto &u = T.labels[t][k], &v = T.labels[t][(k + 1) % 3];
            if ((u == a && v == b) || (u == b && v == a)) return {static_cast<int>(t), k};
        }
    throw BuildError("no edge " + a + " " + b);
}

Triangulation make_triangulation(int g) {
    if (g < 3) throw BuildError("the triangle presentation needs g >= 3");
    const NumberField& F = NumberField::get(g);
    auto pts = triangulation_points(g);
    Triangulation T{Surface(F), {}};
    T.surface.name = "triangles g=" + std::to_string(g);
    auto add = [&](std::array<std::string, 3> l, bool mirrored) {
        if (mirrored)
            for (auto& x : l) x = prime(x);
        const Point &a = pts.at(l[0]), &b = pts.at(l[1]), &c = pts.at(l[2]);
        if (cross(b - a, c - a).sign() < 0) std::swap(l[1], l[2]);
        T.surface.add_triangle(pts.at(l[0]), pts.at(l[1]), pts.at(l[2]));
        T.labels.push_back(l);
    };
    for (bool m : {false, true}) {
        for (int i = 1; i <= g; ++i) add({P(0), Q(i), Q(i - 1)}, m);
        for (int i = 1; i <= g; ++i) add({P(i), Q(i - 1), Q(i)}, m);
    }
    // Interior gluing: same unordered label pair in the same family.
    std::map<std::string, std::vector<EdgeRef>> shared;
    for (std::size_t t = 0; t < T.labels.size(); ++t)
        for (int k = 0; k < 3; ++k) {
            std::string u = T.labels[t][k], v = T.labels[t][(k + 1) % 3];
            if (v < u) std::swap(u, v);
            shared[u + "|" + v].push_back({static_cast<int>(t), k});
        }
    for (const auto& [_, refs] : shared)
        if (refs.size() == 2) T.surface.glue(refs[0], refs[1]);
    auto pair = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
        T.surface.glue(find_unordered(T, a, b), find_unordered(T, c, d));
    };
    auto both = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
        pair(a, b, prime(c), prime(d));
        pair(prime(a), prime(b), c, d);
    };
    both(P(0), Q(0), P(0), Q(g));
    both(P(1), Q(1), P(g), Q(g - 1));
    pair(P(1), Q(0), P(g - 1), Q(g - 1));
    pair(prime(P(1)), prime(Q(0)), prime(P(g - 1)), prime(Q(g - 1)));
    pair(P(g), Q(g), Q(1), P(2));
    pair(prime(P(g)), prime(Q(g)), prime(Q(1)), prime(P(2)));
    for (int i = 2; i <= g - 2; ++i) both(P(i), Q(i), Q(i), P(i + 1));
    return T;
}

} // namespace

std::map<std::string, Point> triangulation_points(int g) {
    if (g < 3) throw BuildError("the triangle presentation needs g >= 3");
    const NumberField& F = NumberField::get(g);
    auto A = [&](int k) { return alpha_pow(F, k); };
    NFElem one(F, Rational(1)), a = A(1), inv = (one - a).inverse();
    Rational half(1, 2);
    std::map<std::string, Point> m;
    m[P(0)] = {(one - A(g)) * half, A(2) * inv};
    m[Q(0)] = {-A(g) * half, a};
    m[P(1)] = {-(A(g - 1) + A(g)) * half, (a - A(2) + A(3)) * inv};
    m[P(g)] = {one + (a - A(g)) * half, (a * 3 - one - A(2)) * inv};
    for (int i = 2; i <= g - 1; ++i) m[P(i)] = {(a - A(i)) * inv, a * inv};
    for (int i = 1; i <= g; ++i)
        m[Q(i)] = {(a * 2 - A(i) - A(i + 1)) * half * inv, (a - A(g - i + 2)) * inv};
    std::map<std::string, Point> out = m;
    for (const auto& [l, p] : m) out[prime(l)] = {p.x, -p.y};
    return out;
}

Surface build_triangulation(int g) { return make_triangulation(g).surface; }

std::vector<std::array<std::string, 3>> triangulation_labels(int g) { return make_triangulation(g).labels; }

EdgeRef triangulation_edge(int g, const std::string& from, const std::string& to) {
    return find_edge(make_triangulation(g), from, to);
}

// ---------------------------------------------------------------------------
// Symmetries

void CheckReport::add(std::string name, bool pass, std::string detail) {
    items.push_back({std::move(name), pass, std::move(detail)});
    ok = ok && pass;
}

CheckReport verify_psi(int g) {
    if (g < 3) throw BuildError("verify_psi needs g >= 3");
    const NumberField& F = NumberField::get(g);
    NFElem a = NFElem::alpha(F), one(F, Rational(1));
    CheckReport rep;
    IntervalExchange f = build_f_g(g);
    PiecewiseAffine h = build_h_g(g);
    IntervalExchange back = conjugate(first_return(f, a), h.inverse());
    rep.add("self_similarity", back == f, "h^-1 o first_return(f, alpha) o h");
    auto len = slit_lengths(g);
    bool scaling = true;
    for (int i = 0; i + 1 < g; ++i) scaling = scaling && len[i + 1] == a * len[i];
    rep.add("slit_scaling", scaling, "|sigma_{i+1}| = alpha |sigma_i|");
    const NFElem& last = len[g - 1];
    rep.add("slit_condition", a * (one + last) == (one - a) + last, "alpha (1 + |sigma_g|) = (1 - alpha) + |sigma_g|");
    NFElem tr = a.inverse() + a, det = a.inverse() * a;
    rep.add("derivative_det", det == one, "det diag(1/alpha, alpha) = 1");
    rep.add("pseudo_anosov", tr > one * 2, "trace 1/alpha + alpha = " + std::to_string(tr.to_double()));
    return rep;
}

CheckReport verify_rho(int g) {
    if (g < 3) throw BuildError("verify_rho needs g >= 3");
    CheckReport rep;
    IntervalExchange f = build_f_g(g), r = build_half_rotation(g);
    rep.add("conjugates_to_inverse", iet_compose(r, iet_compose(f, r)) == iet_inverse(f), "r o f o r = f^-1");
    rep.add("involution", iet_compose(r, r) == IntervalExchange::identity(r.length()), "r o r = id");
    auto pts = triangulation_points(g);
    bool mirror = true;
    for (const auto& [l, p] : pts) {
        if (l.back() == '\'') continue;
        const Point& q = pts.at(prime(l));
        mirror = mirror && q.x == p.x && q.y == -p.y;
    }
    auto labels = triangulation_labels(g);
    std::set<std::set<std::string>> fam, fam_mirror;
    for (const auto& t : labels) {
        bool primed = t[0].back() == '\'';
        std::set<std::string> u;
        for (auto l : t) {
            if (primed) l.pop_back();
            u.insert(l);
        }
        (primed ? fam_mirror : fam).insert(u);
    }
    rep.add("mirror_triangles", mirror && fam == fam_mirror, "T' is T with y negated");
    return rep;
}

// ---------------------------------------------------------------------------
// Limit surface

Surface build_limit_truncation(int N) {
    if (N < 1) throw BuildError("truncation depth must be >= 1");
    const NumberField& F = NumberField::get(1);
    auto q = [&](const Rational& r) { return NFElem(F, r); };
    auto pw = [&](int k) { return q(Rational(mpz_class(1), mpz_class(1) << k)); };
    NFElem zero = q(0), one = q(1), half = q(Rational(1, 2));
    StripPlan plan;
    plan.F = &F;
    plan.name = "limit N=" + std::to_string(N);
    plan.xs = {zero, half, one};
    plan.bottom = {zero, zero};
    plan.top = {one, one};
    // Blocks [1 - 2^-n, 1 - 2^-(n+1)) with halves swapped, then the half-swap.
    for (int n = 0; n < N; ++n) {
        NFElem b0 = one - pw(n), m = b0 + pw(n + 2), b1 = one - pw(n + 1);
        NFElem s0 = pw(n + 2), s1 = -pw(n + 2);
        NFElem r0 = b0 + s0 < half ? half : -half;
        NFElem r1 = b0 < half ? half : -half;
        plan.top_pieces.push_back({b0, m, s0 + r0});
        plan.top_pieces.push_back({m, b1, s1 + r1});
    }
    plan.top_pieces.push_back({one - pw(N), one, std::nullopt});
    auto& vs = plan.vsegs;
    // Slit on x = 1/2 up to height 1/2.  Its left face is glued to the upper
    // half of the left edge; its right face, cut at heights 2^-i, to the
    // pieces of the right edge above height 1/2.
    vs.push_back({zero, false, zero, half, Vec{one, zero}});
    vs.push_back({zero, false, half, one, Vec{half, -half}});
    vs.push_back({one, true, zero, half, Vec{-one, zero}});
    vs.push_back({half, true, zero, half, Vec{-half, half}});
    for (int i = 1; i <= N - 1; ++i) {
        NFElem shift = one - pw(i + 1) * 3;
        vs.push_back({half, false, pw(i + 1), pw(i), Vec{half, shift}});
        vs.push_back({one, true, one - pw(i), one - pw(i + 1), Vec{-half, -shift}});
    }
    vs.push_back({half, false, zero, pw(N), std::nullopt});
    vs.push_back({one, true, one - pw(N), one, std::nullopt});
    Surface s = assemble(plan);
    s.allow_boundary = true;
    return s;
}

VerticalSaddleScan limit_vertical_saddles(int N, int denom_bits) {
    Surface s = build_limit_truncation(N);
    const NumberField& F = s.field();
    Section sec = section_from_edges(s, staircase_bottom(s));
    const VertexData& vd = s.vertex_data();
    const Vec up{NFElem(F), NFElem(F, Rational(1))}, down{NFElem(F), NFElem(F, Rational(-1))};
    VerticalSaddleScan scan;
    scan.N = N;
    const long count = 1L << denom_bits;
    for (long k = 0; k < count; ++k) {
        Rational x(k, count);
        x.canonicalize();
        auto [t, p] = sec.locate(NFElem(F, x));
        int corner = -1;
        for (int j = 0; j < 3; ++j)
            if (s.vertex(t, j) == p) corner = j;
        if (corner < 0) {
            auto a = trace(s, t, p, up), b = trace(s, t, p, down);
            if (a.kind == TraceKind::hits_singularity && b.kind == TraceKind::hits_singularity)
                scan.found.push_back({x, (a.length + b.length).rational_value()});
            else
                ++scan.incomplete;
            continue;
        }
        const VertexClass& vc = vd.classes[vd.class_of_corner(t, corner)];
        std::vector<TraceResult> legs;
        if (vc.regular()) {
            for (const Vec& d : {up, down})
                for (const Corner& c : vc.corners)
                    if (corner_contains(s, c, d)) legs.push_back(trace_from_corner(s, c, d));
        } else {
            // Only the upward legs from this chart position.  A leg running
            // along the closing edge of a corner starts in the corner across it.
            for (int tt = 0; tt < static_cast<int>(s.size()); ++tt)
                for (int kk = 0; kk < 3; ++kk) {
                    if (!(s.vertex(tt, kk) == p)) continue;
                    Corner c{tt, kk};
                    if (corner_contains(s, c, up)) {
                        legs.push_back(trace_from_corner(s, c, up));
                        continue;
                    }
                    Vec b = s.vertex(tt, kk + 2) - p;
                    auto across = s.partner({tt, (kk + 2) % 3});
                    if (cross(b, up).is_zero() && dot(b, up).sign() > 0 && across)
                        legs.push_back(trace_from_corner(s, {across->tri, across->edge}, up));
                }
        }
        if (vc.regular()) {
            if (legs.size() == 2 && legs[0].kind == TraceKind::hits_singularity &&
                legs[1].kind == TraceKind::hits_singularity)
                scan.found.push_back({x, (legs[0].length + legs[1].length).rational_value()});
            else
                ++scan.incomplete;
            continue;
        }
        for (const auto& leg : legs) {
            if (leg.kind == TraceKind::hits_singularity)
                scan.found.push_back({x, leg.length.rational_value()});
            else
                ++scan.incomplete;
        }
    }
    return scan;
}

Rational limit_truncation_area(int N) {
    if (N < 1) throw BuildError("truncation depth must be >= 1");
    return Rational(1);
}

std::pair<Rational, Rational> limit_vertex(const std::string& label) {
    auto pw = [](int k) { return Rational(mpz_class(1), mpz_class(1) << k); };
    if (label == "P0") return {Rational(1, 2), Rational(1, 2)};
    if (label == "Q0") return {Rational(0), Rational(1, 2)};
    if (label == "P1") return {Rational(0), Rational(3, 4)};
    if (label == "Pg") return {Rational(5, 4), Rational(1, 2)};
    if (label.size() >= 2 && (label[0] == 'P' || label[0] == 'Q')) {
        int i = 0;
        try {
            std::size_t used = 0;
            i = std::stoi(label.substr(1), &used);
            if (used != label.size() - 1) throw BuildError("bad vertex label " + label);
        } catch (const std::logic_error&) {
            throw BuildError("bad vertex label " + label);
        }
        if (label[0] == 'P' && i >= 2) return {Rational(1) - pw(i - 1), Rational(1)};
        if (label[0] == 'Q' && i >= 1) return {Rational(1) - pw(i + 1) * 3, Rational(1)};
    }
    throw BuildError("bad vertex label " + label);
}

VertexConvergenceReport vertex_convergence_check(int g_max, int i_max) {
    VertexConvergenceReport rep;
    std::optional<std::pair<int, NFElem>> prev_max;
    for (int g = 3; g <= g_max; ++g) {
        const NumberField& F = NumberField::get(g);
        auto pts = triangulation_points(g);
        std::vector<std::string> labels{"P0", "Q0", "P1"};
        for (int i = 2; i <= std::min(i_max, g - 1); ++i) labels.push_back(P(i));
        for (int i = 1; i <= std::min(i_max, g - 1); ++i) labels.push_back(Q(i));
        NFElem bound(F, Rational(mpz_class(8), mpz_class(1) << g));
        std::optional<NFElem> worst;
        for (const auto& l : labels) {
            auto [lx, ly] = limit_vertex(l);
            const Point& v = pts.at(l);
            NFElem dx = v.x - NFElem(F, lx), dy = v.y - NFElem(F, ly);
            NFElem d2 = dx * dx + dy * dy;
            bool within = d2 <= bound * bound;
            rep.rows.push_back({g, l, std::sqrt(d2.to_double()), bound.to_double(), within});
            rep.ok = rep.ok && within;
            if (!worst || *worst < d2) worst = d2;
        }
        rep.max_by_genus.push_back({g, std::sqrt(worst->to_double())});
        if (prev_max && compare_across_fields(*worst, prev_max->second) > 0) rep.monotone = false;
        prev_max = {g, *worst};
    }
    return rep;
}

} // namespace ay

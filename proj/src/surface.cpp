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

#include "ay/surface.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace ay {

Point make_point(const NumberField& F, const Rational& x, const Rational& y) { return {NFElem(F, x), NFElem(F, y)}; }

std::string to_string(const Point& p) {
    std::ostringstream os;
    os << "(" << p.x.to_double() << ", " << p.y.to_double() << ")";
    return os.str();
}

std::string to_string(TraceKind k) {
    switch (k) {
    case TraceKind::hits_singularity: return "hits_singularity";
    case TraceKind::returns_to_section: return "returns_to_section";
    case TraceKind::exceeds_budget: return "exceeds_budget";
    case TraceKind::leaves_surface: return "leaves_surface";
    case TraceKind::reached_length: return "reached_length";
    }
    return "?";
}

// ---------------------------------------------------------------------------

Surface::Surface(const Surface& o)
    : allow_boundary(o.allow_boundary), name(o.name), field_(o.field_), tris_(o.tris_), glue_(o.glue_) {}

Surface& Surface::operator=(const Surface& o) {
    if (this != &o) {
        field_ = o.field_;
        tris_ = o.tris_;
        glue_ = o.glue_;
        allow_boundary = o.allow_boundary;
        name = o.name;
        invalidate();
    }
    return *this;
}

int Surface::add_triangle(Point a, Point b, Point c) {
    if (cross(b - a, c - a).sign() <= 0) throw SurfaceError("triangle is degenerate or clockwise");
    tris_.push_back({std::move(a), std::move(b), std::move(c)});
    glue_.push_back({EdgeRef{}, EdgeRef{}, EdgeRef{}});
    invalidate();
    return static_cast<int>(tris_.size()) - 1;
}

void Surface::glue(EdgeRef a, EdgeRef b) {
    glue_.at(a.tri)[a.edge] = b;
    glue_.at(b.tri)[b.edge] = a;
    invalidate();
}

void Surface::unglue(EdgeRef a) {
    if (auto p = partner(a)) glue_[p->tri][p->edge] = EdgeRef{};
    glue_.at(a.tri)[a.edge] = EdgeRef{};
    invalidate();
}

std::optional<EdgeRef> Surface::partner(EdgeRef e) const {
    const EdgeRef& p = glue_.at(e.tri).at(e.edge);
    if (p.tri < 0) return std::nullopt;
    return p;
}

void Surface::invalidate() {
    std::lock_guard lock(cache_mutex_);
    cache_.reset();
}

namespace {

int mod3(int k) { return ((k % 3) + 3) % 3; }

// Direction d lies in the half-open corner [A, B) at vertex k of t.
bool in_corner(const Surface& s, Corner c, const Vec& d) {
    const Point& v = s.vertex(c.tri, c.k);
    Vec A = s.vertex(c.tri, c.k + 1) - v, B = s.vertex(c.tri, c.k + 2) - v;
    return cross(A, d).sign() >= 0 && cross(d, B).sign() > 0;
}

std::optional<Corner> ccw_next(const Surface& s, Corner c) {
    auto p = s.partner({c.tri, mod3(c.k + 2)});
    if (!p) return std::nullopt;
    return Corner{p->tri, p->edge};
}

std::optional<Corner> cw_next(const Surface& s, Corner c) {
    auto p = s.partner({c.tri, c.k});
    if (!p) return std::nullopt;
    return Corner{p->tri, mod3(p->edge + 1)};
}

std::shared_ptr<const VertexData> compute_vertex_data(const Surface& s) {
    auto data = std::make_shared<VertexData>();
    const int n = static_cast<int>(s.size());
    data->class_of.assign(3 * n, -1);
    const Vec east{NFElem(s.field(), Rational(1)), NFElem(s.field())};
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 3; ++k) {
            if (data->class_of[3 * t + k] >= 0) continue;
            VertexClass vc;
            Corner start{t, k};
            // Rewind clockwise to a boundary edge if there is one.
            Corner first = start;
            for (std::size_t guard = 0; guard <= 3 * s.size(); ++guard) {
                auto prev = cw_next(s, first);
                if (!prev) {
                    vc.closed = false;
                    break;
                }
                first = *prev;
                if (first == start) break;
            }
            Corner c = first;
            for (std::size_t guard = 0; guard <= 3 * s.size(); ++guard) {
                vc.corners.push_back(c);
                auto next = ccw_next(s, c);
                if (!next) {
                    vc.closed = false;
                    break;
                }
                if (*next == first) break;
                c = *next;
            }
            if (vc.closed)
                for (const Corner& cc : vc.corners)
                    if (in_corner(s, cc, east)) ++vc.winding;
            vc.representative = s.vertex(first.tri, first.k);
            const int id = static_cast<int>(data->classes.size());
            for (const Corner& cc : vc.corners) data->class_of[3 * cc.tri + cc.k] = id;
            data->classes.push_back(std::move(vc));
        }
    return data;
}

} // namespace

const VertexData& Surface::vertex_data() const {
    std::lock_guard lock(cache_mutex_);
    if (!cache_) cache_ = compute_vertex_data(*this);
    return *cache_;
}

// ---------------------------------------------------------------------------

ValidationReport validate(const Surface& s) {
    ValidationReport rep;
    auto issue = [&](std::string msg) {
        rep.ok = false;
        rep.issues.push_back(std::move(msg));
    };
    for (int t = 0; t < static_cast<int>(s.size()); ++t) {
        const auto& T = s.triangle(t);
        int sg = cross(T[1] - T[0], T[2] - T[0]).sign();
        if (sg == 0) issue("triangle " + std::to_string(t) + " is degenerate");
        if (sg < 0) issue("triangle " + std::to_string(t) + " is clockwise");
        for (int k = 0; k < 3; ++k) {
            EdgeRef e{t, k};
            auto p = s.partner(e);
            std::string name = "edge (" + std::to_string(t) + "," + std::to_string(k) + ")";
            if (!p) {
                if (!s.allow_boundary) issue(name + " is not glued");
                continue;
            }
            if (*p == e) {
                issue(name + " is glued to itself");
                continue;
            }
            auto back = s.partner(*p);
            if (!back || !(*back == e)) {
                issue(name + " gluing is not an involution");
                continue;
            }
            if (e < *p) {
                std::string pair = name + " <-> (" + std::to_string(p->tri) + "," + std::to_string(p->edge) + ")";
                if (!(s.edge_vector(e) == -s.edge_vector(*p)))
                    issue(pair + ": edge vectors differ, not a translation gluing");
                // Opposite vectors on two counter-clockwise triangles put the
                // interiors on opposite sides.
            }
        }
    }
    return rep;
}

Topology euler_genus(const Surface& s) {
    auto rep = validate(s);
    if (!rep.ok) throw SurfaceError("invalid surface: " + rep.issues.front());
    const auto& vd = s.vertex_data();
    const int n = static_cast<int>(s.size());
    Topology topo;
    topo.faces = n;
    topo.vertices = static_cast<long>(vd.classes.size());
    topo.vertex_class_of_corner = vd.class_of;

    // Components by union-find over glued edges.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    long glued_pairs = 0;
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 3; ++k) {
            auto p = s.partner({t, k});
            if (!p) {
                ++topo.boundary_edges;
                continue;
            }
            if (EdgeRef{t, k} < *p) ++glued_pairs;
            parent[find(t)] = find(p->tri);
        }
    topo.edges = glued_pairs + topo.boundary_edges;
    topo.euler = topo.vertices - topo.edges + topo.faces;

    std::map<int, int> comp_index;
    for (int t = 0; t < n; ++t) {
        int r = find(t);
        if (!comp_index.contains(r)) {
            comp_index[r] = static_cast<int>(topo.components.size());
            topo.components.emplace_back();
        }
        auto& c = topo.components[comp_index[r]];
        c.triangles.push_back(t);
        ++c.faces;
        for (int k = 0; k < 3; ++k) {
            auto p = s.partner({t, k});
            if (!p) ++c.edges;
            else if (EdgeRef{t, k} < *p) ++c.edges;
        }
    }
    for (const auto& vc : vd.classes) ++topo.components[comp_index[find(vc.corners.front().tri)]].vertices;
    // Boundary cycles: every open vertex link joins two boundary edge ends, so
    // the boundary is a union of circles; count them by walking.
    std::map<EdgeRef, EdgeRef> next_boundary;
    for (const auto& vc : vd.classes) {
        if (vc.closed) continue;
        const Corner& last = vc.corners.back();
        const Corner& first = vc.corners.front();
        // Boundary edge ending at the vertex: edge k+2 of the last corner; the
        // one starting there: edge k of the first corner.
        next_boundary[{last.tri, mod3(last.k + 2)}] = {first.tri, first.k};
    }
    std::set<EdgeRef> seen;
    for (const auto& [start, unused] : next_boundary) {
        (void)unused;
        if (seen.contains(start)) continue;
        int comp = comp_index[find(start.tri)];
        ++topo.components[comp].boundary_cycles;
        ++topo.boundary_cycles;
        EdgeRef e = start;
        while (!seen.contains(e)) {
            seen.insert(e);
            e = next_boundary.at(e);
        }
    }
    for (auto& c : topo.components) {
        c.euler = c.vertices - c.edges + c.faces;
        c.genus = (2 - c.euler - c.boundary_cycles) / 2;
    }
    if (topo.components.size() == 1) topo.genus = topo.components.front().genus;
    return topo;
}

std::vector<ConeInfo> cone_windings(const Surface& s) {
    auto rep = validate(s);
    if (!rep.ok) throw SurfaceError("invalid surface: " + rep.issues.front());
    std::vector<ConeInfo> out;
    const auto& vd = s.vertex_data();
    for (std::size_t i = 0; i < vd.classes.size(); ++i) {
        const auto& vc = vd.classes[i];
        out.push_back({static_cast<int>(i), vc.closed, vc.winding, vc.representative});
    }
    return out;
}

std::vector<int> singular_windings(const Surface& s) {
    std::vector<int> w;
    for (const auto& c : cone_windings(s))
        if (c.closed && c.winding > 1) w.push_back(c.winding);
    std::sort(w.begin(), w.end());
    return w;
}

NFElem area(const Surface& s) {
    NFElem total(s.field());
    for (int t = 0; t < static_cast<int>(s.size()); ++t) {
        const auto& T = s.triangle(t);
        total += cross(T[1] - T[0], T[2] - T[0]);
    }
    return total * Rational(1, 2);
}

// ---------------------------------------------------------------------------

std::pair<int, Point> Section::locate(const NFElem& s) const {
    for (const auto& p : pieces) {
        NFElem rel = s - p.offset;
        if (rel.sign() >= 0 && rel < p.x1 - p.x0) return {p.tri, Point{p.x0 + rel, p.y}};
    }
    throw SurfaceError("section parameter out of range");
}

Section section_from_edges(const Surface& s, const std::vector<EdgeRef>& edges) {
    Section sec;
    sec.length = NFElem(s.field());
    for (const auto& e : edges) {
        const Point& a = s.vertex(e.tri, e.edge);
        const Point& b = s.vertex(e.tri, e.edge + 1);
        if (!(a.y == b.y) || !(a.x < b.x)) throw SurfaceError("section edges must be horizontal with the triangle above");
        sec.pieces.push_back({e.tri, a.y, a.x, b.x, sec.length});
        sec.length += b.x - a.x;
    }
    return sec;
}

namespace {

struct Exit {
    NFElem lambda;
    int edge = -1;
    int vertex = -1;
};

// Leaving triangle t from p along d.  Assumes p lies in the closed triangle.
Exit exit_of(const Surface& s, int t, const Point& p, const Vec& d) {
    Exit ex;
    bool have = false;
    for (int k = 0; k < 3; ++k) {
        const Point& a = s.vertex(t, k);
        Vec e = s.vertex(t, k + 1) - a;
        NFElem c = cross(e, d);
        if (c.sign() >= 0) continue;
        NFElem lam = -cross(e, p - a) / c;
        if (!have || lam < ex.lambda) {
            ex.lambda = lam;
            ex.edge = k;
            have = true;
        }
    }
    if (!have) throw SurfaceError("trace: direction does not leave the triangle");
    if (ex.lambda.sign() < 0) ex.lambda = NFElem(s.field());
    Point q = p + ex.lambda * d;
    for (int j = 0; j < 3; ++j)
        if (q == s.vertex(t, j)) ex.vertex = j;
    return ex;
}

std::optional<Corner> outgoing_corner(const Surface& s, int cls, const Vec& d) {
    for (const Corner& c : s.vertex_data().classes[cls].corners)
        if (in_corner(s, c, d)) return c;
    return std::nullopt;
}

TraceResult run_trace(const Surface& s, int t, Point p, const Vec& d, const TraceOptions& opt, bool first) {
    TraceResult res;
    res.length = NFElem(s.field());
    std::multimap<int, const SectionPiece*> pieces;
    if (opt.section)
        for (const auto& pc : opt.section->pieces) pieces.emplace(pc.tri, &pc);
    const auto& vd = s.vertex_data();
    for (std::size_t step = 0; step < opt.budget; ++step) {
        Exit ex = exit_of(s, t, p, d);
        if (opt.section && d.y.sign() != 0) {
            std::optional<NFElem> best;
            const SectionPiece* hit = nullptr;
            auto [lo, hi] = pieces.equal_range(t);
            for (auto it = lo; it != hi; ++it) {
                const SectionPiece& pc = *it->second;
                NFElem lam = (pc.y - p.y) / d.y;
                int sg = lam.sign();
                if (sg < 0 || (first && sg == 0) || lam > ex.lambda) continue;
                NFElem x = p.x + lam * d.x;
                if (x < pc.x0 || x > pc.x1) continue;
                if (!best || lam < *best) {
                    best = lam;
                    hit = &pc;
                }
            }
            if (hit) {
                res.kind = TraceKind::returns_to_section;
                res.length += *best;
                res.end_tri = t;
                res.end = p + *best * d;
                res.section_position = hit->offset + (res.end.x - hit->x0);
                return res;
            }
        }
        if (opt.max_length && (*opt.max_length < res.length + ex.lambda ||
                               (ex.vertex < 0 && res.length + ex.lambda == *opt.max_length))) {
            NFElem rest = *opt.max_length - res.length;
            res.kind = TraceKind::reached_length;
            res.length = *opt.max_length;
            res.end_tri = t;
            res.end = p + rest * d;
            return res;
        }
        res.length += ex.lambda;
        Point q = p + ex.lambda * d;
        first = false;
        if (ex.vertex >= 0) {
            int cls = vd.class_of_corner(t, ex.vertex);
            const VertexClass& vc = vd.classes[cls];
            if (!(opt.pass_regular_vertices && vc.regular())) {
                res.kind = TraceKind::hits_singularity;
                res.end_tri = t;
                res.end = q;
                res.vertex_class = cls;
                return res;
            }
            auto c = outgoing_corner(s, cls, d);
            if (!c) throw SurfaceError("trace: no outgoing corner at a regular vertex");
            t = c->tri;
            p = s.vertex(c->tri, c->k);
            if (opt.max_length && res.length == *opt.max_length) {
                res.kind = TraceKind::reached_length;
                res.end_tri = t;
                res.end = p;
                return res;
            }
            continue;
        }
        EdgeRef e{t, ex.edge};
        auto part = s.partner(e);
        if (!part) {
            res.kind = TraceKind::leaves_surface;
            res.end_tri = t;
            res.end = q;
            return res;
        }
        res.crossings.push_back(e);
        p = q - s.vertex(t, ex.edge) + s.vertex(part->tri, part->edge + 1);
        t = part->tri;
    }
    res.kind = TraceKind::exceeds_budget;
    res.end_tri = t;
    res.end = p;
    return res;
}

} // namespace

TraceResult trace(const Surface& s, int t, const Point& p, const Vec& d, const TraceOptions& opt) {
    if (d.x.is_zero() && d.y.is_zero()) throw SurfaceError("trace: zero direction");
    for (int j = 0; j < 3; ++j)
        if (p == s.vertex(t, j)) {
            TraceResult res;
            res.kind = TraceKind::hits_singularity;
            res.length = NFElem(s.field());
            res.end_tri = t;
            res.end = p;
            res.vertex_class = s.vertex_data().class_of_corner(t, j);
            return res;
        }
    return run_trace(s, t, p, d, opt, true);
}

TraceResult trace_from_corner(const Surface& s, Corner c, const Vec& d, const TraceOptions& opt) {
    if (!in_corner(s, c, d)) throw SurfaceError("trace_from_corner: direction outside the corner");
    return run_trace(s, c.tri, s.vertex(c.tri, c.k), d, opt, true);
}

namespace {

Section develop_east(const Surface& s, int t, Point cur, const NFElem& length, bool through_vertices) {
    Section sec;
    sec.length = length;
    const Vec east{NFElem(s.field(), Rational(1)), NFElem(s.field())};
    NFElem done(s.field());
    for (std::size_t guard = 0; guard < 100000; ++guard) {
        Exit ex = exit_of(s, t, cur, east);
        NFElem remaining = length - done;
        NFElem step = ex.lambda < remaining ? ex.lambda : remaining;
        if (step.sign() > 0) sec.pieces.push_back({t, cur.y, cur.x, cur.x + step, done});
        done += step;
        if (done == length) return sec;
        Point q = cur + ex.lambda * east;
        if (ex.vertex >= 0) {
            if (!through_vertices) throw SurfaceError("section meets a vertex");
            // Sweep clockwise from the incoming side until the corner holds
            // the outgoing direction: the upper angle is then pi.
            Corner c{t, ex.vertex};
            bool found = false;
            for (std::size_t k = 0; k <= 3 * s.size(); ++k) {
                if (in_corner(s, c, east)) {
                    found = true;
                    break;
                }
                auto nx = cw_next(s, c);
                if (!nx) throw SurfaceError("section leaves the surface");
                c = *nx;
            }
            if (!found) throw SurfaceError("section: no continuation at a vertex");
            t = c.tri;
            cur = s.vertex(c.tri, c.k);
            continue;
        }
        auto part = s.partner({t, ex.edge});
        if (!part) throw SurfaceError("section leaves the surface");
        cur = q - s.vertex(t, ex.edge) + s.vertex(part->tri, part->edge + 1);
        t = part->tri;
    }
    throw SurfaceError("section development did not terminate");
}

} // namespace

Section section_by_development(const Surface& s, int t, const Point& p, const NFElem& length) {
    for (int j = 0; j < 3; ++j)
        if (p == s.vertex(t, j)) throw SurfaceError("section meets a vertex");
    return develop_east(s, t, p, length, false);
}

Section section_from_corner(const Surface& s, Corner c, const NFElem& length) {
    const Vec east{NFElem(s.field(), Rational(1)), NFElem(s.field())};
    if (!in_corner(s, c, east)) throw SurfaceError("section_from_corner: corner does not contain (1, 0)");
    return develop_east(s, c.tri, s.vertex(c.tri, c.k), length, true);
}

IntervalExchange first_return_iet(const Surface& s, const Section& section, std::size_t budget) {
    const NumberField& F = s.field();
    const Vec up{NFElem(F), NFElem(F, Rational(1))}, down{NFElem(F), NFElem(F, Rational(-1))};
    TraceOptions opt;
    opt.budget = budget;
    opt.section = &section;
    std::vector<NFElem> cuts{NFElem(F)};
    auto add_hit = [&](const TraceResult& r) {
        if (r.kind == TraceKind::returns_to_section) cuts.push_back(*r.section_position);
    };
    // Points whose upward orbit meets a singular vertex or a section endpoint
    // before returning.
    const auto& vd = s.vertex_data();
    for (const auto& vc : vd.classes) {
        if (vc.regular()) continue;
        for (const Corner& c : vc.corners)
            if (in_corner(s, c, down)) add_hit(trace_from_corner(s, c, down, opt));
    }
    // Section endpoints, and vertices the section runs through.
    auto from_point = [&](int t, const Point& p) {
        for (int j = 0; j < 3; ++j)
            if (p == s.vertex(t, j)) {
                int cls = vd.class_of_corner(t, j);
                if (!vd.classes[cls].regular()) return;
                if (auto c = outgoing_corner(s, cls, down)) add_hit(trace_from_corner(s, *c, down, opt));
                return;
            }
        add_hit(trace(s, t, p, down, opt));
    };
    for (const auto& pc : section.pieces) {
        cuts.push_back(pc.offset);
        from_point(pc.tri, Point{pc.x0, pc.y});
        from_point(pc.tri, Point{pc.x1, pc.y});
    }
    std::erase_if(cuts, [&](const NFElem& c) { return c.sign() < 0 || !(c < section.length); });
    std::sort(cuts.begin(), cuts.end(), [](const NFElem& a, const NFElem& b) { return a < b; });
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<IetPiece> pieces;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const NFElem& lo = cuts[i];
        NFElem hi = i + 1 < cuts.size() ? cuts[i + 1] : section.length;
        NFElem mid = (lo + hi) * Rational(1, 2);
        auto [t, p] = section.locate(mid);
        TraceResult r = trace(s, t, p, up, opt);
        if (r.kind != TraceKind::returns_to_section)
            throw SurfaceError("first return: trajectory from the section ended with " + to_string(r.kind));
        pieces.push_back({lo, *r.section_position - mid});
    }
    IntervalExchange T(section.length, std::move(pieces));
    if (!T.is_bijection()) throw SurfaceError("first return: induced map is not a bijection of the section");
    return T;
}

// ---------------------------------------------------------------------------

namespace {

NFElem dist2_point_segment(const Point& v, const Point& a, const Point& b) {
    Vec ab = b - a;
    NFElem t = dot(v - a, ab) / norm2(ab);
    if (t.sign() <= 0) return norm2(v - a);
    if (t >= NFElem(t.field(), Rational(1))) return norm2(v - b);
    return norm2(v - (a + t * ab));
}

bool positive(const Vec& w) { return w.y.sign() > 0 || (w.y.sign() == 0 && w.x.sign() > 0); }

struct Unfolder {
    const Surface& s;
    const VertexData& vd;
    NFElem lmax2;
    std::size_t max_nodes;
    std::size_t nodes = 0;
    std::vector<SaddleConnection> out;
    Corner start;
    Point origin;

    void record(const Vec& w, int end_class) {
        if (norm2(w) > lmax2 || !positive(w)) return;
        out.push_back({w, start, vd.class_of_corner(start.tri, start.k), end_class});
    }

    // The window (L, R) of directions passes through edge e of t; off maps t's
    // chart into the developed plane.
    void explore(int t, int e, const Vec& L, const Vec& R, const Vec& off) {
        if (++nodes > max_nodes) throw SurfaceError("saddle connection search exceeded its node budget");
        Point a = s.vertex(t, e) + off, b = s.vertex(t, e + 1) + off;
        if (dist2_point_segment(origin, a, b) > lmax2) return;
        auto part = s.partner({t, e});
        if (!part) return;
        int t2 = part->tri, e2 = part->edge;
        Vec off2 = off + (s.vertex(t, e) - s.vertex(t2, e2 + 1));
        Vec w = s.vertex(t2, e2 + 2) + off2 - origin;
        bool right_of_L = cross(L, w).sign() > 0, left_of_R = cross(w, R).sign() > 0;
        if (right_of_L && left_of_R) {
            record(w, vd.class_of_corner(t2, e2 + 2));
            explore(t2, mod3(e2 + 1), L, w, off2);
            explore(t2, mod3(e2 + 2), w, R, off2);
        } else if (!right_of_L) {
            explore(t2, mod3(e2 + 2), L, R, off2);
        } else {
            explore(t2, mod3(e2 + 1), L, R, off2);
        }
    }
};

} // namespace

bool corner_contains(const Surface& s, Corner c, const Vec& d) { return in_corner(s, c, d); }

std::vector<SaddleConnection> saddle_connections_up_to(const Surface& s, const NFElem& lmax, std::size_t max_nodes) {
    return saddle_connections_within(s, lmax * lmax, max_nodes);
}

std::vector<SaddleConnection> saddle_connections_within(const Surface& s, const NFElem& lmax2, std::size_t max_nodes) {
    auto rep = validate(s);
    if (!rep.ok) throw SurfaceError("invalid surface: " + rep.issues.front());
    Unfolder u{s, s.vertex_data(), lmax2, max_nodes, 0, {}, {}, {}};
    const Vec zero{NFElem(s.field()), NFElem(s.field())};
    for (int t = 0; t < static_cast<int>(s.size()); ++t)
        for (int k = 0; k < 3; ++k) {
            u.start = {t, k};
            u.origin = s.vertex(t, k);
            Vec A = s.vertex(t, k + 1) - u.origin, B = s.vertex(t, k + 2) - u.origin;
            u.record(A, u.vd.class_of_corner(t, k + 1));
            u.explore(t, mod3(k + 1), A, B, zero);
        }
    return u.out;
}

// ---------------------------------------------------------------------------

namespace {

Point centroid(const Surface& s, int t) {
    const NumberField& F = s.field();
    NFElem third(F, Rational(1, 3));
    Point a = s.vertex(t, 0), b = s.vertex(t, 1), c = s.vertex(t, 2);
    return {third * (a.x + b.x + c.x), third * (a.y + b.y + c.y)};
}

TraceOptions unit_length(const Surface& s) {
    TraceOptions opt;
    opt.max_length = NFElem(s.field(), Rational(1));
    return opt;
}

// Unit-length trace from p, which may be a regular vertex.
std::optional<TraceResult> unit_trace(const Surface& s, int t, const Point& p, const Vec& d) {
    for (int j = 0; j < 3; ++j)
        if (p == s.vertex(t, j)) {
            int cls = s.vertex_data().class_of_corner(t, j);
            if (!s.vertex_data().classes[cls].regular()) return std::nullopt;
            auto c = outgoing_corner(s, cls, d);
            if (!c) return std::nullopt;
            t = c->tri;
            break;
        }
    return run_trace(s, t, p, d, unit_length(s), true);
}

// Image of p + d when the trace from (t, p) along d runs its full length.
std::optional<std::pair<int, Point>> shoot(const Surface& s, int t, const Point& p, const Vec& d) {
    if (d.x.is_zero() && d.y.is_zero()) return std::make_pair(t, p);
    auto r = unit_trace(s, t, p, d);
    if (!r || r->kind != TraceKind::reached_length) return std::nullopt;
    return std::make_pair(r->end_tri, r->end);
}

bool same_location(const Surface& s, int t1, const Point& p1, int t2, const Point& p2) {
    if (t1 == t2 && p1 == p2) return true;
    const auto& vd = s.vertex_data();
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i)
            if (p1 == s.vertex(t1, j) && p2 == s.vertex(t2, i))
                return vd.class_of_corner(t1, j) == vd.class_of_corner(t2, i);
    for (int k = 0; k < 3; ++k) {
        const Point& a = s.vertex(t1, k);
        Vec e = s.vertex(t1, k + 1) - a;
        if (!cross(e, p1 - a).is_zero()) continue;
        auto part = s.partner({t1, k});
        if (part && part->tri == t2 && p1 - a + s.vertex(t2, part->edge + 1) == p2) return true;
    }
    return false;
}

// Corner at the vertex of c holding d, reached by rotating from c through
// less than a half turn.
std::optional<Corner> rotate_to(const Surface& s, Corner c, const Vec& from, const Vec& d) {
    const bool ccw = cross(from, d).sign() >= 0;
    for (std::size_t k = 0; k <= 3 * s.size(); ++k) {
        if (in_corner(s, c, d)) return c;
        auto nx = ccw ? ccw_next(s, c) : cw_next(s, c);
        if (!nx) return std::nullopt;
        c = *nx;
    }
    return std::nullopt;
}

// Corner of triangle t at the vertex v.
std::optional<Corner> arrival_corner(const Surface& b, int t, const Point& v) {
    for (int j = 0; j < 3; ++j)
        if (b.vertex(t, j) == v) return Corner{t, j};
    return std::nullopt;
}

std::string attempt(const Surface& a, const Surface& b, Corner c1, Corner c2, TranslationMap& m) {
    const int n = static_cast<int>(a.size());
    m.image.assign(n, {-1, Point{}});
    const Vec east{NFElem(a.field(), Rational(1)), NFElem(a.field())};
    const int t0 = c1.tri;
    Vec u = centroid(a, t0) - a.vertex(c1.tri, c1.k);
    auto c = rotate_to(b, c2, east, u);
    if (!c) return "no corner for the base direction";
    TraceResult r0 = trace_from_corner(b, *c, u, unit_length(b));
    if (r0.kind != TraceKind::reached_length) return "base centroid not reached";
    m.image[t0] = {r0.end_tri, r0.end};
    std::deque<int> queue{t0};
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        const Point ct = centroid(a, t);
        for (int k = 0; k < 3; ++k) {
            auto part = a.partner({t, k});
            if (!part) continue;
            const int t2 = part->tri;
            const Point& vk = a.vertex(t, k);
            Point mid{NFElem(a.field(), Rational(1, 2)) * (vk.x + a.vertex(t, k + 1).x),
                      NFElem(a.field(), Rational(1, 2)) * (vk.y + a.vertex(t, k + 1).y)};
            Point c2t = centroid(a, t2) - a.vertex(t2, part->edge + 1) + vk;
            auto m1 = shoot(b, m.image[t].first, m.image[t].second, mid - ct);
            if (!m1) return "edge midpoint not reached";
            auto m2 = shoot(b, m1->first, m1->second, c2t - mid);
            if (!m2) return "neighbour centroid not reached";
            if (m.image[t2].first < 0) {
                m.image[t2] = *m2;
                queue.push_back(t2);
            } else if (!same_location(b, m.image[t2].first, m.image[t2].second, m2->first, m2->second)) {
                return "inconsistent image";
            }
        }
    }
    const auto& va = a.vertex_data();
    const auto& vb = b.vertex_data();
    for (int t = 0; t < n; ++t) {
        if (m.image[t].first < 0) return "surface not connected";
        const Point ct = centroid(a, t);
        for (int j = 0; j < 3; ++j) {
            const VertexClass& cls = va.classes[va.class_of_corner(t, j)];
            auto tr = unit_trace(b, m.image[t].first, m.image[t].second, a.vertex(t, j) - ct);
            if (!tr) return "centroid at a cone point";
            const TraceResult& r = *tr;
            if (cls.regular()) {
                if (r.kind != TraceKind::reached_length) return "regular vertex meets a singularity";
            } else {
                if (r.kind != TraceKind::hits_singularity || !(r.length == NFElem(b.field(), Rational(1))))
                    return "singular vertex not matched";
                if (vb.classes[r.vertex_class].winding != cls.winding) return "cone angles differ";
            }
        }
    }
    return {};
}

} // namespace

TranslationMap find_translation_equivalence(const Surface& a, const Surface& b) {
    TranslationMap m;
    if (!(area(a) == area(b))) {
        m.reason = "areas differ";
        return m;
    }
    const Vec east{NFElem(a.field(), Rational(1)), NFElem(a.field())};
    const auto& va = a.vertex_data();
    const auto& vb = b.vertex_data();
    std::optional<Corner> c1;
    int w = 0;
    for (const auto& cls : va.classes)
        if (cls.closed && cls.winding > 1)
            for (const Corner& c : cls.corners)
                if (!c1 && in_corner(a, c, east)) {
                    c1 = c;
                    w = cls.winding;
                }
    if (!c1) {
        m.reason = "no cone point";
        return m;
    }
    m.reason = "no candidate corner";
    for (const auto& cls : vb.classes) {
        if (!cls.closed || cls.winding != w) continue;
        for (const Corner& c2 : cls.corners) {
            if (!in_corner(b, c2, east)) continue;
            std::string why = attempt(a, b, *c1, c2, m);
            if (why.empty()) {
                m.ok = true;
                m.reason.clear();
                return m;
            }
            m.reason = why;
        }
    }
    m.image.clear();
    return m;
}

std::pair<int, Point> map_point(const Surface& a, const Surface& b, const TranslationMap& m, int t,
                                const Point& p) {
    if (!m.ok) throw SurfaceError("map_point: no translation equivalence");
    auto r = shoot(b, m.image[t].first, m.image[t].second, p - centroid(a, t));
    if (!r) throw SurfaceError("map_point: point is a cone point");
    return *r;
}

Section map_section(const Surface& a, const Surface& b, const TranslationMap& m, const Section& sec) {
    if (!m.ok) throw SurfaceError("map_section: no translation equivalence");
    const Vec east{NFElem(b.field(), Rational(1)), NFElem(b.field())};
    Section out;
    out.length = NFElem(b.field());
    for (const auto& pc : sec.pieces) {
        const Point start{pc.x0, pc.y};
        const Vec w = start - centroid(a, pc.tri);
        auto tr = unit_trace(b, m.image[pc.tri].first, m.image[pc.tri].second, w);
        if (!tr) throw SurfaceError("map_section: bad image");
        const TraceResult& r = *tr;
        NFElem len = pc.x1 - pc.x0;
        Section piece;
        if (r.kind == TraceKind::reached_length) {
            piece = develop_east(b, r.end_tri, r.end, len, true);
        } else if (r.kind == TraceKind::hits_singularity) {
            auto c = arrival_corner(b, r.end_tri, r.end);
            if (!c) throw SurfaceError("map_section: lost the cone point");
            Vec back{-w.x, -w.y};
            auto ce = rotate_to(b, *c, back, east);
            if (!ce) throw SurfaceError("map_section: no eastward corner");
            piece = develop_east(b, ce->tri, b.vertex(ce->tri, ce->k), len, true);
        } else {
            throw SurfaceError("map_section: section start not reached");
        }
        for (auto q : piece.pieces) {
            q.offset += out.length;
            out.pieces.push_back(q);
        }
        out.length += len;
    }
    return out;
}

} // namespace ay

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

#pragma once

#include "ay/iet.hpp"
#include "ay/numfield.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ay {

struct Point {
    NFElem x, y;

    friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(const NFElem& s, const Point& p) { return {s * p.x, s * p.y}; }
    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    Point operator-() const { return {-x, -y}; }
};

using Vec = Point;

inline NFElem cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline NFElem dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }
inline NFElem norm2(const Vec& a) { return dot(a, a); }

Point make_point(const NumberField& F, const Rational& x, const Rational& y);
std::string to_string(const Point& p);

/// Directed edge k of triangle t, running from vertex k to vertex k + 1.
struct EdgeRef {
    int tri = -1;
    int edge = -1;

    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

class SurfaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VertexData;

/*
 * Translation surface as a Delta-complex: triangles with their own planar
 * coordinates (counter-clockwise), glued along edges by translations.  Edges
 * left unglued form the boundary; they are only legal when the surface is
 * flagged as having boundary (finite pieces of an infinite surface).
 */
class Surface {
public:
    explicit Surface(const NumberField& field) : field_(&field) {}
    Surface(const Surface& o);
    Surface& operator=(const Surface& o);

    const NumberField& field() const { return *field_; }

    /// Adds a triangle; throws unless the vertices are in counter-clockwise order.
    int add_triangle(Point a, Point b, Point c);
    /// Glues two edges (overwrites previous partners, no checks).
    void glue(EdgeRef a, EdgeRef b);
    void unglue(EdgeRef a);

    std::size_t size() const { return tris_.size(); }
    const std::array<Point, 3>& triangle(int t) const { return tris_[t]; }
    const Point& vertex(int t, int k) const { return tris_[t][((k % 3) + 3) % 3]; }
    Vec edge_vector(EdgeRef e) const { return vertex(e.tri, e.edge + 1) - vertex(e.tri, e.edge); }
    std::optional<EdgeRef> partner(EdgeRef e) const;

    bool allow_boundary = false;
    /// Free-form tag, e.g. "staircase g=3".
    std::string name;

    /// Corner classes and windings, computed on first use.  Invalidated by
    /// any mutation.
    const VertexData& vertex_data() const;

private:
    void invalidate();

    const NumberField* field_;
    std::vector<std::array<Point, 3>> tris_;
    std::vector<std::array<EdgeRef, 3>> glue_;
    mutable std::mutex cache_mutex_;
    mutable std::shared_ptr<const VertexData> cache_;
};

// ---------------------------------------------------------------------------
// Validation and topology

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
};

ValidationReport validate(const Surface& s);

struct Corner {
    int tri;
    int k;

    friend auto operator<=>(const Corner&, const Corner&) = default;
};

struct VertexClass {
    /// Corners in counter-clockwise order around the vertex.  For a vertex on
    /// the boundary the list runs from one boundary edge to the other.
    std::vector<Corner> corners;
    bool closed = true;
    /// Total angle / 2 pi; 0 for boundary vertices.
    int winding = 0;
    Point representative;

    bool regular() const { return closed && winding == 1; }
};

struct VertexData {
    std::vector<VertexClass> classes;
    /// Class id of corner (t, k) at index 3 t + k.
    std::vector<int> class_of;

    int class_of_corner(int t, int k) const { return class_of[3 * t + ((k % 3) + 3) % 3]; }
};

struct ComponentInfo {
    std::vector<int> triangles;
    long vertices = 0, edges = 0, faces = 0;
    long euler = 0;
    long boundary_cycles = 0;
    long genus = 0;
};

struct Topology {
    long vertices = 0, edges = 0, faces = 0;
    long euler = 0;
    long boundary_edges = 0;
    long boundary_cycles = 0;
    /// Genus when connected, otherwise -1 (see components).
    long genus = -1;
    std::vector<ComponentInfo> components;
    std::vector<int> vertex_class_of_corner;
};

/// Throws SurfaceError on an invalid surface.
Topology euler_genus(const Surface& s);

struct ConeInfo {
    int vertex_class;
    bool closed;
    int winding;
    Point representative;
};

std::vector<ConeInfo> cone_windings(const Surface& s);
/// Windings of the closed vertex classes with winding > 1, sorted.
std::vector<int> singular_windings(const Surface& s);

NFElem area(const Surface& s);

// ---------------------------------------------------------------------------
// Straight-line flow

/// Horizontal segment y = const, x in [x0, x1], inside one triangle's chart;
/// offset is its parameter along the whole section.
struct SectionPiece {
    int tri;
    NFElem y, x0, x1;
    NFElem offset;
};

struct Section {
    std::vector<SectionPiece> pieces;
    NFElem length;

    /// Chart location (triangle, point) of parameter s in [0, length).
    std::pair<int, Point> locate(const NFElem& s) const;
};

/// Section along a chain of horizontal edges, each with its triangle above.
Section section_from_edges(const Surface& s, const std::vector<EdgeRef>& edges);
/// Section developed by flowing horizontally (direction (1, 0)) from p in t for
/// the given length.  Throws if the segment meets a vertex or the boundary.
Section section_by_development(const Surface& s, int t, const Point& p, const NFElem& length);
/// Horizontal section leaving a vertex through corner c (which must contain
/// the direction (1, 0)).  At vertices met on the way the segment continues so
/// that the angle on its upper side is pi.
Section section_from_corner(const Surface& s, Corner c, const NFElem& length);

enum class TraceKind { hits_singularity, returns_to_section, exceeds_budget, leaves_surface, reached_length };

std::string to_string(TraceKind k);

struct TraceResult {
    TraceKind kind = TraceKind::exceeds_budget;
    /// Sum of the flow parameters: the Euclidean length when |direction| = 1.
    NFElem length;
    std::vector<EdgeRef> crossings;
    int end_tri = -1;
    Point end;
    /// Vertex class reached (hits_singularity).
    int vertex_class = -1;
    /// Parameter along the section (returns_to_section).
    std::optional<NFElem> section_position;
};

struct TraceOptions {
    std::size_t budget = 100000;
    /// Continue straight through vertices of total angle 2 pi.
    bool pass_regular_vertices = true;
    const Section* section = nullptr;
    /// Stop once the flow parameter reaches this value (reached_length).
    std::optional<NFElem> max_length;
};

/// Flow from p in triangle t along direction d.  Starting exactly at a vertex
/// is critical: reported as hits_singularity with zero length.
TraceResult trace(const Surface& s, int t, const Point& p, const Vec& d, const TraceOptions& opt = {});
/// Direction d lies in the half-open angular sector [A, B) of corner c.
bool corner_contains(const Surface& s, Corner c, const Vec& d);
/// Flow out of a vertex through corner (t, k); d must lie in the corner.
TraceResult trace_from_corner(const Surface& s, Corner c, const Vec& d, const TraceOptions& opt = {});

/// IET induced on the section by the upward vertical flow.
IntervalExchange first_return_iet(const Surface& s, const Section& section, std::size_t budget = 100000);

struct SaddleConnection {
    Vec vector;
    Corner start;
    int start_class;
    int end_class;
};

/// Straight segments between vertices (every vertex of the complex counts as
/// an endpoint), with |vector| <= lmax, one per unoriented segment (vector
/// with y > 0, or y = 0 and x > 0).  Throws SurfaceError past max_nodes.
std::vector<SaddleConnection> saddle_connections_up_to(const Surface& s, const NFElem& lmax,
                                                       std::size_t max_nodes = 2'000'000);
/// Same, bounded by the squared length |vector|^2 <= lmax2.
std::vector<SaddleConnection> saddle_connections_within(const Surface& s, const NFElem& lmax2,
                                                        std::size_t max_nodes = 2'000'000);

/// Translation equivalence a -> b, stored as the image in b of the centroid of
/// every triangle of a.
struct TranslationMap {
    bool ok = false;
    std::string reason;
    std::vector<std::pair<int, Point>> image;
};

/// Searches for a translation equivalence matching a cone point of a that has
/// an eastward corner with a cone point of b of the same angle.
TranslationMap find_translation_equivalence(const Surface& a, const Surface& b);
/// Image in b of the point p of triangle t of a.
std::pair<int, Point> map_point(const Surface& a, const Surface& b, const TranslationMap& m, int t, const Point& p);
/// Image in b of a horizontal section of a.
Section map_section(const Surface& a, const Surface& b, const TranslationMap& m, const Section& sec);

} // namespace ay

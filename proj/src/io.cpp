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

#include "ay/io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace ay {

Json to_json(const NFElem& x) {
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs()) coeffs.push_back(to_string(c));
    return Json{{"g", x.g()}, {"coeffs", coeffs}, {"approx", x.to_double()}};
}

NFElem nfelem_from_json(const Json& j) {
    const NumberField& F = NumberField::get(j.at("g").get<int>());
    std::vector<Rational> c;
    for (const auto& v : j.at("coeffs")) c.push_back(parse_rational(v.get<std::string>()));
    return NFElem(F, std::move(c));
}

Json to_json(const Point& p) { return Json{{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

namespace {

Point point_from_json(const Json& j) { return {nfelem_from_json(j.at("x")), nfelem_from_json(j.at("y"))}; }

} // namespace

Json to_json(const IntervalExchange& t) {
    Json pieces = Json::array();
    for (const auto& p : t.pieces())
        pieces.push_back({{"left", to_json(p.left)}, {"translation", to_json(p.translation)}});
    return Json{{"length", to_json(t.length())}, {"pieces", pieces}};
}

IntervalExchange iet_from_json(const Json& j) {
    std::vector<IetPiece> pieces;
    for (const auto& p : j.at("pieces"))
        pieces.push_back({nfelem_from_json(p.at("left")), nfelem_from_json(p.at("translation"))});
    return IntervalExchange(nfelem_from_json(j.at("length")), std::move(pieces));
}

Json to_json(const Surface& s) {
    Json tris = Json::array();
    for (int t = 0; t < static_cast<int>(s.size()); ++t)
        tris.push_back(Json::array({to_json(s.vertex(t, 0)), to_json(s.vertex(t, 1)), to_json(s.vertex(t, 2))}));
    Json glue = Json::array();
    for (int t = 0; t < static_cast<int>(s.size()); ++t)
        for (int e = 0; e < 3; ++e) {
            auto p = s.partner({t, e});
            if (p && std::make_pair(t, e) < std::make_pair(p->tri, p->edge))
                glue.push_back(Json::array({t, e, p->tri, p->edge}));
        }
    Topology top = euler_genus(s);
    Json windings = Json::array();
    for (int w : singular_windings(s)) windings.push_back(w);
    return Json{{"g", s.field().g()},
                {"triangles", tris},
                {"gluings", glue},
                {"summary",
                 {{"vertices", top.vertices},
                  {"edges", top.edges},
                  {"faces", top.faces},
                  {"euler", top.euler},
                  {"genus", top.genus},
                  {"boundary_edges", top.boundary_edges},
                  {"cone_windings", windings},
                  {"area", to_json(area(s))}}}};
}

Surface surface_from_json(const Json& j) {
    Surface s(NumberField::get(j.at("g").get<int>()));
    for (const auto& t : j.at("triangles"))
        s.add_triangle(point_from_json(t.at(0)), point_from_json(t.at(1)), point_from_json(t.at(2)));
    for (const auto& g : j.at("gluings"))
        s.glue({g.at(0).get<int>(), g.at(1).get<int>()}, {g.at(2).get<int>(), g.at(3).get<int>()});
    return s;
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string to_svg(const Surface& s, const std::string& title) {
    const int n = static_cast<int>(s.size());
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    bool first = true;
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 3; ++k) {
            double x = s.vertex(t, k).x.to_double(), y = s.vertex(t, k).y.to_double();
            if (first) {
                x0 = x1 = x;
                y0 = y1 = y;
                first = false;
            }
            x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
        }
    const double size = 640, margin = 20;
    const double scale = (size - 2 * margin) / std::max({x1 - x0, y1 - y0, 1e-9});
    auto X = [&](double x) { return fmt(margin + (x - x0) * scale); };
    auto Y = [&](double y) { return fmt(size - margin - (y - y0) * scale); };
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
    if (!title.empty()) os << "  <title>" << escape(title) << "</title>\n";
    for (int t = 0; t < n; ++t) {
        os << "  <polygon fill=\"#dde8f5\" stroke=\"none\" points=\"";
        for (int k = 0; k < 3; ++k)
            os << (k ? " " : "") << X(s.vertex(t, k).x.to_double()) << "," << Y(s.vertex(t, k).y.to_double());
        os << "\"/>\n";
    }
    for (int t = 0; t < n; ++t)
        for (int k = 0; k < 3; ++k) {
            const Point& a = s.vertex(t, k);
            const Point& b = s.vertex(t, k + 1);
            bool glued = s.partner({t, k}).has_value();
            os << "  <line x1=\"" << X(a.x.to_double()) << "\" y1=\"" << Y(a.y.to_double()) << "\" x2=\""
               << X(b.x.to_double()) << "\" y2=\"" << Y(b.y.to_double()) << "\" stroke=\""
               << (glued ? "#999999" : "#000000") << "\" stroke-width=\"" << (glued ? "0.5" : "1.5") << "\"/>\n";
        }
    os << "</svg>\n";
    return os.str();
}

} // namespace ay

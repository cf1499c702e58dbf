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

#include "ay/surface.hpp"

#include <map>
#include <string>
#include <vector>

namespace ay {

class BuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unit square with opposite sides glued, over the field of genus g (default Q).
Surface build_unit_torus(int g = 1);

/*
 * Order in which the slit abscissas f_g(a_1), ..., f_g(a_g) are assigned to
 * sigma_1, ..., sigma_g, where a_i = (alpha - alpha^i) / (1 - alpha):
 *   direct:   sigma_i at f_g(a_i)
 *   reversed: sigma_i at f_g(a_{g+1-i})
 *   shifted:  sigma_i at f_g(a_{i+1}), sigma_g at f_g(a_1)
 */
enum class SlitOrder { direct, reversed, shifted };

struct StaircaseSpec {
    int g = 0;
    /// Step k spans [a_k, a_{k+1}) with top height top[k-1]; a has g + 1 entries.
    std::vector<NFElem> a, top;
    std::vector<NFElem> slit_x, slit_len;
};

StaircaseSpec staircase_spec(int g, SlitOrder order = SlitOrder::reversed);

/// |sigma_1|, ..., |sigma_g|.
std::vector<NFElem> slit_lengths(int g);

/// g = 1: unit torus; g = 2: the two-torus surface; g >= 3: the slit staircase.
Surface build_staircase(int g, SlitOrder order = SlitOrder::reversed);

/// Horizontal edges along the bottom of the square, left to right.
std::vector<EdgeRef> staircase_bottom(const Surface& s);

/// Vertex labels for the triangle presentation: "P0".."Pg", "Q0".."Qg" and the
/// mirrored "P0'".."Qg'".
std::map<std::string, Point> triangulation_points(int g);
Surface build_triangulation(int g);
/// Corner labels of build_triangulation(g), per triangle.
std::vector<std::array<std::string, 3>> triangulation_labels(int g);
/// Directed edge of build_triangulation(g) between two labelled vertices.
EdgeRef triangulation_edge(int g, const std::string& from, const std::string& to);

struct CheckItem {
    std::string name;
    bool ok;
    std::string detail;
};

struct CheckReport {
    bool ok = true;
    std::vector<CheckItem> items;

    void add(std::string name, bool pass, std::string detail = {});
};

/// Self-similarity f_g = h_g^-1 o first_return(f_g, alpha) o h_g, slit scaling,
/// the slit condition and the derivative diag(1/alpha, alpha).
CheckReport verify_psi(int g);
/// r f_g r = f_g^-1 and mirror symmetry of the triangle presentation.
CheckReport verify_rho(int g);

/// Finite piece of the limit surface: the unit square with its top glued to
/// the bottom by f_inf and a slit on x = 1/2 of height 1/2.  Gluings beyond
/// depth N (top blocks n >= N, slit and right-edge pieces shorter than 2^-N)
/// are left as boundary.
Surface build_limit_truncation(int N);
/// Exact area of build_limit_truncation(N); the truncation only cuts gluings,
/// so this is 1 for every N.
Rational limit_truncation_area(int N);

struct VerticalSaddle {
    /// Abscissa on the bottom edge the connection passes through.
    Rational x;
    Rational length;
};

struct VerticalSaddleScan {
    int N = 0;
    std::vector<VerticalSaddle> found;
    /// Start points whose vertical line reaches the truncation boundary.
    long incomplete = 0;
};

/// Vertical saddle connections of build_limit_truncation(N) through the
/// bottom points k / 2^denom_bits.  A start point that is itself a vertex
/// contributes the connections leaving it upwards from that position.
VerticalSaddleScan limit_vertical_saddles(int N, int denom_bits);

/// Limit position (alpha -> 1/2, g -> infinity) of a labelled vertex: "P0",
/// "Q0", "P1", "Pg", "P<i>" (i >= 2), "Q<i>" (i >= 1).
std::pair<Rational, Rational> limit_vertex(const std::string& label);

struct VertexConvergenceRow {
    int g;
    std::string label;
    double distance;
    double bound;
    bool within;
};

struct VertexConvergenceReport {
    bool ok = true;
    bool monotone = true;
    std::vector<VertexConvergenceRow> rows;
    /// Max distance per genus (doubles for display; decisions are exact).
    std::vector<std::pair<int, double>> max_by_genus;
};

VertexConvergenceReport vertex_convergence_check(int g_max, int i_max = 3);

} // namespace ay

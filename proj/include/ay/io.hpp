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
#include "ay/surface.hpp"

#include <json.hpp>

#include <string>

namespace ay {

using Json = nlohmann::ordered_json;

/// {"g": g, "coeffs": ["p/q", ...], "approx": x}; coeffs low degree first.
Json to_json(const NFElem& x);
NFElem nfelem_from_json(const Json& j);

Json to_json(const Point& p);
Json to_json(const IntervalExchange& t);
IntervalExchange iet_from_json(const Json& j);

/// Triangles, gluings and a topology summary.
Json to_json(const Surface& s);
Surface surface_from_json(const Json& j);

/// Triangles drawn at their chart positions, scaled to fit a 640 px square.
/// Glued edges are grey, free edges black.
std::string to_svg(const Surface& s, const std::string& title = {});

} // namespace ay

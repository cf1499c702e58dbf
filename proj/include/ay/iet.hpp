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

#include "ay/numfield.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ay {

struct IetPiece {
    NFElem left;
    NFElem translation;
};

/*
 * Interval exchange on [0, L): piece k is [left_k, left_{k+1}) and is moved by
 * x -> x + translation_k.  Pieces are left-closed and right-open, so the map
 * is continuous from the right at every breakpoint.
 *
 * The stored form is canonical: adjacent pieces with equal translation are
 * merged, so two maps are equal iff their piece lists are equal.
 */
class IntervalExchange {
public:
    IntervalExchange(NFElem length, std::vector<IetPiece> pieces);

    static IntervalExchange identity(const NFElem& length);

    const NFElem& length() const { return length_; }
    const std::vector<IetPiece>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    const NumberField& field() const { return length_.field(); }

    NFElem right(std::size_t k) const;
    std::size_t piece_index(const NFElem& x) const;
    NFElem apply(const NFElem& x) const;

    /// True iff the image pieces tile [0, L) exactly.
    bool is_bijection() const;

    friend bool operator==(const IntervalExchange& a, const IntervalExchange& b);

private:
    NFElem length_;
    std::vector<IetPiece> pieces_;
};

class IetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

IntervalExchange iet_inverse(const IntervalExchange& t);
/// outer o inner.
IntervalExchange iet_compose(const IntervalExchange& outer, const IntervalExchange& inner);
inline bool iet_equal(const IntervalExchange& a, const IntervalExchange& b) { return a == b; }
NFElem iet_apply(const IntervalExchange& t, const NFElem& x);

/// Induced first-return map on [0, t), computed by following subintervals
/// until they re-enter [0, t).  Throws IetError when max_steps refinement
/// steps are exhausted.
IntervalExchange first_return(const IntervalExchange& t, const NFElem& threshold,
                              std::size_t max_steps = 1'000'000);

/// Exact orbit x, T x, ..., T^n x (T^-1 for negative n), |n| + 1 entries.
std::vector<NFElem> orbit(const IntervalExchange& t, const NFElem& x, long n, long cap = 1'000'000);

struct AffinePiece {
    NFElem left;
    NFElem slope;
    NFElem offset;
};

/// Injective piecewise affine map on [0, L), piece k: x -> slope_k x + offset_k.
class PiecewiseAffine {
public:
    PiecewiseAffine(NFElem length, std::vector<AffinePiece> pieces);

    const NFElem& length() const { return length_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    NFElem right(std::size_t k) const;
    std::size_t piece_index(const NFElem& x) const;
    NFElem apply(const NFElem& x) const;

    /// Inverse on the image; the image must be an interval [0, L').
    PiecewiseAffine inverse() const;

private:
    NFElem length_;
    std::vector<AffinePiece> pieces_;
};

/// h o T o h^-1 on the image of h.  Requires h to have a single slope on each
/// subinterval that T moves rigidly; otherwise IetError.
IntervalExchange conjugate(const IntervalExchange& t, const PiecewiseAffine& h);

/// The Arnoux-Yoccoz map on [0, 1): swap halves inside blocks of lengths
/// alpha, ..., alpha^g, then swap [0, 1/2) with [1/2, 1).  g = 1 requires
/// allow_degenerate and yields the identity.
IntervalExchange build_f_g(int g, bool allow_degenerate = false);

/// Half-swap x -> x +- 1/2 on [0, 1), over Q(alpha_g).
IntervalExchange build_half_rotation(int g);

/// Renormalizing map [0, 1) -> [0, alpha).
PiecewiseAffine build_h_g(int g);

/// Half-open interval [lo, hi).
struct Arc {
    NFElem lo;
    NFElem hi;
};

/// Sorts and merges touching arcs.
std::vector<Arc> normalize_arcs(std::vector<Arc> arcs);

/// Image of a union of arcs under t, normalized.
std::vector<Arc> image_of_arcs(const IntervalExchange& t, const std::vector<Arc>& arcs);

/// True iff t maps the union of arcs onto itself.
bool is_invariant_union(const IntervalExchange& t, const std::vector<Arc>& arcs);

} // namespace ay

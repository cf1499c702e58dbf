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

#include "ay/iet.hpp"

#include <algorithm>

namespace ay {

namespace {

void sort_unique(std::vector<NFElem>& xs) {
    std::sort(xs.begin(), xs.end(), [](const NFElem& a, const NFElem& b) { return a < b; });
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

// Index of the piece containing x given sorted left endpoints.
template <typename Pieces>
std::size_t locate(const Pieces& pieces, const NFElem& x) {
    std::size_t lo = 0, hi = pieces.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (pieces[mid].left <= x) lo = mid;
        else hi = mid;
    }
    return lo;
}

} // namespace

// ---------------------------------------------------------------------------

IntervalExchange::IntervalExchange(NFElem length, std::vector<IetPiece> pieces)
    : length_(std::move(length)) {
    if (length_.sign() <= 0) throw IetError("interval exchange needs a positive length");
    if (pieces.empty()) throw IetError("interval exchange needs at least one piece");
    if (!pieces.front().left.is_zero()) throw IetError("first piece must start at 0");
    for (std::size_t k = 1; k < pieces.size(); ++k)
        if (!(pieces[k - 1].left < pieces[k].left)) throw IetError("piece endpoints must increase strictly");
    if (!(pieces.back().left < length_)) throw IetError("piece outside the domain");
    for (auto& p : pieces) {
        if (!pieces_.empty() && pieces_.back().translation == p.translation) continue;
        pieces_.push_back(std::move(p));
    }
}

IntervalExchange IntervalExchange::identity(const NFElem& length) {
    return IntervalExchange(length, {{NFElem(length.field()), NFElem(length.field())}});
}

NFElem IntervalExchange::right(std::size_t k) const {
    return k + 1 < pieces_.size() ? pieces_[k + 1].left : length_;
}

std::size_t IntervalExchange::piece_index(const NFElem& x) const {
    if (x.sign() < 0 || !(x < length_)) throw IetError("point outside the domain of the interval exchange");
    return locate(pieces_, x);
}

NFElem IntervalExchange::apply(const NFElem& x) const {
    return x + pieces_[piece_index(x)].translation;
}

bool IntervalExchange::is_bijection() const {
    std::vector<std::pair<NFElem, NFElem>> images;
    for (std::size_t k = 0; k < pieces_.size(); ++k)
        images.emplace_back(pieces_[k].left + pieces_[k].translation, right(k) + pieces_[k].translation);
    std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    NFElem cursor(field());
    for (const auto& [lo, hi] : images) {
        if (!(lo == cursor)) return false;
        cursor = hi;
    }
    return cursor == length_;
}

bool operator==(const IntervalExchange& a, const IntervalExchange& b) {
    if (&a.field() != &b.field()) return false;
    if (!(a.length_ == b.length_) || a.pieces_.size() != b.pieces_.size()) return false;
    for (std::size_t k = 0; k < a.pieces_.size(); ++k)
        if (!(a.pieces_[k].left == b.pieces_[k].left) || !(a.pieces_[k].translation == b.pieces_[k].translation))
            return false;
    return true;
}

NFElem iet_apply(const IntervalExchange& t, const NFElem& x) { return t.apply(x); }

IntervalExchange iet_inverse(const IntervalExchange& t) {
    if (!t.is_bijection()) throw IetError("inverse of a non-bijective interval exchange");
    std::vector<IetPiece> inv;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto& p = t.pieces()[k];
        inv.push_back({p.left + p.translation, -p.translation});
    }
    std::sort(inv.begin(), inv.end(), [](const IetPiece& a, const IetPiece& b) { return a.left < b.left; });
    return IntervalExchange(t.length(), std::move(inv));
}

IntervalExchange iet_compose(const IntervalExchange& outer, const IntervalExchange& inner) {
    if (!(outer.length() == inner.length())) throw IetError("compose: domain lengths differ");
    std::vector<NFElem> cuts;
    for (const auto& p : inner.pieces()) cuts.push_back(p.left);
    // Preimages of the outer breakpoints under inner.
    for (const auto& q : outer.pieces()) {
        for (std::size_t k = 0; k < inner.size(); ++k) {
            const auto& p = inner.pieces()[k];
            NFElem lo = p.left + p.translation, hi = inner.right(k) + p.translation;
            if (lo <= q.left && q.left < hi) cuts.push_back(q.left - p.translation);
        }
    }
    sort_unique(cuts);
    std::vector<IetPiece> pieces;
    for (const auto& c : cuts) {
        const auto& p = inner.pieces()[inner.piece_index(c)];
        NFElem y = c + p.translation;
        pieces.push_back({c, p.translation + outer.pieces()[outer.piece_index(y)].translation});
    }
    return IntervalExchange(inner.length(), std::move(pieces));
}

IntervalExchange first_return(const IntervalExchange& t, const NFElem& threshold, std::size_t max_steps) {
    if (threshold.sign() <= 0 || threshold > t.length()) throw IetError("first_return: threshold outside (0, L]");
    if (!t.is_bijection()) throw IetError("first_return: map must be a bijection");
    if (threshold == t.length()) return t;

    // A segment is the source interval [lo, hi) together with the total
    // translation accumulated so far.
    struct Segment {
        NFElem lo, hi, shift;
    };
    std::vector<Segment> stack;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const auto& p = t.pieces()[k];
        if (!(p.left < threshold)) break;
        NFElem hi = t.right(k);
        if (hi > threshold) hi = threshold;
        stack.push_back({p.left, hi, NFElem(t.field())});
    }
    std::vector<IetPiece> done;
    std::size_t steps = 0;
    while (!stack.empty()) {
        if (++steps > max_steps) throw IetError("first_return: refinement budget exceeded");
        Segment s = std::move(stack.back());
        stack.pop_back();
        NFElem pos = s.lo + s.shift;
        std::size_t k = t.piece_index(pos);
        NFElem piece_end = t.right(k);
        if (s.hi + s.shift > piece_end) {
            NFElem cut = piece_end - s.shift;
            stack.push_back({cut, s.hi, s.shift});
            s.hi = cut;
        }
        s.shift += t.pieces()[k].translation;
        NFElem lo_img = s.lo + s.shift;
        if (lo_img < threshold) {
            NFElem hi_img = s.hi + s.shift;
            if (hi_img > threshold) {
                NFElem cut = threshold - s.shift;
                stack.push_back({cut, s.hi, s.shift});
                s.hi = cut;
            }
            done.push_back({s.lo, s.shift});
        } else {
            stack.push_back(std::move(s));
        }
    }
    std::sort(done.begin(), done.end(), [](const IetPiece& a, const IetPiece& b) { return a.left < b.left; });
    return IntervalExchange(threshold, std::move(done));
}

std::vector<NFElem> orbit(const IntervalExchange& t, const NFElem& x, long n, long cap) {
    if (n > cap || n < -cap) throw IetError("orbit: length exceeds cap");
    std::vector<NFElem> out{x};
    if (n == 0) return out;
    const IntervalExchange step = n > 0 ? t : iet_inverse(t);
    long count = n > 0 ? n : -n;
    out.reserve(static_cast<std::size_t>(count) + 1);
    for (long i = 0; i < count; ++i) out.push_back(step.apply(out.back()));
    return out;
}

// ---------------------------------------------------------------------------

PiecewiseAffine::PiecewiseAffine(NFElem length, std::vector<AffinePiece> pieces)
    : length_(std::move(length)), pieces_(std::move(pieces)) {
    if (pieces_.empty() || !pieces_.front().left.is_zero()) throw IetError("affine map must start at 0");
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        if (pieces_[k].slope.sign() <= 0) throw IetError("affine slopes must be positive");
        if (k && !(pieces_[k - 1].left < pieces_[k].left)) throw IetError("affine endpoints must increase");
    }
}

NFElem PiecewiseAffine::right(std::size_t k) const {
    return k + 1 < pieces_.size() ? pieces_[k + 1].left : length_;
}

std::size_t PiecewiseAffine::piece_index(const NFElem& x) const {
    if (x.sign() < 0 || !(x < length_)) throw IetError("point outside the domain of the affine map");
    return locate(pieces_, x);
}

NFElem PiecewiseAffine::apply(const NFElem& x) const {
    const auto& p = pieces_[piece_index(x)];
    return p.slope * x + p.offset;
}

PiecewiseAffine PiecewiseAffine::inverse() const {
    struct Img {
        NFElem lo, hi;
        std::size_t k;
    };
    std::vector<Img> imgs;
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const auto& p = pieces_[k];
        imgs.push_back({p.slope * p.left + p.offset, p.slope * right(k) + p.offset, k});
    }
    std::sort(imgs.begin(), imgs.end(), [](const Img& a, const Img& b) { return a.lo < b.lo; });
    NFElem cursor(length_.field());
    std::vector<AffinePiece> inv;
    for (const auto& im : imgs) {
        if (!(im.lo == cursor)) throw IetError("affine map is not invertible onto an interval [0, L')");
        const auto& p = pieces_[im.k];
        NFElem s = p.slope.inverse();
        inv.push_back({im.lo, s, -(p.offset * s)});
        cursor = im.hi;
    }
    return PiecewiseAffine(cursor, std::move(inv));
}

IntervalExchange conjugate(const IntervalExchange& t, const PiecewiseAffine& h) {
    if (!(t.length() == h.length())) throw IetError("conjugate: domain mismatch");
    std::vector<NFElem> cuts;
    for (const auto& p : t.pieces()) cuts.push_back(p.left);
    for (const auto& q : h.pieces()) {
        cuts.push_back(q.left);
        for (std::size_t k = 0; k < t.size(); ++k) {
            const auto& p = t.pieces()[k];
            NFElem lo = p.left + p.translation, hi = t.right(k) + p.translation;
            if (lo <= q.left && q.left < hi) cuts.push_back(q.left - p.translation);
        }
    }
    sort_unique(cuts);
    struct Img {
        NFElem lo, hi, translation;
    };
    std::vector<Img> imgs;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        const NFElem& u = cuts[i];
        NFElem v = i + 1 < cuts.size() ? cuts[i + 1] : t.length();
        const auto& tp = t.pieces()[t.piece_index(u)];
        const auto& h1 = h.pieces()[h.piece_index(u)];
        NFElem moved = u + tp.translation;
        const auto& h2 = h.pieces()[h.piece_index(moved)];
        if (!(h1.slope == h2.slope)) throw IetError("conjugate: slopes differ across a moved piece");
        NFElem hu = h1.slope * u + h1.offset;
        imgs.push_back({hu, hu + h1.slope * (v - u), (h2.slope * moved + h2.offset) - hu});
    }
    std::sort(imgs.begin(), imgs.end(), [](const Img& a, const Img& b) { return a.lo < b.lo; });
    NFElem cursor(t.field());
    std::vector<IetPiece> pieces;
    for (const auto& im : imgs) {
        if (!(im.lo == cursor)) throw IetError("conjugate: image of h is not an interval [0, L')");
        pieces.push_back({im.lo, im.translation});
        cursor = im.hi;
    }
    return IntervalExchange(cursor, std::move(pieces));
}

IntervalExchange build_half_rotation(int g) {
    const auto& F = NumberField::get(g);
    NFElem half(F, Rational(1, 2));
    return IntervalExchange(NFElem(F, Rational(1)), {{NFElem(F), half}, {half, -half}});
}

IntervalExchange build_f_g(int g, bool allow_degenerate) {
    if (g < 1 || (g == 1 && !allow_degenerate)) throw IetError("build_f_g: g must be >= 2 (g = 1 needs the degenerate flag)");
    const auto& F = NumberField::get(g);
    NFElem a = NFElem::alpha(F), one(F, Rational(1));
    std::vector<IetPiece> swap_blocks;
    NFElem start(F), block = a;
    for (int k = 1; k <= g; ++k) {
        NFElem half = block * Rational(1, 2);
        swap_blocks.push_back({start, half});
        swap_blocks.push_back({start + half, -half});
        start += block;
        block *= a;
    }
    IntervalExchange s(one, std::move(swap_blocks));
    return iet_compose(build_half_rotation(g), s);
}

PiecewiseAffine build_h_g(int g) {
    if (g < 2) throw IetError("build_h_g: g must be >= 2");
    const auto& F = NumberField::get(g);
    NFElem a = NFElem::alpha(F), ag = a.pow(static_cast<unsigned>(g)), ag1 = ag * a;
    NFElem one(F, Rational(1));
    return PiecewiseAffine(one, {{NFElem(F), a, (a + ag1) * Rational(1, 2)},
                                 {(one - ag) * Rational(1, 2), a, -((a - ag1) * Rational(1, 2))}});
}

// ---------------------------------------------------------------------------

std::vector<Arc> normalize_arcs(std::vector<Arc> arcs) {
    std::erase_if(arcs, [](const Arc& a) { return !(a.lo < a.hi); });
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
    std::vector<Arc> out;
    for (auto& a : arcs) {
        if (!out.empty() && a.lo <= out.back().hi) {
            if (a.hi > out.back().hi) out.back().hi = a.hi;
        } else {
            out.push_back(std::move(a));
        }
    }
    return out;
}

std::vector<Arc> image_of_arcs(const IntervalExchange& t, const std::vector<Arc>& arcs) {
    std::vector<Arc> img;
    for (const auto& arc : normalize_arcs(arcs)) {
        NFElem lo = arc.lo;
        while (lo < arc.hi) {
            std::size_t k = t.piece_index(lo);
            NFElem hi = t.right(k);
            if (hi > arc.hi) hi = arc.hi;
            const NFElem& tr = t.pieces()[k].translation;
            img.push_back({lo + tr, hi + tr});
            lo = hi;
        }
    }
    return normalize_arcs(std::move(img));
}

bool is_invariant_union(const IntervalExchange& t, const std::vector<Arc>& arcs) {
    auto a = normalize_arcs(arcs);
    auto b = image_of_arcs(t, a);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i].lo == b[i].lo) || !(a[i].hi == b[i].hi)) return false;
    return true;
}

} // namespace ay

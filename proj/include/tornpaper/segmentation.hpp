#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "tornpaper/qstring.hpp"

namespace tornpaper {

// Unordered multiset of segments: equality ignores order and respects
// multiplicity. Storage order is arbitrary (the channel shuffles it);
// canonical() sorts length-then-lexicographic.
class SegmentCollection {
  public:
    SegmentCollection() = default;
    explicit SegmentCollection(std::vector<QString> segments) : seg_(std::move(segments)) {}

    const std::vector<QString>& segments() const& { return seg_; }
    std::vector<QString> segments() && { return std::move(seg_); }
    std::size_t size() const { return seg_.size(); }
    bool empty() const { return seg_.empty(); }

    void add(QString s) { seg_.push_back(std::move(s)); }

    SegmentCollection canonical() const {
        SegmentCollection c(*this);
        std::sort(c.seg_.begin(), c.seg_.end());
        return c;
    }

    // Multiset union.
    void merge(const SegmentCollection& other) {
        seg_.insert(seg_.end(), other.seg_.begin(), other.seg_.end());
    }

    friend bool operator==(const SegmentCollection& a, const SegmentCollection& b) {
        if (a.seg_.size() != b.seg_.size()) return false;
        return a.canonical().seg_ == b.canonical().seg_;
    }
    friend bool operator!=(const SegmentCollection& a, const SegmentCollection& b) {
        return !(a == b);
    }
    friend bool operator<(const SegmentCollection& a, const SegmentCollection& b) {
        return a.canonical().seg_ < b.canonical().seg_;
    }

  private:
    std::vector<QString> seg_;
};

// Non-overlapping L-segments in cut order; the last piece has length
// |x| mod L when that is nonzero.
inline SegmentCollection exact_segmentation(const QString& x, std::size_t L) {
    if (L == 0) throw ParamError("exact_segmentation: L must be >= 1");
    SegmentCollection out;
    std::size_t pos = 0;
    while (pos < x.size()) {
        const std::size_t len = std::min(L, x.size() - pos);
        out.add(x.substr(pos, len));
        pos += len;
    }
    return out;
}

inline SegmentCollection exact_segmentation_multi(const std::vector<QString>& strands,
                                                  std::size_t L) {
    SegmentCollection out;
    for (const auto& s : strands) out.merge(exact_segmentation(s, L));
    return out;
}

// All (Lmin,Lmax)-segmentations of x, deduplicated as multisets: every piece
// but the last has length in [Lmin, Lmax], the last has length in [1, Lmax].
// Intended for test-scale |x|; aborts when more than max_enumerated cut
// patterns would be visited.
inline std::set<SegmentCollection> enumerate_segmentations(const QString& x, std::size_t Lmin,
                                                           std::size_t Lmax,
                                                           std::size_t max_enumerated = 10000000) {
    if (Lmin < 1 || Lmin > Lmax || Lmax > x.size())
        throw ParamError("enumerate_segmentations: need 1 <= Lmin <= Lmax <= |x|");
    std::set<SegmentCollection> out;
    std::vector<QString> current;
    std::size_t visited = 0;

    auto recurse = [&](auto&& self, std::size_t pos) -> void {
        const std::size_t rem = x.size() - pos;
        if (rem >= 1 && rem <= Lmax) {
            if (++visited > max_enumerated)
                throw ResourceError("enumerate_segmentations: enumeration cap exceeded");
            current.push_back(x.substr(pos, rem));
            out.insert(SegmentCollection(current).canonical());
            current.pop_back();
        }
        for (std::size_t len = Lmin; len <= Lmax && len + 1 <= rem; ++len) {
            current.push_back(x.substr(pos, len));
            self(self, pos + len);
            current.pop_back();
        }
    };
    recurse(recurse, 0);
    return out;
}

enum class MarkerOccurrenceKind { complete, cyclic };

struct MarkerOccurrence {
    std::size_t offset;
    MarkerOccurrenceKind kind;

    friend bool operator==(const MarkerOccurrence& a, const MarkerOccurrence& b) {
        return a.offset == b.offset && a.kind == b.kind;
    }
};

// Occurrences of the marker 1 0^f 1 in u. A complete occurrence sits at
// offsets [j, j+f+2); a cyclic occurrence wraps: the (|u|-j)-suffix of u
// followed by the (f+2-(|u|-j))-prefix of u equals the marker. Offsets
// ascending, complete before cyclic (their ranges are disjoint anyway).
inline std::vector<MarkerOccurrence> find_marker_occurrences(const QString& u, std::size_t f) {
    if (u.size() < f + 2) throw ParamError("find_marker_occurrences: |u| < f+2");
    const std::size_t mlen = f + 2;
    std::vector<MarkerOccurrence> out;
    for (std::size_t j = 0; j + mlen <= u.size(); ++j) {
        if (u[j] != 1 || u[j + mlen - 1] != 1) continue;
        bool zeros = true;
        for (std::size_t i = 1; i + 1 < mlen; ++i)
            if (u[j + i] != 0) {
                zeros = false;
                break;
            }
        if (zeros) out.push_back({j, MarkerOccurrenceKind::complete});
    }
    for (std::size_t j = u.size() - mlen + 1; j < u.size(); ++j) {
        const std::size_t head = u.size() - j;  // symbols taken from the suffix
        bool match = true;
        for (std::size_t i = 0; i < mlen && match; ++i) {
            const Symbol want = (i == 0 || i == mlen - 1) ? 1 : 0;
            const Symbol got = (i < head) ? u[j + i] : u[i - head];
            match = (got == want);
        }
        if (match) out.push_back({j, MarkerOccurrenceKind::cyclic});
    }
    std::sort(out.begin(), out.end(), [](const MarkerOccurrence& a, const MarkerOccurrence& b) {
        if (a.offset != b.offset) return a.offset < b.offset;
        return a.kind == MarkerOccurrenceKind::complete && b.kind == MarkerOccurrenceKind::cyclic;
    });
    return out;
}

}  // namespace tornpaper

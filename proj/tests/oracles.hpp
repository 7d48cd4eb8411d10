#pragma once

// Test-only oracles. Each reimplements a checked quantity from first
// principles, independently of the library code paths it is used to verify.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tornpaper/qstring.hpp"

namespace oracles {

using tornpaper::QString;
using tornpaper::Symbol;

// Number of (Lmin,Lmax)-segmentations counted over raw cut patterns
// (compositions), not deduplicated as multisets.
inline std::uint64_t composition_count(std::size_t n, std::size_t Lmin, std::size_t Lmax) {
    std::vector<std::uint64_t> D(n + 1, 0);
    for (std::size_t r = 1; r <= n; ++r) {
        std::uint64_t total = (r <= Lmax) ? 1 : 0;
        for (std::size_t c = Lmin; c <= Lmax && c + 1 <= r; ++c) total += D[r - c];
        D[r] = total;
    }
    return D[n];
}

// All multiset segmentations via explicit cut enumeration (returns canonical
// sorted segment lists).
inline std::set<std::vector<std::string>> spectrum_bruteforce(const std::string& x,
                                                              std::size_t Lmin,
                                                              std::size_t Lmax) {
    std::set<std::vector<std::string>> out;
    std::vector<std::string> cur;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        const std::size_t rem = x.size() - pos;
        if (rem >= 1 && rem <= Lmax) {
            cur.push_back(x.substr(pos, rem));
            auto sorted = cur;
            std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
                return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
            out.insert(sorted);
            cur.pop_back();
        }
        for (std::size_t len = Lmin; len <= Lmax && len + 1 <= rem; ++len) {
            cur.push_back(x.substr(pos, len));
            self(self, pos + len);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Naive marker scan: every rotation start, straight character compare.
// Complete occurrences in [0, |u|-f-2], cyclic (wrapping) elsewhere.
inline std::vector<std::pair<std::size_t, bool>> marker_scan_naive(const QString& u,
                                                                   std::size_t f) {
    std::vector<std::pair<std::size_t, bool>> out;  // (offset, is_complete)
    const std::size_t mlen = f + 2;
    for (std::size_t j = 0; j < u.size(); ++j) {
        bool match = true;
        bool wrapped = false;
        for (std::size_t i = 0; i < mlen && match; ++i) {
            const std::size_t pos = (j + i) % u.size();
            if (j + i >= u.size()) wrapped = true;
            const Symbol want = (i == 0 || i + 1 == mlen) ? 1 : 0;
            match = u[pos] == want;
        }
        if (match) out.emplace_back(j, !wrapped);
    }
    return out;
}

// Independent layout assembler: builds a strand directly from the
// definition z = z_0 ... z_K 0^{n mod Lmin}, z_i = index_i marker block_i,
// z_K = index_K marker 0^N, given ready-made parts as text.
inline std::string assemble_layout(const std::vector<std::string>& encoded_indices,
                                   const std::string& marker,
                                   const std::vector<std::string>& blocks, std::size_t N,
                                   std::size_t n) {
    std::string z;
    for (std::size_t i = 0; i < encoded_indices.size(); ++i) {
        z += encoded_indices[i];
        z += marker;
        z += (i < blocks.size()) ? blocks[i] : std::string(N, '0');
    }
    z += std::string(n - z.size(), '0');
    return z;
}

// Sliding-window census of a pattern in text (plain substring count).
inline std::size_t count_occurrences(const std::string& text, const std::string& pattern) {
    std::size_t count = 0;
    for (std::size_t j = 0; j + pattern.size() <= text.size(); ++j)
        if (text.compare(j, pattern.size(), pattern) == 0) ++count;
    return count;
}

// Positional 1-insertion: literal 1 at every output location divisible by f.
// out_len = 0 stops once the payload is consumed (the encoded-index case);
// otherwise exactly out_len symbols are emitted (the RLL case, where the
// tail may be stuffed).
inline std::string insert_ones(const std::string& payload, std::size_t f,
                               std::size_t out_len = 0) {
    std::string out;
    std::size_t next = 0;
    for (std::size_t pos = 0; out_len ? out.size() < out_len : next < payload.size(); ++pos) {
        if (pos % f == 0)
            out += '1';
        else
            out += next < payload.size() ? payload[next++] : '1';
    }
    return out;
}

// Brute-force nearest-codeword decoding for a tiny linear code given its
// full codebook.
inline std::vector<std::uint32_t> nearest_codeword(
    const std::vector<std::vector<std::uint32_t>>& codebook,
    const std::vector<std::uint32_t>& word) {
    std::size_t best_d = SIZE_MAX;
    std::vector<std::uint32_t> best;
    for (const auto& c : codebook) {
        std::size_t d = 0;
        for (std::size_t i = 0; i < word.size(); ++i)
            if (c[i] != word[i]) ++d;
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

}  // namespace oracles

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tornpaper/params.hpp"
#include "tornpaper/qstring.hpp"

namespace tornpaper {

// Reflected q-ary Gray code via the digit recurrence g_j = b_j - b_{j-1}
// (mod q) over the MSB-first base-q digits b of the rank. Consecutive ranks
// differ in exactly one coordinate.
inline QString gray_unrank(std::uint64_t i, std::size_t I, unsigned q) {
    unsigned __int128 cap = 1;
    for (std::size_t j = 0; j < I; ++j) cap *= q;
    if (i >= cap) throw ParamError("gray_unrank: rank out of range");
    std::vector<Symbol> base(I);
    std::uint64_t v = i;
    for (std::size_t j = I; j-- > 0;) {
        base[j] = static_cast<Symbol>(v % q);
        v /= q;
    }
    std::vector<Symbol> g(I);
    Symbol prev = 0;
    for (std::size_t j = 0; j < I; ++j) {
        g[j] = static_cast<Symbol>((base[j] + q - prev) % q);
        prev = base[j];
    }
    return QString(q, std::move(g));
}

inline std::uint64_t gray_rank(const QString& c) {
    const unsigned q = c.q();
    std::uint64_t rank = 0;
    Symbol digit = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        digit = static_cast<Symbol>((digit + c[j]) % q);
        rank = rank * q + digit;
    }
    return rank;
}

// Gray word + parity symbol chosen so the symbols of c' sum to 0 mod q,
// then a literal 1 inserted at every location divisible by f. With
// alpha = ceil(f(I+1)/(f-1)) the parity symbol always lands on the final
// position (alpha-1 is never divisible by f).
struct EncodedIndex {
    std::uint64_t value;
    QString padded;  // length alpha
};

inline bool is_pad_position(std::size_t pos, std::size_t f) { return pos % f == 0; }

inline QString pad_index_word(const QString& cprime, const CodeParams& p) {
    QString out(p.q);
    std::size_t next = 0;
    for (std::size_t pos = 0; pos < p.alpha; ++pos) {
        if (is_pad_position(pos, p.f))
            out.push_back(1);
        else
            out.push_back(cprime[next++]);
    }
    if (next != cprime.size()) throw ParamError("pad_index_word: length mismatch");
    return out;
}

// Non-padded subsequence; nullopt when some padded position is not 1 (the
// corruption signal consumed by the robust decoder).
inline std::optional<QString> strip_index_word(const QString& w, const CodeParams& p) {
    if (w.size() != p.alpha) throw ParamError("strip_index_word: length != alpha");
    QString out(p.q);
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
        if (is_pad_position(pos, p.f)) {
            if (w[pos] != 1) return std::nullopt;
        } else {
            out.push_back(w[pos]);
        }
    }
    return out;
}

inline EncodedIndex build_encoded_index(std::uint64_t i, const CodeParams& p) {
    QString c = gray_unrank(i, p.I, p.q);
    unsigned sum = 0;
    for (std::size_t j = 0; j < c.size(); ++j) sum = (sum + c[j]) % p.q;
    QString cprime = c;
    cprime.push_back(static_cast<Symbol>((p.q - sum % p.q) % p.q));
    return EncodedIndex{i, pad_index_word(cprime, p)};
}

// Algorithm-2 decoding of an alpha-length window w: strip padding, Gray-rank
// the I-prefix, and when the parity symbol is wrong return rank-1 (w is then
// a copy of the next encoded index with a stale parity). Accepts either a
// whole encoded index or the two-piece mix produced by cyclic extraction.
// nullopt signals corrupted padding; rank -1 (mix of index 0's predecessor)
// cannot arise from valid inputs and also yields nullopt.
inline std::optional<std::int64_t> decode_index_word(const QString& w, const CodeParams& p) {
    std::optional<QString> cprime = strip_index_word(w, p);
    if (!cprime) return std::nullopt;
    unsigned sum = 0;
    for (std::size_t j = 0; j < cprime->size(); ++j) sum = (sum + (*cprime)[j]) % p.q;
    const std::int64_t rank =
        static_cast<std::int64_t>(gray_rank(cprime->prefix(p.I)));
    const std::int64_t ind = (sum % p.q == 0) ? rank : rank - 1;
    if (ind < 0) return std::nullopt;
    return ind;
}

// True parity correctness of a full encoded index word (padding and sum).
inline bool index_word_parity_ok(const QString& w, const CodeParams& p) {
    std::optional<QString> cprime = strip_index_word(w, p);
    if (!cprime) return false;
    unsigned sum = 0;
    for (std::size_t j = 0; j < cprime->size(); ++j) sum = (sum + (*cprime)[j]) % p.q;
    return sum % p.q == 0;
}

}  // namespace tornpaper

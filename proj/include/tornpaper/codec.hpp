#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tornpaper/indexing.hpp"
#include "tornpaper/segmentation.hpp"

namespace tornpaper {

// One codeword: k strands of length n. Strand j's segment i carries the
// encoded index of global rank j*stride + i; the only occurrences of
// 1 0^f 1 in a strand are its K+1 planted markers.
struct Codeword {
    std::vector<QString> strands;
    CodeParams params;

    const QString& strand(std::size_t j) const { return strands.at(j); }
};

// Assemble one strand from K ready-made encoded blocks (length N each).
// Shared by the noiseless and the deletion-correcting encoders.
inline QString assemble_strand(const CodeParams& p, std::size_t strand_index,
                               const std::vector<QString>& blocks) {
    if (blocks.size() != p.K) throw ParamError("assemble_strand: need exactly K blocks");
    const QString mark = p.marker();
    QString z(p.q);
    for (std::size_t i = 0; i <= p.K; ++i) {
        const EncodedIndex idx = build_encoded_index(p.global_index(strand_index, i), p);
        z = z + idx.padded + mark;
        if (i < p.K) {
            if (blocks[i].size() != p.N)
                throw ParamError("assemble_strand: block length != N");
            z = z + blocks[i];
        } else {
            z = z + QString::zeros(p.q, p.N);
        }
    }
    return z + QString::zeros(p.q, p.n_mod_Lmin());
}

// Encoder: x in Sigma^{kKm}, blocks RLL-encoded and prefixed with encoded
// index + marker; total work linear in n*k.
inline Codeword encode(const QString& x, const CodeParams& p) {
    if (x.q() != p.q) throw ParamError("encode: alphabet mismatch");
    if (x.size() != p.message_len())
        throw ParamError("encode: message length must be k*K*m = " +
                         std::to_string(p.message_len()));
    const RllScheme scheme = p.rll();
    Codeword cw{{}, p};
    cw.strands.reserve(p.k);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < p.k; ++j) {
        std::vector<QString> blocks;
        blocks.reserve(p.K);
        for (std::size_t i = 0; i < p.K; ++i) {
            blocks.push_back(scheme.encode(x.substr(pos, p.m), p.N));
            pos += p.m;
        }
        cw.strands.push_back(assemble_strand(p, j, blocks));
    }
    return cw;
}

struct Placement {
    std::uint64_t index = 0;        // global encoded-index rank
    std::size_t global_offset = 0;  // in [0, n*k)
    QString segment;
};

// Index retrieval from a segment (Lmin-prefix scan): returns the placement,
// or nullopt for segments of the terminal region z_K 0^{n mod Lmin} (no
// marker reachable, or the index window runs into the zero tail; both imply
// a zero-suffix longer than f). Anything else inconsistent is corruption.
inline std::optional<Placement> locate(const QString& u, const CodeParams& p) {
    if (u.q() != p.q) throw ParamError("locate: alphabet mismatch");
    if (u.size() < p.Lmin) throw ParamError("locate: |u| >= Lmin required");

    const QString prefix = u.prefix(p.Lmin);
    const auto occs = find_marker_occurrences(prefix, p.f);
    const MarkerOccurrence* occ = nullptr;
    for (const auto& o : occs)
        if (o.kind == MarkerOccurrenceKind::complete) {
            occ = &o;
            break;
        }
    if (!occ && !occs.empty()) occ = &occs.front();
    if (!occ) {
        if (u.trailing_zero_run() > p.f) return std::nullopt;  // terminal region
        throw CorruptionError("locate: no marker occurrence in the Lmin-prefix");
    }

    const std::size_t j = occ->offset;
    QString word(p.q);
    std::size_t marker_pos = j;  // value used by the offset formula
    if (j >= p.alpha) {
        word = u.substr(j - p.alpha, p.alpha);
    } else {
        // Encoded index wraps: (alpha-j)-suffix of the Lmin-window, then the
        // j-prefix. For j = 0 the whole index sits at the window end and the
        // formula uses the cyclic marker position Lmin.
        word = u.substr(p.Lmin - (p.alpha - j), p.alpha - j) + u.substr(0, j);
        if (j == 0) marker_pos = p.Lmin;
    }

    const std::optional<std::int64_t> ind = decode_index_word(word, p);
    if (!ind) {
        if (u.trailing_zero_run() > p.f) return std::nullopt;  // straddles the zero tail
        throw CorruptionError("locate: corrupted encoded-index padding");
    }
    const std::uint64_t global = static_cast<std::uint64_t>(*ind);
    const std::size_t stride = p.index_stride();
    const std::size_t strand = static_cast<std::size_t>(global / stride);
    const std::size_t local = static_cast<std::size_t>(global % stride);
    if (strand >= p.k || local > p.K)
        throw CorruptionError("locate: decoded index out of range");
    const std::size_t anchor = local * p.Lmin + p.alpha;
    if (anchor < marker_pos) throw CorruptionError("locate: negative offset");
    const std::size_t offset_local = anchor - marker_pos;
    if (offset_local + u.size() > p.n)
        throw CorruptionError("locate: segment does not fit at decoded offset");
    return Placement{global, strand * p.n + offset_local, u};
}

struct DecodeStats {
    std::size_t segments = 0;
    std::size_t discarded = 0;
    std::size_t placed = 0;
};

// Noiseless decoder: place every segment at its derived offset, then strip
// indices and markers and RLL-decode the K blocks per strand. Precondition:
// `received` is an (Lmin,Lmax)-segmentation of a codeword; violations show
// up as write conflicts, unfilled information positions, or locate errors.
inline QString decode(const SegmentCollection& received, const CodeParams& p,
                      DecodeStats* stats = nullptr) {
    const std::size_t total = p.n * p.k;
    std::vector<Symbol> buf(total, 0);
    std::vector<std::uint8_t> written(total, 0);
    DecodeStats st;
    st.segments = received.size();

    for (const QString& u : received.segments()) {
        if (u.size() < p.Lmin) {
            ++st.discarded;  // only the final channel piece can be short; it carries no payload
            continue;
        }
        const std::optional<Placement> placed = locate(u, p);
        if (!placed) {
            ++st.discarded;
            continue;
        }
        ++st.placed;
        const std::size_t base = placed->global_offset;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (written[base + i] && buf[base + i] != u[i])
                throw DecodeError("decode: conflicting placements at position " +
                                  std::to_string(base + i));
            buf[base + i] = u[i];
            written[base + i] = 1;
        }
    }

    const RllScheme scheme = p.rll();
    const std::size_t header = p.alpha + p.f + 2;
    QString x(p.q);
    for (std::size_t j = 0; j < p.k; ++j) {
        for (std::size_t i = 0; i < p.K; ++i) {
            const std::size_t start = p.segment_offset(j, i) + header;
            QString y(p.q);
            for (std::size_t t = 0; t < p.N; ++t) {
                if (!written[start + t])
                    throw DecodeError("decode: unfilled information position " +
                                      std::to_string(start + t));
                y.push_back(buf[start + t]);
            }
            x = x + scheme.decode(y);
        }
    }
    if (stats) *stats = st;
    return x;
}

// n*k - K*m*k; equals the decomposition (n mod Lmin) + Lmin + K(Lmin - m)
// per strand.
inline std::int64_t code_redundancy(const CodeParams& p) {
    return static_cast<std::int64_t>(p.n) * static_cast<std::int64_t>(p.k) -
           static_cast<std::int64_t>(p.K) * static_cast<std::int64_t>(p.m) *
               static_cast<std::int64_t>(p.k);
}

}  // namespace tornpaper

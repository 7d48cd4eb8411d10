#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "tornpaper/codec.hpp"

namespace tornpaper {

// Cut-position menu. The paper-side adversary is universally quantified;
// these strategies approximate it (exhaustive enumeration covers the rest at
// test scale). `scripted` replays an explicit list of piece lengths.
struct AdversaryStrategy {
    enum class Kind {
        uniform_random_cuts,
        all_lmin,
        marker_straddle,
        index_straddle,
        greedy_short,
        scripted
    };

    Kind kind = Kind::uniform_random_cuts;
    std::uint64_t seed = 0;
    ErrorBudget budget;
    std::vector<std::size_t> cuts;  // piece lengths, scripted only (per strand)

    static Kind kind_by_name(const std::string& name) {
        if (name == "uniform_random_cuts" || name == "uniform") return Kind::uniform_random_cuts;
        if (name == "all_lmin") return Kind::all_lmin;
        if (name == "marker_straddle") return Kind::marker_straddle;
        if (name == "index_straddle") return Kind::index_straddle;
        if (name == "greedy_short") return Kind::greedy_short;
        if (name == "scripted") return Kind::scripted;
        throw ParamError("AdversaryStrategy: unknown kind '" + name + "'");
    }
    static std::string kind_name(Kind k) {
        switch (k) {
            case Kind::uniform_random_cuts: return "uniform_random_cuts";
            case Kind::all_lmin: return "all_lmin";
            case Kind::marker_straddle: return "marker_straddle";
            case Kind::index_straddle: return "index_straddle";
            case Kind::greedy_short: return "greedy_short";
            case Kind::scripted: return "scripted";
        }
        return "?";
    }
};

inline void validate_cut_lengths(const std::vector<std::size_t>& lengths, std::size_t n,
                                 std::size_t Lmin, std::size_t Lmax) {
    if (lengths.empty()) throw ParamError("cut lengths: empty");
    std::size_t sum = 0;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        const std::size_t len = lengths[i];
        if (len == 0) throw ParamError("cut lengths: zero-length piece");
        const bool last = (i + 1 == lengths.size());
        if (!last && (len < Lmin || len > Lmax))
            throw ParamError("cut lengths: non-final piece outside [Lmin, Lmax]");
        if (last && len > Lmax) throw ParamError("cut lengths: final piece longer than Lmax");
        sum += len;
    }
    if (sum != n) throw ParamError("cut lengths: pieces do not sum to n");
}

namespace detail {

inline std::vector<std::size_t> lengths_all_lmin(std::size_t n, std::size_t Lmin) {
    std::vector<std::size_t> out(n / Lmin, Lmin);
    if (n % Lmin) out.push_back(n % Lmin);
    return out;
}

inline std::vector<std::size_t> lengths_uniform(std::size_t n, std::size_t Lmin, std::size_t Lmax,
                                                Rng& rng) {
    std::vector<std::size_t> out;
    std::size_t rem = n;
    while (rem > 0) {
        if (rem <= Lmax && (rem <= Lmin || rng.below(2) == 0)) {
            out.push_back(rem);
            rem = 0;
        } else {
            const std::size_t hi = std::min(Lmax, rem > Lmin ? rem - 1 : Lmin);
            const std::size_t len = rng.range(Lmin, std::max(Lmin, hi));
            out.push_back(len);
            rem -= len;
        }
    }
    return out;
}

inline std::vector<std::size_t> lengths_greedy_short(std::size_t n, std::size_t Lmin,
                                                     std::size_t Lmax) {
    if (n % Lmin != 0 || Lmax == Lmin || n / Lmin < 2) return lengths_all_lmin(n, Lmin);
    // Exact multiple: shift phase by one so the final piece is Lmin - 1.
    std::vector<std::size_t> out;
    out.push_back(Lmin + 1);
    for (std::size_t i = 0; i + 2 < n / Lmin; ++i) out.push_back(Lmin);
    out.push_back(Lmin - 1);
    return out;
}

// Walk targets left to right, cutting inside each reachable one; fill the
// gaps with admissible lengths.
inline std::vector<std::size_t> lengths_targeting(std::size_t n, std::size_t Lmin,
                                                  std::size_t Lmax,
                                                  const std::vector<std::size_t>& targets) {
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    for (std::size_t target : targets) {
        if (target <= pos || target > n) continue;
        std::size_t gap = target - pos;
        if (gap < Lmin) continue;
        bool reachable = true;
        while (gap > Lmax) {
            if (gap >= 2 * Lmin) {
                const std::size_t len = std::min(Lmax, gap - Lmin);
                out.push_back(len);
                pos += len;
                gap -= len;
            } else {
                reachable = false;
                break;
            }
        }
        if (!reachable || gap < Lmin) continue;
        out.push_back(gap);
        pos = target;
    }
    while (n - pos > Lmax) {
        out.push_back(Lmin);
        pos += Lmin;
    }
    if (n - pos > 0) out.push_back(n - pos);
    return out;
}

inline std::vector<std::size_t> straddle_targets(const CodeParams& p, bool markers, Rng& rng) {
    std::vector<std::size_t> targets;
    for (std::size_t i = 0; i <= p.K; ++i) {
        const std::size_t base = i * p.Lmin;
        if (markers) {
            targets.push_back(base + p.alpha + 1 + rng.below(p.f + 1));
        } else if (p.alpha >= 2) {
            targets.push_back(base + 1 + rng.below(p.alpha - 1));
        }
    }
    return targets;
}

}  // namespace detail

inline std::vector<std::size_t> make_cut_lengths(const CodeParams& p,
                                                 const AdversaryStrategy& strategy, Rng& rng) {
    using Kind = AdversaryStrategy::Kind;
    std::vector<std::size_t> lengths;
    switch (strategy.kind) {
        case Kind::all_lmin:
            lengths = detail::lengths_all_lmin(p.n, p.Lmin);
            break;
        case Kind::uniform_random_cuts:
            lengths = detail::lengths_uniform(p.n, p.Lmin, p.Lmax, rng);
            break;
        case Kind::greedy_short:
            lengths = detail::lengths_greedy_short(p.n, p.Lmin, p.Lmax);
            break;
        case Kind::marker_straddle:
            lengths = detail::lengths_targeting(p.n, p.Lmin, p.Lmax,
                                                detail::straddle_targets(p, true, rng));
            break;
        case Kind::index_straddle:
            lengths = detail::lengths_targeting(p.n, p.Lmin, p.Lmax,
                                                detail::straddle_targets(p, false, rng));
            break;
        case Kind::scripted:
            lengths = strategy.cuts;
            break;
    }
    validate_cut_lengths(lengths, p.n, p.Lmin, p.Lmax);
    return lengths;
}

// Ordered channel output before shuffling: pieces with their true offsets.
struct TornPieces {
    std::vector<QString> pieces;
    std::vector<std::size_t> offsets;  // global coordinates
};

inline TornPieces tear_ordered(const Codeword& cw, const AdversaryStrategy& strategy) {
    const CodeParams& p = cw.params;
    Rng rng(strategy.seed);
    TornPieces out;
    for (std::size_t j = 0; j < p.k; ++j) {
        const auto lengths = make_cut_lengths(p, strategy, rng);
        std::size_t pos = 0;
        for (std::size_t len : lengths) {
            out.pieces.push_back(cw.strand(j).substr(pos, len));
            out.offsets.push_back(j * p.n + pos);
            pos += len;
        }
    }
    return out;
}

inline SegmentCollection shuffle_pieces(std::vector<QString> pieces, Rng& rng) {
    for (std::size_t i = pieces.size(); i > 1; --i)
        std::swap(pieces[i - 1], pieces[rng.below(i)]);
    return SegmentCollection(std::move(pieces));
}

// (Lmin,Lmax)-segmentation of every strand, multiset-shuffled.
inline SegmentCollection tear(const Codeword& cw, const AdversaryStrategy& strategy) {
    TornPieces ordered = tear_ordered(cw, strategy);
    Rng rng(strategy.seed ^ 0x7461657261ULL);  // independent shuffle stream
    return shuffle_pieces(std::move(ordered.pieces), rng);
}

enum class CorruptTarget { random_positions, index_region, marker_region, parity_symbol, mixed };

inline CorruptTarget corrupt_target_by_name(const std::string& name) {
    if (name == "random") return CorruptTarget::random_positions;
    if (name == "index") return CorruptTarget::index_region;
    if (name == "marker") return CorruptTarget::marker_region;
    if (name == "parity") return CorruptTarget::parity_symbol;
    if (name == "mixed") return CorruptTarget::mixed;
    throw ParamError("corrupt: unknown target '" + name + "'");
}

// At most t_sub substitutions (exactly t_sub when t_sub <= n*k), positions
// seeded-random or aimed at encoded indices / markers / parity symbols.
inline Codeword corrupt(const Codeword& cw, std::size_t t_sub, std::uint64_t seed,
                        CorruptTarget target = CorruptTarget::random_positions) {
    const CodeParams& p = cw.params;
    Codeword out = cw;
    Rng rng(seed);
    std::vector<std::size_t> chosen;
    const std::size_t total = p.n * p.k;
    if (t_sub > total) throw ParamError("corrupt: t_sub exceeds codeword length");
    std::size_t guard = 0;
    while (chosen.size() < t_sub) {
        if (++guard > 1000 * (t_sub + 1))
            throw ResourceError("corrupt: could not draw distinct positions");
        CorruptTarget kind = target;
        if (kind == CorruptTarget::mixed) {
            switch (rng.below(4)) {
                case 0: kind = CorruptTarget::random_positions; break;
                case 1: kind = CorruptTarget::index_region; break;
                case 2: kind = CorruptTarget::marker_region; break;
                default: kind = CorruptTarget::parity_symbol; break;
            }
        }
        std::size_t pos = 0;
        if (kind == CorruptTarget::random_positions) {
            pos = rng.below(total);
        } else {
            const std::size_t strand = rng.below(p.k);
            const std::size_t seg = rng.below(p.K + 1);
            const std::size_t base = p.segment_offset(strand, seg);
            if (kind == CorruptTarget::index_region)
                pos = base + rng.below(p.alpha);
            else if (kind == CorruptTarget::marker_region)
                pos = base + p.alpha + rng.below(p.f + 2);
            else
                pos = base + p.alpha - 1;  // parity symbol = last index position
        }
        if (std::find(chosen.begin(), chosen.end(), pos) != chosen.end()) continue;
        chosen.push_back(pos);
    }
    for (std::size_t pos : chosen) {
        const std::size_t strand = pos / p.n;
        const std::size_t local = pos % p.n;
        QString& z = out.strands[strand];
        std::vector<Symbol> sym = z.symbols();
        sym[local] =
            static_cast<Symbol>((sym[local] + 1 + rng.below(p.q - 1)) % p.q);
        z = QString(p.q, std::move(sym));
    }
    return out;
}

enum class DeleteMode { random, adjacent };

// Removes exactly t_del members. Adjacent mode deletes a run of segments
// whose placements are contiguous (stresses merged erasure bursts).
inline SegmentCollection delete_segments(const SegmentCollection& T, std::size_t t_del,
                                         std::uint64_t seed, DeleteMode mode = DeleteMode::random,
                                         const CodeParams* params = nullptr) {
    if (t_del > T.size()) throw ParamError("delete_segments: t_del > |T|");
    Rng rng(seed);
    std::vector<QString> pieces = T.segments();
    if (t_del == 0) return SegmentCollection(pieces);

    if (mode == DeleteMode::random) {
        for (std::size_t d = 0; d < t_del; ++d)
            pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(rng.below(pieces.size())));
        return SegmentCollection(std::move(pieces));
    }

    if (!params) throw ParamError("delete_segments: adjacent mode needs params");
    // Order locatable pieces by their true offsets and drop a consecutive run.
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (offset, position in `pieces`)
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (pieces[i].size() < params->Lmin) continue;
        if (auto placed = locate(pieces[i], *params)) order.emplace_back(placed->global_offset, i);
    }
    std::sort(order.begin(), order.end());
    if (order.size() < t_del) throw ParamError("delete_segments: not enough locatable segments");
    const std::size_t start = rng.below(order.size() - t_del + 1);
    std::vector<std::size_t> victims;
    for (std::size_t d = 0; d < t_del; ++d) victims.push_back(order[start + d].second);
    std::sort(victims.rbegin(), victims.rend());
    for (std::size_t v : victims) pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(v));
    return SegmentCollection(std::move(pieces));
}

}  // namespace tornpaper

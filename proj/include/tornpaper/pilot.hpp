#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tornpaper/qstring.hpp"

namespace tornpaper {

// Cyclic de Bruijn sequence of order s over [0, q): every s-word appears
// exactly once cyclically. FKM construction (concatenation of Lyndon words
// of length dividing s), length q^s.
inline QString de_bruijn(unsigned q, std::size_t s, std::size_t max_len = 1u << 22) {
    if (q < 2 || s < 1) throw ParamError("de_bruijn: q >= 2, s >= 1 required");
    unsigned __int128 len = 1;
    for (std::size_t i = 0; i < s; ++i) {
        len *= q;
        if (len > max_len) throw ResourceError("de_bruijn: q^s exceeds the memory budget");
    }
    std::vector<Symbol> seq;
    seq.reserve(static_cast<std::size_t>(len));
    std::vector<Symbol> a(s + 1, 0);
    auto gen = [&](auto&& self, std::size_t t, std::size_t p) -> void {
        if (t > s) {
            if (s % p == 0)
                for (std::size_t i = 1; i <= p; ++i) seq.push_back(a[i]);
            return;
        }
        a[t] = a[t - p];
        self(self, t + 1, p);
        for (Symbol j = static_cast<Symbol>(a[t - p] + 1); j < q; ++j) {
            a[t] = j;
            self(self, t + 1, t);
        }
    };
    gen(gen, 1, 1);
    return QString(q, std::move(seq));
}

namespace pilotdetail {

inline std::string window_key(const QString& x, std::size_t i, std::size_t s) {
    return std::string(reinterpret_cast<const char*>(x.symbols().data()) + i, s);
}

}  // namespace pilotdetail

// x perp_s y: no s-window of x (starting in [|x|-s]) equals an s-window of y
// (same range). The index range follows the definition literally and leaves
// the final window start unchecked; the sampler rejects on the full range.
inline bool perp(const QString& x, const QString& y, std::size_t s) {
    if (x.q() != y.q() || x.size() != y.size()) throw ParamError("perp: incompatible operands");
    if (x.size() < s) throw ParamError("perp: |x| >= s required");
    const std::size_t starts = x.size() - s;  // exclusive upper bound, per the definition
    std::unordered_map<std::string, bool> ywin;
    for (std::size_t j = 0; j < starts; ++j) ywin.emplace(pilotdetail::window_key(y, j, s), true);
    for (std::size_t i = 0; i < starts; ++i)
        if (ywin.count(pilotdetail::window_key(x, i, s))) return false;
    return true;
}

inline bool windows_disjoint_full(const QString& x, const QString& y, std::size_t s) {
    std::unordered_map<std::string, bool> ywin;
    for (std::size_t j = 0; j + s <= y.size(); ++j)
        ywin.emplace(pilotdetail::window_key(y, j, s), true);
    for (std::size_t i = 0; i + s <= x.size(); ++i)
        if (ywin.count(pilotdetail::window_key(x, i, s))) return false;
    return true;
}

// Pilot interleaving configuration: stream 0 of an m-way interleave is a
// segment p of an order-s de Bruijn sequence, so any aligned s-window of p
// identifies its own position.
struct PilotConfig {
    unsigned q = 2;
    std::size_t n = 0;       // codeword length
    std::size_t pilotM = 0;  // interleave count m > 1
    std::size_t s = 0;       // de Bruijn order
    QString pilot;           // length n/pilotM
    std::unordered_map<std::string, std::size_t> window_pos;  // all s-windows of pilot

    std::size_t stream_len() const { return n / pilotM; }
};

inline PilotConfig make_pilot_config(unsigned q, std::size_t n, std::size_t pilotM,
                                     std::size_t s) {
    if (pilotM < 2) throw ParamError("make_pilot_config: pilotM > 1 required");
    if (n % pilotM != 0) throw ParamError("make_pilot_config: pilotM must divide n");
    const std::size_t L = n / pilotM;
    // n/pilotM must be an integer power of q
    std::size_t v = L;
    while (v > 1 && v % q == 0) v /= q;
    if (v != 1) throw ParamError("make_pilot_config: n/pilotM must be a power of q");
    unsigned __int128 qs = 1;
    for (std::size_t i = 0; i < s; ++i) qs *= q;
    if (qs < L) throw ParamError("make_pilot_config: s >= log_q(n/pilotM) required");

    PilotConfig cfg;
    cfg.q = q;
    cfg.n = n;
    cfg.pilotM = pilotM;
    cfg.s = s;
    cfg.pilot = de_bruijn(q, s).prefix(L);
    for (std::size_t j = 0; j + s <= L; ++j) {
        auto [it, fresh] = cfg.window_pos.emplace(pilotdetail::window_key(cfg.pilot, j, s), j);
        if (!fresh) throw Error("make_pilot_config: pilot windows are not distinct");
    }
    return cfg;
}

// Rejection-sample a stream sharing no s-window with the pilot (full window
// range, hence also a member of O_p). `tries_out` reports attempts.
inline QString sample_Op(const PilotConfig& cfg, std::uint64_t seed, std::size_t max_tries,
                         std::size_t* tries_out = nullptr) {
    Rng rng(seed);
    for (std::size_t attempt = 1; attempt <= max_tries; ++attempt) {
        QString c = random_qstring(cfg.q, cfg.stream_len(), rng);
        if (windows_disjoint_full(c, cfg.pilot, cfg.s)) {
            if (tries_out) *tries_out = attempt;
            return c;
        }
    }
    throw ResourceError("sample_Op: max_tries exhausted");
}

// Fraction of uniform draws accepted by the sampler (Monte-Carlo comparison
// against the union-bound rate 1 - (n/m)^2 q^-s).
inline double estimate_acceptance(const PilotConfig& cfg, std::uint64_t seed, std::size_t draws) {
    Rng rng(seed);
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < draws; ++i) {
        QString c = random_qstring(cfg.q, cfg.stream_len(), rng);
        if (windows_disjoint_full(c, cfg.pilot, cfg.s)) ++accepted;
    }
    return static_cast<double>(accepted) / static_cast<double>(draws);
}

// Output position j carries symbol floor(j/pilotM) of stream (j mod pilotM);
// stream 0 is the pilot.
inline QString pilot_interleave(const PilotConfig& cfg, const std::vector<QString>& streams) {
    if (streams.size() != cfg.pilotM - 1)
        throw ParamError("pilot_interleave: need pilotM-1 streams");
    for (const auto& c : streams)
        if (c.size() != cfg.stream_len() || c.q() != cfg.q)
            throw ParamError("pilot_interleave: stream shape mismatch");
    QString z(cfg.q);
    for (std::size_t j = 0; j < cfg.n; ++j) {
        const std::size_t phase = j % cfg.pilotM;
        const std::size_t at = j / cfg.pilotM;
        z.push_back(phase == 0 ? cfg.pilot[at] : streams[phase - 1][at]);
    }
    return z;
}

inline std::vector<QString> pilot_deinterleave(const QString& z, std::size_t pilotM) {
    if (z.size() % pilotM != 0) throw ParamError("pilot_deinterleave: length mismatch");
    std::vector<QString> out(pilotM, QString(z.q()));
    for (std::size_t j = 0; j < z.size(); ++j) out[j % pilotM].push_back(z[j]);
    return out;
}

// Location recovery: extract s consecutive symbols of each phase; exactly
// one phase's word occurs in the pilot, and its position plus phase
// arithmetic gives u's offset.
inline std::size_t pilot_locate(const QString& u, const PilotConfig& cfg) {
    if (u.size() < cfg.pilotM * cfg.s)
        throw ParamError("pilot_locate: |u| >= pilotM*s required");
    std::size_t matches = 0;
    std::size_t pilot_phase = 0, pilot_pos = 0;
    for (std::size_t r = 0; r < cfg.pilotM; ++r) {
        std::string word;
        word.reserve(cfg.s);
        for (std::size_t i = 0; i < cfg.s; ++i)
            word.push_back(static_cast<char>(u[r + i * cfg.pilotM]));
        const auto it = cfg.window_pos.find(word);
        if (it == cfg.window_pos.end()) continue;
        ++matches;
        pilot_phase = r;
        pilot_pos = it->second;
    }
    if (matches != 1)
        throw CorruptionError("pilot_locate: " + std::to_string(matches) +
                              " matching phases (need exactly 1)");
    // u[pilot_phase] is pilot symbol pilot_pos, so g + phase = pilotM * pos.
    const std::size_t anchor = cfg.pilotM * pilot_pos;
    if (anchor < pilot_phase || anchor - pilot_phase + u.size() > cfg.n)
        throw CorruptionError("pilot_locate: offset out of range");
    return anchor - pilot_phase;
}

}  // namespace tornpaper

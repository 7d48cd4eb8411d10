#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "tornpaper/rll.hpp"

namespace tornpaper {

// Robust-codec selection carried alongside the base parameters.
struct RobustConfig {
    enum class Model { substitution, deletion };
    enum class BecKind { parity, interleaved_rs };

    Model model = Model::substitution;
    std::size_t t = 0;
    BecKind bec = BecKind::parity;

    std::string model_name() const {
        return model == Model::substitution ? "sub" : "del";
    }
    std::string bec_name() const {
        return bec == BecKind::parity ? "parity" : "interleaved_rs";
    }
};

// All code parameters for one configuration, derived once and validated.
// Layout identity: every strand is K+1 segments of length Lmin followed by
// n mod Lmin zeros; a segment is [encoded index | 1 0^f 1 | payload block],
// so alpha + f + 2 + N = Lmin.
struct CodeParams {
    // raw
    unsigned q = 2;
    std::size_t n = 0;
    std::size_t k = 1;
    std::size_t Lmin = 0;
    std::size_t Lmax = 0;
    std::size_t f = 0;
    // derived
    std::size_t I = 0;          // Gray-code word length
    std::size_t alpha = 0;      // encoded-index length
    std::size_t K = 0;          // information segments per strand
    std::size_t N = 0;          // encoded-block length
    std::size_t m = 0;          // information-block length (per RLL scheme)
    std::size_t marker_len = 0; // f + 2

    std::string rll_name = "stuffing";
    std::optional<RobustConfig> robust;

    RllScheme rll() const { return RllScheme::by_name(rll_name, q, f); }

    std::size_t n_mod_Lmin() const { return n % Lmin; }
    std::size_t index_stride() const { return (n + Lmin - 1) / Lmin; }  // indices reserved per strand
    std::size_t indices_used() const { return (k - 1) * index_stride() + K + 1; }
    std::size_t message_len() const { return k * K * m; }  // noiseless payload symbols

    QString marker() const { return marker_string(q, f); }

    // Start of segment i of strand `strand` in global coordinates.
    std::size_t segment_offset(std::size_t strand, std::size_t i) const {
        return strand * n + i * Lmin;
    }
    std::size_t global_index(std::size_t strand, std::size_t i) const {
        return strand * index_stride() + i;
    }
};

namespace detail {

inline std::size_t ceil_log(unsigned base, std::uint64_t value) {
    std::size_t e = 0;
    unsigned __int128 p = 1;
    while (p < value) {
        p *= base;
        ++e;
    }
    return e;
}

}  // namespace detail

inline CodeParams derive_params(unsigned q, std::size_t n, std::size_t k, std::size_t Lmin,
                                std::size_t Lmax, std::size_t f,
                                const std::string& rll_name = "stuffing",
                                std::optional<RobustConfig> robust = std::nullopt) {
    if (q < 2) throw ParamError("derive_params: q >= 2 required");
    if (k < 1) throw ParamError("derive_params: k >= 1 required");
    if (f < 2) throw ParamError("derive_params: f >= 2 required");
    if (Lmin < 1 || Lmin > Lmax) throw ParamError("derive_params: 1 <= Lmin <= Lmax required");
    if (Lmax > n) throw ParamError("derive_params: Lmax <= n required");

    CodeParams p;
    p.q = q;
    p.n = n;
    p.k = k;
    p.Lmin = Lmin;
    p.Lmax = Lmax;
    p.f = f;
    p.marker_len = f + 2;
    p.rll_name = rll_name;
    p.robust = robust;

    const std::size_t per_strand = n / Lmin;  // segments, = K + 1
    if (per_strand < 2) throw ParamError("derive_params: floor(n/Lmin) >= 2 required (K >= 1)");
    p.K = per_strand - 1;

    const std::size_t stride = (n + Lmin - 1) / Lmin;
    const std::uint64_t indices_needed = (k - 1) * static_cast<std::uint64_t>(stride) + per_strand;
    p.I = detail::ceil_log(q, indices_needed);  // indices_needed >= 2, so I >= 1

    p.alpha = (f * (p.I + 1) + (f - 2)) / (f - 1);  // ceil(f(I+1)/(f-1))
    const std::size_t header = p.alpha + f + 2;
    if (header + f > Lmin)
        throw ParamError("derive_params: N = Lmin - alpha - f - 2 >= f violated (alpha=" +
                         std::to_string(p.alpha) + ", need Lmin >= " + std::to_string(header + f) +
                         ")");
    p.N = Lmin - header;

    p.m = p.rll().payload_len(p.N);
    if (p.m < 1) throw ParamError("derive_params: RLL payload length m >= 1 violated");

    // Layout identity; holds by construction for every accepted configuration.
    if (p.alpha + p.f + 2 + p.N != p.Lmin)
        throw ParamError("derive_params: segment layout identity violated");
    return p;
}

// Effective density a = Lmin / log_q(n k); the bounds module consumes it.
inline double asymptotic_a(unsigned q, std::size_t Lmin, std::size_t n, std::size_t k) {
    return static_cast<double>(Lmin) * std::log(static_cast<double>(q)) /
           std::log(static_cast<double>(n) * static_cast<double>(k));
}

inline double asymptotic_a(const CodeParams& p) { return asymptotic_a(p.q, p.Lmin, p.n, p.k); }

inline nlohmann::json to_json(const CodeParams& p) {
    nlohmann::json j{{"q", p.q},       {"n", p.n},     {"k", p.k},
                     {"Lmin", p.Lmin}, {"Lmax", p.Lmax}, {"f", p.f},
                     {"I", p.I},       {"alpha", p.alpha}, {"K", p.K},
                     {"N", p.N},       {"m", p.m},     {"marker_len", p.marker_len},
                     {"rll", p.rll_name}};
    if (p.robust) {
        j["robust"] = {{"model", p.robust->model_name()},
                       {"t", p.robust->t},
                       {"bec", p.robust->bec_name()}};
    }
    return j;
}

inline CodeParams params_from_json(const nlohmann::json& j) {
    std::optional<RobustConfig> robust;
    if (j.contains("robust")) {
        RobustConfig rc;
        const auto& r = j.at("robust");
        const std::string model = r.at("model").get<std::string>();
        if (model == "sub")
            rc.model = RobustConfig::Model::substitution;
        else if (model == "del")
            rc.model = RobustConfig::Model::deletion;
        else
            throw ParamError("params_from_json: robust model must be 'sub' or 'del'");
        rc.t = r.at("t").get<std::size_t>();
        if (r.contains("bec")) {
            const std::string bec = r.at("bec").get<std::string>();
            if (bec == "parity")
                rc.bec = RobustConfig::BecKind::parity;
            else if (bec == "interleaved_rs")
                rc.bec = RobustConfig::BecKind::interleaved_rs;
            else
                throw ParamError("params_from_json: bec must be 'parity' or 'interleaved_rs'");
        }
        robust = rc;
    }
    CodeParams p = derive_params(j.at("q").get<unsigned>(), j.at("n").get<std::size_t>(),
                                 j.value("k", std::size_t{1}), j.at("Lmin").get<std::size_t>(),
                                 j.at("Lmax").get<std::size_t>(), j.at("f").get<std::size_t>(),
                                 j.value("rll", std::string("stuffing")), robust);
    // A serialized record must agree with re-derivation.
    for (const char* key : {"I", "alpha", "K", "N", "m", "marker_len"}) {
        if (j.contains(key)) {
            const std::size_t got = j.at(key).get<std::size_t>();
            const std::size_t expect = key == std::string("I")       ? p.I
                                       : key == std::string("alpha") ? p.alpha
                                       : key == std::string("K")     ? p.K
                                       : key == std::string("N")     ? p.N
                                       : key == std::string("m")     ? p.m
                                                                     : p.marker_len;
            if (got != expect)
                throw ParamError(std::string("params_from_json: stored '") + key +
                                 "' disagrees with re-derivation");
        }
    }
    return p;
}

}  // namespace tornpaper

#pragma once

#include <string>

#include <json.hpp>

#include "tornpaper/robust.hpp"

namespace tornpaper {

// One end-to-end seeded channel experiment. Everything needed to replay it
// bit-identically is embedded in the report.
struct TrialConfig {
    AdversaryStrategy strategy;
    ErrorBudget budget;
    CorruptTarget target = CorruptTarget::mixed;
    DeleteMode delete_mode = DeleteMode::random;
    RobustConfig::BecKind bec = RobustConfig::BecKind::parity;
    bool exact_budget = true;  // spend the whole budget (else seeded 0..t)
};

struct TrialReport {
    std::uint64_t seed = 0;
    std::string strategy;
    nlohmann::json params;
    std::size_t t_sub = 0, t_del = 0;
    std::size_t t_sub_applied = 0, t_del_applied = 0;
    bool success = false;
    bool decoded_equal = false;
    std::string failure;
    // diagnostics
    std::size_t segments = 0, discards = 0, collisions = 0;
    std::size_t e_blocks = 0, s_blocks = 0;

    nlohmann::json to_json() const {
        return nlohmann::json{{"schema", 1},
                              {"seed", seed},
                              {"strategy", strategy},
                              {"params", params},
                              {"t_sub", t_sub},
                              {"t_del", t_del},
                              {"t_sub_applied", t_sub_applied},
                              {"t_del_applied", t_del_applied},
                              {"success", success},
                              {"decoded_equal", decoded_equal},
                              {"failure", failure},
                              {"diagnostics",
                               {{"segments", segments},
                                {"discards", discards},
                                {"collisions", collisions},
                                {"e", e_blocks},
                                {"s", s_blocks}}}};
    }
};

inline TrialReport run_trial(const CodeParams& params, const TrialConfig& cfg,
                             std::uint64_t seed) {
    cfg.budget.validate();
    TrialReport rep;
    rep.seed = seed;
    rep.strategy = AdversaryStrategy::kind_name(cfg.strategy.kind);
    rep.params = to_json(params);
    rep.t_sub = cfg.budget.t_sub;
    rep.t_del = cfg.budget.t_del;

    Rng rng(seed);
    AdversaryStrategy strategy = cfg.strategy;
    strategy.seed = rng.next();

    const bool sub_model = cfg.budget.t_sub > 0;
    const bool del_model = cfg.budget.t_del > 0;
    try {
        QString message;
        Codeword cw{{}, params};
        if (sub_model) {
            message = random_qstring(params.q, robust_sub_message_len(params, cfg.budget.t_sub),
                                     rng);
            cw = robust_encode_sub(message, params, cfg.budget.t_sub);
        } else if (del_model) {
            message = random_qstring(
                params.q, robust_del_message_len(params, cfg.budget.t_del, cfg.bec), rng);
            cw = robust_encode_del(message, params, cfg.budget.t_del, cfg.bec);
        } else {
            message = random_qstring(params.q, params.message_len(), rng);
            cw = encode(message, params);
        }

        Codeword noisy = cw;
        if (sub_model) {
            rep.t_sub_applied =
                cfg.exact_budget ? cfg.budget.t_sub : rng.below(cfg.budget.t_sub + 1);
            noisy = corrupt(cw, rep.t_sub_applied, rng.next(), cfg.target);
        }
        SegmentCollection received = tear(noisy, strategy);
        if (del_model) {
            rep.t_del_applied =
                cfg.exact_budget ? cfg.budget.t_del : rng.below(cfg.budget.t_del + 1);
            received = delete_segments(received, rep.t_del_applied, rng.next(), cfg.delete_mode,
                                       &params);
        }

        QString decoded(params.q);
        if (sub_model) {
            RobustStats stats;
            decoded = robust_decode_sub(received, params, cfg.budget.t_sub, &stats, &cw);
            rep.segments = stats.segments;
            rep.collisions = stats.collisions;
            rep.e_blocks = stats.erased_blocks;
            rep.s_blocks = stats.wrong_blocks;
        } else if (del_model) {
            RobustStats stats;
            decoded = robust_decode_del(received, params, cfg.budget.t_del, cfg.bec, &stats);
            rep.segments = stats.segments;
            rep.e_blocks = stats.erased_blocks;
        } else {
            DecodeStats stats;
            decoded = decode(received, params, &stats);
            rep.segments = stats.segments;
            rep.discards = stats.discarded;
        }
        rep.decoded_equal = decoded == message;
        rep.success = rep.decoded_equal;
        if (!rep.success) rep.failure = "decoded message differs";
    } catch (const Error& err) {
        rep.success = false;
        rep.failure = err.what();
    }
    return rep;
}

}  // namespace tornpaper

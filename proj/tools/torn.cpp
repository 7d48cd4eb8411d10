// torn: encode/decode torn-paper codes, run adversarial channel experiments,
// and evaluate rate/redundancy bounds.
//
// Exit codes: 0 success, 2 parameter validation, 3 decode failure,
// 4 I/O failure, 1 other errors (CLI parse errors use CLI11's own codes).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tornpaper/bounds.hpp"
#include "tornpaper/io.hpp"
#include "tornpaper/trial.hpp"

using namespace tornpaper;

namespace {

struct ParamOpts {
    std::string params_file;
    unsigned q = 2;
    std::size_t n = 0, k = 1, lmin = 0, lmax = 0, f = 0;
    std::string rll = "stuffing";
    std::string model;  // "", "sub", "del"
    std::size_t t = 0;
    std::string bec = "parity";
};

void add_param_flags(CLI::App* cmd, ParamOpts& opts) {
    cmd->add_option("--params", opts.params_file, "parameters JSON file (overrides inline flags)");
    cmd->add_option("--q", opts.q, "alphabet size");
    cmd->add_option("--n", opts.n, "strand length");
    cmd->add_option("--k", opts.k, "strand count");
    cmd->add_option("--lmin", opts.lmin, "minimum segment length");
    cmd->add_option("--lmax", opts.lmax, "maximum segment length");
    cmd->add_option("--f", opts.f, "forbidden zero-run length");
    cmd->add_option("--rll", opts.rll, "RLL scheme: stuffing | sequence_replacement");
    cmd->add_option("--model", opts.model, "robust model: sub | del (default: noiseless)");
    cmd->add_option("--t", opts.t, "error budget for the robust model");
    cmd->add_option("--bec", opts.bec, "burst-erasure code: parity | interleaved_rs");
}

CodeParams load_params(const ParamOpts& opts) {
    if (!opts.params_file.empty()) {
        std::ifstream in(opts.params_file);
        if (!in) throw IoError("cannot open params file: " + opts.params_file);
        nlohmann::json j;
        in >> j;
        return params_from_json(j);
    }
    std::optional<RobustConfig> robust;
    if (!opts.model.empty()) {
        RobustConfig rc;
        if (opts.model == "sub")
            rc.model = RobustConfig::Model::substitution;
        else if (opts.model == "del")
            rc.model = RobustConfig::Model::deletion;
        else
            throw ParamError("--model must be 'sub' or 'del'");
        rc.t = opts.t;
        rc.bec = opts.bec == "interleaved_rs" ? RobustConfig::BecKind::interleaved_rs
                                              : RobustConfig::BecKind::parity;
        robust = rc;
    }
    return derive_params(opts.q, opts.n, opts.k, opts.lmin, opts.lmax, opts.f, opts.rll, robust);
}

std::size_t payload_symbols(const CodeParams& p) {
    if (!p.robust || p.robust->t == 0) return p.message_len();
    if (p.robust->model == RobustConfig::Model::substitution)
        return robust_sub_message_len(p, p.robust->t);
    return robust_del_message_len(p, p.robust->t, p.robust->bec);
}

Codeword encode_any(const QString& x, const CodeParams& p) {
    if (!p.robust || p.robust->t == 0) return encode(x, p);
    if (p.robust->model == RobustConfig::Model::substitution)
        return robust_encode_sub(x, p, p.robust->t);
    return robust_encode_del(x, p, p.robust->t, p.robust->bec);
}

QString decode_any(const SegmentCollection& received, const CodeParams& p) {
    if (!p.robust || p.robust->t == 0) return decode(received, p);
    if (p.robust->model == RobustConfig::Model::substitution)
        return robust_decode_sub(received, p, p.robust->t);
    return robust_decode_del(received, p, p.robust->t, p.robust->bec);
}

std::vector<std::size_t> parse_size_list(const std::string& csv) {
    std::vector<std::size_t> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoull(item));
    return out;
}

int cmd_encode(const ParamOpts& popts, const std::string& in, const std::string& out, bool acgt) {
    CodeParams p = load_params(popts);
    const auto bytes = read_binary_file(in);
    const std::size_t symbols = payload_symbols(p);
    QString x = bytes_to_symbols(bytes, p.q, symbols);
    Codeword cw = encode_any(x, p);
    std::ostringstream header;
    header << "torn codeword " << to_json(p).dump() << " orig_bytes=" << bytes.size();
    write_codeword_file(out, cw, header.str(), acgt);
    std::cerr << "encoded " << bytes.size() << " bytes into " << p.k << " strand(s) of length "
              << p.n << " (capacity " << payload_capacity_bytes(p.q, symbols) << " bytes)\n";
    return 0;
}

int cmd_decode(const ParamOpts& popts, const std::string& in, const std::string& out,
               std::int64_t orig_bytes) {
    CodeParams p = load_params(popts);
    SegmentCollection received = read_segments_file(in, p.q);
    QString x = decode_any(received, p);
    const std::size_t capacity = payload_capacity_bytes(p.q, x.size());
    const std::size_t take = orig_bytes >= 0 ? static_cast<std::size_t>(orig_bytes) : capacity;
    if (take > capacity) throw ParamError("--orig-bytes exceeds payload capacity");
    write_binary_file(out, symbols_to_bytes(x, take));
    std::cerr << "decoded " << take << " bytes from " << received.size() << " segments\n";
    return 0;
}

int cmd_tear(const ParamOpts& popts, const std::string& in, const std::string& out,
             const std::string& strategy_name, std::uint64_t seed, const std::string& cuts_csv,
             std::size_t t_sub, const std::string& target_name, std::size_t t_del,
             const std::string& del_mode, bool acgt) {
    CodeParams p = load_params(popts);
    CodewordFile file = read_codeword_file(in, p.q);
    if (file.strands.size() != p.k) throw ParamError("codeword strand count != k");
    for (const auto& z : file.strands)
        if (z.size() != p.n) throw ParamError("codeword strand length != n");
    Codeword cw{file.strands, p};

    if (t_sub > 0) cw = corrupt(cw, t_sub, seed ^ 0xC0FFEE, corrupt_target_by_name(target_name));

    AdversaryStrategy strategy;
    strategy.kind = AdversaryStrategy::kind_by_name(strategy_name);
    strategy.seed = seed;
    if (!cuts_csv.empty()) strategy.cuts = parse_size_list(cuts_csv);
    SegmentCollection T = tear(cw, strategy);
    if (t_del > 0)
        T = delete_segments(T, t_del, seed ^ 0xDE1E7E,
                            del_mode == "adjacent" ? DeleteMode::adjacent : DeleteMode::random,
                            &p);
    write_segments_file(out, T, acgt);
    std::cerr << "tore " << p.k << " strand(s) into " << T.size() << " segments\n";
    return 0;
}

int cmd_trial(const ParamOpts& popts, const std::string& out, const std::string& strategy_name,
              std::uint64_t seed, std::size_t trials, std::size_t t_sub, std::size_t t_del,
              const std::string& target_name, const std::string& del_mode) {
    CodeParams p = load_params(popts);
    TrialConfig cfg;
    cfg.strategy.kind = AdversaryStrategy::kind_by_name(strategy_name);
    cfg.budget.t_sub = t_sub;
    cfg.budget.t_del = t_del;
    cfg.target = corrupt_target_by_name(target_name);
    cfg.delete_mode = del_mode == "adjacent" ? DeleteMode::adjacent : DeleteMode::random;
    if (p.robust && p.robust->model == RobustConfig::Model::deletion) cfg.bec = p.robust->bec;

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty() && out != "-") {
        file.open(out);
        if (!file) throw IoError("cannot open for writing: " + out);
        os = &file;
    }
    std::size_t failures = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        TrialReport rep = run_trial(p, cfg, seed + i);
        if (!rep.success) ++failures;
        (*os) << rep.to_json().dump() << "\n";
    }
    std::cerr << trials - failures << "/" << trials << " trials succeeded\n";
    return failures == 0 ? 0 : 3;
}

int cmd_sweep(const std::string& out, unsigned q, const std::string& n_list,
              const std::string& lmin_list, const std::string& f_list, const std::string& t_list,
              const std::string& strategies, const std::string& model, std::size_t lmax_slack,
              std::size_t trials, std::uint64_t seed) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty() && out != "-") {
        file.open(out);
        if (!file) throw IoError("cannot open for writing: " + out);
        os = &file;
    }
    (*os) << "n,Lmin,f,t,strategy,trials,successes,redundancy,rate\n";
    std::vector<std::string> strategy_names;
    {
        std::stringstream ss(strategies);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) strategy_names.push_back(item);
    }
    for (std::size_t n : parse_size_list(n_list)) {
        for (std::size_t lmin : parse_size_list(lmin_list)) {
            for (std::size_t f : parse_size_list(f_list)) {
                for (std::size_t t : parse_size_list(t_list)) {
                    std::optional<RobustConfig> robust;
                    if (t > 0 && !model.empty()) {
                        RobustConfig rc;
                        rc.model = model == "del" ? RobustConfig::Model::deletion
                                                  : RobustConfig::Model::substitution;
                        rc.t = t;
                        rc.bec = t == 1 ? RobustConfig::BecKind::parity
                                        : RobustConfig::BecKind::interleaved_rs;
                        robust = rc;
                    }
                    CodeParams p;
                    try {
                        p = derive_params(q, n, 1, lmin, lmin + lmax_slack, f, "stuffing",
                                          robust);
                    } catch (const ParamError&) {
                        continue;  // invalid grid point
                    }
                    for (const auto& sname : strategy_names) {
                        TrialConfig cfg;
                        cfg.strategy.kind = AdversaryStrategy::kind_by_name(sname);
                        if (robust) {
                            if (robust->model == RobustConfig::Model::substitution)
                                cfg.budget.t_sub = t;
                            else
                                cfg.budget.t_del = t;
                            cfg.bec = robust->bec;
                        }
                        std::size_t ok = 0;
                        for (std::size_t i = 0; i < trials; ++i)
                            if (run_trial(p, cfg, seed + i).success) ++ok;
                        const std::int64_t red = code_redundancy(p);
                        (*os) << n << ',' << lmin << ',' << f << ',' << t << ',' << sname << ','
                              << trials << ',' << ok << ',' << red << ','
                              << 1.0 - double(red) / double(n) << "\n";
                    }
                }
            }
        }
    }
    return 0;
}

int cmd_bounds(const ParamOpts& popts, const std::string& out, const std::string& format) {
    CodeParams p = load_params(popts);
    nlohmann::json j = bound_report(p);
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty() && out != "-") {
        file.open(out);
        if (!file) throw IoError("cannot open for writing: " + out);
        os = &file;
    }
    if (format == "json") {
        (*os) << j.dump(2) << "\n";
        return 0;
    }
    auto row = [&](const std::string& name, const nlohmann::json& node, const std::string& key) {
        (*os) << "  " << name;
        for (std::size_t i = name.size(); i < 28; ++i) (*os) << ' ';
        (*os) << node.at(key).dump() << "  [" << node.value("kind", "exact") << "]\n";
    };
    (*os) << "bounds for q=" << p.q << " n=" << p.n << " k=" << p.k << " Lmin=" << p.Lmin
          << " Lmax=" << p.Lmax << " f=" << p.f << " (a=" << j.at("a").get<double>() << ")\n";
    row("lemma1 lower redundancy", j.at("lemma1_lower"), "value");
    row("cor1 rate cap", j.at("cor1_rate_cap"), "value");
    row("thm2 redundancy upper", j.at("thm2_upper"), "value");
    row("implementation redundancy", j.at("implementation_red"), "value");
    row("implementation rate", j.at("implementation_rate"), "value");
    row("pilot rate (lemma 5)", j.at("pilot_lemma5"), "rate_lower");
    row("pilot rate (lemma 6)", j.at("pilot_lemma6"), "rate_lower");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adversarial torn-paper codes: codecs, channel simulator, bounds"};
    app.require_subcommand(1);

    ParamOpts popts;
    std::string in_path, out_path;
    std::string strategy = "uniform_random_cuts";
    std::string cuts_csv, target = "mixed", del_mode = "random", format = "json";
    std::uint64_t seed = 0;
    std::size_t trials = 1, t_sub = 0, t_del = 0;
    std::int64_t orig_bytes = -1;
    bool acgt = false;

    auto* enc = app.add_subcommand("encode", "message file -> codeword text file");
    add_param_flags(enc, popts);
    enc->add_option("--in", in_path, "input message file (binary)")->required();
    enc->add_option("--out", out_path, "output codeword file")->required();
    enc->add_flag("--acgt", acgt, "emit ACGT symbols (q = 4 only)");

    auto* dec = app.add_subcommand("decode", "segments file -> message file");
    add_param_flags(dec, popts);
    dec->add_option("--in", in_path, "input segments file")->required();
    dec->add_option("--out", out_path, "output message file")->required();
    dec->add_option("--orig-bytes", orig_bytes, "original message size in bytes");

    auto* tear_cmd = app.add_subcommand("tear", "codeword file -> shuffled segments file");
    add_param_flags(tear_cmd, popts);
    tear_cmd->add_option("--in", in_path, "input codeword file")->required();
    tear_cmd->add_option("--out", out_path, "output segments file")->required();
    tear_cmd->add_option("--strategy", strategy, "adversary strategy");
    tear_cmd->add_option("--seed", seed, "channel seed");
    tear_cmd->add_option("--cuts", cuts_csv, "scripted piece lengths, comma separated");
    tear_cmd->add_option("--t-sub", t_sub, "substitutions before tearing");
    tear_cmd->add_option("--target", target, "corruption target: random|index|marker|parity|mixed");
    tear_cmd->add_option("--t-del", t_del, "segments to delete after tearing");
    tear_cmd->add_option("--del-mode", del_mode, "deletion mode: random|adjacent");
    tear_cmd->add_flag("--acgt", acgt, "emit ACGT symbols (q = 4 only)");

    auto* trial_cmd = app.add_subcommand("trial", "seeded end-to-end experiments -> JSON lines");
    add_param_flags(trial_cmd, popts);
    trial_cmd->add_option("--out", out_path, "output file ('-' for stdout)");
    trial_cmd->add_option("--strategy", strategy, "adversary strategy");
    trial_cmd->add_option("--seed", seed, "base seed");
    trial_cmd->add_option("--trials", trials, "number of trials");
    trial_cmd->add_option("--t-sub", t_sub, "substitution budget");
    trial_cmd->add_option("--t-del", t_del, "deletion budget");
    trial_cmd->add_option("--target", target, "corruption target");
    trial_cmd->add_option("--del-mode", del_mode, "deletion mode");

    std::string n_list, lmin_list, f_list = "3", t_list = "0", strategies = "uniform_random_cuts";
    std::string sweep_model;
    std::size_t lmax_slack = 5;
    auto* sweep_cmd = app.add_subcommand("sweep", "grid of configurations -> CSV");
    sweep_cmd->add_option("--q", popts.q, "alphabet size");
    sweep_cmd->add_option("--n-list", n_list, "comma-separated strand lengths")->required();
    sweep_cmd->add_option("--lmin-list", lmin_list, "comma-separated Lmin values")->required();
    sweep_cmd->add_option("--f-list", f_list, "comma-separated f values");
    sweep_cmd->add_option("--t-list", t_list, "comma-separated error budgets");
    sweep_cmd->add_option("--strategy-list", strategies, "comma-separated strategies");
    sweep_cmd->add_option("--model", sweep_model, "robust model for t > 0: sub | del");
    sweep_cmd->add_option("--lmax-slack", lmax_slack, "Lmax = Lmin + slack");
    sweep_cmd->add_option("--trials", trials, "trials per grid point");
    sweep_cmd->add_option("--seed", seed, "base seed");
    sweep_cmd->add_option("--out", out_path, "output CSV ('-' for stdout)");

    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the bound formulas");
    add_param_flags(bounds_cmd, popts);
    bounds_cmd->add_option("--out", out_path, "output file ('-' for stdout)");
    bounds_cmd->add_option("--format", format, "json | table");

    CLI11_PARSE(app, argc, argv);

    try {
        if (enc->parsed()) return cmd_encode(popts, in_path, out_path, acgt);
        if (dec->parsed()) return cmd_decode(popts, in_path, out_path, orig_bytes);
        if (tear_cmd->parsed())
            return cmd_tear(popts, in_path, out_path, strategy, seed, cuts_csv, t_sub, target,
                            t_del, del_mode, acgt);
        if (trial_cmd->parsed())
            return cmd_trial(popts, out_path, strategy, seed, trials, t_sub, t_del, target,
                             del_mode);
        if (sweep_cmd->parsed())
            return cmd_sweep(out_path, popts.q, n_list, lmin_list, f_list, t_list, strategies,
                             sweep_model, lmax_slack, trials, seed);
        if (bounds_cmd->parsed()) return cmd_bounds(popts, out_path, format);
    } catch (const ParamError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const DecodeError& e) {
        std::cerr << "decode failure: " << e.what() << "\n";
        return 3;
    } catch (const CorruptionError& e) {
        std::cerr << "decode failure: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

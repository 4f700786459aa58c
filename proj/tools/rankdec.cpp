#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "rankdec/channel.hpp"
#include "rankdec/cli.hpp"
#include "rankdec/oracle.hpp"
#include "rankdec/rng.hpp"

using namespace rankdec;

namespace {

/// Code parameters either from --params or from individual flags.
struct ParamArgs {
    std::string file;
    ParamsFile pf{3, 1, 15, 2, 1, 2, std::nullopt};

    void attach(CLI::App* app) {
        app->add_option("--params", file, "parameter file (rankdec-params v1)");
        app->add_option("--r", pf.r, "base field size r");
        app->add_option("--ell", pf.ell, "degree of F_q over F_r");
        app->add_option("--n", pf.n, "extension degree n");
        app->add_option("--m", pf.m, "number of message blocks");
        app->add_option("--k", pf.k, "block degree bound k");
        app->add_option("--s", pf.s, "interpolation order s");
    }

    ParamsFile load() const {
        if (file.empty()) return pf;
        std::istringstream in(read_file(file));
        return read_params(in);
    }
};

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_file(path, text);
}

template <class F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return report_error(e, std::cerr);
    }
}

unsigned resolve_e(const CodeParams& p, const ParamsFile& pf, long flag) {
    if (flag >= 0) return static_cast<unsigned>(flag);
    if (pf.e) return *pf.e;
    return static_cast<unsigned>(std::max(0L, derive_parameters(p).e_max));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Folded rank-metric codes: encoding, rank-error channel, list decoding and pruning"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    unsigned trials = 1;
    std::string out;
    auto shared = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "random seed");
        sub->add_option("--trials", trials, "number of trials");
        sub->add_option("--out", out, "output path (default stdout)");
    };

    // params
    ParamArgs params_args;
    auto* params = app.add_subcommand("params", "report derived parameters");
    params_args.attach(params);
    shared(params);

    // encode
    ParamArgs enc_args;
    std::string msg_file;
    auto* enc = app.add_subcommand("encode", "encode a message file (or a random message) to a matrix file");
    enc_args.attach(enc);
    enc->add_option("--msg", msg_file, "message file (rankdec-msg v1); random if omitted");
    shared(enc);

    // corrupt
    ParamArgs cor_args;
    std::string cor_in, cor_error_out;
    long cor_e = -1;
    auto* cor = app.add_subcommand("corrupt", "add an error of exact rank e");
    cor_args.attach(cor);
    cor->add_option("--in", cor_in, "codeword matrix file")->required();
    cor->add_option("--e", cor_e, "error rank (default: e from params file, else e_max)");
    cor->add_option("--error-out", cor_error_out, "also write the error matrix");
    shared(cor);

    // decode
    ParamArgs dec_args;
    std::string dec_in, dec_precode, dec_stats;
    long dec_e = -1;
    std::size_t dec_max_list = 0;
    auto* dec = app.add_subcommand("decode", "list-decode a received matrix");
    dec_args.attach(dec);
    dec->add_option("--in", dec_in, "received matrix file")->required();
    dec->add_option("--e", dec_e, "decoding radius (default: e from params file, else e_max)");
    dec->add_option("--precode", dec_precode, "pre-code file to prune with");
    dec->add_option("--stats", dec_stats, "stats output path (default stdout)");
    dec->add_option("--max-list", dec_max_list, "list cap (0 = default)");
    shared(dec);

    // roundtrip
    ParamArgs rt_args;
    ExperimentConfig rt_cfg;
    long rt_e = -1;
    std::string rt_precode = "none", rt_design = "random";
    auto* rt = app.add_subcommand("roundtrip", "seeded encode/corrupt/decode trials as CSV");
    rt_args.attach(rt);
    rt->add_option("--e", rt_e, "error rank (default e_max)");
    rt->add_option("--precode", rt_precode, "none|design|hse")->check(CLI::IsMember({"none", "design", "hse"}));
    rt->add_option("--epsilon", rt_cfg.epsilon, "design epsilon");
    rt->add_option("--design", rt_design, "random|combined")->check(CLI::IsMember({"random", "combined"}));
    rt->add_option("--zeta", rt_cfg.zeta, "hse rate loss zeta");
    rt->add_option("--alpha", rt_cfg.alpha, "hse periodicity alpha");
    rt->add_option("--threads", rt_cfg.threads, "worker threads (0 = hardware)");
    rt->add_flag("--check-periodicity", rt_cfg.verify_periodicity, "verify the block-coset structure");
    shared(rt);

    // table
    TableConfig tcfg;
    auto* tab = app.add_subcommand("table", "radius versus rate for s = r-1, k = r-c");
    tab->add_option("--r", tcfg.r, "base field size r");
    tab->add_option("--c", tcfg.c, "c = r - k");
    tab->add_option("--rate-min", tcfg.rate_min);
    tab->add_option("--rate-max", tcfg.rate_max);
    tab->add_option("--rate-step", tcfg.rate_step);
    shared(tab);

    // oracle
    auto* orc = app.add_subcommand("oracle", "exhaustive reference computations");
    orc->require_subcommand(1);
    ParamArgs ol_args, om_args;
    std::string ol_in;
    long ol_e = -1;
    std::uint64_t budget = OracleBudget{}.max_codewords;
    auto* olist = orc->add_subcommand("list", "all codewords within rank distance e");
    ol_args.attach(olist);
    olist->add_option("--in", ol_in, "received matrix file")->required();
    olist->add_option("--e", ol_e, "radius (default: e from params file, else e_max)");
    olist->add_option("--budget", budget, "maximum number of codewords to enumerate");
    shared(olist);
    auto* omin = orc->add_subcommand("mindist", "minimum rank distance of the code");
    om_args.attach(omin);
    omin->add_option("--budget", budget, "maximum number of codewords to enumerate");
    shared(omin);

    // precode
    auto* pre = app.add_subcommand("precode", "pre-code construction");
    pre->require_subcommand(1);
    ParamArgs pb_args;
    std::string pb_mode = "hse", pb_design = "random";
    double pb_eps = 0.25, pb_zeta = 0.1;
    unsigned pb_alpha = 2;
    auto* pbuild = pre->add_subcommand("build", "build a design or hse pre-code file");
    pb_args.attach(pbuild);
    pbuild->add_option("--mode", pb_mode, "design|hse")->check(CLI::IsMember({"design", "hse"}));
    pbuild->add_option("--epsilon", pb_eps, "design epsilon");
    pbuild->add_option("--design", pb_design, "random|combined")->check(CLI::IsMember({"random", "combined"}));
    pbuild->add_option("--zeta", pb_zeta, "hse zeta");
    pbuild->add_option("--alpha", pb_alpha, "hse alpha");
    shared(pbuild);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    if (*params) {
        return guarded([&] {
            std::ostringstream os;
            const int rc = cmd_params(params_args.load(), os, std::cerr);
            if (rc == kExitOk) emit(out, os.str());
            return rc;
        });
    }

    if (*enc) {
        return guarded([&] {
            const ParamsFile pf = enc_args.load();
            const CodeParams p = pf.make();
            MessagePoly f;
            if (msg_file.empty()) {
                Rng rng(seed);
                f = random_message(*p.tower, p.k, p.m, rng);
            } else {
                std::istringstream in(read_file(msg_file));
                f = read_message(in, p);
            }
            std::ostringstream os;
            write_matrix(os, *p.tower, encode(p, f));
            emit(out, os.str());
            return int(kExitOk);
        });
    }

    if (*cor) {
        return guarded([&] {
            const ParamsFile pf = cor_args.load();
            const CodeParams p = pf.make();
            std::istringstream in(read_file(cor_in));
            const FoldedMatrix M = read_matrix(in, *p.tower);
            const unsigned e = resolve_e(p, pf, cor_e);
            const FoldedMatrix E = sample_rank_error(*p.tower, p.folds(), {e, seed});
            std::ostringstream os;
            write_matrix(os, *p.tower, sum(*p.tower, M, E));
            emit(out, os.str());
            if (!cor_error_out.empty()) {
                std::ostringstream es;
                write_matrix(es, *p.tower, E);
                write_file(cor_error_out, es.str());
            }
            return int(kExitOk);
        });
    }

    if (*dec) {
        return guarded([&] {
            const ParamsFile pf = dec_args.load();
            const CodeParams p = pf.make();
            std::istringstream in(read_file(dec_in));
            const FoldedMatrix y = read_matrix(in, *p.tower);
            const unsigned e = resolve_e(p, pf, dec_e);
            std::optional<PrecodedCode> pc;
            std::unique_ptr<CandidateFilter> filter;
            if (!dec_precode.empty()) {
                std::istringstream pin(read_file(dec_precode));
                pc = read_precode(pin);
                filter = pc->filter();
            }
            EnumerateOptions opts;
            opts.max_list = dec_max_list;
            const DecodeResult res = decode(y, e, p, filter.get(), opts);
            // messages go to <out>.<i>.msg, or stdout one after another
            for (std::size_t i = 0; i < res.list.size(); ++i) {
                std::ostringstream ms;
                write_message(ms, res.list[i]);
                if (out.empty() || out == "-")
                    std::cout << ms.str();
                else
                    write_file(out + "." + std::to_string(i) + ".msg", ms.str());
            }
            std::ostringstream ss;
            write_stats(ss, res.stats);
            if (dec_stats.empty() || dec_stats == "-")
                std::cout << ss.str();
            else
                write_file(dec_stats, ss.str());
            return int(kExitOk);
        });
    }

    if (*rt) {
        return guarded([&] {
            rt_cfg.params = rt_args.load();
            if (rt_e >= 0) rt_cfg.e = static_cast<unsigned>(rt_e);
            else if (rt_cfg.params.e) rt_cfg.e = rt_cfg.params.e;
            rt_cfg.trials = trials;
            rt_cfg.seed = seed;
            rt_cfg.precode = rt_precode == "design" ? PrecodeKind::Design
                             : rt_precode == "hse"  ? PrecodeKind::Hse
                                                    : PrecodeKind::None;
            rt_cfg.design_mode = rt_design == "combined" ? DesignMode::Combined : DesignMode::Random;
            if (rt_cfg.threads == 0) rt_cfg.threads = std::max(1u, std::thread::hardware_concurrency());
            std::ostringstream os;
            const int rc = cmd_roundtrip(rt_cfg, os, std::cerr);
            if (rc == kExitOk) emit(out, os.str());
            return rc;
        });
    }

    if (*tab) {
        return guarded([&] {
            std::ostringstream os;
            const int rc = cmd_table(tcfg, os, std::cerr);
            if (rc == kExitOk) emit(out, os.str());
            return rc;
        });
    }

    if (*olist) {
        return guarded([&] {
            const ParamsFile pf = ol_args.load();
            const CodeParams p = pf.make();
            std::istringstream in(read_file(ol_in));
            const FoldedMatrix y = read_matrix(in, *p.tower);
            const auto list = brute_force_list(y, resolve_e(p, pf, ol_e), p, {budget});
            for (std::size_t i = 0; i < list.size(); ++i) {
                std::ostringstream ms;
                write_message(ms, list[i]);
                if (out.empty() || out == "-")
                    std::cout << ms.str();
                else
                    write_file(out + "." + std::to_string(i) + ".msg", ms.str());
            }
            std::cout << "list_size=" << list.size() << '\n';
            return int(kExitOk);
        });
    }

    if (*omin) {
        return guarded([&] {
            const CodeParams p = om_args.load().make();
            std::ostringstream os;
            os << "min_distance=" << brute_force_min_distance(p, {budget}) << '\n'
               << "distance_bound=" << derive_parameters(p).distance_bound << '\n';
            emit(out, os.str());
            return int(kExitOk);
        });
    }

    if (*pbuild) {
        return guarded([&] {
            const CodeParams p = pb_args.load().make();
            PrecodedCode pc;
            if (pb_mode == "hse") {
                pc = precode_hse_build(p, pb_zeta, pb_alpha, seed);
                for (const auto& w : pc.guard_warnings) std::cerr << "warning: " << w << '\n';
            } else {
                const unsigned Lambda = p.ell() * p.n() * p.folds();
                const auto design = build_design(p.tower->fr_ptr(), 1, pb_eps, Lambda, p.m,
                                                 pb_design == "combined" ? DesignMode::Combined : DesignMode::Random,
                                                 seed);
                pc = precode_design_build(p, pb_eps, design);
            }
            std::ostringstream os;
            write_precode(os, pc);
            emit(out, os.str());
            return int(kExitOk);
        });
    }
    return kExitOk;
}

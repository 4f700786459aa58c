#include "rankdec/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "rankdec/channel.hpp"
#include "rankdec/error.hpp"
#include "rankdec/rng.hpp"

namespace rankdec {

bool is_parameter_error(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotPrimePower:
        case ErrorCode::GcdViolation:
        case ErrorCode::InvalidParameters:
        case ErrorCode::ParameterInfeasible:
        case ErrorCode::RadiusTooLarge:
        case ErrorCode::RankTooLarge:
            return true;
        default:
            return false;
    }
}

int report_error(const std::exception& e, std::ostream& err) {
    if (const auto* re = dynamic_cast<const Error*>(&e)) {
        // what() is "<Code>: <text>"
        std::string_view text = re->what();
        const std::string_view code = to_string(re->code());
        if (text.substr(0, code.size()) == code) text.remove_prefix(std::min(text.size(), code.size() + 2));
        err << "error code=" << code << " message=" << text << '\n';
        return is_parameter_error(re->code()) ? kExitInvalid : kExitRuntime;
    }
    err << "error code=Runtime message=" << e.what() << '\n';
    return kExitRuntime;
}

namespace {

const char* precode_name(PrecodeKind k) {
    switch (k) {
        case PrecodeKind::Design: return "design";
        case PrecodeKind::Hse: return "hse";
        default: return "none";
    }
}

}  // namespace

std::string config_header(const ExperimentConfig& cfg) {
    const ParamsFile& p = cfg.params;
    std::ostringstream os;
    os << "# rankdec roundtrip r=" << p.r << " ell=" << p.ell << " n=" << p.n << " m=" << p.m << " k=" << p.k
       << " s=" << p.s << '\n';
    const long e = cfg.e ? static_cast<long>(*cfg.e) : derive_parameters(p.make()).e_max;
    os << "# e=" << e << " trials=" << cfg.trials << " seed=" << cfg.seed
       << " precode=" << precode_name(cfg.precode);
    if (cfg.precode == PrecodeKind::Design)
        os << " epsilon=" << cfg.epsilon << " design=" << (cfg.design_mode == DesignMode::Random ? "random" : "combined");
    if (cfg.precode == PrecodeKind::Hse) os << " zeta=" << cfg.zeta << " alpha=" << cfg.alpha;
    os << '\n';
    return os.str();
}

int cmd_params(const ParamsFile& pf, std::ostream& out, std::ostream& err) {
    try {
        const CodeParams p = pf.make();
        const DerivedParameters d = derive_parameters(p);
        if (d.e_max < 0)
            throw Error(ErrorCode::InvalidParameters, "no error can be corrected (e_max < 0)");
        out << std::setprecision(15);
        out << "# rankdec params r=" << pf.r << " ell=" << pf.ell << " n=" << pf.n << " m=" << pf.m << " k=" << pf.k
            << " s=" << pf.s << '\n';
        out << "q=" << p.q() << '\n'
            << "t=" << p.t() << '\n'
            << "rate=" << d.rate << '\n'
            << "distance_bound=" << d.distance_bound << '\n'
            << "e_max=" << d.e_max << '\n'
            << "tau=" << d.tau << '\n'
            << "tau_asymptotic=" << d.tau_asymptotic << '\n'
            << "unique_radius=" << d.unique_radius << '\n'
            << "beyond_unique=" << (d.e_max > static_cast<long>(d.unique_radius)) << '\n'
            << "mrd=" << d.mrd << '\n'
            << "rho=" << d.rho << '\n'
            << "rate_limit=" << d.rate_limit << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        return report_error(e, err);
    }
}

std::optional<PrecodedCode> build_precode(const ExperimentConfig& cfg, const CodeParams& p) {
    switch (cfg.precode) {
        case PrecodeKind::None:
            return std::nullopt;
        case PrecodeKind::Hse:
            return precode_hse_build(p, cfg.zeta, cfg.alpha, cfg.seed);
        case PrecodeKind::Design: {
            const unsigned Lambda = p.ell() * p.n() * p.folds();
            const auto design =
                build_design(p.tower->fr_ptr(), 1, cfg.epsilon, Lambda, p.m, cfg.design_mode, cfg.seed);
            return precode_design_build(p, cfg.epsilon, design);
        }
    }
    return std::nullopt;
}

std::vector<TrialOutcome> run_roundtrip(const ExperimentConfig& cfg) {
    const CodeParams p = cfg.params.make();
    const DerivedParameters d = derive_parameters(p);
    const unsigned e = cfg.e ? *cfg.e : static_cast<unsigned>(std::max(0L, d.e_max));
    if (static_cast<long>(e) > d.e_max)
        throw Error(ErrorCode::RadiusTooLarge, "e = " + std::to_string(e) + " exceeds e_max = " + std::to_string(d.e_max));
    const auto pc = build_precode(cfg, p);
    const auto filter = pc ? pc->filter() : nullptr;
    EnumerateOptions opts;
    opts.verify_periodicity = cfg.verify_periodicity;

    std::vector<TrialOutcome> rows(cfg.trials);
    const Rng base(cfg.seed);
    auto run_one = [&](unsigned i) {
        Rng rng = base.split(i);
        Rng msg_rng = rng.split(0);
        const std::uint64_t err_seed = rng.split(1).next();
        std::vector<Elem> x;
        MessagePoly f;
        if (pc) {
            x = pc->random_premessage(msg_rng);
            f = pc->message(x);
        } else {
            f = random_message(*p.tower, p.k, p.m, msg_rng);
        }
        const ReceivedWord y = add_rank_errors(*p.tower, encode(p, f), {e, err_seed});
        const DecodeResult res = decode(y, e, p, filter.get(), opts);
        TrialOutcome& o = rows[i];
        o.trial = i;
        if (pc) {
            for (const auto& z : res.preimages) o.success = o.success || z == x;
        } else {
            for (const auto& g : res.list) o.success = o.success || g == f;
        }
        o.list_size = res.stats.list_size;
        o.candidates = res.stats.candidates;
        o.kernel_dim = res.stats.kernel_dim;
        o.overflow = res.stats.overflow;
        o.degenerate = res.stats.degenerate;
        o.periodicity_violations = res.stats.periodicity_violations;
    };

    const unsigned workers = std::max(1u, std::min(cfg.threads, cfg.trials));
    if (workers == 1) {
        for (unsigned i = 0; i < cfg.trials; ++i) run_one(i);
        return rows;
    }
    std::atomic<unsigned> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (unsigned i = next++; i < cfg.trials && !failed; i = next++) {
                try {
                    run_one(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                }
            }
            (void)w;
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

void write_roundtrip_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<TrialOutcome>& rows) {
    os << config_header(cfg);
    os << "trial,success,list_size,candidates,kernel_dim,overflow,degenerate\n";
    std::size_t ok = 0;
    for (const auto& r : rows) {
        os << r.trial << ',' << r.success << ',' << r.list_size << ',' << r.candidates << ',' << r.kernel_dim << ','
           << r.overflow << ',' << r.degenerate << '\n';
        ok += r.success;
    }
    os << std::setprecision(6) << "# success_rate=" << (rows.empty() ? 0.0 : static_cast<double>(ok) / rows.size())
       << '\n';
}

int cmd_roundtrip(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto rows = run_roundtrip(cfg);
        write_roundtrip_csv(out, cfg, rows);
        return kExitOk;
    } catch (const std::exception& e) {
        return report_error(e, err);
    }
}

std::vector<TableRow> table_rows(const TableConfig& cfg) {
    if (cfg.c < 1 || cfg.c > cfg.r - 1) throw Error(ErrorCode::InvalidParameters, "table needs 1 <= c <= r-1");
    if (!(cfg.rate_step > 0)) throw Error(ErrorCode::InvalidParameters, "rate step must be positive");
    const double rho = 1.0 / static_cast<double>(cfg.r - 1);
    std::vector<TableRow> out;
    const auto steps = static_cast<long>(std::floor((cfg.rate_max - cfg.rate_min) / cfg.rate_step + 1e-9));
    for (long i = 0; i <= steps; ++i) {
        TableRow row;
        row.rate = cfg.rate_min + static_cast<double>(i) * cfg.rate_step;
        row.tau_folded = folded_radius(row.rate, cfg.r, cfg.c);
        row.tau_unique = unique_radius_fraction(row.rate);
        row.rate_limit = rate_limit(row.tau_folded, rho);
        row.beats_unique = row.tau_folded > row.tau_unique;
        out.push_back(row);
    }
    return out;
}

int cmd_table(const TableConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto rows = table_rows(cfg);
        out << std::setprecision(15);
        out << "# rankdec table r=" << cfg.r << " c=" << cfg.c << " s=" << cfg.r - 1 << " k=" << cfg.r - cfg.c
            << " rate_min=" << cfg.rate_min << " rate_max=" << cfg.rate_max << " rate_step=" << cfg.rate_step << '\n';
        out << "# crossover=" << crossover_rate(cfg.r, cfg.c) << " rho=" << 1.0 / static_cast<double>(cfg.r - 1)
            << '\n';
        out << "R,tau_folded,tau_unique,R_limit,beats_unique\n";
        for (const auto& r : rows)
            out << r.rate << ',' << r.tau_folded << ',' << r.tau_unique << ',' << r.rate_limit << ',' << r.beats_unique
                << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        return report_error(e, err);
    }
}

}  // namespace rankdec

// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rankdec/channel.hpp"
#include "rankdec/cli.hpp"
#include "rankdec/decoder.hpp"
#include "rankdec/oracle.hpp"
#include "rankdec/pruning.hpp"
#include "support.hpp"

using namespace rankdec;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

/// Runs fn(i) for i in [0, count) on all hardware threads. fn writes only
/// to its own slot, so results do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
        });
    for (auto& t : pool) t.join();
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(15) << x;
    return os.str();
}

std::map<std::string, std::string> key_values(const std::string& text) {
    std::istringstream is(text);
    std::map<std::string, std::string> out;
    for (auto& [k, v] : read_key_values(is)) out[k] = v;
    return out;
}

/// Smallest element of F_r of multiplicative order r-1, by plain powers.
Elem reference_gamma(const GaloisField& F, std::uint64_t r) {
    for (Elem g = 1; g < r; ++g) {
        bool primitive = true;
        for (std::uint64_t d = 1; d < r - 1 && primitive; ++d) primitive = F.pow(g, d) != 1;
        if (primitive) return g;
    }
    return 0;
}

/// Received word at exact rank e from a seeded message.
struct Instance {
    MessagePoly f;
    ReceivedWord y;
};

Instance make_instance(const CodeParams& p, unsigned e, std::uint64_t seed) {
    Rng rng = Rng(seed);
    Rng msg_rng = rng.split(0);
    Instance in{random_message(*p.tower, p.k, p.m, msg_rng), {}};
    in.y = add_rank_errors(*p.tower, encode(p, in.f), {e, rng.split(1).next()});
    return in;
}

// Shared by criteria 3, 4 and 5.
struct DecodeRecord {
    bool contains = false;
    bool superset = true;
    std::size_t kernel_dim = 0;
    bool degenerate = false;
    std::size_t periodicity_checks = 0;
    std::size_t periodicity_violations = 0;
};

std::vector<DecodeRecord> containment_records;
std::vector<DecodeRecord> oracle_records;

Outcome distance_exactness() {
    struct Case { unsigned n, m; };
    std::ostringstream os;
    bool ok = true;
    for (const Case c : {Case{3, 1}, Case{5, 2}}) {
        const auto p = CodeParams::make(3, 1, c.n, c.m, 1, 1);
        const unsigned bound = c.n - c.m + 1;
        const unsigned lib = brute_force_min_distance(p);
        // independent scan with direct evaluation and plain elimination
        const std::uint64_t q_n = p.tower->fqn().order();
        std::vector<Elem> flat(p.m * p.k, 0);
        std::size_t min_rank = c.n + 1;
        std::uint64_t nonzero = 0;
        for (;;) {
            std::size_t j = 0;
            while (j < flat.size() && ++flat[j] == q_n) flat[j++] = 0;
            if (j == flat.size()) break;
            const auto M = testsupport::reference_encode(p, MessagePoly::unflatten(flat, p.k, p.m));
            min_rank = std::min(min_rank, testsupport::reference_rank_fq(*p.tower, M));
            ++nonzero;
        }
        ok = ok && lib >= bound && min_rank >= bound && lib == min_rank;
        os << "n=" << c.n << " m=" << c.m << " codewords=" << nonzero << " min_rank=" << min_rank
           << " bound=" << bound << "; ";
    }
    return {ok, os.str()};
}

Outcome interpolation_soundness() {
    const auto p = CodeParams::make(3, 1, 15, 2, 1, 2);
    const Tower& T = *p.tower;
    const GaloisField& F = T.fqn();
    const Elem gamma = reference_gamma(T.fr(), p.r());
    const std::size_t N = 200;
    std::vector<int> good(N, 0);
    std::vector<std::size_t> points(N, 0);
    parallel_for(N, [&](std::size_t i) {
        const auto in = make_instance(p, 8, 1000 + i);
        const auto Q = interpolate(in.y, 8, p);
        if (Q.is_zero()) return;
        bool all = true;
        for (unsigned a = 0; a < p.n(); ++a)
            for (unsigned j = 0; j < p.folds(); ++j) {
                std::vector<Elem> z;
                for (unsigned w = 0; w < p.s; ++w) z.push_back(in.y.at(a, (j + w) % p.folds()));
                const Elem alpha = F.pow(static_cast<Elem>(p.q()), a);
                all = all && testsupport::reference_eval_q(T, Q, F.pow(gamma, j), alpha, z) == 0;
                ++points[i];
            }
        good[i] = all;
    });
    const auto passed = std::accumulate(good.begin(), good.end(), std::size_t{0});
    const bool ok = passed == N && std::all_of(points.begin(), points.end(), [](std::size_t c) { return c == 30; });
    return {ok, std::to_string(passed) + "/" + std::to_string(N) + " nonzero Q vanishing at all 30 points"};
}

DecodeRecord record(const DecodeResult& res) {
    DecodeRecord r;
    r.kernel_dim = res.stats.kernel_dim;
    r.degenerate = res.stats.degenerate;
    r.periodicity_checks = res.stats.periodicity_checks;
    r.periodicity_violations = res.stats.periodicity_violations;
    return r;
}

Outcome containment() {
    const auto p = CodeParams::make(3, 1, 15, 2, 1, 2);
    const std::size_t N = 500;
    containment_records.assign(N, {});
    std::vector<int> exact_rank(N, 0);
    parallel_for(N, [&](std::size_t i) {
        const auto in = make_instance(p, 8, 5000 + i);
        exact_rank[i] =
            testsupport::reference_rank_fq(*p.tower, difference(*p.tower, in.y, encode(p, in.f))) == 8;
        EnumerateOptions opts;
        opts.verify_periodicity = true;
        const auto res = decode(in.y, 8, p, nullptr, opts);
        DecodeRecord r = record(res);
        r.contains = std::find(res.list.begin(), res.list.end(), in.f) != res.list.end();
        containment_records[i] = r;
    });
    std::size_t hits = 0, ranks = 0;
    for (std::size_t i = 0; i < N; ++i) {
        hits += containment_records[i].contains;
        ranks += exact_rank[i];
    }
    return {hits == N && ranks == N, std::to_string(hits) + "/" + std::to_string(N) +
                                         " transmitted messages in list, rank(E)=8 in " + std::to_string(ranks)};
}

Outcome oracle_equivalence() {
    const auto p = CodeParams::make(3, 1, 5, 2, 1, 2);
    const unsigned emax = static_cast<unsigned>(derive_parameters(p).e_max);
    const std::size_t seeds = 50;
    const std::size_t N = (emax + 1) * seeds;
    oracle_records.assign(N, {});
    std::vector<std::size_t> oracle_sizes(N, 0);
    parallel_for(N, [&](std::size_t i) {
        const unsigned e = static_cast<unsigned>(i / seeds);
        const auto in = make_instance(p, e, 9000 + i);
        const auto oracle = brute_force_list(in.y, e, p);
        EnumerateOptions opts;
        opts.verify_periodicity = true;
        const auto res = decode(in.y, e, p, nullptr, opts);
        DecodeRecord r = record(res);
        r.superset = std::all_of(oracle.begin(), oracle.end(), [&](const MessagePoly& g) {
            return std::find(res.list.begin(), res.list.end(), g) != res.list.end();
        });
        r.contains = std::find(res.list.begin(), res.list.end(), in.f) != res.list.end();
        oracle_records[i] = r;
        oracle_sizes[i] = oracle.size();
    });
    std::size_t ok = 0;
    for (const auto& r : oracle_records) ok += r.superset;
    const auto max_oracle = *std::max_element(oracle_sizes.begin(), oracle_sizes.end());
    return {ok == N, std::to_string(ok) + "/" + std::to_string(N) + " instances (e=0.." + std::to_string(emax) +
                         " x " + std::to_string(seeds) + " seeds), max oracle list " + std::to_string(max_oracle)};
}

Outcome periodicity_and_kernel() {
    const unsigned fold_bound = 15 * (2 - 1);  // ell n (s-1) at the containment parameters
    const unsigned fold_bound_small = 5 * (2 - 1);
    std::size_t trials = 0, violations = 0, checks = 0, over = 0, within_s1 = 0, degenerate = 0;
    auto scan = [&](const std::vector<DecodeRecord>& rs, unsigned bound) {
        for (const auto& r : rs) {
            ++trials;
            checks += r.periodicity_checks;
            violations += r.periodicity_violations;
            over += r.kernel_dim > bound;
            within_s1 += r.kernel_dim <= 1;
            degenerate += r.degenerate;
        }
    };
    scan(containment_records, fold_bound);
    scan(oracle_records, fold_bound_small);
    std::ostringstream os;
    os << trials << " trials, " << checks << " coset checks, " << violations << " violations, " << over
       << " over ell*n*(s-1); recorded: dim W <= s-1 in " << within_s1 << "/" << trials << ", degenerate "
       << degenerate;
    return {trials > 0 && violations == 0 && over == 0, os.str()};
}

Outcome evasive_exactness() {
    const auto fr = canonical_field(3);
    const auto ev = build_evasive(fr, 1, 0.5, 32);
    const GaloisField& F = *ev.fq1;
    // direct evaluation of sum_j gamma_j x_j^{r^{h-1-j}} by plain powers
    auto zero = [&](Elem x0, Elem x1) {
        const Elem a = F.mul(ev.points[0], F.pow(x0, 3));
        const Elem b = F.mul(ev.points[1], x1);
        return F.add(a, b) == 0;
    };
    std::vector<std::pair<Elem, Elem>> pts;
    for (Elem x0 = 0; x0 < F.order(); ++x0)
        for (Elem x1 = 0; x1 < F.order(); ++x1)
            if (zero(x0, x1)) pts.push_back({x0, x1});
    std::set<std::pair<Elem, Elem>> set(pts.begin(), pts.end());
    bool linear = true;
    for (const auto& [a0, a1] : pts) {
        for (const auto& [b0, b1] : pts) linear = linear && set.count({F.add(a0, b0), F.add(a1, b1)});
        for (Elem c = 0; c < 3; ++c) linear = linear && set.count({F.mul(c, a0), F.mul(c, a1)});
    }
    std::size_t disagree = 0;
    for (Elem x0 = 0; x0 < F.order(); ++x0)
        for (Elem x1 = 0; x1 < F.order(); ++x1) disagree += ev.contains(std::vector<Elem>{x0, x1}) != zero(x0, x1);
    const bool agree = disagree == 0 && ev.block_dim() == 4;
    const bool ok = F.order() == 81 && pts.size() == 81 && linear && agree && ev.points == std::vector<Elem>{1, 2};
    return {ok, "q1=" + std::to_string(F.order()) + " |V|=" + std::to_string(pts.size()) +
                    (linear ? " closed under + and F_r scaling" : " NOT linear") +
                    ", library disagreements " + std::to_string(disagree) + ", basis dim " + std::to_string(ev.block_dim())};
}

Outcome pruned_list_size() {
    const auto p = CodeParams::make(3, 1, 15, 2, 1, 2);
    const auto pc = precode_hse_build(p, 0.1, 2, 17);
    const auto filter = pc.filter();
    const std::size_t N = 500;
    std::vector<std::size_t> sizes(N, 0);
    std::vector<int> present(N, 0);
    parallel_for(N, [&](std::size_t i) {
        Rng rng(20000 + i);
        const auto x = pc.random_premessage(rng);
        const auto y = add_rank_errors(*p.tower, encode(p, pc.message(x)), {8, rng.next()});
        const auto res = decode(y, 8, p, filter.get());
        sizes[i] = res.stats.candidates;
        present[i] = std::find(res.preimages.begin(), res.preimages.end(), x) != res.preimages.end();
    });
    const std::size_t within = std::count_if(sizes.begin(), sizes.end(), [](std::size_t s) { return s <= 30; });
    const auto found = std::accumulate(present.begin(), present.end(), std::size_t{0});
    const bool ok = within * 100 >= N * 99 && found == N;
    return {ok, "list <= 30 in " + std::to_string(within) + "/" + std::to_string(N) + ", max " +
                    std::to_string(*std::max_element(sizes.begin(), sizes.end())) + ", pre-message present in " +
                    std::to_string(found) + "/" + std::to_string(N)};
}

Outcome design_verifier() {
    const auto fr = canonical_field(3);
    DesignOptions opts;
    opts.codim = 8;
    bool ok = true;
    std::ostringstream os;
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto a = build_design(fr, 1, 8.0 / 30, 30, 4, DesignMode::Random, seed, opts);
        const auto b = build_design(fr, 1, 8.0 / 30, 30, 4, DesignMode::Random, seed, opts);
        const auto ca = verify_design(*fr, a, 1, 0, 0, seed);
        const auto cb = verify_design(*fr, b, 1, 0, 0, seed);
        bool codims = a.members.size() == 4;
        for (std::size_t i = 0; i < a.members.size(); ++i) codims = codims && a.codim(i) == 8;
        const bool same = a.members == b.members && ca.max_sum == cb.max_sum;
        ok = ok && codims && same && ca.exhaustive && ca.passed && ca.max_sum <= a.declared_bound;
        os << "seed " << seed << ": max=" << ca.max_sum << " A=" << a.declared_bound << " (" << ca.method << ")"
           << (same ? "" : " NOT reproducible") << "; ";
    }
    return {ok, os.str()};
}

Outcome formula_fidelity() {
    struct P { std::uint64_t r; unsigned ell, n, m, k, s; };
    bool ok = true;
    std::ostringstream os;
    for (const P c : {P{3, 1, 15, 2, 1, 2}, P{3, 1, 5, 2, 1, 2}, P{4, 1, 7, 2, 2, 3}, P{5, 1, 9, 3, 2, 4},
                      P{4, 2, 5, 2, 1, 3}}) {
        ParamsFile pf;
        pf.r = c.r;
        pf.ell = c.ell;
        pf.n = c.n;
        pf.m = c.m;
        pf.k = c.k;
        pf.s = c.s;
        std::ostringstream out, err;
        const int code = cmd_params(pf, out, err);
        const auto kv = key_values(out.str());
        const double r = static_cast<double>(c.r);
        const double rate = (c.k / (r - 1)) * (static_cast<double>(c.m) / c.n);
        const long num = static_cast<long>(c.s) * (c.r - c.k) * (c.n - c.m + 1);
        const long den = static_cast<long>(c.r - 1) + static_cast<long>(c.s) * (c.r - c.k);
        const long emax = num / den - 1;
        const double tau = static_cast<double>(emax) / c.n;
        const double tau_asym =
            (c.s * (r - c.k)) / (r - 1 + c.s * (r - c.k)) * (1 - static_cast<double>(c.m) / c.n);
        const double rho = 1 / (r - 1);
        const bool match = code == 0 && kv.count("rate") && kv.at("rate") == fmt(rate) &&
                           kv.at("e_max") == std::to_string(emax) && kv.at("tau") == fmt(tau) &&
                           kv.at("tau_asymptotic") == fmt(tau_asym) && kv.at("rho") == fmt(rho);
        ok = ok && match;
        os << "params(" << c.r << "," << c.ell << "," << c.n << "," << c.m << "," << c.k << "," << c.s
           << ") e_max=" << emax << (match ? "" : " MISMATCH") << "; ";
    }
    struct Tc { std::uint64_t r; unsigned c; };
    for (const Tc t : {Tc{3, 2}, Tc{2, 1}, Tc{4, 2}, Tc{5, 3}, Tc{7, 4}}) {
        TableConfig cfg;
        cfg.r = t.r;
        cfg.c = t.c;
        std::ostringstream out, err;
        bool match = cmd_table(cfg, out, err) == 0;
        const double r = static_cast<double>(t.r), c = t.c;
        const std::string expect_header =
            "# crossover=" + fmt((r - c) / (r + c)) + " rho=" + fmt(1 / (r - 1)) + "\n";
        match = match && out.str().find(expect_header) != std::string::npos;
        std::istringstream is(out.str());
        std::string line;
        std::size_t rows = 0;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#' || line[0] == 'R') continue;
            std::istringstream ls(line);
            std::string cell;
            std::vector<std::string> cells;
            while (std::getline(ls, cell, ',')) cells.push_back(cell);
            if (cells.size() != 5) {
                match = false;
                continue;
            }
            const double R = std::stod(cells[0]);
            const double tau = (c / (c + 1)) * (1 - ((r - 1) / (r - c)) * R);
            const double unique = (1 - R) / 2;
            const double limit = (1 - tau) * (1 - tau / (r - 1));
            match = match && cells[1] == fmt(tau) && cells[2] == fmt(unique) && cells[3] == fmt(limit) &&
                    cells[4] == (tau > unique ? "1" : "0");
            ++rows;
        }
        match = match && rows == 11;
        ok = ok && match;
        os << "table(r=" << t.r << ",c=" << t.c << ")" << (match ? "" : " MISMATCH") << "; ";
    }
    return {ok, os.str()};
}

Outcome channel_exactness() {
    const auto p = CodeParams::make(3, 1, 15, 2, 1, 2);
    const unsigned n = p.n();
    const std::vector<unsigned> ranks{0, 1, n / 2, n};
    const std::size_t N = 1000;
    std::vector<int> exact(N, 0);
    parallel_for(N, [&](std::size_t i) {
        const unsigned e = ranks[i % ranks.size()];
        Rng rng(40000 + i);
        const auto f = random_message(*p.tower, p.k, p.m, rng);
        const auto M = encode(p, f);
        const auto Y = add_rank_errors(*p.tower, M, {e, rng.next()});
        exact[i] = testsupport::reference_rank_fq(*p.tower, difference(*p.tower, Y, M)) == e;
    });
    const auto hits = std::accumulate(exact.begin(), exact.end(), std::size_t{0});
    return {hits == N, std::to_string(hits) + "/" + std::to_string(N) + " injections at exact rank, e in {0,1," +
                           std::to_string(n / 2) + "," + std::to_string(n) + "}"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;  // 0: no stated runtime
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "distance exactness", 10, distance_exactness},
        {2, "interpolation soundness", 60, interpolation_soundness},
        {3, "containment at e=8", 300, containment},
        {4, "oracle equivalence", 300, oracle_equivalence},
        {5, "periodicity and kernel bound", 0, periodicity_and_kernel},
        {6, "evasive set exactness", 10, evasive_exactness},
        {7, "pruned list size", 600, pruned_list_size},
        {8, "design verifier", 60, design_verifier},
        {9, "formula fidelity", 0, formula_fidelity},
        {10, "channel exactness", 0, channel_exactness},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("%s criterion %d (%s): %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    secs, in_time ? "" : " over time limit");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}

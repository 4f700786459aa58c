#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rankdec/error.hpp"
#include "rankdec/io.hpp"
#include "rankdec/pruning.hpp"

namespace rankdec {

enum class PrecodeKind { None, Design, Hse };

struct ExperimentConfig {
    ParamsFile params;
    std::optional<unsigned> e;  // defaults to e_max
    unsigned trials = 1;
    std::uint64_t seed = 0;
    PrecodeKind precode = PrecodeKind::None;
    double epsilon = 0.25;                   // design
    DesignMode design_mode = DesignMode::Random;
    double zeta = 0.1;                       // hse
    unsigned alpha = 2;                      // hse
    unsigned threads = 1;
    bool verify_periodicity = false;
};

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitInvalid = 2 };

/// Maps an error to its exit code and prints `error code=<Code> message=<text>`.
int report_error(const std::exception& e, std::ostream& err);
bool is_parameter_error(ErrorCode code);

std::string config_header(const ExperimentConfig& cfg);

int cmd_params(const ParamsFile& pf, std::ostream& out, std::ostream& err);

struct TrialOutcome {
    unsigned trial = 0;
    bool success = false;
    std::size_t list_size = 0;
    std::size_t candidates = 0;
    std::size_t kernel_dim = 0;
    bool overflow = false;
    bool degenerate = false;
    std::size_t periodicity_violations = 0;
};

/// Pre-code for a roundtrip configuration (none when precode == None).
std::optional<PrecodedCode> build_precode(const ExperimentConfig& cfg, const CodeParams& p);

/// Trials are independent: trial i draws from Rng(seed).split(i). Results are
/// ordered by trial index whatever the thread count.
std::vector<TrialOutcome> run_roundtrip(const ExperimentConfig& cfg);
void write_roundtrip_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<TrialOutcome>& rows);
int cmd_roundtrip(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

struct TableConfig {
    std::uint64_t r = 3;
    unsigned c = 2;
    double rate_min = 0.0;
    double rate_max = 0.5;
    double rate_step = 0.05;
};

struct TableRow {
    double rate, tau_folded, tau_unique, rate_limit;
    bool beats_unique;
};

std::vector<TableRow> table_rows(const TableConfig& cfg);
int cmd_table(const TableConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace rankdec

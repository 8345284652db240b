#ifndef LDLAB_HARNESS_HPP
#define LDLAB_HARNESS_HPP

#include <string>
#include <vector>

#include "ldlab/gabidulin.hpp"
#include "ldlab/kk.hpp"
#include "ldlab/lofrs.hpp"

namespace ldlab {

enum class ExperimentKind { Gabidulin, GabidulinUnique, Lofrs, Kk, DesignVerify, ModulusFind };

std::string kind_name(ExperimentKind k);

/// One flat bag of parameters; each kind validates the slice it uses before
/// dispatch. Identical config + seed must give byte-identical outputs.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Gabidulin;

    uint32_t h = 2;
    int n = 6, m = 2, k = 3, s = 2;
    double epsilon = 0.5;
    int errors = 0;   // rank errors (gabidulin) / corrupted columns (lofrs)
    int mu = 0, rho = 0;  // operator channel

    uint32_t q = 16;
    uint64_t ell = 3;
    int agreement = -1;  // lofrs: when >= 0 overrides errors = N - agreement

    int tau = 2;            // design-verify
    size_t design_members = 0;  // 0: one per message coefficient
    std::string design_file;    // optional pre-built design (JSON text path)

    size_t trials = 100;
    uint64_t seed = 0;
};

struct TrialRecord {
    uint64_t trial = 0;
    uint64_t seed = 0;    // derived substream seed, reproducible in isolation
    int injected = 0;     // error weight / deletions / attempt index
    int injected2 = 0;    // insertions (operator channel)
    bool success = false;
    size_t list_size = 0;
    int list_dim = -1;
    double wall_ms = 0;   // in-memory and stderr only, never serialized
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<TrialRecord> records;
    size_t successes = 0;
    size_t max_list_size = 0;
    int max_list_dim = -1;
    double verified_a = -1;  // design-backed runs
    double total_ms = 0;

    double success_rate() const {
        return records.empty() ? 0.0 : static_cast<double>(successes) / records.size();
    }
    /// Versioned trial table; deterministic bytes (no timing columns).
    std::string csv() const;
    /// Aggregates mirroring the CSV.
    std::string json_summary() const;
};

/// Executes the configured trials on a worker pool (LDLAB_WORKERS, default 1)
/// and merges records in trial order, so scheduling never changes the output.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// One aggregated result per error weight in [lo, hi].
std::vector<ExperimentResult> radius_sweep(const ExperimentConfig& config, int lo, int hi);

/// All (mu, rho) pairs inside rho + s*mu < s(n-k+1), one result each.
std::vector<ExperimentResult> kk_sweep(const ExperimentConfig& config);

/// Deterministic code + verified design from a config (shared by the
/// experiment kinds and the acceptance suite). The design is sampled from a
/// reserved substream of the master seed and verified exhaustively.
struct GabSetup {
    SubcodeSpec spec;
    VerifyReport report;
};
GabSetup gab_setup(const ExperimentConfig& config);

}  // namespace ldlab

#endif

// Command-line front end: field towers, subspace designs, and the three
// code families with their channel simulators. Every randomized command takes
// --seed; identical invocations produce identical bytes.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldlab/errors.hpp"
#include "ldlab/harness.hpp"

using namespace ldlab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot write " + path);
    out << text;
}

void emit(const ExperimentResult& res, const std::string& csv_path,
          const std::string& json_path) {
    if (!csv_path.empty()) spill(csv_path, res.csv());
    if (!json_path.empty()) spill(json_path, res.json_summary());
    std::cout << res.json_summary() << "\n";
    std::cerr << "[timing] " << kind_name(res.config.kind) << " total " << res.total_ms
              << " ms\n";
}

int check_rate(const ExperimentResult& res, double min_rate) {
    return res.success_rate() >= min_rate ? 0 : 1;
}

nlohmann::json matrix_json(const FhMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
    return rows;
}

FhMatrix matrix_from_json(const Gf& f, const nlohmann::json& rows) {
    std::vector<FhVec> data;
    for (const auto& r : rows) data.push_back(r.get<FhVec>());
    return FhMatrix::from_rows(f, data);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"list-decodable rank-metric, subspace, and folded RS code lab"};
    app.require_subcommand(1);
    // --h is a code parameter everywhere, so help lives on --help only
    app.set_help_flag("--help", "print help and exit");
    auto sub = [](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* cmd = parent->add_subcommand(name, desc);
        cmd->set_help_flag("--help", "print help and exit");
        return cmd;
    };

    // --- tower ---------------------------------------------------------------
    auto* tower_cmd = sub(&app, "tower", "field tower utilities");
    tower_cmd->require_subcommand(1);
    auto* tower_build = sub(tower_cmd, "build", "build and print a tower");
    uint32_t tb_h = 2;
    std::vector<int> tb_degrees{1, 4, 8};
    std::string tb_out;
    tower_build->add_option("--h", tb_h, "base field size (prime power)");
    tower_build->add_option("--degrees", tb_degrees, "absolute degrees, e.g. 1 4 8");
    tower_build->add_option("--out", tb_out, "write JSON here");
    tower_build->callback([&] {
        auto t = build_tower(tb_h, tb_degrees);
        std::string text = t->to_json();
        if (!tb_out.empty()) spill(tb_out, text);
        std::cout << text << "\n";
    });

    // --- design ---------------------------------------------------------------
    auto* design_cmd = sub(&app, "design", "subspace design construction/verification");
    design_cmd->require_subcommand(1);

    auto* design_make = sub(design_cmd, "make", "construct a design family");
    std::string dm_kind = "random", dm_out;
    uint32_t dm_h = 2;
    int dm_tau = 2, dm_m = 3, dm_s = 1, dm_codim = 1;
    double dm_eps = 0.5;
    size_t dm_members = 0, dm_pool = 8;
    uint64_t dm_seed = 0;
    design_make->add_option("--kind", dm_kind, "random|window|combined|search");
    design_make->add_option("--h", dm_h);
    design_make->add_option("--tau", dm_tau, "extension degree of F_Q over F_h");
    design_make->add_option("--m", dm_m, "block width");
    design_make->add_option("--s", dm_s, "design input dimension");
    design_make->add_option("--epsilon", dm_eps);
    design_make->add_option("--members", dm_members, "family size (0 = defaults)");
    design_make->add_option("--codim", dm_codim, "codimension (search kind)");
    design_make->add_option("--pool", dm_pool, "candidate pool (search kind)");
    design_make->add_option("--seed", dm_seed);
    design_make->add_option("--out", dm_out, "write JSON here");
    design_make->callback([&] {
        auto tower = build_tower(dm_h, {1, dm_tau});
        Rng rng(dm_seed);
        DesignFamily fam = [&] {
            if (dm_kind == "random")
                return random_design(tower, 1, dm_m, dm_s, dm_eps,
                                     dm_members ? dm_members : 4, rng);
            if (dm_kind == "window") return window_design(tower, 1, dm_m, dm_s, dm_eps, dm_members);
            if (dm_kind == "combined") {
                DesignFamily win = window_design(tower, 1, dm_m, dm_s, dm_eps, dm_members);
                return combined_design(win, dl_variety(tower, 1, dm_m, dm_s));
            }
            if (dm_kind == "search")
                return search_design(tower, 1, dm_m, dm_s, dm_codim,
                                     dm_members ? dm_members : 3, dm_pool, rng);
            throw ParameterError("unknown design kind " + dm_kind);
        }();
        std::string text = fam.to_json();
        if (!dm_out.empty()) spill(dm_out, text);
        std::cout << text << "\n";
    });

    auto* design_verify = sub(design_cmd, "verify", "verify a design family");
    std::string dv_in, dv_csv, dv_mode = "exhaustive";
    int dv_s = 1;
    uint64_t dv_samples = 1000, dv_limit = 1000000, dv_seed = 0;
    double dv_claimed = -1;
    design_verify->add_option("--in", dv_in, "design JSON")->required();
    design_verify->add_option("--s", dv_s);
    design_verify->add_option("--mode", dv_mode, "exhaustive|sample");
    design_verify->add_option("--samples", dv_samples);
    design_verify->add_option("--limit", dv_limit, "exhaustive enumeration cap");
    design_verify->add_option("--seed", dv_seed);
    design_verify->add_option("--claimed-a", dv_claimed, "override the stored bound");
    design_verify->add_option("--csv", dv_csv, "per-witness report");
    design_verify->callback([&] {
        DesignFamily fam = DesignFamily::from_json(slurp(dv_in));
        if (dv_claimed >= 0) fam.claimed_a = dv_claimed;
        VerifyMode mode;
        mode.exhaustive = dv_mode == "exhaustive";
        mode.samples = dv_samples;
        mode.limit = dv_limit;
        Rng rng(dv_seed);
        std::ostringstream csv;
        VerifyReport rep = verify_design(fam, dv_s, mode, &rng, dv_csv.empty() ? nullptr : &csv);
        if (!dv_csv.empty()) spill(dv_csv, csv.str());
        nlohmann::json j;
        j["inspected"] = rep.inspected;
        j["max_sum_dim_h"] = rep.max_sum_dim_h;
        if (rep.level_dims_valid) j["max_sum_dim_level"] = rep.max_sum_dim_level;
        j["claimed_a"] = rep.claimed_a;
        j["pass"] = rep.pass;
        nlohmann::json witness = nlohmann::json::array();
        for (const auto& row : rep.worst_witness) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& e : row) r.push_back(e.c);
            witness.push_back(r);
        }
        j["worst_witness"] = witness;
        std::cout << j.dump(2) << "\n";
        if (!rep.pass) throw CLI::RuntimeError(1);
    });

    // --- gabidulin -------------------------------------------------------------
    auto* gab_cmd = sub(&app, "gabidulin", "rank-metric codes");
    gab_cmd->require_subcommand(1);
    uint32_t g_h = 2;
    int g_n = 6, g_m = 2, g_k = 3, g_s = 2, g_errors = 2, g_lo = 0, g_hi = 3;
    double g_eps = 0.5, g_min_rate = -1;
    size_t g_trials = 100;
    uint64_t g_seed = 0;
    std::string g_design, g_csv, g_json, g_in, g_decoder = "list";
    auto add_gab_common = [&](CLI::App* cmd) {
        cmd->add_option("--h", g_h);
        cmd->add_option("--n", g_n);
        cmd->add_option("--m", g_m);
        cmd->add_option("--k", g_k);
        cmd->add_option("--s", g_s);
        cmd->add_option("--epsilon", g_eps);
        cmd->add_option("--seed", g_seed);
        cmd->add_option("--design-file", g_design);
    };

    auto* gab_encode_cmd = sub(gab_cmd, "encode", "encode a message file");
    add_gab_common(gab_encode_cmd);
    gab_encode_cmd->add_option("--in", g_in, "message JSON")->required();
    gab_encode_cmd->callback([&] {
        ExperimentConfig c;
        c.h = g_h; c.n = g_n; c.m = g_m; c.k = g_k; c.s = g_s;
        c.epsilon = g_eps; c.seed = g_seed; c.design_file = g_design;
        auto msg = nlohmann::json::parse(slurp(g_in));
        RankCodeword cw = [&] {
            if (msg.contains("blocks")) {
                GabSetup setup = gab_setup(c);
                std::vector<FhVec> blocks;
                for (const auto& b : msg["blocks"]) blocks.push_back(b.get<FhVec>());
                return subcode_encode(setup.spec, blocks);
            }
            GabidulinCode code = make_gabidulin(g_h, g_n, g_m, g_k);
            std::vector<Felem> coeffs;
            for (const auto& cc : msg.at("coeffs"))
                coeffs.push_back(code.tower->from_coords(code.message_level(), cc.get<FhVec>()));
            return gab_encode(code, gab_message(code, std::move(coeffs)));
        }();
        nlohmann::json out;
        out["matrix"] = matrix_json(cw);
        std::cout << out.dump(2) << "\n";
    });

    auto* gab_decode_cmd = sub(gab_cmd, "decode", "list-decode a received matrix");
    add_gab_common(gab_decode_cmd);
    gab_decode_cmd->add_option("--received", g_in, "matrix JSON")->required();
    gab_decode_cmd->add_option("--decoder", g_decoder, "list|unique");
    gab_decode_cmd->callback([&] {
        ExperimentConfig c;
        c.h = g_h; c.n = g_n; c.m = g_m; c.k = g_k; c.s = g_s;
        c.epsilon = g_eps; c.seed = g_seed; c.design_file = g_design;
        auto in = nlohmann::json::parse(slurp(g_in));
        nlohmann::json out;
        if (g_decoder == "unique") {
            GabidulinCode code = make_gabidulin(g_h, g_n, g_m, g_k);
            FhMatrix y = matrix_from_json(code.tower->base(), in.at("matrix"));
            try {
                LinearizedPoly f = gab_unique_decode(code, y);
                nlohmann::json coeffs = nlohmann::json::array();
                for (const auto& cc : f.coeffs()) coeffs.push_back(cc.c);
                out["message"] = coeffs;
            } catch (const DecodeFailure& e) {
                out["failure"] = e.what();
            }
        } else {
            GabSetup setup = gab_setup(c);
            FhMatrix y = matrix_from_json(setup.spec.code.tower->base(), in.at("matrix"));
            ListDecodeResult res = subcode_list_decode(setup.spec, y, g_s);
            out["pruned_dim"] = res.pruned_dim;
            out["radius"] = res.radius;
            nlohmann::json list = nlohmann::json::array();
            for (const auto& f : res.list) {
                nlohmann::json coeffs = nlohmann::json::array();
                for (const auto& cc : f.coeffs()) coeffs.push_back(cc.c);
                list.push_back(coeffs);
            }
            out["list"] = list;
        }
        std::cout << out.dump(2) << "\n";
    });

    auto* gab_sim = sub(gab_cmd, "simulate", "seeded Monte Carlo trials");
    add_gab_common(gab_sim);
    gab_sim->add_option("--errors", g_errors, "injected rank errors");
    gab_sim->add_option("--trials", g_trials);
    gab_sim->add_option("--decoder", g_decoder, "list|unique");
    gab_sim->add_option("--csv", g_csv);
    gab_sim->add_option("--json", g_json);
    gab_sim->add_option("--min-success-rate", g_min_rate);
    gab_sim->callback([&] {
        ExperimentConfig c;
        c.kind = g_decoder == "unique" ? ExperimentKind::GabidulinUnique
                                       : ExperimentKind::Gabidulin;
        c.h = g_h; c.n = g_n; c.m = g_m; c.k = g_k; c.s = g_s;
        c.epsilon = g_eps; c.errors = g_errors; c.trials = g_trials; c.seed = g_seed;
        c.design_file = g_design;
        ExperimentResult res = run_experiment(c);
        emit(res, g_csv, g_json);
        if (g_min_rate >= 0 && check_rate(res, g_min_rate)) throw CLI::RuntimeError(1);
    });

    auto* gab_sweep = sub(gab_cmd, "sweep", "success rate vs error weight");
    add_gab_common(gab_sweep);
    gab_sweep->add_option("--errors-lo", g_lo);
    gab_sweep->add_option("--errors-hi", g_hi);
    gab_sweep->add_option("--trials", g_trials);
    gab_sweep->add_option("--decoder", g_decoder, "list|unique");
    gab_sweep->add_option("--csv", g_csv);
    gab_sweep->callback([&] {
        ExperimentConfig c;
        c.kind = g_decoder == "unique" ? ExperimentKind::GabidulinUnique
                                       : ExperimentKind::Gabidulin;
        c.h = g_h; c.n = g_n; c.m = g_m; c.k = g_k; c.s = g_s;
        c.epsilon = g_eps; c.trials = g_trials; c.seed = g_seed; c.design_file = g_design;
        auto rows = radius_sweep(c, g_lo, g_hi);
        std::ostringstream table;
        table << "# ldlab sweep v1 kind=" << kind_name(c.kind) << "\n";
        table << "errors,trials,successes,success_rate,max_list_size,max_list_dim\n";
        for (const auto& r : rows)
            table << r.config.errors << "," << r.records.size() << "," << r.successes << ","
                  << r.success_rate() << "," << r.max_list_size << "," << r.max_list_dim << "\n";
        if (!g_csv.empty()) spill(g_csv, table.str());
        std::cout << table.str();
    });

    // --- lofrs -----------------------------------------------------------------
    auto* lofrs_cmd = sub(&app, "lofrs", "low-order folded Reed-Solomon");
    lofrs_cmd->require_subcommand(1);
    uint32_t l_q = 16;
    uint64_t l_ell = 3;
    int l_k = 4, l_s = 2, l_agreement = -1, l_errors = 0, l_attempts = 512;
    size_t l_trials = 50;
    uint64_t l_seed = 0;
    double l_min_rate = -1;
    std::string l_csv, l_json, l_mode = "random", l_out;
    bool l_stats = false;

    auto* lofrs_sim = sub(lofrs_cmd, "simulate", "agreement trials");
    lofrs_sim->add_option("--q", l_q);
    lofrs_sim->add_option("--ell", l_ell);
    lofrs_sim->add_option("--k", l_k);
    lofrs_sim->add_option("--s", l_s);
    lofrs_sim->add_option("--agreement", l_agreement, "fully correct columns");
    lofrs_sim->add_option("--errors", l_errors, "corrupted columns (when no agreement given)");
    lofrs_sim->add_option("--trials", l_trials);
    lofrs_sim->add_option("--seed", l_seed);
    lofrs_sim->add_option("--csv", l_csv);
    lofrs_sim->add_option("--json", l_json);
    lofrs_sim->add_option("--min-success-rate", l_min_rate);
    lofrs_sim->callback([&] {
        ExperimentConfig c;
        c.kind = ExperimentKind::Lofrs;
        c.q = l_q; c.ell = l_ell; c.k = l_k; c.s = l_s;
        c.agreement = l_agreement; c.errors = l_errors;
        c.trials = l_trials; c.seed = l_seed;
        ExperimentResult res = run_experiment(c);
        emit(res, l_csv, l_json);
        if (l_min_rate >= 0 && check_rate(res, l_min_rate)) throw CLI::RuntimeError(1);
    });

    auto* lofrs_fm = sub(lofrs_cmd, "find-modulus", "randomized irreducible search");
    lofrs_fm->add_option("--q", l_q);
    lofrs_fm->add_option("--ell", l_ell);
    lofrs_fm->add_option("--k", l_k);
    lofrs_fm->add_option("--seed", l_seed);
    lofrs_fm->add_option("--attempts", l_attempts);
    lofrs_fm->add_flag("--stats", l_stats, "run all attempts and report the frequency");
    lofrs_fm->add_option("--out", l_out, "write modulus JSON here");
    lofrs_fm->callback([&] {
        Rng rng(l_seed);
        if (l_stats) {
            ModulusStats stats = modulus_search_stats(l_q, l_ell, l_k, rng, l_attempts);
            nlohmann::json j;
            j["a"] = stats.a;
            j["attempts"] = stats.attempts;
            j["successes"] = stats.successes;
            j["frequency"] = static_cast<double>(stats.successes) / stats.attempts;
            if (stats.first) j["first"] = nlohmann::json::parse(stats.first->to_json());
            std::cout << j.dump(2) << "\n";
            if (!l_out.empty() && stats.first) spill(l_out, stats.first->to_json());
        } else {
            IrreducibleModulus mod = find_modulus(l_q, l_ell, l_k, rng, l_attempts);
            if (!l_out.empty()) spill(l_out, mod.to_json());
            std::cout << mod.to_json() << "\n";
        }
    });

    auto* lofrs_demo = sub(lofrs_cmd, "rs-demo", "Reed-Solomon reduction demo");
    lofrs_demo->add_option("--q", l_q);
    lofrs_demo->add_option("--ell", l_ell);
    lofrs_demo->add_option("--k", l_k);
    lofrs_demo->add_option("--s", l_s);
    lofrs_demo->add_option("--errors", l_errors);
    lofrs_demo->add_option("--mode", l_mode, "random|shift");
    lofrs_demo->add_option("--trials", l_trials);
    lofrs_demo->add_option("--seed", l_seed);
    lofrs_demo->callback([&] {
        LofrsCode code = make_lofrs(l_q, l_ell, l_k);
        Rng mrng(l_seed + 1);
        IrreducibleModulus mod = find_modulus(l_q, l_ell, l_k, mrng);
        PrecodeSet ps = lofrs_precode(code, mod.a, l_s, 0.5);
        nlohmann::json rows = nlohmann::json::array();
        for (size_t i = 0; i < l_trials; ++i) {
            Rng rng = Rng::substream(l_seed, i);
            Poly low = random_qpoly(code, std::max(1, l_k / static_cast<int>(l_ell)), rng);
            RsDemoReport rep = rs_reduce_demo(
                code, low, l_s, l_errors,
                l_mode == "shift" ? DemoCorruption::ConstantShift : DemoCorruption::Random, rng,
                &mod, &ps);
            nlohmann::json j;
            j["trial"] = i;
            j["agreement"] = rep.agreement;
            j["recovered"] = rep.recovered;
            j["degenerate_present"] = rep.degenerate_present;
            j["degenerate_message_dim"] = rep.degenerate_message_dim;
            j["precoded_list_size"] = rep.precoded_list_size;
            j["precode_bound"] = rep.precode_bound;
            rows.push_back(j);
        }
        std::cout << rows.dump(2) << "\n";
    });

    // --- kk ---------------------------------------------------------------------
    auto* kk_cmd = sub(&app, "kk", "subspace codes over the operator channel");
    kk_cmd->require_subcommand(1);
    int kk_mu = 0, kk_rho = 0;
    auto* kk_sim = sub(kk_cmd, "simulate", "seeded operator-channel trials");
    add_gab_common(kk_sim);
    kk_sim->add_option("--mu", kk_mu, "deletions");
    kk_sim->add_option("--rho", kk_rho, "insertions");
    kk_sim->add_option("--trials", g_trials);
    kk_sim->add_option("--csv", g_csv);
    kk_sim->add_option("--json", g_json);
    kk_sim->add_option("--min-success-rate", g_min_rate);
    kk_sim->callback([&] {
        ExperimentConfig c;
        c.kind = ExperimentKind::Kk;
        c.h = g_h; c.n = g_n; c.m = g_m; c.k = g_k; c.s = g_s;
        c.epsilon = g_eps; c.mu = kk_mu; c.rho = kk_rho;
        c.trials = g_trials; c.seed = g_seed; c.design_file = g_design;
        ExperimentResult res = run_experiment(c);
        emit(res, g_csv, g_json);
        if (g_min_rate >= 0 && check_rate(res, g_min_rate)) throw CLI::RuntimeError(1);
    });

    auto* kk_sweep_cmd = sub(kk_cmd, "sweep", "the whole admissible (mu, rho) grid");
    add_gab_common(kk_sweep_cmd);
    kk_sweep_cmd->add_option("--trials", g_trials);
    kk_sweep_cmd->add_option("--csv", g_csv);
    kk_sweep_cmd->add_option("--min-success-rate", g_min_rate);
    kk_sweep_cmd->callback([&] {
        ExperimentConfig c;
        c.kind = ExperimentKind::Kk;
        c.h = g_h; c.n = g_n; c.m = g_m; c.k = g_k; c.s = g_s;
        c.epsilon = g_eps; c.trials = g_trials; c.seed = g_seed; c.design_file = g_design;
        auto rows = kk_sweep(c);
        std::ostringstream table;
        table << "# ldlab kk-sweep v1\n";
        table << "mu,rho,trials,successes,success_rate,max_list_size,max_list_dim\n";
        bool all_ok = true;
        for (const auto& r : rows) {
            table << r.config.mu << "," << r.config.rho << "," << r.records.size() << ","
                  << r.successes << "," << r.success_rate() << "," << r.max_list_size << ","
                  << r.max_list_dim << "\n";
            all_ok = all_ok && (g_min_rate < 0 || r.success_rate() >= g_min_rate);
        }
        if (!g_csv.empty()) spill(g_csv, table.str());
        std::cout << table.str();
        if (!all_ok) throw CLI::RuntimeError(1);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {  // includes RuntimeError exit codes
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

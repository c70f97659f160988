#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvrp/instance.hpp"
#include "cvrp/io.hpp"
#include "cvrp/oracle.hpp"
#include "cvrp/rng.hpp"
#include "cvrp/solver_comb.hpp"
#include "cvrp/solver_lp.hpp"
#include "cvrp/split.hpp"

using namespace cvrp;
using nlohmann::json;

namespace {

// Exit codes: 0 ok, 2 validation failure, 3 certificate/check failure,
// 4 I/O or usage error.
constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kCertificate = 3;
constexpr int kIo = 4;

struct CliError : std::runtime_error {
    CliError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
    int exit_code;
};

Instance load_checked(const std::string& path, bool rounded) {
    Instance inst;
    try {
        inst = load_instance(path, rounded);
    } catch (const std::exception& e) {
        throw CliError(kIo, std::string("cannot load instance: ") + e.what());
    }
    const auto report = validate_instance(inst);
    for (const auto& v : report.violations)
        if (!v.hard) std::cerr << "warning: " << v.what << "\n";
    if (!report.ok()) throw CliError(kValidation, "invalid instance: " + report.first_error());
    return inst;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw CliError(kIo, "cannot write " + path);
    out << content;
}

TspResult full_tour(const Instance& inst, TspAlgo algo) {
    std::vector<int> nodes{0};
    for (int v = 1; v <= inst.num_clients(); ++v) nodes.push_back(v);
    return solve_tsp(algo, nodes, [&](int u, int v) { return inst.c(u, v); });
}

json bounds_json(const RadialBounds& rb) {
    return {{"D", rb.d_total},
            {"D_small", rb.d_small},
            {"D_big", rb.d_big},
            {"D_prime_big", rb.d_prime_big}};
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    GeneratorConfig cfg;
    std::string dist = "uniform";
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    GeneratorConfig cfg = args.cfg;
    if (args.dist == "uniform")
        cfg.dist = DemandDist::uniform;
    else if (args.dist == "small-heavy")
        cfg.dist = DemandDist::small_heavy;
    else
        throw CliError(kIo, "unknown demand distribution: " + args.dist);
    const auto inst = generate_instance(cfg);
    const auto text = format_instance(inst);
    if (args.out.empty())
        std::cout << text;
    else
        write_file(args.out, text);
    return kOk;
}

// ------------------------------------------------------------------- solve

struct SolveArgs {
    std::string instance_path;
    std::string algorithm = "comb";
    std::string tsp = "christofides";
    std::string delta = "1/3";
    std::string mode = "derandomized";
    std::uint64_t seed = 1;
    std::string out;
    bool rounded = false;
    bool with_oracle = false;
};

int cmd_solve(const SolveArgs& args) {
    const auto inst = load_checked(args.instance_path, args.rounded);
    const auto tsp_alg = tsp_algo_from_name(args.tsp);

    Solution sol;
    json report;
    report["instance"] = inst.name;
    report["n"] = inst.num_clients();
    report["algorithm"] = args.algorithm;
    json params;
    params["tsp"] = args.tsp;
    params["seed"] = args.seed;
    json bounds;
    json certificate;
    bool cert_ok = true;
    Delta delta(1, 3);

    if (args.algorithm == "classic") {
        delta = Delta(0, 1);
        const auto tsp = full_tour(inst, tsp_alg);
        sol = dp_split(tsp, inst);
        const auto rb = radial_bounds(inst, delta);
        bounds = bounds_json(rb);
        certificate["split_bound"] = split_bound(tsp.cost, rb);
        const double limit = split_bound(tsp.cost, rb);
        cert_ok = sol.total_cost <= limit + 1e-6 * std::max(1.0, limit);
        certificate["ok"] = cert_ok;
    } else if (args.algorithm == "comb") {
        delta = kCombDelta;
        const auto [solution, cert] = solve_combinatorial(inst, tsp_alg);
        sol = solution;
        bounds = bounds_json(cert.bounds);
        bounds["weight_M"] = cert.cost_m;
        certificate = {{"cost_T", cert.cost_t},
                       {"cost_F", cert.cost_f},
                       {"tsp_small_cost", cert.tsp_small_cost},
                       {"tsp_full_cost", cert.tsp_full_cost},
                       {"ok", cert.ledger_ok}};
        if (!cert.ledger_ok) certificate["failure"] = cert.ledger_failure;
        cert_ok = cert.ledger_ok;
    } else if (args.algorithm == "lp") {
        delta = Delta::parse(args.delta);
        const LpMode mode = [&] {
            if (args.mode == "sampled") return LpMode::sampled;
            if (args.mode == "derandomized") return LpMode::derandomized;
            throw CliError(kIo, "unknown mode: " + args.mode);
        }();
        const auto [solution, cert] = solve_lp_based(inst, delta, tsp_alg, mode, args.seed);
        sol = solution;
        bounds = bounds_json(cert.bounds);
        bounds["lp_objective"] = cert.lp_objective;
        certificate = {{"num_columns", cert.num_columns},
                       {"chosen_raw_cost", cert.chosen_raw_cost},
                       {"tsp_full_cost", cert.tsp_full_cost}};
        params["gamma"] = cert.gamma;
        params["mode"] = args.mode;
        cert_ok = true;
        if (mode == LpMode::derandomized) {
            certificate["phi_initial"] = cert.phi_initial;
            certificate["phi_final"] = cert.phi_final;
            cert_ok = cert.phi_monotone &&
                      sol.total_cost <= cert.phi_initial + 1e-6 * std::max(1.0, cert.phi_initial);
        }
        certificate["ok"] = cert_ok;
    } else {
        throw CliError(kIo, "unknown algorithm: " + args.algorithm);
    }
    params["delta"] = delta.str();
    report["parameters"] = params;
    report["n_big"] = classify_clients(inst, delta).big.size();

    const auto validation = validate_solution(sol, inst);
    if (!validation.ok())
        throw CliError(kValidation, "solution failed validation: " + validation.first_error());

    report["cost"] = sol.total_cost;
    const double d_total = bounds["D"].get<double>();
    json ratios;
    if (d_total > 0.0) ratios["vs_D"] = sol.total_cost / d_total;
    std::optional<double> oracle_opt;
    if (args.with_oracle) {
        if (inst.num_clients() > 14)
            throw CliError(kIo, "--oracle requires at most 14 clients");
        oracle_opt = exact_cvrp(inst).opt_cost;
        bounds["oracle_opt"] = *oracle_opt;
        if (*oracle_opt > 0.0) ratios["vs_opt"] = sol.total_cost / *oracle_opt;
    }
    report["bounds"] = bounds;
    report["ratios"] = ratios;
    report["certificate"] = certificate;

    if (!args.out.empty()) {
        SolutionMeta meta;
        meta.instance = inst.name;
        meta.algorithm = args.algorithm;
        meta.seed = args.seed;
        meta.d_bound = d_total;
        if (bounds.contains("lp_objective")) meta.lp_opt = bounds["lp_objective"].get<double>();
        meta.oracle_opt = oracle_opt;
        write_file(args.out, write_solution(sol, meta));
    }
    std::cout << report.dump(2) << "\n";
    return cert_ok ? kOk : kCertificate;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const std::string& instance_path, const std::string& solution_path, bool rounded) {
    const auto inst = load_checked(instance_path, rounded);
    std::ifstream in(solution_path);
    if (!in) throw CliError(kIo, "cannot open " + solution_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    ReadSolution rs;
    try {
        rs = read_solution(buf.str(), inst);
    } catch (const std::exception& e) {
        throw CliError(kValidation, e.what());
    }
    const auto report = validate_solution(rs.solution, inst);
    if (!report.ok()) throw CliError(kValidation, report.first_error());
    std::cout << "ok: " << rs.solution.tours.size() << " tours, cost " << rs.solution.total_cost
              << "\n";
    return kOk;
}

// -------------------------------------------------------------- experiment

struct Check {
    std::string name;
    double measured;
    double target;
    double tolerance;
    bool pass;
};

struct CsvRow {
    std::string instance;
    int n = 0;
    int n_big = 0;
    std::string algorithm;
    std::string delta;
    std::uint64_t seed = 0;
    double cost = 0.0;
    double d_total = 0.0;
    std::optional<double> lp_obj;
    std::optional<double> opt;
    bool pass = true;
};

struct ExperimentReport {
    std::vector<Check> checks;
    std::vector<CsvRow> rows;

    void check_le(const std::string& name, double measured, double bound, double tol) {
        checks.push_back({name, measured, bound, tol, measured <= bound + tol});
    }
    void check_close(const std::string& name, double measured, double target, double tol) {
        checks.push_back({name, measured, target, tol, std::abs(measured - target) <= tol});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

std::string csv_text(const std::vector<CsvRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << "instance,n,n_big,algorithm,delta,seed,cost,D,lp_obj,opt,ratio_vs_D,ratio_vs_opt,pass\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.n << ',' << r.n_big << ',' << r.algorithm << ',' << r.delta
            << ',' << r.seed << ',' << r.cost << ',' << r.d_total << ',';
        if (r.lp_obj) out << *r.lp_obj;
        out << ',';
        if (r.opt) out << *r.opt;
        out << ',';
        if (r.d_total > 0) out << r.cost / r.d_total;
        out << ',';
        if (r.opt && *r.opt > 0) out << r.cost / *r.opt;
        out << ',' << (r.pass ? 1 : 0) << "\n";
    }
    return out.str();
}

json checks_json(const ExperimentReport& rep) {
    json arr = json::array();
    for (const auto& c : rep.checks)
        arr.push_back({{"name", c.name},
                       {"measured", c.measured},
                       {"target", c.target},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    return arr;
}

// The fixed statistics instance: 10 clients, mixed demands, both small
// and big clients at delta 1/4 and 1/3.
Instance claims_instance() {
    GeneratorConfig cfg;
    cfg.n = 10;
    cfg.capacity = 12;
    cfg.seed = 424242;
    cfg.box = 100;
    return generate_instance(cfg);
}

TspResult identity_order_tour(const Instance& inst) {
    TspResult tsp;
    tsp.order.push_back(0);
    for (int v = 1; v <= inst.num_clients(); ++v) tsp.order.push_back(v);
    for (std::size_t i = 0; i < tsp.order.size(); ++i)
        tsp.cost += inst.c(tsp.order[i], tsp.order[(i + 1) % tsp.order.size()]);
    if (tsp.order.size() <= 1) tsp.cost = 0.0;
    return tsp;
}

void run_claims_suite(ExperimentReport& rep, int trials, std::uint64_t base_seed) {
    const auto inst = claims_instance();
    const auto tsp = identity_order_tour(inst);
    for (const auto delta : {Delta(1, 4), Delta(1, 3)}) {
        std::vector<int> bad_count(inst.num_nodes(), 0);
        std::vector<int> four_count(inst.num_nodes(), 0);
        for (int t = 0; t < trials; ++t) {
            const auto out = randomized_split(tsp, inst, delta, base_seed + t);
            for (int v : out.bad) ++bad_count[v];
            for (int v : out.four_copy) ++four_count[v];
        }
        const auto cls = classify_clients(inst, delta);
        const double om = 1.0 - delta.value();
        for (int v = 1; v <= inst.num_clients(); ++v) {
            const double dv = static_cast<double>(inst.demand[v]) / inst.capacity;
            const double p_bad = std::min(1.0, dv / om);
            const double se = std::sqrt(std::max(p_bad * (1.0 - p_bad), 0.0) / trials);
            rep.check_close("claim1 P[bad] client " + std::to_string(v) + " delta " + delta.str(),
                            bad_count[v] / double(trials), p_bad, 3 * se + 1e-12);
            if (cls.is_big[v]) {
                const double p4 = (dv - delta.value()) / om;
                const double se4 = std::sqrt(std::max(p4 * (1.0 - p4), 0.0) / trials);
                rep.check_close(
                    "claim2 P[four] client " + std::to_string(v) + " delta " + delta.str(),
                    four_count[v] / double(trials), p4, 3 * se4 + 1e-12);
            }
        }
    }
}

void run_lemma3_suite(ExperimentReport& rep, int trials, std::uint64_t base_seed) {
    const auto inst = claims_instance();
    const auto tsp = identity_order_tour(inst);
    for (const auto delta : {Delta(1, 4), Delta(1, 3)}) {
        const auto rb = radial_bounds(inst, delta);
        const auto dp = dp_split(tsp, inst);
        double sum = 0.0, sumsq = 0.0;
        bool dominated = true;
        for (int t = 0; t < trials; ++t) {
            const double c =
                randomized_split(tsp, inst, delta, base_seed + t).tours.total_cost;
            sum += c;
            sumsq += c * c;
            if (dp.total_cost > c + 1e-9) dominated = false;
        }
        const double mean = sum / trials;
        const double var = std::max(0.0, sumsq / trials - mean * mean);
        const double se = std::sqrt(var / trials);
        const double bound = split_bound(tsp.cost, rb);
        rep.check_le("lemma3 mean split cost delta " + delta.str(), mean, bound, 3 * se);
        rep.check_le("lemma3 dp dominance delta " + delta.str(), dominated ? 0.0 : 1.0, 0.0, 0.0);

        CsvRow row;
        row.instance = inst.name;
        row.n = inst.num_clients();
        row.n_big = static_cast<int>(classify_clients(inst, delta).big.size());
        row.algorithm = "dp-split";
        row.delta = delta.str();
        row.seed = base_seed;
        row.cost = dp.total_cost;
        row.d_total = rb.d_total;
        row.pass = dominated && mean <= bound + 3 * se;
        rep.rows.push_back(row);
    }
}

void run_ratios_suite(ExperimentReport& rep, int trials, std::uint64_t base_seed) {
    double max_comb_ratio = 0.0;
    double max_lp_ratio = 0.0;
    const double lp_factor = kGamma + 1.0 + 4.0 / 3.0;
    for (int t = 0; t < trials; ++t) {
        GeneratorConfig cfg;
        cfg.n = 1 + t % 10;
        cfg.capacity = 50;
        cfg.seed = base_seed + t;
        cfg.box = 100;
        cfg.dist = t % 2 ? DemandDist::small_heavy : DemandDist::uniform;
        const auto inst = generate_instance(cfg);
        const auto opt = exact_cvrp(inst).opt_cost;

        const auto [comb_sol, comb_cert] = solve_combinatorial(inst, TspAlgo::held_karp);
        const auto comb_rb = comb_cert.bounds;
        if (opt > 0) max_comb_ratio = std::max(max_comb_ratio, comb_sol.total_cost / opt);
        CsvRow comb_row{inst.name,
                        inst.num_clients(),
                        static_cast<int>(classify_clients(inst, kCombDelta).big.size()),
                        "comb",
                        kCombDelta.str(),
                        cfg.seed,
                        comb_sol.total_cost,
                        comb_rb.d_total,
                        std::nullopt,
                        opt,
                        comb_cert.ledger_ok && comb_sol.total_cost <= 2.75 * opt + 1e-9};
        rep.rows.push_back(comb_row);

        const Delta lp_delta(1, 4);
        const auto [lp_sol, lp_cert] =
            solve_lp_based(inst, lp_delta, TspAlgo::held_karp, LpMode::derandomized, cfg.seed);
        if (opt > 0) max_lp_ratio = std::max(max_lp_ratio, lp_sol.total_cost / opt);
        CsvRow lp_row{inst.name,
                      inst.num_clients(),
                      static_cast<int>(classify_clients(inst, lp_delta).big.size()),
                      "lp",
                      lp_delta.str(),
                      cfg.seed,
                      lp_sol.total_cost,
                      lp_cert.bounds.d_total,
                      lp_cert.lp_objective,
                      opt,
                      lp_sol.total_cost <= lp_factor * opt + 1e-9};
        rep.rows.push_back(lp_row);
    }
    rep.check_le("ratios max comb cost/opt (alpha=1)", max_comb_ratio, 2.75, 1e-9);
    rep.check_le("ratios max lp cost/opt (alpha=1, delta=1/4)", max_lp_ratio, lp_factor, 1e-9);
}

struct ExperimentArgs {
    std::string suite;
    int trials = 0;  // 0 = suite default
    std::uint64_t seed = 1;
    std::string csv_path;
    std::string json_path;
};

int cmd_experiment(const ExperimentArgs& args) {
    ExperimentReport rep;
    if (args.suite == "claims") {
        run_claims_suite(rep, args.trials > 0 ? args.trials : 100000, args.seed);
    } else if (args.suite == "lemma3") {
        run_lemma3_suite(rep, args.trials > 0 ? args.trials : 100000, args.seed);
    } else if (args.suite == "ratios") {
        run_ratios_suite(rep, args.trials > 0 ? args.trials : 100, args.seed);
    } else {
        throw CliError(kIo, "unknown suite: " + args.suite);
    }

    const std::string csv_path =
        args.csv_path.empty() ? "experiment_" + args.suite + ".csv" : args.csv_path;
    const std::string json_path =
        args.json_path.empty() ? "experiment_" + args.suite + ".json" : args.json_path;
    write_file(csv_path, csv_text(rep.rows));
    json j;
    j["suite"] = args.suite;
    j["seed"] = args.seed;
    j["checks"] = checks_json(rep);
    j["pass"] = rep.all_pass();
    write_file(json_path, j.dump(2) + "\n");

    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  measured=" << c.measured
                  << " target=" << c.target << " tol=" << c.tolerance << "\n";
    std::cout << (rep.all_pass() ? "all checks passed" : "some checks FAILED") << " ("
              << rep.checks.size() << " checks, reports: " << csv_path << ", " << json_path << ")\n";
    return rep.all_pass() ? kOk : kCertificate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximation algorithms for CVRP with unsplittable demands"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "generate a random CVRPLIB instance");
    generate->add_option("--n", gen.cfg.n, "number of clients")->capture_default_str();
    generate->add_option("--capacity", gen.cfg.capacity, "vehicle capacity Q")
        ->capture_default_str();
    generate->add_option("--seed", gen.cfg.seed, "rng seed")->capture_default_str();
    generate->add_option("--box", gen.cfg.box, "coordinate box size")->capture_default_str();
    generate->add_option("--dist", gen.dist, "demand distribution: uniform | small-heavy")
        ->capture_default_str();
    generate->add_option("--out", gen.out, "output path (default stdout)");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "solve an instance");
    solve_cmd->add_option("instance", solve.instance_path, "CVRPLIB instance path")->required();
    solve_cmd->add_option("--algorithm", solve.algorithm, "classic | comb | lp")
        ->capture_default_str();
    solve_cmd->add_option("--tsp", solve.tsp, "christofides | held-karp | double-tree")
        ->capture_default_str();
    solve_cmd->add_option("--delta", solve.delta, "delta for the lp solver, in [1/6, 1/2]")
        ->capture_default_str();
    solve_cmd->add_option("--mode", solve.mode, "lp solver mode: sampled | derandomized")
        ->capture_default_str();
    solve_cmd->add_option("--seed", solve.seed, "seed for sampled mode")->capture_default_str();
    solve_cmd->add_option("--out", solve.out, "write the solution JSON here");
    solve_cmd->add_flag("--rounded", solve.rounded, "nearest-integer euclidean costs");
    solve_cmd->add_flag("--oracle", solve.with_oracle, "also compute the exact optimum (n <= 14)");

    std::string verify_instance, verify_solution;
    bool verify_rounded = false;
    auto* verify = app.add_subcommand("verify", "validate a solution file against an instance");
    verify->add_option("instance", verify_instance, "CVRPLIB instance path")->required();
    verify->add_option("solution", verify_solution, "solution JSON path")->required();
    verify->add_flag("--rounded", verify_rounded, "nearest-integer euclidean costs");

    ExperimentArgs exp;
    auto* experiment = app.add_subcommand("experiment", "run a statistical check suite");
    experiment->add_option("--suite", exp.suite, "claims | lemma3 | ratios")->required();
    experiment->add_option("--trials", exp.trials, "trial count (0 = suite default)")
        ->capture_default_str();
    experiment->add_option("--seed", exp.seed, "base seed")->capture_default_str();
    experiment->add_option("--csv", exp.csv_path, "CSV output path");
    experiment->add_option("--json", exp.json_path, "JSON output path");

    try {
        app.parse(argc, argv);
        if (*generate) return cmd_generate(gen);
        if (*solve_cmd) {
            if (solve_cmd->count("--delta") && solve.algorithm != "lp")
                std::cerr << "warning: --delta only affects the lp solver (classic uses 0, comb "
                             "uses 1/3)\n";
            return cmd_solve(solve);
        }
        if (*verify) return cmd_verify(verify_instance, verify_solution, verify_rounded);
        if (*experiment) return cmd_experiment(exp);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kIo;
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCertificate;
    }
    return kIo;
}

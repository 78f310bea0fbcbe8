// Copyright 2026 The stilde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stilde/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "stilde/errors.h"

namespace stilde {

int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const ValidationError *>(&e)) {
        return kExitValidation;
    }
    if (dynamic_cast<const ScopeError *>(&e)) {
        return kExitScope;
    }
    if (dynamic_cast<const PropertyViolation *>(&e)) {
        return kExitProperty;
    }
    return 1;
}

ModelPtr build_config_model(const RunConfig &cfg) {
    auto lat = std::make_shared<const TorusLattice>(cfg.L);
    ModelPtr m;
    for (uint32_t d : cfg.groups) {
        ModelPtr layer = build_toric_code(lat, d, cfg.logical_phase);
        if (cfg.redundant_terms) {
            layer = add_redundant_plaquette_pairs(*layer);
        }
        m = m ? stack_models(*m, *layer) : layer;
    }
    if (cfg.ancillas) {
        m = add_trivial_ancillas(*m, cfg.ancillas);
    }
    return m;
}

AnnulusPair build_config_pair(const RunConfig &cfg, const StabilizerModel &model) {
    return make_annulus_pair(model.lattice, cfg.r_ann, cfg.t, cfg.separation);
}

namespace {

std::string fmt(double v) {
    std::stringstream s;
    s << v;
    return s.str();
}

std::string factors_str(const std::vector<int64_t> &f) {
    if (f.empty()) {
        return "trivial";
    }
    std::string out;
    for (size_t i = 0; i < f.size(); i++) {
        out += (i ? " x Z_" : "Z_") + std::to_string(f[i]);
    }
    return out;
}

struct Pipeline {
    ModelPtr model;
    StatePtr state;
    AnnulusPair lattice_pair;
    AnnulusPair pair;
    GeometryReport geometry;
};

/// Model, state and pair with the geometry gate applied.
Pipeline prepare(const RunConfig &cfg) {
    Pipeline p;
    p.model = build_config_model(cfg);
    p.state = make_state(p.model);
    p.lattice_pair = build_config_pair(cfg, *p.model);
    p.pair = p.model->lift(p.lattice_pair);
    p.geometry = validate_geometry(p.lattice_pair, 0, p.model->interaction_range);
    if (cfg.strict_geometry && !p.geometry.strict_ok()) {
        throw ValidationError("strict geometry requested but not met:\n" + p.geometry.str());
    }
    return p;
}

std::string geometry_status(const GeometryReport &g) {
    if (g.strict_ok()) {
        return "strict";
    }
    return g.desk_ok() ? "desk" : "uncertified";
}

Json pair_json(const AnnulusPair &p) {
    return Json{
        {"left_center", Json::array({p.left_spec.center.x, p.left_spec.center.y})},
        {"right_center", Json::array({p.right_spec.center.x, p.right_spec.center.y})},
        {"r_ann", p.left_spec.r_ann()},
        {"t", p.left_spec.t()},
        {"diamond_distance", p.diamond_distance()},
        {"cut_y2", p.cut_y2},
    };
}

WeylOp random_weyl_on(const std::vector<uint32_t> &sites, const SiteSystemPtr &sys, std::mt19937_64 &rng) {
    WeylOp op = WeylOp::identity(sys);
    for (uint32_t s : sites) {
        op.set_x(s, (int64_t)(rng() % sys->dim(s)));
        op.set_z(s, (int64_t)(rng() % sys->dim(s)));
    }
    return op;
}

}  // namespace

CommandResult cmd_smatrix(const RunConfig &cfg) {
    Pipeline p = prepare(cfg);
    LogicalAlgebra left = logical_quotient(*p.state, p.lattice_pair.left_spec);
    LogicalAlgebra right = logical_quotient(*p.state, p.lattice_pair.right_spec);
    STilde s = stilde_matrix(*p.state, left, right, p.pair);
    double t2 = cfg.stability_t2 ? *cfg.stability_t2 : cfg.t + 1;
    StabilityReport stab = check_stability(*p.state, p.lattice_pair.left_spec, cfg.t, t2);

    CommandResult res;
    res.report = report_header(cfg, "smatrix", geometry_status(p.geometry));
    res.report["config"] = cfg.to_json();
    res.report["model"] = Json{{"name", p.model->name}, {"sites", p.model->num_sites()}, {"terms", p.model->terms.size()},
                               {"interaction_range", p.model->interaction_range}};
    res.report["pair"] = pair_json(p.lattice_pair);
    res.report["geometry"] = geometry_to_json(p.geometry);
    res.report["left_algebra"] = algebra_to_json(left);
    res.report["right_algebra"] = algebra_to_json(right);
    res.report["stability"] = stability_to_json(stab);
    res.report["invariants_hold"] = s.invariants_hold();
    res.report["stilde"] = stilde_to_json(s);
    res.extra_files.emplace_back("stilde.csv", stilde_to_csv(s));
    if (!stab.isomorphism() || !s.invariants_hold()) {
        res.exit_code = kExitProperty;
    }
    res.summary = "S~ " + std::to_string(s.rows()) + "x" + std::to_string(s.cols()) + ", quotient " +
                  factors_str(left.orders) + ", stability " + (stab.isomorphism() ? "isomorphism" : "FAILED") +
                  ", geometry " + geometry_status(p.geometry);
    return res;
}

CommandResult cmd_reconstruct(const RunConfig &cfg, const std::vector<std::string> &inputs) {
    if (inputs.size() > 2) {
        throw ValidationError("reconstruct takes at most two S~ files");
    }
    std::vector<STilde> mats;
    std::vector<double> dists;
    if (inputs.empty()) {
        Pipeline p = prepare(cfg);
        LogicalAlgebra left = logical_quotient(*p.state, p.lattice_pair.left_spec);
        LogicalAlgebra right = logical_quotient(*p.state, p.lattice_pair.right_spec);
        mats.push_back(stilde_matrix(*p.state, left, right, p.pair));
        dists.push_back(p.lattice_pair.diamond_distance());
    }
    for (const auto &path : inputs) {
        Json j;
        try {
            j = Json::parse(read_text(path));
        } catch (const nlohmann::json::exception &e) {
            throw ValidationError(path + ": " + e.what());
        }
        mats.push_back(stilde_from_json(j));
        if (j.contains("pair") && j.at("pair").contains("diamond_distance")) {
            dists.push_back(j.at("pair").at("diamond_distance").get<double>());
        }
    }
    CommandResult res;
    res.report = report_header(cfg, "reconstruct", "n/a");
    Json groups = Json::array();
    std::vector<std::vector<int64_t>> factors;
    for (const auto &s : mats) {
        AbelianGroupStructure g = reconstruct_group(s);
        factors.push_back(g.invariant_factors);
        groups.push_back(Json{{"invariant_factors", g.invariant_factors}, {"order", s.rows()}, {"name", factors_str(g.invariant_factors)}});
    }
    res.report["groups"] = groups;
    res.summary = "G = " + factors_str(factors[0]);
    if (mats.size() == 2) {
        bool iso = factors[0] == factors[1];
        bool equiv = stilde_equivalent(mats[0], mats[1]);
        std::string verdict;
        if (iso) {
            verdict = "isomorphic";
        } else {
            verdict = "distinct; any connecting circuit depth >= dist(C_u,C_d)/10";
            if (!dists.empty()) {
                double dist = *std::min_element(dists.begin(), dists.end());
                verdict += " = " + fmt(dist / 10);
            }
        }
        res.report["isomorphic"] = iso;
        res.report["stilde_equivalent"] = equiv;
        res.report["verdict"] = verdict;
        res.summary += ", G' = " + factors_str(factors[1]) + ": " + verdict;
    }
    return res;
}

CommandResult cmd_perturb(const RunConfig &cfg) {
    ModelPtr model = build_config_model(cfg);
    AnnulusPair pair = build_config_pair(cfg, *model);
    Circuit w;
    if (cfg.circuit) {
        w = circuit_from_json(model->system, *cfg.circuit);
    } else {
        w = random_circuit(*model, cfg.circuit_depth, cfg.seed, cfg.two_site_fraction);
    }
    InvarianceReport rep = invariance_experiment(*model, pair, w, cfg.lemma_samples, cfg.seed, cfg.strict_geometry);
    CommandResult res;
    res.report = report_header(cfg, "perturb", rep.certified ? (cfg.strict_geometry ? "strict" : "desk") : "bound not met");
    res.report["config"] = cfg.to_json();
    res.report["pair"] = pair_json(pair);
    res.report["circuit"] = circuit_to_json(w);
    res.report["invariance"] = invariance_to_json(rep);
    if (!rep.equivalent || rep.lemma_failures) {
        res.exit_code = kExitProperty;
    }
    res.summary = rep.str();
    return res;
}

CommandResult cmd_witness(const RunConfig &cfg) {
    std::vector<WitnessScenario> scenarios;
    if (cfg.witness_scenario.empty() || cfg.witness_scenario == "all") {
        scenarios = builtin_examples();
    } else if (cfg.witness_scenario == "ghz") {
        scenarios.push_back(ghz_scenario(cfg.ghz_n));
    } else {
        scenarios.push_back(builtin_scenario(cfg.witness_scenario, cfg.seed));
    }
    WitnessOptions opt;
    opt.allow_dense = cfg.oracle_enabled;
    opt.cap = cfg.oracle_cap;
    opt.seed = cfg.seed;
    CommandResult res;
    Json reports = Json::array();
    std::string status = "hand-built";
    for (const auto &s : scenarios) {
        WitnessReport r = run_scenario(s, opt);
        Json j = witness_to_json(r);
        j["description"] = s.description;
        reports.push_back(j);
        res.summary += (res.summary.empty() ? "" : "\n") + r.str();
        if (s.pair.lattice) {
            status = r.geometry_ok ? "desk" : "uncertified";
        }
    }
    res.report = report_header(cfg, "witness", status);
    res.report["witnesses"] = reports;
    return res;
}

CommandResult cmd_oracle(const RunConfig &cfg, const std::string &scenario) {
    ModelPtr model;
    StatePtr state;
    std::optional<AnnulusPair> pair;
    std::vector<std::pair<WeylSum, WeylSum>> pairs;
    std::string status = "n/a";
    if (!scenario.empty()) {
        WitnessScenario s = scenario == "ghz" ? ghz_scenario(cfg.ghz_n) : builtin_scenario(scenario, cfg.seed);
        model = s.state->model();
        state = s.state;
        pair = s.pair;
        pairs.emplace_back(s.p, s.q);
        status = "hand-built";
    } else {
        model = build_config_model(cfg);
        state = make_state(model);
        try {
            AnnulusPair lp = build_config_pair(cfg, *model);
            pair = model->lift(lp);
            status = geometry_status(validate_geometry(lp, 0, model->interaction_range));
        } catch (const ValidationError &) {
            status = "no admissible annulus pair";
        }
    }
    size_t dim = dense_dimension(*model->system);
    if (!cfg.oracle_enabled) {
        throw ValidationError("oracle disabled in the config");
    }
    if (dim > cfg.oracle_cap) {
        throw CapExceeded("oracle: instance has dimension " + (dim == SIZE_MAX ? std::string("> 2^64") : std::to_string(dim)) +
                          " above the cap " + std::to_string(cfg.oracle_cap));
    }
    DenseState psi = dense_ground_state(*model, cfg.oracle_cap, cfg.seed);
    std::mt19937_64 rng(cfg.seed);
    Json rows = Json::array();
    bool all_pass = true;
    auto add_row = [&](const std::string &name, bool pass, double worst, const std::string &detail) {
        rows.push_back(Json{{"check", name}, {"pass", pass}, {"worst_deviation", worst}, {"detail", detail}});
        all_pass = all_pass && pass;
    };

    // Expectations of stabilizers and random Weyl operators.
    double worst = 0;
    size_t n = model->num_sites();
    std::vector<WeylOp> ops = model->stabilizer_generators();
    std::vector<uint32_t> all_sites(n);
    for (uint32_t s = 0; s < n; s++) {
        all_sites[s] = s;
    }
    for (int k = 0; k < 20; k++) {
        std::vector<uint32_t> few;
        for (int j = 0; j < 3; j++) {
            few.push_back((uint32_t)(rng() % n));
        }
        std::sort(few.begin(), few.end());
        few.erase(std::unique(few.begin(), few.end()), few.end());
        ops.push_back(random_weyl_on(few, model->system, rng));
        ops.push_back(random_weyl_on(all_sites, model->system, rng));
    }
    for (size_t i = 0; i + 1 < model->terms.size() && i < 40; i += 2) {
        ops.push_back(model->terms[i].generator * model->terms[i + 1].generator);
    }
    for (const auto &op : ops) {
        auto sym = expectation(*state, op).to_complex();
        auto den = dense_expectation(psi, op);
        worst = std::max(worst, std::abs(sym - den));
    }
    add_row("expectations", worst <= 1e-10, worst, std::to_string(ops.size()) + " Weyl operators");

    // Twist pairings.
    if (pair) {
        std::vector<uint32_t> ls = pair->left.sites(), rs = pair->right.sites();
        for (int k = 0; k < 10; k++) {
            pairs.emplace_back(WeylSum(random_weyl_on(ls, model->system, rng)), WeylSum(random_weyl_on(rs, model->system, rng)));
        }
        if (!scenario.empty()) {
            // Commutant elements give nonzero pairings; random full-weight ones mostly vanish.
            for (int k = 0; k < 10; k++) {
                WeylOp a = WeylOp::identity(model->system), b = WeylOp::identity(model->system);
                for (const auto &t : model->terms) {
                    bool in_l = std::all_of(t.support.begin(), t.support.end(), [&](uint32_t s) {
                        return pair->left.contains(s);
                    });
                    bool in_r = std::all_of(t.support.begin(), t.support.end(), [&](uint32_t s) {
                        return pair->right.contains(s);
                    });
                    if (in_l && rng() % 2) {
                        a = a * t.generator;
                    }
                    if (in_r && rng() % 2) {
                        b = b * t.generator;
                    }
                }
                pairs.emplace_back(WeylSum(a) * pairs[0].first, WeylSum(b) * pairs[0].second);
            }
        }
        double tw = 0;
        for (const auto &[p, q] : pairs) {
            auto sym = twist_pairing(*state, p, q, *pair).to_complex();
            auto den = dense_twist_pairing(psi, p, q, *pair);
            tw = std::max(tw, std::abs(sym - den));
        }
        add_row("twist_pairings", tw <= 1e-10, tw, std::to_string(pairs.size()) + " pairs");
    } else {
        add_row("twist_pairings", true, 0, "skipped: " + status);
    }

    // Local topological order.
    if (model->lattice || scenario.empty()) {
        DenseLtoReport lto = dense_lto_check(*model, cfg.oracle_cap, 1, cfg.seed);
        add_row("local_topological_order", lto.pass, lto.worst_deviation, lto.detail);
    }

    CommandResult res;
    res.report = report_header(cfg, "oracle", status);
    res.report["instance"] = Json{{"name", model->name}, {"sites", n}, {"dimension", dim}};
    res.report["checks"] = rows;
    res.report["all_agree"] = all_pass;
    if (!all_pass) {
        res.exit_code = kExitProperty;
    }
    std::stringstream s;
    s << "oracle on " << model->name << " (dimension " << dim << "): ";
    for (const auto &r : rows) {
        s << r["check"].get<std::string>() << "=" << (r["pass"].get<bool>() ? "pass" : "FAIL") << " ";
    }
    res.summary = s.str();
    return res;
}

CommandResult cmd_check(const RunConfig &cfg) {
    ModelPtr model = build_config_model(cfg);
    bool dense = cfg.oracle_enabled && dense_dimension(*model->system) <= cfg.oracle_cap;
    ModelReport rep = check_model(*model, dense, cfg.oracle_cap);
    CommandResult res;
    res.report = report_header(cfg, "check", "n/a");
    res.report["model"] = Json{{"name", model->name}, {"sites", model->num_sites()}, {"terms", model->terms.size()}};
    res.report["commuting"] = rep.commuting;
    res.report["frustration_free"] = rep.frustration_free;
    res.report["projectors_exact"] = rep.projectors_exact;
    if (rep.lto_small_instance) {
        res.report["local_topological_order"] = *rep.lto_small_instance;
    } else {
        res.report["local_topological_order"] = nullptr;
    }
    res.report["lto_detail"] = rep.lto_detail;
    bool ok = rep.commuting && rep.frustration_free && rep.projectors_exact && rep.lto_small_instance.value_or(true);
    if (!ok) {
        res.exit_code = kExitProperty;
    }
    res.summary = rep.str();
    return res;
}

CommandResult cmd_algebra(const RunConfig &cfg) {
    Pipeline p = prepare(cfg);
    LogicalAlgebra left = logical_quotient(*p.state, p.lattice_pair.left_spec);
    CommandResult res;
    res.report = report_header(cfg, "algebra", geometry_status(p.geometry));
    res.report["pair"] = pair_json(p.lattice_pair);
    res.report["algebra"] = algebra_to_json(left);
    res.summary = left.str();
    return res;
}

// ---------------------------------------------------------------------------------------------

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"stilde: twist-pairing invariants of qudit stabilizer states"};
    app.require_subcommand(1);

    std::string config_path, out_dir, scenario;
    std::optional<uint64_t> seed;
    std::optional<size_t> cap;
    std::optional<size_t> ghz_n;
    bool strict = false;
    std::vector<std::string> inputs;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "Seed (overrides the config)");
        sub->add_flag("--strict-geometry", strict, "Require the literal geometry constants");
        sub->add_option("--oracle-cap", cap, "Largest dense dimension");
        sub->add_option("--out", out_dir, "Directory for report files");
    };
    CLI::App *smatrix = app.add_subcommand("smatrix", "Compute S~ for the configured model and annuli");
    CLI::App *reconstruct = app.add_subcommand("reconstruct", "Reconstruct the anyon group from one or two S~");
    CLI::App *perturb = app.add_subcommand("perturb", "Invariance of S~ under a Clifford circuit");
    CLI::App *witness = app.add_subcommand("witness", "Evaluate entanglement witnesses");
    CLI::App *oracle = app.add_subcommand("oracle", "Cross-validate against dense state vectors");
    CLI::App *check = app.add_subcommand("check", "Check the model (commuting, frustration-free, LTO)");
    CLI::App *algebra = app.add_subcommand("algebra", "Dump the logical algebra of the left annulus");
    for (CLI::App *sub : {smatrix, reconstruct, perturb, witness, oracle, check, algebra}) {
        common(sub);
    }
    reconstruct->add_option("--input", inputs, "S~ JSON files (one or two)")->check(CLI::ExistingFile);
    witness->add_option("scenario", scenario, "Builtin scenario (ghz, bell-poles, toric, planar-patch, product-state, all)");
    witness->add_option("--n", ghz_n, "Number of qubits for ghz");
    oracle->add_option("--scenario", scenario, "Builtin witness instance instead of the config model");
    oracle->add_option("--n", ghz_n, "Number of qubits for ghz");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig::from_json(Json::object()) : RunConfig::from_file(config_path);
        if (seed) {
            cfg.seed = *seed;
        }
        if (cap) {
            cfg.oracle_cap = *cap;
        }
        if (ghz_n) {
            cfg.ghz_n = *ghz_n;
        }
        cfg.strict_geometry = cfg.strict_geometry || strict;
        if (!out_dir.empty()) {
            cfg.out_dir = out_dir;
        }
        if (witness->parsed() && !scenario.empty()) {
            cfg.witness_scenario = scenario;
        }

        CommandResult res;
        std::string name;
        if (smatrix->parsed()) {
            name = "smatrix";
            res = cmd_smatrix(cfg);
        } else if (reconstruct->parsed()) {
            name = "reconstruct";
            res = cmd_reconstruct(cfg, inputs);
        } else if (perturb->parsed()) {
            name = "perturb";
            res = cmd_perturb(cfg);
        } else if (witness->parsed()) {
            name = "witness";
            res = cmd_witness(cfg);
        } else if (oracle->parsed()) {
            name = "oracle";
            res = cmd_oracle(cfg, scenario);
        } else if (check->parsed()) {
            name = "check";
            res = cmd_check(cfg);
        } else {
            name = "algebra";
            res = cmd_algebra(cfg);
        }
        std::string text = dump_json(res.report);
        out << text;
        if (!cfg.out_dir.empty()) {
            std::filesystem::create_directories(cfg.out_dir);
            write_text((std::filesystem::path(cfg.out_dir) / (name + ".json")).string(), text);
            for (const auto &[file, contents] : res.extra_files) {
                write_text((std::filesystem::path(cfg.out_dir) / file).string(), contents);
            }
        }
        err << res.summary << "\n";
        return res.exit_code;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace stilde

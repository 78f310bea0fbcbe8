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

#include "stilde/serialize.h"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "stilde/errors.h"

namespace stilde {

namespace {

Json integer_to_json(const mpz_class &z) {
    if (z.fits_slong_p()) {
        return (int64_t)z.get_si();
    }
    return z.get_str();
}

mpz_class integer_from_json(const Json &j) {
    if (j.is_number_integer()) {
        return mpz_class((long)j.get<int64_t>());
    }
    if (j.is_string()) {
        return mpz_class(j.get<std::string>());
    }
    throw ValidationError("expected an integer, got " + j.dump());
}

Json complex_to_json(std::complex<double> z) {
    return Json::array({z.real(), z.imag()});
}

std::string fmt_double(double v) {
    std::stringstream s;
    s << std::setprecision(12) << v;
    return s.str();
}

Json labels_to_json(const std::vector<std::vector<int64_t>> &labels) {
    Json out = Json::array();
    for (const auto &l : labels) {
        out.push_back(l);
    }
    return out;
}

template <typename T>
T get_or(const Json &j, const char *key, T fallback) {
    if (j.contains(key) && !j.at(key).is_null()) {
        return j.at(key).get<T>();
    }
    return fallback;
}

}  // namespace

Json cyclo_to_json(const Cyclo &c) {
    Json terms = Json::array();
    for (const auto &t : c.terms()) {
        terms.push_back(Json{
            {"coeff", Json::array({integer_to_json(t.coeff.get_num()), integer_to_json(t.coeff.get_den())})},
            {"root_exponent", t.exponent},
            {"root_order", c.order()},
        });
    }
    return Json{{"terms", terms}, {"float", complex_to_json(c.to_complex())}};
}

Cyclo cyclo_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("terms")) {
        throw ValidationError("cyclotomic record needs a 'terms' list");
    }
    Cyclo out;
    for (const auto &t : j.at("terms")) {
        const Json &c = t.at("coeff");
        if (!c.is_array() || c.size() != 2) {
            throw ValidationError("cyclotomic coefficient must be [num, den]");
        }
        mpz_class num = integer_from_json(c[0]), den = integer_from_json(c[1]);
        if (den == 0) {
            throw ValidationError("cyclotomic coefficient has zero denominator");
        }
        Rational q(num, den);
        q.canonicalize();
        int64_t n = t.at("root_order").get<int64_t>();
        int64_t k = t.at("root_exponent").get<int64_t>();
        if (n <= 0) {
            throw ValidationError("root_order must be positive");
        }
        out += Cyclo::root_of_unity(k, n).scaled(q);
    }
    return out;
}

Json stilde_to_json(const STilde &s) {
    Json rows = Json::array();
    for (const auto &row : s.entries) {
        Json r = Json::array();
        for (const auto &e : row) {
            r.push_back(cyclo_to_json(e));
        }
        rows.push_back(r);
    }
    return Json{
        {"rows", s.rows()},
        {"cols", s.cols()},
        {"left_labels", labels_to_json(s.left_labels)},
        {"right_labels", labels_to_json(s.right_labels)},
        {"left_vacuum", s.left_vacuum},
        {"right_vacuum", s.right_vacuum},
        {"provenance", s.provenance},
        {"entries", rows},
    };
}

STilde stilde_from_json(const Json &j) {
    const Json &root = j.contains("stilde") ? j.at("stilde") : j;
    STilde s;
    for (const auto &row : root.at("entries")) {
        std::vector<Cyclo> r;
        for (const auto &e : row) {
            r.push_back(cyclo_from_json(e));
        }
        if (!s.entries.empty() && r.size() != s.entries[0].size()) {
            throw ValidationError("S~ rows have different lengths");
        }
        s.entries.push_back(std::move(r));
    }
    if (s.entries.empty()) {
        throw ValidationError("S~ has no rows");
    }
    s.left_vacuum = get_or<size_t>(root, "left_vacuum", 0);
    s.right_vacuum = get_or<size_t>(root, "right_vacuum", 0);
    if (s.left_vacuum >= s.rows() || s.right_vacuum >= s.cols()) {
        throw ValidationError("S~ vacuum index out of range");
    }
    if (root.contains("left_labels")) {
        s.left_labels = root.at("left_labels").get<std::vector<std::vector<int64_t>>>();
    }
    if (root.contains("right_labels")) {
        s.right_labels = root.at("right_labels").get<std::vector<std::vector<int64_t>>>();
    }
    if (s.left_labels.size() != s.rows()) {
        s.left_labels.assign(s.rows(), {});
        for (size_t k = 0; k < s.rows(); k++) {
            s.left_labels[k] = {(int64_t)k};
        }
    }
    if (s.right_labels.size() != s.cols()) {
        s.right_labels.assign(s.cols(), {});
        for (size_t k = 0; k < s.cols(); k++) {
            s.right_labels[k] = {(int64_t)k};
        }
    }
    s.provenance = get_or<std::string>(root, "provenance", "file");
    return s;
}

std::string stilde_to_csv(const STilde &s) {
    std::stringstream out;
    for (const auto &row : s.entries) {
        for (size_t b = 0; b < row.size(); b++) {
            auto z = row[b].to_complex();
            double re = std::abs(z.real()) < 1e-15 ? 0.0 : z.real();
            double im = std::abs(z.imag()) < 1e-15 ? 0.0 : z.imag();
            out << (b ? "," : "") << fmt_double(re) << (im < 0 ? "" : "+") << fmt_double(im) << "j";
        }
        out << "\n";
    }
    return out.str();
}

Json algebra_to_json(const LogicalAlgebra &alg) {
    Json reps = Json::array();
    for (const auto &r : alg.reps) {
        reps.push_back(r.str());
    }
    Json table = Json::array();
    for (const auto &a : alg.labels) {
        Json row = Json::array();
        for (int64_t k = 0; k < alg.size(); k++) {
            row.push_back(alg.character(a, alg.element_coords(k)).str());
        }
        table.push_back(row);
    }
    return Json{
        {"invariant_factors", alg.orders},
        {"order", alg.size()},
        {"annulus_sites", alg.region.size()},
        {"null_region_sites", alg.thick.size()},
        {"commutant_generators", alg.commutant.generators.size()},
        {"null_generators", alg.null_generators.size()},
        {"representatives", reps},
        {"labels", labels_to_json(alg.labels)},
        {"character_table", table},
        {"vacuum", alg.vacuum},
    };
}

Json geometry_to_json(const GeometryReport &g) {
    Json checks = Json::array();
    for (const auto &c : g.checks) {
        checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"strict", c.strict}, {"detail", c.detail}});
    }
    return Json{{"desk_ok", g.desk_ok()}, {"strict_ok", g.strict_ok()}, {"checks", checks}};
}

Json stability_to_json(const StabilityReport &r) {
    return Json{
        {"isomorphism", r.isomorphism()},
        {"injective", r.injective},
        {"surjective", r.surjective},
        {"factors_t1", r.orders_t1},
        {"factors_t2", r.orders_t2},
        {"detail", r.detail},
    };
}

Json invariance_to_json(const InvarianceReport &r) {
    return Json{
        {"equivalent", r.equivalent},
        {"certified", r.certified},
        {"lemma_samples", r.lemma_samples},
        {"lemma_failures", r.lemma_failures},
        {"seed", r.seed},
        {"detail", r.detail},
        {"geometry", geometry_to_json(r.geometry)},
        {"before", stilde_to_json(r.before)},
        {"after", stilde_to_json(r.after)},
    };
}

Json witness_to_json(const WitnessReport &r) {
    auto cert = [](const InvisibilityCertificate &c) {
        return Json{{"method", certificate_method_name(c.method)}, {"r", c.r}, {"t", c.t}, {"details", c.details}};
    };
    return Json{
        {"scenario", r.scenario},
        {"pairing", cyclo_to_json(r.pairing)},
        {"expectation_p", cyclo_to_json(r.expectation_p)},
        {"expectation_q", cyclo_to_json(r.expectation_q)},
        {"product", cyclo_to_json(r.product)},
        {"violated", r.violated},
        {"depth_bound", r.depth_bound},
        {"geometry_ok", r.geometry_ok},
        {"geometry", r.geometry},
        {"certificate_p", cert(r.certificate_p)},
        {"certificate_q", cert(r.certificate_q)},
    };
}

Json circuit_to_json(const Circuit &w) {
    Json layers = Json::array();
    for (const auto &layer : w.layers) {
        Json l = Json::array();
        for (const auto &g : layer) {
            Json gate{{"gate", gate_kind_name(g.kind)}, {"sites", g.sites}};
            if (g.kind == GateKind::Multiply) {
                gate["params"] = Json::array({g.param});
            }
            if (g.kind == GateKind::Custom) {
                Json xs = Json::array(), zs = Json::array();
                for (const auto &x : g.x_images) {
                    xs.push_back(x.str());
                }
                for (const auto &z : g.z_images) {
                    zs.push_back(z.str());
                }
                gate["x_images"] = xs;
                gate["z_images"] = zs;
            }
            l.push_back(gate);
        }
        layers.push_back(l);
    }
    return Json{{"seed", w.seed}, {"depth", w.depth()}, {"layers", layers}};
}

Circuit circuit_from_json(const SiteSystemPtr &sys, const Json &j) {
    Circuit w;
    w.system = sys;
    w.seed = get_or<uint64_t>(j, "seed", 0);
    if (!j.contains("layers") || !j.at("layers").is_array()) {
        throw ValidationError("circuit needs a 'layers' list");
    }
    for (const auto &layer : j.at("layers")) {
        std::vector<CliffordGate> gates;
        for (const auto &g : layer) {
            GateKind kind = gate_kind_from_name(g.at("gate").get<std::string>());
            auto sites = g.at("sites").get<std::vector<uint32_t>>();
            for (uint32_t s : sites) {
                if (s >= sys->size()) {
                    throw ValidationError("circuit: site " + std::to_string(s) + " out of range");
                }
            }
            auto need = [&](size_t n) {
                if (sites.size() != n) {
                    throw ValidationError(std::string("circuit: gate ") + gate_kind_name(kind) + " needs " + std::to_string(n) + " sites");
                }
            };
            switch (kind) {
                case GateKind::Fourier:
                    need(1);
                    gates.push_back(CliffordGate::fourier(sys, sites[0]));
                    break;
                case GateKind::Phase:
                    need(1);
                    gates.push_back(CliffordGate::phase(sys, sites[0]));
                    break;
                case GateKind::Multiply: {
                    need(1);
                    auto params = g.at("params").get<std::vector<int64_t>>();
                    if (params.size() != 1) {
                        throw ValidationError("circuit: multiply takes one parameter");
                    }
                    gates.push_back(CliffordGate::multiply(sys, sites[0], params[0]));
                    break;
                }
                case GateKind::Sum:
                    need(2);
                    gates.push_back(CliffordGate::sum(sys, sites[0], sites[1]));
                    break;
                case GateKind::Swap:
                    need(2);
                    gates.push_back(CliffordGate::swap(sys, sites[0], sites[1]));
                    break;
                case GateKind::Custom: {
                    std::vector<WeylOp> xs, zs;
                    for (const auto &x : g.at("x_images")) {
                        xs.push_back(WeylOp::parse(sys, x.get<std::string>()));
                    }
                    for (const auto &z : g.at("z_images")) {
                        zs.push_back(WeylOp::parse(sys, z.get<std::string>()));
                    }
                    gates.push_back(CliffordGate::custom(sys, sites, xs, zs));
                    break;
                }
            }
        }
        w.layers.push_back(std::move(gates));
    }
    w.validate();
    return w;
}

// ---------------------------------------------------------------------------------------------

RunConfig RunConfig::from_json(const Json &j) {
    if (!j.is_object()) {
        throw ValidationError("config must be a JSON object");
    }
    RunConfig c;
    try {
        if (j.contains("model")) {
            const Json &m = j.at("model");
            if (m.contains("G")) {
                c.groups = m.at("G").get<std::vector<uint32_t>>();
            }
            c.L = get_or<int64_t>(m, "L", c.L);
            c.ancillas = get_or<size_t>(m, "ancillas", c.ancillas);
            c.redundant_terms = get_or<bool>(m, "redundant_terms", c.redundant_terms);
            if (m.contains("logical_phase")) {
                auto v = m.at("logical_phase").get<std::vector<int64_t>>();
                if (v.size() != 2) {
                    throw ValidationError("model.logical_phase must have two entries");
                }
                c.logical_phase = {v[0], v[1]};
            }
        }
        if (j.contains("geometry")) {
            const Json &g = j.at("geometry");
            c.r_ann = get_or<double>(g, "r_ann", c.r_ann);
            c.t = get_or<double>(g, "t", c.t);
            c.separation = get_or<double>(g, "separation", c.separation);
            c.strict_geometry = get_or<bool>(g, "strict", c.strict_geometry);
            if (g.contains("stability_t2")) {
                c.stability_t2 = g.at("stability_t2").get<double>();
            }
        }
        if (j.contains("circuit")) {
            const Json &w = j.at("circuit");
            if (w.contains("layers")) {
                c.circuit = w;
            }
            c.circuit_depth = get_or<int64_t>(w, "depth", c.circuit_depth);
            c.two_site_fraction = get_or<double>(w, "two_site_fraction", c.two_site_fraction);
            c.lemma_samples = get_or<int64_t>(w, "lemma_samples", c.lemma_samples);
        }
        if (j.contains("witness")) {
            const Json &w = j.at("witness");
            c.witness_scenario = get_or<std::string>(w, "scenario", c.witness_scenario);
            c.ghz_n = get_or<size_t>(w, "n", c.ghz_n);
        }
        if (j.contains("oracle")) {
            const Json &o = j.at("oracle");
            c.oracle_enabled = get_or<bool>(o, "enabled", c.oracle_enabled);
            c.oracle_cap = get_or<size_t>(o, "cap", c.oracle_cap);
        }
        c.seed = get_or<uint64_t>(j, "seed", c.seed);
        c.out_dir = get_or<std::string>(j, "out", c.out_dir);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    if (c.groups.empty()) {
        throw ValidationError("config: model.G must list at least one group order");
    }
    for (uint32_t d : c.groups) {
        if (d < 2) {
            throw ValidationError("config: group orders must be at least 2");
        }
    }
    if (c.L < 3) {
        throw ValidationError("config: model.L must be at least 3");
    }
    c.canonical = j.dump();
    return c;
}

RunConfig RunConfig::from_file(const std::string &path) {
    std::string text = read_text(path);
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError("config " + path + ": " + e.what());
    }
    return from_json(j);
}

std::string RunConfig::hash() const {
    uint64_t h = 1469598103934665603ull;
    std::string text = canonical + "#seed=" + std::to_string(seed);
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
    return buf;
}

Json RunConfig::to_json() const {
    Json j{
        {"model", Json{{"G", groups}, {"L", L}, {"ancillas", ancillas}, {"redundant_terms", redundant_terms},
                       {"logical_phase", Json::array({logical_phase.first, logical_phase.second})}}},
        {"geometry", Json{{"r_ann", r_ann}, {"t", t}, {"separation", separation}, {"strict", strict_geometry}}},
        {"oracle", Json{{"enabled", oracle_enabled}, {"cap", oracle_cap}}},
        {"seed", seed},
    };
    if (stability_t2) {
        j["geometry"]["stability_t2"] = *stability_t2;
    }
    Json w{{"depth", circuit_depth}, {"two_site_fraction", two_site_fraction}, {"lemma_samples", lemma_samples}};
    if (circuit) {
        w["layers"] = circuit->at("layers");
    }
    j["circuit"] = w;
    if (!witness_scenario.empty()) {
        j["witness"] = Json{{"scenario", witness_scenario}, {"n", ghz_n}};
    }
    return j;
}

Json report_header(const RunConfig &cfg, const std::string &command, const std::string &geometry_status) {
    return Json{
        {"command", command},
        {"config_hash", cfg.hash()},
        {"seed", cfg.seed},
        {"geometry_status", geometry_status},
    };
}

std::string dump_json(const Json &j) {
    return j.dump(2) + "\n";
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path);
    }
    out << text;
}

std::string read_text(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read " + path);
    }
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace stilde

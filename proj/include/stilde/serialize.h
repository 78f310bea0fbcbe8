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

#ifndef STILDE_SERIALIZE_H
#define STILDE_SERIALIZE_H

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stilde/witness.h"

namespace stilde {

using Json = nlohmann::ordered_json;

/// Exact record: {"terms": [{"coeff": [num, den], "root_exponent": k, "root_order": n}, ...],
/// "float": [re, im]}. The float field is informational and ignored on input.
Json cyclo_to_json(const Cyclo &c);
Cyclo cyclo_from_json(const Json &j);

Json stilde_to_json(const STilde &s);
STilde stilde_from_json(const Json &j);
/// Float view: one line per row, "re+imj" cells.
std::string stilde_to_csv(const STilde &s);

Json algebra_to_json(const LogicalAlgebra &alg);
Json geometry_to_json(const GeometryReport &g);
Json stability_to_json(const StabilityReport &r);
Json invariance_to_json(const InvarianceReport &r);
Json witness_to_json(const WitnessReport &r);

Json circuit_to_json(const Circuit &w);
Circuit circuit_from_json(const SiteSystemPtr &sys, const Json &j);

/// Everything a command needs. Missing fields keep their defaults.
struct RunConfig {
    /// One toric code layer per entry (cyclic group orders).
    std::vector<uint32_t> groups{2};
    int64_t L = 24;
    size_t ancillas = 0;
    bool redundant_terms = false;
    std::pair<int64_t, int64_t> logical_phase{0, 0};

    double r_ann = 7;
    double t = 2;
    double separation = 4;
    bool strict_geometry = false;
    /// Thicknesses compared by the stability check (defaults: t and t + 1).
    std::optional<double> stability_t2;

    /// Either an explicit circuit or a random one.
    std::optional<Json> circuit;
    int64_t circuit_depth = 0;
    double two_site_fraction = 0.5;
    int64_t lemma_samples = 100;

    std::string witness_scenario;
    size_t ghz_n = 10;

    bool oracle_enabled = true;
    size_t oracle_cap = kDefaultDenseCap;

    uint64_t seed = 1;
    std::string out_dir;
    /// Canonical dump of the parsed input, used for the hash.
    std::string canonical;

    static RunConfig from_json(const Json &j);
    static RunConfig from_file(const std::string &path);
    /// Hex FNV-1a 64 of the canonical form with the seed.
    std::string hash() const;
    Json to_json() const;
};

/// Common header embedded in every report.
Json report_header(const RunConfig &cfg, const std::string &command, const std::string &geometry_status);

/// Deterministic, byte-stable formatting (2-space indent, trailing newline).
std::string dump_json(const Json &j);
void write_text(const std::string &path, const std::string &text);
std::string read_text(const std::string &path);

}  // namespace stilde

#endif

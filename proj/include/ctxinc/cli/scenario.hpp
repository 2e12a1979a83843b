// Copyright 2026 The ctxinc Authors
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

// JSON scenario files: parsing into library objects and evaluation of the
// requested measures. The schema is documented in scenarios/README.md.
//
// Syntax errors carry a line and column. Semantic errors carry a JSON path
// such as $.observables.X.effects[1], since the parser does not keep source
// positions for values.

#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctxinc/error.hpp"
#include "ctxinc/info.hpp"
#include "ctxinc/instruments.hpp"
#include "ctxinc/ipc.hpp"
#include "ctxinc/measurements.hpp"
#include "ctxinc/states.hpp"
#include "json.hpp"

namespace ctxinc::cli {

using nlohmann::json;

class ScenarioError : public Error {
   public:
    /// Syntax error at a 1-based line and column.
    ScenarioError(std::size_t line, std::size_t column, const std::string &what)
        : Error(ErrorCode::parse_error,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    /// Semantic error at a JSON path.
    ScenarioError(std::string path, const std::string &what)
        : Error(ErrorCode::invalid_scenario, path + ": " + what), path_(std::move(path)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string &path() const noexcept { return path_; }

   private:
    std::size_t line_ = 0;
    std::size_t column_ = 0;
    std::string path_;
};

struct Party {
    std::string observable_name;
    Observable observable;
    Instrument instrument;
};

struct MemoryBlock {
    DensityMatrix joint_state;
};

struct Scenario {
    std::string name;
    std::optional<DensityMatrix> state;
    std::map<std::string, Observable> observables;
    std::optional<Party> alice;
    std::optional<Party> eve;
    std::optional<MemoryBlock> memory;
    std::vector<std::string> outputs;
};

inline const std::vector<std::string> &known_outputs() {
    static const std::vector<std::string> names{
        "old_ipc",     "old_ipc_generalized", "chi_alice",   "leak",       "min_leak",
        "ipc_modified", "sharp_relation_residual", "old_ipc_mem", "new_ipc_mem", "new_ipc_mem_breakdown",
        "memory_gap",
    };
    return names;
}

namespace detail {

/// 1-based line and column of a 0-based byte offset.
inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

/// Start of the token whose last byte is at `last`. The JSON reader reports
/// token ends; users expect the column where the offending token begins.
inline std::size_t token_start(std::string_view text, std::size_t last) {
    if (last >= text.size()) return last;
    auto delimiter = [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '{' || c == '}' || c == '[' || c == ']' ||
               c == ',' || c == ':' || c == '"';
    };
    if (text[last] == '"') {
        for (std::size_t i = last; i-- > 0;) {
            if (text[i] != '"') continue;
            std::size_t slashes = 0;
            while (slashes < i && text[i - 1 - slashes] == '\\') ++slashes;
            if (slashes % 2 == 0) return i;
        }
        return last;
    }
    if (delimiter(text[last])) return last;
    std::size_t i = last;
    while (i > 0 && !delimiter(text[i - 1])) --i;
    return i;
}

class Parser {
   public:
    Scenario parse(const json &root) {
        require_object(root, "$");
        allow_keys(root, "$", {"name", "description", "state", "observables", "alice", "eve", "memory", "outputs"});
        Scenario s{};
        if (root.contains("name")) s.name = string_at(root["name"], "$.name");
        if (root.contains("description")) string_at(root["description"], "$.description");
        if (root.contains("state")) s.state = state(root["state"], "$.state");
        if (root.contains("observables")) {
            const json &obs = root["observables"];
            require_object(obs, "$.observables");
            for (const auto &[key, value] : obs.items()) {
                s.observables.emplace(key, observable(value, "$.observables." + key));
            }
        }
        if (root.contains("alice")) s.alice = party(root["alice"], "$.alice", s.observables);
        if (root.contains("eve")) s.eve = party(root["eve"], "$.eve", s.observables);
        if (root.contains("memory")) s.memory = memory(root["memory"], "$.memory");
        if (!root.contains("outputs")) throw ScenarioError("$", "missing required key 'outputs'");
        const json &outs = root["outputs"];
        if (!outs.is_array() || outs.empty()) throw ScenarioError("$.outputs", "expected a non-empty array of names");
        for (std::size_t i = 0; i < outs.size(); ++i) {
            const std::string path = "$.outputs[" + std::to_string(i) + "]";
            const std::string name = string_at(outs[i], path);
            const auto &known = known_outputs();
            if (std::find(known.begin(), known.end(), name) == known.end()) {
                throw ScenarioError(path, "unknown output '" + name + "'");
            }
            s.outputs.push_back(name);
        }
        check_requirements(s);
        check_composition(s);
        return s;
    }

   private:
    static void require_object(const json &j, const std::string &path) {
        if (!j.is_object()) throw ScenarioError(path, "expected an object");
    }

    static void allow_keys(const json &j, const std::string &path, std::initializer_list<const char *> keys) {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto &[key, value] : j.items()) {
            if (!allowed.count(key)) throw ScenarioError(path, "unknown key '" + key + "'");
        }
    }

    static std::string string_at(const json &j, const std::string &path) {
        if (!j.is_string()) throw ScenarioError(path, "expected a string");
        return j.get<std::string>();
    }

    static std::size_t positive_int(const json &j, const std::string &path) {
        if (!j.is_number_integer() || j.get<long long>() < 1) throw ScenarioError(path, "expected a positive integer");
        return j.get<std::size_t>();
    }

    static Complex complex_at(const json &j, const std::string &path) {
        if (j.is_number()) return {j.get<double>(), 0.0};
        if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
            return {j[0].get<double>(), j[1].get<double>()};
        }
        throw ScenarioError(path, "expected a number or a [re, im] pair");
    }

    static ComplexMatrix matrix(const json &j, const std::string &path) {
        if (!j.is_array() || j.empty()) throw ScenarioError(path, "expected a non-empty array of rows");
        const std::size_t rows = j.size();
        std::size_t cols = 0;
        std::vector<Complex> entries;
        for (std::size_t r = 0; r < rows; ++r) {
            const std::string rp = path + "[" + std::to_string(r) + "]";
            if (!j[r].is_array() || j[r].empty()) throw ScenarioError(rp, "expected a non-empty row");
            if (r == 0) cols = j[r].size();
            if (j[r].size() != cols) {
                throw ScenarioError(rp, "row has " + std::to_string(j[r].size()) + " entries, expected " +
                                            std::to_string(cols));
            }
            for (std::size_t c = 0; c < cols; ++c) {
                entries.push_back(complex_at(j[r][c], rp + "[" + std::to_string(c) + "]"));
            }
        }
        return wrap(path, [&] { return ComplexMatrix(rows, cols, std::move(entries)); });
    }

    static ComplexMatrix square_matrix(const json &j, const std::string &path) {
        ComplexMatrix m = matrix(j, path);
        if (!m.is_square()) {
            throw ScenarioError(path, "expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
        }
        return m;
    }

    /// Runs a library constructor and re-raises its errors at `path`.
    template <typename F>
    static auto wrap(const std::string &path, F &&f) -> decltype(f()) {
        try {
            return f();
        } catch (const ScenarioError &) {
            throw;
        } catch (const Error &e) {
            throw ScenarioError(path, e.what());
        }
    }

    static SubsystemDims dims_at(const json &j, const std::string &path) {
        if (!j.is_array() || j.empty()) throw ScenarioError(path, "expected a non-empty array of dimensions");
        std::vector<std::size_t> d;
        for (std::size_t i = 0; i < j.size(); ++i) d.push_back(positive_int(j[i], path + "[" + std::to_string(i) + "]"));
        return SubsystemDims(std::move(d));
    }

    static DensityMatrix named_state(const std::string &name, const json &j, const std::string &path) {
        const double h = 1.0 / std::sqrt(2.0);
        const Complex i(0.0, h);
        if (name == "maximally_mixed") {
            const std::size_t d = j.contains("dim") ? positive_int(j["dim"], path + ".dim") : 2;
            return maximally_mixed(d);
        }
        if (j.contains("dim")) throw ScenarioError(path + ".dim", "only maximally_mixed takes a dimension");
        if (name == "zero") return pure({1.0, 0.0});
        if (name == "one") return pure({0.0, 1.0});
        if (name == "plus") return pure({h, h});
        if (name == "minus") return pure({h, -h});
        if (name == "plus_i") return pure({Complex(h), i});
        if (name == "minus_i") return pure({Complex(h), -i});
        if (name == "bell") return pure({h, 0.0, 0.0, h}, {2, 2});
        throw ScenarioError(path + ".named", "unknown state '" + name + "'");
    }

    static DensityMatrix state(const json &j, const std::string &path) {
        require_object(j, path);
        allow_keys(j, path, {"named", "dim", "pure", "matrix", "random", "dims"});
        const int forms = j.contains("named") + j.contains("pure") + j.contains("matrix") + j.contains("random");
        if (forms != 1) throw ScenarioError(path, "give exactly one of 'named', 'pure', 'matrix' or 'random'");
        if (j.contains("dim") && !j.contains("named")) throw ScenarioError(path + ".dim", "only named states take 'dim'");
        DensityMatrix rho = maximally_mixed(1);
        if (j.contains("named")) {
            rho = named_state(string_at(j["named"], path + ".named"), j, path);
        } else if (j.contains("pure")) {
            const json &v = j["pure"];
            if (!v.is_array() || v.empty()) throw ScenarioError(path + ".pure", "expected a non-empty amplitude array");
            std::vector<Complex> amps;
            for (std::size_t k = 0; k < v.size(); ++k) {
                amps.push_back(complex_at(v[k], path + ".pure[" + std::to_string(k) + "]"));
            }
            rho = wrap(path + ".pure", [&] { return pure(amps); });
        } else if (j.contains("matrix")) {
            const ComplexMatrix m = square_matrix(j["matrix"], path + ".matrix");
            rho = wrap(path + ".matrix", [&] { return DensityMatrix::from_matrix(m); });
        } else {
            const json &r = j["random"];
            const std::string rp = path + ".random";
            require_object(r, rp);
            allow_keys(r, rp, {"dim", "rank", "seed"});
            if (!r.contains("dim") || !r.contains("seed")) throw ScenarioError(rp, "needs 'dim' and 'seed'");
            const std::size_t d = positive_int(r["dim"], rp + ".dim");
            const std::size_t rank = r.contains("rank") ? positive_int(r["rank"], rp + ".rank") : d;
            if (!r["seed"].is_number_unsigned()) throw ScenarioError(rp + ".seed", "expected a non-negative integer");
            const auto seed = r["seed"].get<std::uint64_t>();
            rho = wrap(rp, [&] { return random_density(d, rank, seed); });
        }
        if (j.contains("dims")) {
            const SubsystemDims dims = dims_at(j["dims"], path + ".dims");
            rho = wrap(path + ".dims", [&] { return rho.with_dims(dims); });
        }
        return rho;
    }

    static std::vector<std::string> labels_at(const json &j, const std::string &path) {
        if (!j.is_array()) throw ScenarioError(path, "expected an array of strings");
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < j.size(); ++k) labels.push_back(string_at(j[k], path + "[" + std::to_string(k) + "]"));
        return labels;
    }

    static Observable observable(const json &j, const std::string &path) {
        require_object(j, path);
        allow_keys(j, path, {"pauli", "named", "effects", "basis", "labels"});
        const int forms = j.contains("pauli") + j.contains("named") + j.contains("effects") + j.contains("basis");
        if (forms != 1) throw ScenarioError(path, "give exactly one of 'pauli', 'named', 'effects' or 'basis'");
        std::optional<std::vector<std::string>> labels;
        if (j.contains("labels")) labels = labels_at(j["labels"], path + ".labels");
        auto relabel = [&](const Observable &o) {
            if (!labels) return o;
            return wrap(path + ".labels", [&] { return Observable(*labels, o.effects()); });
        };
        if (j.contains("pauli")) {
            const std::string axis = string_at(j["pauli"], path + ".pauli");
            if (axis != "x" && axis != "y" && axis != "z") throw ScenarioError(path + ".pauli", "expected x, y or z");
            return relabel(pauli_observable(axis[0]));
        }
        if (j.contains("named")) {
            const std::string name = string_at(j["named"], path + ".named");
            if (name != "trine") throw ScenarioError(path + ".named", "unknown observable '" + name + "'");
            return relabel(trine_observable());
        }
        if (j.contains("basis")) {
            const ComplexMatrix u = square_matrix(j["basis"], path + ".basis");
            if (!is_unitary(u)) throw ScenarioError(path + ".basis", "basis matrix is not unitary");
            return relabel(basis_observable(u));
        }
        const json &e = j["effects"];
        if (!e.is_array() || e.empty()) throw ScenarioError(path + ".effects", "expected a non-empty array of matrices");
        std::vector<ComplexMatrix> effects;
        for (std::size_t k = 0; k < e.size(); ++k) {
            effects.push_back(square_matrix(e[k], path + ".effects[" + std::to_string(k) + "]"));
        }
        for (std::size_t k = 1; k < effects.size(); ++k) {
            if (effects[k].rows() != effects[0].rows()) {
                throw ScenarioError(path + ".effects[" + std::to_string(k) + "]", "effect dimensions differ");
            }
        }
        return wrap(path + ".effects", [&] {
            return labels ? Observable(*labels, effects) : Observable(effects);
        });
    }

    static Instrument instrument(const json &j, const std::string &path, const Observable &obs) {
        if (j.is_string()) {
            const std::string kind = j.get<std::string>();
            if (kind == "luders") return luders_instrument(obs);
            if (kind == "parent") return parent_instrument(obs);
            throw ScenarioError(path, "unknown instrument '" + kind + "'; use luders, parent or an object");
        }
        require_object(j, path);
        if (!j.contains("kind")) throw ScenarioError(path, "missing 'kind'");
        const std::string kind = string_at(j["kind"], path + ".kind");
        if (kind == "luders" || kind == "parent") {
            allow_keys(j, path, {"kind"});
            return kind == "luders" ? luders_instrument(obs) : parent_instrument(obs);
        }
        if (kind == "depolarizing") {
            allow_keys(j, path, {"kind", "target"});
            if (!j.contains("target")) throw ScenarioError(path, "depolarizing needs 'target'");
            const DensityMatrix eta = state(j["target"], path + ".target");
            return depolarizing_instrument(obs, eta);
        }
        if (kind == "model") {
            allow_keys(j, path, {"kind", "ancilla", "unitary", "pointer"});
            for (const char *key : {"ancilla", "unitary", "pointer"})
                if (!j.contains(key)) throw ScenarioError(path, std::string("model needs '") + key + "'");
            const MeasurementModel model{obs.dim(), state(j["ancilla"], path + ".ancilla"),
                                         square_matrix(j["unitary"], path + ".unitary"),
                                         observable(j["pointer"], path + ".pointer")};
            const Instrument raw = wrap(path, [&] { return model_to_instrument(model); });
            if (raw.size() != obs.size()) {
                throw ScenarioError(path + ".pointer", "pointer has " + std::to_string(raw.size()) +
                                                           " outcomes, the observable has " +
                                                           std::to_string(obs.size()));
            }
            // Pointer outcomes map to observable outcomes in order.
            const Instrument inst(obs.labels(), raw.branches(), "model");
            if (!implements(inst, obs)) throw ScenarioError(path, "model does not implement the party's observable");
            return inst;
        }
        if (kind == "post_process") {
            allow_keys(j, path, {"kind", "unitary", "kraus", "inner"});
            if (!j.contains("inner")) throw ScenarioError(path, "post_process needs 'inner'");
            if (j.contains("unitary") == j.contains("kraus")) {
                throw ScenarioError(path, "post_process needs exactly one of 'unitary' or 'kraus'");
            }
            const Instrument inner = instrument(j["inner"], path + ".inner", obs);
            Channel theta = identity_channel(1);
            if (j.contains("unitary")) {
                const ComplexMatrix u = square_matrix(j["unitary"], path + ".unitary");
                if (!is_unitary(u)) throw ScenarioError(path + ".unitary", "matrix is not unitary");
                theta = unitary_channel(u);
            } else {
                const json &k = j["kraus"];
                if (!k.is_array() || k.empty()) throw ScenarioError(path + ".kraus", "expected an array of matrices");
                std::vector<ComplexMatrix> ops;
                for (std::size_t i = 0; i < k.size(); ++i) {
                    ops.push_back(matrix(k[i], path + ".kraus[" + std::to_string(i) + "]"));
                }
                theta = wrap(path + ".kraus", [&] {
                    return Channel(KrausMap(ops.front().cols(), ops.front().rows(), ops), "kraus");
                });
            }
            return wrap(path, [&] { return post_process(theta, inner); });
        }
        throw ScenarioError(path + ".kind", "unknown instrument kind '" + kind + "'");
    }

    static Party party(const json &j, const std::string &path, const std::map<std::string, Observable> &observables) {
        require_object(j, path);
        allow_keys(j, path, {"observable", "instrument"});
        if (!j.contains("observable")) throw ScenarioError(path, "missing 'observable'");
        const std::string name = string_at(j["observable"], path + ".observable");
        auto it = observables.find(name);
        if (it == observables.end()) throw ScenarioError(path + ".observable", "no observable named '" + name + "'");
        const json kind = j.contains("instrument") ? j["instrument"] : json("parent");
        return {name, it->second, instrument(kind, path + ".instrument", it->second)};
    }

    static MemoryBlock memory(const json &j, const std::string &path) {
        require_object(j, path);
        allow_keys(j, path, {"state", "dims"});
        if (!j.contains("state") || !j.contains("dims")) throw ScenarioError(path, "memory needs 'state' and 'dims'");
        const DensityMatrix joint = state(j["state"], path + ".state");
        const SubsystemDims dims = dims_at(j["dims"], path + ".dims");
        if (dims.count() != 2) throw ScenarioError(path + ".dims", "memory needs two subsystems [system, memory]");
        return {wrap(path + ".dims", [&] { return joint.with_dims(dims); })};
    }

    static void check_requirements(const Scenario &s) {
        for (std::size_t i = 0; i < s.outputs.size(); ++i) {
            const std::string &o = s.outputs[i];
            const std::string path = "$.outputs[" + std::to_string(i) + "]";
            const bool memory_output = o == "old_ipc_mem" || o == "new_ipc_mem" || o == "new_ipc_mem_breakdown" ||
                                       o == "memory_gap";
            if (!s.alice) throw ScenarioError(path, "'" + o + "' needs an 'alice' block");
            if (o != "chi_alice" && !s.eve) throw ScenarioError(path, "'" + o + "' needs an 'eve' block");
            if (memory_output && !s.memory) throw ScenarioError(path, "'" + o + "' needs a 'memory' block");
            if (!memory_output && !s.state && !s.memory) throw ScenarioError(path, "'" + o + "' needs a 'state'");
            if (memory_output) {
                wrap("$.memory", [&] {
                    return MemoryContext(s.memory->joint_state, s.alice->observable, s.eve->observable);
                });
            }
        }
    }

    /// Dimension checks that name the objects involved.
    static void check_composition(const Scenario &s) {
        if (!s.alice) return;
        const std::size_t in = s.state ? s.state->dim() : s.memory ? s.memory->joint_state.dims().dims[0] : 0;
        if (in && s.alice->observable.dim() != in) {
            throw ScenarioError("$.alice.observable", "observable '" + s.alice->observable_name + "' acts on dimension " +
                                                          std::to_string(s.alice->observable.dim()) +
                                                          " but the state has dimension " + std::to_string(in));
        }
        if (s.eve && s.eve->instrument.in_dim() != s.alice->instrument.out_dim()) {
            throw ScenarioError("$.eve", "eve's instrument '" + s.eve->instrument.name() + "' for observable '" +
                                             s.eve->observable_name + "' expects dimension " +
                                             std::to_string(s.eve->instrument.in_dim()) + ", alice's instrument '" +
                                             s.alice->instrument.name() + "' for observable '" +
                                             s.alice->observable_name + "' outputs " +
                                             std::to_string(s.alice->instrument.out_dim()));
        }
    }
};

}  // namespace detail

inline Scenario parse_scenario(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        const std::size_t offset = detail::token_start(text, e.byte == 0 ? 0 : e.byte - 1);
        const auto [line, column] = detail::line_column(text, offset);
        std::string what = e.what();
        // Drop the library's own position prefix; ours is line/column.
        if (auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
        throw ScenarioError(line, column, what);
    }
    return detail::Parser().parse(root);
}

inline Scenario load_scenario(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::invalid_parameter, "cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

struct ReportValue {
    std::string key;
    double value;
};

struct ScenarioReport {
    std::vector<ReportValue> values;
    std::vector<std::string> notes;
};

/// Computes every requested output in file order.
inline ScenarioReport evaluate(const Scenario &s) {
    ScenarioReport r;
    auto input = [&] { return s.state ? *s.state : MemoryContext(s.memory->joint_state, s.alice->observable,
                                                                  s.eve->observable)
                                                       .input_state(); };
    auto memory_context = [&] { return MemoryContext(s.memory->joint_state, s.alice->observable, s.eve->observable); };
    for (const auto &o : s.outputs) {
        if (o == "old_ipc") {
            r.values.push_back({o, old_ipc(input(), s.alice->observable, s.eve->observable)});
        } else if (o == "old_ipc_generalized") {
            const double v = old_ipc_generalized(input(), s.alice->instrument, s.eve->instrument);
            r.values.push_back({o, v});
            if (v < -1e-9) {
                r.notes.push_back("old_ipc_generalized is negative: the entropy-difference measure is not an "
                                  "information leak once Eve's instrument is not Luders; use leak instead");
            }
        } else if (o == "chi_alice") {
            r.values.push_back({o, chi_alice(input(), s.alice->instrument).value});
        } else if (o == "leak") {
            const auto rep = leak(input(), s.alice->instrument, s.eve->instrument);
            r.values.push_back({"leak.chi_alice", rep.chi_alice});
            r.values.push_back({"leak.chi_after_eve", rep.chi_after_eve});
            r.values.push_back({o, rep.leak});
        } else if (o == "min_leak") {
            r.values.push_back({o, min_leak_over_eve(input(), s.alice->instrument, s.eve->observable).leak});
        } else if (o == "ipc_modified") {
            r.values.push_back({o, ipc_modified(Context(input(), s.alice->observable, s.eve->observable))});
        } else if (o == "sharp_relation_residual") {
            r.values.push_back({o, sharp_relation_residual(input(), s.alice->observable, s.eve->observable)});
        } else if (o == "old_ipc_mem") {
            r.values.push_back({o, old_ipc_mem(memory_context())});
        } else if (o == "new_ipc_mem") {
            r.values.push_back({o, new_ipc_mem(memory_context())});
        } else if (o == "new_ipc_mem_breakdown") {
            const auto b = new_ipc_mem_breakdown(memory_context());
            r.values.push_back({"new_ipc_mem.cq_route", b.cq_route});
            r.values.push_back({"new_ipc_mem.weighted_form", b.weighted_form});
            r.values.push_back({"new_ipc_mem.unweighted_form", b.unweighted_form});
            if (b.unweighted_divergence() > 1e-9) {
                r.notes.push_back("the outcome sum without weights differs from the classical-quantum value; the "
                                  "weighted form is reported as new_ipc_mem");
            }
        } else if (o == "memory_gap") {
            const auto g = memory_gap(memory_context());
            r.values.push_back({"memory_gap.old_gap", g.old_gap});
            r.values.push_back({"memory_gap.new_gap", g.new_gap});
        }
    }
    return r;
}

}  // namespace ctxinc::cli

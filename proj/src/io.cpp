#include "mfa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "mfa/version.hpp"

namespace mfa {

using nlohmann::json;

std::string to_string(OutputFormat f) {
    return f == OutputFormat::Csv ? "csv" : "json";
}

OutputFormat output_format_from_string(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

namespace {

std::string model_name(ConfigModel m) {
    switch (m) {
        case ConfigModel::Fm: return "fm";
        case ConfigModel::Afm: return "afm";
        default: return "int";
    }
}

ConfigModel model_from_string(const std::string& name) {
    if (name == "fm") return ConfigModel::Fm;
    if (name == "afm") return ConfigModel::Afm;
    if (name == "int") return ConfigModel::Int;
    throw ConfigError("unknown model '" + name + "' (expected fm, afm or int)");
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw ConfigError("unknown key '" + where + it.key() + "'");
}

const json* get(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double need_number(const json& obj, const std::string& where, const char* key) {
    const json* v = get(obj, key);
    if (!v) throw ConfigError("missing required key '" + where + key + "'");
    if (!v->is_number()) throw ConfigError("'" + where + key + "' must be a number");
    return v->get<double>();
}

double opt_number(const json& obj, const std::string& where, const char* key, double def) {
    const json* v = get(obj, key);
    if (!v) return def;
    if (!v->is_number()) throw ConfigError("'" + where + key + "' must be a number");
    return v->get<double>();
}

int opt_int(const json& obj, const std::string& where, const char* key, int def) {
    const json* v = get(obj, key);
    if (!v) return def;
    if (!v->is_number_integer()) throw ConfigError("'" + where + key + "' must be an integer");
    return v->get<int>();
}

bool opt_bool(const json& obj, const std::string& where, const char* key, bool def) {
    const json* v = get(obj, key);
    if (!v) return def;
    if (!v->is_boolean()) throw ConfigError("'" + where + key + "' must be a boolean");
    return v->get<bool>();
}

std::string opt_string(const json& obj, const std::string& where, const char* key,
                       const std::string& def) {
    const json* v = get(obj, key);
    if (!v) return def;
    if (!v->is_string()) throw ConfigError("'" + where + key + "' must be a string");
    return v->get<std::string>();
}

Complex parse_complex(const json& v, const std::string& where) {
    if (v.is_number()) return Complex{v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex{v[0].get<double>(), v[1].get<double>()};
    throw ConfigError("'" + where + "' must be a number or [re, im] pair");
}

ModeSpec parse_mode(const json& obj, const std::string& where) {
    if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
    reject_unknown(obj, where + ".", {"fock", "coherent"});
    const json* fock = get(obj, "fock");
    const json* coherent = get(obj, "coherent");
    if (!!fock == !!coherent)
        throw ConfigError("'" + where + "' needs exactly one of 'fock' or 'coherent'");
    if (fock) {
        if (!fock->is_number_integer()) throw ConfigError("'" + where + ".fock' must be an integer");
        return ModeSpec::fock(fock->get<int>());
    }
    return ModeSpec::coherent(parse_complex(*coherent, where + ".coherent"));
}

AtomSpec parse_atom(const json& v, const std::string& where) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "e") return AtomSpec::excited();
        if (s == "g") return AtomSpec::ground();
        throw ConfigError("'" + where + "' must be \"e\", \"g\" or an {e, g} amplitude object");
    }
    if (v.is_object()) {
        reject_unknown(v, where + ".", {"e", "g"});
        Complex e{0.0, 0.0}, g{0.0, 0.0};
        if (const json* ev = get(v, "e")) e = parse_complex(*ev, where + ".e");
        if (const json* gv = get(v, "g")) g = parse_complex(*gv, where + ".g");
        return AtomSpec::superposition(e, g);
    }
    throw ConfigError("'" + where + "' must be \"e\", \"g\" or an {e, g} amplitude object");
}

json complex_json(Complex c) {
    if (c.imag() == 0.0) return json(c.real());
    return json::array({c.real(), c.imag()});
}

json mode_json(const ModeSpec& m) {
    json o;
    if (m.kind == ModeSpec::Kind::Fock)
        o["fock"] = m.fock_n;
    else
        o["coherent"] = complex_json(m.alpha);
    return o;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // recover line/column from the byte offset
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("config syntax error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(root, "", {"params", "layout", "state", "grid", "model", "evolve", "compare",
                              "spectrum", "sweep", "validate", "thresholds", "overrides", "output"});

    RunConfig c;

    const json* params = get(root, "params");
    if (!params) throw ConfigError("missing required key 'params'");
    reject_unknown(*params, "params.", {"nu", "omega", "omega0", "lambda", "chi", "cavity_length",
                                        "mirror_mass", "eff_variant", "pole_guard"});
    c.params.nu = need_number(*params, "params.", "nu");
    c.params.lambda = need_number(*params, "params.", "lambda");
    c.params.chi = need_number(*params, "params.", "chi");
    c.params.omega = opt_number(*params, "params.", "omega", 1.0);
    c.params.omega0 = opt_number(*params, "params.", "omega0", 1.0);
    if (get(*params, "cavity_length"))
        c.params.cavity_length = need_number(*params, "params.", "cavity_length");
    if (get(*params, "mirror_mass"))
        c.params.mirror_mass = need_number(*params, "params.", "mirror_mass");
    c.params.eff_variant = eff_variant_from_string(
        opt_string(*params, "params.", "eff_variant", "derivation"));
    c.params.pole_guard = opt_number(*params, "params.", "pole_guard", 1e-6);
    c.params.validate();

    const json* layout = get(root, "layout");
    if (!layout) throw ConfigError("missing required key 'layout'");
    reject_unknown(*layout, "layout.", {"field_dim", "mirror_dim"});
    c.layout.field_dim = opt_int(*layout, "layout.", "field_dim", -1);
    c.layout.mirror_dim = opt_int(*layout, "layout.", "mirror_dim", -1);
    if (c.layout.field_dim < 0) throw ConfigError("missing required key 'layout.field_dim'");
    if (c.layout.mirror_dim < 0) throw ConfigError("missing required key 'layout.mirror_dim'");
    c.layout.validate();

    if (const json* state = get(root, "state")) {
        reject_unknown(*state, "state.", {"atom", "field", "mirror"});
        if (const json* atom = get(*state, "atom")) c.state.atom = parse_atom(*atom, "state.atom");
        if (const json* field = get(*state, "field")) c.state.field = parse_mode(*field, "state.field");
        if (const json* mirror = get(*state, "mirror")) c.state.mirror = parse_mode(*mirror, "state.mirror");
    }

    const json* grid = get(root, "grid");
    if (!grid) throw ConfigError("missing required key 'grid'");
    reject_unknown(*grid, "grid.", {"t_start", "t_end", "steps"});
    c.grid.t_start = opt_number(*grid, "grid.", "t_start", 0.0);
    c.grid.t_end = need_number(*grid, "grid.", "t_end");
    c.grid.steps = opt_int(*grid, "grid.", "steps", 200);
    c.grid.validate();

    c.model = model_from_string(opt_string(root, "", "model", "int"));

    if (const json* ev = get(root, "evolve")) {
        reject_unknown(*ev, "evolve.", {"kind"});
        c.evolve_kind = propagator_kind_from_string(opt_string(*ev, "evolve.", "kind", "exact"));
    }
    if (const json* cm = get(root, "compare")) {
        reject_unknown(*cm, "compare.", {"variant", "both_variants", "operator_distance"});
        c.variant = eff_variant_from_string(
            opt_string(*cm, "compare.", "variant", to_string(c.params.eff_variant)));
        c.both_variants = opt_bool(*cm, "compare.", "both_variants", false);
        c.with_operator_distance = opt_bool(*cm, "compare.", "operator_distance", true);
    } else {
        c.variant = c.params.eff_variant;
    }
    if (const json* sp = get(root, "spectrum")) {
        reject_unknown(*sp, "spectrum.", {"n_max", "levels"});
        c.spectrum.n_max = opt_int(*sp, "spectrum.", "n_max", 8);
        c.spectrum.levels = opt_int(*sp, "spectrum.", "levels", 0);
    }
    if (const json* sw = get(root, "sweep")) {
        reject_unknown(*sw, "sweep.", {"parameter", "values"});
        c.sweep.parameter = opt_string(*sw, "sweep.", "parameter", "chi");
        if (c.sweep.parameter != "chi" && c.sweep.parameter != "lambda" && c.sweep.parameter != "nu")
            throw ConfigError("'sweep.parameter' must be chi, lambda or nu");
        if (const json* vals = get(*sw, "values")) {
            if (!vals->is_array() || vals->empty())
                throw ConfigError("'sweep.values' must be a non-empty array of numbers");
            for (const auto& v : *vals) {
                if (!v.is_number() || !std::isfinite(v.get<double>()))
                    throw ConfigError("'sweep.values' must contain finite numbers");
                c.sweep.values.push_back(v.get<double>());
            }
        }
    }
    if (const json* va = get(root, "validate")) {
        reject_unknown(*va, "validate.", {"draws", "seed"});
        c.validate.draws = opt_int(*va, "validate.", "draws", 20);
        if (c.validate.draws < 1) throw ConfigError("'validate.draws' must be >= 1");
        c.validate.seed = static_cast<std::uint64_t>(opt_int(*va, "validate.", "seed",
                                                             static_cast<int>(c.validate.seed & 0x7fffffff)));
    }
    if (const json* th = get(root, "thresholds")) {
        reject_unknown(*th, "thresholds.", {"leakage", "guard_band", "fidelity_floor", "max_total_dim"});
        c.leakage_threshold = opt_number(*th, "thresholds.", "leakage", 1e-8);
        c.guard_band = opt_int(*th, "thresholds.", "guard_band", 2);
        c.fidelity_floor = opt_number(*th, "thresholds.", "fidelity_floor", 0.0);
        c.max_total_dim = opt_int(*th, "thresholds.", "max_total_dim", 8192);
        if (!(c.leakage_threshold > 0.0)) throw ConfigError("'thresholds.leakage' must be > 0");
        if (c.guard_band < 1) throw ConfigError("'thresholds.guard_band' must be >= 1");
    }
    if (const json* ov = get(root, "overrides")) {
        reject_unknown(*ov, "overrides.", {"regime", "leakage"});
        c.override_regime = opt_bool(*ov, "overrides.", "regime", false);
        c.override_leakage = opt_bool(*ov, "overrides.", "leakage", false);
    }
    if (const json* out = get(root, "output")) {
        reject_unknown(*out, "output.", {"dir", "format"});
        c.output_dir = opt_string(*out, "output.", "dir", ".");
        c.format = output_format_from_string(opt_string(*out, "output.", "format", "csv"));
    }

    if (c.layout.total_dim() > c.max_total_dim)
        throw ConfigError("layout total dimension " + std::to_string(c.layout.total_dim()) +
                          " exceeds thresholds.max_total_dim " + std::to_string(c.max_total_dim));
    if (c.guard_band >= std::min(c.layout.field_dim, c.layout.mirror_dim))
        throw ConfigError("'thresholds.guard_band' must be smaller than both layout dimensions");
    if (c.model == ConfigModel::Int &&
        std::abs(c.params.omega - c.params.omega0) >
            1e-12 * std::max(c.params.omega, c.params.omega0))
        throw ModelAssumptionError(
            "model 'int' assumes the on-resonant atom-field interaction omega = omega0; got omega = " +
            format_double(c.params.omega) + ", omega0 = " + format_double(c.params.omega0));
    return c;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

json resolved_config_json(const RunConfig& c) {
    json root;
    json& p = root["params"];
    p["nu"] = c.params.nu;
    p["omega"] = c.params.omega;
    p["omega0"] = c.params.omega0;
    p["lambda"] = c.params.lambda;
    p["chi"] = c.params.chi;
    if (c.params.cavity_length) p["cavity_length"] = *c.params.cavity_length;
    if (c.params.mirror_mass) p["mirror_mass"] = *c.params.mirror_mass;
    p["eff_variant"] = to_string(c.params.eff_variant);
    p["pole_guard"] = c.params.pole_guard;

    root["layout"] = {{"field_dim", c.layout.field_dim}, {"mirror_dim", c.layout.mirror_dim}};

    json& st = root["state"];
    if (c.state.atom.e_amp == Complex{1.0, 0.0} && c.state.atom.g_amp == Complex{0.0, 0.0})
        st["atom"] = "e";
    else if (c.state.atom.e_amp == Complex{0.0, 0.0} && c.state.atom.g_amp == Complex{1.0, 0.0})
        st["atom"] = "g";
    else
        st["atom"] = {{"e", complex_json(c.state.atom.e_amp)}, {"g", complex_json(c.state.atom.g_amp)}};
    st["field"] = mode_json(c.state.field);
    st["mirror"] = mode_json(c.state.mirror);

    root["grid"] = {{"t_start", c.grid.t_start}, {"t_end", c.grid.t_end}, {"steps", c.grid.steps}};
    root["model"] = model_name(c.model);
    root["evolve"] = {{"kind", to_string(c.evolve_kind)}};
    root["compare"] = {{"variant", to_string(c.variant)},
                       {"both_variants", c.both_variants},
                       {"operator_distance", c.with_operator_distance}};
    root["spectrum"] = {{"n_max", c.spectrum.n_max}, {"levels", c.spectrum.levels}};
    if (!c.sweep.values.empty())
        root["sweep"] = {{"parameter", c.sweep.parameter}, {"values", c.sweep.values}};
    root["validate"] = {{"draws", c.validate.draws}, {"seed", c.validate.seed}};
    root["thresholds"] = {{"leakage", c.leakage_threshold},
                          {"guard_band", c.guard_band},
                          {"fidelity_floor", c.fidelity_floor},
                          {"max_total_dim", c.max_total_dim}};
    root["overrides"] = {{"regime", c.override_regime}, {"leakage", c.override_leakage}};
    root["output"] = {{"dir", c.output_dir}, {"format", to_string(c.format)}};
    return root;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out) throw IoError("short write to '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

std::string csv_table(const std::vector<Column>& columns) {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c].name;
    }
    out += '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().data->size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double((*columns[c].data)[r]);
        }
        out += '\n';
    }
    return out;
}

namespace {

json metadata(const RunConfig& config, const char* command) {
    json meta;
    meta["tool"] = "mfa";
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["config"] = resolved_config_json(config);
    return meta;
}

void write_with_meta(const std::filesystem::path& path, OutputFormat format,
                     const RunConfig& config, const char* command,
                     const std::string& csv, json data) {
    if (format == OutputFormat::Csv) {
        atomic_write(path, csv);
        json side;
        side["metadata"] = metadata(config, command);
        std::filesystem::path meta_path = path;
        meta_path += ".meta.json";
        atomic_write(meta_path, side.dump(2) + "\n");
    } else {
        json root;
        root["metadata"] = metadata(config, command);
        root["data"] = std::move(data);
        atomic_write(path, root.dump(2) + "\n");
    }
}

} // namespace

void write_series(const ObservableSeries& s, const RunConfig& config,
                  const std::filesystem::path& path, OutputFormat format) {
    const std::string csv = csv_table({{"t", &s.times},
                                       {"inversion", &s.inversion},
                                       {"photon", &s.photon},
                                       {"phonon", &s.phonon},
                                       {"quadrature", &s.quadrature},
                                       {"leakage", &s.leakage},
                                       {"energy", &s.energy}});
    json data;
    data["t"] = s.times;
    data["inversion"] = s.inversion;
    data["photon"] = s.photon;
    data["phonon"] = s.phonon;
    data["quadrature"] = s.quadrature;
    data["leakage"] = s.leakage;
    data["energy"] = s.energy;
    data["max_norm_defect"] = s.max_norm_defect;
    data["max_leakage"] = s.max_leakage;
    data["leakage_exceeded"] = s.leakage_exceeded;
    write_with_meta(path, format, config, "evolve", csv, std::move(data));
}

void write_report(const ComparisonReport& r, const RunConfig& config,
                  const std::filesystem::path& path, OutputFormat format) {
    std::vector<Column> cols{{"t", &r.times}, {"fidelity", &r.fidelity}};
    std::vector<double> zeros;
    if (!r.operator_distance.empty()) cols.push_back({"operator_distance", &r.operator_distance});
    if (!r.fidelity_alt.empty()) cols.push_back({"fidelity_alt_variant", &r.fidelity_alt});
    const std::string csv = csv_table(cols);

    json data;
    data["t"] = r.times;
    data["fidelity"] = r.fidelity;
    if (!r.operator_distance.empty()) data["operator_distance"] = r.operator_distance;
    if (!r.fidelity_alt.empty()) {
        data["fidelity_alt_variant"] = r.fidelity_alt;
        data["min_fidelity_alt_variant"] = r.min_fidelity_alt;
    }
    data["min_fidelity"] = r.min_fidelity;
    data["variant"] = to_string(r.variant);
    data["regime"] = {{"max_xi1", r.regime.max_xi1},
                      {"max_xi2", r.regime.max_xi2},
                      {"min_resonance_distance", r.regime.min_resonance_distance},
                      {"min_resonance_n", r.regime.min_resonance_n},
                      {"chi_over_lambda", r.regime.chi_over_lambda},
                      {"nu_over_lambda", r.regime.nu_over_lambda},
                      {"verdict", r.regime.verdict_name()}};
    write_with_meta(path, format, config, "compare", csv, std::move(data));
}

void write_spectrum(const std::vector<SpectrumRow>& rows, const RunConfig& config,
                    const std::filesystem::path& path, OutputFormat format) {
    std::vector<double> n, s, level, analytic, numeric, stable;
    for (const auto& r : rows) {
        n.push_back(r.n);
        s.push_back(r.s);
        level.push_back(r.level);
        analytic.push_back(r.analytic);
        numeric.push_back(r.numeric);
        stable.push_back(r.stable ? 1.0 : 0.0);
    }
    const std::string csv = csv_table({{"n", &n},
                                       {"s", &s},
                                       {"level", &level},
                                       {"analytic", &analytic},
                                       {"numeric", &numeric},
                                       {"stable", &stable}});
    json data = json::array();
    for (const auto& r : rows)
        data.push_back({{"n", r.n},
                        {"s", r.s},
                        {"level", r.level},
                        {"analytic", r.analytic},
                        {"numeric", r.numeric},
                        {"stable", r.stable}});
    write_with_meta(path, format, config, "spectrum", csv, std::move(data));
}

void write_sweep(const std::vector<SweepRow>& rows, const RunConfig& config,
                 const std::filesystem::path& path, OutputFormat format) {
    std::vector<double> value, fid, x1, x2, dist;
    for (const auto& r : rows) {
        value.push_back(r.value);
        fid.push_back(r.min_fidelity);
        x1.push_back(r.max_xi1);
        x2.push_back(r.max_xi2);
        dist.push_back(r.min_resonance_distance);
    }
    std::string csv = "value,min_fidelity,max_xi1,max_xi2,min_resonance_distance,verdict\n";
    for (const auto& r : rows) {
        csv += format_double(r.value);
        csv += ',';
        csv += format_double(r.min_fidelity);
        csv += ',';
        csv += format_double(r.max_xi1);
        csv += ',';
        csv += format_double(r.max_xi2);
        csv += ',';
        csv += format_double(r.min_resonance_distance);
        csv += ',';
        csv += r.verdict;
        csv += '\n';
    }
    json data = json::array();
    for (const auto& r : rows)
        data.push_back({{"value", r.value},
                        {"min_fidelity", r.min_fidelity},
                        {"max_xi1", r.max_xi1},
                        {"max_xi2", r.max_xi2},
                        {"min_resonance_distance", r.min_resonance_distance},
                        {"verdict", r.verdict}});
    write_with_meta(path, format, config, "sweep", csv, std::move(data));
}

void write_validation(const std::vector<CheckResult>& results, const RunConfig& config,
                      const std::filesystem::path& path, OutputFormat format) {
    std::string csv = "check,value,bound_lo,bound_hi,pass\n";
    for (const auto& r : results) {
        csv += r.name;
        csv += ',';
        csv += format_double(r.value);
        csv += ',';
        csv += format_double(r.bound_lo);
        csv += ',';
        csv += format_double(r.bound_hi);
        csv += ',';
        csv += r.pass ? "1" : "0";
        csv += '\n';
    }
    json data = json::array();
    for (const auto& r : results)
        data.push_back({{"check", r.name},
                        {"value", r.value},
                        {"bound_lo", r.bound_lo},
                        {"bound_hi", r.bound_hi},
                        {"pass", r.pass}});
    write_with_meta(path, format, config, "validate", csv, std::move(data));
}

} // namespace mfa

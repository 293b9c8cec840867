#include "cwqpt/cli.hpp"
#include "cwqpt/correspondence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cwqpt {

using Json = nlohmann::ordered_json;

std::string format_number(double x) {
    if (x == 0.0) x = 0.0; // folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 9);
    std::string s(buf, res.ptr);
    if (s == "-0") s = "0";
    return s;
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_double(std::string_view text) {
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (text.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
        throw UsageError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

// JSON numbers carry the same nine significant digits as the CSV output.
double num(double x) { return parse_double(format_number(x)); }

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

ModelId model_arg(const std::string& token) {
    try {
        return parse_model(token);
    } catch (const std::exception&) {
        throw UsageError("unknown model '" + token + "' (lipkin, pairing, jc-rwa, jc-crw, bilayer, heisenberg)");
    }
}

Spin spin_arg(const std::string& token) {
    Spin j;
    try {
        j = Spin::parse(token);
    } catch (const std::exception&) {
        throw UsageError("invalid spin '" + token + "'");
    }
    if (j.twice() < 1) throw UsageError("spin must be positive");
    return j;
}

std::vector<Spin> spin_list_arg(const std::string& text) {
    std::vector<Spin> list;
    for (std::string_view part : split(text, ',')) list.push_back(spin_arg(std::string(part)));
    return list;
}

std::vector<double> energy_list_arg(const std::string& text) {
    std::vector<double> list;
    if (text.empty()) return list;
    for (std::string_view part : split(text, ',')) list.push_back(parse_double(part));
    return list;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

Json census_json(const Census& c) {
    Json j;
    j["minima"] = c.minima;
    j["maxima"] = c.maxima;
    j["saddles"] = c.saddles;
    j["degenerate"] = c.degenerate;
    j["lower_pole"] = kind_name(c.lower_pole);
    j["upper_pole"] = kind_name(c.upper_pole);
    return j;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(num(*v)) : Json(nullptr); }

Json critical_lambda_json(const CriticalLambda& c) {
    Json j;
    j["lambda"] = num(c.lambda);
    j["bracket_low"] = num(c.bracket_low);
    j["bracket_high"] = num(c.bracket_high);
    j["mechanism"] = mechanism_name(c.mechanism);
    j["before"] = census_json(c.before);
    j["after"] = census_json(c.after);
    return j;
}

Json bifurcation_json(const BifurcationReport& report) {
    Json j;
    j["model"] = model_token(report.id);
    Json rows = Json::array();
    for (std::size_t i = 0; i < report.lambda_grid.size(); ++i) {
        Json row;
        row["lambda"] = num(report.lambda_grid[i]);
        row.update(census_json(report.census[i]));
        rows.push_back(row);
    }
    j["census"] = rows;
    Json crit = Json::array();
    for (const CriticalLambda& c : report.critical) crit.push_back(critical_lambda_json(c));
    j["critical"] = crit;
    return j;
}

Json correspondence_json(const CorrespondenceReport& r) {
    Json j;
    j["model"] = model_token(r.spec.id);
    j["g"] = num(r.g);
    j["lambda"] = num(r.lambda);
    j["energy_exponent"] = r.spec.energy_exponent;
    j["classical_ground"] = num(r.classical_ground);
    Json table = Json::array();
    for (const ConvergenceRow& row : r.table) {
        Json t;
        t["j"] = row.j.token();
        t["scaled_ground"] = num(row.scaled_ground);
        t["deviation"] = num(row.deviation);
        table.push_back(t);
    }
    j["convergence"] = table;
    j["scaled_ground"] = num(r.scaled_ground);
    j["deviation"] = num(r.deviation);
    if (r.separatrix) j["separatrix"] = num(*r.separatrix);
    if (r.esqpt_scaled) {
        j["esqpt_scaled"] = num(*r.esqpt_scaled);
        j["esqpt_deviation"] = num(*r.esqpt_deviation);
        j["esqpt_tolerance"] = num(*r.esqpt_tolerance);
        j["esqpt_match"] = *r.esqpt_match;
    }
    return j;
}

Json critical_json(const CriticalMatch& m) {
    Json j;
    j["model"] = model_token(m.id);
    j["j"] = m.j.token();
    Json q;
    q["g"] = num(m.quantum.g);
    q["peak"] = num(m.quantum.peak);
    q["converged"] = m.quantum.converged;
    q["g_start"] = num(m.quantum.grid.front());
    q["g_stop"] = num(m.quantum.grid.back());
    q["g_step"] = num(m.quantum.grid[1] - m.quantum.grid[0]);
    j["quantum"] = q;
    j["mapped_lambda"] = num(m.mapped_lambda);
    Json c;
    c["lambda_c"] = optional_json(m.lambda_c);
    Json crit = Json::array();
    for (const CriticalLambda& cl : m.classical.critical) crit.push_back(critical_lambda_json(cl));
    c["critical"] = crit;
    j["classical"] = c;
    j["difference"] = optional_json(m.difference);
    j["literature_g"] = optional_json(m.literature_g);
    j["literature_lambda"] = optional_json(m.literature_lambda);
    j["note"] = m.note;
    return j;
}

struct Options {
    std::string model;
    std::string j = "100";
    std::string g;
    std::string lambda;
    std::string out;
    std::string energies;
    std::string j_list = "25,50,100";
    int grid = 400;
    int window = 2;
    double tolerance = 1e-3;
    bool critical = false;
};

std::string cmd_spectrum(const Options& o) {
    const ModelSpec spec = model_spec(model_arg(o.model), spin_arg(o.j));
    const SweepResult result = sweep(spec, parse_range(o.g));
    std::ostringstream csv;
    csv << "model,j,g,index,energy\n";
    const std::string prefix = std::string(model_token(spec.id)) + "," + spec.j.token() + ",";
    for (const SweepPoint& pt : result.points) {
        const std::string g = format_number(pt.g);
        for (Eigen::Index i = 0; i < pt.eigenvalues.size(); ++i) {
            csv << prefix << g << ',' << i << ',' << format_number(pt.eigenvalues(i)) << '\n';
        }
    }
    return csv.str();
}

std::string cmd_expectation(const Options& o) {
    const ModelSpec spec = model_spec(model_arg(o.model), spin_arg(o.j));
    const SweepResult result = sweep(spec, parse_range(o.g));
    std::ostringstream csv;
    csv << "model,j,g,observable,value,gap,degenerate\n";
    for (const SweepPoint& pt : result.points) {
        csv << model_token(spec.id) << ',' << spec.j.token() << ',' << format_number(pt.g) << ','
            << observable_name(spec.observable) << ',' << format_number(pt.ground.value) << ','
            << format_number(pt.ground.gap) << ',' << bool_text(pt.ground.degenerate) << '\n';
    }
    return csv.str();
}

std::string cmd_fixed_points(const Options& o) {
    const ModelId id = model_arg(o.model);
    const ClassicalModel model = classical_hamiltonian(id);
    std::ostringstream csv;
    csv << "model,lambda,p,q,energy,kind,on_boundary\n";
    for (double lambda : parse_range(o.lambda)) {
        for (const FixedPoint& fp : find_fixed_points(model, lambda)) {
            csv << model_token(id) << ',' << format_number(lambda) << ',' << format_number(fp.x.p) << ','
                << format_number(fp.x.q) << ',' << format_number(fp.energy) << ',' << kind_name(fp.kind) << ','
                << bool_text(fp.on_boundary) << '\n';
        }
    }
    return csv.str();
}

std::string cmd_portrait(const Options& o) {
    const ModelId id = model_arg(o.model);
    const ClassicalModel model = classical_hamiltonian(id);
    if (o.grid < 100) throw UsageError("--grid must be >= 100");
    const std::vector<double> energies = energy_list_arg(o.energies);
    std::ostringstream csv;
    csv << "model,lambda,orbit_id,energy,seq,p,q\n";
    for (double lambda : parse_range(o.lambda)) {
        const PhasePortrait pp = portrait(model, lambda, o.grid, energies);
        const std::string prefix = std::string(model_token(id)) + "," + format_number(lambda) + ",";
        for (std::size_t orbit = 0; orbit < pp.orbits.size(); ++orbit) {
            const Polyline& line = pp.orbits[orbit];
            const std::string head = prefix + std::to_string(orbit) + "," + format_number(line.energy) + ",";
            for (std::size_t s = 0; s < line.points.size(); ++s) {
                csv << head << s << ',' << format_number(line.points[s].p) << ','
                    << format_number(line.points[s].q) << '\n';
            }
        }
    }
    return csv.str();
}

std::string cmd_scan(const Options& o) {
    const ModelId id = model_arg(o.model);
    const std::vector<double> grid = parse_range(o.lambda);
    if (grid.size() < 11) throw UsageError("--lambda range needs at least 10 steps");
    if (!(o.tolerance > 0.0)) throw UsageError("--tolerance must be positive");
    const BifurcationReport report = bifurcation_scan(classical_hamiltonian(id), grid.front(), grid.back(),
                                                      static_cast<int>(grid.size()) - 1, o.tolerance);
    const ModelSpec spec = model_spec(id, Spin::from_twice(2));
    Json j = bifurcation_json(report);
    j["literature_lambda"] = optional_json(spec.literature_critical_lambda);
    j["note"] = critical_note(id);
    return j.dump(2) + "\n";
}

std::string cmd_correspond(const Options& o, bool& unconverged) {
    const ModelId id = model_arg(o.model);
    if (o.critical) {
        const CriticalMatch match = critical_match(id, spin_arg(o.j));
        unconverged = !match.quantum.converged;
        return critical_json(match).dump(2) + "\n";
    }
    if (o.g.empty()) throw UsageError("correspond needs --g or --critical");
    const double g = parse_double(o.g);
    const std::vector<Spin> js = spin_list_arg(o.j_list);
    for (std::size_t i = 1; i < js.size(); ++i) {
        if (!(js[i].twice() > js[i - 1].twice())) throw UsageError("--j list must be ascending");
    }
    if (js.back().twice() > 800) throw UsageError("--j values must be <= 400");
    if (o.window < 1) throw UsageError("--window must be >= 1");
    CorrespondenceReport report = ground_energy_match(id, g, js);
    const CorrespondenceReport esqpt = esqpt_separatrix_match(id, g, js.back(), o.window);
    report.separatrix = esqpt.separatrix;
    report.esqpt_scaled = esqpt.esqpt_scaled;
    report.esqpt_deviation = esqpt.esqpt_deviation;
    report.esqpt_tolerance = esqpt.esqpt_tolerance;
    report.esqpt_match = esqpt.esqpt_match;
    return correspondence_json(report).dump(2) + "\n";
}

int emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
    if (path.empty() || path == "-") {
        out << text;
        out.flush();
        return exit_ok;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << path << "' for writing\n";
        return exit_io;
    }
    file << text;
    file.close();
    if (!file) {
        err << "error: failed writing '" << path << "'\n";
        return exit_io;
    }
    return exit_ok;
}

} // namespace

std::vector<double> parse_range(std::string_view text) {
    const auto parts = split(text, ':');
    try {
        if (parts.size() == 1) return {parse_double(parts[0])};
        if (parts.size() != 3) throw UsageError("range must be start:stop:step");
        return uniform_grid(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
    } catch (const UsageError&) {
        throw std::invalid_argument("invalid range '" + std::string(text) + "'");
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("invalid range '" + std::string(text) + "': " + e.what());
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum phase transitions of Curie-Weiss models: spectra, classical phase space, correspondence",
                 "cwqpt"};
    app.require_subcommand(1);
    Options o;

    auto add_model = [&o](CLI::App* cmd) {
        cmd->add_option("--model", o.model, "lipkin, pairing, jc-rwa, jc-crw, bilayer or heisenberg")->required();
        cmd->add_option("--out", o.out, "output file (default: standard output)");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues over a coupling range (CSV)");
    add_model(spectrum);
    spectrum->add_option("--j", o.j, "spin, e.g. 100 or 3/2")->capture_default_str();
    spectrum->add_option("--g", o.g, "coupling value or start:stop:step")->required();

    CLI::App* expectation = app.add_subcommand("expectation", "ground-state observable over a coupling range (CSV)");
    add_model(expectation);
    expectation->add_option("--j", o.j, "spin, e.g. 100 or 3/2")->capture_default_str();
    expectation->add_option("--g", o.g, "coupling value or start:stop:step")->required();

    CLI::App* classical = app.add_subcommand("classical", "classical phase-space analysis");
    classical->require_subcommand(1);
    CLI::App* fixed = classical->add_subcommand("fixed-points", "stationary points (CSV)");
    add_model(fixed);
    fixed->add_option("--lambda", o.lambda, "lambda value or start:stop:step")->required();
    CLI::App* portrait_cmd = classical->add_subcommand("portrait", "level sets of H (CSV)");
    add_model(portrait_cmd);
    portrait_cmd->add_option("--lambda", o.lambda, "lambda value or start:stop:step")->required();
    portrait_cmd->add_option("--grid", o.grid, "samples per axis (>= 100)")->capture_default_str();
    portrait_cmd->add_option("--energies", o.energies, "comma-separated levels (default: automatic)");
    CLI::App* scan = classical->add_subcommand("scan", "fixed-point census over lambda (JSON)");
    add_model(scan);
    scan->add_option("--lambda", o.lambda, "start:stop:step")->required();
    scan->add_option("--tolerance", o.tolerance, "bisection bracket width")->capture_default_str();

    CLI::App* correspond = app.add_subcommand("correspond", "quantum-classical correspondence report (JSON)");
    add_model(correspond);
    correspond->add_option("--g", o.g, "coupling");
    correspond->add_option("--j", o.j_list, "ascending spin list")->capture_default_str();
    correspond->add_option("--window", o.window, "ESQPT smoothing half-width")->capture_default_str();
    correspond->add_flag("--critical", o.critical, "pair quantum and classical critical couplings");
    correspond->add_option("--critical-j", o.j, "spin used with --critical")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
        return exit_usage;
    }

    CLI::App* active = nullptr;
    try {
        std::string text;
        if (spectrum->parsed()) {
            active = spectrum;
            text = cmd_spectrum(o);
        } else if (expectation->parsed()) {
            active = expectation;
            text = cmd_expectation(o);
        } else if (fixed->parsed()) {
            active = fixed;
            text = cmd_fixed_points(o);
        } else if (portrait_cmd->parsed()) {
            active = portrait_cmd;
            text = cmd_portrait(o);
        } else if (scan->parsed()) {
            active = scan;
            text = cmd_scan(o);
        } else {
            active = correspond;
            bool unconverged = false;
            text = cmd_correspond(o, unconverged);
            const int code = emit(text, o.out, out, err);
            if (code != exit_ok) return code;
            if (unconverged) {
                err << "error: susceptibility peak sits on the edge of the coupling grid\n";
                return exit_numerical;
            }
            return exit_ok;
        }
        return emit(text, o.out, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << active->help();
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << active->help();
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}

} // namespace cwqpt

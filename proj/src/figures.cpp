#include "dma/figures.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dma/errors.hpp"
#include "dma/gain.hpp"
#include "dma/specfun.hpp"

namespace dma::figures {

namespace {

constexpr const char *kToolVersion = "1.0.0";

std::string fmt(double v, const char *spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Full-precision formatting for manifests, so re-ingestion reproduces the
// run bit-exactly.
std::string format_exact(double v) { return fmt(v, "%.17g"); }

std::string mode_name(DistanceMode m) {
    switch (m) {
    case DistanceMode::Exact: return "exact";
    case DistanceMode::Fresnel: return "fresnel";
    case DistanceMode::FresnelNoBilinear: return "fresnel_nobilinear";
    }
    return "exact";
}

std::string join_list(const std::vector<double> &values) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += ",";
        out += format_exact(values[k]);
    }
    return out;
}

std::vector<double> parse_list(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        out.push_back(v);
    }
    return out;
}

void append_run_manifest(FigureBundle &bundle, const RunConfig &cfg) {
    auto &m = bundle.manifest;
    m.emplace_back("ne", std::to_string(cfg.array.n_elements));
    m.emplace_back("nm", std::to_string(cfg.array.n_microstrips));
    m.emplace_back("de", format_exact(cfg.array.d_e));
    m.emplace_back("dm", format_exact(cfg.array.d_m));
    m.emplace_back("lambda", format_exact(cfg.array.lambda));
    m.emplace_back("alpha", format_exact(cfg.array.alpha));
    m.emplace_back("beta", format_exact(cfg.array.beta));
    m.emplace_back("pb", format_exact(cfg.array.power_budget));
    m.emplace_back("r", format_exact(cfg.user.r));
    m.emplace_back("phi", format_exact(cfg.user.phi));
    m.emplace_back("theta", format_exact(cfg.user.theta));
    m.emplace_back("delta", format_exact(cfg.delta));
    m.emplace_back("sweep_start", format_exact(cfg.sweep.start));
    m.emplace_back("sweep_stop", format_exact(cfg.sweep.stop));
    m.emplace_back("sweep_step", format_exact(cfg.sweep.step));
    if (!cfg.alpha_list.empty())
        m.emplace_back("alpha_list", join_list(cfg.alpha_list));
    if (!cfg.delta_list.empty())
        m.emplace_back("delta_list", join_list(cfg.delta_list));
    m.emplace_back("mode", mode_name(cfg.mode));
    m.emplace_back("x_source",
                   cfg.x_source == beamdepth::XSource::Numeric ? "numeric" : "model");
    m.emplace_back("refit", cfg.refit ? "1" : "0");
    m.emplace_back("format", cfg.format == OutputFormat::Json ? "json" : "csv");
}

ArrayConfig figure1_array() {
    // N_e = 200, N_m = 10, d_e = d_m = lambda/2, lambda = 1 cm.
    return ArrayConfig::make(10, 200, 0.005, 0.005, 0.01, 0.0, 1.0);
}

} // namespace

std::string format_number(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        v = 0.0; // normalize -0
    return fmt(v, "%.9g");
}

std::vector<double> SweepSpec::values() const {
    if (!(step > 0.0))
        throw ConfigError("sweep step must be positive");
    if (stop < start)
        throw ConfigError("sweep stop must be >= start");
    std::vector<double> out;
    const int count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
        out.push_back(start + k * step);
    return out;
}

RunConfig RunConfig::figure1_defaults() {
    RunConfig cfg;
    cfg.array = figure1_array();
    cfg.user = {7.0, std::numbers::pi / 3.0, std::numbers::pi / 2.0};
    cfg.sweep = {0.0, 10.0, 0.25};
    cfg.alpha_list = {0.0, 2.0, 4.0, 8.0, 12.0};
    cfg.mode = DistanceMode::Exact;
    return cfg;
}

RunConfig RunConfig::figure2_defaults() {
    RunConfig cfg;
    cfg.array = figure1_array();
    cfg.sweep = {0.0, 15.0, 0.1}; // w grid
    cfg.delta_list = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    cfg.refit = true;
    return cfg;
}

RunConfig RunConfig::figure3_defaults() {
    RunConfig cfg;
    cfg.array = figure1_array();
    cfg.user = {30.0, std::numbers::pi / 3.0, std::numbers::pi / 3.0};
    cfg.delta = 0.9;
    cfg.sweep = {0.0, 15.0, 0.1}; // w grid
    cfg.x_source = beamdepth::XSource::FittedModel;
    return cfg;
}

void apply_config_line(RunConfig &cfg, const std::string &key, const std::string &value) {
    try {
        if (key == "ne") cfg.array.n_elements = std::stoi(value);
        else if (key == "nm") cfg.array.n_microstrips = std::stoi(value);
        else if (key == "de") cfg.array.d_e = std::stod(value);
        else if (key == "dm") cfg.array.d_m = std::stod(value);
        else if (key == "lambda") cfg.array.lambda = std::stod(value);
        else if (key == "alpha") cfg.array.alpha = std::stod(value);
        else if (key == "beta") cfg.array.beta = std::stod(value);
        else if (key == "pb") cfg.array.power_budget = std::stod(value);
        else if (key == "r") cfg.user.r = std::stod(value);
        else if (key == "phi") cfg.user.phi = std::stod(value);
        else if (key == "theta") cfg.user.theta = std::stod(value);
        else if (key == "delta") cfg.delta = std::stod(value);
        else if (key == "sweep_start") cfg.sweep.start = std::stod(value);
        else if (key == "sweep_stop") cfg.sweep.stop = std::stod(value);
        else if (key == "sweep_step") cfg.sweep.step = std::stod(value);
        else if (key == "alpha_list") cfg.alpha_list = parse_list(value);
        else if (key == "delta_list") cfg.delta_list = parse_list(value);
        else if (key == "refit") cfg.refit = value == "1" || value == "true";
        else if (key == "outdir") cfg.outdir = value;
        else if (key == "mode") {
            if (value == "exact") cfg.mode = DistanceMode::Exact;
            else if (value == "fresnel") cfg.mode = DistanceMode::Fresnel;
            else if (value == "fresnel_nobilinear") cfg.mode = DistanceMode::FresnelNoBilinear;
            else throw ConfigError("unknown distance mode '" + value + "'");
        } else if (key == "x_source") {
            if (value == "numeric") cfg.x_source = beamdepth::XSource::Numeric;
            else if (value == "model") cfg.x_source = beamdepth::XSource::FittedModel;
            else throw ConfigError("unknown x_source '" + value + "'");
        } else if (key == "format") {
            if (value == "csv") cfg.format = OutputFormat::Csv;
            else if (value == "json") cfg.format = OutputFormat::Json;
            else throw ConfigError("unknown output format '" + value + "'");
        } else if (key.rfind("manifest.", 0) == 0) {
            // tool version / timestamp entries; not run parameters
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &) {
        throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
    }
}

RunConfig parse_config_file(const std::filesystem::path &path, const RunConfig &base) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path.string());
    RunConfig cfg = base;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        try {
            apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError &err) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " +
                              err.what());
        }
    }
    return cfg;
}

FigureBundle gain_curve(const RunConfig &cfg) {
    cfg.array.validate();
    FigureBundle bundle;

    Table table;
    table.name = "gain";
    table.column_comments = {
        "alpha: microstrip attenuation coefficient [1/m]",
        "w: half-aperture attenuation exponent 0.5 N_e d_e alpha",
        "dr: range mismatch between focus and user [m]",
        "oracle: brute-force relative gain |a^H a_DMA|^2 / (eta N)^2",
        "lemma1: analytic approximation eta^-2 K^2(t_z,w) D^2(t_y)",
        "lemma2: reduced approximation eta^-2 K^2(t_z,w)",
    };
    table.columns = {"alpha", "w", "dr", "oracle", "lemma1", "lemma2"};

    const std::vector<double> drs = cfg.sweep.values();
    std::vector<double> alphas = cfg.alpha_list;
    if (alphas.empty())
        alphas.push_back(cfg.array.alpha);

    for (const double alpha : alphas) {
        ArrayConfig arr = cfg.array;
        arr.alpha = alpha;
        const double w = gain::w_param(arr);
        for (const double dr : drs) {
            SphericalPosition focus = cfg.user;
            focus.r = cfg.user.r + dr;
            table.rows.push_back({
                format_number(alpha),
                format_number(w),
                format_number(dr),
                format_number(gain::relative_gain_oracle(arr, cfg.user, focus, cfg.mode)),
                format_number(gain::relative_gain_lemma1(arr, cfg.user, dr)),
                format_number(gain::relative_gain_lemma2(arr, cfg.user, dr).value),
            });
        }
    }
    bundle.tables.push_back(std::move(table));

    std::ostringstream plt;
    plt << "# gnuplot script; run from the output directory\n"
        << "set xlabel 'range mismatch {/Symbol D}r [m]'\n"
        << "set ylabel 'relative beamforming gain'\n"
        << "set yrange [0:1.05]\n"
        << "set key top right\n"
        << "plot for [a in '" ;
    for (std::size_t k = 0; k < alphas.size(); ++k)
        plt << (k ? " " : "") << fmt(alphas[k], "%g");
    plt << "'] 'DATA.csv' using ($1 == a ? $3 : 1/0):4 with points title 'oracle a='.a, \\\n"
        << "     for [a in '";
    for (std::size_t k = 0; k < alphas.size(); ++k)
        plt << (k ? " " : "") << fmt(alphas[k], "%g");
    plt << "'] 'DATA.csv' using ($1 == a ? $3 : 1/0):6 with lines title 'lemma2 a='.a\n";
    bundle.plot_script = plt.str();

    append_run_manifest(bundle, cfg);
    return bundle;
}

FigureBundle xdelta(const RunConfig &cfg) {
    FigureBundle bundle;
    const std::vector<double> ws = cfg.sweep.values();
    std::vector<double> deltas = cfg.delta_list;
    if (deltas.empty())
        deltas.push_back(cfg.delta);

    const beamdepth::DepthFitModel published = beamdepth::DepthFitModel::published();
    beamdepth::FitReport refit;
    if (cfg.refit)
        refit = beamdepth::fit_depth_model(ws, deltas, published.w0);

    Table table;
    table.name = "xdelta";
    table.column_comments = {
        "delta: gain fraction defining the depth limit",
        "w: half-aperture attenuation exponent",
        "x_numeric: bisection solution of K^2(x,w) = delta K^2(0,w)",
        "offset: x_numeric minus its lossless anchor x_numeric(w=0)",
        "x_model: piecewise-linear model with published coefficients",
    };
    table.columns = {"delta", "w", "x_numeric", "offset", "x_model"};
    if (cfg.refit) {
        table.column_comments.push_back("x_refit: model refit on this grid");
        table.columns.push_back("x_refit");
    }

    std::vector<double> mse_published(deltas.size(), 0.0);
    for (std::size_t di = 0; di < deltas.size(); ++di) {
        const double d = deltas[di];
        const double x0 = beamdepth::solve_x_delta(d, 0.0);
        for (const double w : ws) {
            const double xn = beamdepth::solve_x_delta(d, w);
            const double xm = beamdepth::model_x_delta(published, d, w, x0);
            std::vector<std::string> row = {
                format_number(d), format_number(w), format_number(xn),
                format_number(xn - x0), format_number(xm)};
            if (cfg.refit)
                row.push_back(format_number(
                    beamdepth::model_x_delta(refit.model, d, w, x0)));
            table.rows.push_back(std::move(row));
            mse_published[di] += (xm - xn) * (xm - xn);
        }
        mse_published[di] /= static_cast<double>(ws.size());
    }
    bundle.tables.push_back(std::move(table));

    Table mse;
    mse.name = "mse";
    mse.column_comments = {
        "delta: gain fraction",
        "mse_published: mean squared model error over the w grid, published coefficients",
    };
    mse.columns = {"delta", "mse_published"};
    if (cfg.refit) {
        mse.column_comments.push_back("mse_refit: same for the refit coefficients");
        mse.columns.push_back("mse_refit");
    }
    for (std::size_t di = 0; di < deltas.size(); ++di) {
        std::vector<std::string> row = {format_number(deltas[di]),
                                        format_number(mse_published[di])};
        if (cfg.refit)
            row.push_back(format_number(refit.per_delta_mse[di]));
        mse.rows.push_back(std::move(row));
    }
    bundle.tables.push_back(std::move(mse));

    if (cfg.refit) {
        Table coefs;
        coefs.name = "coefficients";
        coefs.column_comments = {"coefficient: model parameter name",
                                 "published: reference coefficient value", "refit: refit value"};
        coefs.columns = {"coefficient", "published", "refit"};
        const auto &m = refit.model;
        const beamdepth::DepthFitModel &p = published;
        coefs.rows = {
            {"a0_c", format_number(p.a0_c), format_number(m.a0_c)},
            {"a0_d", format_number(p.a0_d), format_number(m.a0_d)},
            {"a1_c", format_number(p.a1_c), format_number(m.a1_c)},
            {"a1_d", format_number(p.a1_d), format_number(m.a1_d)},
            {"b0_c", format_number(p.b0_c), format_number(m.b0_c)},
            {"b0_d", format_number(p.b0_d), format_number(m.b0_d)},
            {"b1_c", format_number(p.b1_c), format_number(m.b1_c)},
            {"b1_d", format_number(p.b1_d), format_number(m.b1_d)},
            {"w0", format_number(p.w0), format_number(m.w0)},
        };
        bundle.tables.push_back(std::move(coefs));
    }

    std::ostringstream plt;
    plt << "# gnuplot script; run from the output directory\n"
        << "set xlabel 'w'\n"
        << "set ylabel 'x_{/Symbol d}(w)'\n"
        << "set key top left\n"
        << "plot for [d in '";
    for (std::size_t k = 0; k < deltas.size(); ++k)
        plt << (k ? " " : "") << fmt(deltas[k], "%g");
    plt << "'] 'DATA.csv' using ($1 == d ? $2 : 1/0):3 with points title 'numeric d='.d, \\\n"
        << "     for [d in '";
    for (std::size_t k = 0; k < deltas.size(); ++k)
        plt << (k ? " " : "") << fmt(deltas[k], "%g");
    plt << "'] 'DATA.csv' using ($1 == d ? $2 : 1/0):5 with lines title 'model d='.d\n";
    bundle.plot_script = plt.str();

    append_run_manifest(bundle, cfg);
    return bundle;
}

FigureBundle depth(const RunConfig &cfg) {
    cfg.array.validate();
    FigureBundle bundle;

    Table table;
    table.name = "depth";
    table.column_comments = {
        "w: half-aperture attenuation exponent",
        "x_delta: depth-limit coordinate used (numeric or model per manifest)",
        "critical_range: r at which the far limit diverges [m]",
        "delta_minus: near depth limit [m]",
        "delta_plus: far depth limit [m]; 'inf' once r >= critical_range",
        "gain_minus_lemma2 / gain_plus_lemma2: Lemma-2 gain at the limits",
        "gain_minus_oracle / gain_plus_oracle: brute-force gain at the limits",
        "plus-side gains are 'nan' where delta_plus is unbounded",
    };
    table.columns = {"w",
                     "x_delta",
                     "critical_range",
                     "delta_minus",
                     "delta_plus",
                     "gain_minus_lemma2",
                     "gain_plus_lemma2",
                     "gain_minus_oracle",
                     "gain_plus_oracle"};

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    for (const double w : cfg.sweep.values()) {
        const auto limits =
            beamdepth::depth_limits(cfg.array, cfg.user, cfg.delta, w, cfg.x_source);
        const auto gains =
            beamdepth::verify_depth_limits(cfg.array, cfg.user, cfg.delta, w, cfg.x_source);
        table.rows.push_back({
            format_number(w),
            format_number(limits.x_delta),
            format_number(limits.critical_range),
            format_number(limits.delta_minus),
            format_number(limits.delta_plus ? *limits.delta_plus : inf),
            format_number(gains.lemma2_at_minus),
            format_number(gains.lemma2_at_plus ? *gains.lemma2_at_plus : nan),
            format_number(gains.oracle_at_minus),
            format_number(gains.oracle_at_plus ? *gains.oracle_at_plus : nan),
        });
    }
    bundle.tables.push_back(std::move(table));

    bundle.plot_script =
        "# gnuplot script; run from the output directory\n"
        "set xlabel 'w'\n"
        "set ylabel 'beam depth limit [m]'\n"
        "set y2label 'relative gain at the limits'\n"
        "set y2range [0.8:1.0]\n"
        "set ytics nomirror\n"
        "set y2tics\n"
        "plot 'DATA.csv' using 1:4 with lines title '{/Symbol D}^-', \\\n"
        "     'DATA.csv' using 1:5 with lines title '{/Symbol D}^+', \\\n"
        "     'DATA.csv' using 1:8 axes x1y2 with lines dt 2 title 'gain at -', \\\n"
        "     'DATA.csv' using 1:9 axes x1y2 with lines dt 2 title 'gain at +'\n";

    append_run_manifest(bundle, cfg);
    return bundle;
}

FigureBundle reproduce(int figure) {
    FigureBundle bundle;
    switch (figure) {
    case 1:
        bundle = gain_curve(RunConfig::figure1_defaults());
        break;
    case 2:
        bundle = xdelta(RunConfig::figure2_defaults());
        break;
    case 3:
        bundle = depth(RunConfig::figure3_defaults());
        break;
    default:
        throw ConfigError("unknown figure id " + std::to_string(figure) +
                          " (expected 1, 2 or 3)");
    }
    bundle.manifest.emplace_back("manifest.figure", std::to_string(figure));
    return bundle;
}

namespace {

void write_table_csv(const Table &table, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary); // binary keeps \n on every platform
    for (const auto &comment : table.column_comments)
        out << "# " << comment << "\n";
    for (std::size_t k = 0; k < table.columns.size(); ++k)
        out << (k ? "," : "") << table.columns[k];
    out << "\n";
    for (const auto &row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k)
            out << (k ? "," : "") << row[k];
        out << "\n";
    }
}

nlohmann::json cell_to_json(const std::string &cell) {
    char *end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end && *end == '\0' && !cell.empty() && std::isfinite(v))
        return v;
    return cell; // "inf", "nan", names
}

} // namespace

std::vector<std::filesystem::path> write_bundle(const FigureBundle &bundle,
                                                const std::filesystem::path &outdir,
                                                const std::string &stem,
                                                OutputFormat format) {
    std::filesystem::create_directories(outdir);
    std::vector<std::filesystem::path> written;

    for (std::size_t t = 0; t < bundle.tables.size(); ++t) {
        const auto name = t == 0 ? stem + ".csv" : stem + "_" + bundle.tables[t].name + ".csv";
        write_table_csv(bundle.tables[t], outdir / name);
        written.push_back(outdir / name);
    }

    {
        std::ofstream plt(outdir / (stem + ".plt"), std::ios::binary);
        std::string script = bundle.plot_script;
        // the scripts reference their main data file as DATA.csv
        const std::string placeholder = "DATA.csv";
        const std::string target = stem + ".csv";
        for (std::size_t p = script.find(placeholder); p != std::string::npos;
             p = script.find(placeholder, p + target.size()))
            script.replace(p, placeholder.size(), target);
        plt << script;
        written.push_back(outdir / (stem + ".plt"));
    }

    {
        std::ofstream man(outdir / (stem + ".manifest"), std::ios::binary);
        for (const auto &[key, value] : bundle.manifest)
            man << key << "=" << value << "\n";
        man << "manifest.tool_version=" << kToolVersion << "\n";
        man << "manifest.generated_at=" << std::time(nullptr) << "\n";
        written.push_back(outdir / (stem + ".manifest"));
    }

    if (format == OutputFormat::Json) {
        nlohmann::json doc;
        doc["tables"] = nlohmann::json::array();
        for (const auto &table : bundle.tables) {
            nlohmann::json jt;
            jt["name"] = table.name;
            jt["columns"] = table.columns;
            jt["rows"] = nlohmann::json::array();
            for (const auto &row : table.rows) {
                nlohmann::json jr = nlohmann::json::array();
                for (const auto &cell : row)
                    jr.push_back(cell_to_json(cell));
                jt["rows"].push_back(std::move(jr));
            }
            doc["tables"].push_back(std::move(jt));
        }
        nlohmann::json jm;
        for (const auto &[key, value] : bundle.manifest)
            jm[key] = value;
        doc["manifest"] = std::move(jm);
        std::ofstream js(outdir / (stem + ".json"), std::ios::binary);
        js << doc.dump(2) << "\n";
        written.push_back(outdir / (stem + ".json"));
    }
    return written;
}

} // namespace dma::figures

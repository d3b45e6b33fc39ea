// dma-nearfield: near-field DMA beam-focusing data tool.
//
// Subcommands write CSV tables (plus gnuplot script and run manifest) into
// --outdir. Exit codes: 0 success, 2 usage/config error, 3 numeric failure
// (no bisection root, undefined beam depth).

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "dma/beamdepth.hpp"
#include "dma/errors.hpp"
#include "dma/figures.hpp"

namespace {

using dma::figures::FigureBundle;
using dma::figures::RunConfig;

struct CommonOpts {
    std::string config_file;
    std::string outdir;
    std::string format;
};

void add_common(CLI::App *cmd, CommonOpts &opts) {
    cmd->add_option("--config", opts.config_file,
                    "key=value config file (a run manifest also works)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--outdir", opts.outdir, "output directory (default '.')");
    cmd->add_option("--format", opts.format, "csv | json (json adds a .json mirror)");
}

RunConfig resolve(const RunConfig &defaults, const CommonOpts &opts) {
    RunConfig cfg = defaults;
    if (!opts.config_file.empty())
        cfg = dma::figures::parse_config_file(opts.config_file, cfg);
    if (!opts.outdir.empty())
        cfg.outdir = opts.outdir;
    if (const char *env = std::getenv("DMA_NEARFIELD_OUTDIR"))
        cfg.outdir = env;
    if (!opts.format.empty())
        dma::figures::apply_config_line(cfg, "format", opts.format);
    return cfg;
}

void parse_range(const std::string &text, dma::figures::SweepSpec &sweep) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw dma::ConfigError("range must be start:step:stop, got '" + text + "'");
    try {
        sweep.start = std::stod(text.substr(0, c1));
        sweep.step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        sweep.stop = std::stod(text.substr(c2 + 1));
    } catch (const std::exception &) {
        throw dma::ConfigError("invalid range '" + text + "'");
    }
}

std::vector<double> parse_csv_list(const std::string &text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma - pos);
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception &) {
            throw dma::ConfigError("invalid list entry '" + item + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

int emit(const FigureBundle &bundle, const RunConfig &cfg, const std::string &stem) {
    const auto files = dma::figures::write_bundle(bundle, cfg.outdir, stem, cfg.format);
    for (const auto &f : files)
        std::cout << f.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"near-field beam focusing with a lossy dynamic metasurface antenna"};
    app.require_subcommand(1);

    CommonOpts gain_opts, xdelta_opts, depth_opts, fit_opts, repro_opts;
    std::string alpha_list, dr_range, delta_list, w_range;
    double r_override = -1.0, delta_override = -1.0;
    int figure = 0;
    bool do_fit = false;

    auto *gain = app.add_subcommand("gain-curve",
                                    "relative gain vs range mismatch, per attenuation");
    add_common(gain, gain_opts);
    gain->add_option("--alpha-list", alpha_list, "comma-separated attenuations [1/m]");
    gain->add_option("--dr-range", dr_range, "range-mismatch sweep start:step:stop [m]");

    auto *xd = app.add_subcommand("xdelta", "numeric x_delta(w) vs the linear model");
    add_common(xd, xdelta_opts);
    xd->add_option("--delta-list", delta_list, "comma-separated gain fractions");
    xd->add_option("--w-range", w_range, "w sweep start:step:stop");
    xd->add_flag("--fit", do_fit, "also refit the model on this grid");

    auto *dp = app.add_subcommand("depth", "beam-depth limits vs w");
    add_common(dp, depth_opts);
    dp->add_option("--r", r_override, "focal range [m]");
    dp->add_option("--delta", delta_override, "gain fraction defining the limits");
    dp->add_option("--w-range", w_range, "w sweep start:step:stop");

    auto *fit = app.add_subcommand("fit", "refit the x_delta model and report MSE");
    add_common(fit, fit_opts);
    fit->add_option("--delta-list", delta_list, "comma-separated gain fractions");
    fit->add_option("--w-range", w_range, "w sweep start:step:stop");

    auto *rp = app.add_subcommand("reproduce", "emit a published-figure dataset");
    add_common(rp, repro_opts);
    rp->add_option("--figure", figure, "figure id: 1, 2 or 3")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gain->parsed()) {
            RunConfig cfg = resolve(RunConfig::figure1_defaults(), gain_opts);
            if (!alpha_list.empty())
                cfg.alpha_list = parse_csv_list(alpha_list);
            if (!dr_range.empty())
                parse_range(dr_range, cfg.sweep);
            return emit(dma::figures::gain_curve(cfg), cfg, "gain_curve");
        }
        if (xd->parsed()) {
            RunConfig cfg = resolve(RunConfig::figure2_defaults(), xdelta_opts);
            cfg.refit = cfg.refit || do_fit;
            if (!delta_list.empty())
                cfg.delta_list = parse_csv_list(delta_list);
            if (!w_range.empty())
                parse_range(w_range, cfg.sweep);
            return emit(dma::figures::xdelta(cfg), cfg, "xdelta");
        }
        if (dp->parsed()) {
            RunConfig cfg = resolve(RunConfig::figure3_defaults(), depth_opts);
            if (r_override > 0.0)
                cfg.user.r = r_override;
            if (delta_override > 0.0)
                cfg.delta = delta_override;
            if (!w_range.empty())
                parse_range(w_range, cfg.sweep);
            return emit(dma::figures::depth(cfg), cfg, "depth");
        }
        if (fit->parsed()) {
            RunConfig cfg = resolve(RunConfig::figure2_defaults(), fit_opts);
            cfg.refit = true;
            if (!delta_list.empty())
                cfg.delta_list = parse_csv_list(delta_list);
            if (!w_range.empty())
                parse_range(w_range, cfg.sweep);
            return emit(dma::figures::xdelta(cfg), cfg, "fit");
        }
        if (rp->parsed()) {
            RunConfig defaults;
            switch (figure) {
            case 1: defaults = RunConfig::figure1_defaults(); break;
            case 2: defaults = RunConfig::figure2_defaults(); break;
            case 3: defaults = RunConfig::figure3_defaults(); break;
            default: throw dma::ConfigError("unknown figure id " + std::to_string(figure));
            }
            RunConfig cfg = resolve(defaults, repro_opts);
            FigureBundle bundle;
            switch (figure) {
            case 1: bundle = dma::figures::gain_curve(cfg); break;
            case 2: bundle = dma::figures::xdelta(cfg); break;
            default: bundle = dma::figures::depth(cfg); break;
            }
            bundle.manifest.emplace_back("manifest.figure", std::to_string(figure));
            return emit(bundle, cfg, "fig" + std::to_string(figure));
        }
    } catch (const dma::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const dma::NoRootInBracket &e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const dma::UndefinedBeamDepth &e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

#ifndef DMA_FIGURES_HPP
#define DMA_FIGURES_HPP

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "dma/array.hpp"
#include "dma/beamdepth.hpp"

namespace dma::figures {

// One column-labeled numeric table. Cells are pre-formatted strings so that
// unbounded depth limits serialize as the literal "inf" and output stays
// byte-identical across runs.
struct Table {
    std::string name;
    std::vector<std::string> column_comments; // emitted as '# ...' lines
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct FigureBundle {
    std::vector<Table> tables;
    std::string plot_script; // gnuplot-dialect text; data files are the contract
    // Parameter snapshot; re-ingesting it reproduces the run byte-for-byte.
    std::vector<std::pair<std::string, std::string>> manifest;
};

// Fixed 9-significant-digit formatting, '.' decimal separator; non-finite
// positive values map to "inf".
std::string format_number(double v);

struct SweepSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    std::vector<double> values() const; // validates step > 0, stop >= start
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
    ArrayConfig array;
    SphericalPosition user;
    SweepSpec sweep;
    std::vector<double> alpha_list; // gain-curve only
    std::vector<double> delta_list; // xdelta only
    double delta = 0.9;
    DistanceMode mode = DistanceMode::Exact;
    beamdepth::XSource x_source = beamdepth::XSource::FittedModel;
    bool refit = false;
    OutputFormat format = OutputFormat::Csv;
    std::filesystem::path outdir = ".";

    static RunConfig figure1_defaults();
    static RunConfig figure2_defaults();
    static RunConfig figure3_defaults();
};

// key=value config parsing with line-numbered diagnostics (ConfigError).
// Unknown keys starting with "manifest." are ignored, so a manifest file is
// itself a valid config.
RunConfig parse_config_file(const std::filesystem::path &path, const RunConfig &base);
void apply_config_line(RunConfig &cfg, const std::string &key, const std::string &value);

// Range-mismatch gain curves (oracle / Lemma 1 / Lemma 2 per alpha).
FigureBundle gain_curve(const RunConfig &cfg);
// Numeric x_delta(w) vs the piecewise-linear model (published coefficients,
// plus a fresh refit when cfg.refit), with per-delta MSE rows.
FigureBundle xdelta(const RunConfig &cfg);
// Beam-depth limits vs w, with the realized gains at the limits.
FigureBundle depth(const RunConfig &cfg);

// The three reproduction suites with each figure's published parameters.
// Throws ConfigError for an unknown figure id.
FigureBundle reproduce(int figure);

// Writes <stem>.csv (plus one CSV per extra table, suffixed by table name),
// <stem>.plt and <stem>.manifest; with Json format also a .json mirror of
// every table. Returns the list of files written.
std::vector<std::filesystem::path> write_bundle(const FigureBundle &bundle,
                                                const std::filesystem::path &outdir,
                                                const std::string &stem,
                                                OutputFormat format = OutputFormat::Csv);

} // namespace dma::figures

#endif

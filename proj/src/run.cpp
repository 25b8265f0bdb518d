#include "qfc/run.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "qfc/error.hpp"
#include "qfc/green.hpp"
#include "qfc/io.hpp"
#include "qfc/schmidt.hpp"

namespace qfc {

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidArgument*>(&e)) return kExitConfig;
    if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    return kExitFailure;
}

namespace {

std::vector<double> displacements(const RunConfig::Experiment& e) {
    std::vector<double> x(e.points);
    for (std::size_t i = 0; i < e.points; ++i) {
        x[i] = e.start_nm + (e.stop_nm - e.start_nm) * static_cast<double>(i) / static_cast<double>(e.points - 1);
    }
    return x;
}

std::vector<ShapeSpec> hg_family(double bandwidth) {
    return {ShapeSpec{ShapeFamily::hg0, 0, bandwidth}, ShapeSpec{ShapeFamily::hg1, 1, bandwidth},
            ShapeSpec{ShapeFamily::hg2, 2, bandwidth}};
}

DelayScanOptions delay_options(const RunConfig& c, unsigned threads) {
    return {c.experiment.s_range_fs, c.experiment.r_range_fs, c.experiment.points, threads};
}

ExperimentResult schmidt_modes(const RunConfig& c, unsigned threads) {
    const auto stage = restrict_stage(build_stage(c), c.numerics.n_eff);
    const auto sd = schmidt_decompose(assemble(stage, threads), c.numerics.n_kept);
    const auto rep = selectivity(sd);
    ExperimentResult res{"schmidt_modes", {"mode", "singular_value", "ce", "pump_overlap"}, {}, {}};
    const Envelope pump = normalized(stage.pump);
    for (std::size_t n = 0; n < sd.n_kept; ++n) {
        const auto& psi = sd.input_modes[n];
        const Envelope p(psi.grid(), psi.band(), psi.carrier_wavelength_nm(), pump.samples());
        const double overlap = std::norm(inner_product(psi, p));
        res.add_row({static_cast<double>(n), sd.singulars[n], sd.singulars[n] * sd.singulars[n], overlap});
    }
    res.scalars = {{"ce_target", rep.ce_target},
                   {"purity", rep.purity},
                   {"selectivity", rep.selectivity},
                   {"pump_overlap", res.rows.front()[3]},
                   {"discarded_weight", sd.discarded_weight()}};
    return res;
}

}  // namespace

ExperimentResult execute(const RunConfig& c, unsigned threads) {
    const auto& e = c.experiment;
    const SweepOptions sweep{threads, c.numerics.n_eff};
    if (e.name == "fringe_scan") {
        const auto stage = build_stage(c);
        const auto xs = displacements(e);
        return fringe_experiment(build_cascade(c, stage), e.mirror, xs, build_signal(c, stage),
                                 FringeScanOptions{e.s_to_r_step_ratio, threads});
    }
    if (e.name == "peak_ce_matrix") {
        auto stage = build_stage(c);
        const auto pumps = hg_family(c.pump.bandwidth);
        const auto signals = hg_family(c.signal.bandwidth);
        return peak_ce_matrix(stage, pumps, signals, PeakCeOptions{e.min_strength, e.max_strength, sweep});
    }
    if (e.name == "delay_scan_widths") {
        const auto stage = build_stage(c);
        auto spec = build_cascade(c, stage);
        spec.stage2.gamma = e.probe_ratio * stage.gamma;
        return delay_scan_widths(spec, build_signal(c, stage), delay_options(c, threads));
    }
    if (e.name == "skew_vs_power") {
        const auto stage = build_stage(c);
        return skew_vs_power(stage, build_signal(c, stage), e.strengths, e.probe_strength, delay_options(c, threads));
    }
    if (e.name == "tradeoff_comparison") {
        return tradeoff_comparison(build_stage(c),
                                   TradeoffComparisonOptions{e.single_strengths, e.cascade_strengths, e.matched_ce, sweep});
    }
    if (e.name == "schmidt_modes") return schmidt_modes(c, threads);
    throw ConfigError("unknown experiment '" + e.name + "'");
}

std::string summary_line(const ExperimentResult& result) {
    std::ostringstream line;
    line << result.name << ": rows=" << result.rows.size();
    for (const auto& [key, value] : result.scalars) line << ' ' << key << '=' << format_number(value);
    return line.str();
}

namespace {

// Output files staged under hidden temporary names.
class StagedOutputs {
public:
    explicit StagedOutputs(std::filesystem::path dir) : dir_(std::move(dir)) {}
    StagedOutputs(const StagedOutputs&) = delete;
    StagedOutputs& operator=(const StagedOutputs&) = delete;

    ~StagedOutputs() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& [tmp, final_path] : files_) std::filesystem::remove(tmp, ec);
    }

    void write_text(const std::string& name, const std::function<void(std::ostream&)>& body) {
        const auto tmp = stage(name);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        body(out);
        out.flush();
        if (!out) throw IoError("error writing '" + tmp.string() + "'");
    }

    void write_green(const std::string& name, const GreenFunction& g) { dump_matrix(g, stage(name)); }

    void commit() {
        for (const auto& [tmp, final_path] : files_) {
            std::error_code ec;
            std::filesystem::rename(tmp, final_path, ec);
            if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + final_path.string() + "': " + ec.message());
        }
        committed_ = true;
    }

private:
    std::filesystem::path stage(const std::string& name) {
        auto tmp = dir_ / ("." + name + ".partial");
        files_.emplace_back(tmp, dir_ / name);
        return tmp;
    }

    std::filesystem::path dir_;
    std::vector<std::pair<std::filesystem::path, std::filesystem::path>> files_;
    bool committed_ = false;
};

}  // namespace

int run(const RunConfig& config, const RunOptions& options, std::ostream& out, std::ostream& err) {
    try {
        RunConfig c = config;
        if (options.out_dir) c.output.directory = options.out_dir->string();
        const std::filesystem::path dir = c.output.directory;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());

        const auto result = execute(c, options.threads);
        StagedOutputs files(dir);
        const std::string& name = c.experiment.name;
        files.write_text(name + ".csv", [&](std::ostream& o) { write_csv(o, result); });
        files.write_text(name + ".scalars.csv", [&](std::ostream& o) { write_scalars_csv(o, result); });
        files.write_text(name + ".meta.yaml", [&](std::ostream& o) { o << emit_config(c); });
        if (options.dump_green) {
            const auto stage = restrict_stage(build_stage(c), c.numerics.n_eff);
            files.write_green(name + ".green.bin", assemble(stage, options.threads));
        }
        files.commit();
        out << summary_line(result) << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        err << "simulate: error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace qfc

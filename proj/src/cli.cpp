#include "fusewave/cli.hpp"

#include "fusewave/parallel.hpp"
#include "fusewave/pipeline.hpp"
#include "fusewave/pyramid_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fusewave::cli {

namespace {

// Shortest round-trip decimal; infinities as "inf".
std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc() ? std::string(buf, end) : std::to_string(v);
}

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_weight_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) throw UsageError("empty entry in --weights");
        item = item.substr(first, last - first + 1);
        double v = 0.0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || end != item.data() + item.size()) throw UsageError("bad number '" + item + "' in --weights");
        out.push_back(v);
    }
    return out;
}

struct SwarmFlags {
    int np = 100;
    int gmax = 100;
    int mem = 100;
    double pm = 0.05;
    double w = 0.5;
    double c1 = 1.0;
    double c2 = 1.0;
    std::uint64_t seed = 1;
    std::string mode = "apso";
    std::string inertia = "fixed";
    std::string preset = "full";
    CLI::Option* np_opt = nullptr;
    CLI::Option* gmax_opt = nullptr;

    void add_to(CLI::App& cmd, bool with_seed_and_mode) {
        np_opt = cmd.add_option("--np", np, "particle count")->capture_default_str();
        gmax_opt = cmd.add_option("--gmax", gmax, "generations")->capture_default_str();
        cmd.add_option("--mem", mem, "archive capacity")->capture_default_str();
        cmd.add_option("--pm", pm, "mutation probability")->capture_default_str();
        cmd.add_option("--w", w, "inertia weight")->capture_default_str();
        cmd.add_option("--c1", c1, "cognitive learning factor")->capture_default_str();
        cmd.add_option("--c2", c2, "social learning factor")->capture_default_str();
        cmd.add_option("--inertia", inertia, "inertia schedule")
            ->check(CLI::IsMember({"fixed", "decay"}))
            ->capture_default_str();
        cmd.add_option("--preset", preset, "full: NP=100 Gmax=100; desk: NP=20 Gmax=30 (explicit flags win)")
            ->check(CLI::IsMember({"full", "desk"}))
            ->capture_default_str();
        if (with_seed_and_mode) {
            cmd.add_option("--seed", seed, "random seed")->capture_default_str();
            cmd.add_option("--mode", mode, "optimizer")->check(CLI::IsMember({"apso", "pso"}))->capture_default_str();
        }
    }

    mopso::SwarmConfig config() const {
        mopso::SwarmConfig cfg;
        cfg.np = np;
        cfg.gmax = gmax;
        if (preset == "desk") {
            if (np_opt->count() == 0) cfg.np = 20;
            if (gmax_opt->count() == 0) cfg.gmax = 30;
        }
        cfg.mem = mem;
        cfg.pm = pm;
        cfg.w = w;
        cfg.c1 = c1;
        cfg.c2 = c2;
        cfg.seed = seed;
        cfg.mode = mode == "pso" ? mopso::Mode::PlainPso : mopso::Mode::Apso;
        cfg.inertia = inertia == "decay" ? mopso::InertiaSchedule::LinearDecay : mopso::InertiaSchedule::Fixed;
        cfg.threads = thread_count_from_env();
        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }
};

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string render_report(const nlohmann::ordered_json& report, const std::string& format) {
    if (format == "json") return report.dump(2) + "\n";
    std::ostringstream out;
    if (format == "csv") {
        std::string header, row;
        for (const auto& [key, value] : report.items()) {
            if (value.is_structured()) continue;
            header += (header.empty() ? "" : ",") + key;
            row += (row.empty() ? "" : ",") + (value.is_string() ? value.get<std::string>() : value.dump());
        }
        out << header << "\n" << row << "\n";
    } else {
        for (const auto& [key, value] : report.items()) {
            out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
    return out.str();
}

nlohmann::ordered_json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

nlohmann::ordered_json metrics_json(const metrics::MetricsReport& m) {
    nlohmann::ordered_json j;
    j["entropy"] = number(m.entropy);
    j["psnr"] = number(m.psnr);
    j["rmse"] = number(m.rmse);
    j["ssim_vs_a"] = number(m.ssim_vs_a);
    j["ssim_vs_b"] = number(m.ssim_vs_b);
    j["sd"] = number(m.sd);
    j["mean"] = number(m.mean);
    j["rmse_a"] = number(m.rmse_a);
    j["rmse_b"] = number(m.rmse_b);
    j["psnr_a"] = number(m.psnr_a);
    j["psnr_b"] = number(m.psnr_b);
    return j;
}

std::string archive_csv(const std::vector<ArchiveEntry>& entries, int levels) {
    std::ostringstream out;
    out << "index,lowpass";
    for (int level = 1; level <= levels; ++level) {
        for (Orientation o : kOrientationOrder) out << ",L" << level << "_" << to_string(o);
    }
    out << ",neg_entropy,rmse,neg_psnr,neg_sd,neg_ssim_a,neg_ssim_b\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out << i << "," << format_number(entries[i].weights.lowpass);
        for (double w : entries[i].weights.highpass) out << "," << format_number(w);
        for (Eigen::Index k = 0; k < entries[i].fitness.size(); ++k) out << "," << format_number(entries[i].fitness(k));
        out << "\n";
    }
    return out.str();
}

struct FuseCommand {
    std::string a, b, out, weights, report, report_format = "json", dump_archive, select = "compromise";
    int levels = 3;
    int verbose = 0;
    SwarmFlags swarm;

    void add_to(CLI::App& app) {
        auto* cmd = app.add_subcommand("fuse", "Fuse two registered grayscale images");
        cmd->add_option("--a", a, "first source image (PGM/PNG)")->required();
        cmd->add_option("--b", b, "second source image (PGM/PNG)")->required();
        cmd->add_option("--out", out, "fused image (.pgm or .png)")->required();
        cmd->add_option("--levels", levels, "decomposition levels")->check(CLI::Range(1, kMaxLevels))->capture_default_str();
        swarm.add_to(*cmd, true);
        cmd->add_option("--weights", weights, "comma-separated fusion weights; skips the optimizer");
        cmd->add_option("--select", select, "archive pick: compromise, max_entropy, or an index")->capture_default_str();
        cmd->add_option("--report", report, "write the quality report here");
        cmd->add_option("--report-format", report_format, "report format")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
        cmd->add_option("--dump-archive", dump_archive, "write the final archive as CSV");
        cmd->add_flag("-v,--verbose", verbose, "print a generation counter to stderr");
        cmd->callback([this, cmd] { parsed = cmd; });
    }

    CLI::App* parsed = nullptr;

    int execute(std::ostream& out_stream, std::ostream& err) const {
        FusionJob job{load_image(a), load_image(b), levels, swarm.config(), SelectCompromise{}, std::nullopt,
                      !dump_archive.empty()};
        try {
            job.selection = parse_selection(select);
            if (!weights.empty()) {
                const auto values = parse_weight_list(weights);
                job.weights = weights_from_vector(Eigen::Map<const Eigen::VectorXd>(values.data(), values.size()), levels);
            }
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }

        mopso::GenerationObserver observer;
        if (verbose > 0) {
            observer = [&err, gmax = job.swarm.gmax](int g, const std::vector<mopso::Particle>&,
                                                     const mopso::ParetoArchive& archive) {
                err << "generation " << g << "/" << gmax << " archive " << archive.size() << "\n";
            };
        }
        const FusionResult result = run_fusion(job, observer);
        for (const auto& w : result.warnings) err << "warning: " << w << "\n";
        save_image(result.fused, out);

        nlohmann::ordered_json rep = metrics_json(result.report);
        rep["levels"] = levels;
        rep["mode"] = job.weights ? "fixed" : swarm.mode;
        rep["seed"] = job.swarm.seed;
        rep["np"] = job.swarm.np;
        rep["gmax"] = job.swarm.gmax;
        rep["archive_size"] = result.archive_size;
        rep["evaluations"] = result.evaluations;
        rep["nonfinite_evaluations"] = result.nonfinite_evaluations;
        const Eigen::VectorXd v = to_vector(result.weights);
        rep["weights"] = std::vector<double>(v.data(), v.data() + v.size());

        const std::string rendered = render_report(rep, report_format);
        if (!report.empty()) {
            write_text_file(report, rendered);
        } else {
            out_stream << rendered;
        }
        if (!dump_archive.empty()) write_text_file(dump_archive, archive_csv(result.archive_dump, levels));
        return kExitOk;
    }
};

struct DecomposeCommand {
    std::string in, out;
    int levels = 3;
    CLI::App* parsed = nullptr;

    void add_to(CLI::App& app) {
        auto* cmd = app.add_subcommand("decompose", "Write the dual-tree pyramid of an image");
        cmd->add_option("--in", in, "input image")->required();
        cmd->add_option("--out", out, "pyramid file (DTCW container)")->required();
        cmd->add_option("--levels", levels, "decomposition levels")->check(CLI::Range(1, kMaxLevels))->capture_default_str();
        cmd->callback([this, cmd] { parsed = cmd; });
    }

    int execute(std::ostream& out_stream, std::ostream&) const {
        const Pyramid pyr = decompose(load_image(in), levels);
        save_pyramid(pyr, out);
        out_stream << "levels " << pyr.levels << ", lowpass " << pyr.lowpass.rows() << "x" << pyr.lowpass.cols()
                   << ", source " << pyr.source_extent.rows << "x" << pyr.source_extent.cols << "\n";
        return kExitOk;
    }
};

struct ReconstructCommand {
    std::string in, out;
    CLI::App* parsed = nullptr;

    void add_to(CLI::App& app) {
        auto* cmd = app.add_subcommand("reconstruct", "Invert a pyramid file back to an image");
        cmd->add_option("--in", in, "pyramid file (DTCW container)")->required();
        cmd->add_option("--out", out, "output image (.pgm or .png)")->required();
        cmd->callback([this, cmd] { parsed = cmd; });
    }

    int execute(std::ostream&, std::ostream&) const {
        save_image(inverse(load_pyramid(in)), out);
        return kExitOk;
    }
};

struct MetricsCommand {
    std::string ref, test, format = "json";
    bool ssim_standard = false;
    CLI::App* parsed = nullptr;

    void add_to(CLI::App& app) {
        auto* cmd = app.add_subcommand("metrics", "Quality metrics of a test image against a reference");
        cmd->add_option("--ref", ref, "reference image")->required();
        cmd->add_option("--test", test, "test image")->required();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
        cmd->add_flag("--ssim-standard", ssim_standard, "also report windowed covariance SSIM");
        cmd->callback([this, cmd] { parsed = cmd; });
    }

    int execute(std::ostream& out, std::ostream&) const {
        const Image r = load_image(ref);
        const Image t = load_image(test);
        if (!(r.extent() == t.extent())) throw std::runtime_error("reference and test images differ in size");
        nlohmann::ordered_json rep;
        rep["entropy"] = number(metrics::entropy(t));
        rep["psnr"] = number(metrics::psnr(r, t));
        rep["rmse"] = number(metrics::rmse(r, t));
        rep["ssim"] = number(metrics::ssim_paper(r, t));
        if (ssim_standard) rep["ssim_standard"] = number(metrics::ssim_standard(r, t));
        rep["sd"] = number(metrics::sd(t));
        rep["mean"] = number(metrics::mean(t));
        out << render_report(rep, format);
        return kExitOk;
    }
};

struct BenchCommand {
    std::string a, b, out;
    int seeds = 10;
    int levels = 3;
    SwarmFlags swarm;
    CLI::App* parsed = nullptr;

    void add_to(CLI::App& app) {
        auto* cmd = app.add_subcommand("bench", "Compare APSO with plain PSO over several seeds");
        cmd->add_option("--a", a, "first source image")->required();
        cmd->add_option("--b", b, "second source image")->required();
        cmd->add_option("--out", out, "results CSV")->required();
        cmd->add_option("--seeds", seeds, "seeds 1..N")->check(CLI::PositiveNumber)->capture_default_str();
        cmd->add_option("--levels", levels, "decomposition levels")->check(CLI::Range(1, kMaxLevels))->capture_default_str();
        swarm.add_to(*cmd, false);
        cmd->callback([this, cmd] { parsed = cmd; });
    }

    int execute(std::ostream& out_stream, std::ostream&) const {
        const Image img_a = load_image(a);
        const Image img_b = load_image(b);
        const mopso::SwarmConfig base = swarm.config();

        std::ostringstream csv;
        csv << "seed,mode,EN,PSNR,RMSE,SD,SSIM_a,SSIM_b,wall_ms\n";
        std::map<std::string, std::vector<double>> entropy, rmse;
        for (int seed = 1; seed <= seeds; ++seed) {
            for (const auto mode : {mopso::Mode::Apso, mopso::Mode::PlainPso}) {
                FusionJob job{img_a, img_b, levels, base, SelectCompromise{}, std::nullopt, false};
                job.swarm.seed = static_cast<std::uint64_t>(seed);
                job.swarm.mode = mode;
                const auto start = std::chrono::steady_clock::now();
                const FusionResult r = run_fusion(job);
                const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                const std::string name = mode == mopso::Mode::Apso ? "apso" : "pso";
                csv << seed << "," << name << "," << format_number(r.report.entropy) << ","
                    << format_number(r.report.psnr) << "," << format_number(r.report.rmse) << ","
                    << format_number(r.report.sd) << "," << format_number(r.report.ssim_vs_a) << ","
                    << format_number(r.report.ssim_vs_b) << "," << static_cast<long long>(ms) << "\n";
                entropy[name].push_back(r.report.entropy);
                rmse[name].push_back(r.report.rmse);
            }
        }
        write_text_file(out, csv.str());

        const auto median = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            const std::size_t n = v.size();
            return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        };
        for (const std::string name : {"apso", "pso"}) {
            out_stream << name << ": median EN " << format_number(median(entropy[name])) << ", median RMSE "
                       << format_number(median(rmse[name])) << "\n";
        }
        return kExitOk;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dual-tree complex wavelet image fusion with swarm-optimized weights", "fusewave"};
    app.set_config("--config", "", "TOML/INI file; options go under a section named after the subcommand");
    app.require_subcommand(1);

    FuseCommand fuse;
    DecomposeCommand decompose_cmd;
    ReconstructCommand reconstruct_cmd;
    MetricsCommand metrics_cmd;
    BenchCommand bench;
    fuse.add_to(app);
    decompose_cmd.add_to(app);
    reconstruct_cmd.add_to(app);
    metrics_cmd.add_to(app);
    bench.add_to(app);
    for (auto* sub : app.get_subcommands({})) sub->configurable();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (fuse.parsed) return fuse.execute(out, err);
        if (decompose_cmd.parsed) return decompose_cmd.execute(out, err);
        if (reconstruct_cmd.parsed) return reconstruct_cmd.execute(out, err);
        if (metrics_cmd.parsed) return metrics_cmd.execute(out, err);
        if (bench.parsed) return bench.execute(out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace fusewave::cli

#include "curvseg/driver.hpp"

#include <fstream>
#include <memory>

#include "curvseg/errors.hpp"
#include "curvseg/export.hpp"
#include "curvseg/pgm.hpp"

namespace curvseg {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

void write_contour(OutputKind kind, const std::filesystem::path& path, const PolygonalCurve& curve,
                   const Domain& domain) {
    if (kind == OutputKind::kCsv) write_text_file(path, export_csv(curve));
    if (kind == OutputKind::kSvg) write_text_file(path, export_svg(curve, domain));
}

}  // namespace

IntensityGrid load_image(const RunConfig& config, const std::filesystem::path& base_dir,
                         std::uint64_t seed) {
    if (const auto* path = std::get_if<std::string>(&config.image)) {
        return read_pgm_file(resolve(base_dir, *path));
    }
    return synthesize(std::get<SyntheticImage>(config.image), seed);
}

std::filesystem::path snapshot_path(const std::filesystem::path& output, std::size_t k) {
    std::filesystem::path p = output;
    p.replace_extension(".snap" + std::to_string(k) + output.extension().string());
    return p;
}

RunResult run_segmentation(const RunConfig& config, const std::filesystem::path& base_dir,
                           std::uint64_t seed, std::ostream* progress, std::size_t progress_every) {
    const ForceField field(load_image(config, base_dir, seed), config.f_min, config.f_max, Domain{},
                           config.force_sampling);

    std::unique_ptr<std::ofstream> log;
    for (const OutputSpec& o : config.outputs) {
        if (o.kind == OutputKind::kJsonLog) {
            const auto path = resolve(base_dir, o.path);
            log = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*log) throw IoError("cannot open " + path.string() + " for writing");
        }
    }

    std::size_t next_snapshot = 0;
    auto export_snapshots = [&](const EvolutionState& state) {
        while (next_snapshot < config.snapshot_times.size() &&
               state.time >= config.snapshot_times[next_snapshot]) {
            for (const OutputSpec& o : config.outputs) {
                write_contour(o.kind, snapshot_path(resolve(base_dir, o.path), next_snapshot),
                              state.curve, field.domain());
            }
            ++next_snapshot;
        }
    };
    export_snapshots(EvolutionState(config.initial_curve()));

    RunResult result = run(
        config.initial_curve(), field.function(), config.evolution_params(), config.stop,
        [&](const EvolutionState& state, const StepDiagnostics& d) {
            if (log) *log << diagnostics_json(d) << '\n';
            if (progress && progress_every && d.step % progress_every == 0) {
                *progress << "step " << d.step << " t=" << d.time << " tau=" << d.tau
                          << " L=" << d.length << " |alpha|max=" << d.alpha_max
                          << " speed=" << d.max_speed << '\n';
            }
            export_snapshots(state);
        });
    if (log) {
        log->flush();
        if (!*log) throw IoError("write failed for JSON log");
    }

    for (const OutputSpec& o : config.outputs) {
        const auto path = resolve(base_dir, o.path);
        if (o.kind == OutputKind::kOverlayPgm) {
            write_pgm_file(path, render_overlay(result.state.curve, field.grid(), field.domain()));
        } else {
            write_contour(o.kind, path, result.state.curve, field.domain());
        }
    }
    return result;
}

}  // namespace curvseg

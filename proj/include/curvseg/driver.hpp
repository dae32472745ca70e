#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>

#include "curvseg/config.hpp"

namespace curvseg {

/// Loads or synthesizes the image of `config`; relative paths resolve against `base_dir`.
IntensityGrid load_image(const RunConfig& config, const std::filesystem::path& base_dir,
                         std::uint64_t seed);

/// Path of the k-th snapshot for an output: "out.csv" -> "out.snap3.csv".
std::filesystem::path snapshot_path(const std::filesystem::path& output, std::size_t k);

/// Runs a configured segmentation end to end and writes every requested output.
/// `progress` receives a line per `progress_every` steps when non-zero.
RunResult run_segmentation(const RunConfig& config, const std::filesystem::path& base_dir,
                           std::uint64_t seed, std::ostream* progress = nullptr,
                           std::size_t progress_every = 0);

}  // namespace curvseg

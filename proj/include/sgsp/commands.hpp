#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sgsp/config.hpp"

namespace sgsp {

struct ManifestEntry {
    std::string path;  // relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct ResultBundle {
    std::string run_id;  // derived from the resolved config
    std::filesystem::path out_dir;
    std::vector<ManifestEntry> files;
};

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Sampled edge lists, per-cell densities with limits, and the phi table.
ResultBundle cmd_sample(const RunConfig& config);
/// Growth sequence, eigenvalue trajectory, model fits and moving averages.
ResultBundle cmd_spectra(const RunConfig& config);
/// Diffusion synthesis, leading-coefficient trajectory and ratios.
ResultBundle cmd_fit_filter(const RunConfig& config);
/// Stretched cut distance between `input` and `second`, with witnesses.
ResultBundle cmd_cutdist(const RunConfig& config);

}  // namespace sgsp

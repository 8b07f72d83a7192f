#pragma once

// Artifact writing: CSV tables, JSON manifests, hashing, worker pool.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace purcell::experiments {

namespace fs = std::filesystem;

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// RFC 4180 field quoting: quotes fields containing a comma, quote, CR or LF.
std::string csv_field(std::string_view s);

/// Column-major table; every column has the same length.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    void add(std::string name, std::vector<double> values);
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

std::string to_csv(const Table& table);

/// Writes to a temporary file in the same directory and renames it into place.
void write_atomic(const fs::path& path, std::string_view content);

void write_csv(const fs::path& path, const Table& table);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const fs::path& path);

/// Adds {"artifacts": {file name: sha256}} for every path and writes the
/// manifest (pretty-printed JSON) atomically.
void write_manifest(const fs::path& path, nlohmann::json manifest, std::span<const fs::path> artifacts);

/// Output directory: `requested` if non-empty, else $PURCELL_OUT_DIR, else "out".
fs::path output_dir(const std::string& requested);

/// Runs fn(0..count-1) on up to `workers` threads (0 = hardware concurrency).
/// Every index runs exactly once; the first exception is rethrown after all
/// workers finish.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

}  // namespace purcell::experiments

#pragma once

#include "manifest.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace aquant::cli {

struct RunOptions {
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> n_t;
    std::optional<int> n_eps;
    std::vector<std::pair<std::string, double>> tol_overrides;
    std::string format = "json";           // json, csv or both
    std::optional<std::string> select;     // selftest suite selection, comma separated
};

struct CsvTable {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct RunResult {
    int exit_code = 1;
    nlohmann::json report;
    std::vector<CsvTable> tables;
    double wall_seconds = 0;
};

const std::vector<std::string>& command_names();

// Runs a command on a parsed manifest without touching the file system.
// Exit codes: 0 definitive verdict (matching the expectation when one is
// declared), 2 inconclusive, 1 error or unmet expectation.
RunResult execute(const std::string& command, const Manifest* manifest, const RunOptions& options);

// Loads the manifest, executes, writes report.json, timing.json and the CSV
// tables into options.out_dir, and prints a one-line summary.
int run(const std::string& command, const std::optional<std::string>& manifest_path, const RunOptions& options);

std::string to_csv(const CsvTable& t);

}  // namespace aquant::cli

#pragma once

#include "aquant/prequant.hpp"
#include "aquant/spheres.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aquant::cli {

// Schema violation with the manifest line it refers to (0 when unknown).
class ManifestError : public Error {
public:
    ManifestError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

// Lasso generator of pi_2 at a sample point.
struct GeneratorSpec {
    int factor = -1;                      // sphere factor of a product, -1 on sphere2
    std::optional<Eigen::Vector3d> direction;
    double reach = 0;                     // 0 selects a full sweep (pi)
    int orientation = 1;
};

struct Manifest {
    std::string scenario;
    nlohmann::json manifold_spec;
    nlohmann::json form_spec;
    AtlasPtr atlas;
    TwoFormField form;
    ChartPoint basepoint;
    std::vector<ChartPoint> samples;
    std::optional<std::vector<GeneratorSpec>> generators;  // empty optional: catalog defaults
    Resolution resolution;
    Tolerances tolerances;
    std::uint64_t seed = 1;
    nlohmann::json expect = nlohmann::json::object();
    nlohmann::json options = nlohmann::json::object();
};

// Parses manifest text. Unknown keys, missing required keys, wrong types and
// non-positive tolerances raise ManifestError with a line number.
// A seed override replaces the manifest seed before random samples are drawn.
Manifest parse_manifest(const std::string& text, std::optional<std::uint64_t> seed_override = std::nullopt);
Manifest load_manifest(const std::string& path, std::optional<std::uint64_t> seed_override = std::nullopt);

// Generator spheres at a sample point: manifest lassos or catalog defaults.
std::vector<SquareMap> generator_maps(const Manifest& m, const ChartPoint& p);

}  // namespace aquant::cli

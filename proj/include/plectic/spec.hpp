#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "plectic/fieldtheory.hpp"
#include "plectic/splitting.hpp"
#include "plectic/thicken.hpp"

namespace plectic {

/// Invalid spec file. The message names the offending JSON path and, for
/// expressions, the character position.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coordinate name -> expression string; absent coordinates are 0.
using VectorSpec = std::map<std::string, std::string>;

struct TermSpec {
    std::vector<std::string> indices;
    std::string coeff;
};

struct FrameSpec {
    std::vector<VectorSpec> vertical;
    std::vector<VectorSpec> horizontal;
    std::optional<std::vector<std::string>> labels;
};

struct FibrationSpec {
    std::vector<std::string> base;
    std::vector<std::string> auxiliary;
};

struct SamplesSpec {
    std::optional<std::size_t> count;
    std::optional<std::uint64_t> seed;
    std::optional<std::pair<long, long>> coordinate_range;
};

/// In-memory form of the JSON manifold file.
struct ManifoldSpec {
    std::string name;
    std::vector<std::string> coordinates;
    std::size_t degree = 0;
    std::vector<TermSpec> terms;
    std::optional<FrameSpec> frame;
    std::optional<FibrationSpec> fibration;
    std::optional<SamplesSpec> samples;
};

ManifoldSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const ManifoldSpec& spec);
ManifoldSpec load_spec(const std::filesystem::path& path);
void save_spec(const ManifoldSpec& spec, const std::filesystem::path& path);

/// A spec turned into algebra. Expressions are parsed here, so every error
/// surfaces as a SpecError.
struct Model {
    ManifoldSpec spec;
    ChartPtr chart;
    Form omega;
};

Model build_model(const ManifoldSpec& spec);
SplitFrame build_model_frame(const Model& model, const PreMultisymplecticManifold& m);
FiberedChart build_model_fibration(const Model& model);

/// Fiber coordinate -> expression in base coordinates. Auxiliary fields may
/// be omitted (they default to 0); physical fields may not.
Section load_section(const std::filesystem::path& path, const FiberedChart& f);
Section section_from_json(const nlohmann::json& j, const FiberedChart& f);

/// Spec of the thickened manifold: big chart, omega_tilde in the coordinate
/// basis, the fibration with the fiber coordinates marked auxiliary, and the
/// original sampling block.
ManifoldSpec thickened_spec(const ManifoldSpec& original, const Thickening& t);

/// Form as spec terms, coefficients printed in the chart's names.
std::vector<TermSpec> form_terms(const Form& omega);

} // namespace plectic

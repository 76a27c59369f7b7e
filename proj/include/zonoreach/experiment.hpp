#ifndef ZONOREACH_EXPERIMENT_HPP_
#define ZONOREACH_EXPERIMENT_HPP_

#include "zonoreach/data.hpp"
#include "zonoreach/reach_lipschitz.hpp"
#include "zonoreach/reach_lti.hpp"
#include "zonoreach/serialize.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zonoreach
{

/// Configuration problem (bad field, inconsistent dimensions). The message
/// names the offending field.
struct ConfigError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct DataPlan
{
    enum class Kind
    {
        simulate,
        grid,
        file
    };
    Kind kind = Kind::simulate;
    int trajectories = 1;
    int length = 1;
    Interval x_box, u_box;          // grid
    std::vector<int> points_per_dim; // grid
    std::filesystem::path file;
};

struct ExperimentConfig
{
    std::string name;
    std::uint64_t seed = 0;
    int samples = 1000;
    int horizon = 5;
    int reduction_order = 20;

    SystemModel system;
    bool has_model = true;
    Zonotope initial_set = Zonotope::singleton(Vector::Zero(1));
    Zonotope input_set = Zonotope::singleton(Vector::Zero(1));
    Zonotope process_noise = Zonotope::singleton(Vector::Zero(1));
    std::optional<Zonotope> measurement_noise;

    DataPlan data;
    std::vector<std::string> methods;
    std::optional<SideInfo> side_info;
    std::optional<SideInfo> poly_side_info;
    int poly_degree = 2;
    LipschitzConfig lipschitz;
    std::vector<std::pair<int, int>> plot_dims{{0, 1}};
    std::filesystem::path output;
    nlohmann::json raw; // parsed source, echoed into the run directory

    static ExperimentConfig from_json(const nlohmann::json& j);
    void validate() const;
};

/// Runs every requested method, writes per-method JSON (sequence, interval
/// hulls, containment report), the generated data as CSV and a resolved
/// config echo into `outdir`. File contents are deterministic per seed;
/// wall-clock timings go to `log` only. Returns the process exit status
/// (0 ok, 1 validation error, 2 runtime error).
int run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& outdir,
                   std::ostream& log);

/// Renders the sequences found in a run directory as SVG projections, one
/// file per configured dimension pair. Returns the number of files written.
int plot_run(const std::filesystem::path& rundir, std::ostream& log);

// Plot geometry, exposed for tests.

/// Exact 2-D zonotope outline: 2 * (distinct generator directions) vertices.
std::vector<Eigen::Vector2d> zonotope_polygon(const Vector& center2, const Matrix& generators2);

/// Outer polygon of a set projection from support evaluations along
/// `directions` evenly spaced angles.
std::vector<Eigen::Vector2d> support_polygon(const SetVariant& S, int dim_x, int dim_y,
                                             int directions = 64);

double polygon_area(const std::vector<Eigen::Vector2d>& polygon);

} // namespace zonoreach

#endif

#include "zonoreach/experiment.hpp"

#include "zonoreach/oracle.hpp"
#include "zonoreach/reach_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace zonoreach
{

using nlohmann::json;

namespace
{

const std::set<std::string> kKnownMethods = {
    "oracle", "alg1",  "alg2",             "alg3",           "prop4", "prop5",
    "alg4",   "alg5",  "alg5_constrained", "alg5_side_info", "alg6"};

Zonotope zonotope_field(const json& j, const std::string& field)
{
    if (!j.contains(field))
        throw ConfigError("missing field: " + field);
    try
    {
        return zonotope_from_json(j.at(field));
    }
    catch (const std::exception& e)
    {
        throw ConfigError("field " + field + ": " + e.what());
    }
}

SideInfo side_info_from_json(const json& j, const std::string& field)
{
    try
    {
        return SideInfo{matrix_from_json(j.at("Q")), matrix_from_json(j.at("Y")),
                        matrix_from_json(j.at("R"))};
    }
    catch (const std::exception& e)
    {
        throw ConfigError("field " + field + ": " + e.what());
    }
}

SystemModel builtin_model(const std::string& name)
{
    if (name == "contractive2d")
    {
        // Two-state trigonometric test system, contractive on the region of
        // interest. Its Jacobian Frobenius norm is globally bounded by
        // sqrt(0.5375), which serves as an analytic Lipschitz constant.
        return SystemModel::nonlinear_model(
            [](const Vector& x, const Vector& u) {
                Vector y(2);
                y(0) = 0.4 * x(0) - 0.25 * std::sin(x(1)) + 0.3 * u(0);
                y(1) = 0.35 * x(1) + 0.25 * std::cos(x(0)) + 0.2 * u(1);
                return y;
            },
            2, 2);
    }
    throw ConfigError("system.name: unknown builtin model " + name);
}

void write_atomic(const std::filesystem::path& path, const std::string& contents)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
    }
    std::filesystem::rename(tmp, path);
}

std::string fmt_coord(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j)
{
    ExperimentConfig cfg;
    cfg.name = j.value("name", "experiment");
    cfg.seed = j.value("seed", 0ULL);
    cfg.samples = j.value("samples", 1000);
    cfg.horizon = j.value("horizon", 5);
    cfg.reduction_order = j.value("reduction_order", 20);

    if (j.contains("system"))
    {
        const json& sys = j.at("system");
        const std::string kind = sys.value("kind", "");
        if (kind == "lti")
        {
            cfg.system =
                SystemModel::lti_model(matrix_from_json(sys.at("A")), matrix_from_json(sys.at("B")));
        }
        else if (kind == "polynomial")
        {
            const int n = sys.at("state_dim").get<int>();
            const int m = sys.at("input_dim").get<int>();
            const int d = sys.at("degree").get<int>();
            cfg.system = SystemModel::polynomial_model(matrix_from_json(sys.at("coefficients")),
                                                       MonomialBasis::up_to_degree(n + m, d), n, m);
        }
        else if (kind == "nonlinear")
        {
            cfg.system = builtin_model(sys.value("name", ""));
        }
        else
        {
            throw ConfigError("system.kind: expected lti, polynomial or nonlinear");
        }
        cfg.has_model = true;
    }
    else
    {
        cfg.has_model = false;
    }

    cfg.initial_set = zonotope_field(j, "initial_set");
    cfg.input_set = zonotope_field(j, "input_set");
    cfg.process_noise = zonotope_field(j, "process_noise");
    if (j.contains("measurement_noise"))
        cfg.measurement_noise = zonotope_field(j, "measurement_noise");

    if (!j.contains("data"))
        throw ConfigError("missing field: data");
    const json& data = j.at("data");
    const std::string dkind = data.value("kind", "simulate");
    if (dkind == "simulate")
    {
        cfg.data.kind = DataPlan::Kind::simulate;
        cfg.data.trajectories = data.value("trajectories", 1);
        cfg.data.length = data.value("length", 1);
    }
    else if (dkind == "grid")
    {
        cfg.data.kind = DataPlan::Kind::grid;
        cfg.data.x_box =
            Interval(vector_from_json(data.at("x_lower")), vector_from_json(data.at("x_upper")));
        cfg.data.u_box =
            Interval(vector_from_json(data.at("u_lower")), vector_from_json(data.at("u_upper")));
        for (const json& p : data.at("points_per_dim"))
            cfg.data.points_per_dim.push_back(p.get<int>());
    }
    else if (dkind == "file")
    {
        cfg.data.kind = DataPlan::Kind::file;
        cfg.data.file = data.at("path").get<std::string>();
    }
    else
    {
        throw ConfigError("data.kind: expected simulate, grid or file");
    }

    if (!j.contains("methods"))
        throw ConfigError("missing field: methods");
    for (const json& m : j.at("methods"))
        cfg.methods.push_back(m.get<std::string>());

    if (j.contains("side_info"))
        cfg.side_info = side_info_from_json(j.at("side_info"), "side_info");
    if (j.contains("poly_side_info"))
        cfg.poly_side_info = side_info_from_json(j.at("poly_side_info"), "poly_side_info");
    cfg.poly_degree = j.value("poly_degree", 2);
    if (j.contains("lipschitz"))
    {
        const json& lip = j.at("lipschitz");
        cfg.lipschitz.L_star = lip.value("L_star", 0.0);
        cfg.lipschitz.delta = lip.value("delta", 0.0);
        cfg.lipschitz.estimate_from_data = lip.value("estimate_from_data", false);
        cfg.lipschitz.relinearize_each_step = lip.value("relinearize_each_step", true);
    }
    if (j.contains("plot_dims"))
    {
        cfg.plot_dims.clear();
        for (const json& p : j.at("plot_dims"))
            cfg.plot_dims.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    }
    cfg.output = j.value("output", std::string("runs/") + cfg.name);
    cfg.raw = j;
    return cfg;
}

void ExperimentConfig::validate() const
{
    if (horizon < 1)
        throw ConfigError("horizon: must be >= 1");
    if (samples < 0)
        throw ConfigError("samples: must be >= 0");
    if (methods.empty())
        throw ConfigError("methods: at least one method required");
    for (const std::string& m : methods)
        if (!kKnownMethods.count(m))
            throw ConfigError("methods: unknown method " + m);

    const int n = initial_set.dim();
    const int m_in = input_set.dim();
    if (process_noise.dim() != n)
        throw ConfigError("process_noise: dimension differs from initial_set");
    if (measurement_noise && measurement_noise->dim() != n)
        throw ConfigError("measurement_noise: dimension differs from initial_set");
    if (has_model)
    {
        if (system.state_dim != n)
            throw ConfigError("initial_set: dimension differs from system state_dim");
        if (system.input_dim != m_in)
            throw ConfigError("input_set: dimension differs from system input_dim");
    }
    if (data.kind == DataPlan::Kind::grid)
    {
        if (data.x_box.dim() != n)
            throw ConfigError("data.x_lower: dimension differs from initial_set");
        if (data.u_box.dim() != m_in)
            throw ConfigError("data.u_lower: dimension differs from input_set");
        if (static_cast<int>(data.points_per_dim.size()) != n + m_in)
            throw ConfigError("data.points_per_dim: needs state_dim + input_dim entries");
    }
    for (const std::string& m : methods)
    {
        if (m == "oracle" && (!has_model || system.kind != SystemModel::Kind::lti))
            throw ConfigError("methods: oracle needs an lti system");
        if ((m == "prop4" || m == "prop5") &&
            (!has_model || system.kind != SystemModel::Kind::lti))
            throw ConfigError("methods: " + m + " needs an lti system");
        if ((m == "prop4" || m == "prop5" || m == "alg4") && !measurement_noise)
            throw ConfigError("methods: " + m + " needs measurement_noise");
        if (m == "alg3" && !side_info)
            throw ConfigError("methods: alg3 needs side_info");
        if (m == "alg5_side_info" && !poly_side_info)
            throw ConfigError("methods: alg5_side_info needs poly_side_info");
    }
    for (auto [a, b] : plot_dims)
        if (a < 0 || b < 0 || a >= n || b >= n || a == b)
            throw ConfigError("plot_dims: invalid projection pair");
}

namespace
{

struct MethodOutput
{
    ReachSequence seq;
    json extras = json::object();
};

MethodOutput run_method(const std::string& method, const ExperimentConfig& cfg,
                        const DataMatrices& D, const std::vector<Zonotope>& U)
{
    const Zonotope& X0 = cfg.initial_set;
    const Zonotope& Zw = cfg.process_noise;
    const int N = cfg.horizon;
    ReachOptions opts;
    opts.reduction_order = cfg.reduction_order;
    const MatrixZonotope Mw = noise_matrix_zonotope(Zw, D.T());

    MethodOutput out;
    if (method == "oracle")
    {
        out.seq = model_reach_lti(cfg.system.A, cfg.system.B, X0, U, Zw, N);
    }
    else if (method == "alg1")
    {
        out.seq = lti_reach(D, Mw, Zw, X0, U, N, opts);
    }
    else if (method == "alg2")
    {
        out.seq = lti_reach_constrained(D, Mw, Zw, X0, U, N, opts);
    }
    else if (method == "alg3")
    {
        out.seq = lti_reach_side_info(D, Mw, Zw, X0, U, N, *cfg.side_info, opts);
    }
    else if (method == "prop4" || method == "prop5")
    {
        const MatrixZonotope Mv = noise_matrix_zonotope(*cfg.measurement_noise, D.T());
        const MatrixZonotope Mo = minkowski_sum(Mv, linear_map(-cfg.system.A, Mv));
        out.seq = method == "prop4"
                      ? lti_reach_meas(D, Mo, Mw, Zw, X0, U, N, opts)
                      : lti_reach_meas_constrained(D, Mo, Mw, Zw, X0, U, N, opts);
    }
    else if (method == "alg4")
    {
        const MatrixZonotope Mv = noise_matrix_zonotope(*cfg.measurement_noise, D.T());
        out.seq = lti_reach_meas_data(D, Mw, Mv, Zw, *cfg.measurement_noise, X0, U, N, opts);
        if (cfg.has_model && cfg.system.kind == SystemModel::Kind::lti)
        {
            Matrix AB(cfg.system.A.rows(), cfg.system.A.cols() + cfg.system.B.cols());
            AB << cfg.system.A, cfg.system.B;
            const MatrixZonotope validation =
                meas_validation_set(D, Mw, Mv, Zw, *cfg.measurement_noise);
            out.extras["validation_membership"] = contains(validation, AB, 1e-7);
        }
    }
    else if (method == "alg5" || method == "alg5_constrained" || method == "alg5_side_info")
    {
        const MonomialBasis basis =
            MonomialBasis::up_to_degree(D.state_dim() + D.input_dim(), cfg.poly_degree);
        if (method == "alg5")
            out.seq = poly_reach(D, Mw, Zw, basis, X0, U, N, opts);
        else if (method == "alg5_constrained")
            out.seq = poly_reach_constrained(D, Mw, Zw, basis, X0, U, N, opts);
        else
            out.seq = poly_reach_side_info(D, Mw, Zw, basis, X0, U, N, *cfg.poly_side_info, opts);
    }
    else if (method == "alg6")
    {
        LipschitzReachResult res = lipschitz_reach(D, Mw, Zw, cfg.lipschitz, X0, U, N, opts);
        out.seq = std::move(res.seq);
        out.extras["visited_hull"] = to_json(res.visited_hull);
        out.extras["L_star"] = res.resolved.L_star;
        out.extras["delta"] = res.resolved.delta;
    }
    else
    {
        throw ConfigError("methods: unknown method " + method);
    }
    return out;
}

} // namespace

int run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& outdir,
                   std::ostream& log)
{
    try
    {
        cfg.validate();
    }
    catch (const ConfigError& e)
    {
        log << "config error: " << e.what() << "\n";
        return 1;
    }

    try
    {
        std::filesystem::create_directories(outdir);

        // data
        std::vector<Trajectory> trajectories;
        switch (cfg.data.kind)
        {
            case DataPlan::Kind::simulate:
                trajectories = simulate(cfg.system, cfg.initial_set, {cfg.input_set},
                                        cfg.process_noise,
                                        cfg.measurement_noise ? &*cfg.measurement_noise : nullptr,
                                        cfg.data.trajectories, cfg.data.length, cfg.seed);
                break;
            case DataPlan::Kind::grid:
                trajectories = grid_trajectories(cfg.system, cfg.data.x_box, cfg.data.u_box,
                                                 cfg.data.points_per_dim, cfg.process_noise,
                                                 cfg.seed);
                break;
            case DataPlan::Kind::file:
                trajectories = read_csv(cfg.data.file);
                break;
        }
        const DataMatrices D = assemble(trajectories);
        log << cfg.name << ": T=" << D.T() << " data columns\n";

        if (cfg.data.kind != DataPlan::Kind::file)
            write_csv(outdir / "data.csv", trajectories);
        // echo without the output path: where a run lives must not make two
        // otherwise identical runs differ
        json echo = cfg.raw;
        echo.erase("output");
        write_atomic(outdir / "config.json", echo.dump(2) + "\n");

        const std::vector<Zonotope> U{cfg.input_set};
        for (const std::string& method : cfg.methods)
        {
            MethodOutput out = run_method(method, cfg, D, U);
            const double total =
                std::accumulate(out.seq.step_seconds.begin(), out.seq.step_seconds.end(), 0.0);
            log << "  " << method << ": " << out.seq.steps() << " steps, " << total << " s\n";

            json doc;
            doc["sequence"] = to_json(out.seq);
            if (cfg.has_model && cfg.samples > 0)
            {
                const ContainmentReport report =
                    monte_carlo_check(cfg.system, cfg.initial_set, U, cfg.process_noise, out.seq,
                                      cfg.samples, derive_stream(cfg.seed, 0xC0FFEE), 1e-7);
                doc["containment"] = to_json(report);
                log << "    containment: " << report.containment_fraction() * 100.0 << " %\n";
            }
            for (auto& [key, value] : out.extras.items())
                doc[key] = value;
            write_atomic(outdir / (method + ".json"), doc.dump(2) + "\n");
        }
        return 0;
    }
    catch (const ConfigError& e)
    {
        log << "config error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception& e)
    {
        log << "error: " << e.what() << "\n";
        return 2;
    }
}

// ---------------------------------------------------------------------------
// plotting
// ---------------------------------------------------------------------------

std::vector<Eigen::Vector2d> zonotope_polygon(const Vector& center2, const Matrix& generators2)
{
    if (center2.size() != 2 || generators2.rows() != 2)
        throw std::invalid_argument("zonotope_polygon: expects a 2-D zonotope");
    const Zonotope flat = compact(Zonotope(center2, generators2));
    const int g = flat.num_generators();
    if (g == 0)
        return {Eigen::Vector2d(center2(0), center2(1))};

    std::vector<Eigen::Vector2d> gens(g);
    for (int j = 0; j < g; ++j)
    {
        Eigen::Vector2d v = flat.generators().col(j);
        if (v.y() < 0 || (v.y() == 0 && v.x() < 0))
            v = -v;
        gens[j] = v;
    }
    std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) {
        return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
    });

    Eigen::Vector2d v(center2(0), center2(1));
    for (const auto& gvec : gens)
        v -= gvec;
    std::vector<Eigen::Vector2d> poly;
    poly.push_back(v);
    for (int j = 0; j < g; ++j)
    {
        v += 2.0 * gens[j];
        poly.push_back(v);
    }
    for (int j = 0; j < g - 1; ++j)
    {
        v -= 2.0 * gens[j];
        poly.push_back(v);
    }
    return poly;
}

std::vector<Eigen::Vector2d> support_polygon(const SetVariant& S, int dim_x, int dim_y,
                                             int directions)
{
    const int n = set_dim(S);
    std::vector<double> h(directions);
    std::vector<Eigen::Vector2d> d2(directions);
    for (int t = 0; t < directions; ++t)
    {
        const double angle = 2.0 * M_PI * t / directions;
        d2[t] = {std::cos(angle), std::sin(angle)};
        Vector d = Vector::Zero(n);
        d(dim_x) = d2[t].x();
        d(dim_y) = d2[t].y();
        h[t] = support(S, d);
    }
    std::vector<Eigen::Vector2d> poly;
    for (int t = 0; t < directions; ++t)
    {
        const int u = (t + 1) % directions;
        Eigen::Matrix2d A;
        A << d2[t].x(), d2[t].y(), d2[u].x(), d2[u].y();
        Eigen::Vector2d rhs(h[t], h[u]);
        poly.push_back(A.colPivHouseholderQr().solve(rhs));
    }
    return poly;
}

double polygon_area(const std::vector<Eigen::Vector2d>& polygon)
{
    double acc = 0.0;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        const auto& p = polygon[i];
        const auto& q = polygon[(i + 1) % n];
        acc += p.x() * q.y() - q.x() * p.y();
    }
    return std::abs(acc) / 2.0;
}

namespace
{

struct Patch
{
    std::vector<Eigen::Vector2d> polygon;
    std::string color;
    double area;
};

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

} // namespace

int plot_run(const std::filesystem::path& rundir, std::ostream& log)
{
    const auto config_path = rundir / "config.json";
    if (!std::filesystem::exists(config_path))
    {
        log << "plot: no config.json in " << rundir.string() << "; nothing to do\n";
        return 0;
    }
    json cfg_json;
    {
        std::ifstream in(config_path);
        in >> cfg_json;
    }
    std::vector<std::pair<int, int>> dims{{0, 1}};
    if (cfg_json.contains("plot_dims"))
    {
        dims.clear();
        for (const json& p : cfg_json.at("plot_dims"))
            dims.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    }

    struct Loaded
    {
        std::string method;
        ReachSequence seq;
        bool outer_marked;
    };
    std::vector<Loaded> sequences;
    if (cfg_json.contains("methods"))
    {
        for (const json& m : cfg_json.at("methods"))
        {
            const auto path = rundir / (m.get<std::string>() + ".json");
            if (!std::filesystem::exists(path))
                continue;
            json doc;
            std::ifstream in(path);
            in >> doc;
            ReachSequence seq = sequence_from_json(doc.at("sequence"));
            bool outer = false;
            for (const SetVariant& S : seq.sets)
                if (std::holds_alternative<ConstrainedZonotope>(S))
                    outer = true;
            sequences.push_back({m.get<std::string>(), std::move(seq), outer});
        }
    }
    if (sequences.empty())
    {
        log << "plot: no sequences found in " << rundir.string() << "\n";
        return 0;
    }

    int written = 0;
    for (auto [dx, dy] : dims)
    {
        std::vector<Patch> patches;
        std::vector<std::pair<std::string, std::string>> legend; // label, color
        for (std::size_t s = 0; s < sequences.size(); ++s)
        {
            const std::string color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
            std::string label = sequences[s].method;
            if (sequences[s].outer_marked)
                label += " (outer polygon)";
            legend.emplace_back(label, color);
            for (const SetVariant& S : sequences[s].seq.sets)
            {
                std::vector<Eigen::Vector2d> poly;
                if (std::holds_alternative<Zonotope>(S))
                {
                    const Zonotope& Z = std::get<Zonotope>(S);
                    Matrix P = Matrix::Zero(2, Z.dim());
                    P(0, dx) = 1.0;
                    P(1, dy) = 1.0;
                    const Zonotope flat = linear_map(P, Z);
                    poly = zonotope_polygon(flat.center(), flat.generators());
                }
                else
                {
                    poly = support_polygon(S, dx, dy);
                }
                patches.push_back({std::move(poly), color, 0.0});
                patches.back().area = polygon_area(patches.back().polygon);
            }
        }
        // nesting order: big sets first so smaller ones stay visible
        std::stable_sort(patches.begin(), patches.end(),
                         [](const Patch& a, const Patch& b) { return a.area > b.area; });

        double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
        for (const Patch& p : patches)
        {
            for (const auto& v : p.polygon)
            {
                minx = std::min(minx, v.x());
                maxx = std::max(maxx, v.x());
                miny = std::min(miny, v.y());
                maxy = std::max(maxy, v.y());
            }
        }
        const double spanx = std::max(maxx - minx, 1e-9);
        const double spany = std::max(maxy - miny, 1e-9);
        const double W = 720, H = 540, margin = 60;
        auto tx = [&](double x) { return margin + (x - minx) / spanx * (W - 2 * margin); };
        auto ty = [&](double y) { return H - margin - (y - miny) / spany * (H - 2 * margin); };

        std::ostringstream svg;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
            << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
        svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        for (const Patch& p : patches)
        {
            svg << "<polygon points=\"";
            for (const auto& v : p.polygon)
                svg << fmt_coord(tx(v.x())) << "," << fmt_coord(ty(v.y())) << " ";
            svg << "\" fill=\"" << p.color << "\" fill-opacity=\"0.18\" stroke=\"" << p.color
                << "\" stroke-width=\"1\"/>\n";
        }
        svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
            << "\" text-anchor=\"middle\" font-size=\"14\">x" << dx + 1 << "</text>\n";
        svg << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"14\" "
            << "transform=\"rotate(-90 16 " << H / 2 << ")\">x" << dy + 1 << "</text>\n";
        double ly = 24;
        for (const auto& [label, color] : legend)
        {
            svg << "<rect x=\"" << W - 230 << "\" y=\"" << ly - 11
                << "\" width=\"12\" height=\"12\" fill=\"" << color << "\" fill-opacity=\"0.5\"/>";
            svg << "<text x=\"" << W - 212 << "\" y=\"" << ly << "\" font-size=\"13\">" << label
                << "</text>\n";
            ly += 18;
        }
        svg << "</svg>\n";

        std::ostringstream name;
        name << "plot_x" << dx + 1 << "_x" << dy + 1 << ".svg";
        write_atomic(rundir / name.str(), svg.str());
        ++written;
    }
    log << "plot: wrote " << written << " file(s) to " << rundir.string() << "\n";
    return written;
}

} // namespace zonoreach

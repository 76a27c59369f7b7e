#include "zonoreach/data.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace zonoreach
{

namespace
{

// channels for seed-derived substreams
enum : std::uint64_t
{
    kChannelInitial = 1,
    kChannelInput = 2,
    kChannelProcessNoise = 3,
    kChannelMeasNoise = 4
};

Vector draw(const Zonotope& Z, std::uint64_t seed, std::uint64_t traj, std::uint64_t step,
            std::uint64_t channel)
{
    SplitMix64 rng(derive_stream(seed, traj, step, channel));
    return sample(Z, rng);
}

} // namespace

void Trajectory::validate() const
{
    if (states.size() != inputs.size() + 1)
        throw std::invalid_argument("Trajectory: states length must be inputs length + 1");
    if (!measured.empty() && measured.size() != states.size())
        throw std::invalid_argument("Trajectory: measured length differs from states");
}

Matrix DataMatrices::regressor(bool use_measured) const
{
    const Matrix& top = use_measured ? Y_minus : X_minus;
    Matrix R(top.rows() + U_minus.rows(), top.cols());
    R << top, U_minus;
    return R;
}

Vector SystemModel::step(const Vector& x, const Vector& u) const
{
    switch (kind)
    {
        case Kind::lti:
            return A * x + B * u;
        case Kind::polynomial:
        {
            Vector z(x.size() + u.size());
            z << x, u;
            return C * eval_monomials(*basis, z);
        }
        case Kind::nonlinear:
            return map(x, u);
    }
    throw std::logic_error("SystemModel: unknown kind");
}

SystemModel SystemModel::lti_model(Matrix A, Matrix B)
{
    if (A.rows() != A.cols() || B.rows() != A.rows())
        throw std::invalid_argument("SystemModel: inconsistent LTI shapes");
    SystemModel m;
    m.kind = Kind::lti;
    m.state_dim = static_cast<int>(A.rows());
    m.input_dim = static_cast<int>(B.cols());
    m.A = std::move(A);
    m.B = std::move(B);
    return m;
}

SystemModel SystemModel::polynomial_model(Matrix C, MonomialBasis basis, int state_dim,
                                          int input_dim)
{
    if (basis.variables() != state_dim + input_dim)
        throw std::invalid_argument("SystemModel: basis variables differ from state+input");
    if (C.rows() != state_dim || C.cols() != basis.size())
        throw std::invalid_argument("SystemModel: coefficient shape differs from basis");
    SystemModel m;
    m.kind = Kind::polynomial;
    m.state_dim = state_dim;
    m.input_dim = input_dim;
    m.C = std::move(C);
    m.basis = std::move(basis);
    return m;
}

SystemModel SystemModel::nonlinear_model(std::function<Vector(const Vector&, const Vector&)> map,
                                         int state_dim, int input_dim)
{
    SystemModel m;
    m.kind = Kind::nonlinear;
    m.state_dim = state_dim;
    m.input_dim = input_dim;
    m.map = std::move(map);
    return m;
}

std::vector<Trajectory> simulate(const SystemModel& model, const Zonotope& X0,
                                 const std::vector<Zonotope>& U, const Zonotope& Zw,
                                 const Zonotope* Zv, int K, int T_i, std::uint64_t seed)
{
    if (X0.dim() != model.state_dim || Zw.dim() != model.state_dim)
        throw std::invalid_argument("simulate: set dimensions differ from model");
    if (U.empty())
        throw std::invalid_argument("simulate: needs at least one input set");
    for (const Zonotope& Uk : U)
        if (Uk.dim() != model.input_dim)
            throw std::invalid_argument("simulate: input set dimension differs from model");
    if (Zv && Zv->dim() != model.state_dim)
        throw std::invalid_argument("simulate: measurement noise dimension differs from model");

    auto input_at = [&](int k) -> const Zonotope& { return U[std::min<std::size_t>(k, U.size() - 1)]; };

    std::vector<Trajectory> out(K);
    for (int t = 0; t < K; ++t)
    {
        Trajectory& traj = out[t];
        Vector x = draw(X0, seed, t, 0, kChannelInitial);
        traj.states.push_back(x);
        if (Zv)
            traj.measured.push_back(x + draw(*Zv, seed, t, 0, kChannelMeasNoise));
        for (int k = 0; k < T_i; ++k)
        {
            Vector u = draw(input_at(k), seed, t, k, kChannelInput);
            Vector w = draw(Zw, seed, t, k, kChannelProcessNoise);
            x = model.step(x, u) + w;
            traj.inputs.push_back(std::move(u));
            traj.states.push_back(x);
            if (Zv)
                traj.measured.push_back(x + draw(*Zv, seed, t, k + 1, kChannelMeasNoise));
        }
    }
    return out;
}

std::vector<Trajectory> grid_trajectories(const SystemModel& model, const Interval& x_box,
                                          const Interval& u_box,
                                          const std::vector<int>& points_per_dim,
                                          const Zonotope& Zw, std::uint64_t seed)
{
    const int n = model.state_dim, m = model.input_dim;
    if (x_box.dim() != n || u_box.dim() != m)
        throw std::invalid_argument("grid_trajectories: box dimensions differ from model");
    if (static_cast<int>(points_per_dim.size()) != n + m)
        throw std::invalid_argument("grid_trajectories: points_per_dim must have n+m entries");
    for (int p : points_per_dim)
        if (p < 1)
            throw std::invalid_argument("grid_trajectories: points per dimension must be >= 1");

    Vector lo(n + m), hi(n + m);
    lo << x_box.lower(), u_box.lower();
    hi << x_box.upper(), u_box.upper();

    long total = 1;
    for (int p : points_per_dim)
        total *= p;

    std::vector<Trajectory> out;
    out.reserve(total);
    std::vector<int> idx(n + m, 0);
    for (long count = 0; count < total; ++count)
    {
        Vector z(n + m);
        for (int d = 0; d < n + m; ++d)
        {
            const int p = points_per_dim[d];
            z(d) = p == 1 ? 0.5 * (lo(d) + hi(d))
                          : lo(d) + (hi(d) - lo(d)) * idx[d] / double(p - 1);
        }
        Vector x = z.head(n);
        Vector u = z.tail(m);
        Vector w = draw(Zw, seed, count, 0, kChannelProcessNoise);
        Trajectory traj;
        traj.states = {x, model.step(x, u) + w};
        traj.inputs = {u};
        out.push_back(std::move(traj));

        for (int d = n + m - 1; d >= 0; --d)
        {
            if (++idx[d] < points_per_dim[d])
                break;
            idx[d] = 0;
        }
    }
    return out;
}

DataMatrices assemble(const std::vector<Trajectory>& trajectories)
{
    if (trajectories.empty())
        throw std::invalid_argument("assemble: no trajectories");
    int T = 0;
    for (const Trajectory& traj : trajectories)
    {
        traj.validate();
        T += traj.length();
    }
    if (T == 0)
        throw std::invalid_argument("assemble: no transitions recorded");
    const int n = static_cast<int>(trajectories.front().states.front().size());
    const int m = static_cast<int>(trajectories.front().inputs.empty()
                                       ? 0
                                       : trajectories.front().inputs.front().size());
    const bool measured = !trajectories.front().measured.empty();

    DataMatrices D;
    D.X_plus.resize(n, T);
    D.X_minus.resize(n, T);
    D.U_minus.resize(m, T);
    D.has_measurements = measured;
    if (measured)
    {
        D.Y_plus.resize(n, T);
        D.Y_minus.resize(n, T);
    }
    int col = 0;
    for (const Trajectory& traj : trajectories)
    {
        if (!traj.measured.empty() != measured)
            throw std::invalid_argument("assemble: inconsistent measurement channels");
        for (int k = 0; k < traj.length(); ++k, ++col)
        {
            D.X_minus.col(col) = traj.states[k];
            D.X_plus.col(col) = traj.states[k + 1];
            D.U_minus.col(col) = traj.inputs[k];
            if (measured)
            {
                D.Y_minus.col(col) = traj.measured[k];
                D.Y_plus.col(col) = traj.measured[k + 1];
            }
        }
    }
    return D;
}

Matrix right_inverse(const Matrix& M)
{
    if (M.rows() == 0 || M.cols() == 0)
        throw std::invalid_argument("right_inverse: empty matrix");
    Eigen::BDCSVD<Matrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double smax = s(0);
    const int want = static_cast<int>(M.rows());
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > kRankTol * smax)
            ++rank;
    if (rank < want)
    {
        throw std::runtime_error("right_inverse: matrix is row-rank deficient (rank " +
                                 std::to_string(rank) + " of " + std::to_string(want) +
                                 " rows); data is not exciting enough");
    }
    Vector inv = s.head(want).cwiseInverse();
    return svd.matrixV().leftCols(want) * inv.asDiagonal() *
           svd.matrixU().leftCols(want).transpose();
}

Matrix kernel_basis(const Matrix& M)
{
    if (M.cols() == 0)
        return Matrix(0, 0);
    if (M.rows() == 0)
        return Matrix::Identity(M.cols(), M.cols());
    Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() > 0 ? s(0) : 0.0;
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > kRankTol * smax)
            ++rank;
    return svd.matrixV().rightCols(M.cols() - rank);
}

double covering_radius(const DataMatrices& D)
{
    const Matrix Z = D.regressor();
    const int T = static_cast<int>(Z.cols());
    double radius = 0.0;
    for (int i = 0; i < T; ++i)
    {
        double nearest = std::numeric_limits<double>::infinity();
        for (int j = 0; j < T; ++j)
        {
            if (j == i)
                continue;
            nearest = std::min(nearest, (Z.col(i) - Z.col(j)).norm());
        }
        if (T > 1)
            radius = std::max(radius, nearest);
    }
    return radius;
}

double lipschitz_estimate(const DataMatrices& D)
{
    const Matrix Z = D.regressor();
    const int T = static_cast<int>(Z.cols());
    double best = 0.0;
    bool any = false;
    for (int i = 0; i < T; ++i)
    {
        for (int j = i + 1; j < T; ++j)
        {
            const double dz = (Z.col(i) - Z.col(j)).norm();
            if (dz < 1e-12)
                continue;
            any = true;
            best = std::max(best, (D.X_plus.col(i) - D.X_plus.col(j)).norm() / dz);
        }
    }
    if (!any)
        throw std::invalid_argument("lipschitz_estimate: all data points coincide");
    return best;
}

// ---------------------------------------------------------------------------
// CSV: one row per time step, columns traj_id,k,u...,x...,y...; the final
// row of each trajectory has empty input cells.
// ---------------------------------------------------------------------------

namespace
{

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_csv(const std::filesystem::path& path, const std::vector<Trajectory>& trajectories)
{
    if (trajectories.empty())
        throw std::invalid_argument("write_csv: no trajectories");
    trajectories.front().validate();
    const int n = static_cast<int>(trajectories.front().states.front().size());
    const int m = static_cast<int>(trajectories.front().inputs.empty()
                                       ? 0
                                       : trajectories.front().inputs.front().size());
    const bool measured = !trajectories.front().measured.empty();

    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_csv: cannot open " + path.string());
    out << "traj_id,k";
    for (int j = 0; j < m; ++j)
        out << ",u" << j + 1;
    for (int j = 0; j < n; ++j)
        out << ",x" << j + 1;
    if (measured)
        for (int j = 0; j < n; ++j)
            out << ",y" << j + 1;
    out << "\n";

    for (std::size_t t = 0; t < trajectories.size(); ++t)
    {
        const Trajectory& traj = trajectories[t];
        traj.validate();
        for (std::size_t k = 0; k < traj.states.size(); ++k)
        {
            out << t << "," << k;
            for (int j = 0; j < m; ++j)
            {
                out << ",";
                if (k < traj.inputs.size())
                    out << fmt(traj.inputs[k](j));
            }
            for (int j = 0; j < n; ++j)
                out << "," << fmt(traj.states[k](j));
            if (measured)
                for (int j = 0; j < n; ++j)
                    out << "," << fmt(traj.measured[k](j));
            out << "\n";
        }
    }
}

std::vector<Trajectory> read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_csv: cannot open " + path.string());
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("read_csv: empty file");

    int m = 0, n = 0, ny = 0;
    {
        std::stringstream ss(header);
        std::string col;
        while (std::getline(ss, col, ','))
        {
            if (col.rfind("u", 0) == 0 && col.size() > 1 && std::isdigit(col[1]))
                ++m;
            else if (col.rfind("x", 0) == 0 && col.size() > 1 && std::isdigit(col[1]))
                ++n;
            else if (col.rfind("y", 0) == 0 && col.size() > 1 && std::isdigit(col[1]))
                ++ny;
        }
    }
    if (n == 0)
        throw std::runtime_error("read_csv: no state columns in header");

    std::vector<Trajectory> out;
    std::string line;
    long current_id = -1;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (static_cast<int>(cells.size()) < 2 + m + n)
            throw std::runtime_error("read_csv: short row: " + line);

        const long id = std::stol(cells[0]);
        if (id != current_id)
        {
            out.emplace_back();
            current_id = id;
        }
        Trajectory& traj = out.back();

        bool has_input = true;
        Vector u(m);
        for (int j = 0; j < m; ++j)
        {
            if (cells[2 + j].empty())
            {
                has_input = false;
                break;
            }
            u(j) = std::stod(cells[2 + j]);
        }
        Vector x(n);
        for (int j = 0; j < n; ++j)
            x(j) = std::stod(cells[2 + m + j]);
        traj.states.push_back(std::move(x));
        if (has_input)
            traj.inputs.push_back(std::move(u));
        if (ny > 0)
        {
            Vector y(n);
            for (int j = 0; j < n; ++j)
                y(j) = std::stod(cells[2 + m + n + j]);
            traj.measured.push_back(std::move(y));
        }
    }
    for (const Trajectory& traj : out)
        traj.validate();
    return out;
}

} // namespace zonoreach

#ifndef ZONOREACH_DATA_HPP_
#define ZONOREACH_DATA_HPP_

#include "zonoreach/monomials.hpp"
#include "zonoreach/zonotope.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

namespace zonoreach
{

/// One recorded run: states x(0..T), inputs u(0..T-1) and, when a
/// measurement channel exists, y(0..T).
struct Trajectory
{
    std::vector<Vector> inputs;
    std::vector<Vector> states;
    std::vector<Vector> measured; // empty when no measurement channel

    int length() const { return static_cast<int>(inputs.size()); }
    void validate() const;
};

/// Shifted data blocks assembled from trajectories, columns in trajectory
/// order: X_plus holds successors, X_minus/U_minus the regressor columns.
struct DataMatrices
{
    Matrix X_plus, X_minus, U_minus;
    Matrix Y_plus, Y_minus;
    bool has_measurements = false;

    int T() const { return static_cast<int>(X_plus.cols()); }
    int state_dim() const { return static_cast<int>(X_plus.rows()); }
    int input_dim() const { return static_cast<int>(U_minus.rows()); }

    /// [X_minus; U_minus], or [Y_minus; U_minus] when measured is requested.
    Matrix regressor(bool use_measured = false) const;
};

/// The dynamics used for data generation and ground-truth checks.
struct SystemModel
{
    enum class Kind
    {
        lti,
        polynomial,
        nonlinear
    };

    Kind kind = Kind::lti;
    int state_dim = 0;
    int input_dim = 0;
    Matrix A, B;                        // lti
    Matrix C;                           // polynomial coefficients over `basis`
    std::optional<MonomialBasis> basis; // polynomial
    std::function<Vector(const Vector&, const Vector&)> map; // nonlinear

    Vector step(const Vector& x, const Vector& u) const;

    static SystemModel lti_model(Matrix A, Matrix B);
    static SystemModel polynomial_model(Matrix C, MonomialBasis basis, int state_dim,
                                        int input_dim);
    static SystemModel nonlinear_model(std::function<Vector(const Vector&, const Vector&)> map,
                                       int state_dim, int input_dim);
};

/// Simulates K trajectories of length T_i. Initial states, inputs and noises
/// are drawn from the given zonotopes through seed-derived substreams (one
/// per trajectory, step and channel), so the result is deterministic per
/// seed and independent of generation order. When Zv is given, a measurement
/// channel y = x + v is recorded.
std::vector<Trajectory> simulate(const SystemModel& model, const Zonotope& X0,
                                 const std::vector<Zonotope>& U, const Zonotope& Zw,
                                 const Zonotope* Zv, int K, int T_i, std::uint64_t seed);

/// Length-1 trajectories whose initial (x, u) points enumerate a regular
/// grid over the given boxes; successors carry noise drawn from Zw.
std::vector<Trajectory> grid_trajectories(const SystemModel& model, const Interval& x_box,
                                          const Interval& u_box,
                                          const std::vector<int>& points_per_dim,
                                          const Zonotope& Zw, std::uint64_t seed);

DataMatrices assemble(const std::vector<Trajectory>& trajectories);

/// Moore-Penrose right inverse via SVD; requires full row rank (smallest
/// singular value above 1e-8 of the largest), otherwise throws with the
/// deficient row-space dimensions. M * right_inverse(M) = I within 1e-8.
Matrix right_inverse(const Matrix& M);

/// Orthonormal basis of the null space of M via SVD, same rank tolerance.
Matrix kernel_basis(const Matrix& M);

/// max_i min_{j != i} || z_i - z_j || over the regressor columns.
double covering_radius(const DataMatrices& D);

/// max over distinct column pairs of ||X+_i - X+_j|| / ||z_i - z_j||, using
/// the recorded successors as surrogate function values.
double lipschitz_estimate(const DataMatrices& D);

void write_csv(const std::filesystem::path& path, const std::vector<Trajectory>& trajectories);
std::vector<Trajectory> read_csv(const std::filesystem::path& path);

} // namespace zonoreach

#endif

#include "zonoreach/serialize.hpp"

#include <stdexcept>

namespace zonoreach
{

using nlohmann::json;

json to_json(const Matrix& M)
{
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i)
    {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j)
            row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace
{

json to_json(const Vector& v)
{
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i)
        arr.push_back(v(i));
    return arr;
}

} // namespace

json to_json(const Interval& I)
{
    return {{"type", "interval"}, {"lower", to_json(I.lower())}, {"upper", to_json(I.upper())}};
}

json to_json(const Zonotope& Z)
{
    return {{"type", "zonotope"},
            {"center", to_json(Z.center())},
            {"generators", to_json(Z.generators())}};
}

json to_json(const ConstrainedZonotope& C)
{
    return {{"type", "constrained_zonotope"},
            {"center", to_json(C.center())},
            {"generators", to_json(C.generators())},
            {"A", to_json(C.constraint_matrix())},
            {"b", to_json(C.constraint_vector())}};
}

json to_json(const MatrixZonotope& M)
{
    json gens = json::array();
    for (const Matrix& G : M.generators())
        gens.push_back(to_json(G));
    return {{"type", "matrix_zonotope"}, {"center", to_json(M.center())}, {"generators", gens}};
}

json to_json(const ConstrainedMatrixZonotope& N)
{
    json gens = json::array(), cons = json::array();
    for (const Matrix& G : N.generators())
        gens.push_back(to_json(G));
    for (const Matrix& A : N.constraint_generators())
        cons.push_back(to_json(A));
    return {{"type", "constrained_matrix_zonotope"},
            {"center", to_json(N.center())},
            {"generators", gens},
            {"A", cons},
            {"B", to_json(N.offset())}};
}

json to_json(const SetVariant& S)
{
    return std::visit([](const auto& set) { return to_json(set); }, S);
}

json to_json(const ReachSequence& seq)
{
    json sets = json::array(), hulls = json::array();
    for (const SetVariant& S : seq.sets)
    {
        sets.push_back(to_json(S));
        hulls.push_back(to_json(interval_hull(S)));
    }
    return {{"method", seq.method},
            {"guaranteed", seq.guaranteed},
            {"sets", sets},
            {"hulls", hulls}};
}

json to_json(const ContainmentReport& report)
{
    json steps = json::array();
    for (std::size_t k = 0; k < report.steps.size(); ++k)
    {
        const StepReport& s = report.steps[k];
        steps.push_back({{"k", k},
                         {"samples", s.samples},
                         {"contained", s.contained},
                         {"max_violation", s.max_violation}});
    }
    return {{"samples", report.samples},
            {"all_contained", report.all_contained()},
            {"directions_checked", report.directions_checked},
            {"steps", steps}};
}

Matrix matrix_from_json(const json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("matrix_from_json: expected an array of rows");
    const int rows = static_cast<int>(j.size());
    int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
    Matrix M(rows, cols);
    for (int i = 0; i < rows; ++i)
    {
        const json& row = j.at(i);
        if (static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("matrix_from_json: ragged rows");
        for (int c = 0; c < cols; ++c)
            M(i, c) = row.at(c).get<double>();
    }
    return M;
}

Vector vector_from_json(const json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("vector_from_json: expected an array");
    Vector v(static_cast<int>(j.size()));
    for (int i = 0; i < v.size(); ++i)
        v(i) = j.at(i).get<double>();
    return v;
}

Interval interval_from_json(const json& j)
{
    return Interval(vector_from_json(j.at("lower")), vector_from_json(j.at("upper")));
}

Zonotope zonotope_from_json(const json& j)
{
    Vector c = vector_from_json(j.at("center"));
    Matrix G;
    if (j.contains("generators") && !j.at("generators").empty())
        G = matrix_from_json(j.at("generators"));
    else
        G = Matrix(c.size(), 0);
    return Zonotope(std::move(c), std::move(G));
}

ConstrainedZonotope czonotope_from_json(const json& j)
{
    Zonotope Z = zonotope_from_json(j);
    if (!j.contains("A") || j.at("A").empty())
        return ConstrainedZonotope(Z);
    return ConstrainedZonotope(Z.center(), Z.generators(), matrix_from_json(j.at("A")),
                               vector_from_json(j.at("b")));
}

SetVariant set_from_json(const json& j)
{
    const std::string type = j.at("type").get<std::string>();
    if (type == "zonotope")
        return zonotope_from_json(j);
    if (type == "constrained_zonotope")
        return czonotope_from_json(j);
    throw std::invalid_argument("set_from_json: unsupported type " + type);
}

ReachSequence sequence_from_json(const json& j)
{
    ReachSequence seq;
    seq.method = j.at("method").get<std::string>();
    seq.guaranteed = j.at("guaranteed").get<bool>();
    for (const json& s : j.at("sets"))
        seq.sets.push_back(set_from_json(s));
    return seq;
}

} // namespace zonoreach

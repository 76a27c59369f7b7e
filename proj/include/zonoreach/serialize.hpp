#ifndef ZONOREACH_SERIALIZE_HPP_
#define ZONOREACH_SERIALIZE_HPP_

#include "zonoreach/constrained_matrix_zonotope.hpp"
#include "zonoreach/oracle.hpp"
#include "zonoreach/reach_common.hpp"

#include "json.hpp"

namespace zonoreach
{

// Matrices serialize as nested row arrays, vectors as flat arrays. Every set
// document carries a "type" tag.

nlohmann::json to_json(const Matrix& M);
nlohmann::json to_json(const Interval& I);
nlohmann::json to_json(const Zonotope& Z);
nlohmann::json to_json(const ConstrainedZonotope& C);
nlohmann::json to_json(const MatrixZonotope& M);
nlohmann::json to_json(const ConstrainedMatrixZonotope& N);
nlohmann::json to_json(const SetVariant& S);
nlohmann::json to_json(const ReachSequence& seq);
nlohmann::json to_json(const ContainmentReport& report);

Matrix matrix_from_json(const nlohmann::json& j);
Vector vector_from_json(const nlohmann::json& j);
Interval interval_from_json(const nlohmann::json& j);
Zonotope zonotope_from_json(const nlohmann::json& j);
ConstrainedZonotope czonotope_from_json(const nlohmann::json& j);
SetVariant set_from_json(const nlohmann::json& j);
ReachSequence sequence_from_json(const nlohmann::json& j);

} // namespace zonoreach

#endif

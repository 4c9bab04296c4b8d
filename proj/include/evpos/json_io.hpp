#pragma once

#include <string>

#include <json.hpp>

#include "evpos/errors.hpp"
#include "evpos/perturbation.hpp"
#include "evpos/positivity.hpp"
#include "evpos/rank_one.hpp"
#include "evpos/types.hpp"

namespace evpos {

using Json = nlohmann::json;

// Matrix wire format: {"dim": n, "entries": [e, ...]} row-major, where each
// entry is either a plain number (real) or a [re, im] pair. Writing emits
// plain numbers for exactly-real matrices so round-trips are bit-identical.
Json matrix_to_json(const Matrix& M);
Matrix matrix_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

// Rank-one wire format: {"phi": [...], "v": [...], "alpha": a}.
Json rank1_to_json(const Rank1& p);
Rank1 rank1_from_json(const Json& j);

Json report_to_json(const PositivityReport& r);
Json certificate_to_json(const PerturbationCertificate& c);
Json eigencurve_to_json(const std::vector<EigenCurvePoint>& pts);
std::string eigencurve_to_csv(const std::vector<EigenCurvePoint>& pts);

Json error_to_json(const Error& e, const Json& context = Json::object());

Matrix load_matrix_file(const std::string& path);
Rank1 load_rank1_file(const std::string& path);

}  // namespace evpos

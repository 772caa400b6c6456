#pragma once

#include <string>

#include <json.hpp>

#include "wigmod/companion.hpp"
#include "wigmod/module_space.hpp"
#include "wigmod/operator_algebra.hpp"
#include "wigmod/wigner.hpp"

namespace wigmod {

// All emitted JSON uses insertion-ordered objects and the library's
// shortest round-trip double formatting, so identical values give
// identical bytes.
using json = nlohmann::ordered_json;

json to_json(const CMatrix& m);
CMatrix cmatrix_from_json(const json& j);

/// Real matrices serialize as nested arrays of rows.
json to_json(const RMatrix& m);
RMatrix rmatrix_from_json(const json& j);

json to_json(const ModVec& v);
ModVec modvec_from_json(const json& j);

json to_json(const ALinOp& op);
ALinOp alinop_from_json(const json& j);

json to_json(const std::vector<ModVec>& family);

json to_json(const VerificationReport& rep);

json to_json(const WignerFactorization& f);
json to_json(const CstarFactorization& f);
json to_json(const RealFactorization& f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace wigmod

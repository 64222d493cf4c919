#pragma once

#include <string>

#include "tailx/cpfact.hpp"
#include "tailx/marginals.hpp"
#include "tailx/spectral.hpp"
#include "tailx/tpdm.hpp"

namespace tailx {

// JSON artifact schemas. Writing uses fixed 17-significant-digit number
// formatting so identical inputs produce byte-identical files; loading
// validates the structural invariants of each type.

std::string to_json(const Tpdm& t);
Tpdm tpdm_from_json(const std::string& text);

std::string to_json(const EigenBasis& basis);
EigenBasis eigen_from_json(const std::string& text);

std::string to_json(const CpFactorization& f);
CpFactorization cpfact_from_json(const std::string& text);

std::string to_json(const MarginalSet& models);
MarginalSet marginals_from_json(const std::string& text);

void save_text(const std::string& path, const std::string& text);
std::string load_text(const std::string& path);

}  // namespace tailx

#ifndef STYLECAP_LATENT_PRIOR_IO_HPP_
#define STYLECAP_LATENT_PRIOR_IO_HPP_

#include <string>

#include "json.hpp"
#include "stylecap/latent/prior.hpp"

namespace stylecap::latent {

// {"sigma2": float, "z": int, "means": {"<attribute_id>": [floats]}}
nlohmann::json prior_to_json(const AttributePrior& prior);
AttributePrior prior_from_json(const nlohmann::json& j);

void write_prior_json(const std::string& path, const AttributePrior& prior);
AttributePrior read_prior_json(const std::string& path);

}  // namespace stylecap::latent

#endif  // STYLECAP_LATENT_PRIOR_IO_HPP_

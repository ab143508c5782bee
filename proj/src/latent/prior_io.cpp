#include "stylecap/latent/prior_io.hpp"

#include <fstream>
#include <stdexcept>

namespace stylecap::latent {

using nlohmann::json;

json prior_to_json(const AttributePrior& prior) {
  json means = json::object();
  for (const auto& [id, mu] : prior.means) {
    std::vector<double> v(mu.data(), mu.data() + mu.size());
    means[std::to_string(id)] = v;
  }
  return json{{"sigma2", prior.sigma2}, {"z", prior.z}, {"means", means}};
}

AttributePrior prior_from_json(const json& j) {
  AttributePrior prior;
  prior.sigma2 = j.at("sigma2").get<double>();
  prior.z = j.at("z").get<int>();
  for (auto it = j.at("means").begin(); it != j.at("means").end(); ++it) {
    const auto values = it.value().get<std::vector<double>>();
    if (static_cast<int>(values.size()) != prior.z) {
      throw std::runtime_error("prior_from_json: mean length disagrees with z");
    }
    Vec mu(prior.z);
    for (int i = 0; i < prior.z; ++i) mu[i] = values[static_cast<std::size_t>(i)];
    prior.means[std::stoi(it.key())] = std::move(mu);
  }
  return prior;
}

void write_prior_json(const std::string& path, const AttributePrior& prior) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << prior_to_json(prior).dump(2) << "\n";
}

AttributePrior read_prior_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  json j;
  in >> j;
  return prior_from_json(j);
}

}  // namespace stylecap::latent
